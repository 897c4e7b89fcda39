"""Plain-text series files.

Format::

    m=<int> lo=<int> hi=<int> ring=<Q|Zp p M>
    <index> <numerator>/<denominator>      (exact ring)
    <index> <residue>                      (mod p^M ring)

One line per index from ``lo`` to ``hi``.  ``hi=inf`` denotes an exact
polynomial.  Reading a written file gives back an equal series.
"""

from __future__ import annotations

import io
import re
from pathlib import Path

import gmpy2

from .qseries import QQ, FracSeries, ModPrimePower, SeriesError

_HEADER = re.compile(r"^m=(\d+)\s+lo=(-?\d+)\s+hi=(-?\d+|inf)\s+ring=(Q|Zp\s+(\d+)\s+(\d+))\s*$")


def dumps(f: FracSeries) -> str:
    out = io.StringIO()
    hi = "inf" if f.hi is None else str(f.hi)
    out.write(f"m={f.m} lo={f.lo} hi={hi} ring={f.ring}\n")
    exact = not isinstance(f.ring, ModPrimePower)
    for i, c in enumerate(f.coeffs):
        n = f.lo + i
        if exact:
            out.write(f"{n} {int(c.numerator)}/{int(c.denominator)}\n")
        else:
            out.write(f"{n} {c}\n")
    return out.getvalue()


def loads(text: str) -> FracSeries:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise SeriesError("empty series file")
    mt = _HEADER.match(lines[0].strip())
    if not mt:
        raise SeriesError(f"bad series header: {lines[0]!r}")
    m, lo = int(mt.group(1)), int(mt.group(2))
    hi = None if mt.group(3) == "inf" else int(mt.group(3))
    ring = QQ if mt.group(4) == "Q" else ModPrimePower(int(mt.group(5)), int(mt.group(6)))
    coeffs = {}
    for ln in lines[1:]:
        idx, val = ln.split()
        if ring is QQ:
            coeffs[int(idx)] = gmpy2.mpq(val)
        else:
            coeffs[int(idx)] = int(val)
    f = FracSeries.from_dict(coeffs, m, hi, ring)
    if coeffs and f.lo != lo:
        raise SeriesError(f"header lo={lo} disagrees with data (first nonzero at {f.lo})")
    return f


def write_series(f: FracSeries, path) -> None:
    Path(path).write_text(dumps(f))


def read_series(path) -> FracSeries:
    return loads(Path(path).read_text())
