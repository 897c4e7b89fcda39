"""Command-line front end: expansions, congruence checks, Frobenius, Jacobi sums.

Every command prints a JSON report (sorted keys) on stdout.  Exit status is
0 when all checks pass, 2 when a check fails and 1 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from . import charsums, crossval, derham, modforms
from .cache import SeriesCache
from .finitefield import FFCtx, _factor
from .modforms import FormRecord
from .qseries import CuspContext, ModPrimePower, SeriesError
from .seriesio import read_series, write_series

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _eta_spec(text: str) -> list[tuple[Fraction, Fraction]]:
    """'1/2:4/3,1:-2,2:20/3' -> [(1/2, 4/3), (1, -2), (2, 20/3)]."""
    out = []
    try:
        for part in text.split(","):
            c, e = part.split(":")
            out.append((Fraction(c), Fraction(e)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"eta spec entries must look like scale:exponent, got {text!r}")
    return out


def _prime_power(q: int) -> tuple[int, int]:
    fs = _factor(q)
    if len(fs) != 1:
        raise UsageError(f"q = {q} is not a prime power")
    p, k = fs[0], 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# -- form registry ------------------------------------------------------------

NAMED_FORMS = ("weak-e4-delta", "delta", "e4", "e6", "phi0-3-f1", "phi0-3-f2", "fermat", "eta")


@lru_cache(maxsize=8)
def _fermat(N: int, order: Fraction):
    return modforms.fermat_suite(N, order)


def _build(name: str, order: Fraction, args) -> list[FormRecord]:
    if name == "weak-e4-delta":
        return [modforms.weak_e4_delta(int(order))]
    if name == "delta":
        return [FormRecord(modforms.delta(order), 12, "SL2(Z)", None, "cusp", "delta")]
    if name in ("e4", "e6"):
        return [modforms.eisenstein(int(name[1]), int(order))]
    if name in ("phi0-3-f1", "phi0-3-f2"):
        return [modforms.phi0_3_eta_forms(order)[int(name[-1]) - 1]]
    if name == "fermat":
        suite = _fermat(args.N, order)
        idx = [args.i] if getattr(args, "i", None) else sorted(suite.forms)
        return [suite.forms[i] for i in idx]
    if name == "eta":
        if not args.spec:
            raise UsageError("--form eta needs --spec scale:exponent,...")
        rec = modforms.eta_quotient(args.spec, order, args.k or 0, "", "weak")
        return [FormRecord(rec.series, rec.weight, rec.group, None, rec.holo_class, "eta")]
    raise UsageError(f"unknown form {name!r}; choose from {', '.join(NAMED_FORMS)} or a series file")


def _params(name: str, args, i: int | None = None) -> dict:
    if name == "fermat":
        return {"N": args.N, "i": i}
    if name == "eta":
        return {"spec": [[str(c), str(e)] for c, e in args.spec], "k": args.k or 0}
    return {}


def load_forms(args, cache: SeriesCache) -> list[FormRecord]:
    name = args.form
    if Path(name).is_file():
        try:
            series = read_series(name)
        except (OSError, SeriesError) as exc:
            raise UsageError(f"cannot read series file {name}: {exc}")
        if not args.k:
            raise UsageError("a series file needs --k (the weight)")
        return [FormRecord(series, args.k, "", None, args.holo or "weak", Path(name).stem)]
    if name == "fermat" and not args.N:
        raise UsageError("--form fermat needs --N")
    order = Fraction(args.order)
    if name == "fermat":
        indices = [args.i] if args.i else list(range(1, args.N))
        out = []
        for i in indices:
            def producer(i=i):
                return _fermat(args.N, order).forms[i]
            out.append(cache.get(name, _params(name, args, i), order, producer))
        return out
    recs = _build(name, order, args)
    if len(recs) == 1:
        return [cache.get(name, _params(name, args), order, lambda: recs[0])]
    return recs


# -- commands -------------------------------------------------------------------

def cmd_expand(args, cache: SeriesCache) -> tuple[dict, bool]:
    forms = load_forms(args, cache)
    files = []
    out = Path(args.out) if args.out else None
    for rec in forms:
        series = rec.series
        if args.p:
            series = series.reduce_mod(args.p, args.M)
        if out is not None:
            target = out / f"{rec.name or args.form}.series" if len(forms) > 1 or out.is_dir() else out
            target.parent.mkdir(parents=True, exist_ok=True)
            write_series(series, target)
            files.append(str(target))
    report = {
        "command": "expand",
        "form": args.form,
        "order": str(args.order),
        "forms": [
            {
                "name": rec.name,
                "weight": rec.weight,
                "group": rec.group,
                "holo_class": rec.holo_class,
                "m": rec.series.m,
                "lo": rec.series.lo,
                "hi": rec.series.hi,
                "leading": [[n, str(c)] for n, c in list(rec.series.items())[: args.show]],
            }
            for rec in forms
        ],
        "files": files,
        "cache": {"hits": cache.hits, "misses": cache.misses},
    }
    return report, True


def cmd_check(args, cache: SeriesCache) -> tuple[dict, bool]:
    if args.order is None:
        args.order = Fraction(args.nmax)
    forms = load_forms(args, cache)
    results = []
    for rec in forms:
        k = args.k or rec.weight
        strong = args.strengthen if args.strengthen is not None else rec.holo_class in ("cusp", "modular")
        n_max = args.nmax * rec.series.m if args.q_units else args.nmax
        rep = derham.asd_check(rec, args.H, k, args.p, n_max, strengthen=strong)
        d = rep.as_dict()
        if not args.rows:
            d["rows"] = [r.as_dict() for r in rep.failures()]
            d["rows_checked"] = len(rep.rows)
        d["form"] = rec.name
        results.append(d)
    ok = all(r["pass"] for r in results)
    return {"command": "check-congruence", "results": results, "pass": ok}, ok


def cmd_frobenius(args, cache: SeriesCache) -> tuple[dict, bool]:
    N, p, M = args.N, args.p, args.M
    window = args.window or 200
    hi = max(window, p * (args.eigen_nmax or 0))
    if args.exact:
        suite = _fermat(N, Fraction(hi, 2))
        basis = [suite.forms[i] for i in sorted(suite.forms)]
    else:
        basis = crossval.fermat_basis_mod(N, hi, p, M)
    ctx = CuspContext.build(2, p, M)
    try:
        rep = derham.frobenius_matrix(basis, ctx, 3, (1, window), complete_pairs=args.complete_pairs)
    except derham.CongruenceError as exc:
        hint = "" if args.complete_pairs else "; --complete-pairs fills unit roots from the pairing"
        return {"command": "frobenius", "group": f"Phi0({N})", "p": p, "M": M,
                "error": f"{exc}{hint}", "pass": False}, False
    out = {"command": "frobenius", "group": f"Phi0({N})", **rep.as_dict(), "pass": rep.passed}
    if args.eigen_nmax:
        try:
            ec = derham.eigen_congruence_check(N, p, rep, basis, args.eigen_nmax)
            d = ec.as_dict()
            d["rows"] = [r.as_dict() for r in ec.failures()]
            d["rows_checked"] = len(ec.rows)
            out["eigen_congruences"] = d
            out["pass"] = out["pass"] and ec.passed
        except derham.PrecisionShortfall as exc:
            out["eigen_congruences"] = {"error": str(exc)}
            out["pass"] = False
    return out, out["pass"]


def cmd_jacobi(args, cache: SeriesCache) -> tuple[dict, bool]:
    p, k = _prime_power(args.q)
    ctx = FFCtx(p, k)
    res = charsums.jacobi_sum(ctx, args.a, args.m)
    norms = [abs(z) ** 2 for z in res.value.embeddings()]
    ok = res.degenerate or all(abs(n - args.q) <= 1e-9 * args.q for n in norms)
    return {
        "command": "jacobi",
        "q": args.q,
        "m": args.m,
        "a": args.a,
        "value": {"order": res.value.M, "coeffs": list(res.value.coeffs)},
        "degenerate": res.degenerate,
        "abs_squared": norms,
        "pass": ok,
    }, ok


def cmd_trace(args, cache: SeriesCache) -> tuple[dict, bool]:
    lf = charsums.local_factor(args.N, args.p, args.degrees)
    out = {"command": "trace", **lf.as_dict()}
    ok = all(v is not False for v in lf.checks.values())
    if args.identities:
        ids = {}
        for k in sorted(lf.traces):
            ctx = FFCtx(args.p, k)
            e = {"lefschetz": lf.traces[k], "surface": charsums.trace_from_surface(args.N, ctx)}
            if (ctx.q - 1) % (2 * args.N) == 0:
                e["jacobi"] = charsums.jacobi_identity_sum(args.N, ctx)
            e["agree"] = len(set(e.values())) == 1
            ok = ok and e["agree"]
            ids[str(ctx.q)] = e
        out["identities"] = ids
    out["pass"] = ok
    return out, ok


def cmd_cross(args, cache: SeriesCache) -> tuple[dict, bool]:
    rep = crossval.cross_validate(args.N, args.p, args.M, args.window, args.nmax)
    return {"command": "cross-validate", **rep.as_dict()}, rep.passed


# -- parser ---------------------------------------------------------------------

def _form_args(sp, order_default=None):
    sp.add_argument("--form", required=True, help="named form or a series file")
    sp.add_argument("--order", type=Fraction, default=order_default, help="expansion through q^order")
    sp.add_argument("--N", type=int, help="level parameter for --form fermat")
    sp.add_argument("--i", type=int, help="single index i of f_i for --form fermat")
    sp.add_argument("--spec", type=_eta_spec, help="eta quotient as scale:exponent,...")
    sp.add_argument("--k", type=int, help="weight (required for series files)")
    sp.add_argument("--holo", choices=modforms.HOLO_CLASSES, help="holomorphy class for series files")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="asdcong", description=__doc__.splitlines()[0])
    ap.add_argument("--cache-dir", help="series cache directory (default: $ASDCONG_CACHE)")
    ap.add_argument("--report", help="also write the JSON report to this file")
    ap.add_argument("--json", action="store_true", help="accepted for compatibility; reports are always JSON")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("expand", help="compute a q-expansion")
    _form_args(sp, Fraction(50))
    sp.add_argument("--out", help="series file (or directory for several forms)")
    sp.add_argument("--p", type=int, help="reduce modulo p^M")
    sp.add_argument("--M", type=int, default=10)
    sp.add_argument("--show", type=int, default=6, help="leading coefficients in the report")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("check-congruence", help="check sum_j p^((k-1)j) A_j a(n/p^j)")
    _form_args(sp)
    sp.add_argument("--H", type=_int_list, required=True, help="H(T) coefficients, top degree first")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--q-units", action="store_true", help="read --nmax in units of q, not grid steps")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--strengthen", dest="strengthen", action="store_true", default=None)
    grp.add_argument("--no-strengthen", dest="strengthen", action="store_false")
    sp.add_argument("--rows", action="store_true", help="report every row, not only failures")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("frobenius", help="recover Frobenius on the Phi0(N) basis")
    sp.add_argument("--group", choices=["phi0"], default="phi0")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--M", type=int, default=8)
    sp.add_argument("--window", type=int, help="top index of the constraint window")
    sp.add_argument("--exact", action="store_true", help="use exact expansions instead of the fast mod path")
    sp.add_argument("--complete-pairs", action="store_true",
                    help="fill undetermined unit roots from alpha_i alpha_(N-i) = p^2")
    sp.add_argument("--eigen-nmax", type=int, help="also run the paired congruences up to this j")
    sp.set_defaults(func=cmd_frobenius)

    sp = sub.add_parser("jacobi", help="Jacobi sum over F_q")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True, help="character order (divides q - 1)")
    sp.add_argument("--a", type=_int_list, required=True, help="exponents a_1,...,a_r")
    sp.set_defaults(func=cmd_jacobi)

    sp = sub.add_parser("trace", help="local factor of the N-th Fermat family at p")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--degrees", type=_int_list, help="extension degrees (default 1..N-1)")
    sp.add_argument("--identities", action="store_true", help="also compare the three trace formulas")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("cross-validate", help="point counts against the recovered Frobenius")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--M", type=int, default=8)
    sp.add_argument("--window", type=int, default=200)
    sp.add_argument("--nmax", type=int, help="congruence range for the sign resolution")
    sp.set_defaults(func=cmd_cross)
    return ap


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, ModPrimePower):
        return str(obj)
    try:
        return int(obj)
    except (TypeError, ValueError):
        return str(obj)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = SeriesCache(args.cache_dir)
    start = time.perf_counter()
    try:
        report, ok = args.func(args, cache)
    except (UsageError, ValueError, ArithmeticError) as exc:
        # library errors (SeriesError, FormError, CongruenceError, ...) are ValueErrors
        print(f"asdcong {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(report, sort_keys=True, indent=2, default=_jsonable)
    print(text)
    if args.report:
        Path(args.report).write_text(text + "\n")
    print(f"# {args.command}: {'pass' if ok else 'FAIL'} in {time.perf_counter() - start:.2f}s",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
