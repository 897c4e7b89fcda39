import json
import warnings

import pytest

from asdcong.cache import CacheWarning, SeriesCache, cache_key
from asdcong.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from asdcong.modforms import FormRecord, weak_e4_delta
from asdcong.qseries import QQ, ModPrimePower
from asdcong.seriesio import read_series


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_expand_weak_form(tmp_path, capsys):
    target = tmp_path / "w.series"
    code, rep = run(capsys, "--cache-dir", str(tmp_path / "c"), "expand", "--form", "weak-e4-delta",
                    "--order", "150", "--out", str(target))
    assert code == EXIT_OK
    f = read_series(target)
    assert f.coeff(1) == -142236 and f.hi == 150
    assert rep["forms"][0]["lo"] == -1


def test_check_congruence_pass_and_fail(tmp_path, capsys):
    args = ["--cache-dir", str(tmp_path), "check-congruence", "--form", "weak-e4-delta",
            "--p", "11", "--nmax", "130"]
    code, rep = run(capsys, *args, "--H", "1,-534612,285311670611")
    assert code == EXIT_OK and rep["pass"]
    code, rep = run(capsys, *args, "--H", "1,-534611,285311670611")
    assert code == EXIT_FAIL and not rep["pass"]


def test_check_congruence_on_series_file(tmp_path, capsys):
    target = tmp_path / "f1.series"
    run(capsys, "expand", "--form", "phi0-3-f1", "--order", "40", "--out", str(target))
    code, rep = run(capsys, "check-congruence", "--form", str(target), "--k", "3", "--holo", "cusp",
                    "--H", "1,0,-25", "--p", "5", "--nmax", "60")
    assert code == EXIT_OK
    assert rep["results"][0]["strengthen"] is True


def test_usage_errors(capsys):
    assert main(["check-congruence", "--form", "nope", "--H", "1", "--p", "5", "--nmax", "5"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobenius", "--N", "3"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["check-congruence", "--form", "delta", "--H", "1,x", "--p", "5", "--nmax", "5"])
    assert exc.value.code == EXIT_USAGE
    assert main(["jacobi", "--q", "12", "--m", "2", "--a", "1,1"]) == EXIT_USAGE


def test_frobenius_command(capsys):
    code, rep = run(capsys, "frobenius", "--N", "3", "--p", "5", "--M", "10", "--window", "650",
                    "--eigen-nmax", "50")
    assert code == EXIT_OK
    assert rep["charpoly"] == [1, 0, -25]
    assert rep["alpha_product"] == {"value": 25, "precision": 6}
    code, rep = run(capsys, "frobenius", "--N", "3", "--p", "7")
    assert code == EXIT_FAIL and "complete-pairs" in rep["error"]
    code, rep = run(capsys, "frobenius", "--N", "3", "--p", "7", "--complete-pairs")
    assert code == EXIT_OK and rep["charpoly"] == [1, 2, 49]


def test_jacobi_trace_cross(capsys):
    code, rep = run(capsys, "jacobi", "--q", "49", "--m", "8", "--a", "1,2")
    assert code == EXIT_OK and not rep["degenerate"]
    code, rep = run(capsys, "trace", "--N", "3", "--p", "7", "--identities")
    assert code == EXIT_OK and rep["poly"] == [1, -2, 49]
    code, rep = run(capsys, "cross-validate", "--N", "3", "--p", "7")
    assert code == EXIT_OK and rep["twist_eps"] == -1
    assert rep["sign_resolution"]["resolved_eps"] == -1


def test_reports_are_deterministic(tmp_path, capsys):
    args = ["--cache-dir", str(tmp_path / "c"), "expand", "--form", "fermat", "--N", "5", "--order", "400"]
    main(args + ["--out", str(tmp_path / "a")])
    first = capsys.readouterr().out
    main(args + ["--out", str(tmp_path / "b")])
    second = capsys.readouterr().out
    assert json.loads(first)["cache"] == {"hits": 0, "misses": 4}
    assert json.loads(second)["cache"] == {"hits": 4, "misses": 0}
    for i in range(1, 5):
        assert (tmp_path / "a" / f"f{i}.series").read_bytes() == (tmp_path / "b" / f"f{i}.series").read_bytes()


def test_cache_truncates_wider_entries(tmp_path):
    cache = SeriesCache(tmp_path)
    calls = []

    def producer():
        calls.append(1)
        return weak_e4_delta(60)

    wide = cache.get("weak", {}, 60, producer)
    narrow = cache.get("weak", {}, 20, lambda: pytest.fail("should be served from cache"))
    assert narrow.series == wide.series.truncate_q(20) == weak_e4_delta(20).series
    assert narrow.weight == 12 and narrow.holo_class == "weakly-exact"
    cache.get("weak", {}, 80, lambda: weak_e4_delta(80))
    assert cache.misses == 2 and cache.hits == 1 and len(calls) == 1


def test_cache_keys_include_ring(tmp_path):
    assert cache_key("delta", {}, QQ) != cache_key("delta", {}, ModPrimePower(5, 4))
    cache = SeriesCache(tmp_path)
    rec = weak_e4_delta(20)
    cache.get("weak", {}, 20, lambda: rec)
    mod = FormRecord(rec.series.reduce_mod(5, 4), 12, "SL2(Z)", None, "weakly-exact", "w")
    got = cache.get("weak", {}, 20, lambda: mod, ring=ModPrimePower(5, 4))
    assert got.series.ring == ModPrimePower(5, 4)


def test_corrupt_entry_is_recomputed(tmp_path):
    cache = SeriesCache(tmp_path)
    cache.get("weak", {}, 10, lambda: weak_e4_delta(10))
    path = cache.path(cache_key("weak", {}))
    path.write_text("garbage")
    with pytest.warns(CacheWarning):
        rec = cache.get("weak", {}, 10, lambda: weak_e4_delta(10))
    assert rec.series.coeff(1) == -142236
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        cache.get("weak", {}, 10, lambda: pytest.fail("entry should be repaired"))


def test_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("ASDCONG_CACHE", str(tmp_path))
    assert SeriesCache().root == tmp_path
    monkeypatch.delenv("ASDCONG_CACHE")
    assert SeriesCache().root is None
