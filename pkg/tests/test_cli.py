"""CLI surface, cache behaviour, and file formats."""

import csv
import json

import pytest

from gceuler import cache as cache_mod
from gceuler.cache import ResultCache, table_from_payload, table_to_payload
from gceuler.cli import run
from gceuler.euler_series import ComplexKind, EulerTable, chi_table


def test_usage_errors(tmp_path):
    assert run(["chi", "--gmax", "1", "--no-cache"]) == 2
    assert run(["no-such-command"]) == 2
    assert run(["chi"]) == 2  # missing required --gmax
    assert run(["oracle", "--parity", "odd"]) == 2  # neither --g nor --n


def test_chi_csv_and_verify(tmp_path, capsys):
    out = tmp_path / "chi.csv"
    code = run(
        ["chi", "--kind", "gc-even", "--gmax", "8", "--out", str(out),
         "--cache-dir", str(tmp_path / "cache"), "--verify"]
    )
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["g", "chi", "method"]
    values = {int(g): int(chi) for g, chi, _ in rows[1:]}
    assert values == chi_table(ComplexKind.GC_EVEN, 8).values
    captured = capsys.readouterr().out
    assert "verify g=4: oracle agrees" in captured


def test_chi_verify_agc_rejected(tmp_path):
    assert run(["chi", "--kind", "agc", "--gmax", "4", "--no-cache", "--verify"]) == 2


def test_oracle_check(capsys):
    assert run(["oracle", "--parity", "even", "--g", "3", "--check", "--no-cache"]) == 0
    out = capsys.readouterr().out
    assert "chi_connected(g=3, even) = 1" in out
    assert run(["oracle", "--parity", "odd", "--n", "2", "--check", "--no-cache"]) == 0
    assert run(["oracle", "--parity", "odd", "--n", "99"]) == 2  # beyond the cap


def test_chi_disconnected_roundtrip_flag(capsys):
    assert run(["chi-disconnected", "--parity", "odd", "--nmax", "10", "--roundtrip"]) == 0
    out = capsys.readouterr().out
    assert "all 11 coefficients agree" in out


def test_homology_command(tmp_path):
    out = tmp_path / "hom.csv"
    dump = tmp_path / "boundaries.txt"
    code = run(
        ["homology", "--g", "3", "--parity", "even", "--out", str(out),
         "--dump-matrices", str(dump)]
    )
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["degree", "dim", "boundary_rank", "betti"]
    assert dump.read_text().strip()


def test_asym_report_and_plot(tmp_path):
    out = tmp_path / "asym.csv"
    assert run(["asym", "--gmax", "12", "--out", str(out), "--no-cache"]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["g", "chi_exact", "asym_sign", "asym_log10", "ratio_minus_1"]
    assert (tmp_path / "asym.png").exists()
    out2 = tmp_path / "asym2.csv"
    assert run(["asym", "--gmax", "12", "--out", str(out2), "--no-cache", "--no-plot"]) == 0
    assert not (tmp_path / "asym2.png").exists()


def test_cos_bound_command(tmp_path):
    out = tmp_path / "cos.csv"
    assert run(["cos-bound", "--gmax", "3001", "--mu-star", "7.5", "--out", str(out)]) == 0
    assert out.exists() and (tmp_path / "cos.png").exists()


def test_quad_commands(tmp_path):
    assert run(["quad", "stirling", "--z", "1", "--z", "20", "--tol", "1e-8"]) == 0
    out = tmp_path / "jres.csv"
    code = run(
        ["quad", "jres", "--parity", "even", "--n", "12", "--z", "1000", "--z", "10000",
         "--out", str(out), "--no-plot"]
    )
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["z", "J_real", "J_imag", "partial_sum", "delta", "delta_normalized"]


def test_cache_roundtrip(tmp_path):
    cache = ResultCache(tmp_path)
    table = chi_table(ComplexKind.GC_ODD, 10)
    key = {"command": "chi", "kind": "gc-odd", "gmax": 10}
    cache.put_table(key, table)
    back = cache.get_table(key)
    assert back == table
    # empty table round-trips too
    empty = EulerTable("gc-even", "rank", {}, "generating-function", 1)
    cache.put_table({"command": "x"}, empty)
    assert cache.get_table({"command": "x"}) == empty


def test_cache_corruption_is_a_miss(tmp_path):
    cache = ResultCache(tmp_path)
    key = {"command": "chi", "kind": "gc-even", "gmax": 6}
    cache.put_table(key, chi_table(ComplexKind.GC_EVEN, 6))
    path = cache._path(key)
    payload = json.loads(path.read_text())
    payload["values"]["3"] = "999"  # corrupt without updating the checksum
    path.write_text(json.dumps(payload))
    assert cache.get_table(key) is None


def test_cache_version_bump_invalidates(tmp_path, monkeypatch):
    cache = ResultCache(tmp_path)
    key = {"command": "chi", "kind": "gc-even", "gmax": 6}
    cache.put_table(key, chi_table(ComplexKind.GC_EVEN, 6))
    assert cache.get_table(key) is not None
    monkeypatch.setattr(cache_mod, "SCHEMA_VERSION", 2)
    assert cache.get_table(key) is None  # version participates in the key


def test_payload_schema_shape():
    table = chi_table(ComplexKind.GC_EVEN, 4)
    payload = table_to_payload(table)
    assert payload["version"] == 1
    assert payload["kind"] == "gc-even"
    assert payload["index"] == "rank"
    assert payload["values"] == {"2": "0", "3": "1", "4": "0"}
    assert table_from_payload(payload) == table
    with pytest.raises(ValueError):
        bad = dict(payload)
        bad["checksum"] = "0" * 64
        table_from_payload(bad)


def test_cache_hit_is_bit_identical(tmp_path, capsys):
    args = ["chi", "--gmax", "10", "--cache-dir", str(tmp_path)]
    assert run(args + ["--out", str(tmp_path / "a.csv")]) == 0
    assert run(args + ["--out", str(tmp_path / "b.csv")]) == 0
    a = (tmp_path / "a.csv").read_text()
    b = (tmp_path / "b.csv").read_text()
    assert a == b


def test_env_var_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cache_mod.ENV_CACHE_DIR, str(tmp_path / "envcache"))
    assert cache_mod.default_cache_dir() == tmp_path / "envcache"
