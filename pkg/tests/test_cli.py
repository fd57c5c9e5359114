import json

import pytest

from multicurves.cli import RunConfig, ConfigError, main, run
from multicurves.genfun import RationalGF, series_coeffs


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_series_one_holed_torus(capsys):
    code, out, _ = call(capsys, "series", "--g", "1", "--n", "1", "--which", "Z", "--max-deg", "7")
    rep = json.loads(out)
    assert code == 0
    assert rep["coeffs"] == [str(x) for x in [1, 2, 4, 6, 8, 10, 12, 14]]
    assert rep["symmetry"] == {"sign": 1, "exp": 0, "pass": True}
    assert rep["surface"] == {"g": 1, "n": 1, "m": 2}


def test_series_H3(capsys):
    code, out, _ = call(capsys, "series", "--m", "3", "--which", "H", "--max-deg", "4")
    rep = json.loads(out)
    assert code == 0
    assert rep["coeffs"] == ["1", "4", "13", "33", "75"]
    assert rep["symmetry"]["exp"] == 7 and rep["symmetry"]["pass"]


def test_series_pants(capsys):
    code, out, _ = call(capsys, "series", "--g", "0", "--n", "3", "--which", "Z", "--max-deg", "5")
    assert code == 0 and json.loads(out)["coeffs"] == ["1", "0", "0", "0", "0", "0"]


@pytest.mark.parametrize("which", ["Z", "G", "F", "H", "h", "c_all"])
@pytest.mark.parametrize("m", [3, 4, 5])
def test_series_report_consistent(capsys, which, m):
    code, out, _ = call(capsys, "series", "--m", str(m), "--which", which, "--max-deg", "9")
    rep = json.loads(out)
    gf = RationalGF.make([int(c) for c in rep["num"]], [tuple(d) for d in rep["den"]])
    assert code == 0
    assert [str(c) for c in series_coeffs(gf, 9)] == rep["coeffs"]


def test_series_formats(capsys):
    code, out, _ = call(capsys, "series", "--m", "2", "--which", "H", "--max-deg", "3", "--format", "csv")
    assert out.splitlines() == ["series,degree,coefficient", "H,0,1", "H,1,3", "H,2,7", "H,3,13"]
    code, out, _ = call(capsys, "series", "--m", "2", "--which", "H", "--max-deg", "3", "--format", "plain")
    assert "(1 - t)^3" in out and "pass" in out


def test_series_json_deterministic(capsys):
    args = ("series", "--g", "2", "--n", "1", "--which", "Z", "--max-deg", "30")
    _, a, _ = call(capsys, *args)
    _, b, _ = call(capsys, *args)
    assert a == b
    assert any(len(c) > 6 for c in json.loads(a)["coeffs"])


def test_count_examples(capsys):
    code, out, _ = call(capsys, "count", "--g", "0", "--n", "4", "--max-len", "4")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert rows[2]["c_all"] == 9 and rows[2]["c_series"] == 3 and rows[2]["agree"]
    code, out, _ = call(capsys, "count", "--g", "1", "--n", "1", "--max-len", "1")
    assert json.loads(out)["rows"][1]["c_direct"] == 2
    code, out, _ = call(capsys, "count", "--g", "0", "--n", "3", "--max-len", "0", "--no-cache")
    assert json.loads(out)["rows"][0]["c_closed"] == 1


def test_count_uses_cache_dir(capsys, tmp_path):
    call(capsys, "count", "--g", "1", "--n", "1", "--max-len", "2", "--cache-dir", str(tmp_path))
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"v1-g1-n1-r{r}.json" for r in range(3)]
    code, out, _ = call(capsys, "count", "--g", "1", "--n", "1", "--max-len", "2", "--cache-dir", str(tmp_path), "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("r,c_all")


def test_verify_symmetry(capsys):
    code, out, _ = call(capsys, "verify", "symmetry", "--m-max", "8")
    items = json.loads(out)["items"]
    assert code == 0 and len(items) == 28 and all(it["pass"] for it in items)


def test_verify_basis(capsys):
    code, out, _ = call(
        capsys, "verify", "basis", "--m", "2", "--r", "3", "--prime", "2147483647", "--samples", "40", "--seed", "7"
    )
    items = json.loads(out)["items"]
    assert code == 0 and items[-1]["rank"] == 13 and items[-1]["expected"] == 13


def test_verify_identities(capsys):
    code, out, _ = call(capsys, "verify", "identities", "--trials", "200", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert all(it["failures"] == 0 for it in rep["items"])


@pytest.mark.parametrize("suite", ["euler", "duality", "collapse"])
def test_verify_other_suites(capsys, suite):
    code, out, _ = call(capsys, "verify", suite, "--m-max", "5", "--format", "plain")
    assert code == 0 and "False" not in out


def test_verify_output_sorted_and_deterministic(capsys):
    _, a, _ = call(capsys, "verify", "euler", "--seed", "3")
    _, b, _ = call(capsys, "verify", "euler", "--seed", "3")
    keys = [it["key"] for it in json.loads(a)["items"]]
    assert a == b and keys == sorted(keys)


def test_failed_check_gives_nonzero_exit(capsys, monkeypatch):
    import multicurves.cli as cli

    monkeypatch.setattr(cli, "expected_symmetry", lambda name, m: (1, 1))
    code, out, err = call(capsys, "series", "--m", "3", "--which", "G")
    assert code == 1 and json.loads(out)["symmetry"]["pass"] is False
    assert "failed" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["series", "--g", "0", "--n", "2"],
        ["series", "--g", "1"],
        ["series", "--g", "1", "--n", "1", "--m", "2"],
        ["series"],
        ["count", "--m", "3"],
        ["series", "--m", "2", "--which", "F"],
        ["series", "--m", "2", "--max-deg", "-1"],
        ["verify", "basis", "--m", "2", "--prime", "2"],
    ],
)
def test_invalid_configs(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_run_config_validation():
    with pytest.raises(ConfigError):
        run(RunConfig(command="series", m=1))
    text, ok = run(RunConfig(command="series", m=2, which="G", max_degree=4))
    assert ok and json.loads(text)["coeffs"] == ["1", "0", "1", "0", "1"]
