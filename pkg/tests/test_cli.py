import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from periodet import cli
from periodet.catalog import catalog
from periodet.checks import run_check
from periodet.config import (
    CheckConfig,
    ConfigError,
    ConnectionSpec,
    FieldParams,
    PathOptions,
    dumps,
    loads,
)

ROOT = Path(__file__).resolve().parents[1]
KEYS = ["check", "inputs", "lhs", "rhs", "residual", "pass", "seconds", "diagnostics"]

fractions = st.builds(lambda n, d: f"{n}/{d}", st.integers(-9, 9), st.integers(1, 9))


@st.composite
def configs(draw):
    kind = draw(st.sampled_from(["periods", "monodromy", "symbol", "gamma", "reciprocity",
                                 "chow", "jacobi", "fermat-count"]))
    conn = None
    if draw(st.booleans()):
        r = draw(st.integers(1, 2))
        d = draw(st.integers(1, 3))
        pts = tuple(str(p) for p in draw(st.lists(st.integers(-5, 5), min_size=d, max_size=d,
                                                  unique=True)))
        res = tuple(tuple(tuple(draw(fractions) for _ in range(r)) for _ in range(r))
                    for _ in range(d))
        conn = ConnectionSpec(pts, res)
    base = draw(st.none() | st.tuples(st.floats(-5, 5), st.floats(-9, -3)))
    path = PathOptions(base, draw(st.sampled_from([1.0, 0.5, 0.25])))
    field = FieldParams(draw(st.none() | st.sampled_from([2, 3, 5, 7])), draw(st.integers(1, 3)),
                        draw(st.none() | st.integers(2, 8)), draw(st.none() | st.integers(3, 50)))
    params = draw(st.dictionaries(st.sampled_from(["count", "mode", "qmax"]),
                                  st.integers(1, 100) | st.text("abc-", max_size=5), max_size=2))
    return CheckConfig(kind, draw(st.text("abcxyz-0123", max_size=8)), conn, path,
                       draw(st.none() | st.floats(1e-12, 1e-3)), field,
                       draw(st.integers(0, 2 ** 63)), params)


@given(st.lists(configs(), min_size=1, max_size=4))
def test_config_round_trip(cfgs):
    assert loads(dumps(cfgs)) == cfgs


def test_catalog():
    cat = catalog()
    names = [c.name for c in cat]
    assert len(cat) >= 10 and len(set(names)) == len(names)
    for want in ["beta-1/2", "beta-1/3", "rank1-d3", "rank2-triangular", "fermat-3-7",
                 "canonical-class-0-1-inf"]:
        assert want in names
    assert loads(dumps(cat)) == cat


@pytest.mark.parametrize("text,match", [
    ("[[check]\n", "TOML syntax error"),
    ("x = 1\n", "at least one"),
    ('[[check]]\ncheck = "nope"\n', "unknown check kind"),
    ('[[check]]\ncheck = "periods"\ncolour = 1\n', r"check\[0\]: unknown keys"),
    ('[[check]]\ncheck = "periods"\n[check.connection]\npoints = ["0"]\nresidues = [[["1/x"]]]\n',
     r"check\[0\]\.connection\.residues\[0\]"),
    ('[[check]]\ncheck = "periods"\n[check.connection]\npoints = ["0", "1"]\nresidues = [[["1"]]]\n',
     "2 points but 1 residue"),
    ('[[check]]\ncheck = "jacobi"\nfield = { r = 3 }\n', r"check\[0\]\.field: unknown keys"),
])
def test_schema_errors(text, match):
    with pytest.raises(ConfigError, match=match):
        loads(text)


def test_engine_errors_are_embedded():
    cfgs = loads('[[check]]\ncheck = "periods"\nname = "bad"\n[check.connection]\n'
                 'points = ["0", "1"]\nresidues = [[["1/2"]], [["-1/4"]]]\n'
                 '[[check]]\ncheck = "fermat-count"\nfield = { m = 3, q = 7 }\n')
    reports = cli.run(cfgs, jobs=1)
    assert not reports[0]["pass"] and "error" in reports[0]["diagnostics"]
    assert reports[1]["pass"]


def test_report_schema():
    rep = run_check(catalog()[0])
    assert list(rep) == KEYS
    assert isinstance(rep["lhs"], list) and len(rep["lhs"]) == 2
    assert rep["pass"] and rep["residual"] < 1e-8
    json.dumps(rep)


def test_beta_config(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["--config", str(ROOT / "configs" / "beta.toml"), "--report", str(out),
                     "--jobs", "1"])
    reports = json.loads(out.read_text())
    assert code == 0 and len(reports) == 1
    assert reports[0]["pass"] and reports[0]["residual"] < 1e-8


def test_suites_config(tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["--config", str(ROOT / "configs" / "suites.toml"), "--report", str(out)])
    reports = {r["inputs"]["name"]: r for r in json.loads(out.read_text())}
    assert code == 0
    rec = reports["reciprocity-42"]
    assert rec["diagnostics"]["reciprocity_failures"] == 0 and rec["diagnostics"]["seed"] == 42
    fer = reports["fermat-3-7"]
    assert fer["lhs"] == fer["rhs"] == 9


def test_byte_identical_reports(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p, jobs in zip(paths, ["1", "2"]):
        cli.main(["--all", "--no-timing", "--report", str(p), "--jobs", jobs,
                  "periods", "chow", "fermat-count", "reciprocity"])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_order_and_overrides(tmp_path):
    out = tmp_path / "r.json"
    cli.main(["--all", "--report", str(out), "--jobs", "2", "--seed", "7", "--tol", "1e-3",
              "chow", "fermat-count"])
    reports = json.loads(out.read_text())
    want = [c.name for c in catalog() if c.check in ("chow", "fermat-count")]
    assert [r["inputs"]["name"] for r in reports] == want
    assert all(r["inputs"]["seed"] == 7 and r["inputs"]["tol"] == 1e-3 for r in reports)


def test_exit_code_nonzero_on_failure(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('[[check]]\ncheck = "chow"\nparams = { D = ["0", "inf"], '
                   'expected_units = { inf = "1" } }\n')
    assert cli.main(["--config", str(cfg), "--report", str(tmp_path / "r.json")]) == 1


def test_bad_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[[check]\n")
    assert cli.main(["--config", str(cfg)]) == 2
    assert "TOML syntax error" in capsys.readouterr().err
