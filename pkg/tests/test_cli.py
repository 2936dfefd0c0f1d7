import csv
import json
import math

import numpy as np
import pytest

from semiortho.cli import (
    SpecError,
    load_generated,
    main,
    parse_spec,
    run_asymptotics,
    run_generate,
    run_verify,
)


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return path


LEBESGUE = {"kind": "weight", "weight": {"family": "lebesgue"}}
VIOLATION = {"kind": "weight", "weight": {"family": "table", "coeffs": [1.0, 1.0, -3.0, 1.0]}}


def test_parse_schur(tmp_path):
    spec = parse_spec(write(tmp_path, "s.json", {"kind": "schur", "schur": [[0.5, 0]], "eps0": 6.283185307}))
    assert spec.schur == (0.5,)
    assert spec.schur_sequence()[1] == 0.5
    assert spec.eps0 == 6.283185307


def test_parse_lebesgue(tmp_path):
    spec = parse_spec(write(tmp_path, "l.json", LEBESGUE))
    assert np.allclose(spec.circle_measure(nodes=64).values, 1.0)


@pytest.mark.parametrize(
    "payload, needle",
    [
        ({"kind": "schur", "schur": [[1.0, 0]]}, "schur[0]"),
        ({"kind": "schur"}, "exactly one"),
        ({"kind": "schur", "schur": [[0.1, 0]], "atoms": [{"theta": 1, "mass": 1}]}, "atoms"),
        ({"kind": "weight", "weight": {"family": "bogus"}}, "weight.family"),
        ({"kind": "weight", "weight": {"family": "trig-poly", "coeffs": [1]}}, "weight.coeffs"),
        ({"kind": "weight", "weight": {"family": "table", "coeffs": [1]}}, "weight.coeffs"),
        ({"kind": "weight", "weight": {"family": "lebesgue"}, "atoms": [{"theta": 9, "mass": 1}]}, "atoms[0].theta"),
        ({"kind": "other"}, "kind"),
        ([1, 2], "object"),
    ],
)
def test_parse_rejects(tmp_path, payload, needle):
    with pytest.raises(SpecError) as exc:
        parse_spec(write(tmp_path, "bad.json", payload))
    assert needle in str(exc.value)


def test_parse_reports_line(tmp_path):
    path = write(tmp_path, "broken.json", '{"kind": "weight",\n "weight": {"family": "lebesgue",}}')
    with pytest.raises(SpecError) as exc:
        parse_spec(path)
    assert ":2:" in str(exc.value)


def test_generate_lebesgue(tmp_path):
    spec = parse_spec(write(tmp_path, "l.json", LEBESGUE))
    out = tmp_path / "g.json"
    run_generate(spec, 3, out)
    d = json.loads(out.read_text())
    entry = [c[0][0] for c in d["F"][2]]
    assert np.allclose(entry, [-0.5, 0, 1], atol=1e-12)
    assert len(d["F"]) == len(d["P"]) == len(d["Q"]) == len(d["C"]) == 4


def test_generate_one_parameter(tmp_path):
    spec = parse_spec(write(tmp_path, "s.json", {"kind": "schur", "schur": [[0.5, 0]]}))
    out = tmp_path / "g.json"
    run_generate(spec, 1, out)
    F1 = load_generated(out)["F"][1]
    assert F1.coeffs.tolist() == [[[0.5, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 0.0]]]


def test_generate_round_trips(tmp_path):
    spec = parse_spec(write(tmp_path, "s.json", {"kind": "schur", "random": {"length": 5}}))
    out = tmp_path / "g.json"
    payload = run_generate(spec, 4, out, seed=3)
    text = out.read_text()
    again = json.loads(text)
    assert again == payload
    assert json.dumps(again, indent=1) + "\n" == text


def test_generate_deterministic(tmp_path):
    spec = parse_spec(write(tmp_path, "s.json", {"kind": "schur", "random": {}}))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_generate(spec, 3, a, seed=9)
    run_generate(spec, 3, b, seed=9)
    assert a.read_bytes() == b.read_bytes()


def test_verify_lebesgue(tmp_path):
    report = run_verify(parse_spec(write(tmp_path, "l.json", LEBESGUE)), 10, 1e-8)
    assert report.passed, report.render()


def test_verify_random_seed(tmp_path):
    spec = parse_spec(write(tmp_path, "r.json", {"kind": "schur", "random": {}}))
    report = run_verify(spec, 8, 1e-8, seed=42)
    assert report.passed, report.render()
    assert {c.name for c in report.checks} >= {"gram_blocks", "dual_route", "lonp_orthonormality"}


def test_verify_trig_weight_with_atoms(tmp_path):
    payload = {
        "kind": "weight",
        "weight": {"family": "trig-poly", "coeffs": {"cos": [1.0, 0.4], "sin": [0.3]}},
        "atoms": [{"theta": 1.0, "mass": 0.5}, {"theta": 3.0, "mass": 0.2}],
    }
    report = run_verify(parse_spec(write(tmp_path, "t.json", payload)), 5, 1e-8)
    assert report.passed, report.render()


def test_verify_violation_exit_code(tmp_path, capsys):
    path = write(tmp_path, "v.json", VIOLATION)
    assert main(["verify", "--measure", str(path), "--n", "3"]) == 1
    out = capsys.readouterr().out
    assert "positivity" in out and "FAIL" in out


def test_verify_exit_zero(tmp_path, capsys):
    path = write(tmp_path, "l.json", LEBESGUE)
    assert main(["verify", "--measure", str(path), "--n", "4", "--tol", "1e-8"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [(int(n), float(e), float(r)) for n, e, r in rows[1:]]


def test_asymptotics_lebesgue(tmp_path):
    spec = parse_spec(write(tmp_path, "l.json", LEBESGUE))
    out = tmp_path / "c.csv"
    run_asymptotics(spec, 1.25, 12, out)
    header, rows = _read_csv(out)
    assert header == ["n", "err", "rate"]
    assert [r[0] for r in rows] == list(range(13))
    for n, err, _ in rows:
        if n >= 2:
            assert err <= 10 * 0.25 ** n


def test_asymptotics_symmetric_limit(tmp_path):
    payload = {"kind": "weight", "weight": {"family": "trig-poly", "coeffs": {"cos": [2.0, 0.5, 0.3]}}}
    report = run_asymptotics(parse_spec(write(tmp_path, "s.json", payload)), 1.5, 4, tmp_path / "c.csv")
    assert abs(report.limit[0, 1]) < 1e-12 and abs(report.limit[1, 0]) < 1e-12


def test_asymptotics_rejects_atoms(tmp_path, capsys):
    payload = dict(LEBESGUE, atoms=[{"theta": 1.0, "mass": 1.0}])
    path = write(tmp_path, "a.json", payload)
    code = main(["asymptotics", "--measure", str(path), "--x", "1.25", "--n-max", "4", "--out", str(tmp_path / "c.csv")])
    assert code == 2
    assert "Szego" in capsys.readouterr().err


def test_asymptotics_rejects_interval_point(tmp_path, capsys):
    path = write(tmp_path, "l.json", LEBESGUE)
    code = main(["asymptotics", "--measure", str(path), "--x", "0.5", "--n-max", "4", "--out", str(tmp_path / "c.csv")])
    assert code == 2
    assert "[-1, 1]" in capsys.readouterr().err


def test_usage_errors(tmp_path):
    assert main([]) == 2
    assert main(["gen", "--measure", str(tmp_path / "missing.json"), "--n", "2", "--out", "x"]) == 2
    path = write(tmp_path, "l.json", LEBESGUE)
    assert main(["gen", "--measure", str(path), "--n", "-1", "--out", str(tmp_path / "o.json")]) == 2


def test_csv_seventeen_digits(tmp_path):
    spec = parse_spec(write(tmp_path, "l.json", LEBESGUE))
    out = tmp_path / "c.csv"
    report = run_asymptotics(spec, 1.25, 5, out)
    _, rows = _read_csv(out)
    assert [r[1] for r in rows] == [row.err for row in report.rows]
    assert math.isnan(rows[0][2])
