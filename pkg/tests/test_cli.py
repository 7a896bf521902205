import json

import pytest

from qmut.cli import (
    EXIT_BOUNDED_WITNESS,
    EXIT_IO,
    EXIT_OK,
    EXIT_UNBOUNDED,
    EXIT_USAGE,
    join_option_values,
    main,
)

FIGURE = "-0.6,-0.43,0.567"


def _summary(err):
    return json.loads(err.strip().splitlines()[-1])


def _write_config(tmp_path, form, vectors):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"form": form, "vectors": vectors}))
    return str(path)


def test_join_option_values():
    assert join_option_values(["classify", "-q", "-1,2,3"]) == ["classify", "--quiver=-1,2,3"]
    assert join_option_values(["mutate", "-s", "2", "-o", "x"]) == ["mutate", "--sequence=2", "-o", "x"]
    assert join_option_values(["classify", "-q"]) == ["classify", "-q"]


def test_classify_bounded(capsys):
    assert main(["classify", "-q", FIGURE]) == EXIT_OK
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["bounded"] is True
    assert verdict["reason"] == "Bounded"
    assert verdict["norm_bound"] == pytest.approx(0.848589, abs=1e-6)


def test_classify_unbounded(capsys):
    assert main(["classify", "-q", "3,3,3"]) == EXIT_UNBOUNDED
    assert json.loads(capsys.readouterr().out)["reason"] == "BothExceeded"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["classify"],
        ["classify", "-q", "1,2"],
        ["classify", "-q", "a,b,c"],
        ["mutate", "-q", "1,1,0", "-s", "4"],
        ["orbit", "-q", FIGURE, "-n", "-1"],
        ["witness", "-q", "2,2,-0.5", "--target", "1e13"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_mutate_csv(capsys):
    assert main(["mutate", "-q", "1,1,0", "-s", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["step,vertex,b12,b23,b13,norm", "0,0,1,1,0,1", "1,2,-1,-1,1,1"]


def test_mutate_json_to_file(tmp_path):
    output = tmp_path / "trajectory.json"
    assert main(["mutate", "-q", "2,2,-2", "-s", "1,2,3", "-o", str(output), "--format", "json"]) == EXIT_OK
    document = json.loads(output.read_text())
    assert document["sequence"] == [1, 2, 3]
    assert [record["norm"] for record in document["records"]] == [2.0] * 4


def test_export_failure_is_an_io_error(tmp_path, capsys):
    output = tmp_path / "missing" / "out.csv"
    assert main(["mutate", "-q", "1,1,0", "-s", "2", "-o", str(output)]) == EXIT_IO
    assert "missing" in capsys.readouterr().err


def test_witness(capsys):
    assert main(["witness", "-q", "2,2,-0.5", "--target", "1000"]) == EXIT_OK
    certificate = json.loads(capsys.readouterr().out)
    assert certificate["strategy"] == "MuStar"
    assert certificate["achieved_norm"] >= 1000
    assert certificate["steps"][0]["vertex"] == 2


def test_witness_near_markov_boundary(capsys):
    assert main(["witness", "-q", "1.6174,1.6903,-0.7214", "--target", "1e6"]) == EXIT_OK
    certificate = json.loads(capsys.readouterr().out)
    assert certificate["strategy"] == "MuStar"
    assert certificate["achieved_norm"] >= 1e6


def test_witness_for_bounded_class(capsys):
    assert main(["witness", "-q", "2,2,-2"]) == EXIT_BOUNDED_WITNESS
    assert capsys.readouterr().out == ""


def test_witness_step_budget_from_environment(monkeypatch, caplog):
    monkeypatch.setenv("QMUT_MAX_STEPS", "3")
    assert main(["witness", "-q", "2.5,1,-1"]) == EXIT_IO
    assert "in 3 steps" in caplog.text


def test_orbit_svg(capsys):
    assert main(["orbit", "-q", FIGURE, "-n", "100", "--seed", "3", "--format", "svg"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.count("<circle") == 303
    summary = _summary(captured.err)
    assert summary["length"] == 100
    assert summary["seed"] == 3
    assert summary["max_norm"] <= 0.848589 + 1e-6


def test_orbit_csv_is_deterministic(capsys):
    outputs = []
    for _ in range(2):
        assert main(["orbit", "-q", FIGURE, "-n", "500", "--seed", "42"]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) == 502


def test_orbit_seed_from_environment(monkeypatch, capsys):
    assert main(["orbit", "-q", FIGURE, "-n", "50", "--seed", "5"]) == EXIT_OK
    explicit = capsys.readouterr().out
    monkeypatch.setenv("QMUT_SEED", "5")
    assert main(["orbit", "-q", FIGURE, "-n", "50"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out == explicit
    assert _summary(captured.err)["seed"] == 5


def test_orbit_json(tmp_path, capsys):
    output = tmp_path / "orbit.json"
    assert main(["orbit", "-q", "2,2,-2", "-n", "10", "-o", str(output), "--format", "json"]) == EXIT_OK
    document = json.loads(output.read_text())
    assert document["classification"]["markov_c"] == 4.0
    assert len(document["sequence"]) == 10
    assert _summary(capsys.readouterr().err)["max_norm"] == 2.0


def test_geom_coincident_points(tmp_path, capsys):
    config = _write_config(tmp_path, "Hyperbolic", [[0, 0, 1]] * 3)
    assert main(["geom", "points", "--config", config, "-s", "1,2,3"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "points"
    assert document["report"]["agrees"] is True
    assert all((step["w12"], step["w23"], step["w13"]) == (2.0, 2.0, 2.0) for step in document["steps"])


def test_geom_spherical_lines(tmp_path, capsys):
    config = _write_config(tmp_path, "Spherical", [[1, 0, 0], [0.6, 0.8, 0], [0, 0.6, 0.8]])
    assert main(["geom", "lines", "--config", config, "-n", "1000", "--seed", "1"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)["report"]
    assert report["steps"] == 1000
    assert report["max_weight"] <= 2.0 + 1e-9
    assert report["agrees"] is True


def test_geom_hyperbolic_lines_grow(tmp_path, capsys):
    config = _write_config(
        tmp_path,
        "Hyperbolic",
        [[1, 0, 0], [1.5430806348152437, 0, 1.1752011936438014], [0.6, 0.8, 0]],
    )
    assert main(["geom", "lines", "--config", config, "-s", ",".join(["1,2"] * 20)]) == EXIT_OK
    captured = capsys.readouterr()
    report = json.loads(captured.out)["report"]
    assert report["monotone"] is True
    assert report["grows"] is True
    assert report["max_weight"] > 1e6
    assert _summary(captured.err) == report


def test_geom_errors(tmp_path):
    assert main(["geom", "points", "--config", str(tmp_path / "absent.json"), "-s", "1"]) == EXIT_IO
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["geom", "points", "--config", str(broken), "-s", "1"]) == EXIT_USAGE
    off_sheet = _write_config(tmp_path, "Hyperbolic", [[0, 0, 2]] * 3)
    assert main(["geom", "points", "--config", off_sheet, "-s", "1"]) == EXIT_USAGE
    coincident = _write_config(tmp_path, "Hyperbolic", [[0, 0, 1]] * 3)
    assert main(["geom", "points", "--config", coincident]) == EXIT_USAGE
    bare_list = tmp_path / "list.json"
    bare_list.write_text(json.dumps([[0, 0, 1]] * 3))
    assert main(["geom", "points", "--config", str(bare_list), "-s", "1"]) == EXIT_USAGE


def test_replay_reference_orbits(tmp_path, capsys):
    assert main(["replay", "-o", str(tmp_path / "svg")]) == EXIT_OK
    orbits = json.loads(capsys.readouterr().out)["orbits"]
    assert len(orbits) == 6
    assert all(orbit["contained"] for orbit in orbits)
    assert len(list((tmp_path / "svg").glob("*.svg"))) == 6


def test_replay_unknown_orbit(capsys):
    assert main(["replay", "orbit_z"]) == EXIT_USAGE
    assert "orbit_z" in capsys.readouterr().err
