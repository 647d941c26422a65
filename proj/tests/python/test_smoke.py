import json

import pytest

import rydfact


def test_instance_and_divisors():
    inst = rydfact.create_instance(15, (3, 3))
    assert inst["n"] == 15
    assert rydfact.divisor_pairs(15, (3, 3)) == [(3, 5), (5, 3)]


def test_factor_pairs_both_encoders():
    for encoder in ("failed_path", "generic"):
        assert rydfact.factor_pairs(35, (3, 3), encoder) == {(5, 7), (7, 5)}


def test_dimacs_header():
    text = rydfact.dimacs(6, (2, 2))
    assert "p cnf 4 4" in text


def test_estimate_values():
    e = rydfact.estimate(4)
    assert e["N0"] == 8
    assert e["Nc"] == 80


def test_mis_of_six():
    size, sets = rydfact.maximum_independent_sets("G6")
    assert size == 4
    assert len(sets) == 2
    assert "G15Exp" in rydfact.builtin_names()


def test_evolution_favours_solutions():
    probs = rydfact.evolve_builtin("G6")
    text = json.dumps(probs)
    assert "011110" in text and "110101" in text


def test_pipeline_preset(tmp_path):
    code, report = rydfact.run_pipeline("paper-6", str(tmp_path))
    assert code == 0
    assert report["status"] == "ok"
    assert (tmp_path / "histogram.csv").exists()


def test_pipeline_prime(tmp_path):
    cfg = rydfact.preset_config("paper-6")
    cfg["n"] = 13
    cfg["widths"] = None
    code, report = rydfact.run_pipeline(cfg, str(tmp_path))
    assert code == 2
    assert report["status"] == "unsatisfiable"


def test_errors_are_raised():
    with pytest.raises(rydfact.RydfactError):
        rydfact.create_instance(1)
    with pytest.raises(rydfact.RydfactError):
        rydfact.builtin_graph("G7")
