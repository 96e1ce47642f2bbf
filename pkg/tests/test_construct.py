import pytest

from nilfilt.construct import (
    ConstructionError,
    construct_init,
    construct_run,
    construction_json,
    functionals_from_log,
    run_steps,
    step2,
    step_middle,
)
from nilfilt.filtration import fingerprint, LocalModel
from nilfilt.ideal import ideal


def test_construct_init():
    s = construct_init(2, 5, 0)
    assert s.ring.vars == ("x", "y") and s.step == 2
    s = construct_init(3, 4, 2)
    assert s.ring.vars == ("x", "y", "z1", "z2")
    with pytest.raises(ValueError):
        construct_init(2, 2, 0)


def test_step2_default():
    s = step2(construct_init(2, 4, 1))
    R = s.ring
    assert s.J[2] == ideal(R, "x^2", "x*y", "y^2", "z")
    assert s.I[2] == ideal(R, "x^2", "y", "z")


def test_step2_swapped_roles():
    s = step2(construct_init(2, 4, 1), p={"x": [0, 1], "y": [1, 0]})
    R = s.ring
    assert s.J[2] == ideal(R, "x^2", "x*y", "y^2", "z")
    assert s.I[2] == ideal(R, "x", "y^2", "z")


def test_step2_errors():
    with pytest.raises(ConstructionError, match="Step 2"):
        step2(construct_init(2, 4, 0), p={"x": [1, 0], "y": [2, 0]})
    with pytest.raises(ConstructionError, match="commute"):
        step2(construct_init(2, 4, 0), q={"y": [1]})
    with pytest.raises(ConstructionError, match="unknown basis keys"):
        step2(construct_init(2, 4, 0), p={"z": [1, 0]})


def test_middle_step_defaults():
    s = step_middle(step2(construct_init(2, 4, 1)))
    assert s.J[3] == ideal(s.ring, "x^3", "x*y", "y^2", "z")
    s = step_middle(step2(construct_init(3, 5, 1)))
    assert s.J[3] == ideal(s.ring, "x^3", "x*y", "y^3", "z")
    s = step_middle(s)
    assert s.J[4] == ideal(s.ring, "x^4", "x*y", "y^3", "z")


@pytest.mark.parametrize(
    "mtype,n,r,expected",
    [
        (2, 3, 1, ["y^2+x^3", "x*y", "z"]),
        (2, 4, 0, ["y^2+x^4", "x*y"]),
        (3, 5, 1, ["y^3+x^5", "x*y", "z"]),
        (3, 6, 0, ["y^3+x^6", "x*y"]),
    ],
)
def test_defaults_reproduce_model(mtype, n, r, expected):
    final, rep = construct_run(mtype, n, r)
    assert final == ideal(final.ring, *expected)
    names = {c.name: c.passed for c in rep.checks}
    assert names["default output equals the model ideal"]
    assert all(v for k, v in names.items() if k.startswith("constructed"))


def test_c3_default_report_all_pass():
    _, rep = construct_run(3, 6, 0)
    assert rep.passed, [c.name for c in rep.failures()]


def test_c2_default_report_only_known_gap():
    _, rep = construct_run(2, 4, 0)
    assert {c.name[:5] for c in rep.failures()} == {"C2(b)", "C2(d)"}


def test_phi_vanishing_on_k2_line():
    with pytest.raises(ConstructionError, match=r"Step n\+1"):
        construct_run(2, 4, 0, {"n+1": {"phi": {"x^4": 1}}})


def test_unknown_step_key():
    with pytest.raises(ConstructionError, match="unknown step keys"):
        construct_run(2, 4, 0, {"9": {}})


@pytest.mark.parametrize("mtype,n", [(2, 4), (3, 5)])
def test_random_choices_keep_fingerprint(mtype, n):
    target = fingerprint(construct_init(mtype, n, 0).model)[0]
    finals = set()
    for seed in range(8):
        state = run_steps(mtype, n, 0, seed=seed)
        model = LocalModel(state.ring, state.maximal, state.final).validate()
        assert fingerprint(model)[0] == target, (seed, str(state.final))
        finals.add(str(state.final))
    assert len(finals) > 1


def test_functionals_round_trip():
    state = run_steps(3, 5, 0, seed=4)
    again = run_steps(3, 5, 0, functionals_from_log(state))
    assert again.final == state.final
    doc = construction_json(state)
    assert [s["step"] for s in doc["steps"]] == [2, 3, 4, 5, 6]
    assert doc["final"] == state.final.generator_strings()
