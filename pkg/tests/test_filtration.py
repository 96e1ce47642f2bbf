import pytest

from nilfilt.core import Ring
from nilfilt.filtration import (
    J1_NOTE,
    LocalModel,
    ModelError,
    analyze,
    bf_filtration,
    compute_m,
    containment_report,
    cuspidal_model,
    duality_check,
    exactness_suite,
    filtrations,
    fingerprint,
    multiplication_nonzero,
    rank_profiles,
    verify_cuspidal,
    x_filtration,
    y_filtration,
)
from nilfilt.ideal import ideal


def model(vars, I, J):
    return LocalModel.from_strings(vars, I, J)


def xyz(J):
    return model(["x", "y", "z"], ["x", "y", "z"], J)


def xy(J):
    return model(["x", "y"], ["x", "y"], J)


COUNTER = ["x^3", "x*y", "y^4"]


def gens(K):
    return sorted(K.generator_strings())


def test_model_validation():
    with pytest.raises(ModelError):
        model(["x", "y"], ["x", "y"], ["x^2"])  # not zero-dimensional
    with pytest.raises(ModelError):
        model(["x", "y"], ["x^2", "y"], ["x^3", "y"]).validate()  # I not reduced
    with pytest.raises(ModelError):
        model(["x", "y"], ["x", "y"], ["x", "y"]).validate()  # J = I
    with pytest.raises(ModelError):
        model(["x", "y"], ["x"], ["x^2", "y"]).validate()  # J not inside I


def test_compute_m_examples():
    assert compute_m(xyz(["y^2+x^4", "x*y", "z"])) == 4
    assert compute_m(xy(COUNTER)) == 3
    assert compute_m(xy(["x^2", "x*y", "y^2"])) == 1


def test_bf_filtration_examples():
    M = xyz(["y^2+x^3", "x*y", "z"])
    bf = bf_filtration(M, compute_m(M))
    assert bf[0].is_unit()
    assert bf[2] == ideal(M.ring, "x^2", "x*y", "y^2", "z")
    C = xy(COUNTER)
    assert xy(COUNTER) and bf_filtration(C, 3)[3] == ideal(C.ring, "x^3", "x*y", "y^3")


def test_x_and_y_filtrations():
    M = xyz(["y^2+x^3", "x*y", "z"])
    xs = x_filtration(M, 3)
    assert xs[2] == ideal(M.ring, "x^2", "y", "z")
    assert xs[0].is_unit() and xs[4] == M.J
    ys = y_filtration(M, 3)
    assert ys[1] == M.I and ys[2] == ideal(M.ring, "x^2", "x*y", "y^2", "z") and ys[4] == M.J

    M = xyz(["y^3+x^5", "x*y", "z"])
    assert x_filtration(M, 5)[4] == ideal(M.ring, "x^4", "x*y", "y^2", "z")
    assert y_filtration(M, 5)[3] == ideal(M.ring, "x^3", "x*y", "y^3", "z")

    C = xy(COUNTER)
    assert x_filtration(C, 3)[2] == ideal(C.ring, "x", "y^2")
    assert y_filtration(C, 3)[3] == ideal(C.ring, "x^2", "x*y", "y^3")


def test_rank_profiles():
    B, A, Mr = rank_profiles(xyz(["y^2+x^4", "x*y", "z"]))
    assert (A, Mr) == ([1, 2, 1, 1, 1], [1, 1, 1, 2, 1])
    B, A, Mr = rank_profiles(xyz(["y^3+x^5", "x*y", "z"]))
    assert (A, Mr) == ([1, 2, 2, 1, 1, 1], [1, 1, 1, 2, 2, 1])
    assert sum(A) == sum(Mr) == sum(B)


def test_duality_check():
    assert duality_check(xyz(["y^2+x^5", "x*y", "z"])).passed
    assert not duality_check(xy(COUNTER)).passed
    rep = filtrations(xyz(["x^2", "y", "z"]))
    assert rep.rankA == rep.rankM == [1, 1] and duality_check(rep).passed


def test_multiplication_nonzero():
    M = xyz(["y^2+x^3", "x*y", "z"])
    assert multiplication_nonzero(M, 1, 1) == (True, True)
    with pytest.raises(IndexError):
        multiplication_nonzero(M, 0, 5)


def test_exactness_suite_c3():
    for n in (4, 5, 6):
        checks = exactness_suite(xyz([f"y^3+x^{n}", "x*y", "z"]), "C3")
        assert checks and all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_exactness_suite_c2_known_gap():
    # I^2 ∩ J_3 equals I*I_2 here, so the K^2 quotient the suite expects is zero
    checks = {c.name[:5]: c for c in exactness_suite(xyz(["y^2+x^4", "x*y", "z"]), "C2")}
    assert checks["C2(a)"].passed and checks["C2(c)"].passed and checks["C2(e)"].passed
    assert not checks["C2(b)"].passed and not checks["C2(d)"].passed


def test_exactness_suite_counterexample_fails():
    assert not all(c.passed for c in exactness_suite(xy(COUNTER), "C2"))


def test_containment_report():
    assert all(c.passed for c in containment_report(xyz(["y^2+x^3", "x*y", "z"])))
    checks = containment_report(xy(COUNTER))
    assert all(c.passed for c in checks)
    assert any("bf" in c.detail and "=" in c.detail for c in checks)


def test_cuspidal_model():
    M, exp = cuspidal_model(2, 3, 1)
    assert M.ring.vars == ("x", "y", "z")
    assert M.J == ideal(M.ring, "y^2+x^3", "x*y", "z")
    assert exp.rankA == [1, 2, 1, 1] and exp.multiplicity == 5
    M, exp = cuspidal_model(3, 4, 2)
    assert M.ring.vars == ("x", "y", "z1", "z2")
    with pytest.raises(ValueError):
        cuspidal_model(2, 2, 0)
    with pytest.raises(ValueError):
        cuspidal_model(3, 3, 0)


def test_verify_cuspidal_c3():
    rep = verify_cuspidal(3, 6, 0)
    assert rep.passed, [c.name for c in rep.failures()]
    assert rep.label == "C_{3,6}"
    assert all(row["pass"] for row in rep.table)


def test_verify_cuspidal_c2_tables_match():
    rep = verify_cuspidal(2, 5, 1)
    assert all(row["pass"] for row in rep.table)
    assert {c.name[:5] for c in rep.failures()} == {"C2(b)", "C2(d)"}
    assert J1_NOTE in rep.notes


def test_verify_wrong_table_fails():
    M, exp = cuspidal_model(3, 4, 0)
    from nilfilt.filtration import verify

    rep = verify(M, exp.override({"J:I^2": ["x^3", "y"]}))
    assert not rep.passed
    with pytest.raises(KeyError):
        exp.override({"no such row": ["x"]})


def test_fingerprint_labels():
    assert fingerprint(xy(["y^2+x^5", "x*y"]))[1] == "C_{2,5}"
    assert fingerprint(xy(COUNTER))[1] == "unknown"
    assert fingerprint(xyz(["x^4", "y", "z"]))[1] == "primitive(4)"
    assert fingerprint(xy(["y^3+x^4", "x*y"]))[1] == "C_{3,4}"


def test_analyze_counterexample():
    rep = analyze(xy(COUNTER))
    assert rep.m == 3 and rep.label == "unknown"
    assert rep.passed  # duality is informational here
    assert any(c.informational and not c.passed for c in rep.checks)
