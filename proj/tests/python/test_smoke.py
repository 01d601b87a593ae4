import pytest

import depa

G2 = """
vertex 1 : k
vertex 2 : truncated_poly(3)
arrow 1 : 1 -> 2 kind=tensor
"""

B2 = """
vertex 1 : k
vertex 2 : truncated_poly(2)
arrow 1 : 1 -> 2 kind=tensor
"""

A3_FOLDED = """
vertex 1 : k
vertex 2 : k
vertex 3 : k
arrow 1 : 1 -> 2 kind=tensor
arrow 2 : 3 -> 2 kind=tensor
fold by ((1 3); (1 2))
"""

TWO_LOOP_RULES = """
gen a : 1 -> 1
gen b : 1 -> 1
bound 12
order vertex 1: b > a
rule: a.a.a -> 0
rule: b.b -> 0
rule: b.a.b.a -> -1*a.b.a.b - b.a.a.b
"""


def test_hilbert_series():
    h = depa.hilbert(G2)
    assert h["stabilized"]
    assert h["total"] == 28
    assert h["dims"] == [4, 6, 8, 6, 4]
    # unit component of the ground vertex
    assert h["blocks"][(1, 1)][(0, 0)] == 1
    # top bidegree of the decorated vertex: t^4 s^3 (doubled exponent 6)
    assert h["blocks"][(2, 2)][(4, 6)] == 1


def test_total_dimension_and_signs_agree():
    assert depa.total_dimension(B2) == 10
    plus = depa.hilbert(B2, signs="plus")
    signed = depa.hilbert(B2, signs="signed")
    assert plus["blocks"] == signed["blocks"]


def test_flatness():
    rep = depa.flatness(A3_FOLDED, B2)
    assert rep["flat"]
    assert rep["first_difference"] is None
    with pytest.raises(ValueError, match="NotComparable"):
        depa.flatness(B2, G2)


def test_confluence():
    out = depa.confluence(TWO_LOOP_RULES)
    assert out["confluent"]
    assert out["input_rules"] == 3
    assert out["irreducible_total"] == 24


def test_moment_check():
    out = depa.moment_check(B2, [1, 2], seeds=5)
    assert out["all_equal"]
    assert out["first_mismatch"] is None


def test_center_and_pairing():
    assert depa.center(G2) == {0: 1, 4: 4}
    pr = depa.frobenius_pairing(G2)
    assert pr["dim"] == 28
    assert pr["rank"] == 28
    assert pr["nondegenerate"]


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError, match="line 1"):
        depa.hilbert("vertex 1 : nosuchthing\n")
