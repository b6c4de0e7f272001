"""Exact rational spans: rank, membership, and reduction."""

from fractions import Fraction

from peakalg.linalg import Span, in_span, rank

F = Fraction


def test_rank_frozen():
    assert rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank([[F(0), F(0)]]) == 0
    assert rank([]) == 0


def test_membership():
    basis = [[F(1), F(1), F(0)], [F(0), F(1), F(1)]]
    assert in_span([F(1), F(2), F(1)], basis)
    assert not in_span([F(1), F(0), F(1)], basis)
    assert in_span([F(0), F(0), F(0)], basis)


def test_span_add_reports_growth():
    s = Span()
    assert s.dim == 0
    assert s.add([F(1), F(2)])
    assert not s.add([F(2), F(4)])
    assert s.add([F(0), F(1)])
    assert s.dim == 2


def test_reduce_returns_the_residual():
    s = Span([[F(1), F(0)]])
    residual = s.reduce([F(3), F(5)])
    assert residual == [F(0), F(5)]
    assert s.contains([F(7), F(0)])


def test_equals_is_subspace_equality():
    a = Span([[F(1), F(0)], [F(0), F(1)]])
    b = Span([[F(1), F(1)], [F(1), F(-1)]])
    assert a.equals(b)
    c = Span([[F(1), F(1)]])
    assert not a.equals(c)


def test_fraction_arithmetic_stays_exact():
    # thirds and sevenths do not round: eliminating them reproduces zero
    v1 = [F(1, 3), F(1, 7)]
    v2 = [F(2, 3), F(2, 7)]
    assert rank([v1, v2]) == 1
    assert in_span([F(1, 21), F(1, 49)], [v1])
