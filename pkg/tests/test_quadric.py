import pytest
from hypothesis import given
from hypothesis import strategies as st

from obstruct.errors import NotOnQuadric, OrientationInvalid
from obstruct.quadric import (QuadricPoint, alpha, beta, check_point, eta, gamma, ideal_I, ideal_J,
                              one_point, zero_point)
from obstruct.groebner import Ideal

from conftest import FXY, QXY, polys


@st.composite
def q_points(draw, ctx=QXY, n=2):
    """Points of Q built as f_k = a, g_i = a*h_i, g_k = b - sum_{i != k} f_i h_i with {a, b} = {s, 1 - s}."""
    s = draw(polys(ctx, max_deg=2, max_terms=3))
    f = [draw(polys(ctx, max_deg=2, max_terms=3)) for _ in range(n)]
    h = [draw(polys(ctx, max_deg=1, max_terms=2)) for _ in range(n)]
    k = draw(st.integers(0, n - 1))
    a, b = (s, 1 - s) if draw(st.booleans()) else (1 - s, s)
    f[k] = a
    g = [a * hi for hi in h]
    g[k] = b - sum((f[i] * h[i] for i in range(n) if i != k), ctx.zero)
    return QuadricPoint("Q", s, tuple(f), tuple(g))


class TestCheckPoint:
    def test_zero(self):
        v = check_point(["0"] * 5, "Q", 2, QXY)
        assert v == zero_point(2, QXY)

    def test_qprime(self):
        assert check_point(["0", "1", "0", "1", "0"], "Qprime", 2, QXY).is_valid()

    def test_not_on_q(self):
        with pytest.raises(NotOnQuadric) as exc:
            check_point(["0", "1", "0", "1", "0"], "Q", 2, QXY)
        assert str(exc.value.residual) == "1"

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            check_point(["0"] * 4, "Q", 2, QXY)

    @given(q_points())
    def test_generated_points_valid(self, v):
        assert v.residual().is_zero()

    @given(q_points(), polys(QXY, max_deg=1, max_terms=1))
    def test_shifted_s(self, v, d):
        # shifting s by d changes the residual by d*(2s + d - 1)
        bumped = QuadricPoint("Q", v.s + d, v.f, v.g)
        assert bumped.residual() == d * (2 * v.s + d - 1)
        assert bumped.is_valid() == (d * (2 * v.s + d - 1)).is_zero()

    def test_power_of_parenthesis_is_not_grammar(self):
        from obstruct.errors import PolySyntaxError

        with pytest.raises(PolySyntaxError):
            QXY.parse("(1+y)^2")


class TestAlphaBeta:
    def test_examples(self):
        one = check_point(["1", "0", "0", "0", "0"], "Qprime", 2, QXY)
        assert alpha(one) == one_point(2, QXY)
        minus = check_point(["-1", "0", "0", "0", "0"], "Qprime", 2, QXY)
        assert alpha(minus) == zero_point(2, QXY)

    @given(q_points())
    def test_inverse_pair(self, v):
        u = beta(v)
        assert u.variant == "Qprime" and u.is_valid()
        assert alpha(u) == v and alpha(u).is_valid()

    @given(q_points(ctx=FXY))
    def test_inverse_pair_fp(self, v):
        assert alpha(beta(v)) == v and beta(v).is_valid()


class TestGamma:
    def test_zero_to_one(self):
        assert gamma(zero_point(3, QXY)) == one_point(3, QXY)

    @given(q_points())
    def test_involution(self, v):
        w = gamma(v)
        assert w.is_valid() and gamma(w) == v

    @given(q_points())
    def test_swaps_ideals(self, v):
        assert ideal_I(gamma(v)).same_as(ideal_J(v))
        assert ideal_J(gamma(v)).same_as(ideal_I(v))


class TestIdeals:
    def test_simple(self):
        v = check_point(["0", "x", "y", "0", "0"], "Q", 2, QXY)
        assert ideal_I(v).same_as(Ideal([QXY.parse("x"), QXY.parse("y")]))
        assert ideal_J(v).is_unit()

    def test_derived_point(self):
        v = check_point(["-x-y-x*y", "x+x^2", "y+y^2", "-(1+y)*(1+y)", "-(1+x)"], "Q", 2, QXY)
        assert ideal_I(v).same_as(Ideal([QXY.parse("x"), QXY.parse("y")]))

    @given(q_points())
    def test_comaximal(self, v):
        assert Ideal(ideal_I(v).gens + ideal_J(v).gens, QXY).is_unit()


class TestEta:
    def test_one(self):
        o = eta(one_point(2, QXY))
        assert o.I.is_unit()

    def test_simple(self):
        v = check_point(["0", "x", "y", "0", "0"], "Q", 2, QXY)
        o = eta(v)
        assert [str(x) for x in o.f] == ["x", "y"]

    def test_derived(self):
        v = check_point(["-x-y-x*y", "x+x^2", "y+y^2", "-(1+y)*(1+y)", "-(1+x)"], "Q", 2, QXY)
        o = eta(v)
        assert [str(x) for x in o.f] == ["x^2 + x", "y^2 + y"]
        sq = Ideal([QXY.parse(m) for m in ("x^2", "x*y", "y^2")])
        assert o.f[0] - QXY.parse("x") in sq

    @given(q_points())
    def test_eta_always_valid(self, v):
        try:
            eta(v)
        except OrientationInvalid as exc:  # pragma: no cover - would be a real bug
            pytest.fail(str(exc))
