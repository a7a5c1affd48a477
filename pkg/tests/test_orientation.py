import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from obstruct.errors import BudgetExhausted, NotComaximal, NotSurjectiveModSquare
from obstruct.groebner import Ideal, height
from obstruct.homotopy import Homotopy, base_point_chain, homotopy_ctx
from obstruct.orientation import (MoveBudget, RowNotInIdeal, combine_homotopy, eta_of,
                                  lift_orientation, move_orientation, orientation_gamma,
                                  orientations_equal, pseudo_difference, pseudo_sum,
                                  rows_congruent, square_ideal, star_product, validate_orientation)
from obstruct.quadric import check_point, ideal_J

from conftest import QXY, polys

P = QXY.parse


def orient(ideal, row):
    return validate_orientation(Ideal([P(g) for g in ideal], QXY), [P(x) for x in row])


@st.composite
def point_orientations(draw):
    """Orientations of the maximal ideal at (a, b): an invertible constant change of the
    obvious generators plus noise from I^2."""
    a, b = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
    u, v = P(f"x - ({a})"), P(f"y - ({b})")
    m = [draw(st.integers(-3, 3)) for _ in range(4)]
    assume(m[0] * m[3] - m[1] * m[2] != 0)
    noise = [draw(polys(QXY, max_deg=1, max_terms=2)) for _ in range(2)]
    row = [m[0] * u + m[1] * v + noise[0] * u * u, m[2] * u + m[3] * v + noise[1] * u * v]
    return validate_orientation(Ideal([u, v], QXY), row), (a, b)


class TestValidate:
    def test_generators(self):
        orient(["x", "y"], ["x", "y"])

    def test_perturbed(self):
        o = orient(["x", "y"], ["x+x^2", "y+y^2"])
        assert all(c.holds() for c in o.gen_certs + o.row_certs)

    def test_invalid(self):
        with pytest.raises(NotSurjectiveModSquare) as exc:
            orient(["x", "y"], ["x", "x"])
        assert str(exc.value.generator) == "y"

    def test_row_outside_ideal(self):
        with pytest.raises(RowNotInIdeal):
            orient(["x", "y"], ["x", "1"])

    def test_equality(self):
        assert orientations_equal(orient(["x", "y"], ["x", "y"]), orient(["y", "x"], ["x+x^2", "y+x*y"]))
        assert not orientations_equal(orient(["x", "y"], ["x", "y"]), orient(["x", "y"], ["y", "x"]))


class TestLift:
    def test_exact_generators(self):
        w = lift_orientation(orient(["x", "y"], ["x", "y"]))
        assert w.point == check_point(["0", "x", "y", "0", "0"], "Q", 2, QXY)

    def test_fixture(self):
        w = lift_orientation(orient(["x", "y"], ["x+x^2", "y+y^2"]))
        assert w.point.residual().is_zero()
        assert str(w.s) == "-x*y - x - y"
        assert orientations_equal(eta_of(w.point), w.orientation)

    def test_unit_ideal(self):
        w = lift_orientation(orient(["1"], ["1", "0"]))
        assert orientations_equal(eta_of(w.point), w.orientation)

    def test_gamma(self):
        w = lift_orientation(orient(["x", "y"], ["x+x^2", "y+y^2"]))
        og = orientation_gamma(w)
        assert og.I.same_as(Ideal([P("x+x^2"), P("y+y^2"), P("(1+x)*(1+y)")]))
        assert [str(x) for x in og.f] == ["x^2 + x", "y^2 + y"]

    @given(point_orientations())
    def test_lift_restores_orientation(self, data):
        o, _ = data
        w = lift_orientation(o)
        assert w.point.residual().is_zero()
        assert orientations_equal(eta_of(w.point), o)
        for k, x in enumerate(o.f):
            if x.is_zero():
                assert w.g[k].is_zero()


class TestStar:
    def test_unit_partner(self):
        a = orient(["x", "y"], ["x", "y"])
        sr = star_product(a, orient(["1"], ["1", "0"]))
        assert rows_congruent(sr.f, a.f, square_ideal(a.I)) is not None

    def test_fixture(self):
        sr = star_product(orient(["x", "y"], ["x", "y"]), orient(["x-1", "y"], ["x-1", "y"]))
        assert [str(x) for x in sr.f] == ["2*x^3 - 3*x^2 + x", "y"]
        assert sr.orientation.I.same_as(Ideal([P("x*(x-1)"), P("y")]))

    def test_not_comaximal(self):
        with pytest.raises(NotComaximal):
            star_product(orient(["x", "y"], ["x", "y"]), orient(["x", "y"], ["y", "x"]))

    @given(point_orientations(), point_orientations())
    def test_restrictions(self, d1, d2):
        (a, p1), (b, p2) = d1, d2
        assume(p1 != p2)
        sr = pseudo_sum(a, b)
        assert rows_congruent(sr.f, a.f, square_ideal(a.I)) is not None
        assert rows_congruent(sr.f, b.f, square_ideal(b.I)) is not None
        assert sr.provenance["kind"] == "pseudo-sum"


class TestMove:
    def test_fixture(self):
        mv = move_orientation(orient(["x", "y"], ["x", "y"]), Ideal([P("x-1"), P("y-1")]))
        assert mv.witness.point == check_point(["0", "x", "y", "0", "0"], "Q", 2, QXY)
        assert mv.height == float("inf") and mv.attempt == 0

    def test_unit_k(self):
        o = orient(["x", "y"], ["x+x^2", "y+y^2"])
        mv = move_orientation(o, Ideal([QXY.one]))
        assert mv.attempt == 0 and mv.witness.point == lift_orientation(o).point

    def test_budget(self):
        # the plain lift has J = (x + x^2, y + y^2, (1 + x)(1 + y)), which vanishes at (-1, 0)
        # like K does, and a single attempt only tries lambda = 0
        o = orient(["x", "y"], ["x+x^2", "y+y^2"])
        with pytest.raises(BudgetExhausted):
            move_orientation(o, Ideal([P("x+1"), P("y")]), budget=MoveBudget(attempts=1))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_seeds_certified(self, seed):
        o = orient(["x", "y"], ["x+x^2", "y+y^2"])
        K = Ideal([P("x+1"), P("y+2")])
        mv = move_orientation(o, K, seed=seed)
        assert mv.comax.holds() and height(mv.J) >= 2
        assert ideal_J(mv.witness.point).same_as(mv.J)

    def test_difference_with_trivial(self):
        a = orient(["x", "y"], ["x", "y"])
        sr = pseudo_difference(a, orient(["1"], ["1", "0"]), seed=3)
        assert rows_congruent(sr.f, a.f, square_ideal(a.I)) is not None
        assert sr.provenance["seed"] == 3


class TestCombine:
    def fixtures(self):
        from obstruct.suites import combine_fixtures
        return combine_fixtures()

    def test_all_fixtures(self):
        for name, H, J, wJ, lams in self.fixtures():
            out = combine_homotopy(H, J, wJ, lams)
            assert out.homotopy.point.residual().is_zero(), name
            assert all(e.ideal_equal and e.congruence is not None for e in out.endpoints), name

    def test_unit_j(self):
        RT = homotopy_ctx(QXY)
        H = Homotopy.constant(check_point(["0", "x", "y", "0", "0"], "Q", 2, QXY))
        J = Ideal([QXY.one])
        out = combine_homotopy(H, J, validate_orientation(J, [QXY.one, QXY.zero]), [0, 0])
        for e in out.endpoints:
            assert e.ideal_equal
        assert out.homotopy.ctx == RT

    def test_base_chain_entry(self):
        H = base_point_chain(2, QXY).homotopies[1]
        J = Ideal([P("x"), P("y")])
        out = combine_homotopy(H, J, validate_orientation(J, [P("x"), P("y")]), [0, 1])
        assert len(out.endpoints) == 2
