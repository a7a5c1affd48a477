import math
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from obstruct.arith import RingCtx, random_poly
from obstruct.errors import NotComaximal, ResourceBudgetExceeded
from obstruct.groebner import (Budget, Ideal, budget_scope, comaximal_witness, crt_lift, height,
                               ideal_combine, ideal_member, reduce_with_trace)

from conftest import FXY, QXY, polys

P = QXY.parse


def I(*gens, ctx=QXY):
    return Ideal([ctx.parse(g) for g in gens], ctx)


def sympy_gb(ideal):
    syms = sympy.symbols(ideal.ctx.vars)
    env = dict(zip(ideal.ctx.vars, syms))
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=env) for g in ideal.gens]
    kw = {"modulus": ideal.ctx.p} if ideal.ctx.p else {}
    return sympy.groebner(exprs, *syms, order="grevlex", **kw), env


def canon(ideal):
    return sorted(str(g.monic()) for g in ideal.gb)


class TestBuchberger:
    def test_already_basis(self):
        assert canon(I("x", "y")) == ["x", "y"]

    def test_row_ops(self):
        assert canon(I("x+y", "x-y")) == ["x", "y"]

    def test_unit(self):
        J = I("1")
        assert canon(J) == ["1"] and J.is_unit()

    def test_budget(self):
        big = I("x^3*y - 2*x*y^2 + 1", "x^2*y^2 - y^3 + x", "x^4 - y + 3")
        with pytest.raises(ResourceBudgetExceeded):
            Ideal(big.gens, QXY, Budget(max_pairs=2)).gb
        with budget_scope(Budget(max_pairs=2)):
            with pytest.raises(ResourceBudgetExceeded):
                Ideal(big.gens, QXY).gb

    @pytest.mark.parametrize("ctx", [QXY, FXY], ids=["Q", "Fp"])
    def test_against_sympy(self, ctx):
        rng = random.Random(7)
        for _ in range(15):
            J = Ideal([random_poly(ctx, rng, degree=2, nterms=3) for _ in range(rng.randint(1, 3))], ctx)
            G, env = sympy_gb(J)
            syms = list(env.values())
            kw = {"modulus": ctx.p} if ctx.p else {"domain": "QQ"}

            def mono(e):
                return sympy.Poly(e, *syms, **kw).monic()

            ours = {mono(sympy.sympify(str(g).replace("^", "**"), locals=env)) for g in J.gb}
            theirs = {mono(e) for e in G.exprs}
            assert ours == theirs


class TestReduction:
    def test_in_ideal(self):
        J = I("x", "y")
        nf, cert = reduce_with_trace(P("x^2 + x*y"), J)
        assert nf.is_zero() and cert.holds() and cert.recombine() == P("x^2 + x*y")

    def test_remainder(self):
        nf, cert = reduce_with_trace(P("x + 1"), I("x"))
        assert nf == QXY.one and [str(c) for c in cert.cofactors] == ["1"]
        nf, cert = reduce_with_trace(P("y"), I("x"))
        assert nf == P("y") and [str(c) for c in cert.cofactors] == ["0"]

    @given(polys(QXY), polys(QXY), polys(QXY))
    def test_trace_recombines(self, f, a, b):
        J = Ideal([a + QXY.parse("x^2"), b + QXY.parse("y^2")], QXY)
        nf, cert = reduce_with_trace(f, J)
        assert cert.holds() and cert.element == f - nf
        assert J.normal_form(nf) == nf


class TestMembership:
    def test_examples(self):
        c = ideal_member(P("x^2"), I("x"))
        assert c and [str(x) for x in c.cofactors] == ["x"]
        c = ideal_member(QXY.one, I("x", "x-1"))
        assert c and c.recombine() == QXY.one
        miss = ideal_member(P("x"), I("y"))
        assert not miss and miss.normal_form == P("x")

    @given(polys(FXY), polys(FXY))
    def test_multiples_are_members(self, a, b):
        J = Ideal([FXY.parse("x^2 - y"), FXY.parse("x*y + 1")], FXY)
        assert ideal_member(a * J.gens[0] + b * J.gens[1], J)


class TestCombine:
    def test_product_square(self):
        assert canon(ideal_combine("product", I("x"), I("y"))) == ["x*y"]
        assert canon(ideal_combine("square", I("x", "y"))) == ["x*y", "x^2", "y^2"]

    def test_intersection(self):
        K = ideal_combine("intersection", I("x"), I("x-1"))
        assert canon(K) == ["x^2 - x"]

    @given(polys(QXY, max_deg=2, max_terms=3))
    def test_intersection_property(self, f):
        A, B = I("x", "y^2"), I("x^2", "y")
        K = ideal_combine("intersection", A, B)
        assert A.contains_ideal(K) and B.contains_ideal(K)
        g = f * QXY.parse("x*y")
        assert g in K

    def test_comaximal(self):
        w = comaximal_witness(I("x"), I("x-1"))
        assert w.holds() and w.a == P("x") and w.b == P("1-x")
        assert comaximal_witness(I("x", "y"), I("x-1", "y-1")).holds()
        with pytest.raises(NotComaximal):
            comaximal_witness(I("x"), I("x"))

    def test_squared_witness(self):
        w = comaximal_witness(I("x", "y"), I("x-1", "y-1")).squared()
        assert w.holds()

    def test_crt(self):
        A, B = I("x"), I("x-1")
        assert crt_lift(A, B, QXY.zero, QXY.one) == P("x")
        assert crt_lift(A, B, QXY.one, QXY.zero) == P("1-x")
        A2, B2 = ideal_combine("square", A), ideal_combine("square", B)
        cert = comaximal_witness(A, B).squared()
        e = crt_lift(A2, B2, QXY.one, QXY.zero, cert)
        assert e - 1 in A2 and e in B2

    @given(polys(QXY, max_deg=2), polys(QXY, max_deg=2))
    def test_crt_property(self, r, s):
        A, B = I("x", "y"), I("x-1", "y+2")
        e = crt_lift(A, B, r, s)
        assert e - r in A and e - s in B


class TestHeight:
    def test_examples(self):
        assert height(I("x")) == 1
        assert height(I("x", "y")) == 2
        assert height(I("1")) == math.inf
        assert height(I("x*y")) == 1
        assert height(I("x^2", "x*y")) == 1

    def test_three_vars(self):
        R = RingCtx(("a", "b", "c"))
        assert height(Ideal([R.parse("a*b"), R.parse("a*c")], R)) == 1
        assert height(Ideal([R.parse("a"), R.parse("b*c")], R)) == 2
