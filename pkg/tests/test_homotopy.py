import pytest
from hypothesis import given
from hypothesis import strategies as st

from obstruct.arith import RingCtx
from obstruct.errors import ChainBroken, NotIdentityAtZero
from obstruct.homotopy import (Chain, Homotopy, TranslationFamily, base_point_chain, compose_translations,
                               concat, gamma_chain, h_eval, homotopy_ctx, reverse_chain,
                               verify_chain, verify_translation)
from obstruct.orthogonal import eps, inverse_word
from obstruct.quadric import check_point, gamma, one_point, zero_point
from obstruct.suites import DISPLAYED_N2_CHAIN, DISPLAYED_N2_CHAIN_INPUT

from conftest import QXY
from test_quadric import q_points

RT = homotopy_ctx(RingCtx(()))
T = RT.gen("T")


class TestEvaluate:
    def test_examples(self):
        H2 = Homotopy(check_point(["T", "1", "0", "T*(1-T)", "0"], "Q", 2, RT))
        assert [str(c) for c in h_eval(H2, 1).coords] == ["1", "1", "0", "0", "0"]
        H1 = Homotopy(check_point(["0", "T", "0", "0", "0"], "Q", 2, RT))
        assert h_eval(H1, 0) == zero_point(2, RT)
        assert h_eval(H2, T) == H2.point

    def test_needs_homotopy_var(self):
        with pytest.raises(ValueError):
            Homotopy(zero_point(2, RingCtx(())))


class TestBaseChain:
    def test_n2_matches_displayed(self):
        c = base_point_chain(2)
        shown = [[RT.parse(x) for x in row] for row in DISPLAYED_N2_CHAIN_INPUT]
        assert [list(H.point.coords) for H in c] == shown
        assert [str(H) for H in c] == DISPLAYED_N2_CHAIN

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_verifies(self, n):
        c = base_point_chain(n)
        for H in c:
            assert H.point.residual().is_zero()
        cert = verify_chain(c, zero_point(n, RT), one_point(n, RT))
        assert len(cert.junctions) == 4

    def test_swapped_entries(self):
        c = base_point_chain(2)
        bad = Chain([c.homotopies[1], c.homotopies[0], c.homotopies[2]])
        with pytest.raises(ChainBroken) as exc:
            verify_chain(bad, zero_point(2, RT), one_point(2, RT))
        assert exc.value.junction == 1

    def test_wrong_end(self):
        with pytest.raises(ChainBroken) as exc:
            verify_chain(base_point_chain(2), zero_point(2, RT), zero_point(2, RT))
        assert exc.value.junction == 4


class TestGammaReverse:
    def test_gamma_swaps_endpoints(self):
        c = gamma_chain(base_point_chain(3))
        verify_chain(c, one_point(3, RT), zero_point(3, RT))

    def test_reverse(self):
        verify_chain(reverse_chain(base_point_chain(2)), one_point(2, RT), zero_point(2, RT))

    def test_loop(self):
        c = base_point_chain(2)
        verify_chain(concat(c, reverse_chain(c)), zero_point(2, RT), zero_point(2, RT))

    @given(q_points())
    def test_constant_chain(self, v):
        c = Chain([Homotopy.constant(v)])
        g = gamma_chain(c)
        assert g.homotopies[0] == Homotopy.constant(gamma(v))
        w = g.homotopies[0].start()
        verify_chain(g, w, w)


def qprime_u():
    R = homotopy_ctx(RingCtx(("x",)))
    return R, check_point(["x", "1", "0", "1-x*x", "0"], "Qprime", 2, R)


class TestTranslation:
    def test_empty_word_constant(self):
        R, u = qprime_u()
        H, cert = verify_translation(TranslationFamily((), 2, R), u)
        assert H.point == u and cert.identity_at_zero

    def test_not_identity(self):
        R, u = qprime_u()
        with pytest.raises(NotIdentityAtZero):
            verify_translation(TranslationFamily([eps(0, 1, R.one, 2)], 2, R), u)

    def test_moves_point(self):
        R, u = qprime_u()
        Tv = R.gen("T")
        fam = TranslationFamily([eps(0, 1, Tv, 2), eps(1, 2, 3 * Tv, 2)], 2, R)
        H, _ = verify_translation(fam, u)
        assert H.start() == u and H.end().residual().is_zero()
        assert H.end().coords == tuple(fam.at(1).apply(list(u.coords)))

    def test_compose_one(self):
        R, u = qprime_u()
        fam = TranslationFamily([eps(0, 3, R.gen("T"), 2)], 2, R)
        assert compose_translations([fam], u) == verify_translation(fam, u)[0]

    def test_compose_inverse_pair(self):
        R, u = qprime_u()
        w = [eps(0, 1, R.gen("T"), 2), eps(3, 2, R.parse("2*T"), 2)]
        fams = [TranslationFamily(w, 2, R), TranslationFamily(inverse_word(w), 2, R)]
        H = compose_translations(fams, u)
        assert H.end() == u and H.start() == u
