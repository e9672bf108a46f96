from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qharmonic.algebra import BAR1, EPoly, NcPoly, e_to_word, word_to_e
from qharmonic.coeff import Laurent
from qharmonic.derivations import (
    A_ksp,
    Delta_X,
    Phi_X,
    Psi_X,
    Psi_X_series,
    a_s_index,
    d_n,
    d_power_series,
    delta_n,
    iota,
    mzv_partial,
    partial_n,
    partial_n_alt,
    partial_n_e,
    rho_s,
    z_word,
)
from qharmonic.errors import NotInH0, NotInMzvH1
from qharmonic.products import ProductTag
from qharmonic.series import (
    TruncSeries,
    series_log_one_plus_hbx,
    series_one,
    series_psi,
    ts_mul,
)

H = Laurent.h
words = st.text(alphabet="ab", min_size=1, max_size=4)


class TestDelta:
    def test_delta1_b(self):
        assert delta_n(1, NcPoly.word("b")) == NcPoly({"bab": 1, "ab": 1})

    def test_delta_a_vanishes(self):
        assert delta_n(3, NcPoly.word("a")).is_zero()

    def test_delta2_b(self):
        c = Fraction(-1, 2)
        assert delta_n(2, NcPoly.word("b")) == NcPoly({"baab": c, "aab": c})

    @given(words, words, st.integers(1, 3))
    @settings(max_examples=40)
    def test_leibniz(self, w1, w2, n):
        u, v = NcPoly.word(w1), NcPoly.word(w2)
        assert delta_n(n, u * v) == delta_n(n, u) * v + u * delta_n(n, v)


class TestDn:
    def test_d1_ab(self):
        assert d_n(1, NcPoly.word("ab")) == NcPoly({"abab": 1, "abb": H()})

    def test_d_of_unit_vanishes(self):
        assert d_n(1, NcPoly.one()).is_zero()
        assert d_n(2, NcPoly.one()).is_zero()

    @given(words, words, st.integers(1, 2))
    @settings(max_examples=25, deadline=None)
    def test_derivation_for_concatenation(self, w1, w2, n):
        u, v = NcPoly.word(w1), NcPoly.word(w2)
        assert d_n(n, u * v) == d_n(n, u) * v + u * d_n(n, v)


class TestPartial:
    def test_partial1_a(self):
        assert partial_n(1, NcPoly.word("a")) == NcPoly({"aab": -1, "ab": H(1, -1)})

    def test_partial1_b(self):
        assert partial_n(1, NcPoly.word("b")) == NcPoly({"abb": 1, "ab": 1})

    def test_partial1_ab_leibniz(self):
        got = partial_n(1, NcPoly.word("ab"))
        assert got == NcPoly({"aab": 1, "abb": H(1, -1)})
        assert word_to_e(got) == partial_n_e(1, EPoly.gen(BAR1))

    @pytest.mark.parametrize("n", range(1, 5))
    def test_alternative_forms_agree(self, n):
        for w in ("a", "b"):
            assert partial_n(n, NcPoly.word(w)) == partial_n_alt(n, NcPoly.word(w))

    @given(words, words, st.integers(1, 3))
    @settings(max_examples=30, deadline=None)
    def test_leibniz(self, w1, w2, n):
        u, v = NcPoly.word(w1), NcPoly.word(w2)
        assert partial_n(n, u * v) == partial_n(n, u) * v + u * partial_n(n, v)


class TestPartialE:
    def test_partial1_e2(self):
        assert partial_n_e(1, EPoly.gen(2)) == EPoly({(3,): 1, (2, 1): -1})

    def test_partial1_e1bar(self):
        expected = EPoly({(2,): 1, (BAR1,): H(1, -1), (BAR1, 1): -1, (BAR1, BAR1): 1})
        assert partial_n_e(1, EPoly.gen(BAR1)) == expected

    def test_gate(self):
        with pytest.raises(NotInH0):
            partial_n_e(1, EPoly.gen(1))

    def test_output_stays_in_h0(self):
        from qharmonic.algebra import enumerate_indices_up_to

        for n in (1, 2, 3):
            for k in enumerate_indices_up_to(3, "Ihat0"):
                if not k:
                    continue
                out = partial_n_e(n, EPoly({k: 1}))
                assert out.supported_in_Ihat0()

    def test_agrees_with_word_route(self):
        from qharmonic.algebra import enumerate_indices_up_to

        for n in (1, 2, 3):
            for k in enumerate_indices_up_to(4, "Ihat0"):
                if not k:
                    continue
                x = EPoly({k: 1})
                assert partial_n_e(n, x) == word_to_e(partial_n(n, e_to_word(x)))


class TestExpHomomorphisms:
    def test_phi_fixes_a(self):
        assert Phi_X(NcPoly.word("a"), 4) == TruncSeries(
            (NcPoly.word("a"),) + (NcPoly.zero(),) * 4
        )

    def test_phi_b_first_order(self):
        got = Phi_X(NcPoly.word("b"), 1)
        assert got.coeffs == (NcPoly.word("b"), NcPoly({"ab": 1, "bab": 1}))

    def test_delta_a_first_order(self):
        got = Delta_X(NcPoly.word("a"), 1)
        assert got.coeffs == (NcPoly.word("a"), NcPoly({"aab": -1, "ab": H(1, -1)}))

    def test_multiplicative(self):
        # Phi_X is an algebra homomorphism: check on a pair of words
        order = 3
        u, v = NcPoly.word("ab"), NcPoly.word("b")
        lhs = Phi_X(u * v, order)
        rhs = ts_mul(ProductTag.CONCAT, Phi_X(u, order), Phi_X(v, order))
        assert lhs == rhs

    def test_psi_series_on_constant(self):
        w = NcPoly.word("ab")
        assert Psi_X_series(TruncSeries((w,) + (NcPoly.zero(),) * 3)) == Psi_X(w, 3)


class TestRho:
    def test_rho1(self):
        assert rho_s(1, 3) == series_one(NcPoly.one(), 3)

    def test_rho2_closed_form(self):
        order = 4
        expected = series_psi(order).scale(2) + series_log_one_plus_hbx(order)
        assert rho_s(2, order) == expected

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_psi_times_rho_is_shuffle_power(self, s):
        order = 4
        psi = series_psi(order)
        lhs = ts_mul(ProductTag.CONCAT, psi, rho_s(s, order))
        rhs = psi
        for _ in range(s - 1):
            rhs = ts_mul(ProductTag.SHUFFLE_Q, rhs, psi)
        assert lhs == rhs

    @pytest.mark.parametrize("s", [1, 2])
    @pytest.mark.parametrize("target", ["a", "b"])
    def test_d_power_formula(self, s, target):
        order = 3
        w = TruncSeries((NcPoly.word(target),) + (NcPoly.zero(),) * order)
        lhs = d_power_series(s, w)
        psi = series_psi(order)
        rho = rho_s(s, order)
        left = ts_mul(
            ProductTag.SHUFFLE_Q, ts_mul(ProductTag.CONCAT, psi, rho), w
        )
        right = ts_mul(ProductTag.CONCAT, psi, ts_mul(ProductTag.SHUFFLE_Q, rho, w))
        assert lhs == left - right


class TestOhnoCombinatorics:
    def test_a0_single_two(self):
        assert A_ksp((2,), 0, 0) == EPoly.from_index((2,))

    def test_a0_shifted(self):
        assert A_ksp((2,), 0, 1) == EPoly.from_index((3,))

    def test_a1_unshifted(self):
        assert A_ksp((2,), 1, 0) == EPoly.from_index((2, 1))

    def test_a_s_zero_block(self):
        assert a_s_index((0,), 0) == EPoly.from_index((1,))
        assert a_s_index((0,), 1).is_zero()

    def test_a_s_counts(self):
        # placements of s ones into wt(k) slots
        from math import comb

        for k, s in (((2,), 2), ((1, 1), 2), ((3,), 1)):
            total = sum(
                c.constant() for c in a_s_index(k, s).terms.values()
            )
            slots = sum(k)
            assert total == comb(s + slots - 1, slots - 1)


class TestMzvComparison:
    def test_iota_embedding(self):
        assert iota(z_word(2, 1)) == EPoly.from_index((2, 1))

    def test_mzv_partial_z2(self):
        got = mzv_partial(1, z_word(2))
        assert got == NcPoly({"xyy": 1, "xxy": -1})

    def test_comparison_instance(self):
        lhs = iota(mzv_partial(1, z_word(2))).scale(Fraction(-1, 1))
        assert lhs == EPoly({(3,): 1, (2, 1): -1})
        assert lhs == partial_n_e(1, iota(z_word(2)))

    def test_iota_rejects_trailing_x(self):
        with pytest.raises(NotInMzvH1):
            iota(NcPoly.word("yx"))
