from fractions import Fraction
from itertools import combinations

import pytest

from qharmonic.algebra import BAR1, EPoly, e_to_word, enumerate_indices_up_to, word_to_e
from qharmonic.coeff import Laurent
from qharmonic.errors import Divergent, NotInI0hat, OutOfRange
from qharmonic.evalq import (
    CertifiedValue,
    QValue,
    Zq_eval,
    f_basis_expand,
    f_factor,
    polylog_partial,
    q_int,
    tail_bound,
    zeta_q_partial,
)
from qharmonic.products import shuffle_q, stuffle_q

H = Laurent.h
HALF = QValue(Fraction(1, 2))


def zeta_brute(k, q: Fraction, M: int) -> Fraction:
    """Independent oracle: enumerate every decreasing tuple explicitly."""
    r = len(k)
    if r == 0:
        return Fraction(1)
    total = Fraction(0)
    for combo in combinations(range(1, M + 1), r):
        ms = tuple(reversed(combo))  # m_1 > ... > m_r
        term = Fraction(1)
        for entry, m in zip(k, ms):
            term *= f_factor(entry, m, q)
        total += term
    return total


class TestQInt:
    def test_values(self):
        assert q_int(1, HALF) == 1
        assert q_int(3, HALF) == Fraction(7, 4)
        assert q_int(2, QValue(Fraction(1, 3))) == Fraction(4, 3)

    def test_range(self):
        with pytest.raises(OutOfRange):
            q_int(0, HALF)
        with pytest.raises(OutOfRange):
            QValue(Fraction(3, 2))


class TestZetaPartial:
    def test_golden_single_two(self):
        cv = zeta_q_partial((2,), HALF, 3)
        assert cv.value == Fraction(575, 882)
        assert cv.tail_bound == Fraction(1, 8)

    def test_empty_index(self):
        cv = zeta_q_partial((), HALF, 5)
        assert (cv.value, cv.tail_bound) == (1, 0)

    def test_bar_one(self):
        cv = zeta_q_partial((BAR1,), HALF, 1)
        assert cv.value == Fraction(1, 2)
        assert cv.tail_bound == Fraction(1, 2)

    def test_gate(self):
        with pytest.raises(NotInI0hat):
            zeta_q_partial((1, 2), HALF, 10)

    @pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(2, 5), Fraction(3, 7)])
    def test_matches_brute_force(self, q):
        qv = QValue(q)
        for k in enumerate_indices_up_to(4, "Ihat0"):
            got = zeta_q_partial(k, qv, 9)
            assert got.value == zeta_brute(k, q, 9), k

    def test_interval_consistency(self):
        for k in [(2,), (BAR1, 1), (3, 1), (2, BAR1, 1)]:
            a = zeta_q_partial(k, HALF, 8)
            b = zeta_q_partial(k, HALF, 20)
            assert a.overlaps(b)
            assert b.tail_bound < a.tail_bound

    def test_tail_bound_dominates_true_tail(self):
        # counting bound: tail after M=8 must cover the jump to M=30
        for k in [(2,), (BAR1, BAR1), (2, 1, 1)]:
            a = zeta_q_partial(k, HALF, 8)
            b = zeta_q_partial(k, HALF, 30)
            assert abs(b.value - a.value) <= a.tail_bound


class TestPolylog:
    def test_golden(self):
        cv = polylog_partial((1,), Fraction(1, 2), HALF, 2)
        assert cv.value == Fraction(2, 3)
        assert cv.tail_bound == Fraction(1, 4)

    def test_empty(self):
        cv = polylog_partial((), Fraction(1, 2), HALF, 4)
        assert (cv.value, cv.tail_bound) == (1, 0)

    def test_at_one_equals_zeta(self):
        got = polylog_partial((2,), Fraction(1), HALF, 50)
        want = zeta_q_partial((2,), HALF, 50)
        assert got.value == want.value

    def test_divergent(self):
        with pytest.raises(Divergent):
            polylog_partial((1,), Fraction(1), HALF, 10)

    def test_matches_brute_force(self):
        q = Fraction(1, 2)
        t = Fraction(2, 3)
        for k in [(1,), (2, 1), (BAR1,), (1, 1)]:
            got = polylog_partial(k, t, HALF, 8)
            want = Fraction(0)
            for combo in combinations(range(1, 9), len(k)):
                ms = tuple(reversed(combo))
                term = t ** ms[0]
                for entry, m in zip(k, ms):
                    term *= f_factor(entry, m, q)
                want += term
            assert got.value == want


class TestZqEval:
    def test_linear_combination(self):
        x = EPoly({(2,): 1, (BAR1,): H(1, -1)})
        cv = Zq_eval(x, HALF, 3)
        part_bar = zeta_q_partial((BAR1,), HALF, 3)
        assert cv.value == Fraction(575, 882) - Fraction(1, 2) * part_bar.value
        assert cv.value == Fraction(499, 1764)

    def test_zero_and_unit(self):
        assert Zq_eval(EPoly.zero(), HALF, 5).value == 0
        cv = Zq_eval(EPoly.one(), HALF, 5)
        assert (cv.value, cv.tail_bound) == (1, 0)

    def test_stuffle_relation_numeric(self):
        # Z_q(w *_q w') = Z_q(w) Z_q(w') within certified bounds
        w1, w2 = EPoly.gen(2), EPoly.from_index((BAR1, 1))
        lhs = Zq_eval(stuffle_q(w1, w2), HALF, 60)
        a, b = Zq_eval(w1, HALF, 60), Zq_eval(w2, HALF, 60)
        resid = abs(lhs.value - a.value * b.value)
        bound = (
            lhs.tail_bound
            + a.tail_bound * (abs(b.value) + b.tail_bound)
            + b.tail_bound * (abs(a.value) + a.tail_bound)
        )
        assert resid <= bound

    def test_double_shuffle_instance(self):
        w1, w2 = EPoly.gen(2), EPoly.gen(BAR1)
        st_ = stuffle_q(w1, w2)
        sh = word_to_e(shuffle_q(e_to_word(w1), e_to_word(w2)))
        cv = Zq_eval(st_ - sh, HALF, 80)
        assert abs(cv.value) <= cv.tail_bound


class TestFBasis:
    @pytest.mark.parametrize("k", range(1, 6))
    def test_expansion_identities(self, k):
        q = Fraction(1, 2)
        for l in range(0, k + 1):
            expansion = f_basis_expand(k, l)
            for m in range(1, 11):
                lhs = q ** (l * m) / q_int(m, HALF) ** k
                rhs = sum(
                    (
                        coeff.substitute(1 - q) * f_factor(entry, m, q)
                        for entry, coeff in expansion.items()
                    ),
                    Fraction(0),
                )
                assert lhs == rhs, (k, l, m)

    def test_range_errors(self):
        with pytest.raises(OutOfRange):
            f_basis_expand(0, 0)
        with pytest.raises(OutOfRange):
            f_basis_expand(2, 3)


class TestTailBound:
    def test_closed_form_at_full_sum(self):
        # with M -> r-1 the finite part is empty: bound equals q^r/(1-q)^r
        assert tail_bound(2, Fraction(1, 2), 1) == 1

    def test_depth_zero(self):
        assert tail_bound(0, Fraction(1, 2), 10) == 0

    def test_certified_value_invariants(self):
        with pytest.raises(ValueError):
            CertifiedValue(Fraction(1), Fraction(-1), 5)
