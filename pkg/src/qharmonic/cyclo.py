"""Exact arithmetic in Q(zeta_n) and in Z[zeta_p]/(p), and the finite
multiple harmonic q-series z_n(k; zeta_n) evaluated there.

Q(zeta_n) is represented as Q[x]/Phi_n(x) with eager reduction, so every
value is a rational polynomial of degree < phi(n) in the class of x. The
prime quotient Z[zeta_p]/(p) is GF(p)[x]/Phi_p(x); it has nilpotents
(Phi_p = (x-1)^(p-1) mod p), which is fine -- it is a ring, not a field,
and the only inverses ever needed are those of the cyclotomic units [m].
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

from .algebra import BAR1, EPoly, Index, hoffman_dual, in_I, index_dep
from .coeff import ModPoly, UniPoly, modpoly_ext_gcd, poly_ext_gcd, poly_str
from .errors import (
    BadDenominator,
    HasBarEntry,
    NonInvertible,
    OutOfRange,
    PreconditionViolated,
)
from .products import l_map_epoly

_scalar = (int, Fraction)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> UniPoly:
    """Phi_n, computed by dividing x^n - 1 by the Phi_d for proper divisors d.

    >>> str(cyclotomic_poly(6))
    '1 - x + x^2'
    """
    if n < 1:
        raise OutOfRange("cyclotomic polynomials need n >= 1")
    poly = UniPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            quo, rem = divmod(poly, cyclotomic_poly(d))
            assert rem.is_zero()
            poly = quo
    return poly


class CycField:
    """Q(zeta_n) as Q[x] modulo the n-th cyclotomic polynomial."""

    __slots__ = ("n", "modulus", "degree")

    def __init__(self, n: int):
        if n < 2:
            raise OutOfRange("cyclotomic fields here need n >= 2")
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.degree = self.modulus.degree()

    def __repr__(self):
        return f"Q(zeta_{self.n})"

    def element(self, coeffs: Iterable[Fraction]) -> "CycNum":
        return CycNum(self, UniPoly(coeffs) % self.modulus)

    def zeta(self) -> "CycNum":
        return self.element([0, 1])

    def one(self) -> "CycNum":
        return self.element([1])

    def zero(self) -> "CycNum":
        return self.element([])

    def from_rational(self, c) -> "CycNum":
        return self.element([Fraction(c)])


@lru_cache(maxsize=None)
def cyc_field(n: int) -> CycField:
    return CycField(n)


class CycNum:
    """An element of Q(zeta_n), reduced modulo Phi_n after every product."""

    __slots__ = ("field", "poly")

    def __init__(self, field: CycField, poly: UniPoly):
        self.field = field
        self.poly = poly

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.field.n != self.field.n:
                raise ValueError("mixed cyclotomic fields")
            return other
        if isinstance(other, _scalar):
            return self.field.from_rational(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash((self.field.n, self.poly))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNum(self.field, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNum(self.field, self.poly - other.poly)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNum(self.field, (self.poly * other.poly) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        g, s, _ = poly_ext_gcd(self.poly, self.field.modulus)
        # Phi_n is irreducible over Q, so the gcd with any nonzero residue is 1.
        assert g.degree() == 0
        return CycNum(self.field, (s * (1 / g.leading())) % self.field.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self):
        return poly_str(self.poly.coeffs, "z")

    def __repr__(self):
        return f"{self} (n={self.field.n})"


def cyc_inv(v: CycNum) -> CycNum:
    """Field inverse via extended Euclid against Phi_n."""
    return v.inverse()


@lru_cache(maxsize=None)
def _q_int_cyc(n: int, m: int) -> CycNum:
    # [m] at q = zeta_n equals 1 + zeta + ... + zeta^(m-1).
    fld = cyc_field(n)
    return fld.element([1] * m)


@lru_cache(maxsize=None)
def _f_factor_cyc(n: int, entry, m: int) -> CycNum:
    fld = cyc_field(n)
    zeta_m = fld.zeta() ** m
    if entry is BAR1:
        return zeta_m * _q_int_cyc(n, m).inverse()
    return fld.zeta() ** ((entry - 1) * m) * _q_int_cyc(n, m).inverse() ** entry


@lru_cache(maxsize=None)
def _zn_cum(n: int, suffix: Index) -> tuple:
    """cum[m] = sum over m >= m_1 > ... > m_r >= 1 of prod F at q = zeta_n."""
    fld = cyc_field(n)
    if not suffix:
        return tuple([fld.one()] * n)
    head, rest = suffix[0], suffix[1:]
    sub = _zn_cum(n, rest)
    out = [fld.zero()]
    acc = fld.zero()
    for m in range(1, n):
        acc = acc + _f_factor_cyc(n, head, m) * sub[m - 1]
        out.append(acc)
    return tuple(out)


def zn_eval(k: Index, n: int) -> CycNum:
    """z_n(k; zeta_n): the nested sum truncated below n, exactly in Q(zeta_n).

    Defined for every index in I-hat; automatically 0 when dep(k) >= n.
    """
    if n < 2:
        raise OutOfRange("z_n needs n >= 2")
    return _zn_cum(n, tuple(k))[n - 1]


def zn_map(x: EPoly, n: int) -> CycNum:
    """Linear extension of zn_eval with h acting as 1 - zeta_n."""
    fld = cyc_field(n)
    one_minus_zeta = fld.one() - fld.zeta()
    out = fld.zero()
    for k, c in x.terms.items():
        out = out + c.substitute(one_minus_zeta) * zn_eval(k, n)
    return out


def ones_bar_closed_form(n: int, r: int) -> CycNum:
    """z_n({1bar}^r) = ((-1)^r / n) C(n, r+1) (1 - zeta_n)^r."""
    if not (0 <= r < n):
        raise OutOfRange("need 0 <= r < n")
    fld = cyc_field(n)
    scalar = Fraction((-1) ** r * comb(n, r + 1), n)
    return scalar * (fld.one() - fld.zeta()) ** r


def A_m_helper(m: int, x: EPoly, n: int) -> CycNum:
    """The sum with the outer variable pinned to m, at q = zeta_n.

    A_m(e_k) = F_(k_1)(m) * (truncated sum below m over the rest);
    A_m(1) = 1 by convention.
    """
    if not (1 <= m < n):
        raise OutOfRange("need 1 <= m < n")
    fld = cyc_field(n)
    one_minus_zeta = fld.one() - fld.zeta()
    out = fld.zero()
    for k, c in x.terms.items():
        scalar = c.substitute(one_minus_zeta)
        if not k:
            out = out + scalar * fld.one()
        else:
            out = out + scalar * (_f_factor_cyc(n, k[0], m) * _zn_cum(n, k[1:])[m - 1])
    return out


def _reduce_mod_p(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise BadDenominator(f"denominator of {c} is divisible by {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def fmzv_reduce(v: CycNum, p: int) -> int:
    """Reduce modulo the prime ideal (1 - zeta_p): send zeta_p to 1, then mod p.

    The identification Z[zeta_p]/(1-zeta_p) = GF(p) is fixed by zeta_p -> 1,
    the standard choice.
    """
    if v.field.n != p:
        raise ValueError("value does not live over Q(zeta_p)")
    total = sum(v.poly.coeffs, Fraction(0))
    return _reduce_mod_p(total, p)


class PrimeCycNum:
    """An element of Z[zeta_p]/(p) = GF(p)[x]/Phi_p(x)."""

    __slots__ = ("p", "poly")

    def __init__(self, p: int, poly: ModPoly):
        self.p = p
        self.poly = poly % _phi_p(p)

    def _coerce(self, other):
        if isinstance(other, PrimeCycNum):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, int):
            return PrimeCycNum(self.p, ModPoly(self.p, [other]))
        if isinstance(other, Fraction):
            return PrimeCycNum(self.p, ModPoly(self.p, [_reduce_mod_p(other, self.p)]))
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash((self.p, self.poly))

    def is_zero(self):
        return self.poly.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeCycNum(self.p, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return PrimeCycNum(self.p, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeCycNum(self.p, self.poly - other.poly)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeCycNum(self.p, self.poly * other.poly)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeCycNum":
        g, s, _ = modpoly_ext_gcd(self.poly, _phi_p(self.p))
        if g.degree() != 0:
            raise NonInvertible(f"{self} is not a unit in Z[zeta_{self.p}]/({self.p})")
        return PrimeCycNum(self.p, s)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = PrimeCycNum(self.p, ModPoly(self.p, [1]))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self):
        return poly_str(self.poly.coeffs, "z") + f" (mod {self.p})"

    __repr__ = __str__


@lru_cache(maxsize=None)
def _phi_p(p: int) -> ModPoly:
    return ModPoly(p, [1] * p)  # Phi_p = 1 + x + ... + x^(p-1)


@lru_cache(maxsize=None)
def _prime_zeta(p: int) -> PrimeCycNum:
    return PrimeCycNum(p, ModPoly(p, [0, 1]))


@lru_cache(maxsize=None)
def _f_factor_mod_p(p: int, entry, m: int) -> PrimeCycNum:
    # [m] is a cyclotomic unit for 0 < m < p, so it stays invertible mod p.
    br_inv = PrimeCycNum(p, ModPoly(p, [1] * m)).inverse()
    z = _prime_zeta(p)
    if entry is BAR1:
        return z**m * br_inv
    return z ** ((entry - 1) * m) * br_inv**entry


@lru_cache(maxsize=None)
def _zcyc_cum(p: int, suffix: Index) -> tuple:
    one = PrimeCycNum(p, ModPoly(p, [1]))
    if not suffix:
        return tuple([one] * p)
    head, rest = suffix[0], suffix[1:]
    sub = _zcyc_cum(p, rest)
    zero = PrimeCycNum(p, ModPoly(p))
    out = [zero]
    acc = zero
    for m in range(1, p):
        acc = acc + _f_factor_mod_p(p, head, m) * sub[m - 1]
        out.append(acc)
    return tuple(out)


def zcyc_mod_p(x: EPoly, p: int) -> PrimeCycNum:
    """The single-prime component of the cyclotomic analogue: z_p(k) mod (p).

    All arithmetic runs directly in GF(p)[x]/Phi_p; h acts as 1 - zeta_p,
    and rational coefficients need denominators coprime to p.
    """
    one_minus_zeta = PrimeCycNum(p, ModPoly(p, [1, -1]))
    out = PrimeCycNum(p, ModPoly(p))
    for k, c in x.terms.items():
        scalar = c.substitute(one_minus_zeta)
        out = out + scalar * _zcyc_cum(p, k)[p - 1]
    return out


def ohno_check(k: Index, m: int, n: int):
    """Both sides of the Ohno-type relation for (k, m, n); returns
    (equal, lhs, rhs) as exact values in Q(zeta_n)."""
    if not k:
        raise PreconditionViolated("k must be nonempty")
    if not in_I(k):
        raise PreconditionViolated("k must avoid 1bar")
    r = index_dep(k)
    if m < 0 or n < r + m + 1:
        raise PreconditionViolated(f"need m >= 0 and n >= dep(k)+m+1, got m={m}, n={n}")
    fld = cyc_field(n)
    dual = hoffman_dual(k)
    s = index_dep(dual)
    lhs = fld.zero()
    for e in _compositions(m, s):
        shifted = tuple(d + x for d, x in zip(dual, e))
        lhs = lhs + zn_eval(hoffman_dual(shifted), n)
    one_minus_zeta = fld.one() - fld.zeta()
    rhs = fld.zero()
    for l in range(m + 1):
        inner = fld.zero()
        for e in _compositions(l, r):
            inner = inner + zn_eval(tuple(a + b for a, b in zip(k, e)), n)
        rhs = rhs + Fraction(comb(n, m - l + 1), n) * one_minus_zeta ** (m - l) * inner
    return lhs == rhs, lhs, rhs


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def varpi_l_check(k: Index, p: int) -> bool:
    """Check (1 - zeta_p) Zcyc(e_k) = Zcyc(L(e_k)) in Z[zeta_p]/(p)."""
    if not in_I(k):
        raise HasBarEntry("the L map needs indices without 1bar")
    one_minus_zeta = PrimeCycNum(p, ModPoly(p, [1, -1]))
    lhs = one_minus_zeta * zcyc_mod_p(EPoly({k: 1}), p)
    rhs = zcyc_mod_p(l_map_epoly(EPoly({k: 1})), p)
    return lhs == rhs
