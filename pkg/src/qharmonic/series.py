"""Truncated power series in X over the word algebra or the e-basis.

A TruncSeries of order N stores the coefficients of X^0 .. X^N; all
arithmetic truncates at X^N. The coefficient product is selected by a
ProductTag, so exp and log work uniformly for concatenation, q-shuffle,
q-stuffle and the classical stuffle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import EPoly, NcPoly
from .coeff import Laurent
from .errors import BadConstantTerm, OrderMismatch
from .products import ProductTag, shuffle_q, stuffle_classical, stuffle_q


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients (c_0, ..., c_N) of a series truncated at X^N."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the X^0 coefficient")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        _check_orders(self, other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        _check_orders(self, other)
        return TruncSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-a for a in self.coeffs))

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(tuple(a.scale(c) for a in self.coeffs))

    def map_coeffs(self, f) -> "TruncSeries":
        return TruncSeries(tuple(f(a) for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)


def _check_orders(s: TruncSeries, t: TruncSeries):
    if len(s.coeffs) != len(t.coeffs):
        raise OrderMismatch(f"orders {s.order} and {t.order} differ")


def _coeff_product(tag: ProductTag, sample):
    if isinstance(sample, NcPoly):
        table = {
            ProductTag.CONCAT: lambda u, v: u * v,
            ProductTag.SHUFFLE_Q: shuffle_q,
        }
    elif isinstance(sample, EPoly):
        table = {
            ProductTag.CONCAT: lambda u, v: u * v,
            ProductTag.STUFFLE_Q: stuffle_q,
            ProductTag.STUFFLE_CLASSICAL: stuffle_classical,
        }
    else:
        raise TypeError(f"series coefficients of unsupported type {type(sample)!r}")
    if tag not in table:
        raise ValueError(f"{tag} does not act on {type(sample).__name__} coefficients")
    return table[tag]


def series_one(like, order: int) -> TruncSeries:
    one = type(like).one()
    zero = type(like).zero()
    return TruncSeries((one,) + (zero,) * order)


def series_zero(like, order: int) -> TruncSeries:
    zero = type(like).zero()
    return TruncSeries((zero,) * (order + 1))


def ts_mul(tag: ProductTag, s: TruncSeries, t: TruncSeries) -> TruncSeries:
    """Cauchy product with the coefficientwise product selected by tag."""
    _check_orders(s, t)
    mul = _coeff_product(tag, s.coeffs[0])
    zero = type(s.coeffs[0]).zero()
    n = len(s.coeffs)
    out = [zero] * n
    for i, a in enumerate(s.coeffs):
        if a.is_zero():
            continue
        for j in range(n - i):
            b = t.coeffs[j]
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + mul(a, b)
    return TruncSeries(tuple(out))


def ts_exp(tag: ProductTag, f: TruncSeries) -> TruncSeries:
    """exp with respect to tag; f must have zero constant term."""
    if not f.coeffs[0].is_zero():
        raise BadConstantTerm("exp needs constant term 0")
    n = f.order
    acc = series_one(f.coeffs[0], n) + f
    power = f
    for m in range(2, n + 1):
        power = ts_mul(tag, power, f)
        acc = acc + power.scale(Fraction(1, factorial(m)))
    return acc


def ts_log(tag: ProductTag, g: TruncSeries) -> TruncSeries:
    """log with respect to tag; g must have constant term 1."""
    one = type(g.coeffs[0]).one()
    if g.coeffs[0] != one:
        raise BadConstantTerm("log needs constant term 1")
    f = g - series_one(g.coeffs[0], g.order)
    acc = f
    power = f
    for m in range(2, g.order + 1):
        power = ts_mul(tag, power, f)
        acc = acc + power.scale(Fraction((-1) ** (m - 1), m))
    return acc


def geometric(g, order: int) -> TruncSeries:
    """1/(1 - gX) = sum g^n X^n, with concatenation powers of g."""
    coeffs = [type(g).one()]
    for _ in range(order):
        coeffs.append(coeffs[-1] * g)
    return TruncSeries(tuple(coeffs))


def series_psi(order: int) -> TruncSeries:
    """psi(X) = (1/h) a log(1 + h b X) = sum ((-1)^(n-1)/n) h^(n-1) a b^n X^n."""
    coeffs = [NcPoly.zero()]
    for n in range(1, order + 1):
        coeffs.append(
            NcPoly({"a" + "b" * n: Laurent.h(n - 1, Fraction((-1) ** (n - 1), n))})
        )
    return TruncSeries(tuple(coeffs))


def series_phi(order: int) -> TruncSeries:
    """phi(X) = (log(1 + aX)) b = sum ((-1)^(n-1)/n) a^n b X^n."""
    coeffs = [NcPoly.zero()]
    for n in range(1, order + 1):
        coeffs.append(NcPoly({"a" * n + "b": Fraction((-1) ** (n - 1), n)}))
    return TruncSeries(tuple(coeffs))


def series_log_one_plus_hbx(order: int) -> TruncSeries:
    """log(1 + h b X) = sum ((-1)^(n-1)/n) h^n b^n X^n (concatenation log)."""
    coeffs = [NcPoly.zero()]
    for n in range(1, order + 1):
        coeffs.append(NcPoly({"b" * n: Laurent.h(n, Fraction((-1) ** (n - 1), n))}))
    return TruncSeries(tuple(coeffs))
