"""Exception types shared across the package."""


class QHarmonicError(Exception):
    """Base class for all domain errors raised by this package."""


class NonInvertible(QHarmonicError):
    """A negative power of h was requested at a non-invertible value."""


class BothZero(QHarmonicError):
    """Extended gcd of the zero polynomial with itself."""


class NotInH1(QHarmonicError):
    """A word does not end in b, so it has no e-basis expansion."""


class NotInH0(QHarmonicError):
    """An e-polynomial has an index starting with an unbarred 1."""


class NotInI0hat(QHarmonicError):
    """An index outside I0-hat was passed to a q-series evaluator."""


class EmptyIndex(QHarmonicError):
    """The operation needs a nonempty index."""


class HasBarEntry(QHarmonicError):
    """Hoffman duality is only defined for indices without 1bar entries."""


class BarEntry(QHarmonicError):
    """The classical stuffle product does not accept 1bar entries."""


class BadEntry(QHarmonicError):
    """An index entry is outside the range the operation accepts."""


class OrderMismatch(QHarmonicError):
    """Two truncated series of different orders were combined."""


class BadConstantTerm(QHarmonicError):
    """exp needs constant term 0; log needs constant term 1."""


class NotInMzvH1(QHarmonicError):
    """A word over {x, y} does not end in y."""


class Divergent(QHarmonicError):
    """The requested polylogarithm value diverges (t = 1 with leading 1)."""


class OutOfRange(QHarmonicError):
    """A numeric parameter lies outside its documented range."""


class BadDenominator(QHarmonicError):
    """A rational coefficient has a denominator divisible by the prime."""


class PreconditionViolated(QHarmonicError):
    """The theorem being checked does not apply to these parameters."""
