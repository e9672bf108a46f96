"""Words over {a, b}, indices over {1bar, 1, 2, ...}, and the two
presentations of the harmonic algebra.

NcPoly is a sparse noncommutative polynomial over the Laurent ring with
words as monomials. EPoly is the same algebra written in the e-generator
basis, with indices (tuples of entries) as monomials. The generators are

    e_1bar = ab,    e_k = a^(k-1) (a + h) b   for k >= 1,

and word_to_e / e_to_word convert between the presentations on the
subalgebra of words ending in b.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .coeff import Laurent
from .errors import BadEntry, EmptyIndex, HasBarEntry, NotInH1

_scalar = (int, Fraction)


class _Bar1:
    """The extra index letter 1bar; a single shared instance is used."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "1bar"

    def __reduce__(self):
        return (_Bar1, ())


BAR1 = _Bar1()

#: An index entry: 1bar or an integer >= 1.
Entry = int | _Bar1
#: An index: a tuple of entries. The empty tuple is the empty index.
Index = tuple


def entry_wt(e: Entry) -> int:
    """Weight of one entry; wt(1bar) = 1 so e_1bar is weight-homogeneous."""
    return 1 if e is BAR1 else e


def index_wt(k: Index) -> int:
    return sum(entry_wt(e) for e in k)


def index_dep(k: Index) -> int:
    return len(k)


def in_I(k: Index) -> bool:
    return all(e is not BAR1 for e in k)


def in_Ihat0(k: Index) -> bool:
    return not k or k[0] != 1


def in_I0(k: Index) -> bool:
    return in_I(k) and in_Ihat0(k)


def check_entry(e) -> Entry:
    if e is BAR1:
        return e
    if isinstance(e, int) and e >= 1:
        return e
    raise BadEntry(f"index entries are 1bar or integers >= 1, got {e!r}")


def parse_entry(token: str) -> Entry:
    token = token.strip()
    if token == "1bar":
        return BAR1
    try:
        return check_entry(int(token))
    except ValueError:
        raise BadEntry(f"cannot parse index entry {token!r}") from None


def parse_index(text: str) -> Index:
    """Parse "2,1bar,3" into an index; "" and "()" give the empty index."""
    text = text.strip()
    if text in ("", "()"):
        return ()
    return tuple(parse_entry(tok) for tok in text.split(","))


def index_str(k: Index) -> str:
    return ",".join(str(e) for e in k)


def entry_print_key(e: Entry) -> int:
    # 1bar sorts before 1 when printing.
    return 0 if e is BAR1 else e


def _index_print_key(k: Index):
    # Leading-term-first: higher weight first, then lexicographic with
    # 1bar < 1 < 2 < ...
    return (-index_wt(k), tuple(entry_print_key(e) for e in k))


def _entry_enum_key(e: Entry):
    # Enumeration order: integers ascending, then 1bar.
    return (1, 0) if e is BAR1 else (0, e)


def index_sort_key(k: Index):
    """Deterministic ordering used for enumeration and exports."""
    return tuple(_entry_enum_key(e) for e in k)


def _render_terms(items: list[tuple[str, Laurent]], unit: str) -> str:
    """Shared pretty-printer: items are (basis string, coefficient)."""
    if not items:
        return "0"
    parts = []
    for basis, coeff in items:
        mono = coeff.single_term()
        if mono is not None:
            e, c = mono
            from .coeff import _monomial_str

            cs = _monomial_str(e, abs(c))
            if basis == unit:
                body = cs
            elif cs == "1":
                body = basis
            else:
                body = f"{cs}*{basis}"
            sign = c > 0
        else:
            body = f"({coeff})" if basis == unit else f"({coeff})*{basis}"
            sign = True
        if not parts:
            parts.append(body if sign else "-" + body)
        else:
            parts.append((" + " if sign else " - ") + body)
    return "".join(parts)


def _as_laurent(c) -> Laurent:
    return c if isinstance(c, Laurent) else Laurent(c)


class NcPoly:
    """Sparse noncommutative polynomial: {word: Laurent}, words over 'ab'."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, Laurent] | None = None):
        out: dict[str, Laurent] = {}
        if terms:
            for w, c in terms.items():
                c = _as_laurent(c)
                if c:
                    out[w] = c
        self.terms = out

    @classmethod
    def word(cls, w: str, coeff=1) -> "NcPoly":
        return cls({w: coeff})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({"": 1})

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return NcPoly({w: -c for w, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = NcPoly.__new__(NcPoly)
        res.terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Concatenation product, or scalar action of the Laurent ring."""
        if isinstance(other, (Laurent, *_scalar)):
            return self.scale(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        out: dict[str, Laurent] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        res = NcPoly.__new__(NcPoly)
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (Laurent, *_scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NcPoly":
        c = _as_laurent(c)
        if not c:
            return NcPoly()
        return NcPoly({w: v * c for w, v in self.terms.items()})

    def constant(self) -> Laurent:
        return self.terms.get("", Laurent())

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (-len(kv[0]), kv[0]))
        return _render_terms([(w or "1", c) for w, c in items], unit="1")

    __repr__ = __str__


def nc_mul(u: NcPoly, v: NcPoly) -> NcPoly:
    """Bilinear extension of word concatenation."""
    return u * v


class EPoly:
    """Sparse element of the e-generator algebra: {index: Laurent}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Index, Laurent] | None = None):
        out: dict[Index, Laurent] = {}
        if terms:
            for k, c in terms.items():
                c = _as_laurent(c)
                if c:
                    out[tuple(k)] = c
        self.terms = out

    @classmethod
    def gen(cls, entry: Entry, coeff=1) -> "EPoly":
        return cls({(check_entry(entry),): coeff})

    @classmethod
    def from_index(cls, k: Iterable[Entry], coeff=1) -> "EPoly":
        return cls({tuple(check_entry(e) for e in k): coeff})

    @classmethod
    def one(cls) -> "EPoly":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "EPoly":
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, EPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return EPoly({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, EPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = EPoly.__new__(EPoly)
        res.terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Concatenation product of Hhat1 (it is free on the e_k)."""
        if isinstance(other, (Laurent, *_scalar)):
            return self.scale(other)
        if not isinstance(other, EPoly):
            return NotImplemented
        out: dict[Index, Laurent] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                c = c1 * c2
                s = out.get(k)
                s = c if s is None else s + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        res = EPoly.__new__(EPoly)
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (Laurent, *_scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "EPoly":
        c = _as_laurent(c)
        if not c:
            return EPoly()
        return EPoly({k: v * c for k, v in self.terms.items()})

    def prepend(self, entry: Entry, coeff=1) -> "EPoly":
        """Left-multiply by coeff * e_entry."""
        c = _as_laurent(coeff)
        if not c:
            return EPoly()
        return EPoly({(entry,) + k: v * c for k, v in self.terms.items()})

    def supported_in_Ihat0(self) -> bool:
        return all(in_Ihat0(k) for k in self.terms)

    def supported_in_I(self) -> bool:
        return all(in_I(k) for k in self.terms)

    def max_weight(self) -> int:
        return max((index_wt(k) for k in self.terms), default=0)

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: _index_print_key(kv[0]))
        return _render_terms(
            [(f"e[{index_str(k)}]", c) for k, c in items], unit="e[]"
        )

    __repr__ = __str__


def _word_of_entry(e: Entry) -> NcPoly:
    if e is BAR1:
        return NcPoly.word("ab")
    return NcPoly({"a" * e + "b": 1, "a" * (e - 1) + "b": Laurent.h()})


def e_to_word(x: EPoly) -> NcPoly:
    """Algebra homomorphism on generators: e_1bar -> ab, e_k -> a^(k-1)(a+h)b."""
    out = NcPoly()
    for k, c in x.terms.items():
        word = NcPoly.one()
        for e in k:
            word = word * _word_of_entry(e)
        out = out + word.scale(c)
    return out


@lru_cache(maxsize=None)
def enbar(n: int) -> EPoly:
    """a^n b in the e-basis: sum_{j=2}^n (-h)^(n-j) e_j + (-h)^(n-1) e_1bar."""
    if n < 1:
        raise BadEntry("enbar is defined for n >= 1")
    terms: dict[Index, Laurent] = {
        (j,): Laurent.h(n - j, (-1) ** (n - j)) for j in range(2, n + 1)
    }
    terms[(BAR1,)] = Laurent.h(n - 1, (-1) ** (n - 1))
    return EPoly(terms)


_B_BLOCK = EPoly({(1,): Laurent.h(-1), (BAR1,): Laurent.h(-1, -1)})


@lru_cache(maxsize=None)
def _word_to_e_single(w: str) -> EPoly:
    out = EPoly.one()
    run = 0
    for ch in w:
        if ch == "a":
            run += 1
        else:
            out = out * (enbar(run) if run else _B_BLOCK)
            run = 0
    if run:
        raise NotInH1(f"word {w!r} ends in a")
    return out


def word_to_e(x: NcPoly) -> EPoly:
    """Inverse of e_to_word on words ending in b (blocks a^n b map to enbar)."""
    out = EPoly()
    for w, c in x.terms.items():
        out = out + _word_to_e_single(w).scale(c)
    return out


def left_mul_a(x: EPoly) -> EPoly:
    """Left multiplication by a on the e-basis.

    a e_k = e_(k+1) and a e_1bar = e_2 - h e_1bar, applied to the leading
    generator of every index.
    """
    out = EPoly()
    for k, c in x.terms.items():
        if not k:
            raise EmptyIndex("a * 1 = a is not in Hhat1")
        head, rest = k[0], k[1:]
        if head is BAR1:
            out = out + EPoly({(2,) + rest: c, (BAR1,) + rest: c * Laurent.h(1, -1)})
        else:
            out = out + EPoly({(head + 1,) + rest: c})
    return out


def index_to_binary(k: Index) -> str:
    """e_k as a word over e_0 = a (written '0') and e_1 (written '1')."""
    return "".join("0" * (e - 1) + "1" for e in k)


def binary_to_index(s: str) -> Index:
    """Inverse of index_to_binary; s must end in '1'."""
    out = []
    run = 0
    for ch in s:
        if ch == "0":
            run += 1
        else:
            out.append(run + 1)
            run = 0
    if run:
        raise ValueError(f"binary word {s!r} does not end in e_1")
    return tuple(out)


def hoffman_dual(k: Index) -> Index:
    """The Hoffman dual: write e_k = w e_1 over {e_0, e_1} and swap letters in w.

    >>> hoffman_dual((2, 3, 1))
    (1, 2, 1, 2)
    """
    if not k:
        raise EmptyIndex("the Hoffman dual needs a nonempty index")
    if not in_I(k):
        raise HasBarEntry("the Hoffman dual is defined on indices without 1bar")
    s = index_to_binary(k)
    w = s[:-1]
    flipped = "".join("1" if ch == "0" else "0" for ch in w)
    return binary_to_index(flipped + "1")


_FAMILIES = {
    "Ihat": lambda k: True,
    "I": in_I,
    "Ihat0": in_Ihat0,
    "I0": in_I0,
}


def enumerate_indices(weight: int, family: str = "Ihat") -> list[Index]:
    """All indices of exact weight in the family, in deterministic order.

    Entries are ordered 1 < 2 < ... < 1bar, indices lexicographically.
    Families: "Ihat", "I", "Ihat0", "I0".
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; use one of {sorted(_FAMILIES)}")
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    bar_ok = family in ("Ihat", "Ihat0")
    first_one_ok = family in ("Ihat", "I")

    def rec(remaining: int, first: bool):
        if remaining == 0:
            yield ()
            return
        entries: list[Entry] = [
            e for e in range(1, remaining + 1) if not (first and not first_one_ok and e == 1)
        ]
        if bar_ok:
            entries.append(BAR1)
        for e in entries:
            for rest in rec(remaining - entry_wt(e), False):
                yield (e,) + rest

    return list(rec(weight, True))


def enumerate_indices_up_to(max_weight: int, family: str = "Ihat") -> list[Index]:
    """All indices of weight 0..max_weight in the family."""
    out: list[Index] = []
    for w in range(max_weight + 1):
        out.extend(enumerate_indices(w, family))
    return out
