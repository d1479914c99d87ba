"""Truncated Magnus expansions.

Series live in the ring of integer power series in non-commuting variables
``X_1, ..., X_m`` modulo all monomials of degree greater than a fixed cap.
A monomial is a tuple of variable indices, ``()`` being the constant term.
Coefficients are Python ints, so nothing can overflow.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]

__all__ = [
    "GroupWord",
    "MagnusSeries",
    "coefficient",
    "evaluate_word",
    "expand_generator",
    "expand_word",
    "series_invert",
    "series_from_terms",
    "series_mul",
    "series_unit",
    "variable_count_filter",
]


class MagnusSeries:
    """Sparse truncated series in ``m`` non-commuting variables.

    Args:
        m: number of variables.
        cap: maximum retained monomial degree.
        terms: mapping monomial -> coefficient. Zero coefficients and
            monomials above the cap are dropped.
    """

    __slots__ = ("m", "cap", "_terms", "_hash")

    def __init__(self, m: int, cap: int, terms: Mapping[Monomial, int] | None = None):
        if m < 1:
            raise ValueError(f"need at least one variable, got m={m}")
        if cap < 0:
            raise ValueError(f"degree cap must be >= 0, got {cap}")
        self.m = m
        self.cap = cap
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if c and len(mono) <= cap:
                    if any(not 1 <= v <= m for v in mono):
                        raise ValueError(f"monomial {mono} uses a variable outside 1..{m}")
                    clean[mono] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, m: int, cap: int, terms: dict[Monomial, int]) -> "MagnusSeries":
        # trusted constructor: terms already clean
        s = cls.__new__(cls)
        s.m, s.cap, s._terms, s._hash = m, cap, terms, None
        return s

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        """Terms in lexicographic monomial order (degree first)."""
        return {k: self._terms[k] for k in sorted(self._terms, key=lambda t: (len(t), t))}

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def constant(self) -> int:
        return self._terms.get((), 0)

    def coefficient(self, monomial: Sequence[int]) -> int:
        monomial = tuple(monomial)
        if len(monomial) > self.cap:
            raise ValueError(f"monomial of length {len(monomial)} exceeds degree cap {self.cap}")
        return self._terms.get(monomial, 0)

    def degree_part(self, d: int) -> "MagnusSeries":
        return MagnusSeries._raw(self.m, self.cap, {k: v for k, v in self._terms.items() if len(k) == d})

    def min_degree(self) -> int | None:
        """Lowest degree carrying a nonzero coefficient (None for 0)."""
        return min((len(k) for k in self._terms), default=None)

    def truncate(self, cap: int) -> "MagnusSeries":
        return MagnusSeries._raw(self.m, cap, {k: v for k, v in self._terms.items() if len(k) <= cap})

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "MagnusSeries") -> None:
        if (self.m, self.cap) != (other.m, other.cap):
            raise ValueError(
                f"series shapes differ: (m={self.m}, D={self.cap}) vs (m={other.m}, D={other.cap})"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.scalar(other)
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return MagnusSeries._raw(self.m, self.cap, out)

    __radd__ = __add__

    def __neg__(self):
        return MagnusSeries._raw(self.m, self.cap, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MagnusSeries._raw(self.m, self.cap, {})
            return MagnusSeries._raw(self.m, self.cap, {k: v * other for k, v in self._terms.items()})
        self._check(other)
        return _product(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return series_invert(self) ** (-e)
        result = self.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({(): other} if other else {})
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.m, self.cap) == (other.m, other.cap) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.cap, frozenset(self._terms.items())))
        return self._hash

    def scalar(self, c: int) -> "MagnusSeries":
        return MagnusSeries._raw(self.m, self.cap, {(): c} if c else {})

    def one(self) -> "MagnusSeries":
        return self.scalar(1)

    def var(self, j: int) -> "MagnusSeries":
        if not 1 <= j <= self.m:
            raise ValueError(f"variable index {j} outside 1..{self.m}")
        return MagnusSeries._raw(self.m, self.cap, {(j,): 1} if self.cap >= 1 else {})

    # -- presentation ------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        """Monomial strings ``"X1.X2"`` (``""`` for the constant) to integer strings."""
        return {".".join(f"X{v}" for v in k): str(c) for k, c in self.terms.items()}

    @classmethod
    def from_json(cls, m: int, cap: int, data: Mapping[str, str]) -> "MagnusSeries":
        terms = {}
        for key, c in data.items():
            mono = tuple(int(p[1:]) for p in key.split(".")) if key else ()
            terms[mono] = int(c)
        return cls(m, cap, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=None)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.terms.items():
            mono = "*".join(f"X{v}" for v in k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _product(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    cap = a.cap
    by_deg: list[list[tuple[Monomial, int]]] = [[] for _ in range(cap + 1)]
    for k, v in b._terms.items():
        by_deg[len(k)].append((k, v))
    acc: dict[Monomial, int] = defaultdict(int)
    for ka, va in a._terms.items():
        room = cap - len(ka)
        for d in range(room + 1):
            for kb, vb in by_deg[d]:
                acc[ka + kb] += va * vb
    return MagnusSeries._raw(a.m, cap, {k: v for k, v in acc.items() if v})


def series_unit(m: int, cap: int) -> MagnusSeries:
    return MagnusSeries._raw(m, cap, {(): 1})


def series_mul(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    return a * b


def coefficient(s: MagnusSeries, monomial: Sequence[int]) -> int:
    return s.coefficient(monomial)


def series_invert(s: MagnusSeries) -> MagnusSeries:
    """Two-sided inverse of a series with constant term +1 or -1."""
    c0 = s.constant()
    if c0 not in (1, -1):
        raise ValueError(f"series with constant term {c0} is not a unit")
    # s = c0 (1 + f)  =>  s^-1 = c0 (1 - f + f^2 - ...)
    f = s * c0 - 1
    result = s.one()
    power = s.one()
    for _ in range(s.cap):
        power = power * (-f)
        if power.is_zero():
            break
        result = result + power
    return result * c0


def variable_count_filter(s: MagnusSeries, j: int, min_count: int) -> MagnusSeries:
    """Terms whose monomial contains variable ``j`` at least ``min_count`` times."""
    return MagnusSeries._raw(s.m, s.cap, {k: v for k, v in s._terms.items() if k.count(j) >= min_count})


def _geometric(m: int, cap: int, j: int, exponent: int) -> dict[Monomial, int]:
    if exponent == 1:
        return {(): 1, (j,): 1} if cap >= 1 else {(): 1}
    return {(j,) * d: (-1) ** d for d in range(cap + 1)}


def expand_generator(j: int, exponent: int, m: int, cap: int) -> MagnusSeries:
    """Magnus image of ``alpha_j ** exponent`` for ``exponent`` in {+1, -1}."""
    if not 1 <= j <= m:
        raise ValueError(f"generator {j} outside 1..{m}")
    if exponent not in (1, -1):
        raise ValueError(f"exponent must be +1 or -1, got {exponent}")
    return MagnusSeries._raw(m, cap, _geometric(m, cap, j, exponent))


@dataclass(frozen=True)
class GroupWord:
    """A word in signed generators.

    ``letters`` is a tuple of ``(generator, exponent)`` pairs with exponent
    +1 or -1.  Generators are ints for the meridian alphabet; any hashable
    label is allowed for other alphabets (e.g. ``"a"``, ``"l"``).
    """

    letters: tuple = ()
    alphabet: str = "meridian"

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"letter {g}^{e}: exponent must be +1 or -1")

    @classmethod
    def gen(cls, g, exponent: int = 1, alphabet: str = "meridian") -> "GroupWord":
        e = 1 if exponent > 0 else -1
        return cls(((g, e),) * abs(exponent), alphabet)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse ``"1 2 -1 -2"`` into a meridian-alphabet word."""
        letters = []
        for tok in text.split():
            v = int(tok)
            if v == 0:
                raise ValueError("generator 0 is not allowed")
            letters.append((abs(v), 1 if v > 0 else -1))
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.alphabet != other.alphabet:
            raise ValueError(f"cannot concatenate {self.alphabet} and {other.alphabet} words")
        return GroupWord(self.letters + other.letters, self.alphabet)

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        return GroupWord(base.letters * abs(n), self.alphabet)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)), self.alphabet)

    def reduced(self) -> "GroupWord":
        stack: list = []
        for g, e in self.letters:
            if stack and stack[-1] == (g, -e):
                stack.pop()
            else:
                stack.append((g, e))
        return GroupWord(tuple(stack), self.alphabet)

    def exponent_sum(self, g) -> int:
        return sum(e for h, e in self.letters if h == g)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"{g}" if e == 1 else f"{g}^-1" for g, e in self.letters)


def expand_word(w: GroupWord, m: int, cap: int) -> MagnusSeries:
    """Ordered product of generator expansions; the empty word maps to 1."""
    if w.alphabet != "meridian":
        raise ValueError(f"expand_word needs a meridian-alphabet word, got {w.alphabet!r}")
    result = series_unit(m, cap)
    for g, e in w.letters:
        result = result * expand_generator(g, e, m, cap)
    return result


def evaluate_word(w: GroupWord, images: Mapping[object, tuple[MagnusSeries, MagnusSeries]]) -> MagnusSeries:
    """Evaluate a word given ``(E(g), E(g^-1))`` for every generator ``g``."""
    it = iter(images.values())
    first = next(it)[0]
    result = first.one()
    for g, e in w.letters:
        try:
            pos, neg = images[g]
        except KeyError:
            raise ValueError(f"no image supplied for generator {g!r}") from None
        result = result * (pos if e == 1 else neg)
    return result


def series_from_terms(m: int, cap: int, terms: Iterable[tuple[Sequence[int], int]]) -> MagnusSeries:
    acc: dict[Monomial, int] = defaultdict(int)
    for mono, c in terms:
        acc[tuple(mono)] += c
    return MagnusSeries(m, cap, acc)
