"""Milnor invariants from a link diagram.

The Wirtinger presentation has one generator per arc and, at a crossing of
sign ``eps`` with over-arc ``g``, the relation ``out = g^-eps in g^eps``.
Every arc generator is rewritten as a conjugate of its component's base
meridian by iterated substitution (the Chen-Milnor procedure).  The work
happens directly on Magnus series truncated at degree ``D``: after ``t``
substitution passes every arc series is exact through degree ``t + 1``.

The longitude of component ``i`` is the product of ``g^eps`` over the
under-crossings met walking once around from the base arc, corrected by
the meridian power ``-w_i`` (``w_i`` the self-writhe) so that it is the
0-framed longitude.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .linkdiag import LinkDiagram, self_writhe
from .magnus import MagnusSeries, series_invert, series_unit

__all__ = [
    "MilnorValue",
    "MultiIndex",
    "Relation",
    "ResourceLimitError",
    "WirtingerPresentation",
    "all_indices",
    "indeterminacy",
    "invariant_table",
    "j_set",
    "longitude_series",
    "mu",
    "mu_bar",
    "reduce_to_meridians",
    "wirtinger",
]

DEFAULT_MAX_INDICES = 250_000


class ResourceLimitError(RuntimeError):
    pass


def max_indices() -> int:
    return int(os.environ.get("MILNORKIT_MAX_INDICES", DEFAULT_MAX_INDICES))


@dataclass(frozen=True, order=True)
class MultiIndex:
    """A sequence ``i_1 ... i_k`` of component indices."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise ValueError("a multi-index needs at least one entry")
        if any(x < 1 for x in self.entries):
            raise ValueError(f"multi-index entries must be >= 1: {self.entries}")

    @classmethod
    def of(cls, value: "MultiIndex | str | Sequence[int]") -> "MultiIndex":
        if isinstance(value, MultiIndex):
            return value
        if isinstance(value, str):
            text = value.strip()
            if "." in text or " " in text:
                parts = text.replace(".", " ").split()
            else:
                parts = list(text)
            return cls(tuple(int(p) for p in parts))
        return cls(tuple(value))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def r(self) -> int:
        """Largest multiplicity of any entry."""
        return max(self.entries.count(x) for x in set(self.entries))

    @property
    def last(self) -> int:
        return self.entries[-1]

    def rotate(self, k: int = 1) -> "MultiIndex":
        k %= len(self.entries)
        return MultiIndex(self.entries[k:] + self.entries[:k])

    def __str__(self) -> str:
        if all(x < 10 for x in self.entries):
            return "".join(map(str, self.entries))
        return ".".join(map(str, self.entries))


@dataclass(frozen=True)
class MilnorValue:
    index: MultiIndex
    mu: int
    delta: int
    mu_bar: int

    @classmethod
    def make(cls, index: MultiIndex, mu_value: int, delta: int) -> "MilnorValue":
        return cls(index, mu_value, delta, mu_value % delta if delta else mu_value)

    @property
    def vanishes(self) -> bool:
        return self.mu_bar == 0

    def to_json(self) -> dict:
        return {"index": str(self.index), "mu": self.mu, "delta": self.delta, "mu_bar": self.mu_bar}


@dataclass(frozen=True)
class Relation:
    """``out = over^(-sign) * inp * over^sign``, all arc ids."""

    out: int
    over: int
    inp: int
    sign: int


@dataclass(frozen=True)
class WirtingerPresentation:
    m: int
    generators: tuple[tuple[int, int], ...]  # (arc id, component)
    relations: tuple[Relation, ...]  # one per crossing, crossing order
    base_arcs: tuple[int, ...]
    walks: tuple[tuple[int, ...], ...]  # relation indices met along each component from its base arc

    def component(self, arc: int) -> int:
        return dict(self.generators)[arc]


def wirtinger(d: LinkDiagram) -> WirtingerPresentation:
    d.check()
    rels = []
    for c in range(d.n_crossings):
        over, inp, out = d.crossing_arcs(c)
        rels.append(Relation(out, over, inp, d.sign(c)))
    walks = []
    for i in range(1, d.m + 1):
        walks.append(tuple(c for c, is_over in d.passages(i) if not is_over))
    return WirtingerPresentation(
        m=d.m,
        generators=tuple(d.arcs()),
        relations=tuple(rels),
        base_arcs=tuple(d.base_arc(i) for i in range(1, d.m + 1)),
        walks=tuple(walks),
    )


def _recap(s: MagnusSeries, cap: int) -> MagnusSeries:
    if cap <= s.cap:
        return s.truncate(cap)
    return MagnusSeries._raw(s.m, cap, dict(s._terms))


def _substitute(p: WirtingerPresentation, pos: dict, neg: dict, cap: int):
    """One substitution pass at degree cap ``cap``; returns new (pos, neg, longitudes)."""
    m = p.m
    pos = {a: _recap(s, cap) for a, s in pos.items()}
    neg = {a: _recap(s, cap) for a, s in neg.items()}
    new_pos, new_neg, longs = {}, {}, []
    one = series_unit(m, cap)
    for c, walk in enumerate(p.walks, start=1):
        xc = one.var(c)
        yc = series_invert(one + xc) - 1
        base = p.base_arcs[c - 1]
        new_pos[base] = one + xc
        new_neg[base] = one + yc
        u, v = one, one
        for r in walk:
            rel = p.relations[r]
            if rel.sign > 0:
                g, ginv = pos[rel.over], neg[rel.over]
            else:
                g, ginv = neg[rel.over], pos[rel.over]
            u = ginv * u
            v = v * g
            if rel.out != base:
                new_pos[rel.out] = one + u * xc * v
                new_neg[rel.out] = one + u * yc * v
        longs.append(v)
    return new_pos, new_neg, longs


def _initial(p: WirtingerPresentation, cap: int):
    one = series_unit(p.m, cap)
    pos, neg = {}, {}
    for arc, c in p.generators:
        xc = one.var(c)
        pos[arc] = one + xc
        neg[arc] = series_invert(one + xc)
    return pos, neg


@lru_cache(maxsize=64)
def _solve(p: WirtingerPresentation, D: int):
    pos, neg = _initial(p, D)
    for cap in range(2, D + 1):
        pos, neg, longs = _substitute(p, pos, neg, cap)
    # one more pass must change nothing: the fixpoint check
    pos2, neg2, longs = _substitute(p, pos, neg, D)
    if D >= 2 and (pos2 != {a: _recap(s, D) for a, s in pos.items()}):
        raise RuntimeError("Wirtinger substitution did not reach a fixpoint")
    return pos2, neg2, tuple(longs)


def reduce_to_meridians(p: WirtingerPresentation, D: int) -> dict[int, MagnusSeries]:
    """Series ``E(g)`` of every arc generator, exact modulo degree > D."""
    if D < 1:
        raise ValueError("degree cap must be >= 1")
    pos, _, _ = _solve(p, D)
    return {arc: pos[arc] for arc, _ in p.generators}


def substitution_passes(p: WirtingerPresentation, D: int, passes: int) -> dict[int, MagnusSeries]:
    """Arc series after ``passes`` full-cap substitution passes (no progressive caps)."""
    pos, neg = _initial(p, D)
    for _ in range(passes):
        pos, neg, _ = _substitute(p, pos, neg, D)
    return {arc: pos[arc] for arc, _ in p.generators}


@lru_cache(maxsize=64)
def _longitudes(d: LinkDiagram, D: int) -> tuple[MagnusSeries, ...]:
    p = wirtinger(d)
    _, _, raw = _solve(p, D)
    out = []
    for i, v in enumerate(raw, start=1):
        w = self_writhe(d, i)
        xi = v.var(i)
        out.append(v * ((v.one() + xi) ** (-w)))
    return tuple(out)


def longitude_series(d: LinkDiagram, i: int, D: int) -> MagnusSeries:
    """Magnus expansion of the 0-framed longitude of component ``i``."""
    d.check()
    if not 1 <= i <= d.m:
        raise IndexError(f"component index {i} outside 1..{d.m}")
    if D < 1:
        raise ValueError("degree cap must be >= 1")
    return _longitudes(d, D)[i - 1]


def _as_index(d: LinkDiagram, I) -> MultiIndex:
    I = MultiIndex.of(I)
    if any(x > d.m for x in I.entries):
        raise ValueError(f"multi-index {I} uses a component outside 1..{d.m}")
    return I


def mu(d: LinkDiagram, I, D: int | None = None) -> int:
    """Coefficient of ``X_{i_1} ... X_{i_{k-1}}`` in the longitude of ``i_k``."""
    I = _as_index(d, I)
    D = len(I) if D is None else D
    if len(I) < 2:
        raise ValueError("mu needs a multi-index of length >= 2")
    if len(I) > D:
        raise ValueError(f"|I| = {len(I)} exceeds the degree cap D = {D}")
    return _longitudes(d, D)[I.last - 1].coefficient(I.entries[:-1])


@lru_cache(maxsize=100_000)
def _j_set(entries: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    k = len(entries)
    out = set()
    for keep in range(2, k):
        for pos in itertools.combinations(range(k), keep):
            rest = tuple(entries[t] for t in pos)
            for s in range(keep):
                out.add(rest[s:] + rest[:s])
    return tuple(sorted(out, key=lambda t: (len(t), t)))


def j_set(I) -> list[MultiIndex]:
    """All J (|J| >= 2) obtained from I by deleting at least one entry and
    rotating the rest cyclically."""
    return [MultiIndex(t) for t in _j_set(MultiIndex.of(I).entries)]


def indeterminacy(d: LinkDiagram, I, D: int | None = None) -> int:
    """gcd of |mu(J)| over the J-set of I (0 when empty or all zero)."""
    I = _as_index(d, I)
    D = len(I) if D is None else D
    if len(I) > D:
        raise ValueError(f"|I| = {len(I)} exceeds the degree cap D = {D}")
    longs = _longitudes(d, D)
    g = 0
    for J in _j_set(I.entries):
        g = math.gcd(g, longs[J[-1] - 1].coefficient(J[:-1]))
        if g == 1:
            break
    return g


def mu_bar(d: LinkDiagram, I, D: int | None = None) -> MilnorValue:
    I = _as_index(d, I)
    D = len(I) if D is None else D
    return MilnorValue.make(I, mu(d, I, D), indeterminacy(d, I, D))


def all_indices(m: int, max_length: int, min_length: int = 2, repeat_bound: int | None = None,
                last: int | None = None) -> Iterable[MultiIndex]:
    for k in range(min_length, max_length + 1):
        for t in itertools.product(range(1, m + 1), repeat=k):
            if last is not None and t[-1] != last:
                continue
            I = MultiIndex(t)
            if repeat_bound is not None and I.r > repeat_bound:
                continue
            yield I


def count_indices(m: int, max_length: int, min_length: int = 2) -> int:
    return sum(m**k for k in range(min_length, max_length + 1))


def invariant_table(d: LinkDiagram, max_length: int, repeat_bound: int | None = None,
                    D: int | None = None, ceiling: int | None = None) -> list[MilnorValue]:
    """All mu-bar values for 2 <= |I| <= max_length, lexicographic by length."""
    d.check()
    D = max(max_length, 2) if D is None else D
    if max_length > D:
        raise ValueError(f"max_length {max_length} exceeds degree cap {D}")
    ceiling = max_indices() if ceiling is None else ceiling
    n = count_indices(d.m, max_length)
    if n > ceiling:
        raise ResourceLimitError(
            f"{n} multi-indices requested (m={d.m}, max length {max_length}); ceiling is {ceiling}. "
            "Raise MILNORKIT_MAX_INDICES to allow it."
        )
    return [mu_bar(d, I, D) for I in all_indices(d.m, max_length, repeat_bound=repeat_bound)]
