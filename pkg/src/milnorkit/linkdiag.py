"""Oriented link diagrams stored as planar-diagram (PD) codes.

Conventions
-----------
A term ``X[a,b,c,d]`` lists the four edge labels at a crossing
counterclockwise, starting from the incoming under-strand: ``a`` enters
under, ``c`` leaves under, ``b`` and ``d`` are the over-strand.  The
crossing is positive (right-handed) when the over-strand runs from ``d``
to ``b`` and negative when it runs from ``b`` to ``d``.  An optional
``+``/``-`` suffix states the sign explicitly; it is checked against the
orientation recovered from the under-strands.

``O[a]`` declares a crossingless component made of the single edge ``a``.
An optional ``order[a,b,...]`` term names one edge per component and fixes
the component numbering explicitly; :func:`to_pd` writes it only when term
order alone cannot express the numbering.

A component that never passes under anything cannot be oriented from the
under-strands alone.  Its orientation is then read from stated signs, and
failing that it is oriented so that its first crossing in text order is
positive.

Components are numbered by first appearance of any of their edge labels
in text order.  Wirtinger arcs run from one under-crossing to the next;
an arc is named by the label of its first edge, and the base arc of a
component is the one with the smallest name.

Gauss codes are accepted as ``G: 1 -2 3 -1 2 -3 / ... ; S: + + +``:
positive entries are over-passages, negative entries under-passages,
components are separated by ``/`` (an empty slot is a crossingless
component) and ``S:`` lists crossing signs in increasing label order.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

__all__ = [
    "Crossing",
    "DiagramError",
    "LinkDiagram",
    "PDSyntaxError",
    "build_from_passages",
    "linking_number",
    "mirror",
    "parse",
    "parse_gauss",
    "parse_pd",
    "self_writhe",
    "to_pd",
    "validate",
]


class PDSyntaxError(ValueError):
    """Malformed diagram text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DiagramError(ValueError):
    """Diagram data that does not describe a consistent oriented link."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Crossing:
    pd: tuple[int, int, int, int]
    sign: int | None = None

    def __post_init__(self):
        if len(self.pd) != 4:
            raise ValueError(f"crossing needs 4 labels, got {self.pd}")
        object.__setattr__(self, "pd", tuple(int(x) for x in self.pd))
        if self.sign not in (None, 1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign}")

    def __str__(self):
        s = "" if self.sign is None else ("+" if self.sign > 0 else "-")
        return "X[%d,%d,%d,%d]" % self.pd + s


@dataclass
class _Structure:
    violations: list[str]
    components: list[list[int]] = field(default_factory=list)  # oriented edges from the base arc
    heads: dict[int, tuple[int, int]] = field(default_factory=dict)  # edge -> slot at its head
    edge_comp: dict[int, int] = field(default_factory=dict)
    sign: list[int] = field(default_factory=list)
    over_in: list[int] = field(default_factory=list)
    over_out: list[int] = field(default_factory=list)
    under_comp: list[int] = field(default_factory=list)
    over_comp: list[int] = field(default_factory=list)
    arcs: dict[int, tuple[int, ...]] = field(default_factory=dict)
    edge_arc: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented, ordered link diagram.

    ``order`` optionally pins the component numbering by giving one edge
    label per component; without it components are numbered by first
    appearance in ``crossings`` then ``loops``.  Construction never raises
    on inconsistent data; use :func:`validate` or :meth:`check`.
    """

    crossings: tuple[Crossing, ...]
    loops: tuple[int, ...] = ()
    order: tuple[int, ...] | None = None
    _s: _Structure = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "loops", tuple(self.loops))
        if self.order is not None:
            object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "_s", _analyse(self))

    # -- validity ------------------------------------------------------------

    @property
    def violations(self) -> list[str]:
        return list(self._s.violations)

    def check(self) -> "LinkDiagram":
        if self._s.violations:
            raise DiagramError(self._s.violations)
        return self

    def _need(self) -> _Structure:
        if self._s.violations:
            raise DiagramError(self._s.violations)
        return self._s

    # -- queries -------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._need().components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def components(self) -> list[list[int]]:
        """Oriented edge cycles, each starting with the first edge of its base arc."""
        return [list(c) for c in self._need().components]

    def component_of(self, edge: int) -> int:
        return self._need().edge_comp[edge]

    def sign(self, c: int) -> int:
        """Sign of crossing ``c`` (stated if given, else recomputed)."""
        st = self.crossings[c].sign
        return st if st is not None else self._need().sign[c]

    def under_component(self, c: int) -> int:
        return self._need().under_comp[c]

    def over_component(self, c: int) -> int:
        return self._need().over_comp[c]

    def over_strand(self, c: int) -> tuple[int, int]:
        """(incoming, outgoing) edge labels of the over-strand at crossing ``c``."""
        s = self._need()
        return s.over_in[c], s.over_out[c]

    def passages(self, i: int) -> list[tuple[int, bool]]:
        """(crossing, is_over) met along component ``i``, one per edge of :meth:`components`."""
        s = self._need()
        self._check_index(i)
        out = []
        for e in s.components[i - 1]:
            if e in s.heads:
                c, p = s.heads[e]
                out.append((c, p in (1, 3)))
        return out

    def arcs(self) -> list[tuple[int, int]]:
        """(arc id, component) for every Wirtinger arc, by component then traversal."""
        s = self._need()
        out = []
        for k, comp in enumerate(s.components, start=1):
            for e in comp:
                if s.edge_arc[e] == e:
                    out.append((e, k))
        return out

    def arc_of(self, edge: int) -> int:
        return self._need().edge_arc[edge]

    def arc_edges(self, arc: int) -> tuple[int, ...]:
        return self._need().arcs[arc]

    def base_arc(self, i: int) -> int:
        self._check_index(i)
        return self._need().components[i - 1][0]

    def crossing_arcs(self, c: int) -> tuple[int, int, int]:
        """(over arc, incoming under arc, outgoing under arc) at crossing ``c``."""
        s = self._need()
        a, _, b, _ = self.crossings[c].pd
        return s.edge_arc[s.over_in[c]], s.edge_arc[a], s.edge_arc[b]

    def _check_index(self, i: int) -> None:
        m = len(self._s.components)
        if not 1 <= i <= m:
            raise IndexError(f"component index {i} outside 1..{m}")

    def self_writhe(self, i: int) -> int:
        return self_writhe(self, i)

    def linking_number(self, i: int, j: int) -> int:
        return linking_number(self, i, j)

    def to_pd(self) -> str:
        return to_pd(self)

    def __str__(self):
        return to_pd(self)


# -- analysis ----------------------------------------------------------------


def _analyse(d: LinkDiagram) -> _Structure:
    s = _Structure(violations=[])
    occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for ci, x in enumerate(d.crossings):
        for p, lab in enumerate(x.pd):
            if lab <= 0:
                s.violations.append(f"crossing {ci}: label {lab} is not a positive integer")
            occ[lab].append((ci, p))
    for lab in d.loops:
        if lab in occ:
            s.violations.append(f"edge {lab}: declared crossingless but used at a crossing")
    if len(set(d.loops)) != len(d.loops):
        s.violations.append("a crossingless edge label is declared twice")
    for lab, slots in sorted(occ.items()):
        if len(slots) != 2:
            s.violations.append(f"edge {lab}: arc-multiplicity violation, used {len(slots)} times (expected 2)")
    if s.violations:
        return s

    def other(lab, slot):
        a, b = occ[lab]
        return b if a == slot else a

    # trace directed cycles in text order
    text_labels = [lab for x in d.crossings for lab in x.pd] + list(d.loops)
    seen: set[int] = set()
    cycles: list[list[tuple[int, tuple[int, int]]]] = []
    for lab in text_labels:
        if lab in seen:
            continue
        if lab in d.loops:
            seen.add(lab)
            cycles.append([(lab, None)])
            continue
        start = (lab, occ[lab][0])
        cyc = []
        cur = start
        while True:
            cyc.append(cur)
            seen.add(cur[0])
            ci, p = cur[1]
            q = (p + 2) % 4
            nxt = d.crossings[ci].pd[q]
            cur = (nxt, other(nxt, (ci, q)))
            if cur == start:
                break
            if len(cyc) > 4 * len(d.crossings) + 2:
                s.violations.append(f"edge {lab}: component does not close up")
                return s
        cycles.append(cyc)

    oriented: list[list[tuple[int, tuple[int, int] | None]]] = []
    for cyc in cycles:
        if cyc[0][1] is None:
            oriented.append(cyc)
            continue
        under_votes = {1 if p == 0 else -1 for _, (ci, p) in cyc if p in (0, 2)}
        direction = None
        if len(under_votes) > 1:
            s.violations.append(f"edge {cyc[0][0]}: orientation conflict along a component")
            continue
        if under_votes:
            direction = under_votes.pop()
        else:
            stated = set()
            for _, (ci, p) in cyc:
                sg = d.crossings[ci].sign
                if sg is not None:
                    stated.add(sg if p == 3 else -sg)
            if len(stated) > 1:
                s.violations.append(f"edge {cyc[0][0]}: stated signs give conflicting orientations")
                continue
            if stated:
                direction = stated.pop()
            else:
                first = min(cyc, key=lambda t: t[1])
                direction = 1 if first[1][1] == 3 else -1
        if direction == -1:
            cyc = [(lab, other(lab, slot)) for lab, slot in reversed(cyc)]
            # after reversal each entry is (edge, head slot) in the new direction;
            # reversed() keeps edges in traversal order
        oriented.append(cyc)
    if s.violations:
        return s

    # component order
    comp_of_label = {}
    for k, cyc in enumerate(oriented):
        for lab, _ in cyc:
            comp_of_label[lab] = k
    if d.order is not None:
        ks = []
        for lab in d.order:
            if lab not in comp_of_label:
                s.violations.append(f"order: edge {lab} does not exist")
                return s
            ks.append(comp_of_label[lab])
        if sorted(ks) != list(range(len(oriented))):
            s.violations.append("order must name each component exactly once")
            return s
        oriented = [oriented[k] for k in ks]

    n = len(d.crossings)
    s.sign = [0] * n
    s.over_in = [0] * n
    s.over_out = [0] * n
    s.under_comp = [0] * n
    s.over_comp = [0] * n
    for k, cyc in enumerate(oriented, start=1):
        for lab, slot in cyc:
            s.edge_comp[lab] = k
            if slot is None:
                continue
            s.heads[lab] = slot
            ci, p = slot
            if p == 0:
                s.under_comp[ci] = k
            elif p in (1, 3):
                s.over_comp[ci] = k
                s.over_in[ci] = lab
                s.over_out[ci] = d.crossings[ci].pd[(p + 2) % 4]
                s.sign[ci] = 1 if p == 3 else -1
    for ci, x in enumerate(d.crossings):
        if x.sign is not None and x.sign != s.sign[ci]:
            s.violations.append(
                f"crossing {ci} {x}: sign violation, stated {x.sign:+d} but orientations give {s.sign[ci]:+d}"
            )

    # Wirtinger arcs: an arc starts on the edge leaving an under-crossing
    for k, cyc in enumerate(oriented, start=1):
        edges = [lab for lab, _ in cyc]
        starts = [t for t, (lab, slot) in enumerate(cyc) if slot is not None and slot[1] == 0]
        if not starts:
            arc_id = min(edges)
            s.arcs[arc_id] = tuple(edges)
            for lab in edges:
                s.edge_arc[lab] = arc_id
            r = edges.index(arc_id)
            s.components.append(edges[r:] + edges[:r])
            continue
        n_e = len(edges)
        for t in starts:
            run = []
            u = (t + 1) % n_e
            while True:
                run.append(edges[u])
                if cyc[u][1][1] == 0:
                    break
                u = (u + 1) % n_e
            s.arcs[run[0]] = tuple(run)
            for lab in run:
                s.edge_arc[lab] = run[0]
        base = min(lab for lab in s.arcs if s.edge_arc[lab] == lab and lab in set(edges))
        r = edges.index(base)
        s.components.append(edges[r:] + edges[:r])

    s.violations.extend(_planarity(d, occ))
    return s


def _planarity(d: LinkDiagram, occ) -> list[str]:
    n = len(d.crossings)
    if n == 0:
        return []
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (c1, _), (c2, _) in occ.values():
        parent[find(c1)] = find(c2)
    k = len({find(c) for c in range(n)})

    def alpha(dart):
        a, b = occ[d.crossings[dart[0]].pd[dart[1]]]
        return b if a == dart else a

    seen = set()
    faces = 0
    for c in range(n):
        for p in range(4):
            if (c, p) in seen:
                continue
            faces += 1
            dart = (c, p)
            while dart not in seen:
                seen.add(dart)
                c2, p2 = alpha(dart)
                dart = (c2, (p2 + 1) % 4)
    if n - 2 * n + faces != 2 * k:
        return [f"planarity violation: V-E+F = {faces - n} but {2 * k} expected for {k} connected piece(s)"]
    return []


# -- invariants of the diagram ------------------------------------------------


def self_writhe(d: LinkDiagram, i: int) -> int:
    """Sum of signs of crossings where both strands lie on component ``i``."""
    d._need()
    d._check_index(i)
    return sum(
        d.sign(c) for c in range(d.n_crossings) if d.under_component(c) == i and d.over_component(c) == i
    )


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components ``i`` and ``j``."""
    d._need()
    d._check_index(i)
    d._check_index(j)
    if i == j:
        raise ValueError("linking_number needs two distinct components; use self_writhe")
    total = sum(
        d.sign(c) for c in range(d.n_crossings) if {d.under_component(c), d.over_component(c)} == {i, j}
    )
    if total % 2:
        raise DiagramError([f"odd signed crossing count {total} between components {i} and {j}"])
    return total // 2


def validate(d: LinkDiagram) -> list[str]:
    return d.violations


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing (negates all crossing signs)."""
    d._need()
    out = []
    for c, x in enumerate(d.crossings):
        a, b, cc, dd = x.pd
        if d.sign(c) > 0:
            out.append(Crossing((dd, a, b, cc), -1))
        else:
            out.append(Crossing((b, cc, dd, a), 1))
    order = tuple(comp[0] for comp in d.components())
    return LinkDiagram(tuple(out), d.loops, order)


# -- text formats --------------------------------------------------------------

_SEP = re.compile(r"[\s,;]*")
_XTERM = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*([+-](?![\d]))?")
_OTERM = re.compile(r"O\[\s*(-?\d+)\s*\]")
_ORDER = re.compile(r"order\[\s*([\d\s,]*)\]")


def parse_pd(text: str, check: bool = True) -> LinkDiagram:
    """Parse PD text (see module docstring).  ``check=False`` skips validation."""
    body = text.strip()
    if not body:
        raise PDSyntaxError("empty input", 0)
    offset = len(text) - len(text.lstrip())
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
        offset += 3
    pos = 0
    crossings: list[Crossing] = []
    loops: list[int] = []
    first_seen: list[int] = []
    explicit: tuple[int, ...] | None = None
    while True:
        pos = _SEP.match(body, pos).end()
        if pos >= len(body):
            break
        mx = _XTERM.match(body, pos)
        if mx:
            labels = tuple(int(g) for g in mx.groups()[:4])
            for lab in labels:
                if lab <= 0:
                    raise PDSyntaxError(f"edge label {lab} must be positive", offset + pos)
            sg = mx.group(5)
            crossings.append(Crossing(labels, None if sg is None else (1 if sg == "+" else -1)))
            first_seen.extend(labels)
            pos = mx.end()
            continue
        mord = _ORDER.match(body, pos)
        if mord:
            if explicit is not None:
                raise PDSyntaxError("order[...] given twice", offset + pos)
            explicit = tuple(int(t) for t in mord.group(1).replace(",", " ").split())
            pos = mord.end()
            continue
        mo = _OTERM.match(body, pos)
        if mo:
            lab = int(mo.group(1))
            if lab <= 0:
                raise PDSyntaxError(f"edge label {lab} must be positive", offset + pos)
            loops.append(lab)
            first_seen.append(lab)
            pos = mo.end()
            continue
        raise PDSyntaxError(f"expected X[a,b,c,d], O[a] or order[...], found {body[pos:pos + 12]!r}", offset + pos)
    if not crossings and not loops:
        raise PDSyntaxError("empty input", offset)
    if explicit is not None:
        d = LinkDiagram(tuple(crossings), tuple(loops), explicit)
        if check:
            d.check()
        return d
    raw = LinkDiagram(tuple(crossings), tuple(loops))
    if raw.violations:
        if check:
            raise DiagramError(raw.violations)
        return raw
    # renumber components by textual first appearance
    reps, comps = [], set()
    for lab in first_seen:
        k = raw.component_of(lab)
        if k not in comps:
            comps.add(k)
            reps.append(raw.components()[k - 1][0])
    d = LinkDiagram(tuple(crossings), tuple(loops), tuple(reps))
    if check:
        d.check()
    return d


def parse_gauss(text: str, check: bool = True) -> LinkDiagram:
    """Parse ``G: <comp> / <comp> ... ; S: <signs>`` into a PD-backed diagram."""
    body = text.strip()
    if not body.startswith("G:"):
        raise PDSyntaxError("Gauss code must start with 'G:'", 0)
    body = body[2:]
    sign_part = None
    m = re.search(r"[;\n]\s*S:", body)
    if m:
        sign_part = body[m.end():]
        body = body[: m.start()]
    comps_txt = body.split("/")
    components: list[list[tuple[int, bool]]] = []
    count: dict[int, list[bool]] = defaultdict(list)
    for part in comps_txt:
        comp = []
        for tok in part.replace(",", " ").split():
            try:
                v = int(tok)
            except ValueError:
                raise PDSyntaxError(f"bad Gauss entry {tok!r}", text.find(tok)) from None
            if v == 0:
                raise PDSyntaxError("crossing label 0 is not allowed", text.find(tok))
            comp.append((abs(v), v > 0))
            count[abs(v)].append(v > 0)
        components.append(comp)
    for k, roles in sorted(count.items()):
        if sorted(roles) != [False, True]:
            raise DiagramError([f"crossing {k}: needs exactly one over (+) and one under (-) entry"])
    labels = sorted(count)
    signs: dict[int, int] = {}
    if labels:
        if sign_part is None:
            raise PDSyntaxError("Gauss code with crossings needs an 'S:' sign list", len(text))
        toks = sign_part.replace(",", " ").split()
        if len(toks) != len(labels):
            raise DiagramError([f"S: lists {len(toks)} signs for {len(labels)} crossings"])
        for k, tok in zip(labels, toks):
            if tok not in ("+", "-", "+1", "-1", "1"):
                raise PDSyntaxError(f"bad sign {tok!r}", text.find(tok))
            signs[k] = -1 if tok.startswith("-") else 1
    d = build_from_passages(components, signs)
    if check:
        d.check()
    return d


def parse(text: str, check: bool = True) -> LinkDiagram:
    """Parse either a PD code or a ``G:`` Gauss code."""
    if text.strip().startswith("G:"):
        return parse_gauss(text, check)
    return parse_pd(text, check)


def build_from_passages(
    components: Sequence[Sequence[tuple[Hashable, bool]]], signs: dict
) -> LinkDiagram:
    """Assemble a diagram from per-component passage sequences.

    Each component is a cyclic list of ``(crossing key, is_over)``; every
    key must occur once over and once under.  Edges are numbered 1, 2, ...
    component by component, edge ``t`` of a component ending at its
    passage ``t``.  An empty component becomes a crossingless loop.
    """
    under: dict = {}
    over: dict = {}
    order_keys: list = []
    reps: list[int] = []
    loops: list[int] = []
    label = 1
    for comp in components:
        n = len(comp)
        if n == 0:
            loops.append(label)
            reps.append(label)
            label += 1
            continue
        reps.append(label)
        for t, (key, is_over) in enumerate(comp):
            e_in = label + t
            e_out = label + (t + 1) % n
            target = over if is_over else under
            if key in target:
                raise ValueError(f"crossing {key!r}: two {'over' if is_over else 'under'} passages")
            target[key] = (e_in, e_out)
            if key not in order_keys:
                order_keys.append(key)
        label += n
    crossings = []
    for key in _stable_unique(order_keys):
        if key not in over or key not in under:
            raise ValueError(f"crossing {key!r}: needs one over and one under passage")
        (ui, uo), (oi, oo) = under[key], over[key]
        sg = signs[key]
        if sg > 0:
            crossings.append(Crossing((ui, oo, uo, oi), 1))
        else:
            crossings.append(Crossing((ui, oi, uo, oo), -1))
    d = LinkDiagram(tuple(crossings), tuple(loops), tuple(reps))
    if d.violations:
        return d
    # canonical form, so a PD round trip reproduces the same object
    return parse_pd(d.to_pd())


def _stable_unique(items: Iterable) -> list:
    out, seen = [], set()
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def to_pd(d: LinkDiagram) -> str:
    """Serialize with explicit signs, ordering terms so that re-parsing
    reproduces the component numbering."""
    d._need()
    terms: list[tuple[str, list[int]]] = []
    for c, x in enumerate(d.crossings):
        a, b, cc, dd = x.pd
        comps = [d.component_of(a), d.component_of(b)]
        sx = "+" if d.sign(c) > 0 else "-"
        terms.append(("X[%d,%d,%d,%d]" % x.pd + sx, comps))
    for lab in d.loops:
        terms.append((f"O[{lab}]", [d.component_of(lab)]))
    out = []
    nxt = 1
    pending = list(terms)
    while pending:
        for idx, (txt, comps) in enumerate(pending):
            new = []
            for k in comps:
                if k >= nxt and k not in new:
                    new.append(k)
            if new == list(range(nxt, nxt + len(new))):
                out.append(txt)
                nxt += len(new)
                del pending[idx]
                break
        else:
            reps = ",".join(str(comp[0]) for comp in d.components())
            plain = [t for t, _ in terms]
            return ";".join([f"order[{reps}]"] + plain)
    return ";".join(out)
