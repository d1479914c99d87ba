"""Whitehead doubling of one component, performed on the diagram.

The companion component ``i`` is replaced by two blackboard-parallel
strands: ``A`` on the right of the companion's direction and ``B`` on its
left.  At the insertion site the band is cut open.

Full-twist double ``W_n``
    ``B`` runs against ``A``.  On the end side of the cut ``A`` turns back
    into ``B`` through a cap, on the start side ``B`` turns back into ``A``.
    The two cap tips are twisted about each other ``n`` full times
    (``2|n|`` crossings, all of one sign); ``n = +-1`` is an ordinary
    clasp, ``n = 0`` leaves the caps unhooked.
Odd double
    ``A`` and ``B`` run the same way and cross ``2p+1`` times in a half-twist
    box, so the pattern goes twice around the companion.

In both cases ``-w_i`` full twists of the band (``w_i`` the self-writhe)
are inserted next to the cut so the parallel strands have linking number
zero as co-oriented push-offs, i.e. the pattern sits in the 0-framed
solid torus.

The handedness of the tip twists is pinned by ``TIP_SIGN``: with it the
doubled positive Hopf link ``W^2_{-1}`` has ``mu(1122) = +1``, so that
``-mu(1122) = n lk^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linkdiag import LinkDiagram, build_from_passages, self_writhe

__all__ = [
    "DoubleSpec",
    "TIP_SIGN",
    "double",
    "double_twice",
    "expected_crossings",
    "parallel_pair",
    "whitehead_double",
    "whitehead_odd_double",
]

# crossing sign of the tip twists is TIP_SIGN * sign(n)
TIP_SIGN = -1


@dataclass(frozen=True)
class DoubleSpec:
    """Which component to double and how.

    ``half_twists`` set (odd, positive) selects the odd double with
    handedness ``sign``; otherwise ``twists`` is the full-twist count n.
    ``site`` is an arc id of the component (default: its base arc).
    """

    component: int
    twists: int = 0
    half_twists: int | None = None
    sign: int = 1
    site: int | None = None

    def __post_init__(self):
        if self.component < 1:
            raise ValueError(f"component index must be >= 1, got {self.component}")
        if self.half_twists is not None:
            if self.half_twists < 1 or self.half_twists % 2 == 0:
                raise ValueError(f"half_twists must be odd and positive, got {self.half_twists}")
            if self.sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def kind(self) -> str:
        return "full" if self.half_twists is None else "odd"


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def _prepare(d: LinkDiagram, spec: DoubleSpec):
    d.check()
    i = spec.component
    if not 1 <= i <= d.m:
        raise ValueError(f"component {i} outside 1..{d.m}")
    edges = d.components()[i - 1]
    site = spec.site if spec.site is not None else d.base_arc(i)
    if site not in edges or d.arc_of(site) != site:
        raise ValueError(f"site {site} is not an arc of component {i}")
    r = edges.index(site)
    passes = d.passages(i)
    passes = passes[r:] + passes[:r]
    return i, passes


def _relative(d: LinkDiagram, c: int, q_is_over: bool) -> int:
    # sign of cross(dir_q, dir_p) for the two passages q, p at crossing c
    return d.sign(c) if q_is_over else -d.sign(c)


def _strand(d, i, passes, label, s, keys_signs, side):
    """Passages of one parallel strand through the companion's crossings.

    ``label`` is 'A' (right) or 'B' (left), ``s`` its direction relative to
    the companion, ``side`` maps strand labels to their direction factors.
    """
    seq = passes if s > 0 else list(reversed(passes))
    out = []
    for c, is_over in seq:
        if d.under_component(c) == i and d.over_component(c) == i:
            first_a = s * _relative(d, c, not is_over) > 0
            for t in ("A", "B") if first_a else ("B", "A"):
                key = ("S", c, label, t) if is_over else ("S", c, t, label)
                keys_signs[key] = d.sign(c) * side[label] * side[t]
                out.append((key, is_over))
        else:
            key = ("M", c, label)
            keys_signs[key] = d.sign(c) * side[label]
            out.append((key, is_over))
    return out


def _others(d, i, keys_signs):
    comps = []
    for k in range(1, d.m + 1):
        if k == i:
            comps.append(None)
            continue
        seq = []
        for c, is_over in d.passages(k):
            if i in (d.under_component(c), d.over_component(c)):
                first_a = _relative(d, c, not is_over) > 0
                for t in ("A", "B") if first_a else ("B", "A"):
                    seq.append((("M", c, t), is_over))
            else:
                keys_signs[("X", c)] = d.sign(c)
                seq.append((("X", c), is_over))
        comps.append(seq)
    return comps


def _box(tag, count, tau, right_label):
    # twist box of `count` crossings; the strand entering on the right is
    # over at odd crossings exactly when tau == -1
    return [((tag, k), right_label, (k % 2 == 1) == (tau == -1)) for k in range(1, count + 1)]


def _frame(d: LinkDiagram, i: int):
    w = self_writhe(d, i)
    tau = -_sgn(w)
    return w, tau, _box("F", 2 * abs(w), tau, "A")


def whitehead_double(d: LinkDiagram, spec: DoubleSpec | int, twists: int | None = None) -> LinkDiagram:
    """Replace component ``spec.component`` by its Whitehead n-double."""
    if isinstance(spec, int):
        spec = DoubleSpec(spec, twists or 0)
    if spec.kind != "full":
        raise ValueError("whitehead_double needs a full-twist spec; use whitehead_odd_double")
    i, passes = _prepare(d, spec)
    side = {"A": 1, "B": -1}
    signs: dict = {}
    comps = _others(d, i, signs)

    _, tau, frame = _frame(d, i)
    n = spec.twists
    s_tip = TIP_SIGN * _sgn(n)
    tip = [(("T", k), (k % 2 == 1) == (s_tip == -1)) for k in range(1, 2 * abs(n) + 1)]
    for key, _, _ in frame:
        signs[key] = -tau
    for key, _ in tip:
        signs[key] = s_tip

    seq = [(key, a_over) for key, _, a_over in frame]
    seq += _strand(d, i, passes, "A", 1, signs, side)
    seq += [(key, p_over) for key, p_over in tip]
    seq += _strand(d, i, passes, "B", -1, signs, side)
    seq += [(key, not a_over) for key, _, a_over in reversed(frame)]
    seq += [(key, not p_over) for key, p_over in reversed(tip)]
    comps[i - 1] = seq
    return build_from_passages(comps, signs).check()


def whitehead_odd_double(d: LinkDiagram, spec: DoubleSpec) -> LinkDiagram:
    """Double with an odd number of half twists; the strands run parallel."""
    if spec.kind != "odd":
        raise ValueError("whitehead_odd_double needs half_twists set")
    i, passes = _prepare(d, spec)
    side = {"A": 1, "B": 1}
    signs: dict = {}
    comps = _others(d, i, signs)

    _, tau, frame = _frame(d, i)
    box = _box("H", spec.half_twists, spec.sign, "A")
    for key, _, _ in frame:
        signs[key] = tau
    for key, _, _ in box:
        signs[key] = spec.sign

    seq = [(key, a_over) for key, _, a_over in frame]
    seq += _strand(d, i, passes, "A", 1, signs, side)
    seq += [(key, r_over) for key, _, r_over in box]
    seq += [(key, not a_over) for key, _, a_over in frame]
    seq += _strand(d, i, passes, "B", 1, signs, side)
    seq += [(key, not r_over) for key, _, r_over in box]
    comps[i - 1] = seq
    return build_from_passages(comps, signs).check()


def double(d: LinkDiagram, spec: DoubleSpec) -> LinkDiagram:
    return whitehead_double(d, spec) if spec.kind == "full" else whitehead_odd_double(d, spec)


def double_twice(d: LinkDiagram, spec1: DoubleSpec, spec2: DoubleSpec) -> LinkDiagram:
    """``spec1`` then ``spec2``; the second acts on the intermediate diagram."""
    return double(double(d, spec1), spec2)


def parallel_pair(d: LinkDiagram, component: int, site: int | None = None) -> LinkDiagram:
    """The framed parallel strands before reconnection, as two components.

    Component ``component`` becomes strand A (companion direction); strand
    B (reversed) is appended as component ``m + 1``.  Their linking number
    is zero when the framing correction is right.
    """
    spec = DoubleSpec(component, 0, site=site)
    i, passes = _prepare(d, spec)
    side = {"A": 1, "B": -1}
    signs: dict = {}
    comps = _others(d, i, signs)
    _, tau, frame = _frame(d, i)
    for key, _, _ in frame:
        signs[key] = -tau
    a_seq = [(key, a_over) for key, _, a_over in frame] + _strand(d, i, passes, "A", 1, signs, side)
    b_seq = _strand(d, i, passes, "B", -1, signs, side) + [(key, not a_over) for key, _, a_over in reversed(frame)]
    comps[i - 1] = a_seq
    comps.append(b_seq)
    return build_from_passages(comps, signs).check()


def expected_crossings(d: LinkDiagram, spec: DoubleSpec) -> int:
    """Crossing count of the doubled diagram.

    Each crossing of the companion with another component becomes 2, each
    self-crossing becomes 4, plus ``2|w_i|`` framing crossings and the tip
    twists (``2|n|``) or half-twist box (``2p+1``).
    """
    i = spec.component
    mixed = selfc = 0
    for c in range(d.n_crossings):
        comps = (d.under_component(c), d.over_component(c))
        if comps == (i, i):
            selfc += 1
        elif i in comps:
            mixed += 1
    extra = 2 * abs(spec.twists) if spec.kind == "full" else spec.half_twists
    return d.n_crossings + mixed + 3 * selfc + 2 * abs(self_writhe(d, i)) + extra
