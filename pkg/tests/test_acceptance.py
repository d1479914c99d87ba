"""Acceptance criteria, one test per criterion, each with its runtime budget."""

from __future__ import annotations

import time

from hypothesis import given, settings
from hypothesis import strategies as st

from milnorkit.golden import golden, golden_names
from milnorkit.magnus import GroupWord, MagnusSeries, expand_word, series_invert, series_unit
from milnorkit.milnor import all_indices, mu, mu_bar, reduce_to_meridians, substitution_passes, wirtinger
from milnorkit.verify import (
    SIGMA,
    check_odd_remark,
    check_theorem1,
    check_vanishing,
    homotopy_certificate,
    replay_proof_identity,
    self_delta_certificate,
)
from milnorkit.whitehead import DoubleSpec, double_twice, whitehead_double, whitehead_odd_double


class Budget:
    def __init__(self, seconds: float):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert elapsed < self.seconds, f"took {elapsed:.1f}s, budget {self.seconds}s"


def test_criterion_1_hopf_baseline():
    with Budget(1):
        d = golden("hopf")
        assert mu(d, "12") == SIGMA * 1 == d.linking_number(1, 2)
        assert mu(d, "21") == d.linking_number(1, 2)
        assert mu(d, "11") == 0 and mu(d, "22") == 0


def test_criterion_2_whitehead_link():
    with Budget(10):
        w = whitehead_double(golden("hopf"), DoubleSpec(2, -1))
        assert w.linking_number(1, 2) == 0
        v = mu_bar(w, "1122", 4)
        assert (v.mu_bar, v.delta) == (SIGMA * SIGMA * 1, 0)
        lk = golden("hopf").linking_number(1, 2)
        assert -v.mu_bar == -1 * lk * lk


def test_criterion_3_double_formulas_hopf():
    with Budget(60):
        d = golden("hopf")
        ns = [-2, -1, 1, 2]
        pq, ii = [], []
        for n in ns:
            w = whitehead_double(d, DoubleSpec(2, n))
            assert all(mu_bar(w, I, 4).mu_bar == 0 for I in all_indices(2, 3))
            a, b = mu_bar(w, "1212", 4), mu_bar(w, "1122", 4)
            assert (a.mu_bar, b.mu_bar) == (SIGMA * 2 * n, -SIGMA * n)
            pq.append(a.mu)
            ii.append(b.mu)
            assert check_theorem1(d, 2, n).passed
        # exact integer linear fit: slope from the end points, zero intercept
        for values, slope in ((pq, 2), (ii, -1)):
            s = (values[-1] - values[0]) // (ns[-1] - ns[0])
            assert s * (ns[-1] - ns[0]) == values[-1] - values[0]
            assert s == SIGMA * slope
            assert all(v == s * n for v, n in zip(values, ns))


def test_criterion_4_double_formulas_borromean():
    with Budget(300):
        d = golden("borromean")
        base = mu(d, "123")
        for n in (-1, 1):
            w = whitehead_double(d, DoubleSpec(3, n))
            assert check_vanishing(w, 5, 6).passed
            a, b = mu_bar(w, "123123", 6), mu_bar(w, "121233", 6)
            for v, expected in ((a, 2 * n * base * base), (b, -n * base * base)):
                assert (v.mu - expected) % v.delta == 0 if v.delta else v.mu == expected
            assert check_theorem1(d, 3, n, D=6).passed


def test_criterion_5_odd_double_hopf():
    with Budget(10):
        for h in (1, 3):
            w = whitehead_odd_double(golden("hopf"), DoubleSpec(2, half_twists=h))
            assert mu_bar(w, "12", 2).mu_bar == 2 * SIGMA
            assert check_odd_remark(golden("hopf"), 2, h, indices=["12"]).passed


def test_criterion_6_iterated_doubles_vanish():
    with Budget(900):
        b = golden("borromean")
        for j in (1, 2):
            w = double_twice(b, DoubleSpec(1, -4), DoubleSpec(j, 2))
            assert w.m == 3
            assert all(mu_bar(w, I, 6).mu_bar == 0 for I in all_indices(3, 6))


def test_criterion_7_longitude_identity_replay():
    with Budget(60):
        for k in (1, 2):
            for n in (-1, -2, -3):
                r = replay_proof_identity(k, n)
                assert r.passed and len(r.checks) == 2


M, CAP = 3, 4
_series = st.dictionaries(
    st.lists(st.integers(1, M), max_size=CAP).map(tuple), st.integers(-4, 4), max_size=6
).map(lambda t: MagnusSeries(M, CAP, t))
_words = st.lists(st.tuples(st.integers(1, M), st.sampled_from([1, -1])), max_size=12).map(
    lambda letters: GroupWord(tuple(letters))
)


@settings(max_examples=50, deadline=None)
@given(_series, _series, _series)
def _ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c and (a + b) * c == a * c + b * c


@settings(max_examples=200, deadline=None)
@given(_words, _words)
def _morphism_and_inverse(u, v):
    one = series_unit(M, CAP)
    assert expand_word(u * v, M, CAP) == expand_word(u, M, CAP) * expand_word(v, M, CAP)
    assert expand_word(u * u.inverse(), M, CAP) == one == expand_word(u.inverse() * u, M, CAP)


@settings(max_examples=100, deadline=None)
@given(_series)
def _f_plus_g(s):
    f = s - s.scalar(s.constant())
    g = series_invert(f.one() + f) - f.one()
    assert f + g == -(f * g) == -(g * f)


def test_criterion_8_property_suites():
    with Budget(300):
        _ring_axioms()
        _morphism_and_inverse()
        _f_plus_g()
        links = [n for n in golden_names() if golden(n).m > 1]
        for name in golden_names():
            p = wirtinger(golden(name))
            ref = reduce_to_meridians(p, 4)
            assert substitution_passes(p, 4, 4) == ref == substitution_passes(p, 4, 6)
        for name in links:
            d = golden(name)
            for I in all_indices(d.m, 4):
                assert len({mu(d, I, D) for D in range(len(I), 6)}) == 1
                a, b = mu_bar(d, I, 4), mu_bar(d, I.rotate(), 4)
                assert (a.mu_bar, a.delta) == (b.mu_bar, b.delta)
        hopf, bor = golden("hopf"), golden("borromean")
        subjects = [golden(n) for n in golden_names()]
        subjects += [whitehead_double(hopf, DoubleSpec(2, n)) for n in (-2, -1, 1, 2)]
        subjects += [whitehead_double(bor, DoubleSpec(3, n)) for n in (-1, 1)]
        subjects += [whitehead_odd_double(hopf, DoubleSpec(2, half_twists=1))]
        subjects += [whitehead_double(golden("whitehead"), DoubleSpec(1, 1))]
        subjects += [double_twice(bor, DoubleSpec(1, -4), DoubleSpec(2, 2))]
        assert len(subjects) == 20
        for d in subjects:
            if not homotopy_certificate(d, 4).passed:
                assert not self_delta_certificate(d, 4).passed
