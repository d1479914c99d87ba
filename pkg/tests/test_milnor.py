from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnorkit.golden import EXPECTED_MU, golden, golden_names
from milnorkit.linkdiag import mirror
from milnorkit.milnor import (
    MultiIndex,
    ResourceLimitError,
    all_indices,
    indeterminacy,
    invariant_table,
    j_set,
    longitude_series,
    mu,
    mu_bar,
    reduce_to_meridians,
    substitution_passes,
    wirtinger,
)
from milnorkit.whitehead import DoubleSpec, whitehead_double

LINKS = [n for n in golden_names() if golden(n).m > 1]


@pytest.mark.parametrize("name", sorted(EXPECTED_MU))
def test_golden_values(name):
    d = golden(name)
    length, nonzero = EXPECTED_MU[name]
    for I in all_indices(d.m, length):
        assert mu(d, I, length) == nonzero.get(str(I), 0), str(I)


def test_hopf_mu_matches_linking_number():
    for name in ("hopf", "hopf4"):
        d = golden(name)
        assert mu(d, "12") == mu(d, "21") == d.linking_number(1, 2)
        assert mu(d, "11") == mu(d, "22") == 0


def test_whitehead_link_indeterminacy_zero():
    v = mu_bar(golden("whitehead"), "1122")
    assert (v.mu, v.delta, v.mu_bar) == (-1, 0, -1)


def test_borromean_length4_is_indeterminate():
    d = golden("borromean")
    assert indeterminacy(d, "1123", 4) == 1
    assert mu_bar(d, "1123", 4).mu_bar == 0


@pytest.mark.parametrize("name", ["unknot", "unknot-kink", "unknot-two-kinks", "trefoil"])
def test_knot_longitude_is_trivial(name):
    s = longitude_series(golden(name), 1, 5)
    assert s == s.one()


def test_multi_index_parsing():
    assert MultiIndex.of("1123").entries == (1, 1, 2, 3)
    assert MultiIndex.of("1.10.2").entries == (1, 10, 2)
    assert str(MultiIndex.of([1, 10, 2])) == "1.10.2"
    assert MultiIndex.of("1213").r == 2
    assert MultiIndex.of("123").rotate().entries == (2, 3, 1)
    with pytest.raises(ValueError):
        MultiIndex.of("102")


def test_j_set():
    assert [str(J) for J in j_set("123")] == ["12", "13", "21", "23", "31", "32"]
    assert j_set("12") == []


def test_mu_argument_errors():
    d = golden("hopf")
    with pytest.raises(ValueError):
        mu(d, "1")
    with pytest.raises(ValueError):
        mu(d, "1212", 3)
    with pytest.raises(ValueError):
        mu(d, "13")


def test_resource_limit(monkeypatch):
    d = golden("borromean")
    with pytest.raises(ResourceLimitError):
        invariant_table(d, 4, ceiling=50)
    monkeypatch.setenv("MILNORKIT_MAX_INDICES", "20")
    with pytest.raises(ResourceLimitError):
        invariant_table(d, 3)


def test_table_order_and_repeat_bound():
    d = golden("hopf")
    names = [str(v.index) for v in invariant_table(d, 3)]
    assert names[:4] == ["11", "12", "21", "22"] and len(names) == 12
    bounded = [str(v.index) for v in invariant_table(d, 3, repeat_bound=1)]
    assert bounded == ["12", "21"]


def test_wirtinger_shape():
    p = wirtinger(golden("borromean"))
    assert len(p.generators) == 6 and len(p.relations) == 6
    assert [len(w) for w in p.walks] == [2, 2, 2]


@pytest.mark.parametrize("name", golden_names())
@pytest.mark.parametrize("D", [2, 3, 4])
def test_fixpoint_stability(name, D):
    p = wirtinger(golden(name))
    ref = reduce_to_meridians(p, D)
    for passes in range(D, D + 3):
        assert substitution_passes(p, D, passes) == ref


@pytest.mark.parametrize("name", LINKS)
def test_degree_cap_stability(name):
    d = golden(name)
    for I in all_indices(d.m, 4):
        values = {mu(d, I, D) for D in range(len(I), 6)}
        assert len(values) == 1, str(I)


CYCLIC_SUBJECTS = [(n, None) for n in LINKS] + [("hopf", 1), ("hopf", -2), ("borromean", 1)]


@pytest.mark.parametrize("name,twists", CYCLIC_SUBJECTS)
def test_cyclic_symmetry(name, twists):
    d = golden(name)
    if twists is not None:
        d = whitehead_double(d, DoubleSpec(d.m, twists))
    for I in all_indices(d.m, 4):
        a, b = mu_bar(d, I, 4), mu_bar(d, I.rotate(), 4)
        assert a.delta == b.delta and a.mu_bar == b.mu_bar, str(I)


@pytest.mark.parametrize("name", LINKS)
def test_mirror_sign_rule(name):
    d, md = golden(name), mirror(golden(name))
    for I in all_indices(d.m, 4):
        v, w = mu_bar(d, I, 4), mu_bar(md, I, 4)
        assert w.delta == v.delta
        expected = (-1) ** (len(I) - 1) * v.mu
        assert w.mu_bar == (expected % v.delta if v.delta else expected), str(I)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(LINKS), st.data())
def test_mu_bar_in_range(name, data):
    d = golden(name)
    entries = data.draw(st.lists(st.integers(1, d.m), min_size=2, max_size=4))
    v = mu_bar(d, entries, 4)
    if v.delta:
        assert 0 <= v.mu_bar < v.delta
    else:
        assert v.mu_bar == v.mu


@pytest.mark.parametrize("name,gens,rels", [("hopf", 2, 2), ("unknot", 1, 0), ("unknot-kink", 1, 1)])
def test_wirtinger_counts(name, gens, rels):
    p = wirtinger(golden(name))
    assert (len(p.generators), len(p.relations)) == (gens, rels)


def test_hopf_non_base_arc_is_conjugated_meridian():
    from milnorkit.magnus import GroupWord, expand_word

    arcs = reduce_to_meridians(wirtinger(golden("hopf4")), 3)
    # the arc after the negative crossing is a1^-1 a2 a1
    assert arcs[7] == expand_word(GroupWord.parse("-1 2 1"), 2, 3)
    assert arcs[2] == expand_word(GroupWord.parse("1"), 2, 3)


def test_indeterminacy_examples():
    assert indeterminacy(golden("hopf"), "12") == 0
    assert indeterminacy(golden("hopf"), "1122", 4) == 1
    # 123 is obtained from 1233 by deleting one entry, and mu(123) = -1
    assert indeterminacy(golden("borromean"), "1233", 4) == 1
    assert mu_bar(golden("borromean"), "123").delta == 0


def test_unlink_values_are_all_zero():
    for v in invariant_table(golden("unlink3"), 4):
        assert (v.mu, v.delta, v.mu_bar) == (0, 0, 0)


def test_borromean_distinct_entries():
    nonzero = sorted(str(v.index) for v in invariant_table(golden("borromean"), 3, repeat_bound=1) if v.mu_bar)
    assert nonzero == ["123", "132", "213", "231", "312", "321"]


def test_linear_coefficient_of_longitude_vanishes():
    for name in golden_names():
        d = golden(name)
        for i in range(1, d.m + 1):
            assert longitude_series(d, i, 3).coefficient((i,)) == 0


@pytest.mark.parametrize("a,b", [("hopf", "hopf4"), ("unknot", "unknot-two-kinks"),
                                 ("borromean", "borromean-cyclic")])
def test_diagram_independence(a, b):
    da, db = golden(a), golden(b)
    L = 4 if da.m < 3 else 3
    assert [(v.mu_bar, v.delta) for v in invariant_table(da, L, D=5)] == [
        (v.mu_bar, v.delta) for v in invariant_table(db, L, D=5)]
