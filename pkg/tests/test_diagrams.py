import itertools

import pytest
from hypothesis import given, settings, strategies as st

from multicurves.diagrams import (
    DPRIME,
    PRIME,
    ChordDiagram,
    Multicurve,
    component_words,
    count_nonperipheral_direct,
    enumerate_reduced,
    extract_multicurve,
    is_nonperipheral,
    layout,
    series_all,
    series_nonperipheral,
)
from multicurves.surface import canonical_class, class_length, is_cyclically_reduced, make_sig


def sig(g, n):
    return make_sig(g, n)


def _perfect_matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _perfect_matchings(rest[:i] + rest[i + 1 :]):
            yield ((first, other),) + tail


def naive_count(s, r):
    # every balanced count vector, every perfect matching, then filter
    lay = layout(s)
    total = 0
    for per_gen in itertools.product(range(r + 1), repeat=s.m):
        if sum(per_gen) != r:
            continue
        counts = tuple(per_gen[k - 1] for k, _ in lay)
        for matching in _perfect_matchings(list(range(2 * r))):
            d = ChordDiagram(s, counts, matching)
            if d.is_noncrossing() and d.is_reduced():
                total += 1
    return total


@pytest.mark.parametrize(
    "gn,expected",
    [
        ((1, 1), [(1, PRIME), (2, DPRIME), (1, DPRIME), (2, PRIME)]),
        ((0, 4), [(1, PRIME), (1, DPRIME), (2, PRIME), (2, DPRIME), (3, PRIME), (3, DPRIME)]),
        ((1, 2), [(1, PRIME), (2, DPRIME), (1, DPRIME), (2, PRIME), (3, PRIME), (3, DPRIME)]),
    ],
)
def test_layout(gn, expected):
    assert list(layout(sig(*gn))) == expected


@pytest.mark.parametrize("gn,r,count", [((0, 3), 1, 2), ((0, 3), 0, 1), ((0, 4), 2, 9)])
def test_enumerate_examples(gn, r, count):
    assert len(enumerate_reduced(sig(*gn), r)) == count


def test_enumerate_rejects_negative():
    with pytest.raises(ValueError):
        enumerate_reduced(sig(0, 3), -1)


@pytest.mark.parametrize("gn", [(0, 3), (1, 1), (0, 4), (1, 2)])
@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_enumeration_matches_naive_matchings(gn, r):
    assert len(enumerate_reduced(sig(*gn), r)) == naive_count(sig(*gn), r)


def test_enumerated_diagrams_are_well_formed():
    for gn in [(0, 4), (1, 2), (2, 1)]:
        for d in enumerate_reduced(sig(*gn), 3):
            assert d.is_balanced() and d.is_noncrossing() and d.is_reduced()
            assert sum(d.counts) == 2 * d.size


def test_single_chord_gives_generator():
    s = sig(0, 3)
    d = ChordDiagram(s, (1, 1, 0, 0), ((0, 1),))
    assert extract_multicurve(d) == Multicurve.of((1,))


def test_two_chords_give_product():
    s = sig(0, 4)
    d = ChordDiagram(s, (1, 1, 1, 1, 0, 0), ((1, 2), (0, 3)))
    assert extract_multicurve(d) == Multicurve.of((1, 2))


def test_empty_diagram():
    mc = extract_multicurve(ChordDiagram(sig(1, 1), (0, 0, 0, 0), ()))
    assert mc == Multicurve() and mc.length == 0
    assert str(mc) == "{}"


def test_multicurve_rejects_trivial_component():
    with pytest.raises(ValueError):
        Multicurve.of((1, -1))


def test_unbalanced_diagram_rejected_by_extraction():
    d = ChordDiagram(sig(0, 3), (2, 0, 0, 0), ((0, 1),))
    assert not d.is_balanced() and not d.is_reduced()
    with pytest.raises(ValueError):
        component_words(d)


def test_json_roundtrip():
    for d in enumerate_reduced(sig(1, 2), 3):
        assert ChordDiagram.from_json(d.sig, d.to_json()) == d


@pytest.mark.parametrize(
    "gn,N,expected",
    [((0, 3), 5, [1, 2, 4, 6, 9, 12]), ((1, 1), 5, [1, 2, 4, 6, 9, 12]), ((0, 4), 3, [1, 3, 9, 20])],
)
def test_series_all(gn, N, expected):
    assert series_all(sig(*gn), N) == expected


@pytest.mark.parametrize(
    "gn,N,expected",
    [
        ((1, 1), 7, [1, 2, 4, 6, 8, 10, 12, 14]),
        ((0, 3), 4, [1, 0, 0, 0, 0]),
        ((0, 4), 6, [1, 0, 3, 0, 6, 0, 9]),
    ],
)
def test_series_nonperipheral(gn, N, expected):
    assert series_nonperipheral(sig(*gn), N) == expected


@pytest.mark.parametrize("gn,r,expected", [((0, 4), 2, 3), ((1, 1), 1, 2), ((0, 3), 2, 0)])
def test_count_direct(gn, r, expected):
    assert count_nonperipheral_direct(sig(*gn), r) == expected


def test_nonperipheral_classes_on_four_holed_sphere():
    s = sig(0, 4)
    found = {extract_multicurve(d) for d in enumerate_reduced(s, 2) if is_nonperipheral(extract_multicurve(d), s)}
    assert found == {Multicurve.of((1, 2)), Multicurve.of((2, 3)), Multicurve.of((1, 3))}


@pytest.mark.parametrize("gn,rmax", [((0, 3), 7), ((1, 1), 7), ((0, 4), 6), ((1, 2), 5), ((2, 1), 4)])
def test_length_coherence_and_injectivity(gn, rmax):
    s = sig(*gn)
    for r in range(rmax + 1):
        seen = set()
        for d in enumerate_reduced(s, r):
            words = component_words(d)
            assert all(is_cyclically_reduced(w) for w in words)
            assert sum(class_length(w) for w in words) == r
            mc = extract_multicurve(d)
            assert mc.length == r
            seen.add(mc)
        assert len(seen) == len(enumerate_reduced(s, r))


def test_rank_only_dependence():
    assert series_all(sig(0, 3), 6) == series_all(sig(1, 1), 6)
    assert series_all(sig(0, 5), 4) == series_all(sig(1, 3), 4) == series_all(sig(2, 1), 4)


@pytest.mark.parametrize("gn", [(0, 3), (1, 1), (0, 4), (1, 2)])
def test_series_and_direct_agree(gn):
    s = sig(*gn)
    c = series_nonperipheral(s, 5)
    assert c == [count_nonperipheral_direct(s, r) for r in range(6)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)]), st.integers(0, 4), st.data())
def test_components_match_extracted_multicurve(gn, r, data):
    s = sig(*gn)
    diagrams = enumerate_reduced(s, r)
    d = data.draw(st.sampled_from(diagrams))
    words = component_words(d)
    assert sorted(canonical_class(w) for w in words) == sorted(extract_multicurve(d).components)
