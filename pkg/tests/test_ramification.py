import pytest
from hypothesis import given, strategies as st

from ambigal.ramification import (BoundaryHit, EVEN_MAX, all_profiles,
                                  classify_case, enumerate_breaks,
                                  make_profile, validate_profile)


def ok(e0, breaks, **kw):
    return validate_profile(make_profile(e0, breaks, **kw)).ok


def case_of(e0, breaks):
    return classify_case(make_profile(e0, breaks)).value


def test_pinned_valid_profiles():
    assert ok(1, (1,))
    assert ok(1, (1, 3))
    assert ok(1, (1, 3, 7))
    assert ok(2, (1, 5))
    assert ok(4, (1, 3, 11))
    assert ok(4, (3, 9, 25))
    assert ok(4, (8, 16), n=3)


def test_pinned_invalid_profiles():
    assert not ok(1, (2,))
    assert not ok(1, (1, 4))
    assert not ok(4, (1, 3, 17))
    assert not ok(2, (3, 5))
    assert not ok(1, (1, 3, 9))
    assert not ok(4, (8, 16))          # even breaks need n=3
    assert not ok(4, (8, 12), n=3)     # even second break must be 4*e0
    assert not ok(0, (1,))


def test_break_bounds_inclusive():
    # both endpoints of each admissible interval validate
    assert ok(4, (1, 3))
    assert ok(4, (1, 15))
    assert ok(4, (1, 3, 11))
    assert ok(4, (1, 3, 27))
    assert not ok(4, (1, 17))
    assert not ok(4, (1, 3, 29))


def test_stable_breaks_are_forced():
    assert ok(2, (3, 7, 15))
    assert not ok(2, (3, 9, 17))
    assert not ok(2, (3, 7, 17))


def test_enumerate_matches_validator():
    for e0 in range(1, 7):
        for s in (1, 2, 3):
            listed = enumerate_breaks(e0, s)
            assert len(set(listed)) == len(listed)
            assert listed == sorted(listed)
            for breaks in listed:
                assert ok(e0, breaks), (e0, breaks)


@given(st.integers(min_value=1, max_value=6),
       st.tuples(st.integers(1, 40), st.integers(1, 40),
                 st.integers(1, 60)))
def test_enumerate_is_complete(e0, raw):
    breaks = tuple(sorted(raw))
    if len(set(breaks)) < 3:
        return
    if ok(e0, breaks):
        assert breaks in enumerate_breaks(e0, 3)


def test_classification_pinned():
    assert case_of(1, (1, 3, 7)) == "A"
    assert case_of(4, (1, 3, 11)) == "H"
    assert case_of(3, (1, 3, 15)) == "G"
    assert case_of(2, (1, 3, 11)) == "F"
    assert case_of(4, (3, 9, 25)) == "D"
    assert case_of(8, (5, 17, 49)) == "D"
    assert case_of(3, (1, 5, 17)) == "F"
    assert case_of(4, (1, 9, 25)) == "E"
    assert case_of(2, (1, 5, 13)) == "C"
    assert case_of(4, (3, 11, 27)) == "B"


def test_even_case_label():
    label = classify_case(make_profile(4, (8, 16), n=3))
    assert label.value == EVEN_MAX and not label.stable


def test_stable_implies_case_a():
    for e0 in range(1, 9):
        for b1 in range(1, 2 * e0, 2):
            if b1 < e0:
                continue
            p = make_profile(e0, (b1, b1 + 2 * e0, b1 + 6 * e0))
            label = classify_case(p)
            assert label.stable and label.value == "A"


def test_classify_rejects_invalid():
    with pytest.raises(ValueError):
        classify_case(make_profile(4, (1, 3, 17)))
    with pytest.raises(ValueError):
        classify_case(make_profile(1, (1, 3)))


def test_boundary_hit_unreachable_for_valid_triples():
    # every valid triple classifies without hitting a tie
    for p in all_profiles(3, 6):
        try:
            classify_case(p)
        except BoundaryHit as exc:
            raise AssertionError(f"{p}: {exc}")


def test_all_profiles_counts_grow():
    counts = [sum(1 for _ in all_profiles(3, e0_max))
              for e0_max in range(1, 9)]
    assert counts == sorted(counts)
    assert counts[0] == 1          # only (1, 3, 7) at e0 = 1
    assert counts[-1] == 167
