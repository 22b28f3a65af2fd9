from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktrace.paths import Point, Slope, line_point
from ktrace.zel import (Segment, SegKind, SpehSpec, format_perm, format_segments, nonvanishing,
                        parse_segments, perm_inverse, perm_sign, speh_segments,
                        tadic_terms, tadic_terms_for_segments, w0_characterization_holds,
                        w0_permutation)


def test_segment_kinds():
    assert Segment.make(0, 1).kind is SegKind.PROPER
    star = Segment.make(1, 0)
    assert star.is_star and star.length == 0 and str(star) == "*"
    empty = Segment.make(2, 0)
    assert empty.is_empty and str(empty) == "{}"
    with pytest.raises(ValueError):
        Segment.make(0, F(1, 2))


def test_parse_format():
    segs = parse_segments("(0,1); (-1/2,1/2)")
    assert [s.length for s in segs] == [2, 2]
    assert format_segments(segs) == "(0,1);(-1/2,1/2)"
    for bad in ("", "(0,1", "(0,1,2)"):
        with pytest.raises(ValueError):
            parse_segments(bad)


def test_speh_segments():
    assert format_segments(speh_segments(SpehSpec(3, 2))) == "(-1/2,3/2);(-3/2,1/2)"
    assert format_segments(speh_segments(SpehSpec(2, 3))) == "(1/2,3/2);(-1/2,1/2);(-3/2,-1/2)"
    for h in range(1, 5):
        for t in range(1, 5):
            segs = speh_segments(SpehSpec(h, t))
            assert len(segs) == t and all(s.length == h for s in segs)
            # the whole configuration is centred at 0
            assert sum(s.x + s.y for s in segs) == 0


def test_perm_helpers():
    assert perm_sign((2, 1)) == -1
    assert perm_sign((2, 3, 1)) == 1
    assert perm_inverse((2, 3, 1)) == (3, 1, 2)
    assert format_perm((2, 1)) == "(12)"
    assert format_perm((1, 2, 3)) == "()"
    assert format_perm((1, 3, 2)) == "(23)"


@pytest.mark.parametrize("h,t", [(1, 2), (2, 3), (3, 2), (1, 4), (2, 2), (3, 3), (1, 5)])
def test_tadic_terms_match_all_permutations(h, t):
    segs = speh_segments(SpehSpec(h, t))
    brute = []
    for w in permutations(range(1, t + 1)):
        new = [Segment.make(segs[w[a] - 1].x, segs[a].y) for a in range(t)]
        if not any(s.is_empty for s in new):
            brute.append((w, tuple(new)))
    got = [(term.w, term.segments) for term in tadic_terms(SpehSpec(h, t))]
    assert sorted(got) == sorted(brute)


def test_tadic_terms_speh12():
    terms = tadic_terms(SpehSpec(1, 2))
    assert len(terms) == 2
    swapped = next(t for t in terms if t.w == (2, 1))
    assert swapped.n_star == 1 and swapped.composition == (2,)
    assert swapped.sign == -1


def test_tadic_terms_custom_list():
    # an arbitrary (non-Speh) list also works
    segs = parse_segments("(0,2);(-3,-1)")
    terms = tadic_terms_for_segments(segs)
    assert sorted(t.w for t in terms) == [(1, 2), (2, 1)]
    swapped = next(t for t in terms if t.w == (2, 1))
    assert swapped.n_star == 1
    # pulling x = 0 under y = -2 would be EMPTY, so that list has one term only
    segs = parse_segments("(0,2);(-4,-2)")
    assert [t.w for t in tadic_terms_for_segments(segs)] == [(1, 2)]


def test_w0_fig4_fig5():
    for s, expected in ((3, (2, 1)), (2, (1, 2))):
        sl = Slope(s, 6)
        segs = speh_segments(SpehSpec(3, 2))
        starts = [line_point(sl, x.x) for x in segs]
        ends = [line_point(sl, x.y + 1) for x in segs]
        w = w0_permutation(starts, ends)
        assert w == expected
        assert w0_characterization_holds(starts, ends, w)


def test_w0_none_on_mismatch():
    a = [Point.of(0, 0), Point.of(0, F(1, 2))]
    b = [Point.of(0, 0), Point.of(0, 0)]
    assert w0_permutation(a, b) is None


@given(st.lists(st.sampled_from([F(0), F(1, 3), F(2, 3)]), min_size=1, max_size=6), st.randoms())
def test_w0_characterisation(invs, rnd):
    starts = [Point.of(i, r + i) for i, r in enumerate(invs)]
    shuffled = invs[:]
    rnd.shuffle(shuffled)
    ends = [Point.of(10 + i, r - i) for i, r in enumerate(shuffled)]
    w = w0_permutation(starts, ends)
    assert w is not None and w0_characterization_holds(starts, ends, w)
    # it is the only permutation with the property
    others = [p for p in permutations(range(1, len(invs) + 1))
              if w0_characterization_holds(starts, ends, p)]
    assert others == [w]


def test_nonvanishing():
    assert nonvanishing(3, 2, 6, 3)      # m = 2 | t
    assert nonvanishing(2, 3, 6, 2)      # m = 3 | t
    assert not nonvanishing(2, 3, 6, 1)  # m = 6
    assert nonvanishing(2, 2, 4, 0)      # m = 1
    with pytest.raises(ValueError):
        nonvanishing(2, 2, 5, 1)
