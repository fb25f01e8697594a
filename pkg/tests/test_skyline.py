import itertools
import re
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from factororder.skyline import (
    InvalidShiftError,
    RigidShift,
    apply_shift,
    enumerate_shifts,
    is_valid_shift,
    render,
    reverse,
    shift_class,
)
from factororder.words import Word, generate_by_sum, parse_word

W = parse_word


def cell_shift(u, h, k):
    """Geometric oracle: move the cells above the cut and check where they land.

    Returns the new word, or None if some moved column overhangs or floats.
    """
    cells = {(col, lvl) for col, a in enumerate(u, 1) for lvl in range(1, a + 1)}
    fixed = {(c, l) for c, l in cells if l <= h}
    moved = {(c + k, l) for c, l in cells if l > h}
    heights = Counter(c for c, _ in fixed)
    for col in {c for c, _ in moved}:
        if not 1 <= col <= len(u) or heights[col] != h:
            return None
    allc = fixed | moved
    return Word(sum(1 for c, _ in allc if c == col) for col in range(1, len(u) + 1))


def small_words(max_sum):
    for s in range(1, max_sum + 1):
        yield from generate_by_sum(s)


def test_valid_shift_examples():
    u = W("2233213452")
    assert is_valid_shift(u, RigidShift(2, 1))
    assert apply_shift(u, RigidShift(2, 1)) == W("2223312345")
    assert apply_shift(u, RigidShift(3, -5)) == W("2245213332")


def test_overhang_and_floating_rejected():
    u = W("2233213452")
    assert not is_valid_shift(u, RigidShift(1, -1))
    assert not is_valid_shift(u, RigidShift(2, -1))
    with pytest.raises(InvalidShiftError) as info:
        apply_shift(u, RigidShift(2, -1))
    assert info.value.column == 6
    with pytest.raises(InvalidShiftError) as info:
        apply_shift(u, RigidShift(1, -1))
    assert info.value.column == 0


def test_proof_example_shift():
    assert apply_shift(W("252432122"), RigidShift(2, 4)) == W("222225143")


def test_rigid_shift_validation():
    with pytest.raises(ValueError):
        RigidShift(0, 1)
    with pytest.raises(ValueError):
        RigidShift(1, 0)


def test_enumerate_shifts_examples():
    assert enumerate_shifts(W("11")) == []
    assert enumerate_shifts(W("21")) == [(RigidShift(1, 1), W("12"))]
    assert set(enumerate_shifts(W("132"))) == {(RigidShift(1, -1), W("321")), (RigidShift(2, 1), W("123"))}


def test_shifts_match_cell_oracle_exhaustive():
    for u in small_words(10):
        expected = set()
        for h in range(1, max(u) + 2):
            for k in range(-len(u) - 1, len(u) + 2):
                if k == 0:
                    continue
                oracle = cell_shift(u, h, k)
                s = RigidShift(h, k)
                assert is_valid_shift(u, s) == (oracle is not None), (u, h, k)
                if oracle is not None:
                    assert apply_shift(u, s) == oracle
                    if oracle != u:
                        expected.add((s, oracle))
        assert set(enumerate_shifts(u)) == expected, u


def test_shift_conservation_and_reversibility_exhaustive():
    for u in small_words(10):
        for s, v in enumerate_shifts(u):
            assert len(v) == len(u) and v.total == u.total
            assert sorted(v) == sorted(u)
            back = RigidShift(s.h, -s.k)
            assert is_valid_shift(v, back)
            assert apply_shift(v, back) == u


def test_short_columns_receive_no_excess_exhaustive():
    for u in small_words(10):
        for s, _ in enumerate_shifts(u):
            for n in range(1, len(u) + 1):
                src = n - s.k
                above = max(0, (u[src - 1] if 1 <= src <= len(u) else 0) - s.h)
                if min(s.h, u[n - 1]) < s.h:
                    assert above == 0


def test_reverse():
    assert reverse(W("3122")) == W("2213")
    assert reverse(W("11")) == W("11")
    assert reverse(W("252432122")) == W("221234252")


def test_shift_class_examples():
    assert shift_class(W("11")).members == (W("11"),)
    c = shift_class(W("213"))
    assert set(c.members) == {W("213"), W("312")}
    assert c.representative == W("213")
    assert set(shift_class(W("132")).members) == {W("123"), W("132"), W("231"), W("321")}
    assert shift_class(W("132")).to_json()["representative"] == [1, 2, 3]


def test_shift_class_consistency():
    for u in small_words(8):
        c = shift_class(u)
        assert c.representative == min(c.members)
        for v in c.members:
            assert sorted(v) == sorted(u)
            assert shift_class(v) == c
            assert reverse(v) in c.members
            for _, w in enumerate_shifts(v):
                assert w in c.members


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(2, 6), repeat=3)))
def test_a1b2c_swap_is_shift_equivalent(a, b, c):
    assert Word((a, 2, b, 1, c)) in shift_class(Word((a, 1, b, 2, c))).members


def _words_over(m, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(1, m + 1), repeat=n)


def test_umvnw_swap_is_shift_equivalent():
    checked = 0
    for m in range(1, 4):
        for n in range(m, m + 3):
            for total in range(5):
                for lu in range(total + 1):
                    for lv in range(total - lu + 1):
                        lw = total - lu - lv
                        for u in itertools.product(range(1, m + 1), repeat=lu):
                            for v in itertools.product(range(1, m + 1), repeat=lv):
                                for w in itertools.product(range(1, m + 1), repeat=lw):
                                    left = Word(u + (m,) + v + (n,) + w)
                                    right = Word(u + (n,) + v + (m,) + w)
                                    assert right in shift_class(left).members
                                    checked += 1
    assert checked > 1000


def test_render_ascii():
    assert render(W("1"), "ascii") == "#\n1"
    assert render(W("132"), "ascii") == ".#.\n.##\n###\n132"
    out = render(W("10,2"), "ascii")
    assert set(out) <= set("#.\n0123456789")
    assert out.splitlines()[-1] == "10.2"


@pytest.mark.parametrize("word, squares, width, height", [("241625", 20, 6, 6), ("122213132", 17, 9, 3)])
def test_render_svg(word, squares, width, height):
    svg = render(W(word), "svg")
    assert svg.count("<rect") == squares
    assert f'width="{width * 20}"' in svg and f'height="{height * 20}"' in svg
    xs = {int(x) for x in re.findall(r'<rect x="(\d+)"', svg)}
    ys = {int(y) for y in re.findall(r'y="(\d+)" width', svg)}
    assert max(xs) == (width - 1) * 20 and max(ys) == (height - 1) * 20
    import xml.etree.ElementTree as ET

    assert ET.fromstring(svg.split("\n", 1)[1]).tag.endswith("svg")


def test_render_bad_format():
    with pytest.raises(ValueError):
        render(W("12"), "png")


@settings(max_examples=200)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=7).map(Word))
def test_shift_inverse_property(u):
    for s, v in enumerate_shifts(u):
        assert apply_shift(v, s.inverse()) == u
