import pytest
from hypothesis import assume, given, strategies as st

from pwidth import sparse as sp
from pwidth.bertram import (LetterPool, NoDecomposition, commute_through, decompose_even,
                            decompose_odd, intersection_bound_check, l_even, long_plus_fixing,
                            max_threshold, result_perms, split_off_p_cycle)
from pwidth.perm import Permutation, PermError, compose, parse_cycles, to_cycles


def P(text, n):
    return parse_cycles(text, n)


def test_threshold_examples():
    assert l_even(P("(1 2)(3 4)", 4)) == 3
    assert l_even(P("(1 2 3 4 5)", 5)) == 3
    assert max_threshold(8) == 6


@pytest.mark.parametrize("g,n,l,first,second", [
    ("(1 2)(3 4)", 4, 3, (1, 2, 3), (1, 4, 3)),
    ("(1 2 3 4 5)", 5, 3, (1, 2, 3), (1, 4, 5)),
])
def test_even_examples(g, n, l, first, second):
    r = decompose_even(P(g, n), l)
    assert (r.first, r.second, r.strength) == (first, second, "strong")


def test_weak_even_uses_one_pool_letter():
    g = P("(1 2)(3 4)", 5)
    r = decompose_even(g, 5, LetterPool([5]))
    A, B = result_perms(r, 5)
    assert r.strength == "weak" and r.borrowed == (5,)
    assert len(r.first) == len(r.second) == 5
    assert compose(A, B) == g


@pytest.mark.parametrize("g,n,l,pool,first,second", [
    ("(1 2)", 3, 2, [3], (1, 2, 3), (1, 3)),
    ("(1 2 3)(4 5)", 5, 3, None, (1, 2, 4, 5), (1, 4, 3)),
    ("(1 2 3 4 5 6)", 6, 3, None, (1, 2, 3, 4), (1, 5, 6)),
])
def test_odd_examples(g, n, l, pool, first, second):
    r = decompose_odd(P(g, n), l, LetterPool(pool) if pool else None)
    assert (r.first, r.second) == (first, second)


def test_below_threshold_refused():
    with pytest.raises(NoDecomposition):
        decompose_even(P("(1 2 3 4 5)", 5), 2)


@pytest.mark.parametrize("c,p,anchor,expected", [
    ((1, 2, 3, 4, 5), 3, 1, ((1, 2, 3), (1, 4, 5))),
    ((1, 2, 3, 4, 5, 6), 5, 1, ((1, 2), (1, 3, 4, 5, 6))),
    ((1, 2, 3, 4, 5, 6), 5, 2, ((2, 3), (2, 4, 5, 6, 1))),
])
def test_split_off(c, p, anchor, expected):
    assert split_off_p_cycle(c, p, anchor) == expected


@pytest.mark.parametrize("cycs,L,y", [
    ([(1, 2), (3, 4)], (1, 2, 3, 4), (3, 1)),
    ([(1, 2, 3), (4, 5, 6)], (1, 2, 3, 4, 5, 6), (4, 1)),
    ([(1, 2, 3)], (1, 2, 3), ()),
])
def test_long_plus_fixing(cycs, L, y):
    assert long_plus_fixing(cycs) == (L, y)
    assert sp.mul(sp.of_cycles([L]), sp.of_cycles([y] if y else [])) == sp.of_cycles(cycs)


def test_commute_through_examples():
    assert commute_through((1, 2, 3), (1, 4, 5), 1) == ((1, 4, 5), (2, 3, 4))
    assert commute_through((1, 2, 3, 4, 5), (2, 1, 6, 7, 8), 2) == ((1, 6, 7, 8, 2), (1, 3, 4, 5, 6))
    with pytest.raises(PermError):
        commute_through((1, 2, 3), (4, 5, 6), 1)


def test_intersection_bound_examples():
    assert intersection_bound_check((1, 2, 3), (1, 4, 5))
    assert intersection_bound_check((1, 2, 3), (3, 2, 1))
    assert intersection_bound_check((1, 2, 3, 4), (1, 3))


@st.composite
def nonidentity(draw, max_n=14):
    n = draw(st.integers(3, max_n))
    g = Permutation(draw(st.permutations(list(range(1, n + 1)))))
    assume(not g.is_identity())
    return g


@given(nonidentity(), st.data())
def test_two_cycles_whole_range(g, data):
    d = to_cycles(g)
    n = g.degree
    odd = d.parity == "odd"
    lo = max(2, (d.support_size + d.cycle_count - (1 if odd else 0)) // 2)
    hi = n - 1 if odd else n
    assume(lo <= hi)
    l = data.draw(st.integers(lo, hi))
    pool = LetterPool(sorted(set(range(1, n + 1)) - g.support()))
    r = (decompose_odd if odd else decompose_even)(g, l, pool)
    A, B = result_perms(r, n)
    assert compose(A, B) == g
    assert len(r.second) == l and len(r.first) == (l + 1 if odd else l)
    assert (r.strength == "strong") == (set(r.first) | set(r.second) <= g.support())
    assert len(r.borrowed) == max(0, len(r.first) - d.support_size)


@given(st.integers(3, 40), st.sampled_from([3, 5, 7, 11]), st.data())
def test_split_off_identity(length, p, data):
    assume(length > p)
    c = tuple(range(1, length + 1))
    anchor = data.draw(st.sampled_from(c))
    rest, pc = split_off_p_cycle(c, p, anchor)
    assert len(pc) == p
    assert sp.mul(sp.of_cycles([rest]), sp.of_cycles([pc])) == sp.of_cycles([c])
