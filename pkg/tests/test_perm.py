import pytest
from hypothesis import given, strategies as st

from pwidth.perm import (Permutation, PermError, compose, cycle_type, embed, format_cycles,
                         from_cycles, inverse, is_op_element, parse_cycles, partitions, stats,
                         to_cycles)


def P(text, n=8):
    return parse_cycles(text, n)


def perms(max_n=12):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(Permutation))


def test_left_to_right_composition():
    assert compose(P("(1 2)"), P("(1 3)")) == P("(1 2 3)")
    assert compose(P("(1 2 3)"), P("(1 4 5)")) == P("(1 2 3 4 5)")
    assert compose(P("(1 2 3)"), Permutation.identity(8)) == P("(1 2 3)")


def test_inverse_examples():
    assert inverse(P("(1 2 3)")) == P("(1 3 2)")
    assert inverse(Permutation.identity(4)).is_identity()
    assert inverse(P("(1 2)(3 4 5)")) == P("(1 2)(3 5 4)")


def test_cycles_round_trip_and_canonical_rotation():
    assert to_cycles(Permutation([2, 1, 4, 3])).cycles == ((1, 2), (3, 4))
    assert to_cycles(Permutation.identity(5)).cycles == ()
    assert to_cycles(from_cycles(5, [(5, 3, 4)])).cycles == ((3, 4, 5),)


@pytest.mark.parametrize("text,expected", [
    ("(1 2)(3 4)", (4, 2, "even", 2)),
    ("(1 2 3 4 5)", (5, 1, "even", 5)),
    ("(1 2 3)(4 5)", (5, 2, "odd", 6)),
])
def test_stats(text, expected):
    assert stats(P(text)) == expected


def test_order_p_membership():
    assert is_op_element(Permutation.identity(6), 3)
    assert is_op_element(P("(1 2 3)(4 5 6)"), 3)
    assert not is_op_element(P("(1 2 3)(4 5)"), 3)


def test_cycle_type_examples():
    assert cycle_type(P("(1 2)(3 4)", 5)) == (2, 2, 1)
    assert cycle_type(Permutation.identity(4)) == (1, 1, 1, 1)
    assert cycle_type(P("(1 2 3 4 5)", 8)) == (5, 1, 1, 1)


def test_embed_extends_by_fixed_points():
    assert embed(P("(1 2 3)", 3), 6) == P("(1 2 3)", 6)


def test_partitions_descending():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@pytest.mark.parametrize("text", ["", "()", "  "])
def test_identity_spellings(text):
    assert parse_cycles(text, 6).is_identity()


def test_comma_and_space_separators():
    assert parse_cycles("(1,2)(3, 4 5)", 5) == parse_cycles("(1 2)(3 4 5)", 5)


@pytest.mark.parametrize("text,where", [
    ("(1 2)(2 3)", "position 6"),
    ("(1 9)", "position 3"),
    ("(1 x)", "position 3"),
    ("(1 2) z", "position 6"),
    ("(3)", "position 0"),
])
def test_parse_errors_carry_positions(text, where):
    with pytest.raises(PermError, match=where):
        parse_cycles(text, 5)


def test_format_is_canonical():
    assert format_cycles(parse_cycles("(5 3 4)(2 1)", 5)) == "(1 2)(3 4 5)"
    assert format_cycles(Permutation.identity(3)) == "()"


@given(perms(), st.data())
def test_group_axioms(p, data):
    n = p.degree
    q = data.draw(st.permutations(list(range(1, n + 1))).map(Permutation))
    r = data.draw(st.permutations(list(range(1, n + 1))).map(Permutation))
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(p, inverse(p)).is_identity()
    assert (p * q)(1) == q(p(1))


@given(perms())
def test_format_parse_round_trip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


@given(perms())
def test_stats_consistent(p):
    size, count, parity, order = stats(p)
    assert size == len(p.support())
    assert (p ** order).is_identity()
    assert parity == ("even" if (size - count) % 2 == 0 else "odd")
    assert sum(cycle_type(p)) == p.degree
