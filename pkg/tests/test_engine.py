import json

import pytest
from hypothesis import given, settings, strategies as st

from pwidth.cdpart import decompose_large_cd, decompose_small_cd, find_reducible_sub
from pwidth.engine import (Factorization, certificate_from_json, classify, count_free_letters,
                           decompose, verify_certificate)
from pwidth.perm import Permutation, PermError, compose, from_cycles, parse_cycles
from pwidth.pieces import decompose_a, decompose_b_pair


def P(text, n):
    return parse_cycles(text, n)


def product(n, slots):
    out = Permutation.identity(n)
    for s in slots:
        if s:
            out = compose(out, from_cycles(n, s))
    return out


def assert_piece(piece, n, target, p, inside=None):
    slots = [s for s in piece.slots if s]
    assert len(slots) <= 3
    assert product(n, slots) == from_cycles(n, target)
    for s in slots:
        assert all(len(c) == p for c in s)
        letters = [x for c in s for x in c]
        assert len(letters) == len(set(letters))
    if inside is not None:
        assert {x for s in slots for c in s for x in c} <= set(inside)


def test_classify_promotes_one_short_even_cycle():
    cl = classify(P("(1 2 3 4 5 6 7)(8 9 10)(11 12)(13 14 15 16 17 18)", 18), 5)
    assert cl.a_cycles == ((1, 2, 3, 4, 5, 6, 7),)
    assert cl.c_cycles == ((8, 9, 10),)
    assert cl.b_cycles == ((13, 14, 15, 16, 17, 18), (11, 12))
    assert cl.d_cycles == ()


def test_classify_small_examples():
    assert classify(P("(1 2 3)", 3), 3).a_cycles == ((1, 2, 3),)
    cl = classify(P("(1 2)(3 4)", 5), 5)
    assert cl.d_cycles == ((1, 2), (3, 4)) and not cl.b_cycles


def test_classify_rejects_odd():
    with pytest.raises(PermError):
        classify(P("(1 2)", 4), 3)


def test_decompose_a_examples():
    assert decompose_a((1, 2, 3, 4, 5), 5).slots[0] == [(1, 2, 3, 4, 5)]
    pc = decompose_a((1, 2, 3, 4, 5), 3)
    assert [s for s in pc.slots if s] == [[(1, 2, 3)], [(1, 4, 5)]]
    a = tuple(range(1, 48))
    assert_piece(decompose_a(a, 5), 47, [a], 5, inside=a)


def test_b_pair_case_four_example():
    pc = decompose_b_pair((1, 2, 3, 4), (5, 6), 3)
    assert pc.slots == [[(1, 2, 5)], [(1, 6, 5)], [(1, 3, 4)]]


def test_b_pair_case_two_example():
    pc = decompose_b_pair((1, 2, 3, 4), (5, 6, 7, 8), 3)
    assert_piece(pc, 8, [(1, 2, 3, 4), (5, 6, 7, 8)], 3, inside=range(1, 9))
    assert sum(count_free_letters([from_cycles(8, s) for s in pc.slots if s])) >= 2


def test_small_cd_examples():
    pc = decompose_small_cd([(1, 2), (3, 4)], 3, fixed=[5])
    assert [s for s in pc.slots if s] == [[(1, 2, 3)], [(1, 4, 3)]]
    pc = decompose_small_cd([(1, 2), (3, 4)], 5, fixed=[5, 6, 7, 8])
    assert_piece(pc, 8, [(1, 2), (3, 4)], 5)
    assert {x for s in pc.slots for c in s for x in c} == {1, 2, 3, 4, 5}
    h = tuple(range(5, 12))
    pc = decompose_small_cd([(1, 2), (3, 4)], 7, h=[h])
    assert_piece(pc, 11, [(1, 2), (3, 4), h], 7, inside=range(1, 12))


def test_find_reducible_sub_examples():
    g = [(1, 2), (3, 4), (5, 6), (7, 8)]
    assert find_reducible_sub(g, 5) == [(1, 2), (3, 4), (5, 6)]
    assert find_reducible_sub(g, 3) == [(1, 2), (3, 4)]
    with pytest.raises(PermError):
        find_reducible_sub([(1, 2), (3, 4)], 3)


@pytest.mark.parametrize("p", [3, 5])
def test_large_cd_examples(p):
    g = [(1, 2), (3, 4), (5, 6), (7, 8)]
    assert_piece(decompose_large_cd(g, p), 8, g, p, inside=range(1, 9))


def test_decompose_examples():
    assert decompose(Permutation.identity(6), 5).factors == ()
    assert len(decompose(P("(1 2 3 4 5)", 5), 5).factors) == 1
    f = decompose(P("(1 2 3)(4 5 6 7)(8 9)", 9), 3, 9)
    assert verify_certificate(f) == (True, [])
    assert len(f.factors) <= 3


def test_decompose_rejects_bad_input():
    with pytest.raises(PermError):
        decompose(P("(1 2)", 5), 3)
    with pytest.raises(PermError):
        decompose(P("(1 2 3)", 5), 4)
    with pytest.raises(PermError):
        decompose(P("(1 2 3)", 3), 5)
    with pytest.raises(PermError):
        decompose(P("(1 2 3)", 5), 3, n=6)


def cert_22():
    sigma = P("(1 2)(3 4)", 4)
    return Factorization(sigma, 3, (P("(1 2 3)", 4), P("(1 4 3)", 4)), "strong", (1, 1))


def test_verify_accepts_valid():
    assert verify_certificate(cert_22()) == (True, [])


def test_verify_rejects_swapped_factors():
    f = cert_22()
    bad = Factorization(f.target, 3, f.factors[::-1], f.strength, f.free_letter_counts)
    ok, reasons = verify_certificate(bad)
    assert not ok and any("product" in r for r in reasons)


def test_verify_rejects_wrong_order_factor():
    sigma = P("(1 2 3)(4 5)(6 7)", 7)
    bad = Factorization(sigma, 3, (P("(1 2 3)", 7), P("(4 5)(6 7)", 7)), "strong", (3, 4))
    ok, reasons = verify_certificate(bad)
    assert not ok and any("disjoint 3-cycles" in r for r in reasons)


def test_verify_rejects_false_free_counts_and_strength():
    f = cert_22()
    assert not verify_certificate(Factorization(f.target, 3, f.factors, "strong", (2, 1)))[0]
    assert not verify_certificate(Factorization(f.target, 3, f.factors, "weak", (1, 1)))[0]


def test_free_letter_examples():
    a, b = P("(1 2 3)", 5), P("(1 4 5)", 5)
    assert count_free_letters([a, b]) == (2, 2)
    assert count_free_letters([a]) == (3,)
    assert count_free_letters([a, P("(1 3 2)", 5)]) == (0, 0)


def test_identity_certificate_json():
    cert = decompose(Permutation.identity(6), 5).to_json()
    assert cert["factors"] == [] and cert["verified"] is True
    assert list(cert) == ["n", "p", "sigma", "factors", "strong", "free_letters", "trace", "verified"]


def test_certificate_json_round_trip():
    f = decompose(P("(1 2)(3 4)(5 6)(7 8)", 8), 5)
    back = certificate_from_json(json.dumps(f.to_json()))
    assert back.factors == f.factors and back.target == f.target
    assert verify_certificate(back)[0]


@st.composite
def even_perm(draw, min_n=5, max_n=60):
    n = draw(st.integers(min_n, max_n))
    img = draw(st.permutations(list(range(1, n + 1))))
    g = Permutation(img)
    if not g.to_cycles().parity == "even":
        img = list(img)
        img[0], img[1] = img[1], img[0]
        g = Permutation(img)
    return g


@settings(max_examples=300, deadline=None)
@given(even_perm(), st.sampled_from([3, 5, 7, 11, 13]))
def test_random_even_permutations_certify(g, p):
    if g.degree < p:
        return
    f = decompose(g, p)
    assert verify_certificate(f) == (True, [])
    assert len(f.factors) <= 3


@st.composite
def short_cycle_heavy(draw):
    p = draw(st.sampled_from([5, 7, 11]))
    lengths = draw(st.lists(st.integers(2, p + 3), min_size=1, max_size=10))
    n = sum(lengths) + draw(st.integers(0, 4))
    if n < p:
        n = p
    letters = list(range(1, n + 1))
    cycles, pos = [], 0
    for k in lengths:
        cycles.append(letters[pos:pos + k])
        pos += k
    g = from_cycles(n, cycles)
    if g.to_cycles().parity != "even":
        g = compose(g, from_cycles(n, [(1, 2)]))
    return g, p


@settings(max_examples=300, deadline=None)
@given(short_cycle_heavy())
def test_short_cycle_mixtures_certify(case):
    g, p = case
    f = decompose(g, p)
    assert verify_certificate(f) == (True, [])
