import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pwidth import oracle
from pwidth.oracle import ClassDescriptor as D
from pwidth.perm import Permutation, compose, cycle_type


def test_a5_classes_and_csv():
    t = oracle.exact_widths(5, 3)
    lines = t.to_csv().splitlines()
    assert lines[0] == "# n=5,p=3,group_width=2"
    assert lines[1] == "cycle_type,split,width"
    assert [r.split(",")[0:2] for r in lines[2:]] == [
        ["5", "plus"], ["5", "minus"], ["3 1 1", "none"], ["2 2 1", "none"], ["1 1 1 1 1", "none"]]
    assert t.width_of((1, 1, 1, 1, 1)) == 0
    assert t.width_of((3,)) == 1


def test_table_json_shape():
    data = json.loads(oracle.table_json(oracle.exact_widths(5, 3)))
    assert list(data) == ["n", "p", "group_width", "class_function", "layer_sizes", "rows"]
    assert sum(data["layer_sizes"]) == 60


def test_widths_match_brute_force_a6_p5():
    # order-5 elements of A_6 are the 5-cycles; brute-force products of two
    n = 6
    even = [g for g in map(Permutation, itertools.permutations(range(1, n + 1)))
            if g.to_cycles().parity == "even"]
    gens = [g for g in even if cycle_type(g)[0] == 5]
    one = {g.images for g in gens}
    two = {compose(a, b).images for a in gens for b in gens}
    width, _ = oracle.element_widths(n, 5)
    rows = np.array([g.images for g in even], dtype=np.int8)
    got = width[oracle.lehmer_rank(rows)]
    want = [0 if g.is_identity() else 1 if g.images in one else 2 if g.images in two else 3
            for g in even]
    assert got.tolist() == want


def test_worker_count_does_not_change_table():
    a = oracle.exact_widths(7, 3, workers=1)
    b = oracle.exact_widths(7, 3, workers=4)
    assert a.to_json() == b.to_json()


def test_lehmer_rank_is_lexicographic():
    P = oracle.all_perms(5)
    assert np.array_equal(oracle.lehmer_rank(P), np.arange(120))


def test_class_sizes_sum_to_group_order():
    for n in (5, 6, 7):
        ci = oracle.class_index(n)
        sizes = [len(ci.members(d)) for d in ci.classes]
        assert sum(sizes) == len(ci.even_ranks)
        for d in ci.classes:
            assert len(oracle.class_elements(n, d)) == len(ci.members(d))


@pytest.mark.parametrize("n,ct,expected", [(7, (3, 3, 1), True), (5, (3, 1, 1), True)])
def test_cube_examples(n, ct, expected):
    assert oracle.class_cube_covers(n, D(ct)) is expected


def test_cube_2_2_1_is_computed():
    assert isinstance(oracle.class_cube_covers(5, D((2, 2, 1))), bool)


def test_split_halves_agree():
    for n in (5, 7, 8):
        for d in oracle.an_classes(n):
            if d.split == "plus":
                twin = D(d.cycle_type, "minus")
                assert oracle.class_cube_covers(n, d) == oracle.class_cube_covers(n, twin)


@pytest.mark.parametrize("n", [5, 6])
def test_class_shortcut_matches_brute(n):
    for d in oracle.an_classes(n):
        assert oracle.class_cube_covers(n, d) == oracle.class_cube_covers(n, d, brute=True)


def test_dvir_predicate_examples():
    assert oracle.dvir_predicate(7, D((3, 3, 1)))
    assert not oracle.dvir_predicate(5, D((2, 2, 1)))
    assert oracle.dvir_predicate(5, D((2, 2, 1)), reading="exact")
    assert not oracle.dvir_predicate(9, D((3,) + (1,) * 6))


@pytest.mark.parametrize("n,p,k", [(8, 5, 1), (12, 3, 3), (5, 3, 1)])
def test_witness_k(n, p, k):
    assert oracle.dvir_witness_k(n, p) == k


@pytest.mark.parametrize("p,ns", [(5, [8, 9]), (3, []), (7, [11, 12, 13])])
def test_sharpness_scan(p, ns):
    assert oracle.sharpness_scan(p) == ns


def test_caps():
    with pytest.raises(oracle.ResourceCapError):
        oracle.exact_widths(10, 5)
    with pytest.raises(oracle.ResourceCapError):
        oracle.exact_widths(10, 3, max_n=10)
    with pytest.raises(oracle.ResourceCapError):
        oracle.exact_widths(11, 5, max_n=11)


def test_memory_cap(monkeypatch):
    monkeypatch.setenv("PWIDTH_MAX_MEM", "1000")
    with pytest.raises(oracle.ResourceCapError):
        oracle.exact_widths(7, 3)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        D((2, 2, 1), "plus")
    assert D((1, 3, 1)).cycle_type == (3, 1, 1)
    assert D((5,), "minus").label() == "5-"


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 8), st.data())
def test_cycle_type_codes_round_trip(n, data):
    P = oracle.all_perms(n)
    i = data.draw(st.integers(0, len(P) - 1))
    code = oracle.cycle_type_codes(P[i:i + 1])[0]
    g = Permutation._raw(P[i].tolist())
    assert oracle.decode_type(int(code), n) == cycle_type(g)
