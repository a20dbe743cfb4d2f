import pytest

from pwidth import identities
from pwidth import sparse as sp
from pwidth.pieces import gadget


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gadget_gives_transposition_pair(p):
    o = tuple(range(6, 6 + max(0, p - 4)))
    G1, G2 = gadget((3, 2), (5, 4), o, p)
    assert len(G1) == len(G2) == p
    assert sp.mul(sp.of_cycles([G1]), sp.of_cycles([G2])) == sp.of_cycles([(2, 3), (4, 5)])


def test_gadget_p5_instance():
    assert gadget((3, 2), (5, 4), (6,), 5) == ((6, 5, 3, 4, 2), (3, 4, 2, 5, 6))


def test_all_checks_outcomes():
    res = {c.name: c.passed for c in identities.all_checks()}
    assert res.pop("d1d2-verbatim") is False
    assert all(res.values())
