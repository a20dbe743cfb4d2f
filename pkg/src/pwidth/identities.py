"""Printed identities from the construction, checked by multiplication."""

from __future__ import annotations

from dataclasses import dataclass

from . import sparse as sp
from .pieces import case1_layout, gadget


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: str
    rhs: str
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "passed": self.passed, "note": self.note}


def _fmt(cycles) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"


def _prod(*rows) -> dict[int, int]:
    return sp.mul(*(sp.of_cycles(r) for r in rows))


def _check(name, lhs_rows, rhs_rows, note="") -> IdentityCheck:
    ok = _prod(*lhs_rows) == _prod(*rhs_rows)
    lhs = " * ".join(_fmt(r) for r in lhs_rows)
    rhs = " * ".join(_fmt(r) for r in rhs_rows)
    return IdentityCheck(name, lhs, rhs, ok, note)


def long_cycle_example() -> list[IdentityCheck]:
    """The p=5, n=47 four-row factorization of (1 2 ... 47)."""
    rows = [
        [tuple(range(1, 6)), (13, 14, 15, 16, 47), (20, 21, 22, 23, 46),
         (27, 28, 29, 30, 45), (34, 35, 36, 37, 44)],
        [(1, 6, 7, 8, 9), (17, 18, 19, 20, 47), (24, 25, 26, 27, 46), (31, 32, 33, 34, 45)],
        [(1, 10, 11, 12, 13)],
        [tuple(range(38, 45))],
    ]
    target = [[tuple(range(1, 48))]]
    x1, x2, x3, r = case1_layout(47, 5)
    same = [sorted(x1), sorted(x2), sorted(x3), [r]] == [sorted(rw) for rw in rows]
    return [
        _check("n47-rows", rows, target),
        IdentityCheck("n47-layout", _fmt(rows[0]), _fmt(x1), same,
                      "engine layout (c=3, l=6) reproduces the printed rows"),
    ]


def gadget_check(p: int) -> IdentityCheck:
    """(2 3)(2' 3') as two p-cycles, with letters 2,3,2',3' = 2,3,4,5 and o_i = 6.. ."""
    o = tuple(range(6, 6 + p - 4))
    G1, G2 = gadget((3, 2), (5, 4), o, p)
    return _check(f"gadget-p{p}", [[G1], [G2]], [[(2, 3), (4, 5)]])


def rp_prime_display() -> IdentityCheck:
    return _check("rP'-p7", [[(1, 2, 3, 4, 5), (6, 7, 8, 9, 10, 11, 12)]],
                  [[(1, 2, 3, 4, 5, 6, 7)], [(6, 1, 8, 9, 10, 11, 12)]])


def d1d2_display() -> list[IdentityCheck]:
    """The (p-1)-cycle pair display, verbatim and with 10/11 in order."""
    middle = [[tuple(range(1, 13))], [(7, 1)]]
    right = [[(1, 2, 3, 4, 5, 6, 7)], [(7, 1, 8, 9, 10, 11, 12)]]
    out = []
    for tag, d2 in (("verbatim", (7, 8, 9, 11, 10, 12)), ("corrected", (7, 8, 9, 10, 11, 12))):
        lhs = [[(1, 2, 3, 4, 5, 6), d2]]
        a = _check(f"d1d2-{tag}-first", lhs, middle)
        b = _check(f"d1d2-{tag}-second", middle, right)
        out.append(IdentityCheck(f"d1d2-{tag}", a.lhs, b.rhs, a.passed and b.passed,
                                 f"first equality {'holds' if a.passed else 'fails'}, "
                                 f"second {'holds' if b.passed else 'fails'}"))
    return out


def all_checks(primes=(5, 7)) -> list[IdentityCheck]:
    out = long_cycle_example()
    out += [gadget_check(p) for p in primes]
    out.append(rp_prime_display())
    out += d1d2_display()
    return out
