"""Three-slot factorizations of single odd cycles and of pairs of even cycles.

A ``Piece`` holds three slots; each slot is a list of pairwise-disjoint
p-cycles, so it is an element of order p (or the identity).  The product
slot1 * slot2 * slot3 equals the target, and every letter used lies in the
target's support (strong decompositions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import sparse as sp
from .bertram import peel, split_off_p_cycle, two_cycles
from .perm import PermError

Cycle = tuple[int, ...]


class EngineError(AssertionError):
    """A construction step broke its own postcondition (an engine bug)."""


@dataclass
class Piece:
    slots: list[list[Cycle]] = field(default_factory=lambda: [[], [], []])
    trace: list[str] = field(default_factory=list)

    def letters(self, i: int) -> set[int]:
        return sp.support(self.slots[i])

    def only(self, i: int) -> list[int]:
        """Letters moved by slot i and by no other slot, ascending."""
        others = self.letters((i + 1) % 3) | self.letters((i + 2) % 3)
        return sorted(self.letters(i) - others)

    def support(self) -> set[int]:
        return self.letters(0) | self.letters(1) | self.letters(2)

    def product(self) -> dict[int, int]:
        return sp.mul(*(sp.of_cycles(s) for s in self.slots))

    def check(self, target: Iterable[Sequence[int]], p: int, *, strong: bool = True) -> "Piece":
        target = [tuple(c) for c in target]
        for i, slot in enumerate(self.slots):
            seen: set[int] = set()
            for c in slot:
                if len(c) != p:
                    raise EngineError(f"slot {i + 1} holds a {len(c)}-cycle, p={p}: {self.trace}")
                if seen & set(c):
                    raise EngineError(f"slot {i + 1} cycles overlap: {self.trace}")
                seen.update(c)
        if self.product() != sp.of_cycles(target):
            raise EngineError(f"product mismatch for {self.trace}")
        if strong and not self.support() <= sp.support(target):
            raise EngineError(f"letters outside the target support: {self.trace}")
        return self


def free_count(pc: Piece) -> int:
    return sum(len(pc.only(i)) for i in range(3))


def bert(cycs: Sequence[Sequence[int]], p: int, borrowed: Sequence[int] = (),
         avoid_a: Iterable[int] = (), avoid_b: Iterable[int] = ()) -> tuple[Cycle, Cycle]:
    """Two p-cycles A, B with A*B equal to the product of ``cycs``."""
    return two_cycles(cycs, p, odd=False, borrowed=borrowed, avoid_a=avoid_a, avoid_b=avoid_b)


def bert_need(cycs: Sequence[Sequence[int]], p: int) -> int:
    return max(0, p - sum(len(c) for c in cycs))


def bert_ok(cycs: Sequence[Sequence[int]], p: int) -> bool:
    cycs = [c for c in cycs if len(c) >= 2]
    return sum(len(c) for c in cycs) + len(cycs) <= 2 * p


# -- odd cycles of length >= p ----------------------------------------------

def case_a(s: int, p: int) -> int:
    """Case number (1..5) for an odd cycle of length s >= p."""
    if s >= 5 * p - 4:
        return 1
    if 2 * p <= s <= 3 * p - 1:
        return 2
    if 4 * p - 2 <= s <= 5 * p - 5:
        return 3
    if 3 * p <= s <= 4 * p - 3:
        return 4
    return 5


def case1_layout(s: int, p: int):
    """The long-cycle construction on positions 1..s.

    Returns (x1, x2, x3, r) as lists of position tuples; the product
    x1 x2 x3 r is the cycle (1 2 .. s).
    """
    m = s - (3 * p - 2)
    for c in range(0, m // (2 * p - 2) + 1):
        l = m - c * (2 * p - 2) - (p - 1)
        if p - 1 <= l < 3 * p - 2:
            break
    else:
        raise PermError(f"no (c, l) split for length {s}, p={p}")
    x1 = [tuple(range(1, p + 1))]
    for i in range(c + 1):
        lo = (3 * p - 2) + i * (2 * p - 3)
        x1.append(tuple(range(lo, lo + p - 1)) + (s - i,))
    x2 = [(1,) + tuple(range(p + 1, 2 * p))]
    for i in range(1, c + 1):
        lo = (4 * p - 3) + (i - 1) * (2 * p - 3)
        x2.append(tuple(range(lo, lo + p - 1)) + (s - i + 1,))
    x3 = [(1,) + tuple(range(2 * p, 3 * p - 1))]
    r = tuple(range(s - c - l, s - c + 1))
    return x1, x2, x3, r


def decompose_a(a: Sequence[int], p: int, *, front: bool = False) -> Piece:
    """Strong three-slot decomposition of one odd cycle of length >= p.

    With ``front=True`` the 2p <= s <= 3p-1 case peels the p-cycle from the
    front, leaving positions 2..p free in slot 1 for every s >= 2p.
    """
    a = tuple(a)
    s = len(a)
    if s % 2 == 0 or s < p:
        raise PermError(f"need an odd cycle of length >= {p}, got length {s}")

    def L(*pos: int) -> Cycle:
        return tuple(a[i - 1] for i in pos)

    pc = Piece()
    if s == p:
        pc.slots[0].append(a)
        pc.trace.append("odd:p-cycle")
        return pc.check([a], p)
    case = case_a(s, p)
    pc.trace.append(f"odd({case})")
    if case == 5:
        A, B = bert([a], p)
        pc.slots[0].append(A)
        pc.slots[1].append(B)
    elif case == 2:
        if front:
            (P,), e = peel(a, p, 1)
            F1, F2 = bert([e], p)
            pc.slots = [[P], [F1], [F2]]
            pc.trace.append("front")
        else:
            e1, E2 = split_off_p_cycle(a, p, a[0])
            F1, F2 = bert([e1], p)
            pc.slots = [[F1], [F2], [E2]]
    elif case == 4:
        g = L(1, *range(2 * p, s + 1))
        A, B = bert([g], p, avoid_a=[a[0]])
        pc.slots = [[L(*range(1, p + 1))], [L(1, *range(p + 1, 2 * p)), A], [B]]
    elif case == 3:
        g = L(*range(2 * p, s - p + 3))
        A, B = bert([g], p, avoid_b=[a[2 * p - 1]])
        tail = L(2 * p, *range(s - p + 3, s + 1), 1)
        pc.slots = [[L(*range(1, p + 1))], [L(1, *range(p + 1, 2 * p)), A], [B, tail]]
    else:
        x1, x2, x3, r = case1_layout(s, p)
        x1, x2, x3 = ([L(*c) for c in x] for x in (x1, x2, x3))
        r = L(*r)
        if len(r) == p:
            pc.slots = [x1, x2, x3 + [r]]
            pc.trace.append("r=p")
        elif len(r) < 2 * p:
            E1, E2 = bert([r], p)
            pc.slots = [x1, x2 + [E1], x3 + [E2]]
            pc.trace.append("r<2p")
        else:
            e1, E2 = split_off_p_cycle(r, p, r[0])
            F1, F2 = bert([e1], p)
            pc.slots = [x1 + [F1], x2 + [F2], x3 + [E2]]
            pc.trace.append("r>=2p")
    return pc.check([a], p)


def _a_with_free_letter(b: Sequence[int], p: int, min_free: int = 0):
    """Write an even cycle b as a*t, t = (o1 oN), with o1 free in slot 1 of a's piece.

    Returns (piece for a, shared letter o1, outer letter oN, extra slot-1
    letters usable for borrowing).  Prefers the rotation that puts o1 at
    position 2 of a; otherwise scans rotations.
    """
    b = tuple(b)
    N = len(b)
    order = [N - 2] + [i for i in range(N) if i != N - 2]
    for start in order:
        o = b[start + 1:] + b[:start + 1]  # o1 = b[start+1]
        o1, oN = o[0], o[-1]
        a = o[:-1]
        a_rot = a[-1:] + a[:-1]  # o1 sits at position 2
        if p < len(a) < 2 * p:
            A, B = bert([a], p, avoid_b=[o1])
            piece = Piece([[A], [B], []], ["odd(5)"]).check([a], p)
        else:
            piece = decompose_a(a_rot, p, front=True)
        only = piece.only(0)
        if o1 in only:
            rest = [x for x in only if x != o1]
            if len(rest) >= min_free:
                return piece, o1, oN, rest
    raise EngineError(f"no rotation of a {N}-cycle leaves a free shared letter (p={p})")


# -- pairs of even cycles ----------------------------------------------------

def case_b(l1: int, l2: int, p: int) -> str:
    if l1 < l2:
        l1, l2 = l2, l1
    if l2 > p:
        if l1 >= 2 * p + 2:
            return "1'" if (l1 <= 3 * p - 1 and l2 <= 2 * p) else "1"
        return "2"
    if l1 >= 2 * p:
        return "3"
    return "4"


def gadget(t1: Sequence[int], t2: Sequence[int], o: Sequence[int], p: int) -> tuple[Cycle, Cycle]:
    """Two p-cycles whose product is the transposition pair (2 3)(2' 3').

    ``t1 = (3, 2)`` and ``t2 = (3', 2')`` name the letters; ``o`` supplies
    p - 4 extra letters.
    """
    three, two = t1
    three_b, two_b = t2
    if p == 3:
        return bert([(two, three), (two_b, three_b)], 3)
    o = tuple(o)
    if len(o) != p - 4:
        raise PermError(f"gadget needs {p - 4} extra letters")
    G1 = o + (three_b, three, two_b, two)
    G2 = (three, two_b, two, three_b) + tuple(reversed(o))
    return G1, G2


def _b_case1(b1: Cycle, b2: Cycle, p: int) -> Piece:
    pa, three, two, free1 = _a_with_free_letter(b1, p)
    pb, three_b, two_b, free2 = _a_with_free_letter(b2, p)
    slot_only = sorted(set(free1) | set(free2))
    need = max(0, p - 4)
    if len(slot_only) < need:
        raise EngineError(f"gadget short of letters: {len(slot_only)} < {need}")
    G1, G2 = gadget((three, two), (three_b, two_b), slot_only[:need], p)
    pc = Piece(trace=["pair(1)"] + pa.trace + pb.trace)
    pc.slots = [pa.slots[0] + pb.slots[0],
                pa.slots[1] + pb.slots[1] + [G1],
                pa.slots[2] + pb.slots[2] + [G2]]
    return pc


def _peel_until_bertram(b1: Cycle, b2: Cycle, p: int):
    k1, k2 = 1, int(len(b2) > p)
    while True:
        P1, r1 = peel(b1, p, k1)
        P2, r2 = peel(b2, p, k2) if k2 else ([], b2)
        rest = [r1, r2]
        if bert_ok(rest, p):
            return P1 + P2, rest
        if (k1 + 1) * p <= len(b1):
            k1 += 1
        elif k2 and (k2 + 1) * p <= len(b2):
            k2 += 1
        else:
            return None


def decompose_b_pair(b1: Sequence[int], b2: Sequence[int], p: int) -> Piece:
    """Strong three-slot decomposition of a pair of disjoint even cycles, |b1| > p."""
    b1, b2 = tuple(b1), tuple(b2)
    if len(b1) % 2 or len(b2) % 2:
        raise PermError("both cycles must have even length")
    if set(b1) & set(b2):
        raise PermError("cycles must be disjoint")
    if len(b1) < len(b2):
        b1, b2 = b2, b1
    if len(b1) <= p:
        raise PermError(f"the longer cycle must exceed p={p}")
    case = case_b(len(b1), len(b2), p)
    target = [b1, b2]
    if case == "1":
        return _b_case1(b1, b2, p).check(target, p)
    if case == "1'":
        got = _peel_until_bertram(b1, b2, p)
        if got is None:
            # small-p corner: the gadget route works here as well
            pc = _b_case1(b1, b2, p)
            pc.trace[0] = "pair(1')gadget"
            return pc.check(target, p)
        Ps, rest = got
        only = sorted(sp.support(Ps) - sp.support(rest))
        A, B = bert(rest, p, borrowed=only[: bert_need(rest, p)])
        return Piece([Ps, [A], [B]], ["pair(1')"]).check(target, p)
    if case == "2":
        return _b_case2(b1, b2, p).check(target, p)
    if case == "3":
        cands = []
        if len(b1) <= 3 * p - 1:
            got = _peel_until_bertram(b1, b2, p)
            if got is not None:
                Ps, rest = got
                only = sorted(sp.support(Ps) - sp.support(rest))
                A, B = bert(rest, p, borrowed=only[: bert_need(rest, p)])
                cands.append(Piece([Ps, [A], [B]], ["pair(3')"]).check(target, p))
        pa, o1, oN, free = _a_with_free_letter(b1, p, min_free=0)
        rest = [(o1, oN), b2]
        need = bert_need(rest, p)
        if len(free) < need:
            raise EngineError("case (3) short of free letters")
        A, B = bert(rest, p, borrowed=free[:need])
        pc = Piece(trace=["pair(3)"] + pa.trace)
        pc.slots = [pa.slots[0], pa.slots[1] + [A], pa.slots[2] + [B]]
        cands.append(pc.check(target, p))
        return max(cands, key=free_count)
    b1r, P = split_off_p_cycle(b1, p, b1[0])
    rest = [b1r, b2]
    only = [x for x in P if x != b1[0]]
    A, B = bert(rest, p, borrowed=only[: bert_need(rest, p)])
    return Piece([[A], [B], [P]], ["pair(4)"]).check(target, p)


def _b_case2(b1: Cycle, b2: Cycle, p: int) -> Piece:
    b1r, P1 = split_off_p_cycle(b1, p, b1[0])
    b2r, P2 = split_off_p_cycle(b2, p, b2[0])
    ps = [P1, P2]
    rest = [b1r, b2r]
    trace = ["pair(2)"]
    if len(b1r) + len(b2r) > 2 * p - 2:
        # a remainder of length p+1 sheds a further p-cycle disjoint from its P
        for idx in (1, 0):
            if bert_ok(rest, p):
                break
            r = rest[idx]
            if len(r) != p + 1:
                continue
            o = r  # (o1 .. o(p+1)) with o1 shared with the first P
            Pn = (o[p],) + o[1:p]
            rest[idx] = (o[p], o[0])
            ps.append(Pn)
            trace.append(f"extra-split{idx + 1}")
    if not bert_ok(rest, p):
        raise EngineError(f"case (2) remainder too large: {rest}")
    # borrow from the first P so the second keeps its free letters
    pool = [x for x in P1 if x not in sp.support(rest)] + \
           [x for P in ps[2:] for x in P if x not in sp.support(rest)] + \
           [x for x in P2 if x not in sp.support(rest)]
    A, B = bert(rest, p, borrowed=pool[: bert_need(rest, p)])
    return Piece([[A], [B], ps], trace)
