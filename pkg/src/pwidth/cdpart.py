"""The part of a permutation made of cycles shorter than p.

``decompose_small_cd`` handles the case where a two-cycle decomposition
applies to the whole short part g, borrowing letters from fixed points or
from a neighbouring piece h.  ``decompose_large_cd`` handles the case where
it does not, by peeling off sub-elements that do admit strong two-cycle
decompositions and then repairing the remainder.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from . import sparse as sp
from .bertram import long_plus_fixing, commute_through, peel, split_off_p_cycle, two_cycles
from .perm import PermError
from .pieces import (Cycle, EngineError, Piece, bert, bert_need, bert_ok, case_b,
                     decompose_a, decompose_b_pair)


def _mu(cycs) -> int:
    return sum(len(c) for c in cycs if len(c) >= 2)


def _is_even(cycs) -> bool:
    return sum(1 for c in cycs if len(c) % 2 == 0) % 2 == 0


def fits(cycs, p: int) -> bool:
    """Whether a strong-or-weak two-cycle decomposition into p-cycles applies.

    Even products need |mu| + c* <= 2p; odd ones (p-cycle times
    (p-1)-cycle) need |mu| + c* <= 2p - 1.
    """
    cycs = [c for c in cycs if len(c) >= 2]
    bound = 2 * p if _is_even(cycs) else 2 * p - 1
    return _mu(cycs) + len(cycs) <= bound


def _product_cycles(*cyclists) -> list[Cycle]:
    return sp.cycles(sp.mul(*(sp.of_cycles(cs) for cs in cyclists)))


# -- a reducible sub-element -------------------------------------------------

def find_reducible_sub(cycs: Sequence[Sequence[int]], p: int) -> list[Cycle]:
    """A sub-collection g' with |mu(g')| >= p that still admits a strong decomposition.

    Greedy first (longest cycles first, smallest letters on ties), then an
    exhaustive search over length multisets.
    """
    cycs = [tuple(c) for c in cycs if len(c) >= 2]
    if any(len(c) >= p for c in cycs):
        raise PermError("every cycle must be shorter than p")
    if fits(cycs, p):
        raise PermError("hypothesis fails: the element already admits a two-cycle decomposition")
    order = sorted(cycs, key=lambda c: (-len(c), min(c)))
    acc: list[Cycle] = []
    for c in order:
        acc.append(c)
        if _mu(acc) >= p:
            break
    if _mu(acc) >= p and fits(acc, p):
        return acc
    by_len: dict[int, list[Cycle]] = {}
    for c in order:
        by_len.setdefault(len(c), []).append(c)
    lens = sorted(by_len, reverse=True)

    def search(i, chosen, mu):
        if mu >= p:
            sub = [c for L, k in chosen for c in by_len[L][:k]]
            return sub if fits(sub, p) else None
        if i == len(lens):
            return None
        L = lens[i]
        for k in range(min(len(by_len[L]), (2 * p - mu) // L + 1), -1, -1):
            got = search(i + 1, chosen + [(L, k)], mu + k * L)
            if got:
                return got
        return None

    got = search(0, [], 0)
    if got is None:
        raise EngineError(f"no reducible sub-element found for p={p}: {cycs}")
    return got


# -- weak absorption into a three-slot piece --------------------------------

def absorb(piece: Piece, gcycs: list[Cycle], p: int) -> Piece:
    """Append a weak two-cycle decomposition of g, borrowing free letters of ``piece``."""
    k = bert_need(gcycs, p)
    if k == 0:
        A, B = bert(gcycs, p)
        return Piece([piece.slots[0], piece.slots[1] + [A], piece.slots[2] + [B]],
                     piece.trace + ["absorb:strong"])
    only1 = piece.only(0)
    if len(only1) >= k:
        A, B = bert(gcycs, p, borrowed=only1[:k])
        return Piece([piece.slots[0], piece.slots[1] + [A], piece.slots[2] + [B]],
                     piece.trace + ["absorb:slot1"])
    only3 = piece.only(2)
    if len(only3) >= k:
        # g * y1 y2 y3 = (A y1)(B y2) y3
        A, B = bert(gcycs, p, borrowed=only3[:k])
        return Piece([piece.slots[0] + [A], piece.slots[1] + [B], piece.slots[2]],
                     piece.trace + ["absorb:slot3"])
    only2 = set(piece.only(1))
    for idx, y in enumerate(piece.slots[1]):
        for i in range(p):
            run = [y[(i + j) % p] for j in range(k)]
            if all(x in only2 for x in run):
                A, B = bert(gcycs, p, borrowed=list(reversed(run)))
                A2, y2 = commute_through(y, A, k)
                slot2 = list(piece.slots[1])
                slot2[idx] = y2
                return Piece([piece.slots[0] + [A2], slot2, piece.slots[2] + [B]],
                             piece.trace + ["absorb:slot2-commute"])
    raise EngineError(f"no slot of {piece.trace} offers {k} free letters")


# -- small short part --------------------------------------------------------

def decompose_small_cd(gcycs: Sequence[Sequence[int]], p: int, *, h: Sequence[Sequence[int]] | None = None,
                       fixed: Sequence[int] = ()) -> Piece:
    """Factor g (optionally times the neighbouring piece h) into order-p slots.

    Without ``h`` a weak decomposition borrows from ``fixed`` (fixed points
    of the ambient permutation).  ``h`` is one odd cycle of length >= p or
    a pair of even cycles with the longer one exceeding p.
    """
    g = [tuple(c) for c in gcycs if len(c) >= 2]
    if not g:
        raise PermError("g must be non-trivial")
    if not fits(g, p) or not _is_even(g):
        raise PermError("g must be even with (|mu|+c*)/2 <= p")
    k = bert_need(g, p)
    if k == 0 or h is None:
        if k and len(fixed) < k:
            raise EngineError(f"need {k} fixed letters, only {len(fixed)} available")
        borrowed = sorted(fixed)[:k]
        A, B = bert(g, p, borrowed=borrowed)
        pc = Piece([[A], [B], []], ["short:strong" if k == 0 else "short:weak-fixed"])
        return pc.check(g, p, strong=(k == 0))
    h = [tuple(c) for c in h]
    target = g + h
    if len(h) == 1:
        pc = _small_with_a(g, h[0], p, k)
    elif len(h) == 2:
        b1, b2 = sorted(h, key=len, reverse=True)
        pc = _small_with_b(g, b1, b2, p, k)
    else:
        raise PermError("h must be one odd cycle or a pair of even cycles")
    return pc.check(target, p)


def _small_with_a(g, a, p, k) -> Piece:
    s = len(a)
    if s == p:
        A, B = bert(g, p, borrowed=list(a[:k]))
        return Piece([[A], [B], [a]], ["short(1):p-cycle"])
    if s < 2 * p:
        x = s - p
        if x >= k:
            A2, B2 = bert([a], p)
            free = sorted(set(B2) - set(A2))
            A1, B1 = bert(g, p, borrowed=free[:k])
            return Piece([[A1], [B1, A2], [B2]], ["short(1)"])
        a1, P = split_off_p_cycle(a, p, a[0])
        rest = g + [a1]
        if not bert_ok(rest, p):
            raise EngineError("short(1) split: remainder does not fit")
        pool = [y for y in P if y != a[0]]
        A, B = bert(rest, p, borrowed=pool[: bert_need(rest, p)])
        return Piece([[A], [B], [P]], ["short(1):split"])
    return Piece(*_retag(absorb(decompose_a(a, p, front=True), g, p), "short(2)"))


def _retag(pc: Piece, tag: str):
    return pc.slots, [tag] + pc.trace


def _small_with_b(g, b1, b2, p, k) -> Piece:
    case = case_b(len(b1), len(b2), p)
    if case != "4":
        tag = {"1": "short(3)", "1'": "short(3)", "2": "short(5)", "3": "short(4)"}[case]
        return Piece(*_retag(absorb(decompose_b_pair(b1, b2, p), g, p), tag))
    d = b2
    b1r, P = split_off_p_cycle(b1, p, b1[0])
    pool = [y for y in P if y != b1[0]]
    db = [d, b1r]
    if _mu(db) >= p:
        A1, B1 = bert(db, p)
        A2, B2 = bert(g, p, borrowed=pool[:k])
        return Piece([[A2, A1], [B2, B1], [P]], ["short(4):split-strong"])
    whole = g + db
    if bert_ok(whole, p):
        A, B = bert(whole, p, borrowed=pool[: bert_need(whole, p)])
        return Piece([[A], [B], [P]], ["short(4):joint"])
    k2 = bert_need(db, p)
    if k + k2 > len(pool):
        raise EngineError("short(4): not enough letters in the split p-cycle")
    A2, B2 = bert(g, p, borrowed=pool[:k])
    A1, B1 = bert(db, p, borrowed=pool[k:k + k2])
    return Piece([[A2, A1], [B2, B1], [P]], ["short(4):separate"])


# -- large short part --------------------------------------------------------

def _pair_up(ds: list[Cycle], p: int) -> tuple[list[Cycle], list[Cycle]]:
    """Strong two-cycle decompositions of consecutive pairs of (p-1)-cycles."""
    if len(ds) % 2:
        raise EngineError("odd number of (p-1)-cycles left to pair")
    P, Q = [], []
    for i in range(0, len(ds), 2):
        a, b = bert([ds[i], ds[i + 1]], p)
        P.append(a)
        Q.append(b)
    return P, Q


def _long_fix_finish(unit: list[Cycle], p: int, tag: str) -> Piece:
    """unit = L y (long cycle times fixing cycle), L = P x, then x y = A B."""
    L, y = long_plus_fixing(unit)
    if len(L) < p + 1:
        raise EngineError(f"{tag}: long cycle too short")
    (P,), x = peel(L, p, 1)
    xy = _product_cycles([x], [y] if y else [])
    if not bert_ok(xy, p):
        raise EngineError(f"{tag}: x*y does not fit")
    pool = sorted(set(P) - sp.support(xy))
    A, B = bert(xy, p, borrowed=pool[: bert_need(xy, p)])
    return Piece([[P], [A], [B]], [tag])


def _unit_ABr(A: Cycle, B: Cycle, r: list[Cycle], p: int) -> Piece:
    k = bert_need(r, p)
    freeA = sorted(set(A) - set(B))
    if len(freeA) >= k:
        P, Q = bert(r, p, borrowed=freeA[:k])
        return Piece([[A], [B, P], [Q]], ["short-large(1):borrow-A"])
    Br = [B] + r
    if _mu(Br) + len(r) + 1 <= 2 * p:
        P, Q = bert(Br, p)
        return Piece([[A], [P], [Q]], ["short-large(1):Br"])
    unit = _product_cycles([A], [B]) + r
    return _long_fix_finish(unit, p, "short-large(1):long-fixing")


def _split_two_pairs(r: list[Cycle], P: Cycle, Q: Cycle, p: int):
    """r = h h' with h*P and h'*Q both fitting a two-cycle decomposition."""
    t = len(r)
    cands = []
    big = [c for c in r if 2 * len(c) >= _mu(r)]
    for c in big:
        cands.append([c])
    for size in range(1, t):
        for sub in combinations(r, size):
            cands.append(list(sub))
    for h in cands:
        hp = [c for c in r if c not in h]
        if bert_ok(h + [P], p) and bert_ok(hp + [Q], p):
            return h, hp
    raise EngineError("no h / h' split of the remainder")


def _unit_CCddr(C1, C2, d1, d2, r: list[Cycle], p: int) -> Piece:
    a, b = d1[0], d2[0]
    P = tuple(d1) + (b,)
    Q = (b, a) + tuple(d2[1:])
    if sp.mul(sp.of_cycles([P]), sp.of_cycles([Q])) != sp.of_cycles([d1, d2]):
        raise EngineError("d1 d2 = P P' identity failed")
    if len(r) == 1:
        A, B = bert(r + [Q], p, avoid_a=(a, b))
        return Piece([[C1, C2], [P, A], [B]], ["short-large(2):CCddr-single"])
    h, hp = _split_two_pairs(r, P, Q, p)
    A, B = bert(h + [P], p, avoid_b=(a, b))
    A2, B2 = bert(hp + [Q], p, avoid_a=(a, b))
    return Piece([[C1, C2], [A, A2], [B, B2]], ["short-large(2):CCddr-split"])


def _unit_Cdr(C1: Cycle, d1: Cycle, r: list[Cycle], p: int) -> Piece:
    if bert_ok([d1] + r, p):
        A, B = bert([d1] + r, p)
        return Piece([[C1], [A], [B]], ["short-large(2):Cdr-joint"])
    k = p - _mu(r)
    Cd = _product_cycles([C1], [d1])
    if k <= _mu(Cd) - p:
        free = sorted(set(d1) - set(C1))
        C2, d2 = two_cycles(r, p - 1, odd=True, borrowed=free[:k])
        dd = _product_cycles([d2], [d1])
        if not bert_ok(dd, p) or _mu(dd) < p:
            raise EngineError("short-large(2): d' d1 is not strongly decomposable")
        P, Q = bert(dd, p)
        return Piece([[C1, C2], [P], [Q]], ["short-large(2):Cdr-odd-weak"])
    return _long_fix_finish(Cd + r, p, "short-large(2):Cdr-long-fixing")


def decompose_large_cd(gcycs: Sequence[Sequence[int]], p: int) -> Piece:
    """Strong three-slot decomposition of a short part too large for one two-cycle step."""
    g = [tuple(c) for c in gcycs if len(c) >= 2]
    if any(len(c) >= p for c in g):
        raise PermError("every cycle must be shorter than p")
    if not _is_even(g):
        raise PermError("the short part must be an even permutation")
    if fits(g, p):
        raise PermError("hypothesis fails: use the small-part decomposition")
    AB: list[tuple[Cycle, Cycle]] = []
    Cd: list[tuple[Cycle, Cycle]] = []
    rem = list(g)
    trace = ["short-large"]
    while rem and not fits(rem, p):
        sub = find_reducible_sub(rem, p)
        rem = [c for c in rem if c not in sub]
        _reduce(sub, p, AB, Cd)
    r = rem
    if r and _mu(r) >= p:
        _reduce(r, p, AB, Cd)
        r = []
    trace.append(f"u={len(AB)},v={len(Cd)}")
    slots: list[list[Cycle]] = [[], [], []]
    unit: Piece | None = None
    Cs = [c for c, _ in Cd]
    ds = [d for _, d in Cd]
    if not r:
        for A, B in AB:
            slots[0].append(A)
            slots[1].append(B)
        slots[0] += Cs
        P, Q = _pair_up(ds, p)
        slots[1] += P
        slots[2] += Q
    elif AB:
        if len(Cd) % 2:
            e = next(c for c in r if len(c) % 2 == 0)
            r = [c for c in r if c != e]
            ds = ds + [e]
            trace.append("relabel")
        A1, B1 = AB[0]
        for A, B in AB[1:]:
            slots[0].append(A)
            slots[1].append(B)
        slots[0] += Cs
        P, Q = _pair_up(ds, p)
        slots[1] += P
        slots[2] += Q
        if r:
            unit = _unit_ABr(A1, B1, r, p)
        else:
            slots[0].append(A1)
            slots[1].append(B1)
    else:
        v = len(Cd)
        if v % 2 == 0:
            evens = [c for c in r if len(c) % 2 == 0]
            if evens:
                h = [evens[0]]
                hp = [c for c in r if c != evens[0]]
                u1 = _unit_Cdr(Cs[0], ds[0], h, p)
                u2 = _unit_Cdr(Cs[1], ds[1], hp, p)
                unit = Piece([u1.slots[i] + u2.slots[i] for i in range(3)], u1.trace + u2.trace)
            else:
                unit = _unit_CCddr(Cs[0], Cs[1], ds[0], ds[1], r, p)
            slots[0] += Cs[2:]
            P, Q = _pair_up(ds[2:], p)
        else:
            unit = _unit_Cdr(Cs[0], ds[0], r, p)
            slots[0] += Cs[1:]
            P, Q = _pair_up(ds[1:], p)
        slots[1] += P
        slots[2] += Q
    if unit is not None:
        for i in range(3):
            slots[i] += unit.slots[i]
        trace += unit.trace
    return Piece(slots, trace).check(g, p)


def _reduce(sub: list[Cycle], p: int, AB: list, Cd: list) -> None:
    if _is_even(sub):
        AB.append(bert(sub, p))
    else:
        Cd.append(two_cycles(sub, p - 1, odd=True))
