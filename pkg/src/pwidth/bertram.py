"""Two-cycle decompositions and the cycle-surgery identities.

``decompose_even`` writes an even permutation as a product of two l-cycles
for every l(g) <= l <= n, and ``decompose_odd`` writes an odd one as an
(l+1)-cycle times an l-cycle.  The construction:

1. planar absorption: start from one cycle split as
   ``(a1..ar) = (a1..aj)(a1 a(j+1)..ar)`` and absorb every further cycle
   ``c`` by appending ``c[:j]`` to A and threading ``c[j:] + c[0]`` into B
   right after the shared anchor; this reaches l = l(g) exactly;
2. raise l one step at a time by inserting one more letter of mu(g) into A
   (deterministic search over letter and position, B recomputed as A^-1 g);
3. past |mu(g)|, append borrowed letters as one contiguous block in both
   cycles.

Every returned pair is checked by multiplication.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import sparse as sp
from .perm import Permutation, PermError, from_cycles, partitions, to_cycles

log = logging.getLogger(__name__)


class NoDecomposition(PermError):
    """No two-cycle decomposition exists for the requested length."""


class PoolExhausted(RuntimeError):
    """A LetterPool ran out of letters."""


@dataclass
class LetterPool:
    """Letters available for weak decompositions, handed out smallest first."""

    available: list[int]
    consumed: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.available = sorted(set(self.available))

    def __len__(self):
        return len(self.available)

    def take(self, k: int) -> list[int]:
        if k > len(self.available):
            raise PoolExhausted(f"need {k} letters, pool has {len(self.available)}")
        got, self.available = self.available[:k], self.available[k:]
        self.consumed.extend(got)
        return got

    def discard(self, letters: Iterable[int]) -> None:
        drop = set(letters)
        self.available = [x for x in self.available if x not in drop]


@dataclass(frozen=True)
class TwoCycleResult:
    first: tuple[int, ...]
    second: tuple[int, ...]
    strength: str
    borrowed: tuple[int, ...]


# -- core construction on raw cycle lists -----------------------------------

def _pick_key(diff: int, want: int, j: int):
    # closest to the target imbalance, then most balanced, then longest A
    return abs(diff - want), abs(diff), -j


def _planar(cycs: Sequence[Sequence[int]], odd: bool) -> tuple[list[int], list[int]]:
    cs = sorted((tuple(c) for c in cycs), key=lambda c: (-(len(c) % 2), -len(c), min(c)))
    want = 1 if odd else 0

    def pick(la: int, lb: int, r: int) -> int:
        return min(range(1, r + 1), key=lambda j: _pick_key(la + j - (lb + r + 1 - j), want, j))

    first = cs[0]
    j = pick(0, 0, len(first))
    A = list(first[:j])
    B = [first[0]] + list(first[j:])
    anchor = first[0]
    for c in cs[1:]:
        j = pick(len(A), len(B), len(c))
        A = A + list(c[:j])
        B = [anchor] + list(c[j:]) + [c[0]] + B[1:]
    return A, B


def _raise(g: dict[int, int], A: list[int], lb: int, mu: Sequence[int]) -> list[int]:
    """Insert one letter of mu(g) into A so that A^-1 g is an (lb+1)-cycle."""
    inA = set(A)
    for x in mu:
        if x in inA:
            continue
        for pos in range(1, len(A) + 1):
            cand = A[:pos] + [x] + A[pos:]
            B = sp.mul(sp.inv(sp.of_cycles([cand])), g)
            if sp.is_single_cycle(B, lb + 1):
                return cand
    raise NoDecomposition(f"raising step failed for A={A}")


def _seq_of(p: dict[int, int], start: int) -> list[int]:
    out = [start]
    y = p[start]
    while y != start:
        out.append(y)
        y = p[y]
    return out


def _strong_pair(cycs, la_target: int, odd: bool) -> tuple[list[int], list[int]]:
    g = sp.of_cycles(cycs)
    mu = sorted(g)
    A, B = _planar(cycs, odd)
    while len(A) < la_target:
        A = _raise(g, A, len(A) - (1 if odd else 0), mu)
    Bmap = sp.mul(sp.inv(sp.of_cycles([A])), g)
    lb = la_target - (1 if odd else 0)
    if lb >= 2:
        B = _seq_of(Bmap, min(Bmap))
    else:
        # degenerate 1-cycle: keep the anchor letter so weak extension can use it
        B = [A[0]]
    return A, B


def _variants(A: Sequence[int], B: Sequence[int], g: dict[int, int], rounds: int = 2):
    """Other factorizations of g: Hurwitz moves and conjugation by powers of g."""
    pairs = [(tuple(A), tuple(B))]
    a, b = tuple(A), tuple(B)
    for _ in range(rounds):
        # g = B * (B^-1 A B) and g = (A B A^-1) * A
        bm = sp.of_cycles([b])
        a, b = b, sp.conj(a, bm)
        pairs.append((a, b))
    a, b = tuple(A), tuple(B)
    for _ in range(rounds):
        am_inv = sp.inv(sp.of_cycles([a]))
        a, b = sp.conj(b, am_inv), a
        pairs.append((a, b))
    mu = len(g)
    for a, b in pairs:
        ca, cb = a, b
        for _ in range(max(mu, 1)):
            yield ca, cb
            ca, cb = sp.conj(ca, g), sp.conj(cb, g)


def two_cycles(cycs: Sequence[Sequence[int]], l: int, *, odd: bool,
               borrowed: Sequence[int] = (), avoid_a: Iterable[int] = (),
               avoid_b: Iterable[int] = ()) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cycle sequences (A, B) with A*B equal to the product of ``cycs``.

    A has length l (+1 when ``odd``), B has length l.  ``borrowed`` must hold
    exactly the letters needed beyond mu(g); they are placed as a contiguous
    block, ``borrowed[0]`` first in A and last in B.
    """
    cycs = [tuple(c) for c in cycs if len(c) >= 2]
    if not cycs:
        raise PermError("identity has no two-cycle decomposition")
    mu = sum(len(c) for c in cycs)
    k = len(cycs)
    lo = (mu + k - 1) // 2 if odd else (mu + k) // 2
    if l < lo:
        raise NoDecomposition(f"l={l} below the threshold {lo}")
    la = l + 1 if odd else l
    extra = max(0, la - mu)
    if len(borrowed) != extra:
        raise PermError(f"need exactly {extra} borrowed letters, got {len(borrowed)}")
    if set(borrowed) & sp.support(cycs):
        raise PermError("borrowed letters must lie outside the support")
    g = sp.of_cycles(cycs)
    A, B = _strong_pair(cycs, min(la, mu), odd)
    avoid_a, avoid_b = set(avoid_a), set(avoid_b)
    if avoid_a or avoid_b:
        for a, b in _variants(A, B, g):
            if not (avoid_a & set(a)) and not (avoid_b & set(b)):
                A, B = list(a), list(b)
                break
        else:
            raise NoDecomposition(f"no variant avoids {sorted(avoid_a)} / {sorted(avoid_b)}")
    if extra:
        if len(B) >= 2:
            anchor = A[0] if A[0] in B else next(x for x in A if x in B)
            A = sp.rotate_to(A, anchor)
            B = sp.rotate_to(B, anchor)
            B = B[1:] + B[:1]
        else:
            anchor = B[0]
            A = sp.rotate_to(A, anchor)
            B = [anchor]
        A = list(borrowed) + list(A)
        B = list(B) + list(reversed(borrowed))
    A, B = tuple(A), tuple(B)
    prod = sp.mul(sp.of_cycles([A]), sp.of_cycles([B]))
    if prod != g or len(A) != la or len(B) != l:
        raise AssertionError(f"two-cycle construction failed for {cycs}, l={l}")
    if (avoid_a & set(A)) or (avoid_b & set(B)):
        raise NoDecomposition("avoidance constraint broken by borrowed letters")
    return A, B


# -- public contract ---------------------------------------------------------

def l_even(g: Permutation) -> int:
    d = to_cycles(g)
    if not d.cycles:
        raise PermError("l(g) is undefined for the identity")
    if d.parity != "even":
        raise PermError("l(g) needs an even permutation")
    return (d.support_size + d.cycle_count) // 2


def max_threshold(n: int) -> int:
    """max of l(g) over the non-identity elements g of A_n, by cycle type."""
    best = 0
    for ct in partitions(n):
        big = [x for x in ct if x > 1]
        if big and sum(x - 1 for x in big) % 2 == 0:
            best = max(best, (sum(big) + len(big)) // 2)
    return best


def _decompose(g: Permutation, l: int, pool: LetterPool | None, odd: bool) -> TwoCycleResult:
    d = to_cycles(g)
    if not d.cycles:
        raise PermError("identity has no two-cycle decomposition")
    if (d.parity == "odd") != odd:
        raise PermError("wrong parity for this decomposition")
    top = g.degree - 1 if odd else g.degree
    if l > top:
        raise NoDecomposition(f"l={l} exceeds {top}")
    la = l + 1 if odd else l
    extra = max(0, la - d.support_size)
    borrowed: list[int] = []
    if extra:
        if pool is None:
            raise PoolExhausted(f"weak decomposition needs {extra} letters and no pool was given")
        mu = g.support()
        if any(x in mu or not 1 <= x <= g.degree for x in pool.available):
            raise PermError("pool letters must be fixed points of g")
        borrowed = pool.take(extra)
    A, B = two_cycles(d.cycles, l, odd=odd, borrowed=borrowed)
    strength = "weak" if borrowed else "strong"
    return TwoCycleResult(sp.canon(A), sp.canon(B) if len(B) >= 2 else (), strength, tuple(borrowed))


def decompose_even(g: Permutation, l: int, pool: LetterPool | None = None) -> TwoCycleResult:
    """Two l-cycles A, B with compose(A, B) == g; exists iff l(g) <= l <= n."""
    return _decompose(g, l, pool, odd=False)


def decompose_odd(g: Permutation, l: int, pool: LetterPool | None = None) -> TwoCycleResult:
    """An (l+1)-cycle A and an l-cycle B with compose(A, B) == g, g odd."""
    return _decompose(g, l, pool, odd=True)


def result_perms(res: TwoCycleResult, n: int) -> tuple[Permutation, Permutation]:
    return from_cycles(n, [res.first]), from_cycles(n, [res.second] if res.second else [])


def split_off_p_cycle(c: Sequence[int], p: int, anchor: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(o1..ol) = (o1..o(l-p+1)) (o1 o(l-p+2)..ol)`` with o1 = anchor."""
    c = tuple(c)
    l = len(c)
    if l <= p:
        raise PermError(f"cycle of length {l} is too short to split off a {p}-cycle")
    if anchor not in c:
        raise PermError(f"anchor {anchor} is not in the cycle")
    o = sp.rotate_to(c, anchor)
    return o[: l - p + 1], (o[0],) + o[l - p + 1:]


def peel(c: Sequence[int], p: int, k: int) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """``c = P1 P2 .. Pk * rest`` with the Pi pairwise disjoint p-cycles.

    ``P1 = (c1..cp)`` and ``rest`` has length len(c) - k(p-1).  Needs
    k*p <= len(c).
    """
    cur = tuple(c)
    if k * p > len(cur):
        raise PermError(f"cannot peel {k} disjoint {p}-cycles from a {len(cur)}-cycle")
    ps = []
    for _ in range(k):
        ps.append(cur[:p])
        rest = (cur[0],) + cur[p:]
        cur = rest[1:] + rest[:1] if len(rest) > 1 else rest
    return ps, cur


def long_plus_fixing(cycs: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Disjoint cycles c1..ck as one long cycle L times the k-cycle of first letters, reversed."""
    cycs = [tuple(c) for c in cycs if len(c) >= 2]
    if not cycs:
        raise PermError("identity has no long-cycle form")
    L = tuple(x for c in cycs for x in c)
    y = tuple(c[0] for c in reversed(cycs)) if len(cycs) > 1 else ()
    return L, y


def long_plus_fixing_perm(g: Permutation) -> tuple[Permutation, Permutation]:
    L, y = long_plus_fixing(to_cycles(g).cycles)
    return from_cycles(g.degree, [L]), from_cycles(g.degree, [y] if y else [])


def commute_through(y: Sequence[int], A: Sequence[int], k: int):
    """Rewrite y*A as A'*y' when y and A share k successive letters.

    y = (o1..ok l1..l(p-k)), A = (ok..o1 m1..m(p-k)) gives
    A' = (m1..m(p-k) ok o1..o(k-1)), y' = (m1 o(k-1)..o1 l1..l(p-k)).
    """
    y, A = tuple(y), tuple(A)
    p = len(y)
    if len(A) != p:
        raise PermError("commute_through needs two cycles of equal length")
    shared = set(y) & set(A)
    if len(shared) != k or not 1 <= k <= p - 1:
        raise PermError(f"cycles share {len(shared)} letters, expected {k}")
    start = None
    for i in range(p):
        if y[i] in shared and y[i - 1] not in shared:
            start = i
            break
    if start is None:
        raise PermError("shared letters are not successive in y")
    yr = sp.rotate_to(y, y[start])
    o = yr[:k]
    if set(o) != shared:
        raise PermError("shared letters are not successive in y")
    lpart = yr[k:]
    Ar = sp.rotate_to(A, o[-1])
    if Ar[:k] != tuple(reversed(o)):
        raise PermError("shared letters do not appear reversed and successive in A")
    m = Ar[k:]
    A2 = m + (o[-1],) + o[:-1]
    y2 = (m[0],) + tuple(reversed(o[:-1])) + lpart
    lhs = sp.mul(sp.of_cycles([y]), sp.of_cycles([A]))
    rhs = sp.mul(sp.of_cycles([A2]), sp.of_cycles([y2]))
    if lhs != rhs:
        raise AssertionError("commute_through identity failed")
    return sp.canon(A2), sp.canon(y2)


def intersection_bound_check(a: Sequence[int], b: Sequence[int]) -> bool:
    m = len(set(a) & set(b))
    if m == 0:
        raise PermError("cycles are disjoint")
    prod = sp.mul(sp.of_cycles([a]), sp.of_cycles([b]))
    return len(sp.cycles(prod)) <= m
