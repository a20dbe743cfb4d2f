"""Exact p-widths over A_n by breadth-first closure, and class-cube coverage.

Elements are rows of small integers (0-based images) indexed by their
Lehmer rank in S_n; visited sets are flat arrays over all n! ranks.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from .perm import partitions

DEFAULT_MAX_N = 9
HARD_MAX_N = 10
_CHUNK_ROWS = 1 << 21


class ResourceCapError(RuntimeError):
    """The requested computation exceeds the configured size cap."""


@dataclass(frozen=True, order=True)
class ClassDescriptor:
    cycle_type: tuple[int, ...]
    split: str = "none"

    def __post_init__(self):
        ct = tuple(sorted(self.cycle_type, reverse=True))
        object.__setattr__(self, "cycle_type", ct)
        if self.split not in ("none", "plus", "minus"):
            raise ValueError(f"bad split tag {self.split!r}")
        if self.split != "none" and not is_split_type(ct):
            raise ValueError(f"type {ct} does not split in A_n")

    @property
    def n(self) -> int:
        return sum(self.cycle_type)

    @property
    def r(self) -> int:
        big = [x for x in self.cycle_type if x > 1]
        return sum(big) - len(big)

    @property
    def is_even(self) -> bool:
        return sum(x - 1 for x in self.cycle_type) % 2 == 0

    def label(self) -> str:
        body = ",".join(map(str, self.cycle_type))
        return body + {"none": "", "plus": "+", "minus": "-"}[self.split]


def is_split_type(ct) -> bool:
    """An S_n class splits in A_n iff its parts are odd and pairwise distinct."""
    return all(x % 2 for x in ct) and len(set(ct)) == len(ct)


def an_classes(n: int) -> list[ClassDescriptor]:
    """All conjugacy classes of A_n, lexicographically descending."""
    out = []
    for ct in partitions(n):
        d = ClassDescriptor(ct)
        if not d.is_even:
            continue
        if is_split_type(ct):
            out += [ClassDescriptor(ct, "plus"), ClassDescriptor(ct, "minus")]
        else:
            out.append(d)
    return sorted(out, key=lambda d: (d.cycle_type, d.split == "plus"), reverse=True)


def _check_cap(n: int, p: int | None = None, max_n: int | None = None) -> None:
    cap = DEFAULT_MAX_N if max_n is None else max_n
    if n > min(cap, HARD_MAX_N):
        raise ResourceCapError(f"n={n} exceeds the oracle cap n <= {min(cap, HARD_MAX_N)}")
    if n == 10 and p is not None and p < 5:
        raise ResourceCapError("n=10 is only supported for p >= 5")
    limit = os.environ.get("PWIDTH_MAX_MEM")
    if limit:
        need = math.factorial(n) * (n + 2)
        if need > int(limit):
            raise ResourceCapError(f"needs about {need} bytes, PWIDTH_MAX_MEM={limit}")


# -- ranking -----------------------------------------------------------------

@lru_cache(maxsize=2)
def all_perms(n: int) -> np.ndarray:
    """S_n as an (n!, n) int8 array in lexicographic (= Lehmer rank) order."""
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


@lru_cache(maxsize=4)
def _weights(n: int) -> np.ndarray:
    return np.array([math.factorial(n - 1 - i) for i in range(n)], dtype=np.int64)


def lehmer_rank(X: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of the rows of X (each row a permutation of 0..n-1)."""
    X = np.asarray(X)
    n = X.shape[1]
    w = _weights(n)
    out = np.zeros(X.shape[0], dtype=np.int64)
    for i in range(n - 1):
        c = (X[:, i + 1:] < X[:, i:i + 1]).sum(axis=1)
        out += c * w[i]
    return out


def parity_rows(X: np.ndarray) -> np.ndarray:
    """0 for even rows, 1 for odd rows (inversion count mod 2)."""
    n = X.shape[1]
    inv = np.zeros(X.shape[0], dtype=np.int64)
    for i in range(n - 1):
        inv += (X[:, i + 1:] < X[:, i:i + 1]).sum(axis=1)
    return (inv & 1).astype(np.int8)


def compose_rows(X: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Row-wise x*g (x first): (x*g)(i) = g(x(i))."""
    return np.take_along_axis(G, X.astype(np.int64), axis=1)


def cycle_type_codes(X: np.ndarray) -> np.ndarray:
    """For each row, counts of cycles of each length 1..n, packed as base-(n+1) ints."""
    m, n = X.shape
    Xi = X.astype(np.int64)
    length = np.zeros((m, n), dtype=np.int64)
    cur = Xi.copy()
    idx = np.arange(n)
    for k in range(1, n + 1):
        hit = (cur == idx) & (length == 0)
        length[hit] = k
        cur = np.take_along_axis(Xi, cur, axis=1)
    code = np.zeros(m, dtype=np.int64)
    for L in range(1, n + 1):
        cnt = (length == L).sum(axis=1) // L
        code = code * (n + 1) + cnt
    return code


def decode_type(code: int, n: int) -> tuple[int, ...]:
    counts = []
    for _ in range(n):
        counts.append(code % (n + 1))
        code //= n + 1
    counts.reverse()  # counts[L-1] = number of L-cycles
    out = []
    for L in range(n, 0, -1):
        out += [L] * counts[L - 1]
    return tuple(out)


def encode_type(ct: tuple[int, ...], n: int) -> int:
    code = 0
    for L in range(1, n + 1):
        code = code * (n + 1) + sum(1 for x in ct if x == L)
    return code


def _listing_parity(row) -> int:
    """Parity of the conjugator from the canonical representative to ``row``.

    Only used for split types, whose cycle lengths are distinct and odd, so
    the choice of starting letter in each cycle does not change the parity.
    """
    n = len(row)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = int(row[j])
        cycles.append(c)
    cycles.sort(key=len, reverse=True)
    seq = [x for c in cycles for x in c]
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if seq[a] > seq[b])
    return inv & 1


def canonical_rep(ct: tuple[int, ...]) -> list[int]:
    """0-based images of (1..a)(a+1..a+b)... for the type, longest cycle first."""
    n = sum(ct)
    row = list(range(n))
    start = 0
    for L in sorted(ct, reverse=True):
        for j in range(L):
            row[start + j] = start + (j + 1) % L
        start += L
    return row


@dataclass
class ClassIndex:
    """Class label (index into ``classes``) for every even permutation of S_n."""

    n: int
    classes: list[ClassDescriptor]
    label: np.ndarray  # per rank; -1 on odd permutations
    even_ranks: np.ndarray

    def members(self, d: ClassDescriptor) -> np.ndarray:
        return np.nonzero(self.label == self.classes.index(d))[0]


@lru_cache(maxsize=2)
def class_index(n: int) -> ClassIndex:
    P = all_perms(n)
    par = parity_rows(P)
    even = np.nonzero(par == 0)[0]
    codes = cycle_type_codes(P[even])
    classes = an_classes(n)
    pos = {(d.cycle_type, d.split): i for i, d in enumerate(classes)}
    label = np.full(P.shape[0], -1, dtype=np.int32)
    for code in np.unique(codes):
        ct = decode_type(int(code), n)
        sel = even[codes == code]
        if is_split_type(ct):
            pars = np.array([_listing_parity(P[r]) for r in sel])
            label[sel[pars == 0]] = pos[(ct, "plus")]
            label[sel[pars == 1]] = pos[(ct, "minus")]
        else:
            label[sel] = pos[(ct, "none")]
    return ClassIndex(n, classes, label, even)


# -- exact widths ------------------------------------------------------------

@dataclass
class WidthTable:
    n: int
    p: int
    widths: dict[ClassDescriptor, int]
    group_width: int
    layer_sizes: list[int] = field(default_factory=list)
    class_function: bool = True
    violations: list[str] = field(default_factory=list)

    def rows(self) -> list[tuple[ClassDescriptor, int]]:
        keys = sorted(self.widths, key=lambda d: (d.cycle_type, d.split == "plus"), reverse=True)
        return [(d, self.widths[d]) for d in keys]

    def width_of(self, cycle_type, split: str = "none") -> int:
        ct = tuple(sorted(cycle_type, reverse=True))
        ct = ct + (1,) * (self.n - sum(ct))
        if split == "none" and is_split_type(ct):
            ws = {self.widths[ClassDescriptor(ct, s)] for s in ("plus", "minus")}
            if len(ws) != 1:
                raise ValueError("split halves differ; name the half")
            return ws.pop()
        return self.widths[ClassDescriptor(ct, split)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "group_width": self.group_width,
            "class_function": self.class_function,
            "layer_sizes": self.layer_sizes,
            "rows": [{"cycle_type": list(d.cycle_type), "split": d.split, "width": w}
                     for d, w in self.rows()],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# n={self.n},p={self.p},group_width={self.group_width}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cycle_type", "split", "width"])
        for d, width in self.rows():
            w.writerow([" ".join(map(str, d.cycle_type)), d.split, width])
        return buf.getvalue()


def order_p_ranks(n: int, p: int) -> np.ndarray:
    """Ranks of the non-identity elements x of A_n with x^p = 1."""
    P = all_perms(n)
    ci = class_index(n)
    E = P[ci.even_ranks].astype(np.int64)
    cur = E.copy()
    for _ in range(p - 1):
        cur = np.take_along_axis(E, cur, axis=1)
    ident = np.arange(n)
    ok = np.all(cur == ident, axis=1) & ~np.all(E == ident, axis=1)
    return ci.even_ranks[ok]


def _push(P, frontier, gens, width, k, workers):
    X = P[frontier].astype(np.int64)
    per = max(1, _CHUNK_ROWS // max(1, len(frontier)))
    chunks = [gens[i:i + per] for i in range(0, len(gens), per)]

    def run(ch):
        G = P[ch].astype(np.int64)
        prod = G[np.arange(len(ch))[:, None, None], X[None, :, :]]
        return np.unique(lehmer_rank(prod.reshape(-1, X.shape[1])))

    results = _map(run, chunks, workers)
    hit = np.unique(np.concatenate(results)) if results else np.array([], dtype=np.int64)
    new = hit[width[hit] == -1]
    width[new] = k
    return new


def _pull(P, remaining, gen_inv, width, k, workers):
    left = remaining
    per = max(1, _CHUNK_ROWS // max(1, len(remaining)))
    for i in range(0, len(gen_inv), per):
        if len(left) == 0:
            break
        Y = P[left].astype(np.int64)
        G = gen_inv[i:i + per]
        prod = G[np.arange(len(G))[:, None, None], Y[None, :, :]]
        w = width[lehmer_rank(prod.reshape(-1, Y.shape[1]))].reshape(len(G), len(left))
        ok = np.any((w >= 0) & (w < k), axis=0)
        width[left[ok]] = k
        left = left[~ok]
    done = np.setdiff1d(remaining, left, assume_unique=True)
    return done


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def element_widths(n: int, p: int, *, max_n: int | None = None, workers: int = 1):
    """Exact width of every element of A_n; returns (width array by rank, layer sizes).

    Odd permutations carry -2.  Layer k is reached by pushing the frontier
    through all generators, or, once few elements remain, by pulling: y has
    width k iff y*x^-1 has width < k for some generator x.
    """
    _check_cap(n, p, max_n)
    if not (3 <= p <= n):
        raise ValueError(f"need 3 <= p <= n, got p={p}, n={n}")
    P = all_perms(n)
    ci = class_index(n)
    width = np.full(P.shape[0], -2, dtype=np.int8)
    width[ci.even_ranks] = -1
    width[0] = 0  # rank 0 is the identity
    gens = order_p_ranks(n, p)
    inv_rows = np.argsort(P[gens], axis=1).astype(np.int64)
    frontier = np.array([0], dtype=np.int64)
    sizes = [1]
    k = 0
    while True:
        remaining = np.nonzero(width == -1)[0]
        if len(remaining) == 0:
            break
        k += 1
        visited = len(ci.even_ranks) - len(remaining)
        push_cost = len(frontier) * len(gens)
        pull_cost = len(remaining) * len(ci.even_ranks) / visited
        if push_cost <= pull_cost:
            new = _push(P, frontier, gens, width, k, workers)
        else:
            new = _pull(P, remaining, inv_rows, width, k, workers)
        if len(new) == 0:
            raise RuntimeError(f"closure stalled at layer {k}: I_p does not generate A_{n}")
        frontier = new
        sizes.append(int(len(new)))
    return width, sizes


def exact_widths(n: int, p: int, *, max_n: int | None = None, workers: int = 1) -> WidthTable:
    """Per-class exact p-widths for A_n, after checking width is a class function."""
    width, sizes = element_widths(n, p, max_n=max_n, workers=workers)
    ci = class_index(n)
    widths: dict[ClassDescriptor, int] = {}
    violations = []
    for i, d in enumerate(ci.classes):
        ws = np.unique(width[ci.label == i])
        if len(ws) != 1:
            violations.append(f"{d.label()}: widths {ws.tolist()}")
        widths[d] = int(ws.max())
    return WidthTable(n, p, widths, max(widths.values()), sizes, not violations, violations)


# -- class cubes -------------------------------------------------------------

def class_elements(n: int, d: ClassDescriptor) -> np.ndarray:
    """Rows of the A_n-class d, obtained by conjugating a representative by all of A_n."""
    _check_cap(n)
    P = all_perms(n)
    ci = class_index(n)
    rep = np.array(canonical_rep(d.cycle_type), dtype=np.int64)
    if d.split == "minus":
        t = np.arange(n)
        t[[0, 1]] = [1, 0]
        rep = t[rep[t]]  # conjugate by the transposition (1 2)
    H = P[ci.even_ranks].astype(np.int64)
    Hinv = np.argsort(H, axis=1)
    # h^-1 * rep * h (apply h^-1, then rep, then h)
    conj = np.take_along_axis(H, rep[Hinv], axis=1)
    ranks = np.unique(lehmer_rank(conj))
    return ranks


def _product_classes(n: int, left_rank: int, right_members: np.ndarray) -> set[int]:
    """Class labels met by left * C for a fixed element left and a class C."""
    P = all_perms(n)
    ci = class_index(n)
    x = P[left_rank].astype(np.int64)
    Y = P[right_members].astype(np.int64)
    prod = Y[:, x]  # x first, then y
    return set(np.unique(ci.label[lehmer_rank(prod)]).tolist())


def class_cube_covers(n: int, d: ClassDescriptor, *, brute: bool = False) -> bool:
    """Whether [d]^3 = A_n.

    Products of A_n-classes are unions of A_n-classes, so each product set
    is determined by the classes met by rep * C for one representative of
    each class on the left.  ``brute=True`` forms the full element-level
    product sets instead (small n only).
    """
    if d.n != n or not d.is_even:
        raise ValueError(f"{d.label()} is not an A_{n} class")
    ci = class_index(n)
    C = class_elements(n, d)
    if brute:
        return _brute_cube(n, C) == len(ci.even_ranks)
    idx = {i: ci.members(c) for i, c in enumerate(ci.classes)}
    sq: set[int] = set()
    sq |= _product_classes(n, int(C[0]), C)
    cube: set[int] = set()
    for lab in sq:
        cube |= _product_classes(n, int(idx[lab][0]), C)
    return len(cube) == len(ci.classes)


def _brute_cube(n: int, C: np.ndarray) -> int:
    P = all_perms(n)
    Y = P[C].astype(np.int64)
    cur = np.unique(C)
    for _ in range(2):
        X = P[cur].astype(np.int64)
        out = [np.unique(lehmer_rank(y[X])) for y in Y]  # x first, then y
        cur = np.unique(np.concatenate(out))
    return len(cur)


# -- covering predicates -----------------------------------------------------

def is_involution_power_type(d: ClassDescriptor, *, allow_fixed: bool = True) -> bool:
    """Type 2^k with k > 1, optionally followed by fixed points."""
    twos = sum(1 for x in d.cycle_type if x == 2)
    rest = [x for x in d.cycle_type if x != 2]
    if twos <= 1:
        return False
    if allow_fixed:
        return all(x == 1 for x in rest)
    return not rest


def dvir_predicate(n: int, d: ClassDescriptor, *, reading: str = "with-fixed-points") -> bool:
    """Hypothesis of the class-cube covering theorem.

    ``reading`` decides whether types (2^k, 1^m) with fixed points are
    excluded as well ("with-fixed-points", default) or only the pure 2^k
    type ("exact").
    """
    if reading not in ("with-fixed-points", "exact"):
        raise ValueError(f"unknown reading {reading!r}")
    if is_involution_power_type(d, allow_fixed=(reading == "with-fixed-points")):
        return False
    return 2 * d.r >= n - 1


def dvir_witness_k(n: int, p: int) -> int:
    """Smallest k with kp <= n and k(p-1) >= (n-1)/2."""
    for k in range(1, n // p + 1):
        if 2 * k * (p - 1) >= n - 1:
            return k
    raise ValueError(f"no witness k for n={n}, p={p}")


def sharpness_scan(p: int) -> list[int]:
    """Integers n with (4p+3)/3 < n < 2p."""
    return [n for n in range(1, 2 * p) if 3 * n > 4 * p + 3]


def witness_class(n: int, p: int) -> list[ClassDescriptor]:
    k = dvir_witness_k(n, p)
    ct = (p,) * k + (1,) * (n - k * p)
    if is_split_type(ct):
        return [ClassDescriptor(ct, "plus"), ClassDescriptor(ct, "minus")]
    return [ClassDescriptor(ct)]


def table_json(t: WidthTable) -> str:
    return json.dumps(t.to_json(), indent=None, separators=(",", ":"))
