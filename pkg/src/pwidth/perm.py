"""Permutations of {1..n} with left-to-right composition.

``compose(p, q)`` applies ``p`` first and then ``q``, so that
``(1 2)(1 3) == (1 2 3)``.  Letters are 1-based at every public surface;
the image table is stored 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence


class PermError(ValueError):
    """Invalid permutation input (bad bijection, overlap, degree mismatch)."""


class Permutation:
    __slots__ = ("degree", "images", "_hash")

    def __init__(self, images: Sequence[int], *, _checked: bool = False):
        """Build from a 1-based image list: ``images[i-1]`` is the image of ``i``."""
        if _checked:
            self.images = tuple(images)
        else:
            imgs = tuple(int(x) - 1 for x in images)
            n = len(imgs)
            if sorted(imgs) != list(range(n)):
                raise PermError(f"not a bijection of 1..{n}: {list(images)}")
            self.images = imgs
        self.degree = len(self.images)
        self._hash = None

    @classmethod
    def _raw(cls, images0: Sequence[int]) -> "Permutation":
        return cls(images0, _checked=True)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(range(n))

    def __call__(self, x: int) -> int:
        return self.images[x - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, self.images))
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, n={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def support(self) -> frozenset[int]:
        """mu(p): the letters moved by p."""
        return frozenset(i + 1 for i, x in enumerate(self.images) if i != x)

    def to_cycles(self) -> "CycleDecomposition":
        return to_cycles(self)


def canonical_cycle(letters: Iterable[int]) -> tuple[int, ...]:
    """Rotate a cycle so its minimum letter comes first."""
    c = tuple(letters)
    if len(c) < 2:
        raise PermError(f"a cycle needs at least two letters: {c}")
    if len(set(c)) != len(c):
        raise PermError(f"repeated letter in cycle {c}")
    i = c.index(min(c))
    return c[i:] + c[:i]


@dataclass(frozen=True)
class CycleDecomposition:
    degree: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def support_size(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def parity(self) -> str:
        even_cycles = sum(1 for c in self.cycles if len(c) % 2 == 0)
        return "even" if even_cycles % 2 == 0 else "odd"

    @property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles)) if self.cycles else 1


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    if p.degree != q.degree:
        raise PermError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation._raw([qi[x] for x in p.images])


def compose_all(perms: Sequence[Permutation], n: int) -> Permutation:
    result = Permutation.identity(n)
    for f in perms:
        result = compose(result, f)
    return result


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, x in enumerate(p.images):
        out[x] = i
    return Permutation._raw(out)


def to_cycles(p: Permutation) -> CycleDecomposition:
    imgs = p.images
    seen = [False] * p.degree
    cycles = []
    for i in range(p.degree):
        if seen[i] or imgs[i] == i:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j + 1)
            j = imgs[j]
        cycles.append(tuple(c))
    # scanning upward from the smallest letter yields canonical, sorted cycles
    return CycleDecomposition(p.degree, tuple(cycles))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Permutation of degree n from pairwise-disjoint cycles (1-based letters)."""
    imgs = list(range(n))
    used: set[int] = set()
    for c in cycles:
        c = tuple(c)
        if len(c) < 2:
            if len(c) == 1 and not 1 <= c[0] <= n:
                raise PermError(f"letter {c[0]} out of range 1..{n}")
            continue
        for x in c:
            if not 1 <= x <= n:
                raise PermError(f"letter {x} out of range 1..{n}")
            if x in used:
                raise PermError(f"overlapping cycles at letter {x}")
            used.add(x)
        for a, b in zip(c, c[1:] + c[:1]):
            imgs[a - 1] = b - 1
    return Permutation._raw(imgs)


def stats(p: Permutation) -> tuple[int, int, str, int]:
    d = to_cycles(p)
    return d.support_size, d.cycle_count, d.parity, d.order


def is_even(p: Permutation) -> bool:
    return to_cycles(p).parity == "even"


def is_op_element(p: Permutation, prime: int) -> bool:
    """True iff p is the identity or a product of disjoint prime-cycles."""
    return all(len(c) == prime for c in to_cycles(p).cycles)


def cycle_type(p: Permutation) -> tuple[int, ...]:
    d = to_cycles(p)
    parts = sorted((len(c) for c in d.cycles), reverse=True)
    return tuple(parts) + (1,) * (p.degree - d.support_size)


def partitions(n: int, largest: int | None = None):
    """Integer partitions of n as descending tuples, lexicographically descending."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def embed(p: Permutation, n: int) -> Permutation:
    """The same permutation viewed in degree n >= p.degree."""
    if n < p.degree:
        raise PermError(f"cannot embed degree {p.degree} into {n}")
    return Permutation._raw(list(p.images) + list(range(p.degree, n)))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_TOKEN_RE = re.compile(r"[^,\s]+")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2)(3,4,5)"``; ``""`` or ``"()"`` is the identity.

    Errors carry the 0-based character offset of the offending token.
    """
    pos = 0
    cycles = []
    seen: dict[int, int] = {}
    for m in _CYCLE_RE.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip():
            raise PermError(f"unexpected text {gap.strip()!r} at position {pos + len(gap) - len(gap.lstrip())}")
        pos = m.end()
        letters = []
        for t in _TOKEN_RE.finditer(m.group(1)):
            at = m.start(1) + t.start()
            if not t.group().isdigit():
                raise PermError(f"non-integer letter {t.group()!r} at position {at}")
            x = int(t.group())
            if not 1 <= x <= n:
                raise PermError(f"letter {x} out of range 1..{n} at position {at}")
            if x in seen:
                raise PermError(f"overlapping cycles: letter {x} at position {at} "
                                f"already used at position {seen[x]}")
            seen[x] = at
            letters.append(x)
        if len(letters) == 1:
            raise PermError(f"cycle at position {m.start()} needs at least two letters")
        if letters:
            cycles.append(letters)
    rest = text[pos:]
    if rest.strip():
        raise PermError(f"unexpected text {rest.strip()!r} at position {pos + len(rest) - len(rest.lstrip())}")
    return from_cycles(n, cycles)


def format_cycles(p: Permutation) -> str:
    cycles = to_cycles(p).cycles
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
