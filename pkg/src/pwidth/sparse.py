"""Sparse permutations as ``{letter: image}`` dicts over moved letters only.

The constructions work on small local pieces of large permutations, so
they never touch a full image table.  Composition is left to right.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Cycle = tuple[int, ...]


def of_cycles(cycles: Iterable[Sequence[int]]) -> dict[int, int]:
    m: dict[int, int] = {}
    for c in cycles:
        if len(c) < 2:
            continue
        for a, b in zip(c, tuple(c[1:]) + (c[0],)):
            m[a] = b
    return m


def mul(*perms: dict[int, int]) -> dict[int, int]:
    """Left-to-right product of sparse permutations."""
    if not perms:
        return {}
    out = dict(perms[0])
    for q in perms[1:]:
        nxt = {x: q.get(y, y) for x, y in out.items()}
        for x, y in q.items():
            if x not in out:
                nxt[x] = y
        out = nxt
    return {x: y for x, y in out.items() if x != y}


def inv(p: dict[int, int]) -> dict[int, int]:
    return {v: k for k, v in p.items()}


def cycles(p: dict[int, int]) -> list[Cycle]:
    """Canonical cycles (min letter first), sorted by min letter."""
    seen: set[int] = set()
    out = []
    for x in sorted(p):
        if x in seen or p[x] == x:
            continue
        c = [x]
        seen.add(x)
        y = p[x]
        while y != x:
            c.append(y)
            seen.add(y)
            y = p[y]
        out.append(tuple(c))
    return out


def canon(c: Sequence[int]) -> Cycle:
    c = tuple(c)
    if len(c) < 2:
        return ()
    i = c.index(min(c))
    return c[i:] + c[:i]


def rotate_to(c: Sequence[int], x: int) -> Cycle:
    c = tuple(c)
    i = c.index(x)
    return c[i:] + c[:i]


def support(cs: Iterable[Sequence[int]]) -> set[int]:
    s: set[int] = set()
    for c in cs:
        if len(c) >= 2:
            s.update(c)
    return s


def is_single_cycle(p: dict[int, int], length: int) -> bool:
    if len(p) != length:
        return False
    if length == 0:
        return True
    x = next(iter(p))
    y = p[x]
    k = 1
    while y != x:
        y = p[y]
        k += 1
    return k == length


def conj(c: Sequence[int], g: dict[int, int]) -> Cycle:
    """The cycle c conjugated by g (letters relabelled through g)."""
    return tuple(g.get(x, x) for x in c)
