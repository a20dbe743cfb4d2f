"""Top-level factorization of an even permutation into at most three order-p elements."""

from __future__ import annotations

import json

import numpy as np
from dataclasses import dataclass, field

from . import sparse as sp
from .cdpart import decompose_large_cd, decompose_small_cd, fits
from .perm import (Permutation, PermError, compose_all, format_cycles, from_cycles,
                   is_op_element, parse_cycles, to_cycles)
from .pieces import Cycle, Piece, decompose_a, decompose_b_pair


@dataclass(frozen=True)
class ClassifiedCycles:
    a_cycles: tuple[Cycle, ...]
    c_cycles: tuple[Cycle, ...]
    b_cycles: tuple[Cycle, ...]
    d_cycles: tuple[Cycle, ...]

    def b_pairs(self) -> list[tuple[Cycle, Cycle]]:
        b = self.b_cycles
        return [(b[i], b[i + 1]) for i in range(0, len(b), 2)]


@dataclass(frozen=True)
class Factorization:
    target: Permutation
    prime: int
    factors: tuple[Permutation, ...]
    strength: str
    free_letter_counts: tuple[int, ...]
    trace: tuple[str, ...] = field(default=())

    def to_json(self, verified: bool | None = None) -> dict:
        if verified is None:
            verified = verify_certificate(self)[0]
        return {
            "n": self.target.degree,
            "p": self.prime,
            "sigma": format_cycles(self.target),
            "factors": [format_cycles(f) for f in self.factors],
            "strong": self.strength == "strong",
            "free_letters": list(self.free_letter_counts),
            "trace": list(self.trace),
            "verified": bool(verified),
        }


def _check_prime(p: int) -> None:
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise PermError(f"p must be an odd prime, got {p}")


def classify(sigma: Permutation, p: int) -> ClassifiedCycles:
    """Sort the cycles of sigma into long/short odd and long/short even lists."""
    d = to_cycles(sigma)
    if d.parity != "even":
        raise PermError("sigma must be an even permutation")
    return _classify(d.cycles, p)


def _classify(cycles, p: int) -> ClassifiedCycles:
    a = [c for c in cycles if len(c) % 2 and len(c) >= p]
    c_ = [c for c in cycles if len(c) % 2 and len(c) < p]
    b = [c for c in cycles if len(c) % 2 == 0 and len(c) > p]
    short = [c for c in cycles if len(c) % 2 == 0 and len(c) < p]
    if len(b) % 2:
        pick = min(short, key=lambda c: (-len(c), c[0]))
        b.append(pick)
        short.remove(pick)
    b.sort(key=lambda c: (-len(c), c[0]))
    return ClassifiedCycles(tuple(a), tuple(c_), tuple(b), tuple(short))


def count_free_letters(factors) -> tuple[int, ...]:
    """Per factor, the number of its moved letters moved by no other factor."""
    sups = [f.support() if isinstance(f, Permutation) else frozenset(sp.support(f)) for f in factors]
    out = []
    for i, s in enumerate(sups):
        others = set().union(*(t for j, t in enumerate(sups) if j != i)) if len(sups) > 1 else set()
        out.append(len(s - others))
    return tuple(out)


def _finish(sigma: Permutation, p: int, slots: list[list[Cycle]], trace: list[str],
            mu: set[int] | None = None) -> Factorization:
    n = sigma.degree
    slots = [s for s in slots if s]
    factors = tuple(from_cycles(n, s) for s in slots)
    sups = [sp.support(s) for s in slots]
    if mu is None:
        mu = set(sigma.support())
    strong = all(s <= mu for s in sups)
    free = []
    for i, s in enumerate(sups):
        others = set().union(*(t for j, t in enumerate(sups) if j != i))
        free.append(len(s - others))
    return Factorization(sigma, p, factors, "strong" if strong else "weak",
                         tuple(free), tuple(trace))


def decompose(sigma: Permutation, p: int, n: int | None = None) -> Factorization:
    """Write sigma in A_n as a product of at most three elements of order p (or 1)."""
    _check_prime(p)
    if n is not None and n != sigma.degree:
        raise PermError(f"degree mismatch: sigma has degree {sigma.degree}, n={n}")
    n = sigma.degree
    if n < p:
        raise PermError(f"n={n} is smaller than p={p}")
    d = to_cycles(sigma)
    if d.parity != "even":
        raise PermError("sigma must be an even permutation")
    if not d.cycles:
        return _finish(sigma, p, [], ["identity"])
    if all(len(c) == p for c in d.cycles):
        return _finish(sigma, p, [list(d.cycles)], ["order-p"])
    cl = _classify(d.cycles, p)
    a_list = list(cl.a_cycles)
    pairs = cl.b_pairs()
    g = list(cl.c_cycles) + list(cl.d_cycles)
    pieces: list[Piece] = []
    if g:
        if not fits(g, p):
            pieces.append(decompose_large_cd(g, p))
        elif sum(map(len, g)) >= p or (not a_list and not pairs):
            fixed = sorted(set(range(1, n + 1)) - sp.support(d.cycles))
            pieces.append(decompose_small_cd(g, p, fixed=fixed))
        else:
            if a_list:
                h = [max(a_list, key=lambda c: (len(c), -c[0]))]
                a_list.remove(h[0])
            else:
                pair = max(pairs, key=lambda pr: (len(pr[0]), len(pr[1])))
                pairs.remove(pair)
                h = list(pair)
            pieces.append(decompose_small_cd(g, p, h=h))
    for a in a_list:
        pieces.append(decompose_a(a, p))
    for b1, b2 in pairs:
        pieces.append(decompose_b_pair(b1, b2, p))
    slots: list[list[Cycle]] = [[], [], []]
    trace: list[str] = []
    for pc in pieces:
        for i in range(3):
            slots[i].extend(pc.slots[i])
        trace.extend(pc.trace)
    return _finish(sigma, p, slots, trace, sp.support(d.cycles))


def verify_certificate(f: Factorization) -> tuple[bool, list[str]]:
    """Independent recheck of a factorization; returns (ok, reasons).

    Works on numpy image arrays.  A factor is an order-p element (or 1)
    iff its p-th power is the identity, since p is prime.
    """
    reasons = []
    n = f.target.degree
    ident = np.arange(n)
    if len(f.factors) > 3:
        reasons.append(f"{len(f.factors)} factors, at most 3 allowed")
    arrs = []
    for i, x in enumerate(f.factors):
        if x.degree != n:
            reasons.append(f"factor {i + 1} has degree {x.degree}, expected {n}")
            continue
        a = np.asarray(x.images)
        power = ident
        for _ in range(f.prime):
            power = a[power]
        if not np.array_equal(power, ident):
            reasons.append(f"factor {i + 1} is not a product of disjoint {f.prime}-cycles")
        arrs.append(a)
    if not reasons:
        prod = ident
        for a in arrs:
            prod = a[prod]  # apply the earlier factors first
        if not np.array_equal(prod, np.asarray(f.target.images)):
            reasons.append("product of factors differs from the target")
    target_fixed = np.asarray(f.target.images) == ident
    moved = [a != ident for a in arrs]
    if (f.strength == "strong") != all(not np.any(m & target_fixed) for m in moved):
        reasons.append(f"strength flag {f.strength!r} inconsistent with supports")
    if moved:
        cover = np.sum(moved, axis=0)
        free = tuple(int(np.sum(m & (cover == 1))) for m in moved)
    else:
        free = ()
    if len(arrs) == len(f.factors) and tuple(f.free_letter_counts) != free:
        reasons.append("free-letter counts do not match a recount")
    return (not reasons), reasons


def certificate_from_json(data: dict | str) -> Factorization:
    if isinstance(data, str):
        data = json.loads(data)
    n, p = int(data["n"]), int(data["p"])
    sigma = parse_cycles(data["sigma"], n)
    factors = tuple(parse_cycles(s, n) for s in data["factors"])
    return Factorization(sigma, p, factors, "strong" if data.get("strong") else "weak",
                         tuple(data.get("free_letters", ())), tuple(data.get("trace", ())))
