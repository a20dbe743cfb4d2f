"""Smallest free-letter total observed per construction case, over cycle lengths up to a bound.

Usage: python scripts/free_letters.py [--max-len 200]
"""

import argparse
import collections

from pwidth.engine import count_free_letters
from pwidth.perm import from_cycles
from pwidth.pieces import case_a, case_b, decompose_a, decompose_b_pair


def total_free(piece, n):
    return sum(count_free_letters([from_cycles(n, s) for s in piece.slots if s]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-len", type=int, default=200)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7, 11, 13])
    args = ap.parse_args()
    print("kind,p,case,min_free,at")
    for p in args.primes:
        best = collections.OrderedDict()
        for s in range(p, args.max_len + 1, 2):
            got = total_free(decompose_a(tuple(range(1, s + 1)), p), s)
            c = case_a(s, p)
            if c not in best or got < best[c][0]:
                best[c] = (got, s)
        for c, (got, s) in sorted(best.items()):
            print(f"odd,{p},{c},{got},{s}")
        best = {}
        for l1 in range(p + 1 + (p + 1) % 2, args.max_len + 1, 2):
            for l2 in range(2, l1 + 1, 2):
                pc = decompose_b_pair(tuple(range(1, l1 + 1)), tuple(range(l1 + 1, l1 + l2 + 1)), p)
                got = total_free(pc, l1 + l2)
                c = case_b(l1, l2, p)
                if c not in best or got < best[c][0]:
                    best[c] = (got, f"{l1}+{l2}")
        for c, (got, at) in sorted(best.items()):
            print(f"pair,{p},{c},{got},{at}")


if __name__ == "__main__":
    main()
