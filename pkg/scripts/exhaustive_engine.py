"""Certify every element of A_n for a grid of (n, p) and tabulate factor counts.

Usage: python scripts/exhaustive_engine.py [--max-n 9] [--primes 3 5 7]
"""

import argparse
import collections
import itertools
import time

from pwidth.engine import decompose, verify_certificate
from pwidth.perm import Permutation


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    args = ap.parse_args()
    print("n,p,elements,factors0,factors1,factors2,factors3,strong,weak,seconds")
    for n in range(5, args.max_n + 1):
        ps = [p for p in args.primes if p <= n]
        hist = {p: collections.Counter() for p in ps}
        strength = {p: collections.Counter() for p in ps}
        t0 = time.perf_counter()
        for img in itertools.permutations(range(1, n + 1)):
            g = Permutation(img)
            if g.to_cycles().parity != "even":
                continue
            for p in ps:
                f = decompose(g, p)
                ok, reasons = verify_certificate(f)
                if not ok:
                    raise SystemExit(f"counterexample n={n} p={p} sigma={g}: {reasons}")
                hist[p][len(f.factors)] += 1
                strength[p][f.strength] += 1
        dt = time.perf_counter() - t0
        for p in ps:
            h = hist[p]
            print(f"{n},{p},{sum(h.values())},{h[0]},{h[1]},{h[2]},{h[3]},"
                  f"{strength[p]['strong']},{strength[p]['weak']},{dt:.1f}")


if __name__ == "__main__":
    main()
