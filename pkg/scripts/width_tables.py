"""Exact p-width tables for small alternating groups, written as CSV and JSON.

Usage: python scripts/width_tables.py [--out results/widths] [--max-n 9]
"""

import argparse
import pathlib
import time

from pwidth import oracle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/widths")
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print("n,p,group_width,class_function,layer_sizes,seconds")
    for p in args.primes:
        for n in range(max(5, p), args.max_n + 1):
            t0 = time.perf_counter()
            t = oracle.exact_widths(n, p, max_n=args.max_n, workers=args.workers)
            dt = time.perf_counter() - t0
            (out / f"A{n}_p{p}.csv").write_text(t.to_csv())
            (out / f"A{n}_p{p}.json").write_text(oracle.table_json(t) + "\n")
            sizes = " ".join(map(str, t.layer_sizes))
            print(f"{n},{p},{t.group_width},{t.class_function},{sizes},{dt:.1f}")


if __name__ == "__main__":
    main()
