"""Class-cube coverage for every class of A_n, against both readings of the
2^k exclusion, plus the prime-power witness classes.

Usage: python scripts/dvir_report.py [--max-n 9]
"""

import argparse

from pwidth import oracle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()
    print("n,class,r,threshold,predicate_with_fixed,predicate_exact,covers")
    broken = {"with-fixed-points": [], "exact": []}
    for n in range(5, args.max_n + 1):
        for d in oracle.an_classes(n):
            if d.cycle_type == (1,) * n:
                continue
            cov = oracle.class_cube_covers(n, d)
            pw = oracle.dvir_predicate(n, d)
            pe = oracle.dvir_predicate(n, d, reading="exact")
            for name, pred in (("with-fixed-points", pw), ("exact", pe)):
                if pred and not cov:
                    broken[name].append(f"{n}:{d.label()}")
            print(f"{n},{d.label()},{d.r},{(n - 1) / 2},{pw},{pe},{cov}")
    print()
    print("involution-power classes (2^k, 1^m), k > 1:")
    for n in range(5, args.max_n + 1):
        for d in oracle.an_classes(n):
            if oracle.is_involution_power_type(d):
                print(f"  n={n} {d.label()} r={d.r} meets_r_bound={2 * d.r >= n - 1} "
                      f"covers={oracle.class_cube_covers(n, d)}")
    for name, bad in broken.items():
        print(f"reading {name}: {'consistent' if not bad else 'violated at ' + ' '.join(bad)}")
    print()
    print("p,n,k,class,covers")
    for p in (3, 5, 7):
        for n in range(max(5, p), args.max_n + 1):
            k = oracle.dvir_witness_k(n, p)
            for d in oracle.witness_class(n, p):
                print(f"{p},{n},{k},{d.label()},{oracle.class_cube_covers(n, d)}")


if __name__ == "__main__":
    main()
