#!/usr/bin/env python3
"""Print the paired-decomposition tables for a range of ranks.

For each rank k and group size M this lists, degree by degree, the
partition labels that occur, the two factor dimensions, and the commutant
dimension certifying that the graded piece is multiplicity free.  With
--signature M,N it switches to the two-block oscillator tables instead and
prints the lowest-type weights in both shift conventions.

Examples:
    python scripts/howe_tables.py --kmax 3 --mmax 2 --degree 5
    python scripts/howe_tables.py --signature 2,1 --kmax 2 --degree 4
"""

import argparse
from fractions import Fraction

from howe_forge.fock import verify_howe, verify_kv


def compact_tables(kmax: int, mmax: int, degree: int) -> int:
    bad = 0
    for k in range(1, kmax + 1):
        for M in range(1, mmax + 1):
            rep = verify_howe(k, M, degree)
            status = "ok" if rep.ok else "FAILED"
            print(f"== k={k} M={M} degree<={degree}: {status}")
            print(f"{'deg':>3}  {'label':<10} {'dim_k':>6} {'dim_m':>6} "
                  f"{'product':>8} {'commutant':>9}")
            for deg in rep.to_json()["degrees"]:
                for term in deg["cauchy"]["terms"]:
                    lam = ",".join(str(x) for x in term["label"]) or "-"
                    print(f"{deg['degree']:>3}  {lam:<10} "
                          f"{term['dim_k']:>6} {term['dim_M']:>6} "
                          f"{term['product']:>8} {deg['commutant']:>9}")
            if not rep.ok:
                bad += 1
            print()
    return bad


def halved(doubled) -> str:
    return "(" + ", ".join(str(Fraction(x, 2)) for x in doubled) + ")"


def two_block_tables(M: int, N: int, kmax: int, degree: int) -> int:
    bad = 0
    for k in range(1, kmax + 1):
        for convention in ("sq", "hf"):
            rep = verify_kv(k, M, N, degree, convention)
            status = "ok" if rep.ok else "FAILED"
            print(f"== k={k} signature ({M},{N}) convention={convention}: "
                  f"{status}")
            print(f"{'bideg':>7}  {'label':<14} {'mn weight':<16} "
                  f"{'u(k) weight':<20}")
            for b in rep.to_json()["bidegrees"]:
                bideg = str(tuple(b["bidegree"]))
                for match in b["matches"]:
                    lab = (tuple(match["label_m"]), tuple(match["label_n"]))
                    mn = halved(match["mn_weight_doubled"])
                    uk = halved(match["uk_weight_doubled"])
                    print(f"{bideg:>7}  {str(lab):<14} {mn:<16} {uk:<20}")
            if not rep.ok:
                bad += 1
            print()
    return bad


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=3)
    ap.add_argument("--mmax", type=int, default=2)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--signature", default="",
                    help="M,N for the two-block tables (default: compact)")
    args = ap.parse_args()

    if args.signature:
        M, N = (int(s) for s in args.signature.split(","))
        bad = two_block_tables(M, N, args.kmax, args.degree)
    else:
        bad = compact_tables(args.kmax, args.mmax, args.degree)
    print("all tables verified" if bad == 0 else f"{bad} tables FAILED")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
