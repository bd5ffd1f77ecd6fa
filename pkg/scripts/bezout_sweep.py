"""Sweep random curve pairs and tally intersection totals against m*n.

    python3 scripts/bezout_sweep.py --pairs 500 --max-degree 4 --seed 1
"""

import argparse
import random
import time

import sympy

from curvekit.local import intersect
from curvekit.poly import XYZ, MultiPoly, monomials


def random_form(rng, d):
    terms = {e: rng.randint(-5, 5) for e in monomials(d, 3) if rng.random() < 0.7}
    return MultiPoly(XYZ, terms or {(d, 0, 0): 1})


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rng = random.Random(a.seed)
    done = bad = 0
    t0 = time.perf_counter()
    while done < a.pairs:
        f = random_form(rng, rng.randint(1, a.max_degree))
        g = random_form(rng, rng.randint(1, a.max_degree))
        if f.degree() < 1 or g.degree() < 1:
            continue
        if not sympy.gcd(f.to_sympy().as_expr(), g.to_sympy().as_expr()).is_number:
            continue
        total = sum(r.local_multiplicity * r.point.degree for r in intersect(f, g, seed=done))
        if total != f.degree() * g.degree():
            bad += 1
            print(f"MISMATCH {f} | {g}: {total}")
        done += 1
    print(f"{done} pairs, {bad} mismatches, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
