"""Estimate the zero-divisor fraction of random elements under two sampling schemes.

Integer coordinates in [-9, 9] land on the zero-divisor hypersurfaces far
more often than a continuous distribution would; rationals with |p| <= 99,
q <= 9 are much closer to the generic behaviour.
"""

import argparse
import random
from fractions import Fraction

from algkit.algebra import is_zero_divisor
from algkit.presentations import load

DEFAULT_ALGEBRAS = ["H(2)", "G(3)", "H(3)", "C(2)", "CC(2)", "H(4)"]


def integer_coords(rng, dim):
    return [Fraction(rng.randint(-9, 9)) for _ in range(dim)]


def rational_coords(rng, dim):
    return [Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(dim)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("algebras", nargs="*", default=DEFAULT_ALGEBRAS)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    print(f"{'algebra':<10} {'integers':>9} {'rationals':>10}")
    for expr in args.algebras:
        A = load(expr).algebra
        fracs = []
        for sampler in (integer_coords, rational_coords):
            rng = random.Random(args.seed)
            hits = sum(is_zero_divisor(A.element(sampler(rng, A.dim))) for _ in range(args.samples))
            fracs.append(hits / args.samples)
        print(f"{expr:<10} {fracs[0]:>9.3f} {fracs[1]:>10.3f}")


if __name__ == "__main__":
    main()
