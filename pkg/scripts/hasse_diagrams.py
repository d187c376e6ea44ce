"""Write Graphviz files for the nil posets of a few small unital nil algebras."""

import argparse
from pathlib import Path

from algkit.nilposet import build_nil_poset, hasse_dot, is_lattice
from algkit.presentations import counterexample_algebra, family, tensor

CASES = {
    "G3": lambda: family("G", 3),
    "Xi2": lambda: family("Xi", 2),
    "G3xG3": lambda: tensor(family("G", 3), family("G", 3)),
    "counterexample": counterexample_algebra,
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="hasse", help="output directory")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, make in CASES.items():
        P = build_nil_poset(make().algebra)
        path = out / f"{name}.dot"
        path.write_text(hasse_dot(P, name=name))
        lat = is_lattice(P)
        print(f"{name}: {P.size} nodes, {len(P.covers)} covers, lattice={lat.ok} -> {path}")


if __name__ == "__main__":
    main()
