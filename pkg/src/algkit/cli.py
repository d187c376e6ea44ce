"""``alg``: command-line front end.

    alg "H(2)" zd "1+j"
    alg --alg @table.json info --output json
    alg "G(3)" nilposet --dot
    alg examples

Exit status: 0 on success (including negative mathematical answers),
1 on library errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .acceptance import run_all
from .algebra import (
    algebra_from_json,
    algebra_to_json,
    annihilator,
    format_element,
    is_semisimple,
    is_zero_divisor,
    nilradical,
    regular_matrix,
)
from .dsl import FamilyNode, parse_expr, parse_poly
from .errors import AlgkitError
from .formal import FormalPoly
from .linalg import QMatrix
from .nilposet import build_nil_poset, hasse_dot, is_lattice
from .poly import (
    ann_of_poly,
    common_annihilator,
    monic_split_quadratic,
    nilfactor,
    parse_apoly,
    peval,
    poly_divmod,
    poly_is_zero_divisor,
)
from .presentations import (
    PresentedAlgebra,
    canonical_basic_presentation,
    ev,
    iso_check,
    load,
    present_table,
)
from .structure import (
    MAP_TOL,
    exact_signature,
    family_decomposition,
    numeric_decomposition,
    real_factorization_xn,
    zd_structure,
    model_zero_set_dims,
)

SUBCOMMANDS = (
    "info",
    "repr",
    "zd",
    "ann",
    "present",
    "ev",
    "iso-check",
    "wedderburn",
    "zd-geometry",
    "poly",
    "nilposet",
    "examples",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    algebra_expr: str | None
    seed: int = 0
    tol: float = MAP_TOL
    output: str = "text"

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.output not in ("text", "json", "dot"):
            raise UsageError(f"unknown output format {self.output!r}")


def _default_tol() -> float:
    env = os.environ.get("ALGKIT_TOL")
    if env is None:
        return MAP_TOL
    try:
        return float(env)
    except ValueError as exc:
        raise UsageError(f"ALGKIT_TOL={env!r} is not a number") from exc


def load_source(expr: str) -> PresentedAlgebra:
    if expr.startswith("@"):
        text = Path(expr[1:]).read_text()
        return present_table(algebra_from_json(text))
    return load(expr)


def _family_of(expr: str | None):
    if not expr or expr.startswith("@"):
        return None
    node = parse_expr(expr)
    if isinstance(node, FamilyNode) and node.name in ("H", "C", "CC"):
        return node
    return None


def _emit(cfg: CliConfig, text: str, doc=None):
    if cfg.output == "json" and doc is not None:
        print(json.dumps(doc))
    else:
        print(text)


def _matrix_text(rows) -> str:
    cells = [[str(x) for x in r] for r in rows]
    w = max((len(c) for r in cells for c in r), default=1)
    return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


# subcommand handlers


def cmd_info(cfg, P, args):
    A = P.algebra
    semi = is_semisimple(A) if A.commutative else None
    nil = nilradical(A) if A.commutative else None
    if cfg.output == "json":
        extra = {"commutative": A.commutative, "semisimple": semi}
        if nil is not None:
            extra["nilradical"] = [[str(c) for c in v] for v in nil.vectors()]
        print(algebra_to_json(A, **extra))
        return 0
    print(f"dimension: {A.dim}")
    print(f"basis: {', '.join(A.labels)}")
    print(f"unit: {A.labels[A.unit_index]}")
    print(f"commutative: {str(A.commutative).lower()}")
    if A.commutative:
        print(f"semisimple: {str(semi).lower()}")
        print(f"nilradical: {nil}")
    return 0


def _symbolic_matrix(P: PresentedAlgebra, text: str):
    gens = list(P.generator_images)
    formal = parse_poly(text, gens, allow_new=True)
    params = list(formal.gens[len(gens) :])
    if not params:
        return regular_matrix(ev(P, formal.restrict(gens))).tolist(), []
    # group by parameter monomial; each group's coefficient is an algebra element
    A = P.algebra
    groups: dict[tuple, dict] = {}
    for mono, c in formal.terms.items():
        groups.setdefault(mono[len(gens) :], {})[mono[: len(gens)]] = c
    rows = [[FormalPoly(params) for _ in range(A.dim)] for _ in range(A.dim)]
    for pm, part in groups.items():
        M = regular_matrix(ev(P, FormalPoly(gens, part)))
        mono = FormalPoly(params, {pm: 1})
        for r in range(A.dim):
            for s in range(A.dim):
                if M[r, s]:
                    rows[r][s] = rows[r][s] + mono * M[r, s]
    return rows, params


def cmd_repr(cfg, P, args):
    rows, params = _symbolic_matrix(P, args.element)
    doc = {"basis": list(P.algebra.labels), "parameters": params, "matrix": [[str(x) for x in r] for r in rows]}
    _emit(cfg, _matrix_text(rows), doc)
    return 0


def cmd_zd(cfg, P, args):
    a = P.element(args.element)
    zd = is_zero_divisor(a)
    ann = annihilator(a)
    basis = [format_element(b) for b in ann.basis]
    _emit(
        cfg,
        f"zero divisor: {str(zd).lower()}; Ann basis: [{', '.join(basis)}]",
        {"element": format_element(a), "zero_divisor": zd, "annihilator": basis},
    )
    return 0


def cmd_ann(cfg, P, args):
    a = P.element(args.element)
    ann = annihilator(a)
    _emit(
        cfg,
        f"Ann({format_element(a)}) = {ann}\nnildegree: {ann.dim}",
        {"element": format_element(a), "annihilator": [format_element(b) for b in ann.basis], "dim": ann.dim},
    )
    return 0


def _symbol_names(labels) -> list[str] | None:
    ok = all(l.isidentifier() for l in labels)
    return list(labels) if ok and len(set(labels)) == len(labels) else None


def cmd_present(cfg, P, args):
    A = P.algebra
    non_unit = [A.labels[i] for i in range(A.dim) if i != A.unit_index]
    names = _symbol_names(non_unit) or [f"v{i + 1}" for i in range(len(non_unit))]
    pres = canonical_basic_presentation(A, names)
    _emit(cfg, str(pres), {"generators": list(pres.generators), "relations": [str(r) for r in pres.relations]})
    return 0


def cmd_ev(cfg, P, args):
    f = parse_poly(args.poly, list(P.generator_images))
    a = ev(P, f)
    _emit(cfg, format_element(a), {"value": format_element(a), "coords": [str(c) for c in a.coords]})
    return 0


def cmd_iso_check(cfg, P, args):
    Q = load_source(args.to)
    doc = json.loads(Path(args.matrix_file).read_text())
    rows = doc["matrix"] if isinstance(doc, dict) else doc
    psi = QMatrix([[Fraction(str(x)) for x in r] for r in rows])
    ok = iso_check(P.algebra, Q.algebra, psi)
    _emit(cfg, f"isomorphism: {str(ok).lower()}", {"isomorphism": ok})
    return 0


def _decomposition(cfg, P, mode: str):
    fam = _family_of(cfg.algebra_expr)
    if mode == "exact" and fam is None:
        raise UsageError("--exact needs a named semisimple family H(n), C(n) or CC(n)")
    if fam is not None and mode != "numeric":
        return "exact", fam, family_decomposition(fam.name, fam.n)
    return "numeric", None, numeric_decomposition(P.algebra, seed=cfg.seed)


def cmd_wedderburn(cfg, P, args):
    mode = "exact" if args.exact else "numeric" if args.numeric else "auto"
    how, fam, D = _decomposition(cfg, P, mode)
    sig = D.signature
    if how == "exact":
        ex = exact_signature(fam.name, fam.n)
        if (ex.m, ex.k) != (sig.m, sig.k):
            raise AlgkitError(f"CRT count {ex} disagrees with the decomposition {sig}")
    errs = {
        "inverse": D.inverse_error(),
        "unit": D.unit_error(),
        "multiplicativity": D.multiplicativity_error(),
    }
    verified = max(errs.values()) <= cfg.tol
    if cfg.output == "json":
        doc = D.report()
        doc.update({"method": how, "verified": verified})
        if how == "numeric":
            doc["seed"] = cfg.seed
        print(json.dumps(doc))
        return 0
    print(f"signature: {sig} (m={sig.m}, k={sig.k})")
    print(f"method: {how}" + (f" (seed {cfg.seed})" if how == "numeric" else ""))
    if how == "exact" and fam.name in ("H", "C"):
        sign = -1 if fam.name == "H" else 1
        fs = real_factorization_xn(sign, fam.n)
        print(f"x^{fam.n} {'-' if sign < 0 else '+'} 1 = " + "".join(str(f) for f in fs))
    print(
        f"map check (tol {cfg.tol:g}): "
        + ", ".join(f"{k} {v:.1e}" for k, v in errs.items())
        + f" -> {'ok' if verified else 'FAILED'}"
    )
    return 0 if verified else 1


def cmd_zd_geometry(cfg, P, args):
    how, _, D = _decomposition(cfg, P, "auto")
    sig = D.signature
    comps = zd_structure(sig)
    model = model_zero_set_dims(sig)
    if cfg.output == "json":
        print(
            json.dumps(
                {
                    "m": sig.m,
                    "k": sig.k,
                    "components": [{"kind": c.kind, "index": c.index, "dim": c.dim} for c in comps],
                    "model_dims": model,
                }
            )
        )
        return 0
    print(f"signature: {sig}" + (f" (numeric, seed {cfg.seed})" if how == "numeric" else ""))
    print(f"zd set: union of {len(comps)} subspaces of R^{sig.dim}")
    for c, md in zip(comps, model):
        print(f"  {c} (model check {md})")
    if not comps or all(c.dim == 0 for c in comps):
        print("  only the zero element is a zero divisor")
    return 0


def cmd_poly(cfg, P, args):
    A = P.algebra
    f = parse_apoly(P, args.poly)
    op = args.op
    if op in ("div", "eval") and args.second is None:
        raise UsageError(f"poly {op} needs a second argument")
    if op == "div":
        g = parse_apoly(P, args.second)
        q, r = poly_divmod(f, g)
        _emit(cfg, f"q = {q}\nr = {r}", {"q": str(q), "r": str(r)})
    elif op == "eval":
        a = P.element(args.second)
        v = peval(f, a)
        _emit(cfg, format_element(v), {"value": format_element(v)})
    elif op == "zd":
        C = common_annihilator(f)
        zd = poly_is_zero_divisor(f)
        _emit(
            cfg,
            f"zero divisor: {str(zd).lower()}; common annihilator: {C}",
            {"zero_divisor": zd, "annihilator": [format_element(b) for b in C.basis]},
        )
    elif op == "ann":
        res = ann_of_poly(f)
        _emit(
            cfg,
            str(res) if not res.ann.is_trivial() else "Ann(f) = {0}",
            {"factor": format_element(res.factor), "annihilator": [format_element(b) for b in res.ann.basis]},
        )
    elif op == "nilfactor":
        res = nilfactor(f)
        _emit(
            cfg,
            f"factors: [{', '.join(format_element(e) for e in res.factors)}]\ng = {res.g}",
            {"factors": [format_element(e) for e in res.factors], "g": str(res.g)},
        )
    elif op == "split":
        fam = _family_of(cfg.algebra_expr)
        D = family_decomposition(fam.name, fam.n) if fam else None
        if D is None and A.commutative and is_semisimple(A):
            D = numeric_decomposition(A, seed=cfg.seed)
        splits = monic_split_quadratic(f, D, tol=cfg.tol)
        if splits is None:
            _emit(cfg, "no monic split", {"splits": None})
        else:
            _emit(
                cfg,
                "\n".join(str(s) + ("" if s.exact else "  [numeric]") for s in splits),
                {"splits": [str(s) for s in splits]},
            )
    return 0


def cmd_nilposet(cfg, P, args):
    N = build_nil_poset(P.algebra)
    if args.dot or cfg.output == "dot":
        sys.stdout.write(hasse_dot(N))
    elif cfg.output == "json":
        print(
            json.dumps(
                {"nodes": list(N.labels), "covers": [[N.labels[a], N.labels[b]] for a, b in N.covers]}
            )
        )
    else:
        print(f"nodes: {', '.join(N.labels)}")
        print("covers: " + ", ".join(f"{N.labels[a]} < {N.labels[b]}" for a, b in N.covers))
    if args.lattice:
        lat = is_lattice(N)
        if lat:
            print("lattice: true")
        else:
            print(
                f"lattice: false; {lat.pair[0]}, {lat.pair[1]} have "
                f"{'minimal upper' if lat.kind == 'join' else 'maximal lower'} bounds {{{', '.join(lat.bounds)}}}"
            )
    return 0


def cmd_examples(cfg, P, args):
    print(f"seed: {cfg.seed}")
    results = run_all(cfg.seed)
    for r in results:
        print(r.line())
    n_ok = sum(r.passed for r in results)
    print(f"{n_ok}/{len(results)} passed")
    return 0 if n_ok == len(results) else 1


HANDLERS = {
    "info": cmd_info,
    "repr": cmd_repr,
    "zd": cmd_zd,
    "ann": cmd_ann,
    "present": cmd_present,
    "ev": cmd_ev,
    "iso-check": cmd_iso_check,
    "wedderburn": cmd_wedderburn,
    "zd-geometry": cmd_zd_geometry,
    "poly": cmd_poly,
    "nilposet": cmd_nilposet,
    "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alg", dest="alg", default=argparse.SUPPRESS, help="algebra expression or @file.json")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--output", choices=("text", "json", "dot"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="alg", parents=[common], description="finite-dimensional algebra toolkit")
    p.add_argument("--version", action="version", version=f"alg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="dimension, basis, semisimplicity, nilradical")
    for name, helptext in (("repr", "regular matrix of an element"), ("zd", "zero-divisor test"), ("ann", "annihilator")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("element")
    sub.add_parser("present", parents=[common], help="canonical basic presentation")
    s = sub.add_parser("ev", parents=[common], help="evaluate a formal polynomial in the generators")
    s.add_argument("poly")
    s = sub.add_parser("iso-check", parents=[common], help="check a linear map is an isomorphism")
    s.add_argument("matrix_file")
    s.add_argument("--to", required=True, help="target algebra expression")
    s = sub.add_parser("wedderburn", parents=[common], help="R^m x C^k decomposition")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--numeric", action="store_true")
    sub.add_parser("zd-geometry", parents=[common], help="zero-divisor subspaces of R^m x C^k")
    s = sub.add_parser("poly", parents=[common], help="polynomials over the algebra")
    s.add_argument("op", choices=("div", "eval", "zd", "ann", "nilfactor", "split"))
    s.add_argument("poly")
    s.add_argument("second", nargs="?")
    s = sub.add_parser("nilposet", parents=[common], help="nil poset and Hasse diagram")
    s.add_argument("--dot", action="store_true")
    s.add_argument("--lattice", action="store_true")
    sub.add_parser("examples", parents=[common], help="run the built-in worked examples")
    return p


def parse_config(argv: list[str]) -> tuple[CliConfig, argparse.Namespace]:
    positional_alg = None
    if argv and argv[0] not in SUBCOMMANDS and not argv[0].startswith("-"):
        positional_alg, argv = argv[0], argv[1:]
    ns = build_parser().parse_args(argv)
    flag_alg = getattr(ns, "alg", None)
    if positional_alg is not None and flag_alg is not None:
        raise UsageError("give the algebra either positionally or with --alg, not both")
    cfg = CliConfig(
        algebra_expr=positional_alg or flag_alg,
        seed=getattr(ns, "seed", 0),
        tol=getattr(ns, "tol", None) or _default_tol(),
        output=getattr(ns, "output", "text"),
    )
    return cfg, ns


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg, ns = parse_config(argv)
    except UsageError as exc:
        print(f"alg: usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    try:
        P = None
        if ns.command != "examples":
            if cfg.algebra_expr is None:
                raise UsageError(f"{ns.command} needs an algebra (positional or --alg)")
            P = load_source(cfg.algebra_expr)
        return HANDLERS[ns.command](cfg, P, ns)
    except UsageError as exc:
        print(f"alg: usage error: {exc}", file=sys.stderr)
        return 2
    except (AlgkitError, ArithmeticError, ValueError, OSError, KeyError) as exc:
        print(f"alg: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
