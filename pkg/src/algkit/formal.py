"""Multivariate polynomials with rational coefficients over named generators.

Monomials are exponent tuples aligned with ``gens``.  The term order is
degree-lexicographic with the first generator most significant; printing
lists terms from the leading one down.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import as_fraction

__all__ = ["FormalPoly", "deglex_key", "basis_key", "monomial_str"]


def deglex_key(mono: tuple) -> tuple:
    return (sum(mono), mono)


def basis_key(mono: tuple) -> tuple:
    """Sort key for basis monomials: by degree, then e1 before e2 within a degree."""
    return (sum(mono), tuple(-e for e in mono))


def monomial_str(gens: Sequence[str], mono: tuple) -> str:
    parts = []
    for g, e in zip(gens, mono):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


class FormalPoly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.gens = tuple(gens)
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                mono = tuple(mono)
                if len(mono) != len(self.gens):
                    raise ValueError("monomial length does not match generators")
                clean[mono] = c
        self.terms = clean

    @classmethod
    def constant(cls, gens: Sequence[str], c) -> FormalPoly:
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def var(cls, gens: Sequence[str], name: str) -> FormalPoly:
        i = list(gens).index(name)
        return cls(gens, {tuple(int(k == i) for k in range(len(gens))): 1})

    def _coerce(self, other) -> FormalPoly:
        if isinstance(other, FormalPoly):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        return FormalPoly.constant(self.gens, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return FormalPoly(self.gens, terms)

    __radd__ = __add__

    def __neg__(self):
        return FormalPoly(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return FormalPoly(self.gens, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of formal polynomials")
        result = FormalPoly.constant(self.gens, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, FormalPoly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == FormalPoly.constant(self.gens, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = [any(m[i] for m in self.terms) for i in range(len(self.gens))]
        return [g for g, u in zip(self.gens, used) if u]

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: deglex_key(mc[0]), reverse=True)

    def leading(self) -> tuple[tuple, Fraction]:
        return max(self.terms.items(), key=lambda mc: deglex_key(mc[0]))

    def embed(self, gens: Sequence[str], rename: Mapping[str, str] | None = None) -> FormalPoly:
        """Re-express over a larger generator list (optionally renaming first)."""
        rename = rename or {}
        gens = tuple(gens)
        pos = [gens.index(rename.get(g, g)) for g in self.gens]
        terms = {}
        for m, c in self.terms.items():
            new = [0] * len(gens)
            for i, e in enumerate(m):
                new[pos[i]] += e
            terms[tuple(new)] = c
        return FormalPoly(gens, terms)

    def restrict(self, gens: Sequence[str]) -> FormalPoly:
        """Drop generators that do not occur; the kept ones must cover every variable used."""
        gens = tuple(gens)
        pos = [self.gens.index(g) for g in gens]
        missing = set(self.variables()) - set(gens)
        if missing:
            raise ValueError(f"polynomial still uses {sorted(missing)}")
        return FormalPoly(gens, {tuple(m[p] for p in pos): c for m, c in self.terms.items()})

    def evaluate(self, values: Mapping[str, object], one, powcache: dict | None = None):
        """Substitute ``values`` for the generators; ``one`` supplies the constant 1."""
        cache = {} if powcache is None else powcache

        def power(name, e):
            key = (name, e)
            if key not in cache:
                cache[key] = one if e == 0 else power(name, e - 1) * values[name]
            return cache[key]

        total = one * 0
        for m, c in self.sorted_terms():
            t = one
            for g, e in zip(self.gens, m):
                if e:
                    t = t * power(g, e)
            total = total + t * c
        return total

    def subs(self, name: str, poly: FormalPoly) -> FormalPoly:
        poly = self._coerce(poly)
        i = self.gens.index(name)
        one = FormalPoly.constant(self.gens, 1)
        result = FormalPoly(self.gens)
        powers = [one]
        for m, c in self.terms.items():
            e = m[i]
            while len(powers) <= e:
                powers.append(powers[-1] * poly)
            rest = list(m)
            rest[i] = 0
            result = result + FormalPoly(self.gens, {tuple(rest): c}) * powers[e]
        return result

    def univariate_coeffs(self, name: str) -> list[Fraction]:
        """Coefficients low-to-high when only ``name`` occurs."""
        i = self.gens.index(name)
        out = [Fraction(0)] * (self.degree() + 1 if self.terms else 0)
        for m, c in self.terms.items():
            if any(e for k, e in enumerate(m) if k != i):
                raise ValueError(f"polynomial is not univariate in {name}")
            out[m[i]] += c
        return out

    def map_coeffs(self, f: Callable[[Fraction], Fraction]) -> FormalPoly:
        return FormalPoly(self.gens, {m: f(c) for m, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            mono = monomial_str(self.gens, m)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"FormalPoly({self})"


def from_terms(gens: Sequence[str], items: Iterable[tuple[tuple, object]]) -> FormalPoly:
    terms: dict = {}
    for m, c in items:
        terms[tuple(m)] = terms.get(tuple(m), 0) + as_fraction(c)
    return FormalPoly(gens, terms)
