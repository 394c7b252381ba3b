"""Finitely presented commutative algebras Q[x_1..x_n]/I.

An :class:`FPAlgebra` fixes a reduced Groebner basis of I in grevlex order, so
every element has a unique normal form and equality is a comparison of
normal forms.  Ideal membership, radical membership (Rabinowitsch) and the
standard-monomial basis of each degree slice are built on top of that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Sequence

from .exactpoly import (
    Monomial,
    PolyContextError,
    Polynomial,
    format_polynomial,
    grevlex_key,
    monomial_divides,
    monomial_lcm,
)

__all__ = [
    "AlgebraElement",
    "FPAlgebra",
    "InconsistentPresentation",
    "Presentation",
    "groebner_basis",
    "ideal_membership",
    "monomial_basis",
    "normal_form",
    "radical_membership",
    "reduced_groebner",
]


class InconsistentPresentation(ValueError):
    """The relations generate the unit ideal, so the variety is empty."""


# -- Buchberger on raw term dictionaries ----------------------------------

Terms = dict[Monomial, Fraction]


def _lm(f: Terms) -> Monomial:
    return max(f, key=grevlex_key)


def _monic(f: Terms) -> Terms:
    c = f[_lm(f)]
    if c == 1:
        return f
    return {m: v / c for m, v in f.items()}


def _reduce(f: Terms, basis: Sequence[tuple[Monomial, Terms]]) -> Terms:
    """Full reduction of f by monic basis elements given as (lm, terms)."""
    f = dict(f)
    rem: Terms = {}
    while f:
        m = max(f, key=grevlex_key)
        c = f[m]
        for g_lm, g in basis:
            if monomial_divides(g_lm, m):
                q = tuple(a - b for a, b in zip(m, g_lm))
                for gm, gc in g.items():
                    mm = tuple(a + b for a, b in zip(q, gm))
                    v = f.get(mm, 0) - c * gc
                    if v:
                        f[mm] = v
                    else:
                        del f[mm]
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _spoly(f: Terms, f_lm: Monomial, g: Terms, g_lm: Monomial) -> Terms:
    lcm = monomial_lcm(f_lm, g_lm)
    qf = tuple(a - b for a, b in zip(lcm, f_lm))
    qg = tuple(a - b for a, b in zip(lcm, g_lm))
    out: Terms = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, qf))] = c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _buchberger(gens: Iterable[Terms]) -> list[Terms]:
    """Reduced monic Groebner basis (grevlex), sorted by decreasing leading monomial."""
    G: list[Terms] = []
    lms: list[Monomial] = []
    for f in gens:
        if not f:
            continue
        r = _reduce(f, list(zip(lms, G)))
        if r:
            r = _monic(r)
            G.append(r)
            lms.append(_lm(r))
    for m in lms:
        if not any(m):
            return [{m: Fraction(1)}]

    pairs = set(combinations(range(len(G)), 2))
    while pairs:
        i, j = min(pairs, key=lambda p: (grevlex_key(monomial_lcm(lms[p[0]], lms[p[1]])), p))
        pairs.discard((i, j))
        lcm = monomial_lcm(lms[i], lms[j])
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        # chain criterion
        if any(
            k != i and k != j
            and monomial_divides(lms[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        s = _spoly(G[i], lms[i], G[j], lms[j])
        r = _reduce(s, list(zip(lms, G)))
        if not r:
            continue
        r = _monic(r)
        r_lm = _lm(r)
        if not any(r_lm):
            return [{r_lm: Fraction(1)}]
        k = len(G)
        G.append(r)
        lms.append(r_lm)
        pairs.update((p, k) for p in range(k))

    # minimize
    keep = [
        i for i in range(len(G))
        if not any(
            j != i and monomial_divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i)
            for j in range(len(G))
        )
    ]
    G = [G[i] for i in keep]
    lms = [lms[i] for i in keep]
    # inter-reduce
    out = []
    for i, g in enumerate(G):
        others = [(lms[j], G[j]) for j in range(len(G)) if j != i]
        tail = {m: c for m, c in g.items() if m != lms[i]}
        r = _reduce(tail, others)
        r[lms[i]] = Fraction(1)
        out.append(r)
    out.sort(key=lambda t: grevlex_key(_lm(t)), reverse=True)
    return out


_GB_CACHE: dict[tuple, tuple[Polynomial, ...]] = {}


def reduced_groebner(polys: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis of the ideal generated by ``polys`` (cached)."""
    if not polys:
        return ()
    varnames = polys[0].varnames
    for p in polys:
        if p.varnames != varnames:
            raise PolyContextError("generators over different variable lists")
    key = (varnames, tuple(polys))
    if key not in _GB_CACHE:
        basis = _buchberger(p.terms for p in polys)
        _GB_CACHE[key] = tuple(Polynomial._raw(varnames, g) for g in basis)
    return _GB_CACHE[key]


# -- presentations and algebras -------------------------------------------


@dataclass(frozen=True)
class Presentation:
    varnames: tuple[str, ...]
    relations: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "varnames", tuple(self.varnames))
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            if r.varnames != self.varnames:
                raise PolyContextError(f"relation {r} is not over {self.varnames}")
            if r.is_zero():
                raise ValueError("relations must be nonzero")


class FPAlgebra:
    """Q[varnames]/(relations) with a fixed reduced Groebner basis."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.varnames = presentation.varnames
        self.relations = presentation.relations
        self.groebner = reduced_groebner(list(self.relations))
        if any(g.is_constant() for g in self.groebner):
            raise InconsistentPresentation(
                f"relations {[str(r) for r in self.relations]} generate the unit ideal"
            )
        self._basis = [(g.leading_monomial(), g.terms) for g in self.groebner]
        self.leading_monomials = tuple(lm for lm, _ in self._basis)

    @classmethod
    def from_relations(cls, varnames: Sequence[str], relations: Sequence[Polynomial] = ()):
        return cls(Presentation(tuple(varnames), tuple(relations)))

    @property
    def nvars(self) -> int:
        return len(self.varnames)

    def __eq__(self, other):
        if not isinstance(other, FPAlgebra):
            return NotImplemented
        return self is other or (self.varnames == other.varnames and self.groebner == other.groebner)

    def __hash__(self):
        return hash((self.varnames, self.groebner))

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"FPAlgebra(Q[{', '.join(self.varnames)}]/({rels}))"

    # -- element construction --------------------------------------------

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.varnames != self.varnames:
            raise PolyContextError(f"{f.varnames} is not the variable list {self.varnames}")
        if not self._basis or f.is_zero():
            return f
        return Polynomial._raw(self.varnames, _reduce(f.terms, self._basis))

    def __call__(self, value) -> "AlgebraElement":
        return self.element(value)

    def element(self, value) -> "AlgebraElement":
        if isinstance(value, AlgebraElement):
            if value.algebra != self:
                raise PolyContextError("element belongs to a different algebra")
            return value
        if isinstance(value, Polynomial):
            return AlgebraElement(self, self.reduce(value))
        if isinstance(value, str):
            return AlgebraElement(self, self.reduce(Polynomial.variable(self.varnames, value)))
        if isinstance(value, (int, Rational)):
            return AlgebraElement(self, Polynomial.constant(self.varnames, value))
        raise TypeError(f"cannot make an algebra element from {value!r}")

    def gen(self, name: str) -> "AlgebraElement":
        return self.element(name)

    def gens(self) -> tuple["AlgebraElement", ...]:
        return tuple(self.gen(v) for v in self.varnames)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, Polynomial.zero(self.varnames))

    def one(self) -> "AlgebraElement":
        return self.element(1)

    def is_standard(self, mono: Monomial) -> bool:
        return not any(monomial_divides(lm, mono) for lm in self.leading_monomials)

    def standard_monomials(self, d: int) -> list[Monomial]:
        """Standard monomials of total degree <= d: by degree, then decreasing grevlex."""
        out = []
        for k in range(d + 1):
            layer = [m for m in _exponents(self.nvars, k) if self.is_standard(m)]
            layer.sort(key=grevlex_key, reverse=True)
            out.extend(layer)
        return out


def _exponents(n: int, k: int):
    if n == 0:
        if k == 0:
            yield ()
        return
    if n == 1:
        yield (k,)
        return
    for e in range(k, -1, -1):
        for rest in _exponents(n - 1, k - e):
            yield (e,) + rest


class AlgebraElement:
    """An element of an FPAlgebra, always stored by its normal form."""

    __slots__ = ("algebra", "rep")

    def __init__(self, algebra: FPAlgebra, rep: Polynomial):
        self.algebra = algebra
        self.rep = rep

    def _other(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            if other.algebra != self.algebra:
                raise PolyContextError("elements of different algebras")
            return other
        if isinstance(other, (Polynomial, int, Rational)):
            return self.algebra.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, self.rep - other.rep)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, other.rep - self.rep)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.rep)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return AlgebraElement(self.algebra, self.rep * other)
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.algebra.element(self.rep * other.rep)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return AlgebraElement(self.algebra, self.rep / other)
        return NotImplemented

    def __pow__(self, k: int):
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra == other.algebra and self.rep == other.rep
        if isinstance(other, (Polynomial, int, Rational)):
            return self == self.algebra.element(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def degree(self) -> int:
        return self.rep.total_degree()

    def evaluate(self, point: Sequence) -> Fraction:
        return self.rep.evaluate(point)

    def __str__(self):
        return format_polynomial(self.rep)

    def __repr__(self):
        return f"AlgebraElement({self})"


def groebner_basis(p: Presentation) -> FPAlgebra:
    return FPAlgebra(p)


def normal_form(f: Polynomial, A: FPAlgebra) -> AlgebraElement:
    return A.element(f)


def _lift(x, A: FPAlgebra) -> Polynomial:
    if isinstance(x, AlgebraElement):
        return A.element(x).rep
    if isinstance(x, Polynomial):
        if x.varnames != A.varnames:
            raise PolyContextError("polynomial over the wrong variables")
        return x
    return A.element(x).rep


def ideal_membership(f, A: FPAlgebra, extra: Sequence = ()) -> bool:
    """Decide f in I + (extra)."""
    fp = _lift(f, A)
    gens = list(A.groebner) + [_lift(e, A) for e in extra]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return fp.is_zero()
    G = reduced_groebner(gens)
    basis = [(g.leading_monomial(), g.terms) for g in G]
    return not _reduce(fp.terms, basis)


def radical_membership(f, A: FPAlgebra, extra: Sequence = ()) -> bool:
    """Decide whether f vanishes on V(I + (extra)) via 1 in I + (extra) + (1 - w*f)."""
    fp = _lift(f, A)
    w = "_w"
    while w in A.varnames:
        w += "_"
    big = A.varnames + (w,)
    gens = [g.embed(big) for g in A.groebner] + [_lift(e, A).embed(big) for e in extra]
    gens = [g for g in gens if not g.is_zero()]
    gens.append(1 - Polynomial.variable(big, w) * fp.embed(big))
    G = reduced_groebner(gens)
    return len(G) == 1 and G[0].is_constant()


def monomial_basis(A: FPAlgebra, d: int) -> list[AlgebraElement]:
    return [
        AlgebraElement(A, Polynomial._raw(A.varnames, {m: Fraction(1)}))
        for m in A.standard_monomials(d)
    ]
