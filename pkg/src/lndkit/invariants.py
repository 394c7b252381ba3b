"""Degree-truncated kernels, Makar-Limanov and Derksen invariants.

Everything is linear algebra on the degree-<=d slice of an FPAlgebra, whose
basis is the set of standard monomials of degree <= d.  Subspaces are kept in
reduced row echelon form with the columns ordered by decreasing grevlex, so
the pivot of each basis vector is its leading monomial; equal subspaces have
identical data.

The results bound the true invariants from one side only: a finite sample of
derivations can only over-approximate an intersection of kernels, and a
degree cut-off can only under-approximate a generated subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Mapping, Sequence

from .errors import ArgumentError
from .exactpoly import Monomial, Polynomial, grevlex_key
from .flexgeo import Point
from .fpalgebra import AlgebraElement, FPAlgebra
from .linalg import determinant, nullspace, rref, solve, transpose
from .lnd import Derivation, apply, certify, exp_flow


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    algebra: FPAlgebra
    degree: int
    ambient: tuple[Monomial, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_vectors(cls, algebra: FPAlgebra, degree: int, vectors) -> "SubspaceBasis":
        ambient = _slice(algebra, degree)
        rows, _ = rref(list(vectors), len(ambient))
        return cls(algebra, degree, ambient, tuple(tuple(r) for r in rows))

    @classmethod
    def from_elements(cls, algebra: FPAlgebra, degree: int, elements) -> "SubspaceBasis":
        ambient = _slice(algebra, degree)
        index = {m: i for i, m in enumerate(ambient)}
        vecs = []
        for f in elements:
            v = _coords(algebra.element(f), index)
            if v is None:
                raise ArgumentError(f"{f} has degree above {degree}")
            vecs.append(v)
        return cls.from_vectors(algebra, degree, vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def ambient_elements(self) -> list[AlgebraElement]:
        return [self._element(m) for m in self.ambient]

    def _element(self, m: Monomial) -> AlgebraElement:
        return AlgebraElement(self.algebra, Polynomial._raw(self.algebra.varnames, {m: Fraction(1)}))

    def elements(self) -> list[AlgebraElement]:
        out = []
        for row in self.basis:
            terms = {m: c for m, c in zip(self.ambient, row) if c}
            out.append(AlgebraElement(self.algebra, Polynomial._raw(self.algebra.varnames, terms)))
        return out

    def coordinates(self, f) -> tuple[Fraction, ...] | None:
        return _coords(self.algebra.element(f), {m: i for i, m in enumerate(self.ambient)})

    def contains(self, f) -> bool:
        v = self.coordinates(f)
        if v is None:
            return False
        return len(rref(list(self.basis) + [v], len(self.ambient))[0]) == self.dim

    def is_full(self) -> bool:
        return self.dim == len(self.ambient)

    def issubspace(self, other: "SubspaceBasis") -> bool:
        self._compatible(other)
        return len(rref(list(self.basis) + list(other.basis), len(self.ambient))[0]) == other.dim

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._compatible(other)
        if not self.basis or not other.basis:
            return SubspaceBasis(self.algebra, self.degree, self.ambient, ())
        # a*U == b*W  <=>  [U^T | -W^T] (a, b) = 0
        cols = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        kernel = nullspace(transpose(cols), len(cols))
        k = self.dim
        vecs = [
            [sum((a * r[i] for a, r in zip(v[:k], self.basis)), Fraction(0)) for i in range(len(self.ambient))]
            for v in kernel
        ]
        return SubspaceBasis.from_vectors(self.algebra, self.degree, vecs)

    def _compatible(self, other: "SubspaceBasis") -> None:
        if other.algebra != self.algebra or other.degree != self.degree:
            raise ArgumentError("subspaces of different slices")

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (self.algebra == other.algebra and self.degree == other.degree
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.degree, self.basis))

    def __str__(self):
        return "span{" + ", ".join(str(e) for e in self.elements()) + "}"


def _slice(A: FPAlgebra, d: int) -> tuple[Monomial, ...]:
    return tuple(sorted(A.standard_monomials(d), key=grevlex_key, reverse=True))


def _coords(f: AlgebraElement, index: Mapping[Monomial, int]) -> tuple[Fraction, ...] | None:
    v = [Fraction(0)] * len(index)
    for m, c in f.rep.terms.items():
        i = index.get(m)
        if i is None:
            return None
        v[i] = c
    return tuple(v)


@dataclass(frozen=True)
class GeneratorFamily:
    """Named algebra elements, optionally each with a derivation that kills it."""

    names: tuple[str, ...]
    elements: tuple[AlgebraElement, ...]
    kernel_witness: Mapping[str, Derivation] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.names) != len(self.elements):
            raise ArgumentError("one name per element")
        for name, delta in self.kernel_witness.items():
            f = self.elements[self.names.index(name)]
            if not apply(delta, f).is_zero():
                raise ArgumentError(f"witness for {name} does not kill it")

    @classmethod
    def of(cls, named: Mapping[str, AlgebraElement], kernel_witness=None) -> "GeneratorFamily":
        return cls(tuple(named), tuple(named.values()), dict(kernel_witness or {}))

    def __getitem__(self, name: str) -> AlgebraElement:
        return self.elements[self.names.index(name)]

    def __len__(self):
        return len(self.elements)


def _algebra_of(ds: Sequence[Derivation]) -> FPAlgebra:
    if not ds:
        raise ArgumentError("at least one derivation is required")
    A = ds[0].algebra
    if any(d.algebra != A for d in ds):
        raise ArgumentError("derivations on different algebras")
    return A


def kernel_basis(delta: Derivation, d: int) -> SubspaceBasis:
    """Kernel of delta restricted to the degree-<=d slice."""
    A = delta.algebra
    ambient = _slice(A, d)
    images = [apply(delta, AlgebraElement(A, Polynomial._raw(A.varnames, {m: Fraction(1)})))
              for m in ambient]
    targets = sorted({m for im in images for m in im.rep.terms}, key=grevlex_key, reverse=True)
    row_of = {m: i for i, m in enumerate(targets)}
    matrix = [[Fraction(0)] * len(ambient) for _ in targets]
    for j, im in enumerate(images):
        for m, c in im.rep.terms.items():
            matrix[row_of[m]][j] = c
    return SubspaceBasis.from_vectors(A, d, nullspace(matrix, len(ambient)))


def ml_truncated(ds: Sequence[Derivation], d: int) -> SubspaceBasis:
    """Intersection of the degree-<=d kernels of the given locally nilpotent derivations."""
    _algebra_of(ds)
    for delta in ds:
        certify(delta)
    result = kernel_basis(ds[0], d)
    for delta in ds[1:]:
        result = result.intersect(kernel_basis(delta, d))
    return result


def _closure(A: FPAlgebra, d: int, seeds: Sequence[AlgebraElement]) -> SubspaceBasis:
    """Degree-<=d part of the span of all products of seeds (products above d are dropped)."""
    seeds = [s for s in seeds if s.degree() <= d]
    span = SubspaceBasis.from_elements(A, d, [A.one(), *seeds])
    gens = [g for g in span.elements() if g.degree() > 0]
    while True:
        products = [b * g for b in span.elements() for g in gens]
        products = [p for p in products if p.degree() <= d]
        bigger = SubspaceBasis.from_elements(A, d, [*span.elements(), *products])
        if bigger.dim == span.dim:
            return span
        span = bigger


def derksen_truncated(ds: Sequence[Derivation], d: int) -> SubspaceBasis:
    """Degree-<=d slice of the subalgebra generated by the degree-<=d kernels."""
    A = _algebra_of(ds)
    for delta in ds:
        certify(delta)
    seeds = [e for delta in ds for e in kernel_basis(delta, d).elements()]
    return _closure(A, d, seeds)


def subalgebra_membership(f, gens, d: int) -> bool:
    """Is f a linear combination of products of ``gens`` of degree <= d?"""
    elements = list(gens.elements if isinstance(gens, GeneratorFamily) else gens)
    if not elements:
        raise ArgumentError("empty generator family")
    A = elements[0].algebra
    f = A.element(f)
    if f.degree() > d:
        raise ArgumentError(f"deg f = {f.degree()} exceeds d = {d}")
    return _closure(A, d, elements).contains(f)


# -- the Danilov-Gizatullin span argument ------------------------------


@dataclass(frozen=True)
class Spans:
    matrix: tuple[tuple[Fraction, ...], ...]
    det: Fraction


@dataclass(frozen=True)
class Degenerate:
    matrix: tuple[tuple[Fraction, ...], ...]
    det: Fraction = Fraction(0)


def _check_ts(n: int, ts: Sequence) -> tuple[int, list[Fraction]]:
    if not isinstance(n, int) or n < 3:
        raise ArgumentError("n must be an integer >= 3")
    b = n - 1
    ts = [Fraction(t) for t in ts]
    if len(ts) != b + 1:
        raise ArgumentError(f"need exactly {b + 1} flow times for n = {n}")
    if len(set(ts)) != len(ts):
        raise ArgumentError("flow times must be pairwise distinct")
    if any(t == 0 for t in ts):
        raise ArgumentError("flow times must be nonzero")
    return b, ts


def flow_shift(n: int, t) -> AlgebraElement:
    """exp(t*delta)(y) - y - t on the V_n ambient algebra."""
    from .catalog import make_dg_surface

    entry = make_dg_surface(n)
    delta = certify(entry.derivations["delta"])
    y = entry.generators["y"]
    return exp_flow(delta, y).evaluate(t) - y - Fraction(t)


def appendix_span(n: int, ts: Sequence) -> Spans | Degenerate:
    """Coefficient matrix of the shifted flows p_t over x_0..x_b, with its determinant."""
    from .catalog import make_dg_surface

    b, ts = _check_ts(n, ts)
    entry = make_dg_surface(n)
    xs = [entry.generators[f"x{k}"] for k in range(b + 1)]
    rows = []
    for t in ts:
        p = flow_shift(n, t)
        monos = sorted({m for e in (*xs, p) for m in e.rep.terms}, key=grevlex_key, reverse=True)
        system = [[x.rep.terms.get(m, Fraction(0)) for x in xs] for m in monos]
        rhs = [p.rep.terms.get(m, Fraction(0)) for m in monos]
        coeffs = solve(system, rhs)
        if coeffs is None:
            raise ArithmeticError(f"p_{t} is not a combination of x_0..x_{b}")
        rows.append(coeffs)
    matrix = tuple(tuple(r) for r in rows)
    det = determinant(matrix)
    return Spans(matrix, det) if det else Degenerate(matrix)


def flow_coefficient(n: int, k: int) -> Fraction:
    """Closed-form coefficient of t^(k+1) x_k in exp(t*delta)(y): n b! / ((b-k)! (k+1)!)."""
    b = n - 1
    return Fraction(n * factorial(b), factorial(b - k) * factorial(k + 1))


def vandermonde_shifted_det(ts: Sequence) -> Fraction:
    """det(t_i^(j+1)) = prod t_i * prod_{i<j} (t_j - t_i)."""
    ts = [Fraction(t) for t in ts]
    return prod(ts, start=Fraction(1)) * prod(
        (ts[j] - ts[i] for i in range(len(ts)) for j in range(i + 1, len(ts))), start=Fraction(1)
    )


def appendix_determinant_closed_form(n: int, ts: Sequence) -> Fraction:
    b, ts = _check_ts(n, ts)
    return prod((flow_coefficient(n, k) for k in range(b + 1)), start=Fraction(1)) * vandermonde_shifted_det(ts)


# -- separation ----------------------------------------------------------


@dataclass(frozen=True)
class PairSeparation:
    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...]
    separated: bool
    witness: str | None


def separates_points(F: GeneratorFamily, pairs) -> list[PairSeparation]:
    """For each pair of points, name the first family member taking different values."""
    out = []
    for p, q in pairs:
        A = F.elements[0].algebra
        p = p if isinstance(p, Point) else Point(A, p)
        q = q if isinstance(q, Point) else Point(A, q)
        witness = next(
            (name for name, f in zip(F.names, F.elements) if f.evaluate(p.coords) != f.evaluate(q.coords)),
            None,
        )
        out.append(PairSeparation(p.coords, q.coords, witness is not None, witness))
    return out
