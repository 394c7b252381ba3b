"""Pointwise geometry of affine varieties and their additive group actions.

Tangent spaces are null spaces of the Jacobian of the defining relations at
a rational point.  A derivation gives a vector at each point (the velocity of
its flow); a point is certified flexible when the vectors from the supplied
derivations, optionally transported by automorphisms, span the tangent
space.  A shortfall is never reported as non-flexibility, since the sample of
derivations is finite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import ArgumentError, NotWellDefined, PointNotOnVariety
from .exactpoly import Polynomial
from .fpalgebra import AlgebraElement, FPAlgebra, ideal_membership, radical_membership
from .linalg import nullspace, rank
from .lnd import (
    Automorphism,
    Derivation,
    apply,
    certify,
    check_well_defined,
    flow_automorphism,
    pushforward,
)


@dataclass(frozen=True)
class Point:
    algebra: FPAlgebra
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.algebra.nvars:
            raise PointNotOnVariety(f"{len(coords)} coordinates for {self.algebra.nvars} variables")
        for r in self.algebra.relations:
            v = r.evaluate(coords)
            if v:
                raise PointNotOnVariety(f"relation {r} takes value {v} at {_fmt(coords)}")

    def __str__(self):
        return _fmt(self.coords)


def _fmt(coords) -> str:
    return "(" + ", ".join(str(c) for c in coords) + ")"


def as_point(A: FPAlgebra, p) -> Point:
    if isinstance(p, Point):
        if p.algebra != A:
            raise PointNotOnVariety("point belongs to a different algebra")
        return p
    return Point(A, tuple(p))


def jacobian(polys: Sequence[Polynomial], coords) -> list[list[Fraction]]:
    if not polys:
        return []
    names = polys[0].varnames
    return [[f.derivative(v).evaluate(coords) for v in names] for f in polys]


def tangent_space(A: FPAlgebra, p) -> list[tuple[Fraction, ...]]:
    """Basis of the Zariski tangent space: kernel of the relation Jacobian at p."""
    p = as_point(A, p)
    return nullspace(jacobian(A.relations, p.coords), A.nvars)


def _require_well_defined(delta: Derivation) -> None:
    if delta.well_defined is None:
        check_well_defined(delta)
    if not delta.well_defined:
        raise NotWellDefined(f"{delta!r} does not preserve the ideal")


def orbit_tangent(delta: Derivation, p) -> tuple[Fraction, ...]:
    """Velocity at p of the flow of delta: (delta(x_1)(p), ..., delta(x_n)(p))."""
    _require_well_defined(delta)
    p = as_point(delta.algebra, p)
    return tuple(im.evaluate(p.coords) for im in delta.images)


FLEXIBLE = "Flexible"
NOT_DETERMINED = "NotDeterminedFlexible"


@dataclass(frozen=True)
class TangentReport:
    point: Point
    tangent_dim: int
    orbit_span_dim: int
    verdict: str
    vectors: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def flexible(self) -> bool:
        return self.verdict == FLEXIBLE


def flexibility_check(ds: Sequence[Derivation], p, enrich: Sequence[Automorphism] = ()) -> TangentReport:
    if not ds:
        raise ArgumentError("at least one derivation is required")
    A = ds[0].algebra
    p = as_point(A, p)
    for delta in ds:
        certify(delta)
    vectors = []
    for psi in (None, *enrich):
        for delta in ds:
            moved = delta if psi is None else pushforward(psi, delta)
            vectors.append(orbit_tangent(moved, p))
    tdim = len(tangent_space(A, p))
    sdim = rank(vectors)
    return TangentReport(p, tdim, sdim, FLEXIBLE if sdim == tdim else NOT_DETERMINED, tuple(vectors))


@dataclass(frozen=True)
class TransversalityReport:
    matrix: tuple[tuple[AlgebraElement, ...], ...]
    minors: tuple[AlgebraElement, ...]
    locus_functions: tuple[AlgebraElement, ...]
    in_radical: tuple[bool, ...]
    empty_locus: bool

    @property
    def certified(self) -> bool:
        """Every listed function vanishes wherever the two orbit vectors are dependent."""
        return all(self.in_radical)


def transversality_locus(ds: Sequence[Derivation], locus: Sequence | None = None) -> TransversalityReport:
    """Test which of ``locus`` (default: the coordinates) vanish on the rank-drop set of (d1, d2)."""
    if len(ds) != 2:
        raise ArgumentError("exactly two derivations are required")
    A = ds[0].algebra
    if ds[1].algebra != A:
        raise ArgumentError("derivations on different algebras")
    if A.nvars != 3 or len(A.relations) > 1:
        raise ArgumentError("surface case only: three variables and at most one relation")
    matrix = tuple(tuple(d.images) for d in ds)
    minors = tuple(
        matrix[0][a] * matrix[1][b] - matrix[0][b] * matrix[1][a] for a, b in combinations(range(3), 2)
    )
    funcs = tuple(A.element(f) for f in (locus if locus is not None else A.varnames))
    nonzero = [m for m in minors if not m.is_zero()]
    members = tuple(radical_membership(f, A, nonzero) for f in funcs)
    empty = ideal_membership(A.one(), A, nonzero)
    return TransversalityReport(matrix, minors, funcs, members, empty)


@dataclass(frozen=True)
class TangentAndInvariant:
    pass


@dataclass(frozen=True)
class TangentOnly:
    image: AlgebraElement


@dataclass(frozen=True)
class NotTangent:
    image: AlgebraElement


def divisor_tangency(delta: Derivation, g) -> TangentAndInvariant | TangentOnly | NotTangent:
    """Classify delta against the hypersurface {g = 0}."""
    _require_well_defined(delta)
    A = delta.algebra
    g = A.element(g)
    if g.is_zero():
        raise ArgumentError("g must be nonzero")
    dg = apply(delta, g)
    if dg.is_zero():
        return TangentAndInvariant()
    if radical_membership(dg, A, [g]):
        return TangentOnly(dg)
    return NotTangent(dg)


def jacobian_rank(F, p) -> int:
    """Rank of the differential of the map given by F, restricted to the tangent space at p."""
    elements = list(getattr(F, "elements", F))
    A = elements[0].algebra
    p = as_point(A, p)
    T = tangent_space(A, p)
    if not T:
        return 0
    J = jacobian([f.rep for f in elements], p.coords)
    JT = [[sum((a * b for a, b in zip(row, t)), Fraction(0)) for t in T] for row in J]
    return rank(JT)


# -- rational points -----------------------------------------------------


def random_rational(rng: random.Random, span: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def sample_point(A: FPAlgebra, rng: random.Random, solve_for: str | None = None,
                 nonzero: Sequence[str] = (), tries: int = 1000) -> Point:
    """A random rational point: free coordinates at random, one coordinate solved for.

    The single relation must be linear in the solved variable.
    """
    if len(A.relations) > 1:
        raise ArgumentError("sampling needs at most one relation")
    names = A.varnames
    rel = A.relations[0] if A.relations else None
    if rel is not None:
        if solve_for is None:
            solve_for = next((v for v in names if rel.degree_in(v) == 1), None)
        if solve_for is None or rel.degree_in(solve_for) != 1:
            raise ArgumentError(f"relation {rel} is not linear in any chosen variable")
        i = names.index(solve_for)
        lead = Polynomial(names, {m[:i] + (0,) + m[i + 1:]: c for m, c in rel.terms.items() if m[i] == 1})
        rest = Polynomial(names, {m: c for m, c in rel.terms.items() if m[i] == 0})
    for _ in range(tries):
        coords = [random_rational(rng) for _ in names]
        if rel is not None:
            c = lead.evaluate(coords)
            if not c:
                continue
            coords[i] = -rest.evaluate(coords) / c
        if any(coords[names.index(v)] == 0 for v in nonzero):
            continue
        return Point(A, tuple(coords))
    raise ArithmeticError("no admissible rational point found")


# -- k-transitivity on the affine plane ---------------------------------


PLANE = FPAlgebra.from_relations(("u", "v"))


@dataclass(frozen=True)
class FlowStep:
    derivation: Derivation
    time: Fraction

    def __str__(self):
        return f"exp({self.time} * [{self.derivation}])"


def lagrange(xs: Sequence[Fraction], ys: Sequence[Fraction], var: str) -> Polynomial:
    """Interpolating polynomial in ``var`` over the plane's variables."""
    names = PLANE.varnames
    t = Polynomial.variable(names, var)
    total = Polynomial.zero(names)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        term = Polynomial.constant(names, yi)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * (t - xj) / (xi - xj)
        total = total + term
    return total


def _shear(target: str, g: Polynomial) -> FlowStep | None:
    """Flow moving ``target`` by g, where g depends only on the other coordinate."""
    if g.is_zero():
        return None
    if g.is_constant():
        delta = Derivation.partial(PLANE, target)
        time = g.constant_term()
    else:
        delta = Derivation(PLANE, {target: g}, name=f"({g})*d/d{target}")
        time = Fraction(1)
    certify(delta)
    return FlowStep(delta, time)


def _run(step: FlowStep, pts):
    psi = flow_automorphism(step.derivation, step.time)
    return [psi.map_point(p) for p in pts]


def replay(program: Sequence[FlowStep], pts):
    """Apply the flows in order; returns the list of intermediate configurations."""
    history = [[tuple(Fraction(c) for c in p) for p in pts]]
    for step in program:
        history.append(_run(step, history[-1]))
    return history


def _distinct(vals) -> bool:
    return len(set(vals)) == len(vals)


def _separate_u(pts, rng: random.Random) -> list[FlowStep]:
    """Preliminary shear u -> u + c*v making all u-coordinates distinct."""
    if _distinct([p[0] for p in pts]):
        return []
    while True:
        c = random_rational(rng)
        if c and _distinct([p[0] + c * p[1] for p in pts]):
            return [_shear("u", Polynomial.variable(PLANE.varnames, "v") * c)]


def plane_transitivity(src: Sequence, dst: Sequence, seed: int = 0) -> list[FlowStep]:
    """Flows of h(v) d/du and g(u) d/dv whose composition sends src[i] to dst[i]."""
    src = [tuple(Fraction(c) for c in as_point(PLANE, p).coords) for p in src]
    dst = [tuple(Fraction(c) for c in as_point(PLANE, p).coords) for p in dst]
    if len(src) != len(dst) or not src:
        raise ArgumentError("src and dst must be non-empty and of equal length")
    if not _distinct(src) or not _distinct(dst):
        raise ArgumentError("points must be pairwise distinct")
    rng = random.Random(seed)

    program = _separate_u(src, rng)
    pts = replay(program, src)[-1]
    dst_prep = _separate_u(dst, rng)
    goal = replay(dst_prep, dst)[-1]
    u = [p[0] for p in pts]
    gu = [p[0] for p in goal]

    steps: list[FlowStep | None] = []
    if u == gu:
        steps.append(_shear("v", lagrange(u, [q[1] - p[1] for p, q in zip(pts, goal)], "u")))
    else:
        w = [p[1] for p in pts]
        if not _distinct(w):
            w = [Fraction(i) for i in range(len(pts))]
            steps.append(_shear("v", lagrange(u, [wi - p[1] for wi, p in zip(w, pts)], "u")))
        steps.append(_shear("u", lagrange(w, [b - a for a, b in zip(u, gu)], "v")))
        steps.append(_shear("v", lagrange(gu, [q[1] - wi for wi, q in zip(w, goal)], "u")))
    program += [s for s in steps if s is not None]
    program += [FlowStep(s.derivation, -s.time) for s in reversed(dst_prep)]

    history = replay(program, src)
    if history[-1] != dst or not all(_distinct(h) for h in history):
        raise AssertionError("flow program failed replay verification")
    return program
