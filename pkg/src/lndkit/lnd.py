"""Derivations of finitely presented algebras and their exponential flows.

A derivation is fixed by the images of the ambient variables and extended by
the Leibniz rule.  Well-definedness (the ideal is mapped into itself) and
local nilpotency (every generator is killed by some power) are checked
explicitly and recorded on the derivation as certificates; flows and
pushforwards refuse to run without them.

Automorphisms are stored as point maps: ``forward[i]`` is the i-th coordinate
of the image point as a polynomial in the source coordinates (so a function
``f`` pulls back to ``f(forward)``), and ``backward`` is the inverse map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Mapping, Sequence

from .errors import CertificateRequired, GradingMismatch, NotAnAutomorphism, NotWellDefined
from .exactpoly import PolyContextError, Polynomial, format_polynomial
from .fpalgebra import AlgebraElement, FPAlgebra


@dataclass(frozen=True)
class NilpotentWithBound:
    """``delta^bound`` kills every generator; ``indices[v]`` is the exact index per variable."""

    bound: int
    indices: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class NotNilpotent:
    """``delta^later(var) == ratio * delta^earlier(var)`` with both sides nonzero."""

    var: str
    earlier: int
    later: int
    ratio: Fraction


@dataclass(frozen=True)
class UnknownUpToCap:
    cap: int


class Derivation:
    """A derivation of ``algebra`` given by the images of its variables."""

    def __init__(self, algebra: FPAlgebra, images: Mapping[str, object], name: str | None = None):
        unknown = set(images) - set(algebra.varnames)
        if unknown:
            raise PolyContextError(f"images given for unknown variables {sorted(unknown)}")
        self.algebra = algebra
        self.images = tuple(algebra.element(images.get(v, 0)) for v in algebra.varnames)
        self.name = name
        self.well_defined: bool | None = None
        self.nilpotency: NilpotentWithBound | None = None

    @classmethod
    def partial(cls, algebra: FPAlgebra, var: str) -> "Derivation":
        return cls(algebra, {var: 1}, name=f"d/d{var}")

    def image(self, var: str) -> AlgebraElement:
        return self.images[self.algebra.varnames.index(var)]

    def __call__(self, f) -> AlgebraElement:
        return apply(self, f)

    def scaled(self, c) -> "Derivation":
        """``c * delta``; certificates carry over for nonzero c."""
        out = Derivation(self.algebra, {v: im * c for v, im in zip(self.algebra.varnames, self.images)})
        out.name = f"({c})*{self.name}" if self.name else None
        if c:
            out.well_defined = self.well_defined
            out.nilpotency = self.nilpotency
        return out

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.algebra == other.algebra and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        parts = [
            f"({im})*d/d{v}" for v, im in zip(self.algebra.varnames, self.images) if not im.is_zero()
        ]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"Derivation({label}{self})"


def apply(delta: Derivation, f) -> AlgebraElement:
    """Leibniz extension: sum over variables of df/dx_i * delta(x_i), in normal form.

    A :class:`Polynomial` argument is differentiated as given, without first
    reducing it; that is what the well-definedness check relies on.
    """
    A = delta.algebra
    if isinstance(f, Polynomial):
        if f.varnames != A.varnames:
            raise PolyContextError(f"{f.varnames} is not the variable list {A.varnames}")
        rep = f
    else:
        rep = A.element(f).rep
    total = Polynomial.zero(A.varnames)
    for v, im in zip(A.varnames, delta.images):
        if im.is_zero():
            continue
        d = rep.derivative(v)
        if not d.is_zero():
            total = total + d * im.rep
    return A.element(total)


def check_well_defined(delta: Derivation) -> bool:
    """True iff delta maps every relation into the ideal; records the result."""
    A = delta.algebra
    ok = all(apply(delta, r).is_zero() for r in A.relations)
    delta.well_defined = ok
    return ok


def _ensure_well_defined(delta: Derivation) -> None:
    if delta.well_defined is None:
        check_well_defined(delta)
    if not delta.well_defined:
        raise NotWellDefined(f"{delta!r} does not preserve the ideal")


def _proportional(a: Polynomial, b: Polynomial) -> Fraction | None:
    """Return c with a == c*b, or None."""
    if a.terms.keys() != b.terms.keys() or not b.terms:
        return None
    m = next(iter(b.terms))
    c = a.terms[m] / b.terms[m]
    return c if all(a.terms[k] == c * b.terms[k] for k in b.terms) else None


def nilpotency_certificate(delta: Derivation, cap: int = 64):
    """Iterate delta on each generator up to ``cap`` times.

    Returns NilpotentWithBound (and records it on delta), NotNilpotent when an
    iterate comes back as a nonzero multiple of an earlier one, or
    UnknownUpToCap.
    """
    _ensure_well_defined(delta)
    A = delta.algebra
    indices = []
    for v in A.varnames:
        cur = A.gen(v)
        seen: list[Polynomial] = []
        index = 0 if cur.is_zero() else None
        k = 0
        while index is None and k < cap:
            seen.append(cur.rep)
            cur = apply(delta, cur)
            k += 1
            if cur.is_zero():
                index = k
                break
            for j, prev in enumerate(seen):
                c = _proportional(cur.rep, prev)
                if c is not None:
                    return NotNilpotent(v, j, k, c)
        if index is None:
            return UnknownUpToCap(cap)
        indices.append((v, index))
    cert = NilpotentWithBound(max((i for _, i in indices), default=0), tuple(indices))
    delta.nilpotency = cert
    return cert


def certify(delta: Derivation, cap: int = 64) -> Derivation:
    """Check well-definedness and local nilpotency, raising if either fails."""
    _ensure_well_defined(delta)
    if delta.nilpotency is None:
        cert = nilpotency_certificate(delta, cap)
        if not isinstance(cert, NilpotentWithBound):
            raise CertificateRequired(f"{delta!r}: no nilpotency certificate ({cert})")
    return delta


def nilpotency_bound(delta: Derivation, f) -> int:
    """Leibniz bound k with delta^k(f) == 0, from the generator certificate."""
    if delta.nilpotency is None:
        raise CertificateRequired(f"{delta!r} has no nilpotency certificate")
    A = delta.algebra
    idx = dict(delta.nilpotency.indices)
    rep = A.element(f).rep
    if rep.is_zero():
        return 0
    return max(sum(e * (idx[v] - 1) for v, e in zip(A.varnames, m) if e) + 1 for m in rep.terms)


def nilpotency_index(delta: Derivation, f) -> int:
    """Least k with delta^k(f) == 0 (requires a certificate)."""
    bound = nilpotency_bound(delta, f)
    cur = delta.algebra.element(f)
    k = 0
    while not cur.is_zero():
        cur = apply(delta, cur)
        k += 1
        assert k <= bound, "nilpotency certificate violated"
    return k


@dataclass(frozen=True)
class FlowPolynomial:
    """exp(t*delta)(f) as sum_k t^k * coefficients[k]; empty for the zero element."""

    coefficients: tuple[AlgebraElement, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> AlgebraElement:
        return self.coefficients[k]

    def __mul__(self, other: "FlowPolynomial") -> "FlowPolynomial":
        if not self.coefficients or not other.coefficients:
            return FlowPolynomial(())
        A = self.coefficients[0].algebra
        out = [A.zero() for _ in range(len(self.coefficients) + len(other.coefficients) - 1)]
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return FlowPolynomial(tuple(out))

    def evaluate(self, t) -> AlgebraElement:
        t = Fraction(t)
        if not self.coefficients:
            raise ValueError("zero flow has no algebra attached")
        total = self.coefficients[0].algebra.zero()
        for k, c in enumerate(self.coefficients):
            total = total + c * t ** k
        return total

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            tp = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not tp:
                parts.append(str(c))
            else:
                parts.append(f"{tp}*({c})")
        return " + ".join(parts)


def exp_flow(delta: Derivation, f) -> FlowPolynomial:
    """Finite series sum_k t^k delta^k(f)/k!."""
    if delta.nilpotency is None:
        raise CertificateRequired(f"{delta!r} has no nilpotency certificate")
    bound = nilpotency_bound(delta, f)
    cur = delta.algebra.element(f)
    coeffs = []
    k = 0
    while not cur.is_zero():
        coeffs.append(cur / factorial(k))
        cur = apply(delta, cur)
        k += 1
        assert k <= bound, "nilpotency certificate violated"
    return FlowPolynomial(tuple(coeffs))


class Automorphism:
    """A polynomial automorphism given by mutually inverse point maps."""

    def __init__(self, algebra: FPAlgebra, forward, backward, check: bool = True):
        self.algebra = algebra
        self.forward = _images(algebra, forward)
        self.backward = _images(algebra, backward)
        if check:
            self._verify()

    def _verify(self) -> None:
        A = self.algebra
        for label, imgs in (("forward", self.forward), ("backward", self.backward)):
            reps = [im.rep for im in imgs]
            for r in A.relations:
                if not A.element(r.substitute(reps)).is_zero():
                    raise NotAnAutomorphism(f"{label} map does not preserve relation {r}")
        for v, a, b in zip(A.varnames, self.forward, self.backward):
            if self._compose_rep(a, self.backward) != A.gen(v):
                raise NotAnAutomorphism(f"backward then forward moves {v}")
            if self._compose_rep(b, self.forward) != A.gen(v):
                raise NotAnAutomorphism(f"forward then backward moves {v}")

    def _compose_rep(self, f: AlgebraElement, images: Sequence[AlgebraElement]) -> AlgebraElement:
        return self.algebra.element(f.rep.substitute([im.rep for im in images]))

    @classmethod
    def identity(cls, algebra: FPAlgebra) -> "Automorphism":
        gens = algebra.gens()
        return cls(algebra, gens, gens, check=False)

    def pullback(self, f) -> AlgebraElement:
        """f composed with the point map."""
        return self._compose_rep(self.algebra.element(f), self.forward)

    def transport(self, f) -> AlgebraElement:
        """f composed with the inverse point map (the function carried along the map)."""
        return self._compose_rep(self.algebra.element(f), self.backward)

    def map_point(self, coords: Sequence) -> tuple[Fraction, ...]:
        return tuple(im.evaluate(coords) for im in self.forward)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other, as point maps."""
        if other.algebra != self.algebra:
            raise PolyContextError("automorphisms of different algebras")
        fwd = [self.algebra.element(a.rep.substitute([o.rep for o in other.forward])) for a in self.forward]
        bwd = [self.algebra.element(b.rep.substitute([s.rep for s in self.backward])) for b in other.backward]
        return Automorphism(self.algebra, fwd, bwd, check=False)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.algebra, self.backward, self.forward, check=False)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.algebra == other.algebra and self.forward == other.forward and self.backward == other.backward

    def __hash__(self):
        return hash(self.forward)

    def __repr__(self):
        maps = ", ".join(f"{v} -> {im}" for v, im in zip(self.algebra.varnames, self.forward))
        return f"Automorphism({maps})"


def _images(A: FPAlgebra, images) -> tuple[AlgebraElement, ...]:
    if isinstance(images, Mapping):
        return tuple(A.element(images.get(v, v)) for v in A.varnames)
    images = list(images)
    if len(images) != A.nvars:
        raise PolyContextError(f"need {A.nvars} images, got {len(images)}")
    return tuple(A.element(im) for im in images)


def flow_automorphism(delta: Derivation, t0) -> Automorphism:
    """The time-t0 map of the flow of delta, with the time -t0 map as inverse."""
    t0 = Fraction(t0)
    A = delta.algebra
    flows = [exp_flow(delta, x) for x in A.gens()]
    fwd = [fl.evaluate(t0) if fl.coefficients else A.zero() for fl in flows]
    bwd = [fl.evaluate(-t0) if fl.coefficients else A.zero() for fl in flows]
    return Automorphism(A, fwd, bwd)


def pushforward(psi: Automorphism, delta: Derivation) -> Derivation:
    """The derivation carried along psi: x_i maps to delta(x_i o psi) o psi^-1."""
    A = delta.algebra
    if psi.algebra != A:
        raise PolyContextError("automorphism and derivation live on different algebras")
    images = {v: psi.transport(apply(delta, fwd)) for v, fwd in zip(A.varnames, psi.forward)}
    out = Derivation(A, images, name=f"push({delta.name})" if delta.name else None)
    out.well_defined = delta.well_defined
    if delta.nilpotency is not None:
        indices = tuple((v, nilpotency_index(delta, fwd)) for v, fwd in zip(A.varnames, psi.forward))
        out.nilpotency = NilpotentWithBound(max((i for _, i in indices), default=0), indices)
    return out


@dataclass(frozen=True)
class WeightGrading:
    """A Z/m grading: weights[v] is the weight of variable v modulo ``modulus``."""

    modulus: int
    weights: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "weights", {v: w % self.modulus for v, w in dict(self.weights).items()})

    def weight(self, varnames: Sequence[str], mono) -> int:
        return sum(self.weights.get(v, 0) * e for v, e in zip(varnames, mono)) % self.modulus


@dataclass(frozen=True)
class Equivariant:
    pass


@dataclass(frozen=True)
class NotEquivariant:
    var: str
    term: str
    term_weight: int
    expected_weight: int


def weight_check(delta: Derivation, w: WeightGrading):
    """Is delta homogeneous of weight 0, i.e. does it commute with the Z/m action?"""
    A = delta.algebra
    for r in A.relations:
        weights = {w.weight(A.varnames, m) for m in r.terms}
        if len(weights) > 1:
            raise GradingMismatch(f"relation {r} has terms of weights {sorted(weights)}")
    for v, im in zip(A.varnames, delta.images):
        target = w.weights.get(v, 0) % w.modulus
        for m, c in im.rep.items():
            tw = w.weight(A.varnames, m)
            if tw != target:
                term = format_polynomial(Polynomial(A.varnames, {m: c}))
                return NotEquivariant(v, term, tw, target)
    return Equivariant()
