"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a map from exponent tuples to :class:`fractions.Fraction`.
Every polynomial carries its ordered tuple of variable names; arithmetic
between polynomials over different variable lists is refused.

Iteration, printing and leading terms all use the graded reverse
lexicographic order (variables ordered as listed, first variable largest).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]


class PolyContextError(ValueError):
    """Operands or arguments do not match the polynomial's variable list."""


def grevlex_key(exps: Monomial) -> tuple:
    """Sort key; a larger key means a larger monomial in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class Polynomial:
    """An immutable polynomial over Q in a fixed, ordered set of variables."""

    __slots__ = ("varnames", "terms", "_hash")

    def __init__(self, varnames: Iterable[str], terms: Mapping[Monomial, object] | None = None):
        self.varnames = tuple(varnames)
        n = len(self.varnames)
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise PolyContextError(f"monomial {mono} has wrong length for {self.varnames}")
            c = _as_fraction(c)
            if c:
                clean[mono] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, varnames: tuple[str, ...], terms: dict[Monomial, Fraction]) -> "Polynomial":
        # Trusted constructor: terms are already clean.
        p = object.__new__(cls)
        p.varnames = varnames
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, varnames: Iterable[str]) -> "Polynomial":
        return cls._raw(tuple(varnames), {})

    @classmethod
    def constant(cls, varnames: Iterable[str], c) -> "Polynomial":
        varnames = tuple(varnames)
        c = _as_fraction(c)
        return cls._raw(varnames, {(0,) * len(varnames): c} if c else {})

    @classmethod
    def variable(cls, varnames: Iterable[str], name: str) -> "Polynomial":
        varnames = tuple(varnames)
        i = _index(varnames, name)
        exps = tuple(1 if k == i else 0 for k in range(len(varnames)))
        return cls._raw(varnames, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, varnames: Iterable[str], exps: Sequence[int], c=1) -> "Polynomial":
        return cls(varnames, {tuple(exps): c})

    # -- inspection -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.varnames)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = _index(self.varnames, name)
        return max((m[i] for m in self.terms), default=-1)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in decreasing grevlex order."""
        for m in sorted(self.terms, key=grevlex_key, reverse=True):
            yield m, self.terms[m]

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.varnames != other.varnames:
            raise PolyContextError(f"variable lists differ: {self.varnames} vs {other.varnames}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.varnames, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.varnames, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.varnames, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            c = _as_fraction(other)
            if not c:
                return Polynomial.zero(self.varnames)
            return Polynomial._raw(self.varnames, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.varnames, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            return self * (1 / _as_fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.varnames, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, mono: Monomial, c: Fraction) -> "Polynomial":
        """Multiply by the single term ``c * x^mono``."""
        return Polynomial._raw(
            self.varnames,
            {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()},
        )

    # -- calculus and evaluation -----------------------------------------

    def derivative(self, name: str) -> "Polynomial":
        i = _index(self.varnames, name)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.varnames, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise PolyContextError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by ``images[i]``; all images share one variable list."""
        if len(images) != self.nvars:
            raise PolyContextError("need one image per variable")
        if not images:
            return self
        target = images[0].varnames
        for im in images:
            if im.varnames != target:
                raise PolyContextError("images live over different variable lists")
        powers: list[dict[int, Polynomial]] = [{} for _ in images]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        result = Polynomial.zero(target)
        for m, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def embed(self, varnames: Sequence[str]) -> "Polynomial":
        """Re-express over a variable list containing all of ours."""
        varnames = tuple(varnames)
        pos = [_index(varnames, v) for v in self.varnames]
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(varnames)
            for p, k in zip(pos, m):
                e[p] = k
            out[tuple(e)] = c
        return Polynomial._raw(varnames, out)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.varnames == other.varnames and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == Polynomial.constant(self.varnames, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.varnames, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.varnames!r}, {format_polynomial(self)!r})"


def _index(varnames: Sequence[str], name: str) -> int:
    try:
        return varnames.index(name)
    except ValueError:
        raise PolyContextError(f"unknown variable {name!r}; have {tuple(varnames)}") from None


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial) -> str:
    """Render in the expression grammar accepted by :func:`lndkit.cli.dsl.parse_expression`."""
    if f.is_zero():
        return "0"
    parts = []
    for k, (m, c) in enumerate(f.items()):
        factors = []
        for name, e in zip(f.varnames, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rational(mag) + "*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact ``add``, ``sub`` or ``mul`` of two polynomials over the same variables."""
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.derivative(var)


def poly_eval(f: Polynomial, point: Sequence) -> Fraction:
    return f.evaluate(point)


def variables(varnames: Sequence[str]) -> tuple[Polynomial, ...]:
    """Convenience: one polynomial per variable, in order."""
    return tuple(Polynomial.variable(varnames, v) for v in varnames)
