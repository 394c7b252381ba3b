"""Named example varieties with their derivations, gradings and generator families.

Catalog names: ``affine:<n>``, ``russell``, ``ym:<m>:<j>``, ``dg:<n>``, ``cstar_c2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from .errors import ArgumentError
from .exactpoly import Polynomial, variables
from .fpalgebra import AlgebraElement, FPAlgebra
from .invariants import GeneratorFamily
from .lnd import Derivation, WeightGrading, apply, check_well_defined

DG_WARNING = (
    "dg:<n> uses the ambient relation a1*a4 - a2^b*a3 = 1, chosen as the only member of a "
    "small candidate class consistent with the stated derivation identities; conclusions "
    "about V_n are conditional on this presentation"
)


@dataclass(frozen=True)
class Identity:
    """Machine-checkable claim ``derivation(argument) == expected``."""

    label: str
    derivation: str
    argument: AlgebraElement
    expected: AlgebraElement

    def holds(self, entry: "CatalogEntry") -> bool:
        return apply(entry.derivations[self.derivation], self.argument) == self.expected


@dataclass
class CatalogEntry:
    name: str
    algebra: FPAlgebra
    derivations: dict[str, Derivation]
    grading: WeightGrading | None = None
    generators: GeneratorFamily | None = None
    expected: list[Identity] = field(default_factory=list)
    sample_var: str | None = None
    sample_nonzero: tuple[str, ...] = ()
    warnings: list[str] = field(default_factory=list)

    def derivation_list(self, names=None) -> list[Derivation]:
        names = list(self.derivations) if names is None else names
        missing = [n for n in names if n not in self.derivations]
        if missing:
            raise ArgumentError(f"{self.name} has no derivation(s) {missing}")
        return [self.derivations[n] for n in names]


def _algebra(names, relations=()) -> tuple[FPAlgebra, tuple[Polynomial, ...]]:
    xs = variables(names)
    rels = relations(*xs) if callable(relations) else relations
    return FPAlgebra.from_relations(names, list(rels)), xs


def affine_varnames(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("u", "v", "w")[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def make_affine_space(n: int) -> CatalogEntry:
    if not isinstance(n, int) or n < 1:
        raise ArgumentError("affine space needs n >= 1")
    A, _ = _algebra(affine_varnames(n))
    ds = {f"d_{v}": Derivation.partial(A, v) for v in A.varnames}
    return CatalogEntry(f"affine:{n}", A, ds)


def make_russell() -> CatalogEntry:
    A, (x, y, z, t) = _algebra(("x", "y", "z", "t"), lambda x, y, z, t: [x + x**2 * y + z**2 + t**3])
    delta_a = Derivation(A, {"y": -2 * z, "z": x**2}, name="delta_a")
    delta_b = Derivation(A, {"y": -3 * t**2, "t": x**2}, name="delta_b")
    return CatalogEntry(
        "russell", A, {"delta_a": delta_a, "delta_b": delta_b},
        sample_var="y", sample_nonzero=("x",),
    )


def make_ym_surface(m: int, j: int) -> CatalogEntry:
    if not (isinstance(m, int) and isinstance(j, int)) or m < 2 or not 1 <= j < m or gcd(m, j) != 1:
        raise ArgumentError("need m >= 2, 1 <= j < m and gcd(m, j) = 1")
    A, (x, y, z) = _algebra(("x", "y", "z"), lambda x, y, z: [x * y - z**m + 1])
    delta1 = Derivation(A, {"y": m * x ** (j - 1) * z ** (m - 1), "z": x**j}, name="delta1")
    delta2 = Derivation(A, {"x": m * y ** (j - 1) * z ** (m - 1), "z": y**j}, name="delta2")
    grading = WeightGrading(m, {"x": 1, "y": -1, "z": j})
    return CatalogEntry(
        f"ym:{m}:{j}", A, {"delta1": delta1, "delta2": delta2}, grading=grading,
        sample_var="y", sample_nonzero=("x", "y"),
    )


def dg_algebra(n: int, p: int | None = None, q: int = 1, c: int = 1) -> FPAlgebra:
    """Ambient Q[a1..a4]/(a1*a4 - a2^p*a3^q - c); the adopted choice is p = n-1, q = c = 1."""
    b = n - 1
    p = b if p is None else p
    A, _ = _algebra(("a1", "a2", "a3", "a4"), lambda a1, a2, a3, a4: [a1 * a4 - a2**p * a3**q - c])
    return A


def _dg_data(A: FPAlgebra, n: int):
    b = n - 1
    a1, a2, a3, a4 = variables(A.varnames)
    delta = Derivation(A, {"a1": b * a2 ** (b - 1) * a3, "a2": a4}, name="delta")
    delta_p = Derivation(A, {"a4": a1 ** (b - 1) * a2**b, "a3": a1**b}, name="delta_prime")
    gens = {f"x{k}": A.element(a2 ** (b - k) * a3 * a4**k) for k in range(b + 1)}
    gens["y"] = A.element(a1 * a2)
    return delta, delta_p, gens


def make_dg_surface(n: int) -> CatalogEntry:
    if not isinstance(n, int) or n < 3:
        raise ArgumentError("Danilov-Gizatullin example needs n >= 3")
    b = n - 1
    A = dg_algebra(n)
    delta, delta_p, gens = _dg_data(A, n)
    family = GeneratorFamily.of(gens, {"y": delta_p})
    expected = [Identity("delta(y) = 1 + n*x0", "delta", gens["y"], 1 + n * gens["x0"])]
    for k in range(b + 1):
        nxt = gens[f"x{k + 1}"] * (b - k) if k < b else A.zero()
        expected.append(Identity(f"delta(x{k}) = {b - k}*x{k + 1}", "delta", gens[f"x{k}"], nxt))
    expected.append(Identity("delta'(y) = 0", "delta_prime", gens["y"], A.zero()))
    return CatalogEntry(
        f"dg:{n}", A, {"delta": delta, "delta_prime": delta_p}, generators=family,
        expected=expected, sample_var="a1", sample_nonzero=("a4",), warnings=[DG_WARNING],
    )


def dg_relation_search(n: int) -> list[tuple[int, int, int]]:
    """All (p, q, c), 0<=p<=b+1, q,c in {0,1}, for which both derivations are
    well defined on a1*a4 - a2^p*a3^q - c and delta(y) = 1 + n*x0."""
    b = n - 1
    hits = []
    for p in range(b + 2):
        for q in (0, 1):
            for c in (0, 1):
                A = dg_algebra(n, p, q, c)
                delta, delta_p, gens = _dg_data(A, n)
                if (check_well_defined(delta) and check_well_defined(delta_p)
                        and apply(delta, gens["y"]) == 1 + n * gens["x0"]):
                    hits.append((p, q, c))
    return hits


def make_cstar_c2() -> CatalogEntry:
    A, _ = _algebra(("s", "t", "u", "v"), lambda s, t, u, v: [s * t - 1])
    ds = {"d_u": Derivation.partial(A, "u"), "d_v": Derivation.partial(A, "v")}
    return CatalogEntry("cstar_c2", A, ds, sample_var="t", sample_nonzero=("s",))


_FIXED: dict[str, Callable[[], CatalogEntry]] = {
    "russell": make_russell,
    "cstar_c2": make_cstar_c2,
}


def get_entry(name: str) -> CatalogEntry:
    head, *args = name.split(":")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise ArgumentError(f"bad catalog name {name!r}") from None
    if head in _FIXED and not nums:
        return _FIXED[head]()
    if head == "affine" and len(nums) == 1:
        return make_affine_space(nums[0])
    if head == "ym" and len(nums) == 2:
        return make_ym_surface(*nums)
    if head == "dg" and len(nums) == 1:
        return make_dg_surface(nums[0])
    raise ArgumentError(f"unknown catalog entry {name!r}")


CATALOG_NAMES = ("affine:<n>", "russell", "ym:<m>:<j>", "dg:<n>", "cstar_c2")


def list_entries() -> list[tuple[str, str]]:
    return [
        ("affine:<n>", "affine n-space with the partial derivatives"),
        ("russell", "x + x^2*y + z^2 + t^3 = 0 with two triangular derivations"),
        ("ym:<m>:<j>", "xy = z^m - 1 with delta1, delta2 and the Z/m weights (1, -1, j)"),
        ("dg:<n>", "ambient hypersurface of V_n with delta, delta' and generators x_k, y"),
        ("cstar_c2", "C* x C^2 as st = 1 in Q[s,t,u,v] with d/du, d/dv"),
    ]
