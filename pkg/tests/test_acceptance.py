"""Acceptance criteria, one test per criterion, all exact (tolerance 0).

Each test prints a single ``PASS``/``FAIL`` line; the lines are also repeated
in the pytest terminal summary.  Run directly with ``python tests/test_acceptance.py``
to get only the lines.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from lndkit.catalog import get_entry, make_dg_surface, make_ym_surface
from lndkit.cli.dsl import parse_expression
from lndkit.cli.main import run_command
from lndkit.exactpoly import Polynomial
from lndkit.flexgeo import (
    Point,
    flexibility_check,
    jacobian_rank,
    plane_transitivity,
    random_rational,
    replay,
    sample_point,
    tangent_space,
    transversality_locus,
)
from lndkit.invariants import (
    SubspaceBasis,
    Spans,
    appendix_span,
    derksen_truncated,
    ml_truncated,
    separates_points,
)
from lndkit.lnd import (
    Equivariant,
    NilpotentWithBound,
    apply,
    certify,
    check_well_defined,
    exp_flow,
    flow_automorphism,
    nilpotency_certificate,
    pushforward,
    weight_check,
)

RESULTS: list[str] = []


def report(number: int, title: str, failures: list[str], elapsed: float | None = None):
    status = "FAIL" if failures else "PASS"
    line = f"{status} criterion {number}: {title}"
    if elapsed is not None:
        line += f" [{elapsed:.2f}s]"
    if failures:
        line += " -- " + "; ".join(failures)
    RESULTS.append(line)
    print(line)
    assert not failures, line


def _lnd_failures(label, delta, cap=64):
    if not check_well_defined(delta):
        return [f"{label} not well defined"]
    if not isinstance(nilpotency_certificate(delta, cap), NilpotentWithBound):
        return [f"{label} not certified nilpotent (cap {cap})"]
    return []


def test_criterion_1_appendix():
    start = time.perf_counter()
    failures = []
    for n in (3, 4, 5, 6):
        b = n - 1
        e = make_dg_surface(n)
        failures += _lnd_failures(f"n={n} delta", e.derivations["delta"])
        failures += _lnd_failures(f"n={n} delta'", e.derivations["delta_prime"])
        failures += [f"n={n} {i.label}" for i in e.expected if not i.holds(e)]
        flow = exp_flow(certify(e.derivations["delta"]), e.generators["y"])
        if flow.degree != b + 1:
            failures.append(f"n={n} flow degree {flow.degree}")
        res = appendix_span(n, list(range(1, b + 2)))
        if not (isinstance(res, Spans) and res.det != 0):
            failures.append(f"n={n} span degenerate")
    elapsed = time.perf_counter() - start
    if elapsed >= 5:
        failures.append("runtime over 5 s")
    report(1, "appendix identities, flow degree b+1 and nonzero span determinant, n=3..6", failures, elapsed)


def test_criterion_2_qhp_derivations():
    start = time.perf_counter()
    failures = []
    for m, j in [(2, 1), (3, 1), (3, 2), (5, 2), (5, 3)]:
        e = make_ym_surface(m, j)
        ds = e.derivation_list(["delta1", "delta2"])
        for name, d in zip(("delta1", "delta2"), ds):
            failures += _lnd_failures(f"({m},{j}) {name}", d)
            if not isinstance(weight_check(d, e.grading), Equivariant):
                failures.append(f"({m},{j}) {name} not weight-equivariant")
        x, y, _ = e.algebra.gens()
        rep = transversality_locus(ds, [x, y])
        failures += [f"({m},{j}) {f} not in radical of minors"
                     for f, ok in zip("xy", rep.in_radical) if not ok]
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        failures.append("runtime over 10 s")
    report(2, "Y_m derivations: well defined, nilpotent, equivariant, transversal off x=y=0", failures, elapsed)


def test_criterion_3_russell():
    e = get_entry("russell")
    failures = _lnd_failures("delta_a", e.derivations["delta_a"]) + _lnd_failures("delta_b", e.derivations["delta_b"])
    x = e.algebra.gen("x")
    for d in (1, 2, 3):
        expected = SubspaceBasis.from_elements(e.algebra, d, [x**k for k in range(d + 1)])
        if ml_truncated(e.derivation_list(), d) != expected:
            failures.append(f"ML at degree {d}")
    report(3, "Russell cubic ML truncations equal span{1, x, ..., x^d}, d=1..3", failures)


def test_criterion_4_cstar_c2():
    e = get_entry("cstar_c2")
    ds = e.derivation_list()
    failures = []
    if ml_truncated(ds, 1).dim <= 1:
        failures.append("ML at degree 1 is trivial")
    failures += [f"Derksen at degree {d} not full" for d in (1, 2) if not derksen_truncated(ds, d).is_full()]
    rng = random.Random(4)
    for _ in range(5):
        p = sample_point(e.algebra, rng, e.sample_var, e.sample_nonzero)
        if flexibility_check(ds, p).flexible:
            failures.append(f"flexible at {p}")
    report(4, "C* x C^2: nontrivial ML, full Derksen slices, no flexible sample points", failures)


def test_criterion_5_affine():
    failures = []
    for n in (2, 3):
        e = get_entry(f"affine:{n}")
        ds = e.derivation_list()
        if ml_truncated(ds, 4) != SubspaceBasis.from_elements(e.algebra, 4, [1]):
            failures.append(f"n={n} ML")
        if not derksen_truncated(ds, 3).is_full():
            failures.append(f"n={n} Derksen")
    report(5, "affine 2- and 3-space: ML = constants, Derksen = full slice", failures)


def _random_element(A, rng, max_deg=2, terms=3):
    n = A.nvars
    t = {}
    for _ in range(terms):
        mono = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(n)] += 1
        t[tuple(mono)] = random_rational(rng)
    return A.element(Polynomial(A.varnames, t))


FLOW_ENTRIES = ["affine:2", "affine:3", "russell", "ym:2:1", "ym:3:2", "ym:5:3", "dg:3", "dg:4", "cstar_c2"]


def test_criterion_6_flow_laws():
    rng = random.Random(6)
    entries = [get_entry(name) for name in FLOW_ENTRIES]
    failures = []
    for i in range(100):
        e = rng.choice(entries)
        d = certify(rng.choice(e.derivation_list()))
        f, g = _random_element(e.algebra, rng), _random_element(e.algebra, rng)
        s, t = random_rational(rng), random_rational(rng)
        tag = f"#{i} {e.name}/{d.name}"
        if exp_flow(d, f * g) != exp_flow(d, f) * exp_flow(d, g):
            failures.append(f"{tag} homomorphism")
        phi_s, phi_t = flow_automorphism(d, s), flow_automorphism(d, t)
        if phi_s.compose(phi_t) != flow_automorphism(d, s + t):
            failures.append(f"{tag} group law")
        if exp_flow(d, f).evaluate(s) != phi_s.pullback(f):
            failures.append(f"{tag} flow vs pullback")
        p = sample_point(e.algebra, rng, e.sample_var, e.sample_nonzero)
        q = phi_t.map_point(p.coords)
        if any(r.evaluate(q) != 0 for r in e.algebra.relations):
            failures.append(f"{tag} point left the variety")
        if f.evaluate(q) != phi_t.pullback(f).evaluate(p.coords):
            failures.append(f"{tag} point map vs pullback")
    report(6, "flow homomorphism and group laws on 100 seeded instances", failures)


def test_criterion_7_flexibility():
    failures = []
    Y = make_ym_surface(3, 2)
    rng = random.Random(7)
    for _ in range(5):
        p = sample_point(Y.algebra, rng, Y.sample_var, Y.sample_nonzero)
        if not flexibility_check(Y.derivation_list(), p).flexible:
            failures.append(f"Y3 not flexible at {p}")
    for n in (3, 4):
        e = make_dg_surface(n)
        delta, delta_p = (certify(d) for d in e.derivation_list(["delta", "delta_prime"]))
        extra = pushforward(flow_automorphism(delta, 1), delta_p)
        for _ in range(5):
            p = sample_point(e.algebra, rng, e.sample_var, e.sample_nonzero)
            if not flexibility_check([delta, delta_p, extra], p).flexible:
                failures.append(f"dg:{n} not flexible at {p}")
    report(7, "flexible points on Y3 and on the V_n ambient hypersurface (n=3,4)", failures)


def _distinct_points(rng, k):
    pts = set()
    while len(pts) < k:
        pts.add((random_rational(rng), random_rational(rng)))
    return sorted(pts)


def test_criterion_8_plane_transitivity():
    rng = random.Random(8)
    failures = []
    for i in range(50):
        k = rng.choice((1, 2, 3))
        src, dst = _distinct_points(rng, k), _distinct_points(rng, k)
        rng.shuffle(dst)
        program = plane_transitivity(src, dst, seed=i)
        if replay(program, src)[-1] != dst:
            failures.append(f"instance {i}")
    report(8, "50 seeded plane k-transitivity programs replay exactly", failures)


def test_criterion_9_jacobian_and_separation():
    e = make_dg_surface(3)
    rng = random.Random(9)
    failures = []
    for _ in range(5):
        p = sample_point(e.algebra, rng, e.sample_var, e.sample_nonzero)
        r, t = jacobian_rank(e.generators, p), len(tangent_space(e.algebra, p))
        if r != t:
            failures.append(f"rank {r} != {t} at {p}")
    pairs = []
    while len(pairs) < 5:
        p, q = (sample_point(e.algebra, rng, e.sample_var, e.sample_nonzero) for _ in range(2))
        if p != q:
            pairs.append((p, q))
    failures += [f"pair {r.p}, {r.q} not separated" for r in separates_points(e.generators, pairs) if not r.separated]
    report(9, "V3 generator family: Jacobian rank 3 and point separation", failures)


def test_criterion_10_parser():
    rng = random.Random(10)
    names = ("x", "y", "z", "t")
    failures = []
    for i in range(200):
        f = Polynomial(names, {
            tuple(rng.randint(0, 4) for _ in names): random_rational(rng) for _ in range(rng.randint(0, 6))
        })
        if parse_expression(str(f), names) != f:
            failures.append(f"round trip {i}: {f}")
    for expr in ("u^(2)", "2u", "1/0*u"):
        code, rep, _ = run_command(["flow", "--entry", "affine:2", "--element", expr])
        if code != 2 or "line 1, column" not in (rep.error or ""):
            failures.append(f"{expr!r} gave exit {code}")
    report(10, "parser round trip on 200 polynomials and positioned exit-2 diagnostics", failures)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
