"""``lndkit`` command line: verification subcommands over catalog entries or input files.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from ..catalog import (
    DG_WARNING,
    CatalogEntry,
    dg_relation_search,
    get_entry,
    list_entries,
    make_dg_surface,
    make_ym_surface,
)
from ..errors import (
    ArgumentError,
    CertificateRequired,
    GradingMismatch,
    NotAnAutomorphism,
    NotWellDefined,
    PointNotOnVariety,
)
from ..exactpoly import PolyContextError, Polynomial
from ..flexgeo import (
    PLANE,
    Point,
    divisor_tangency,
    flexibility_check,
    jacobian_rank,
    orbit_tangent,
    plane_transitivity,
    replay,
    sample_point,
    tangent_space,
    transversality_locus,
)
from ..fpalgebra import InconsistentPresentation, radical_membership
from ..invariants import (
    GeneratorFamily,
    appendix_determinant_closed_form,
    appendix_span,
    derksen_truncated,
    flow_coefficient,
    flow_shift,
    kernel_basis,
    ml_truncated,
    separates_points,
)
from ..linalg import rank
from ..lnd import (
    Equivariant,
    NilpotentWithBound,
    NotNilpotent,
    apply,
    certify,
    check_well_defined,
    exp_flow,
    flow_automorphism,
    nilpotency_certificate,
    weight_check,
)
from .document import DocumentError, load_document
from .dsl import ParseError, parse_expression, parse_rational
from .report import Report

TRUNCATION_NOTE = (
    "degree-truncated and derivation-sampled: certifies containment at this degree, "
    "not equality with the full invariant"
)


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(sp, entry: bool = True):
    if entry:
        sp.add_argument("input", nargs="?", help="JSON input document")
        sp.add_argument("--entry", help="catalog entry name, e.g. ym:3:2")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="lndkit", description="Exact checks for locally nilpotent derivations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    sp = sub.add_parser("check-lnd", help="well-definedness, nilpotency, gradings, identities")
    _common(sp)
    sp.add_argument("--derivations")
    sp.add_argument("--cap", type=int, default=64)

    sp = sub.add_parser("flow", help="exp(t*delta)(f)")
    _common(sp)
    sp.add_argument("--derivation")
    sp.add_argument("--element", required=True)
    sp.add_argument("--time")
    sp.add_argument("--cap", type=int, default=64)

    sp = sub.add_parser("kernel", help="degree-truncated kernel of one derivation")
    _common(sp)
    sp.add_argument("--derivation")
    sp.add_argument("--degree", type=int, required=True)

    for name, help_ in (("ml", "truncated Makar-Limanov intersection"),
                        ("derksen", "truncated Derksen subalgebra")):
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        sp.add_argument("--derivations")
        sp.add_argument("--degree", type=int, required=True)

    sp = sub.add_parser("flex", help="pointwise flexibility test")
    _common(sp)
    sp.add_argument("--derivations")
    sp.add_argument("--point", action="append", default=[])
    sp.add_argument("--samples", type=int, default=1)
    sp.add_argument("--enrich", action="append", default=[], help="NAME:TIME flow to push derivations along")
    sp.add_argument("--expect", choices=["flexible", "not-determined"])

    sp = sub.add_parser("tangency", help="classify a derivation against {g = 0}")
    _common(sp)
    sp.add_argument("--derivation")
    sp.add_argument("--function", required=True)

    sp = sub.add_parser("transversality", help="degeneracy locus of two derivations on a surface")
    _common(sp)
    sp.add_argument("--derivations")
    sp.add_argument("--locus", help="comma-separated functions expected to vanish on the locus")

    sp = sub.add_parser("separate", help="do the generators separate random point pairs")
    _common(sp)
    sp.add_argument("--pairs", type=int, default=5)

    sp = sub.add_parser("jacobian", help="rank of the generator map on tangent spaces")
    _common(sp)
    sp.add_argument("--point", action="append", default=[])
    sp.add_argument("--samples", type=int, default=1)

    sp = sub.add_parser("move-plane", help="flow program sending points of the plane to others")
    _common(sp, entry=False)
    sp.add_argument("--src", required=True, help="points as 'u,v;u,v;...'")
    sp.add_argument("--dst", required=True)

    sp = sub.add_parser("verify-appendix", help="V_n identities, flow and span determinant")
    _common(sp, entry=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ts")
    sp.add_argument("--cap", type=int, default=64)

    sp = sub.add_parser("verify-qhp", help="derivations on xy = z^m - 1")
    _common(sp, entry=False)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--cap", type=int, default=64)

    sp = sub.add_parser("catalog", help="catalog operations")
    _common(sp, entry=False)
    sp.add_argument("action", choices=["list"])
    return p


# -- helpers ---------------------------------------------------------------


def _load(args, report: Report) -> tuple[CatalogEntry, list]:
    if args.entry and args.input:
        raise UsageError("give either --entry or an input file, not both")
    if args.entry:
        entry, points = get_entry(args.entry), []
    elif args.input:
        entry, points = load_document(args.input)
    else:
        raise UsageError("an input file or --entry is required")
    report.entry = entry.name
    report.warnings.extend(entry.warnings)
    return entry, points


def _names(text: str | None) -> list[str] | None:
    return None if text is None else [s.strip() for s in text.split(",") if s.strip()]


def _one_derivation(entry: CatalogEntry, name: str | None):
    if name is None:
        if not entry.derivations:
            raise UsageError(f"{entry.name} has no derivations")
        name = next(iter(entry.derivations))
    return name, entry.derivation_list([name])[0]


def _parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(c) for c in text.split(","))


def _points(args, entry: CatalogEntry, doc_points, rng: random.Random) -> list[Point]:
    A = entry.algebra
    if args.point:
        return [Point(A, _parse_point(p)) for p in args.point]
    if doc_points:
        return [Point(A, p) for p in doc_points]
    return [sample_point(A, rng, entry.sample_var, entry.sample_nonzero) for _ in range(args.samples)]


def _describe(cert) -> str:
    if isinstance(cert, NilpotentWithBound):
        per = ", ".join(f"{v}:{i}" for v, i in cert.indices)
        return f"nilpotent on generators with bound {cert.bound} ({per})"
    if isinstance(cert, NotNilpotent):
        return (f"not nilpotent: delta^{cert.later}({cert.var}) = {cert.ratio} * "
                f"delta^{cert.earlier}({cert.var})")
    return f"unknown up to cap {cert.cap}"


def _lnd_checks(report: Report, name: str, delta, cap: int) -> bool:
    wd = check_well_defined(delta)
    report.add(f"{name} is well defined", wd, derivation=str(delta))
    if not wd:
        return False
    cert = nilpotency_certificate(delta, cap)
    ok = isinstance(cert, NilpotentWithBound)
    report.add(f"{name} is locally nilpotent (cap {cap})", ok, result=_describe(cert))
    return ok


# -- subcommands -------------------------------------------------------------


def cmd_check_lnd(args, report):
    entry, _ = _load(args, report)
    names = _names(args.derivations) or list(entry.derivations)
    for name, delta in zip(names, entry.derivation_list(names)):
        _lnd_checks(report, name, delta, args.cap)
        if entry.grading is not None:
            res = weight_check(delta, entry.grading)
            report.add(f"{name} is weight-equivariant mod {entry.grading.modulus}",
                       isinstance(res, Equivariant), result=str(res))
    for ident in entry.expected:
        delta = entry.derivations[ident.derivation]
        report.add(ident.label, ident.holds(entry),
                   computed=apply(delta, ident.argument), expected=ident.expected)


def cmd_flow(args, report):
    entry, _ = _load(args, report)
    name, delta = _one_derivation(entry, args.derivation)
    f = entry.algebra.element(parse_expression(args.element, entry.algebra.varnames))
    certify(delta, args.cap)
    flow = exp_flow(delta, f)
    details = {"element": f, "flow": str(flow), "degree_in_t": flow.degree}
    if args.time is not None:
        details["value_at_time"] = flow.evaluate(parse_rational(args.time))
    report.add(f"exp(t*{name}) computed", True, **details)


def cmd_kernel(args, report):
    entry, _ = _load(args, report)
    name, delta = _one_derivation(entry, args.derivation)
    check_well_defined(delta)
    K = kernel_basis(delta, args.degree)
    verified = all(apply(delta, e).is_zero() for e in K.elements())
    report.add(f"kernel of {name} up to degree {args.degree}", verified,
               dimension=K.dim, slice_dimension=len(K.ambient), basis=K.elements())


def cmd_ml(args, report):
    entry, _ = _load(args, report)
    ds = entry.derivation_list(_names(args.derivations))
    M = ml_truncated(ds, args.degree)
    in_kernels = all(apply(d, e).is_zero() for d in ds for e in M.elements())
    report.add(f"ML up to degree {args.degree}", in_kernels and M.contains(1),
               dimension=M.dim, trivial=M.dim == 1, basis=M.elements(), note=TRUNCATION_NOTE)


def cmd_derksen(args, report):
    entry, _ = _load(args, report)
    ds = entry.derivation_list(_names(args.derivations))
    D = derksen_truncated(ds, args.degree)
    report.add(f"Derksen subalgebra up to degree {args.degree}", D.contains(1),
               dimension=D.dim, slice_dimension=len(D.ambient), full_slice=D.is_full(),
               basis=D.elements(), note=TRUNCATION_NOTE)


def _enrichments(specs, entry):
    out = []
    for spec in specs:
        name, _, t = spec.partition(":")
        delta = certify(entry.derivation_list([name])[0])
        out.append(flow_automorphism(delta, parse_rational(t or "1")))
    return out


def cmd_flex(args, report):
    entry, doc_points = _load(args, report)
    ds = entry.derivation_list(_names(args.derivations))
    enrich = _enrichments(args.enrich, entry)
    for p in _points(args, entry, doc_points, random.Random(args.seed)):
        rep = flexibility_check(ds, p, enrich)
        passed = None
        if args.expect == "flexible":
            passed = rep.flexible
        elif args.expect == "not-determined":
            passed = not rep.flexible
        report.add(f"flexibility at {p}", passed, verdict=rep.verdict, tangent_dim=rep.tangent_dim,
                   orbit_span_dim=rep.orbit_span_dim, vectors=[list(v) for v in rep.vectors])


def cmd_tangency(args, report):
    entry, _ = _load(args, report)
    name, delta = _one_derivation(entry, args.derivation)
    g = parse_expression(args.function, entry.algebra.varnames)
    res = divisor_tangency(delta, g)
    report.add(f"{name} against {{{g} = 0}}", True, result=type(res).__name__,
               image=getattr(res, "image", entry.algebra.zero()))


def _transversality(report, ds, locus):
    rep = transversality_locus(ds, locus)
    for f, ok in zip(rep.locus_functions, rep.in_radical):
        report.add(f"{f} vanishes where the orbit vectors are dependent", ok,
                   minors=list(rep.minors))
    return rep


def cmd_transversality(args, report):
    entry, _ = _load(args, report)
    names = _names(args.derivations) or list(entry.derivations)[:2]
    ds = entry.derivation_list(names)
    locus = None
    if args.locus:
        locus = [parse_expression(s, entry.algebra.varnames) for s in args.locus.split(",")]
    rep = _transversality(report, ds, locus)
    report.add("degeneracy locus is empty", None, empty=rep.empty_locus)


def cmd_separate(args, report):
    entry, doc_points = _load(args, report)
    A = entry.algebra
    F = entry.generators or GeneratorFamily.of({v: A.gen(v) for v in A.varnames})
    rng = random.Random(args.seed)
    pairs = []
    while len(pairs) < args.pairs:
        p = sample_point(A, rng, entry.sample_var, entry.sample_nonzero)
        q = sample_point(A, rng, entry.sample_var, entry.sample_nonzero)
        if p != q:
            pairs.append((p, q))
    for res in separates_points(F, pairs):
        report.add(f"separate {Point(A, res.p)} and {Point(A, res.q)}", res.separated, witness=res.witness)


def cmd_jacobian(args, report):
    entry, doc_points = _load(args, report)
    A = entry.algebra
    F = entry.generators or GeneratorFamily.of({v: A.gen(v) for v in A.varnames})
    for p in _points(args, entry, doc_points, random.Random(args.seed)):
        r = jacobian_rank(F, p)
        t = len(tangent_space(A, p))
        report.add(f"generator differentials at {p} are injective on the tangent space", r == t,
                   jacobian_rank=r, tangent_dim=t, family=list(F.names))


def _point_list(text: str):
    return [_parse_point(s) for s in text.split(";") if s.strip()]


def cmd_move_plane(args, report):
    src, dst = _point_list(args.src), _point_list(args.dst)
    program = plane_transitivity(src, dst, seed=args.seed)
    history = replay(program, src)
    report.entry = "affine:2"
    report.add("flow program replays src onto dst", history[-1] == [tuple(p) for p in dst],
               steps=[str(s) for s in program],
               trajectory=["; ".join(str(Point(PLANE, c)) for c in h) for h in history])


def cmd_verify_appendix(args, report):
    n = args.n
    entry = make_dg_surface(n)
    b = n - 1
    report.entry = entry.name
    report.warnings.append(DG_WARNING)
    ts = [parse_rational(t) for t in args.ts.split(",")] if args.ts else list(range(1, b + 2))

    hits = dg_relation_search(n)
    report.add("ambient relation is the unique consistent candidate", hits == [(b, 1, 1)],
               candidates=[f"a1*a4 - a2^{p}*a3^{q} - {c}" for p, q, c in hits])
    for name in ("delta", "delta_prime"):
        _lnd_checks(report, name, entry.derivations[name], args.cap)
    for ident in entry.expected:
        delta = entry.derivations[ident.derivation]
        report.add(ident.label, ident.holds(entry), computed=apply(delta, ident.argument),
                   expected=ident.expected)

    delta = certify(entry.derivations["delta"], args.cap)
    y = entry.generators["y"]
    flow = exp_flow(delta, y)
    report.add(f"exp(t*delta)(y) has degree b+1 = {b + 1} in t", flow.degree == b + 1, flow=str(flow))
    A = entry.algebra
    xs = [entry.generators[f"x{k}"] for k in range(b + 1)]
    expected = [y, 1 + n * xs[0]] + [flow_coefficient(n, k) * xs[k] for k in range(1, b + 1)]
    report.add("flow coefficients equal n*b!/((b-k)!(k+1)!) * x_k", list(flow.coefficients) == expected,
               coefficients=[f"t^{k+1}: {flow_coefficient(n, k)} * x{k}" for k in range(b + 1)])
    report.add("shifted flows p_t = exp(t*delta)(y) - y - t", None,
               **{f"p_{t}": flow_shift(n, t) for t in ts})

    try:
        res = appendix_span(n, ts)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from exc
    closed = appendix_determinant_closed_form(n, ts)
    report.add("p_t span x_0..x_b (nonzero determinant)", res.det != 0,
               matrix=[" ".join(str(c) for c in row) for row in res.matrix], det=res.det)
    report.add("determinant matches prod(coefficients)*prod(t)*Vandermonde", res.det == closed,
               closed_form=closed)


def cmd_verify_qhp(args, report):
    entry = make_ym_surface(args.m, args.j)
    report.entry = entry.name
    A = entry.algebra
    ds = entry.derivation_list(["delta1", "delta2"])
    for name, delta in zip(("delta1", "delta2"), ds):
        if _lnd_checks(report, name, delta, args.cap):
            res = weight_check(delta, entry.grading)
            report.add(f"{name} is equivariant for weights (1, -1, {args.j}) mod {args.m}",
                       isinstance(res, Equivariant), result=str(res))
    x, y, z = A.gens()
    _transversality(report, ds, [x, y])

    images = [im for d in ds for im in d.images if not im.is_zero()]
    report.add("common zeros of delta1, delta2 lie in {x = y = 0}", None,
               x=radical_membership(x, A, images), y=radical_membership(y, A, images))
    rep = transversality_locus(ds, [x * y * z])
    report.add("x*y*z vanishes where the orbit vectors are dependent", None, result=rep.in_radical[0])
    probe = Point(A, (1, -1, 0))
    vecs = [orbit_tangent(d, probe) for d in ds]
    report.add(f"orbit vectors at {probe}", None, vectors=[list(v) for v in vecs], rank=rank(vecs))


def cmd_catalog(args, report):
    for name, desc in list_entries():
        report.add(name, None, description=desc)


HANDLERS = {
    "check-lnd": cmd_check_lnd,
    "flow": cmd_flow,
    "kernel": cmd_kernel,
    "ml": cmd_ml,
    "derksen": cmd_derksen,
    "flex": cmd_flex,
    "tangency": cmd_tangency,
    "transversality": cmd_transversality,
    "separate": cmd_separate,
    "jacobian": cmd_jacobian,
    "move-plane": cmd_move_plane,
    "verify-appendix": cmd_verify_appendix,
    "verify-qhp": cmd_verify_qhp,
    "catalog": cmd_catalog,
}

INPUT_ERRORS = (UsageError, DocumentError, ParseError, ArgumentError, PointNotOnVariety,
                PolyContextError, InconsistentPresentation, GradingMismatch, NotAnAutomorphism)


def run_command(argv) -> tuple[int, Report, str]:
    argv = list(argv)
    fmt = "json" if "json" in argv and "--format" in argv else "text"
    report = Report(command=["lndkit", *argv])
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        report.error = f"usage: {exc}"
        return report.exit_code, report, fmt
    fmt = args.format
    report.seed = args.seed
    try:
        HANDLERS[args.command](args, report)
    except INPUT_ERRORS as exc:
        report.checks.clear()
        report.error = f"{type(exc).__name__}: {exc}"
    except (CertificateRequired, NotWellDefined) as exc:
        report.add("precondition", False, error=f"{type(exc).__name__}: {exc}")
    return report.exit_code, report, fmt


def main(argv=None) -> int:
    code, report, fmt = run_command(sys.argv[1:] if argv is None else argv)
    print(report.render(fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
