"""Command line front end.

Every command prints one JSON report on stdout.  Exit codes: 0 success,
1 verify-suite counterexample, 2 parse or input errors, 3 equation not of
the admissible shape, 4 geometric degeneracy (singular symbol, rank
defects, no workable probe).  Reports are byte-identical for identical
inputs and seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import COORDS, FIBER_COORDS, ParseError, parse_expr
from .integrals import (NO, VACUOUS, YES, distributions_of, is_first_integral,
                        is_intermediate_integral,
                        intermediate_integrals_via_distributions,
                        search_first_integrals)
from .jet import DEFAULT_SEED, DP11, DP22, D2, Distribution, JetPoint
from .mae import (NOT_MAE, FULLY_NONLINEAR_GOURSAT, QUASI_LINEAR, NotGoursat,
                  NotFullyDecomposable, NotMAE, ThirdOrderPDE, TrivialEquation,
                  TwoForm, build_ED, build_E_omega, check_recoverable,
                  decompose_orthogonal_triple, detect_goursat, kernel_in_c1,
                  probe_schedule, proportional_over_base, recover_distribution)
from .metasympl import (is_orthogonal_pair, is_threefold_orthogonal,
                        orthogonal_complement_pair)
from .samplers import (random_boillat, random_covector_pair,
                       random_distribution, rng_for)
from .symbol_cone import (InsufficientSamples, ZeroSymbol,
                          characteristic_lines, cone_sample,
                          is_strong_characteristic)


# -- report plumbing --------------------------------------------------------------


def _dump(args, payload) -> str:
    if args.pretty:
        return json.dumps(payload, sort_keys=True, indent=2)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _emit(args, command: str, results: dict, input_text: str,
          code: int = 0) -> int:
    digest = hashlib.sha256(input_text.encode("utf-8")).hexdigest()
    print(_dump(args, {"command": command, "input_sha256": digest,
                       "results": results, "seed": args.seed,
                       "version": __version__}))
    return code


def _fail(args, code: int, kind: str, err) -> int:
    print(_dump(args, {"command": getattr(args, "cmd", None),
                       "error": {"kind": kind, "message": str(err)},
                       "seed": getattr(args, "seed", None),
                       "version": __version__}))
    return code


def _num(v):
    # fractions stringify exactly; inexact roots stay floats
    return v if isinstance(v, float) else str(v)


def _point_json(pt: JetPoint) -> dict:
    return {name: str(v) for name, v in pt.values.items()}


def _fraction(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("booleans are not coordinate values")
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10 ** 12)
    raise ValueError(f"bad coordinate value {v!r}")


def _point_from_json(text: str, level=None) -> JetPoint:
    vals = {k: _fraction(v) for k, v in json.loads(text).items()}
    bad = sorted(set(vals) - set(COORDS))
    if bad:
        raise ValueError(f"unknown coordinates {', '.join(bad)}")
    lvl = 2 if any(k in FIBER_COORDS for k in vals) else 1
    if level is not None:
        if level < lvl:
            raise ValueError("the point carries coordinates above the "
                             "requested level")
        lvl = level
    return JetPoint.make(lvl, **vals)


def _equation(text: str):
    return ThirdOrderPDE.from_string(text).poly


# -- commands ---------------------------------------------------------------------


def cmd_classify(args) -> int:
    poly = _equation(args.equation)
    det = detect_goursat(poly, seed=args.seed, base=args.probe)
    results = {"input": args.equation, "class": det.kind,
               "mae": det.kind != NOT_MAE,
               "boillat": det.boillat.to_json() if det.boillat else None,
               "distributions": [], "orthogonal": None,
               "recoverable_probe": None, "notes": list(det.notes)}
    if det.kind == QUASI_LINEAR:
        dists, inexact = None, False
        try:
            triple = decompose_orthogonal_triple(poly, seed=args.seed,
                                                 base=args.probe)
            dists, inexact = triple.distributions, triple.inexact
        except (NotMAE, NotFullyDecomposable) as err:
            results["notes"].append(f"no full splitting: {err}")
            dists = (det.distribution,) + tuple(det.complements or ())
        results["distributions"] = [d.to_json() for d in dists]
        if len(dists) == 3 and not inexact:
            try:
                results["orthogonal"] = bool(is_threefold_orthogonal(*dists))
            except ValueError as err:
                results["notes"].append(f"orthogonality unchecked: {err}")
    elif det.kind == FULLY_NONLINEAR_GOURSAT:
        results["distributions"] = [det.distribution.to_json()]
    if det.kind != NOT_MAE:
        try:
            results["recoverable_probe"] = check_recoverable(
                poly, seed=args.seed, base=args.probe).ok
        except ValueError as err:
            results["notes"].append(f"recoverability unchecked: {err}")
    return _emit(args, "classify", results, args.equation,
                 code=3 if det.kind == NOT_MAE else 0)


def cmd_cone(args) -> int:
    poly = _equation(args.equation)
    samples = None
    if args.probes:
        raw = json.loads(args.probes)
        samples = [tuple(_fraction(v) for v in row) for row in raw]
    if args.point is not None:
        cs = cone_sample(poly, _point_from_json(args.point, level=1),
                         samples=samples, seed=args.seed)
    else:
        cs, errs = None, []
        for cand in probe_schedule(args.seed, first=args.probe):
            try:
                cs = cone_sample(poly, cand, samples=samples, seed=args.seed)
                break
            except (InsufficientSamples, ZeroSymbol) as err:
                errs.append(str(err))
        if cs is None:
            raise InsufficientSamples("; ".join(errs) or "no workable probe")
    lines = []
    for ln in cs.lines:
        strong = False
        if not ln.inexact:
            strong = is_strong_characteristic(poly, ln, cs.point)
        lines.append({"coords": [_num(c) for c in ln.coords],
                      "mult": ln.mult, "factor": ln.factor,
                      "inexact": ln.inexact, "strong": strong})
    results = {"input": args.equation, "point": _point_json(cs.point),
               "lines": lines,
               "linear_component": (cs.linear_component.to_json()
                                    if cs.linear_component else None),
               "components": [{"span": d.to_json(), "mult": m}
                              for d, m in cs.components],
               "notes": list(cs.notes)}
    return _emit(args, "cone", results, args.equation)


def _load_distribution(args) -> tuple:
    text = Path(args.distribution).read_text()
    return Distribution.from_json(json.loads(text), seed=args.seed), text


def cmd_build(args) -> int:
    span, text = _load_distribution(args)
    eq = build_ED(span)
    results = {"distribution": span.to_json(), "equation": str(eq.poly)}
    return _emit(args, "build", results, text)


def cmd_recover(args) -> int:
    poly = _equation(args.equation)
    rec = recover_distribution(poly, seed=args.seed, base=args.probe)
    results = {"input": args.equation,
               "distribution": rec.distribution.to_json(),
               "annihilators": [[str(v) for v in rho]
                                for rho in rec.annihilators],
               "delta": str(rec.delta), "pointwise": rec.pointwise,
               "rebuilt": str(build_ED(rec.distribution).poly),
               "notes": list(rec.notes)}
    return _emit(args, "recover", results, args.equation)


def cmd_orthogonal(args) -> int:
    span, text = _load_distribution(args)
    second, third = orthogonal_complement_pair(span)
    results = {"distribution": span.to_json(),
               "pair": [second.to_json(), third.to_json()],
               "orthogonal": bool(is_threefold_orthogonal(span, second,
                                                          third))}
    return _emit(args, "orthogonal", results, text)


def cmd_integrals(args) -> int:
    poly = _equation(args.equation)
    try:
        dists = distributions_of(poly, seed=args.seed)
    except (NotMAE, NotGoursat):
        dists = ()
    candidates = []
    for f_text in args.candidate or ():
        f = parse_expr(f_text)
        verdict = is_intermediate_integral(f, poly, seed=args.seed)
        via = None
        for idx, span in enumerate(dists):
            if is_first_integral(f, span):
                via = idx
                break
        candidates.append({"f": f_text, "verdict": verdict.kind,
                           "via_distribution": via})
    search = None
    if args.search_degree:
        seen, basis = set(), []
        for span in dists:
            for cand in search_first_integrals(span, args.search_degree):
                s = str(cand.f)
                if s not in seen:
                    seen.add(s)
                    basis.append(s)
        search = {"degree": args.search_degree, "basis": sorted(basis)}
    results = {"equation": args.equation, "candidates": candidates,
               "search": search}
    return _emit(args, "integrals", results, args.equation)


# -- verify suites ----------------------------------------------------------------


def _suite_roundtrip(seed: int, n: int) -> list:
    rng = rng_for("verify-roundtrip", seed)
    failures = []
    produced, attempts = 0, 0
    while produced < n and attempts < 20 * n:
        attempts += 1
        span = random_distribution(rng, vertical_rank=1)
        eq = build_ED(span)
        try:
            rec = recover_distribution(eq.poly, seed=seed)
        except ValueError as err:
            failures.append(f"case {produced}: no recovery from "
                            f"{eq.poly}: {err}")
            produced += 1
            continue
        got = rec.distribution
        if got.frame_rref() == span.frame_rref():
            produced += 1
            continue
        # two spans may share one determinant; the recovery then lands on
        # the partner span, which must pair orthogonally with the draw and
        # rebuild the same equation exactly -- anything else is a failure
        back = build_ED(got)
        if proportional_over_base(back.poly, eq.poly) \
                and is_orthogonal_pair(span, got):
            continue
        failures.append(f"case {produced}: span mismatch for {eq.poly}")
        produced += 1
    if produced < n:
        failures.append(f"only {produced}/{n} unambiguous draws")
    return failures


def _suite_orthogonality(seed: int, n: int) -> list:
    rng = rng_for("verify-orthogonality", seed)
    failures = []
    produced, attempts = 0, 0
    while produced < n and attempts < 80 * n:
        attempts += 1
        span = random_distribution(rng, vertical_rank=2)
        try:
            eq = build_ED(span)
            triple = decompose_orthogonal_triple(eq.poly, seed=seed)
        except (TrivialEquation, NotMAE, NotFullyDecomposable):
            continue
        if triple.inexact:
            continue
        produced += 1
        if not is_threefold_orthogonal(*triple.distributions):
            failures.append(f"case {produced}: non-orthogonal triple "
                            f"for {eq.poly}")
            continue
        for j, part in enumerate(triple.distributions):
            try:
                back = build_ED(part)
            except ValueError as err:
                failures.append(f"case {produced}: slot {j} rebuild "
                                f"failed: {err}")
                continue
            if not proportional_over_base(back.poly, eq.poly):
                failures.append(f"case {produced}: slot {j} rebuilds "
                                f"{back.poly}, not {eq.poly}")
    if produced < n:
        failures.append(f"only {produced}/{n} splittable draws")
    return failures


def _suite_strong_char(seed: int, n: int) -> list:
    rng = rng_for("verify-strong-char", seed)
    failures = []
    for i in range(n):
        eq = random_boillat(rng).reconstruct()
        try:
            rep = check_recoverable(eq, seed=seed, max_points=4)
        except ValueError as err:
            failures.append(f"case {i}: {eq}: {err}")
            continue
        if not rep.ok:
            _, ln = rep.witness
            failures.append(f"case {i}: weak line {ln} on {eq}")
    # control: an inadmissible equation must show a weak line
    poly = parse_expr("p111 + p112^2")
    pt = JetPoint.make(2, p111=Fraction(-1), p112=Fraction(1))
    exact = [ln for ln in characteristic_lines(poly, pt) if not ln.inexact]
    if exact and all(is_strong_characteristic(poly, ln, pt) for ln in exact):
        failures.append("control equation shows no weak line")
    return failures


def _suite_omega(seed: int, n: int) -> list:
    rng = rng_for("verify-omega", seed)
    failures = []
    for i in range(n):
        rho1, rho2 = random_covector_pair(rng)
        via_form = build_E_omega(TwoForm.from_wedge(rho1, rho2))
        via_span = build_ED(kernel_in_c1(rho1, rho2))
        if not proportional_over_base(via_form.poly, via_span.poly):
            failures.append(f"case {i}: {via_form.poly} is not proportional "
                            f"to {via_span.poly}")
    return failures


def _suite_integrals(seed: int, n: int) -> list:
    failures = []
    eq = parse_expr("p122")
    for text, want in (("p12", YES), ("x1", VACUOUS), ("p11", NO)):
        got = is_intermediate_integral(parse_expr(text), eq, seed=seed).kind
        if got != want:
            failures.append(f"{text} on p122: verdict {got}, want {want}")
    if not intermediate_integrals_via_distributions(parse_expr("p12"), eq,
                                                    seed=seed):
        failures.append("p12 rejected by the distribution route on p122")
    span = Distribution.make(D2, DP11, DP22)
    basis = {str(c.f) for c in search_first_integrals(span, 1)}
    if basis != {"x1", "p12"}:
        failures.append(f"degree-1 basis {sorted(basis)} differs "
                        f"from x1, p12")
    rng = rng_for("verify-integrals", seed)
    for i in range(n):
        span = random_distribution(rng, vertical_rank=1)
        found = search_first_integrals(span, 1)
        if not found:
            # degree bound too small for this draw; not a refutation
            continue
        eqd = build_ED(span)
        for cand in found:
            if not is_first_integral(cand.f, span):
                failures.append(f"case {i}: search returned the "
                                f"non-integral {cand.f}")
            elif not intermediate_integrals_via_distributions(
                    cand.f, eqd.poly, seed=seed):
                failures.append(f"case {i}: {cand.f} fails on {eqd.poly}")
    return failures


SUITES = {"roundtrip": _suite_roundtrip,
          "orthogonality": _suite_orthogonality,
          "strong-char": _suite_strong_char,
          "omega-restriction": _suite_omega,
          "integrals": _suite_integrals}


def cmd_verify(args) -> int:
    failures = SUITES[args.suite](args.seed, args.n_cases)
    results = {"suite": args.suite, "cases": args.n_cases,
               "ok": not failures, "failures": failures}
    return _emit(args, "verify", results,
                 f"{args.suite}:{args.seed}:{args.n_cases}",
                 code=1 if failures else 0)


# -- argument parsing -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="pretty", action="store_false",
                     default=False, help="compact JSON output (default)")
    out.add_argument("--pretty", dest="pretty", action="store_true",
                     help="indented JSON output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for probe schedules and random draws")
    common.add_argument("--probe-point", default=None, metavar="JSON",
                        help='preferred base point, e.g. \'{"x1": "1/2"}\'')

    parser = argparse.ArgumentParser(
        prog="mae3",
        description="Symbol cones, characteristic spans, and intermediate "
                    "integrals of third-order equations in two variables.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="normal-form class and characteristic spans")
    p.add_argument("equation")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cone", parents=[common],
                       help="characteristic lines over a base point")
    p.add_argument("equation")
    p.add_argument("--point", default=None, metavar="JSON",
                   help="exact level-1 base point, no fallback")
    p.add_argument("--probes", default=None, metavar="JSON",
                   help="explicit fiber probes as a list of 4-tuples")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("build", parents=[common],
                       help="equation of a rank-3 span")
    p.add_argument("--distribution", required=True, metavar="FILE",
                   help="JSON file with the generators")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("recover", parents=[common],
                       help="span of an equation from its cone")
    p.add_argument("equation")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("orthogonal", parents=[common],
                       help="orthogonal complement pair of a span")
    p.add_argument("--distribution", required=True, metavar="FILE")
    p.set_defaults(func=cmd_orthogonal)

    p = sub.add_parser("integrals", parents=[common],
                       help="intermediate integrals of an equation")
    p.add_argument("equation")
    p.add_argument("--candidate", action="append", metavar="EXPR",
                   help="candidate integral, repeatable")
    p.add_argument("--search-degree", type=int, default=0, metavar="N",
                   help="search for polynomial integrals up to degree N")
    p.set_defaults(func=cmd_integrals)

    p = sub.add_parser("verify", parents=[common],
                       help="seeded property suites")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--n-cases", type=int, default=25)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        args.probe = (_point_from_json(args.probe_point)
                      if args.probe_point else None)
        return args.func(args)
    except (ParseError, json.JSONDecodeError, OSError) as err:
        return _fail(args, 2, "parse", err)
    except NotMAE as err:
        return _fail(args, 3, "not-monge-ampere", err)
    except ValueError as err:
        return _fail(args, 4, "degenerate", err)


if __name__ == "__main__":
    raise SystemExit(main())
