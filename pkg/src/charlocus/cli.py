"""Command-line frontend.

Subcommands cover the Schur/torsion calculus (exact output, graded
lexicographic term order) and the numerical degree lab.  Exit codes:
0 success, 1 a verification suite reported failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import kernels as klab
from .charcalc import SchurIndex, projbundle_pushforward, schur_z2, sq1, twisted_sq1
from .graded import (
    DEFAULT_CAP,
    GradedPoly,
    InputError,
    TotalClass,
    Z2,
    expression_string,
    format_poly,
    projective_bundle,
    rp_ring,
    universal_sw_class,
    w_ring,
)
from .maps import Ball, builtin_map, complex_power_map
from .obstructions import feasibility_report, rp_tangent_class
from .parser import parse_class
from .torsion import q_class, torsion_polynomial, verify_615

PROG = "charlocus"


def _resolve_ring(spec: str, cap: int):
    kind, _, arg = spec.partition(":")
    if not arg or not arg.isdigit():
        raise InputError(f"bad ring spec {spec!r}; expected rp:N or formal:N")
    n = int(arg)
    if kind == "rp":
        return rp_ring(n)
    if kind == "formal":
        return w_ring(n, cap)
    raise InputError(f"unknown ring kind {kind!r}; expected rp:N or formal:N")


def _poly_payload(p: GradedPoly) -> dict:
    return {
        "terms": [
            {"coeff": c, "monomial": p.presentation.format_monomial(m)}
            for m, c in p.terms
        ],
        "expression": expression_string(p),
    }


def _emit(args, payload: dict, text_lines: list) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _twisted_payload(t) -> dict:
    return {"free": _poly_payload(t.free_part), "torsion": _poly_payload(t.torsion_part)}


def _twisted_lines(t) -> list:
    return [f"free part:    {format_poly(t.free_part)}",
            f"torsion part: {format_poly(t.torsion_part)}"]


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns the process exit code.


def _cmd_schur(args) -> int:
    idx = SchurIndex(args.ell, args.r)
    if args.expr is None:
        # universal ring: grow the cap so the class itself is never truncated
        ring = w_ring(max(args.ell + args.r - 1, 1), max(args.cap, idx.degree))
        total = universal_sw_class(ring)
    else:
        ring = _resolve_ring(args.ring or f"formal:{max(args.ell + args.r - 1, 1)}", args.cap)
        total = TotalClass.from_poly(parse_class(args.expr, ring, Z2))
    result = schur_z2(total, idx)
    payload = {"command": "schur",
               "inputs": {"ell": args.ell, "r": args.r, "class": args.expr,
                          "ring": args.ring},
               "result": _poly_payload(result)}
    _emit(args, payload, [f"schur(ell={args.ell}, r={args.r}) = {format_poly(result)}"])
    return 0


def _cmd_torsion(args) -> int:
    t = torsion_polynomial(args.ell, args.r)
    payload = {"command": "torsion", "inputs": {"ell": args.ell, "r": args.r},
               "result": _twisted_payload(t)}
    _emit(args, payload, [f"T(ell={args.ell}, r={args.r}):"] + _twisted_lines(t))
    return 0


def _cmd_qclass(args) -> int:
    t = q_class(args.ell, args.r)
    payload = {"command": "qclass", "inputs": {"ell": args.ell, "r": args.r},
               "result": _twisted_payload(t)}
    _emit(args, payload, [f"Q(ell={args.ell}, r={args.r}):"] + _twisted_lines(t))
    return 0


def _cmd_verify615(args) -> int:
    report = verify_615(args.max_ell, args.max_r)
    rows = [{"ell": row.ell, "r": row.r, "mod2": row.mod2_ok, "real": row.real_ok}
            for row in report.rows]
    verdict = "pass" if report.passed else "fail"
    payload = {"command": "verify615",
               "inputs": {"max_ell": args.max_ell, "max_r": args.max_r},
               "result": {"report": rows}, "verdict": verdict}
    lines = [
        f"(ell={row.ell}, r={row.r}): mod2 {'PASS' if row.mod2_ok else 'FAIL'}, "
        f"real {'PASS' if row.real_ok else 'FAIL'}"
        for row in report.rows
    ]
    lines.append(f"verify615: {verdict} ({len(rows)} cases)")
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def _cmd_pushforward(args) -> int:
    base = w_ring(args.rank, args.cap)
    w_total = TotalClass.from_poly(parse_class(args.wE, base, Z2))
    if w_total.rank() > args.rank:
        raise InputError(f"w(E) has components above rank {args.rank}")
    proj = projective_bundle(base, args.rank, w_total)
    x = parse_class(args.input, proj, Z2)
    result = projbundle_pushforward(x)
    payload = {"command": "pushforward",
               "inputs": {"rank": args.rank, "wE": args.wE, "input": args.input},
               "result": _poly_payload(result)}
    _emit(args, payload, [f"pushforward = {format_poly(result)}"])
    return 0


def _cmd_obstruct_rp(args) -> int:
    bundle = rp_tangent_class(args.n)
    ell = args.ell if args.ell is not None else max(1, args.sections - args.n)
    report = feasibility_report(bundle, args.sections, ell)
    payload = {"command": "obstruct-rp",
               "inputs": {"n": args.n, "sections": args.sections, "ell": ell},
               "result": _poly_payload(report.obstruction),
               "verdict": report.verdict}
    _emit(args, payload, [
        f"dependency class of {report.bundle} (m={args.sections}, ell={ell}, "
        f"degree {report.degree}): {format_poly(report.obstruction)}",
        f"verdict: {report.verdict}",
    ])
    return 0


def _cmd_sq1(args) -> int:
    ring = _resolve_ring(args.ring, args.cap)
    x = parse_class(args.input, ring, Z2)
    result = twisted_sq1(x) if args.twisted else sq1(x)
    op = "twisted_sq1" if args.twisted else "sq1"
    payload = {"command": "sq1",
               "inputs": {"ring": args.ring, "input": args.input, "twisted": args.twisted},
               "result": _poly_payload(result)}
    _emit(args, payload, [f"{op}({args.input}) = {format_poly(result)}"])
    return 0


def _cmd_degree(args) -> int:
    f = builtin_map(args.map, args.dim)
    est = klab.mapping_degree(f, args.resolution)
    rounded = est.rounded if est.reliable else None
    payload = {"command": "degree",
               "inputs": {"map": args.map, "dim": args.dim, "resolution": args.resolution},
               "result": {"raw": est.raw, "rounded": rounded,
                          "error_bound": est.error_bound, "resolution": est.resolution,
                          "reliable": est.reliable}}
    if est.reliable:
        lines = [f"degree({args.map}) = {est.rounded}  "
                 f"(raw {est.raw:.12g}, error bound {est.error_bound:.3g})"]
    else:
        lines = [f"degree({args.map}): unreliable "
                 f"(raw {est.raw:.12g}, error bound {est.error_bound:.3g}); no integer claimed"]
    _emit(args, payload, lines)
    return 0


def _well_conditioned(rng, n: int) -> np.ndarray:
    while True:
        a = rng.uniform(-1.0, 1.0, size=(n, n))
        if abs(np.linalg.det(a)) >= 0.3:
            return a


def _run_kernel_checks(max_n: int, tol: float) -> list:
    checks = []
    for n in range(2, max_n + 1):
        value = klab.lemma321_constant(n)
        checks.append((f"fiber constant n={n}", abs(value - 1.0) <= tol,
                       f"value {value:.12g}"))
    for n in (2, 3, max(4, min(8, max_n))):
        rep = klab.fiber_integral_check(None, n, tol)
        checks.append((f"fiber integral scale invariance n={n}", rep.passed,
                       f"spread {rep.scale_spread:.3g}"))
    rng = np.random.default_rng(20240612)
    for n in (2, 3):
        ok = True
        worst = ""
        for _ in range(20):
            rep = klab.orientation_sign_check(_well_conditioned(rng, n))
            if not rep.passed:
                ok = False
                worst = f"deg {rep.estimate.raw:.6g} vs sign {rep.det_sign}"
                break
        checks.append((f"orientation sign, 20 random {n}x{n}", ok, worst or "all match"))
    degree_ok = True
    detail = []
    for k in range(-3, 4):
        est = klab.mapping_degree(builtin_map(f"power:{k}", 1))
        if est.rounded != k or est.error_bound >= 0.01:
            degree_ok = False
        detail.append(f"z^{k}->{est.rounded}")
    checks.append(("circle degrees z^k, |k| <= 3", degree_ok, " ".join(detail)))
    square = complex_power_map(2, Ball(2))
    est = klab.divisor_multiplicity(square, (0.0, 0.0), 1.0)
    checks.append(("divisor multiplicity of z^2 at 0", est.reliable and est.rounded == 2,
                   f"rounded {est.rounded}"))
    return checks


def _cmd_kernel_checks(args) -> int:
    checks = _run_kernel_checks(args.max_n, args.tol)
    passed = all(ok for _, ok, _ in checks)
    payload = {"command": "kernel-checks",
               "inputs": {"max_n": args.max_n, "tol": args.tol},
               "result": {"report": [
                   {"check": name, "passed": ok, "detail": detail}
                   for name, ok, detail in checks]},
               "verdict": "pass" if passed else "fail"}
    lines = [f"{'PASS' if ok else 'FAIL'}  {name} ({detail})" for name, ok, detail in checks]
    lines.append(f"kernel-checks: {'pass' if passed else 'fail'} ({len(checks)} checks)")
    _emit(args, payload, lines)
    return 0 if passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON object")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="degree cap for free rings (default %(default)s)")

    top = argparse.ArgumentParser(prog=PROG, description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schur", parents=[common],
                       help="Schur determinant of a total class over Z2")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--class", dest="expr", default=None,
                   help="total class expression (default: universal 1+w1+w2+...)")
    p.add_argument("--ring", default=None, help="rp:N or formal:N")
    p.set_defaults(handler=_cmd_schur)

    p = sub.add_parser("torsion", parents=[common], help="torsion polynomial T(ell, r)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_cmd_torsion)

    p = sub.add_parser("qclass", parents=[common],
                       help="twisted-integer dependency class Q(ell, r)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_cmd_qclass)

    p = sub.add_parser("verify615", parents=[common],
                       help="brute-force check of the reduction identities")
    p.add_argument("--max-ell", type=int, default=5)
    p.add_argument("--max-r", type=int, default=9)
    p.set_defaults(handler=_cmd_verify615)

    p = sub.add_parser("pushforward", parents=[common],
                       help="projective-bundle fiber integration")
    p.add_argument("--rank", type=int, required=True, help="rank of E")
    p.add_argument("--wE", required=True, help="total class of E, e.g. '1 + w1 + w2'")
    p.add_argument("--input", required=True,
                   help="class on P(E) in the generators a, w1..wm")
    p.set_defaults(handler=_cmd_pushforward)

    p = sub.add_parser("obstruct-rp", parents=[common],
                       help="vector-field dependency obstruction on RP^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sections", type=int, required=True)
    p.add_argument("--ell", type=int, default=None)
    p.set_defaults(handler=_cmd_obstruct_rp)

    p = sub.add_parser("sq1", parents=[common], help="first Steenrod square")
    p.add_argument("--ring", required=True, help="rp:N or formal:N")
    p.add_argument("--input", required=True)
    p.add_argument("--twisted", action="store_true",
                   help="apply sq1 + w1 (the twisted Bockstein reduction)")
    p.set_defaults(handler=_cmd_sq1)

    p = sub.add_parser("degree", parents=[common], help="numerical mapping degree")
    p.add_argument("--map", required=True,
                   help="identity | conj | power:k | complex-square | reflect-y | linear:entries")
    p.add_argument("--dim", type=int, required=True, choices=(1, 2))
    p.add_argument("--resolution", type=int, default=None)
    p.set_defaults(handler=_cmd_degree)

    p = sub.add_parser("kernel-checks", parents=[common],
                       help="numerical identity verification suite")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(handler=_cmd_kernel_checks)

    return top


def run(argv) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.handler(args)
    except InputError as e:
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
