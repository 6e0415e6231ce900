"""Batch command-line front end: operator dumps, solvers, verification reports.

All reports are self-describing JSON with a schema_version field; the canonical
term orders of the algebra layer make the output byte-stable, so golden-file
tests can pin the rendering.  Exit codes: 0 all-match, 1 mathematical mismatch,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import branching, realize, verma
from .coeff import format_rational
from .lie import Character, structured_basis
from .weyl import PolyVector

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _parse_lambda(text: str, n: int) -> Character:
    if text.strip() == "generic":
        return Character.generic(n)
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--lambda expects 'generic' or 'q1,q2', got {text!r}")
    try:
        v1, v2 = Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational in --lambda: {exc}") from exc
    return Character.of(n, v1, v2)


def _require_rational(lam: Character, what: str) -> Character:
    if lam.is_generic():
        raise UsageError(f"{what} needs a rational lambda, not 'generic'")
    return lam


def _thread_count() -> int:
    raw = os.environ.get("HEISENVERMA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _lambda_json(lam: Character) -> list[str]:
    return [str(lam.lam1), str(lam.lam2)]


# -- commands -----------------------------------------------------------------


def cmd_realize(args) -> tuple[dict, int]:
    lam = _parse_lambda(args.lam, args.n)
    real = realize.realization_for(args.n, lam)
    table = []
    for x in structured_basis(args.n):
        table.append(
            {
                "element": x.to_json(),
                "pi": real.pi(x).to_json(),
                "pi_hat": real.pi_hat(x).to_json(),
                "pi_text": str(real.pi(x)),
                "pi_hat_text": str(real.pi_hat(x)),
            }
        )
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "realize",
        "n": args.n,
        "lambda": _lambda_json(lam),
        "operators": table,
    }
    if args.n < 3:
        report["warning"] = (
            f"n={args.n} < 3: classification (classify/verify) requires n - r > 2"
        )
    return report, EXIT_OK


def cmd_solve(args) -> tuple[dict, int]:
    lam = _require_rational(_parse_lambda(args.lam, args.n), "solve")
    if not 0 <= args.r < args.n:
        raise UsageError(f"r={args.r} out of range for n={args.n}")
    ts = [args.t] if args.t is not None else branching.admissible_t(args.n, args.r, args.m)
    slices = []
    for t in ts:
        basis = branching.brute_force_solve(lam, args.n, args.r, args.m, t)
        slices.append(
            {
                "m": args.m,
                "t": t,
                "dim": len(basis),
                "basis": [p.to_json() for p in basis],
                "basis_text": [str(p) for p in basis],
            }
        )
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "solve",
        "n": args.n,
        "r": args.r,
        "lambda": _lambda_json(lam),
        "slices": slices,
    }
    return report, EXIT_OK


def cmd_classify(args) -> tuple[dict, int]:
    lam = _require_rational(_parse_lambda(args.lam, args.n), "classify")
    try:
        comps = branching.enumerate_components(lam, args.n, args.r, args.m_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    per_slice: dict[tuple[int, int], int] = {}
    for c in comps:
        per_slice[(c.m, c.t)] = per_slice.get((c.m, c.t), 0) + c.dimension()
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "n": args.n,
        "r": args.r,
        "lambda": _lambda_json(lam),
        "m_max": args.m_max,
        "components": [c.to_json() for c in comps],
        "predicted_slice_dims": [
            {"m": m, "t": t, "dim": d} for (m, t), d in sorted(per_slice.items())
        ],
    }
    return report, EXIT_OK


def _examples_report(n: int, r: int, lam: Character) -> list[dict]:
    out = []
    if r == 0:
        lam1, lam2 = lam.evaluated()
        if lam1 + lam2 + n == 0:
            v = verma.example_r0_degree2(n, lam)
            out.append(
                {
                    "name": "degree2",
                    "vector": str(v),
                    "singular": verma.is_singular(v, 0),
                }
            )
        if lam1 + lam2 + n == 1:
            v = verma.example_r0_degree4(n, lam)
            out.append(
                {
                    "name": "degree4",
                    "vector": str(v),
                    "singular": verma.is_singular(v, 0),
                }
            )
    if r == 1 and n > 3:
        for a in (0, 1, 2):
            for name, v in verma.examples_r1(n, lam, a).items():
                out.append(
                    {
                        "name": f"r1 {name} a={a}",
                        "vector": str(v),
                        "singular": verma.is_singular(v, 1),
                    }
                )
    return out


def cmd_verify(args) -> tuple[dict, int]:
    lam = _require_rational(_parse_lambda(args.lam, args.n), "verify")
    if args.n - args.r <= 2:
        raise UsageError(
            f"verify rejected: n - r = {args.n - args.r} <= 2 "
            "(the isotypical classification needs n - r > 2)"
        )
    hom_pi_hat = realize.homomorphism_failures(args.n, "pi_hat")
    hom_pi = realize.homomorphism_failures(args.n, "pi")
    fourier_bad = realize.fourier_match_failures(args.n)
    slice_report = branching.verify_slices(
        lam, args.n, args.r, args.m_max, max_workers=_thread_count()
    )
    examples = _examples_report(args.n, args.r, lam)
    ok = (
        not hom_pi_hat
        and not hom_pi
        and not fourier_bad
        and slice_report["ok"]
        and all(e["singular"] for e in examples)
    )
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "n": args.n,
        "r": args.r,
        "lambda": _lambda_json(lam),
        "m_max": args.m_max,
        "homomorphism": {
            "pi_failures": [str(x) for pair in hom_pi for x in pair],
            "pi_hat_failures": [str(x) for pair in hom_pi_hat for x in pair],
            "fourier_failures": [str(x) for x in fourier_bad],
        },
        "slices": slice_report["slices"],
        "components": slice_report["components"],
        "examples": examples,
        "ok": ok,
    }
    if not ok:
        report["mismatches"] = [
            {"m": s["m"], "t": s["t"], "oracle_dim": s["oracle_dim"], "predicted_dim": s["predicted_dim"]}
            for s in slice_report["slices"]
            if not s["match"]
        ]
    return report, EXIT_OK if ok else EXIT_MISMATCH


def cmd_examples(args) -> tuple[dict, int]:
    checks = []
    n = args.n
    # r = 0 families at weights satisfying their conditions
    lam2deg = Character.of(n, -1, 1 - n)
    checks += [dict(e, r=0, **{"lambda": _lambda_json(lam2deg)}) for e in _examples_report(n, 0, lam2deg)]
    lam4deg = Character.of(n, 0, 1 - n)
    checks += [dict(e, r=0, **{"lambda": _lambda_json(lam4deg)}) for e in _examples_report(n, 0, lam4deg)]
    vv = verma.example_r0_vector_valued(n)
    checks.append(
        {
            "name": "vector-valued f1 gn",
            "vector": str(vv),
            "singular": verma.is_singular(vv, 0),
            "r": 0,
            "lambda": ["0", "0"],
        }
    )
    if n > 3:
        lam = _parse_lambda(args.lam, n)
        checks += [dict(e, r=1, **{"lambda": _lambda_json(lam)}) for e in _examples_report(n, 1, lam)]
    ok = all(c["singular"] for c in checks)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "examples",
        "n": n,
        "checks": checks,
        "ok": ok,
    }
    return report, EXIT_OK if ok else EXIT_MISMATCH


def cmd_conjecture(args) -> tuple[dict, int]:
    n, a = args.n, args.a
    if args.lam == "generic":
        lam = Character.of(n, 0, a - 1 - n)
    else:
        lam = _require_rational(_parse_lambda(args.lam, n), "conjecture")
    lam1, lam2 = lam.evaluated()
    if lam1 + lam2 + n != a - 1:
        raise UsageError(
            f"conjecture needs lambda1 + lambda2 + n = a - 1, got {lam1 + lam2 + n} != {a - 1}"
        )
    v = verma.factorization_product(n, lam, a)
    verdict = verma.is_singular(v, 0)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "conjecture",
        "n": n,
        "a": a,
        "lambda": _lambda_json(lam),
        "verdict": verdict,
        "vector": str(v),
        "vector_terms": v.to_json(),
    }
    # a false verdict is data, not a build failure
    return report, EXIT_OK


# -- rendering ------------------------------------------------------------------


def _render_text(report: dict) -> str:
    cmd = report["command"]
    lines = [f"[{cmd}] schema_version={report['schema_version']}"]
    if cmd == "realize":
        if "warning" in report:
            lines.append(f"warning: {report['warning']}")
        for entry in report["operators"]:
            el = entry["element"]
            name = el["kind"] + str(el.get("i", ""))
            lines.append(f"pi({name})     = {entry['pi_text']}")
            lines.append(f"pi_hat({name}) = {entry['pi_hat_text']}")
    elif cmd == "solve":
        for s in report["slices"]:
            lines.append(f"slice m={s['m']} t={s['t']}: dim {s['dim']}")
            for b in s["basis_text"]:
                lines.append(f"  {b}")
    elif cmd == "classify":
        for c in report["components"]:
            lines.append(
                f"V({c['a0']},{c['b0']},{c['c0']},{c['d0']}) {c['case']} "
                f"m={c['m']} t={c['t']} dim={c['dimension']}"
            )
        for s in report["predicted_slice_dims"]:
            lines.append(f"slice m={s['m']} t={s['t']}: predicted dim {s['dim']}")
    elif cmd == "verify":
        for s in report["slices"]:
            mark = "ok" if s["match"] else "MISMATCH"
            lines.append(
                f"slice m={s['m']} t={s['t']}: oracle {s['oracle_dim']} "
                f"predicted {s['predicted_dim']} [{mark}]"
            )
        for e in report["examples"]:
            lines.append(f"example {e['name']}: {'ok' if e['singular'] else 'FAIL'}")
        lines.append(f"overall: {'ok' if report['ok'] else 'MISMATCH'}")
    elif cmd == "examples":
        for e in report["checks"]:
            lines.append(f"{e['name']} (r={e['r']}): {'ok' if e['singular'] else 'FAIL'}")
        lines.append(f"overall: {'ok' if report['ok'] else 'MISMATCH'}")
    elif cmd == "conjecture":
        lines.append(f"a={report['a']} lambda={report['lambda']}")
        lines.append(f"verdict: {report['verdict']}")
        lines.append(f"vector: {report['vector']}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, args) -> None:
    if args.format == "json":
        payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        payload = _render_text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisenverma",
        description="Exact singular-vector computations for sl(n+2) generalized Verma modules",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_r=True):
        p.add_argument("--n", type=int, required=True, help="rank parameter (g = sl(n+2))")
        if with_r:
            p.add_argument("--r", type=int, default=0, help="subalgebra drop (g' = sl(n-r+2))")
        p.add_argument("--lambda", dest="lam", default="generic", help="'generic' or 'q1,q2'")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", default=None, help="write the report to this path")

    p = sub.add_parser("realize", help="dump the operator tables on both sides")
    common(p, with_r=False)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("solve", help="brute-force kernel basis at one graded slice")
    common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="enumerate components and predicted dimensions")
    common(p)
    p.add_argument("--m-max", dest="m_max", type=int, default=4)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="certify operators and cross-validate the classification")
    common(p)
    p.add_argument("--m-max", dest="m_max", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", help="check the explicit low-degree singular vectors")
    common(p)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("conjecture", help="test the ordered factorization product")
    common(p)
    p.add_argument("--a", type=int, required=True, help="number of quadratic factors")
    p.set_defaults(func=cmd_conjecture)
    return parser


def _join_value_flags(argv: list[str]) -> list[str]:
    """Fold '--lambda -1,-2' into '--lambda=-1,-2' so negatives survive argparse."""
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg == "--lambda" and i + 1 < len(argv):
            out.append(f"--lambda={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_value_flags(list(argv)))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
