"""Command-line entry point.

Exit codes: 0 = all verdicts PASS, 1 = a verdict FAILED, 2 = rejected input
(precondition violation, incompatible modulus, exceeded budget, bad usage).

All numeric output is exact (ints, or rationals rendered as strings) except
the Monte Carlo sweep, whose estimates carry Wilson confidence intervals.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chains import Chain, ModRing, dump_json
from .cones import OrderedBasis, cone, cone_size_bound, small_generators
from .errors import BudgetError, PreconditionError, QgrassError
from .homology import cohomology_dims, homology_dims, homology_structure, spans_kernel

EXIT_PASS, EXIT_FAIL, EXIT_REJECT = 0, 1, 2


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj: dict) -> None:
    _write(getattr(args, "out", None), dump_json(obj) + "\n")


def _is_prime(x: int) -> bool:
    return x >= 2 and all(x % d for d in range(2, int(x**0.5) + 1))


def cmd_homology(args) -> int:
    if args.cohomology:
        report = cohomology_dims(args.n, args.q, args.mod)
    elif _is_prime(args.mod):
        report = homology_dims(args.n, args.q, args.mod)
    else:
        report = homology_structure(args.n, args.q, args.mod)
    _emit_json(args, report.to_json())
    return EXIT_PASS if report.vanishing_pattern_ok() else EXIT_FAIL


def cmd_cone_check(args) -> int:
    import random

    from .cones import cone_identity_defect
    from .subspace import enumerate_grassmannian

    rng = random.Random(args.seed)
    ring = ModRing(args.mod)
    basis = OrderedBasis.standard(args.n, args.q)
    levels = [k for k in range(0, args.n) if 2 * k + 1 <= args.n]
    out_levels = []
    ok_all = True
    for k in levels:
        faces = enumerate_grassmannian(args.n, k, args.q)
        bound = cone_size_bound(k, args.q)
        worst = 0
        ok = True
        for _ in range(args.trials):
            supp = rng.sample(faces, min(len(faces), rng.randrange(1, 6)))
            x = Chain.build(args.n, k, args.mod, args.q,
                            [(u, rng.randrange(1, args.mod)) for u in supp])
            ok &= cone_identity_defect(basis, x, ring, args.variant).is_zero()
            worst = max(worst, max((cone(basis, Chain.generator(u, args.mod), ring,
                                         variant=args.variant).support_size()
                                    for u in supp), default=0))
        ok_all &= ok and worst <= bound
        out_levels.append({"level": k, "identity": "PASS" if ok else "FAIL",
                           "max_size": worst, "size_bound": bound})
    payload = {"n": args.n, "q": args.q, "mod": args.mod, "variant": args.variant,
               "levels": out_levels,
               "verdict": "PASS" if ok_all else "FAIL"}
    if args.dump:
        faces = enumerate_grassmannian(args.n, min(1, args.n // 2), args.q)
        x = Chain.generator(faces[0], args.mod)
        payload["evaluation"] = {
            "basis": [list(v) for v in basis.vectors],
            "input": x.to_json(),
            "variant": args.variant,
            "output": cone(basis, x, ring, variant=args.variant).to_json(),
        }
    _emit_json(args, payload)
    return EXIT_PASS if ok_all else EXIT_FAIL


def cmd_small_generators(args) -> int:
    gens = small_generators(args.n, args.k, args.q, args.mod)
    spans = spans_kernel([g.chain for g in gens], args.n, args.k, args.q, args.mod)
    ok = spans and all(g.support_span.dim <= 2 * args.k for g in gens)
    payload = {
        "n": args.n, "k": args.k, "q": args.q, "mod": args.mod,
        "count": len(gens),
        "max_support_span": max(g.support_span.dim for g in gens),
        "spans_kernel": spans,
        "verdict": "PASS" if ok else "FAIL",
    }
    if args.full:
        payload["generators"] = [g.chain.to_json() for g in gens]
    _emit_json(args, payload)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_eta(args) -> int:
    from .chains import boundary
    from .special import eta_explicit, eta_recursive

    checks = args.check.split(",") if args.check else ["recursive"]
    ring = ModRing(args.mod)
    payload = {"n": args.n, "q": args.q, "mod": args.mod}
    ok = True
    rec = exp = None
    if "recursive" in checks or "boundary" in checks:
        rec = eta_recursive(args.n, args.q, args.mod)
        payload["recursive"] = rec.to_json()
    if "explicit" in checks:
        exp = eta_explicit(args.n, args.q, args.mod)
        payload["explicit_support"] = exp.support_size()
        if rec is not None:
            agree = rec == exp
            payload["explicit_equals_recursive"] = agree
            ok &= agree
    if "boundary" in checks:
        closed = boundary(rec, ring).is_zero()
        payload["boundary_zero"] = closed
        ok &= closed
    payload["verdict"] = "PASS" if ok else "FAIL"
    _emit_json(args, payload)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_psi(args) -> int:
    from .chains import boundary
    from .special import pairing_check, psi

    ring = ModRing(args.mod)
    chain = psi(args.n, args.q, args.mod)
    payload = {"n": args.n, "q": args.q, "mod": args.mod,
               "support": chain.support_size(),
               "boundary_zero": boundary(chain, ring).is_zero(),
               "chain": chain.to_json()}
    ok = payload["boundary_zero"]
    if args.pairing:
        rep = pairing_check(args.n, args.q, args.mod)
        payload["pairing"] = {
            "value": rep.value,
            "is_unit": rep.is_unit(),
            "common_support": [u.to_json() for u in rep.common_support],
            "reference_sign": rep.reference_sign,
        }
        ok &= rep.is_unit() and len(rep.common_support) == 1
    payload["verdict"] = "PASS" if ok else "FAIL"
    _emit_json(args, payload)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_expansion(args) -> int:
    from .expansion import expansion_constant

    if not args.exact:
        raise PreconditionError("only --exact mode is implemented; pass --exact")
    rep = expansion_constant(args.n, args.k, args.q, args.mod)
    payload = rep.to_json()
    _emit_json(args, payload)
    return EXIT_PASS if payload["verdict"] == "PASS" else EXIT_FAIL


def cmd_gtable(args) -> int:
    from .expansion import enumerate_minimal_connected

    table = enumerate_minimal_connected(args.n, args.k, args.q, args.mod,
                                        args.max_size)
    lines = [f"# theta_cutoff={table.theta_cutoff}", "m,theta,count"]
    for s, th, c in table.rows():
        lines.append(f"{s},{th},{c}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_PASS if not table.offenders() else EXIT_FAIL


def cmd_indcomplex(args) -> int:
    from .indcomplex import (
        Face,
        independence_complex,
        local_sparsity,
        standard_basis_lines,
        verify_cone_identity,
    )

    ic = independence_complex(args.n, args.kmax, args.q)
    basis = standard_basis_lines(ic)
    cone_levels = [k for k in range(0, args.kmax + 1) if k < args.n / 2]
    cone_ok = all(
        verify_cone_identity(ic, f, basis)
        for k in cone_levels
        for f in ([Face()] if k == 0 else ic.faces[k])
    )
    sparsity = [local_sparsity(args.n, k, args.q).__dict__
                for k in range(1, args.kmax + 1)]
    payload = {
        "n": args.n, "q": args.q, "k_max": args.kmax,
        "face_counts_formula": [ic.face_count_formula(k) for k in range(args.kmax + 1)],
        "face_counts_sets": [ic.face_count_sets(k) for k in range(args.kmax + 1)],
        "cone_identity_levels": cone_levels,
        "cone_identity": "PASS" if cone_ok else "FAIL",
        "sparsity": [
            {"k": row["k"], "max_intersecting": row["max_intersecting"],
             "bound": row["bound"], "denominator": row["denominator"]}
            for row in sparsity
        ],
        "verdict": "PASS" if cone_ok and all(r["max_intersecting"] <= r["bound"]
                                             for r in sparsity) else "FAIL",
    }
    _emit_json(args, payload)
    return EXIT_PASS if payload["verdict"] == "PASS" else EXIT_FAIL


def _parse_grid(text: str) -> list[float]:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise PreconditionError(f"bad grid {text!r}; want lo:hi:step") from exc
    if step <= 0 or not (0 <= lo <= hi <= 1):
        raise PreconditionError("grid must satisfy 0 <= lo <= hi <= 1, step > 0")
    out = []
    v = lo
    while v <= hi + 1e-12:
        out.append(round(v, 10))
        v += step
    return out


def cmd_lm_sweep(args) -> int:
    from .randmodel import threshold_sweep

    sweep = threshold_sweep(args.n, args.k, args.q, _parse_grid(args.grid),
                            args.trials, args.seed, args.coef)
    _write(args.out, sweep.to_csv())
    return EXIT_PASS


def cmd_repro(args) -> int:
    from .acceptance import run_all

    results = run_all()
    failed = [r for r in results if not (r.passed and r.within_budget)]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_PASS if not failed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgrass",
        description="Exact workbench for subspace complexes over finite fields")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker count; all algorithms are deterministic, "
                             "so results never depend on it")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=False, mod=True):
        p.add_argument("--n", type=int, required=True)
        if k:
            p.add_argument("--k", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        if mod:
            p.add_argument("--mod", type=int, required=True)
        p.add_argument("--out", default=None)

    p = sub.add_parser("homology", help="homology/cohomology dimensions")
    common(p)
    p.add_argument("--cohomology", action="store_true")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("cone-check", help="verify the cone identity")
    common(p)
    p.add_argument("--variant", choices=["modular", "general"], default="modular")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump", action="store_true",
                   help="include one full cone evaluation in the output")
    p.set_defaults(fn=cmd_cone_check)

    p = sub.add_parser("small-generators", help="compact kernel generators")
    common(p, k=True)
    p.add_argument("--full", action="store_true", help="emit every generator")
    p.set_defaults(fn=cmd_small_generators)

    p = sub.add_parser("eta", help="two-cone middle cycle")
    common(p)
    p.add_argument("--check", default="recursive,explicit,boundary")
    p.set_defaults(fn=cmd_eta)

    p = sub.add_parser("psi", help="signed singular-space cycle")
    common(p)
    p.add_argument("--pairing", action="store_true")
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("expansion", help="exact expansion constant")
    common(p, k=True)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(fn=cmd_expansion)

    p = sub.add_parser("gtable", help="minimal-connected cochain table")
    common(p, k=True)
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(fn=cmd_gtable)

    p = sub.add_parser("indcomplex", help="independence complex checks")
    common(p, mod=False)
    p.add_argument("--kmax", type=int, default=2)
    p.set_defaults(fn=cmd_indcomplex)

    p = sub.add_parser("lm-sweep", help="random-model connectivity sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--coef", type=int, required=True,
                   help="prime coefficient field for the connectivity test")
    p.add_argument("--grid", required=True, help="lo:hi:step")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_lm_sweep)

    p = sub.add_parser("repro", help="run the full acceptance suite")
    p.set_defaults(fn=cmd_repro)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.fn(args)
    except (PreconditionError, BudgetError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECT
    except QgrassError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
