"""``gprime`` command line.

Every subcommand prints one JSON document (``schemaVersion`` 1).  Exit codes:
0 when every check passes, 1 when a verification fails, 2 for bad input.
When ``--output`` is absent and ``GPRIME_OUTPUT_DIR`` is set, the report is
also written to ``$GPRIME_OUTPUT_DIR/<command>-<argument>.json``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .exactcore import format_scalar, parse_scalar

SCHEMA_VERSION = 1
OUTPUT_ENV = "GPRIME_OUTPUT_DIR"


class UsageError(Exception):
    """Bad user input; reported with exit code 2."""


def _target(text: str):
    """Parse ``text`` as a Cartan type or an SL2 module spec."""
    from .rootsystem import CartanType
    from .sl2modules import SL2ModuleSpec

    try:
        return CartanType.parse(text)
    except (ValueError, TypeError):
        pass
    try:
        return SL2ModuleSpec.parse(text)
    except ValueError:
        raise UsageError(f"{text!r} is neither a Cartan type (e.g. A2, E8) nor a module spec (e.g. R4, 2R1)")


def _cartan(text: str):
    from .rootsystem import CartanType

    try:
        return CartanType.parse(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc))


# -- subcommands -----------------------------------------------------------------

def cmd_roots(args) -> tuple[dict, bool]:
    from .rootsystem import (
        coxeter_exponents,
        invariant_degrees,
        is_self_dual_type,
        longest_element,
        root_system,
        weyl_order,
    )

    t = _cartan(args.type)
    rs = root_system(t)
    exps, h = coxeter_exponents(t)
    w0 = longest_element(rs)
    return {
        "type": str(t),
        "rank": rs.rank,
        "cartanMatrix": rs.cartan,
        "positiveRoots": [list(r) for r in rs.positive],
        "numPositiveRoots": len(rs.positive),
        "algebraDimension": rs.algebra_dimension,
        "exponents": exps,
        "coxeterNumber": h,
        "invariantDegrees": invariant_degrees(t),
        "weylGroupOrder": weyl_order(t),
        "selfDual": is_self_dual_type(t),
        "longestElementIsMinusIdentity": w0.is_minus_identity(),
        "longestElementWord": [i + 1 for i in w0.word],
    }, True


def cmd_algebra(args) -> tuple[dict, bool]:
    from .chevalley import build_algebra

    alg = build_algebra(_cartan(args.type))
    audit = alg.audit()
    out = {"type": str(alg.cartan_type), "dimension": alg.dimension, "basis": alg.labels, "audit": audit}
    if args.structure_constants:
        out["algebra"] = alg.to_json()
    return out, audit["passed"]


def _sparse_images(alg, M) -> dict:
    out = {}
    for j, label in enumerate(alg.labels):
        col = {alg.labels[k]: format_scalar(M[k, j]) for k in range(alg.dimension) if M[k, j]}
        out[label] = col
    return out


def cmd_psi(args) -> tuple[dict, bool]:
    from .adjoint import verify_minus_psi
    from .chevalley import build_algebra, chevalley_involution, psi_signs

    alg = build_algebra(_cartan(args.type))
    psi = chevalley_involution(alg)
    report = verify_minus_psi(alg, samples=args.samples, seed=args.seed)
    signs = psi_signs(alg, psi)
    return {
        "type": str(alg.cartan_type),
        "psi": _sparse_images(alg, psi.matrix),
        "signs": {alg.labels[alg.x_index(b)]: s for b, s in signs.items()},
        "verification": report,
    }, report["passed"]


def _builtin_map(target, name: str):
    from .chevalley import build_algebra, chevalley_involution
    from .classical import UnsupportedTypeError, transpose_map
    from .engine import LinearMap
    from .rootsystem import CartanType

    n = build_algebra(target).dimension if isinstance(target, CartanType) else target.total_dim
    if name == "minus-identity":
        return LinearMap.scalar(n, -1, "minus-identity")
    if name.startswith("scalar:"):
        try:
            value = parse_scalar(name.split(":", 1)[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad scalar in {name!r}: {exc}")
        return LinearMap.scalar(n, value, name)
    if not isinstance(target, CartanType):
        raise UsageError(f"builtin map {name!r} is only defined on Lie algebras")
    if name == "minus-psi":
        return LinearMap(-chevalley_involution(build_algebra(target)).matrix, "minus-psi")
    if name == "transpose":
        try:
            return LinearMap(transpose_map(target).matrix, "transpose")
        except UnsupportedTypeError as exc:
            raise UsageError(str(exc))
    raise UsageError(f"unknown builtin map {name!r}")


def _load_map(target, path: str):
    from .engine import LinearMap

    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read map file {path}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("map file must hold a JSON object")
    if "builtin" in data:
        return _builtin_map(target, str(data["builtin"]))
    try:
        return LinearMap.from_json(data)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad map file {path}: {exc}")


def _generators(target):
    from .adjoint import adjoint_generators
    from .rootsystem import CartanType
    from .sl2modules import UnsupportedModuleError, generator_names, module_invariant_gens

    if isinstance(target, CartanType):
        gs = adjoint_generators(target)
        return list(gs.gens), list(gs.names), gs.provenance
    try:
        gens = list(module_invariant_gens(target))
    except UnsupportedModuleError as exc:
        raise UsageError(str(exc))
    prov = "sl2modules: transvectant invariants of the listed module, verified infinitesimally invariant"
    return gens, generator_names(target), prov


def cmd_gprime(args) -> tuple[dict, bool]:
    from .engine import membership_verdict

    target = _target(args.target)
    gens, names, prov = _generators(target)
    phi = _load_map(target, args.map)
    dim = gens[0].arity if gens else getattr(target, "total_dim", None)
    if dim is not None and phi.dimension != dim:
        raise UsageError(f"map has dimension {phi.dimension}, representation has dimension {dim}")
    invertible = phi.is_invertible()
    v = membership_verdict(gens, phi, samples=args.samples, seed=args.seed, names=names)
    return {
        "target": str(target),
        "map": phi.label or args.map,
        "invertible": invertible,
        "member": v.member and invertible,
        "failingGenerators": v.failing,
        "method": v.method,
        "generatingSetProvenance": prov,
        "caveat": "membership in the stabilizer of these generators; equals G' when they generate the invariant ring",
    }, v.member and invertible


def cmd_sl2(args) -> tuple[dict, bool]:
    from .sl2modules import (
        UnsupportedModuleError,
        claim_for,
        generic_stabilizer_dim,
        verify_module,
        verify_case,
    )

    arg = args.case
    if arg.isdigit():
        case = int(arg)
        if case not in range(1, 6):
            raise UsageError("case must be between 1 and 5")
        report = verify_case(case, perturbations=args.perturbations, seed=args.seed)
        for m in report["modules"]:
            m["genericStabilizerDimension"] = generic_stabilizer_dim(m["module"], args.samples_generic, args.seed)
        return report, report["passed"]
    target = _target(arg)
    if not hasattr(target, "summands"):
        raise UsageError(f"{arg!r} is not a module spec")
    try:
        claim = claim_for(target)
    except UnsupportedModuleError as exc:
        raise UsageError(str(exc))
    report = verify_module(claim, perturbations=args.perturbations, seed=args.seed)
    report["genericStabilizerDimension"] = generic_stabilizer_dim(target, args.samples_generic, args.seed)
    return report, report["passed"]


def cmd_stabilizer(args) -> tuple[dict, bool]:
    from .engine import (
        LinearMap,
        SampledInvariant,
        StabilizerReport,
        lie_stabilizer,
        membership_verdict,
        scalar_subgroup,
    )
    from .rootsystem import CartanType

    target = _target(args.target)
    gens, names, prov = _generators(target)
    if any(isinstance(g, SampledInvariant) for g in gens):
        raise UsageError(
            f"{target}: explicit generators are only built for classical rank <= 3 and G2; "
            "the Lie stabilizer needs them"
        )
    dim = gens[0].arity if gens else target.total_dim
    basis = lie_stabilizer(gens, dim)
    blocks = None if isinstance(target, CartanType) else target.block_sizes
    scal = scalar_subgroup(gens, blocks)
    report = StabilizerReport(
        generator_set=f"invariant generators of {target}",
        provenance=prov,
        generator_degrees=[g.degree for g in gens],
        lie_dimension=len(basis),
        lie_basis=basis,
        scalar_group=scal,
    )
    report.verdicts.append(membership_verdict(gens, LinearMap.scalar(dim, -1, "minus-identity"), names=names))
    if isinstance(target, CartanType):
        from .chevalley import build_algebra, chevalley_involution

        psi = chevalley_involution(build_algebra(target))
        report.verdicts.append(membership_verdict(gens, LinearMap(-psi.matrix, "minus-psi"), names=names))
        report.notes.append(f"adjoint: expected Lie stabilizer dimension {dim} (= dim g)")
    out = report.to_json(include_basis=not args.no_basis)
    out["target"] = str(target)
    return out, True


def cmd_verify_all(args) -> tuple[dict, bool]:
    from .acceptance import run_all

    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise UsageError(f"--only expects comma-separated criterion numbers, got {args.only!r}")
        if not only <= set(range(1, 10)):
            raise UsageError("criterion numbers run from 1 to 9")
    results = run_all(max_rank=args.max_rank, seed=args.seed, only=only)
    for r in results:
        print(r.line(), file=sys.stderr)
    passed = all(r.passed for r in results)
    return {
        "maxRank": args.max_rank,
        "criteria": [
            {"criterion": r.number, "title": r.title, "passed": r.passed, "failures": r.failures}
            for r in results
        ],
        "details": [r.to_json() for r in results] if args.details else None,
        "passed": passed,
    }, passed


# -- plumbing ------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    try:
        return format_scalar(obj)
    except TypeError:
        return str(obj)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gprime",
        description="Exact checks of invariant-preserving linear maps for simple Lie algebras and SL2 modules.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized check (default 0)")
    common.add_argument("--output", "-o", help="write the JSON report to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roots", parents=[common], help="root data, invariant degrees, self-duality")
    s.add_argument("type")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("algebra", parents=[common], help="build the Chevalley basis and audit it")
    s.add_argument("type")
    s.add_argument("--structure-constants", action="store_true", help="include the serialized algebra")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("psi", parents=[common], help="Chevalley involution and the -psi report")
    s.add_argument("type")
    s.add_argument("--samples", type=int, default=20, help="points for sampled invariants (default 20)")
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("gprime", parents=[common], help="test whether a map preserves all invariants")
    s.add_argument("target", help="Cartan type (A2) or module spec (R2+R1)")
    s.add_argument("--map", required=True, help="map JSON: {dim, entries} or {builtin}")
    s.add_argument("--samples", type=int, default=20, help="points for sampled invariants (default 20)")
    s.set_defaults(func=cmd_gprime)

    s = sub.add_parser("sl2", parents=[common], help="check one case (1-5) or module of the exceptional list")
    s.add_argument("case")
    s.add_argument("--perturbations", type=int, default=10, help="perturbed maps per claimed generator")
    s.add_argument("--samples-generic", type=int, default=8, help="points for the generic stabilizer probe")
    s.set_defaults(func=cmd_sl2)

    s = sub.add_parser("stabilizer", parents=[common], help="Lie stabilizer and scalar subgroup")
    s.add_argument("target")
    s.add_argument("--no-basis", action="store_true", help="omit the stabilizer basis matrices")
    s.set_defaults(func=cmd_stabilizer)

    s = sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    s.add_argument("--max-rank", type=int, default=8)
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.add_argument("--details", action="store_true", help="include full observations")
    s.set_defaults(func=cmd_verify_all)
    return p


def _default_output(args) -> Path | None:
    base = os.environ.get(OUTPUT_ENV)
    if not base:
        return None
    arg = getattr(args, "type", None) or getattr(args, "target", None) or getattr(args, "case", None) or "all"
    safe = "".join(c if c.isalnum() else "_" for c in str(arg))
    return Path(base) / f"{args.command}-{safe}.json"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, ok = args.func(args)
    except UsageError as exc:
        print(f"gprime: error: {exc}", file=sys.stderr)
        return 2
    doc = {"schemaVersion": SCHEMA_VERSION, "command": args.command, "seed": args.seed}
    doc.update(payload)
    doc["passed"] = bool(ok)
    text = json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
    out = Path(args.output) if args.output else _default_output(args)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    if args.output is None:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
