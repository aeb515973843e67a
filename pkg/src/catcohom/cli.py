"""Command-line front end.

Subcommands: validate, cohomology, grothendieck, verify, fixtures.
Exit codes: 0 pass/success, 1 theorem-check failure, 2 input error,
3 simplex cap exceeded.  Reports are deterministic structured text; the
timing field is suppressed with --no-timing.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import os
import sys
import time

from .coeff import ConstantSystem, ModuleOverCategory, NaturalSystemOnNerve
from .cohomology import bw_complex, quillen_complex, simplicial_complex
from .core import FunctorData, FunctorToCat, factorization_category, grothendieck, \
    validate_category
from .files import ParseError, parse_category, parse_functor, parse_module, \
    serialize_report
from .homalg import ring_from_tag
from .simplicial import Nerve, SimplexCapError, default_cap
from .verify import (
    SystemSpec,
    verify_dold_puppe,
    verify_husainov,
    verify_lambda2,
    verify_prop_diag,
    verify_theorem1,
    verify_theorem1_rev,
    verify_theorem2,
    verify_theorem3,
)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP = 3


class CliError(Exception):
    pass


def _read_input(path: str) -> str:
    """Read a file from disk, falling back to the packaged fixture data for
    paths like fixtures/z2.fcat or bare fixture names."""
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    base = os.path.basename(path)
    try:
        res = importlib.resources.files("catcohom").joinpath("data", base)
        if res.is_file():
            return res.read_text(encoding="utf-8")
    except (ModuleNotFoundError, FileNotFoundError):
        pass
    raise CliError(f"no such file: {path}")


def _load_category(path: str):
    return parse_category(_read_input(path), name=os.path.basename(path))


def _emit(args, payload) -> None:
    text = serialize_report(payload, include_timing=not args.no_timing)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _coeff_spec(args, category) -> SystemSpec:
    """Resolve --coeff/--coeff-kind into a SystemSpec over the category."""
    coeff = args.coeff or "const:1"
    if coeff.startswith("const"):
        rank = int(coeff.split(":", 1)[1]) if ":" in coeff else 1
        if not args.ring:
            raise CliError("--ring is required with a constant coefficient")
        return SystemSpec.constant(ring_from_tag(args.ring), rank=rank)
    kind = args.coeff_kind
    text = _read_input(coeff)
    if kind == "natural":
        FC, _, _ = factorization_category(category)
        M = parse_module(text, FC, name=os.path.basename(coeff))
        spec = SystemSpec.natural(FC, M)
    elif kind == "covariant":
        M = parse_module(text, category, name=os.path.basename(coeff))
        spec = SystemSpec.covariant(M)
    else:
        from .core import opposite
        M = parse_module(text, opposite(category), name=os.path.basename(coeff))
        spec = SystemSpec.contravariant(M)
    if args.ring and ring_from_tag(args.ring) != spec.ring:
        raise CliError(f"--ring {args.ring} disagrees with the coefficient file "
                       f"({spec.ring.tag()})")
    return spec


def _cmd_validate(args) -> int:
    try:
        cat = parse_category(_read_input(args.category),
                             name=os.path.basename(args.category), validate=False)
    except ParseError as exc:
        print(f"error: {args.category}:{exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = validate_category(cat)
    payload = {"file": os.path.basename(args.category),
               "objects": cat.n_objects, "morphisms": cat.n_morphisms,
               "valid": report.ok, "violations": report.violations}
    _emit(args, payload)
    return EXIT_PASS if report.ok else EXIT_INPUT_ERROR


def _cmd_cohomology(args) -> int:
    t0 = time.time()
    cat = _load_category(args.cat)
    ring_tag = args.ring
    N = args.max_degree
    coeff_text = _read_input(args.coeff) if args.coeff else None
    if args.flavor == "quillen":
        if coeff_text is None:
            raise CliError("--coeff is required")
        M = parse_module(coeff_text, cat, name=os.path.basename(args.coeff))
        K = quillen_complex(cat, M, N)
    else:
        FC, _, _ = factorization_category(cat)
        if coeff_text is None:
            raise CliError("--coeff is required")
        M = parse_module(coeff_text, FC, name=os.path.basename(args.coeff))
        if args.flavor == "bw":
            K = bw_complex(cat, FC, M, N)
        else:
            NC = Nerve(cat)
            K = simplicial_complex(NC, NaturalSystemOnNerve(NC, FC, M), N)
    if ring_tag and ring_from_tag(ring_tag) != M.ring:
        raise CliError(f"--ring {ring_tag} disagrees with the coefficient file "
                       f"({M.ring.tag()})")
    inv = K.invariants(N)
    payload = {"flavor": args.flavor, "category": os.path.basename(args.cat),
               "coefficients": os.path.basename(args.coeff),
               "ring": M.ring.tag(), "window": N}
    payload.update(inv.as_dict())
    if not args.no_timing:
        payload["wall_time_s"] = round(time.time() - t0, 4)
    _emit(args, payload)
    return EXIT_PASS


def _cmd_grothendieck(args) -> int:
    F = parse_functor(_read_input(args.functor))
    if not isinstance(F, FunctorToCat):
        raise CliError("grothendieck needs a tocat functor file")
    G, pi = grothendieck(F)
    rep = validate_category(G)
    payload = {
        "base": {"objects": F.base.n_objects, "morphisms": F.base.n_morphisms},
        "construction": {"objects": G.n_objects, "morphisms": G.n_morphisms},
        "objects": [f"({F.base.object_names[d]},{F.fibers[d].object_names[x]})"
                    for d, x in G.obj_labels],
        "valid": rep.ok,
    }
    _emit(args, payload)
    return EXIT_PASS if rep.ok else EXIT_INPUT_ERROR


def _plain_functor(path: str) -> FunctorData:
    phi = parse_functor(_read_input(path))
    if not isinstance(phi, FunctorData):
        raise CliError(f"{path} holds a tocat functor; a plain functor is needed")
    return phi


def _tocat_functor(path: str) -> FunctorToCat:
    F = parse_functor(_read_input(path))
    if not isinstance(F, FunctorToCat):
        raise CliError(f"{path} holds a plain functor; a tocat functor is needed")
    return F


def _cmd_verify(args) -> int:
    subject = args.subject
    N = args.max_degree

    if subject == "husainov":
        report = verify_husainov(N)
        _emit(args, report)
        return EXIT_PASS if report.passed else EXIT_CHECK_FAILED

    if subject in ("theorem1", "theorem1-rev", "theorem2"):
        if args.sweep:
            return _run_sweep(args, subject)
        phi = _plain_functor(args.functor)
        spec = _coeff_spec(args, phi.source if subject.startswith("theorem1")
                           else phi.target)
        fn = {"theorem1": verify_theorem1,
              "theorem1-rev": verify_theorem1_rev,
              "theorem2": verify_theorem2}[subject]
        report = fn(phi, spec, N, cap=args.cap)
        _emit(args, report)
        if subject == "theorem2" and report.verdict == "hypothesis-failed":
            return EXIT_PASS  # the theorem makes no claim on this input
        return EXIT_PASS if report.passed else EXIT_CHECK_FAILED

    if subject in ("theorem3", "lambda2"):
        F = _tocat_functor(args.functor)
        G, _ = grothendieck(F)
        spec = _coeff_spec_for_construction(args, G)
        fn = verify_theorem3 if subject == "theorem3" else verify_lambda2
        report = fn(F, spec, N, cap=args.cap)
        _emit(args, report)
        return EXIT_PASS if report.passed else EXIT_CHECK_FAILED

    if subject in ("diag", "dold-puppe"):
        F = _tocat_functor(args.functor)
        from .simplicial import simplicial_replacement
        X = simplicial_replacement(F, cap=args.cap)
        ring = ring_from_tag(args.ring or "int")
        if subject == "diag":
            from .coeff import BisCoefficientSystem
            from .homalg import Mat

            class _ConstBis(BisCoefficientSystem):
                def __init__(self, carrier):
                    super().__init__(carrier, ring, name="const")
                    self._eye = Mat.identity(ring, 1)

                def rank(self, p, q, x):
                    return 1

                def induced(self, fh, fv, p, q, x):
                    return self._eye

            report = verify_prop_diag(X, _ConstBis(X), N)
        else:
            report = verify_dold_puppe(X, ring, N)
        _emit(args, report)
        return EXIT_PASS if report.passed else EXIT_CHECK_FAILED

    raise CliError(f"unknown verify subject {subject!r}")


def _coeff_spec_for_construction(args, G) -> SystemSpec:
    coeff = args.coeff or "const:1"
    if coeff.startswith("const"):
        rank = int(coeff.split(":", 1)[1]) if ":" in coeff else 1
        if not args.ring:
            raise CliError("--ring is required with a constant coefficient")
        return SystemSpec.constant(ring_from_tag(args.ring), rank=rank)
    FC, _, _ = factorization_category(G)
    M = parse_module(_read_input(coeff), FC, name=os.path.basename(coeff))
    return SystemSpec.natural(FC, M)


def _run_sweep(args, subject) -> int:
    import random

    from .fixtures import theorem1_functors, theorem1_systems, theorem2_instance
    from .homalg import GF, ZZ

    rng = random.Random(args.seed)
    N = args.max_degree
    results = []
    contradictions = 0
    failures = 0
    if subject in ("theorem1", "theorem1-rev"):
        fn = verify_theorem1 if subject == "theorem1" else verify_theorem1_rev
        count = 0
        pool = theorem1_functors()
        while count < args.sweep:
            name, phi = pool[count % len(pool)]
            ring = ZZ if rng.random() < 0.5 else GF(2)
            for spec in theorem1_systems(phi.source, ring, rng):
                if count >= args.sweep:
                    break
                rep = fn(phi, spec, N, cap=args.cap)
                results.append({"functor": name, "system": spec.name,
                                "ring": ring.tag(), "verdict": rep.verdict})
                failures += 0 if rep.passed else 1
                count += 1
    else:
        for k in range(args.sweep):
            ring = ZZ if rng.random() < 0.5 else GF(2)
            phi, spec = theorem2_instance(rng, ring)
            rep = verify_theorem2(phi, spec, N, cap=args.cap)
            results.append({"functor": rep.inputs["functor"], "system": spec.name,
                            "ring": ring.tag(), "verdict": rep.verdict})
            if rep.verdict == "fail":
                contradictions += 1
    payload = {"subject": subject, "seed": args.seed, "count": len(results),
               "failures": failures, "contradictions": contradictions,
               "results": results}
    _emit(args, payload)
    bad = failures if subject.startswith("theorem1") else contradictions
    return EXIT_PASS if bad == 0 else EXIT_CHECK_FAILED


def _cmd_fixtures(args) -> int:
    res = importlib.resources.files("catcohom").joinpath("data")
    names = sorted(p.name for p in res.iterdir() if p.is_file())
    _emit(args, {"fixtures": names})
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="catcohom",
        description="Cohomology of finite categories with general coefficient systems")
    ap.add_argument("--no-timing", action="store_true",
                    help="suppress the wall-time field in reports")
    ap.add_argument("--output", help="write the report to a file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a category file against the axioms")
    p.add_argument("category")

    p = sub.add_parser("cohomology", help="graded invariants of a category")
    p.add_argument("--flavor", choices=["quillen", "bw", "thomason"], required=True)
    p.add_argument("--cat", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--ring")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("grothendieck", help="build the category of a tocat functor")
    p.add_argument("--functor", required=True)

    p = sub.add_parser("verify", help="run a theorem-level verification")
    p.add_argument("subject", choices=[
        "theorem1", "theorem1-rev", "theorem2", "theorem3", "diag",
        "dold-puppe", "lambda2", "husainov"])
    p.add_argument("--functor")
    p.add_argument("--coeff", help="coefficient file or const[:rank]")
    p.add_argument("--coeff-kind", choices=["natural", "covariant", "contravariant"],
                   default="natural")
    p.add_argument("--ring")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--sweep", type=int, default=0,
                   help="run a randomized sweep with this many instances")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("fixtures", help="fixture management")
    p.add_argument("action", choices=["list"])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", None):
        os.environ["CATCOHOM_CAP"] = str(args.cap)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "cohomology":
            return _cmd_cohomology(args)
        if args.command == "grothendieck":
            return _cmd_grothendieck(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "fixtures":
            return _cmd_fixtures(args)
        raise CliError(f"unknown command {args.command!r}")
    except SimplexCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
