"""Command-line front end.

Every verb reads JSON documents, dispatches to one library operation
family and emits a single report, either as one JSON document
(``--format json``) or as aligned text.  Exit codes are a function of
the report status only: ok=0, violated=1, none-exists=2, error=3.
Output is byte-identical across runs for identical inputs.

The environment variable TRIDER_THREADS caps internal parallelism; the
library evaluates sequentially, so any positive cap is honoured.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import jsonio
from .cochains import Cochain, PairCochain
from .cohomology import betti, is_coboundary, is_cocycle
from .core import (
    DerModule,
    LieDerPair,
    derivation_report,
    derivation_space,
    semidirect,
    validate_3lie,
    validate_der_module,
    validate_representation,
)
from .deformations import (
    obstruction,
    extend_deformation,
    trivialize_up_to,
    validate_deformation,
)
from .errors import InputError
from .extensions import (
    CocycleViolation,
    build_central_extension,
    classify_extensions,
    extend_derivation_pair,
    extract_cocycle,
)

EXIT_CODES = {"ok": 0, "violated": 1, "none-exists": 2, "error": 3}


@dataclass
class Report:
    verb: str
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def _render_text(report: Report) -> str:
    lines = [f"verb:   {report.verb}", f"status: {report.status}"]

    def walk(value, prefix: str, out: list[str]) -> None:
        if isinstance(value, dict):
            if not value:
                out.append(f"{prefix}: {{}}")
                return
            width = max(len(str(k)) for k in value)
            for k in sorted(value, key=str):
                item = value[k]
                label = f"{prefix}.{k}" if prefix else str(k)
                if isinstance(item, (dict, list)):
                    walk(item, label, out)
                else:
                    pad = " " * (width - len(str(k)))
                    out.append(f"{label}:{pad} {item}")
        elif isinstance(value, list):
            if not value:
                out.append(f"{prefix}: []")
                return
            for idx, item in enumerate(value):
                label = f"{prefix}[{idx}]"
                if isinstance(item, (dict, list)):
                    walk(item, label, out)
                else:
                    out.append(f"{label}: {item}")
        else:
            out.append(f"{prefix}: {value}")

    if report.payload:
        walk(report.payload, "", lines)
    for note in report.diagnostics:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _emit(report: Report, fmt: str) -> int:
    if fmt == "json":
        body = {
            "verb": report.verb,
            "status": report.status,
            "payload": report.payload,
            "diagnostics": report.diagnostics,
        }
        sys.stdout.write(jsonio.dump_document(body))
    else:
        sys.stdout.write(_render_text(report))
    return report.exit_code()


# -- input loading ----------------------------------------------------------


def _load(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return jsonio.load_document(text)


def _load_pair(args) -> LieDerPair:
    if args.pair:
        return jsonio.pair_from_json(_load(args.pair))
    if args.algebra and args.phi:
        return LieDerPair(jsonio.algebra_from_json(_load(args.algebra)),
                          jsonio.matrix_from_json(_load(args.phi)))
    raise InputError("need --pair (or --algebra with --phi)")


def _load_dermod(args) -> DerModule:
    if not args.dermod:
        raise InputError("need --dermod")
    return jsonio.dermod_from_json(_load(args.dermod))


def _load_pair_cochains(args, count: int) -> list[PairCochain]:
    if not args.cochain or len(args.cochain) != count:
        raise InputError(f"need exactly {count} --cochain file(s)")
    return [jsonio.pair_cochain_from_json(_load(p)) for p in args.cochain]


# -- verb handlers ----------------------------------------------------------


def _cmd_validate(args) -> Report:
    payload = {}
    diagnostics = []
    ok = True
    algebra = None
    pair = None
    if args.pair:
        pair = jsonio.pair_from_json(_load(args.pair))
        algebra = pair.algebra
    elif args.algebra:
        algebra = jsonio.algebra_from_json(_load(args.algebra))
    if algebra is None:
        raise InputError("validate needs --algebra or --pair")

    cap = args.max_violations
    rep_alg = validate_3lie(algebra.constants, algebra.dim, max_violations=cap)
    payload["algebra"] = jsonio.validation_report_to_json(rep_alg)
    ok = ok and rep_alg.ok

    phi = pair.phi if pair else (
        jsonio.matrix_from_json(_load(args.phi)) if args.phi else None)
    if phi is not None:
        rep_phi = derivation_report(algebra, phi, max_violations=cap)
        payload["derivation"] = jsonio.validation_report_to_json(rep_phi)
        ok = ok and rep_phi.ok

    representation = None
    if args.rep:
        representation = jsonio.representation_from_json(_load(args.rep))
        rep_rep = validate_representation(algebra, representation, max_violations=cap)
        payload["representation"] = jsonio.validation_report_to_json(rep_rep)
        ok = ok and rep_rep.ok

    if args.dermod:
        dermod = jsonio.dermod_from_json(_load(args.dermod))
        if phi is None:
            raise InputError("validating a module needs the pair derivation")
        rep_rep = validate_representation(algebra, dermod.rep, max_violations=cap)
        payload["representation"] = jsonio.validation_report_to_json(rep_rep)
        ok = ok and rep_rep.ok
        rep_mod = validate_der_module(LieDerPair(algebra, phi), dermod,
                                      max_violations=cap)
        payload["module"] = jsonio.validation_report_to_json(rep_mod)
        ok = ok and rep_mod.ok

    if not ok:
        diagnostics.append("at least one validation failed")
    return Report("validate", "ok" if ok else "violated", payload, diagnostics)


def _cmd_der_space(args) -> Report:
    if not args.algebra:
        raise InputError("der-space needs --algebra")
    algebra = jsonio.algebra_from_json(_load(args.algebra))
    basis = derivation_space(algebra)
    payload = {
        "dimension": len(basis),
        "basis": [jsonio.matrix_to_json(m) for m in basis],
    }
    return Report("der-space", "ok", payload)


def _cmd_semidirect(args) -> Report:
    pair = _load_pair(args)
    dermod = _load_dermod(args)
    result = semidirect(pair, dermod)
    return Report("semidirect", "ok", {"pair": jsonio.pair_to_json(result)})


def _cmd_cohomology(args) -> Report:
    pair = _load_pair(args)
    dermod = _load_dermod(args)
    if args.degree is None:
        raise InputError("cohomology needs --degree")
    report = betti(pair, dermod, args.degree, representatives=args.representatives)
    return Report("cohomology", "ok", jsonio.cohomology_report_to_json(report))


def _cmd_cocycle_check(args) -> Report:
    pair = _load_pair(args)
    dermod = _load_dermod(args)
    (pc,) = _load_pair_cochains(args, 1)
    cocycle = is_cocycle(pair, dermod, pc)
    payload = {"cocycle": cocycle}
    if cocycle and pc.degree >= 2:
        preimage = is_coboundary(pair, dermod, pc)
        payload["coboundary"] = preimage is not None
        payload["preimage"] = (
            jsonio.pair_cochain_to_json(preimage) if preimage is not None else None)
    return Report("cocycle-check", "ok" if cocycle else "violated", payload)


def _cmd_extension_build(args) -> Report:
    pair = _load_pair(args)
    fiber = _load_dermod(args)
    (pc,) = _load_pair_cochains(args, 1)
    if pc.degree != 2:
        raise InputError("extension-build needs a degree-2 pair cochain")
    try:
        ext = build_central_extension(pair, fiber, pc.f, pc.fbar.to_linear_map())
    except CocycleViolation as exc:
        return Report("extension-build", "violated",
                      {"identity": exc.identity, "at": list(exc.at)},
                      [str(exc)])
    body = jsonio.extension_to_json(ext, section=ext.canonical_section())
    return Report("extension-build", "ok", {"extension": body})


def _cmd_extension_extract(args) -> Report:
    if not args.extension:
        raise InputError("extension-extract needs --extension")
    ext = jsonio.extension_from_json(_load(args.extension))
    section = (jsonio.matrix_from_json(_load(args.section))
               if args.section else ext.canonical_section())
    pc = extract_cocycle(ext, section)
    return Report("extension-extract", "ok",
                  {"cocycle": jsonio.pair_cochain_to_json(pc)})


def _cmd_extension_classify(args) -> Report:
    pair = _load_pair(args)
    fiber = _load_dermod(args)
    pc1, pc2 = _load_pair_cochains(args, 2)
    equivalent, witness = classify_extensions(pair, fiber, pc1, pc2)
    payload = {
        "equivalent": equivalent,
        "witness": jsonio.matrix_to_json(witness) if witness is not None else None,
    }
    return Report("extension-classify", "ok" if equivalent else "none-exists", payload)


def _cmd_der_extend(args) -> Report:
    if not args.extension:
        raise InputError("der-extend needs --extension")
    ext = jsonio.extension_from_json(_load(args.extension)).algebra_part()
    if not args.phi or not args.phim:
        raise InputError("der-extend needs --phi and --phim")
    phi_l = jsonio.matrix_from_json(_load(args.phi))
    phi_m = jsonio.matrix_from_json(_load(args.phim))
    section = (jsonio.matrix_from_json(_load(args.section)) if args.section
               else None)
    if section is None:
        from .extensions import CentralExtension  # local: canonical section helper
        section = jsonio.extension_from_json(_load(args.extension)).canonical_section()
    result = extend_derivation_pair(ext, phi_l, phi_m, section)
    if result is None:
        return Report("der-extend", "none-exists", {"extensible": False})
    lam, phi_total = result
    return Report("der-extend", "ok", {
        "extensible": True,
        "lambda": jsonio.matrix_to_json(lam),
        "phiTotal": jsonio.matrix_to_json(phi_total),
    })


def _cmd_deform_validate(args) -> Report:
    pair = _load_pair(args)
    defm = _load_deformation(args, pair)
    report = validate_deformation(defm, max_violations=args.max_violations)
    payload = {
        "ok": report.ok,
        "checked": report.checked,
        "violations": [
            {"order": v.order, "family": v.family, "at": list(v.at)}
            for v in report.violations
        ],
        "truncated": report.truncated,
    }
    return Report("deform-validate", "ok" if report.ok else "violated", payload)


def _load_deformation(args, pair: LieDerPair):
    if not args.deformation:
        raise InputError("need --deformation")
    return jsonio.deformation_from_json(_load(args.deformation), pair)


def _cmd_deform_obstruct(args) -> Report:
    pair = _load_pair(args)
    defm = _load_deformation(args, pair)
    ob = obstruction(defm)
    return Report("deform-obstruct", "ok", {
        "ob3": jsonio.cochain_to_json(ob.f),
        "ob2": jsonio.cochain_to_json(ob.fbar),
        "cocycle": True,
    })


def _cmd_deform_extend(args) -> Report:
    pair = _load_pair(args)
    defm = _load_deformation(args, pair)
    result = extend_deformation(defm)
    if result is None:
        return Report("deform-extend", "none-exists", {"extensible": False})
    mu_next, phi_next = result
    return Report("deform-extend", "ok", {
        "extensible": True,
        "mu_next": jsonio.cochain_to_json(mu_next),
        "phi_next": jsonio.matrix_to_json(phi_next),
    })


def _cmd_deform_trivialize(args) -> Report:
    pair = _load_pair(args)
    defm = _load_deformation(args, pair)
    result = trivialize_up_to(defm, args.max_steps)
    payload = {
        "outcome": result.status,
        "steps": result.steps,
        "obstructedOrder": result.obstructed_order,
        "iso": jsonio.formal_iso_to_json(result.iso),
        "deformation": jsonio.deformation_to_json(result.deformation),
    }
    status = {"trivial": "ok", "obstructed": "none-exists", "budget": "violated"}
    diagnostics = []
    if result.status == "budget":
        diagnostics.append("step budget exhausted; partial result")
    return Report("deform-trivialize", status[result.status], payload, diagnostics)


_HANDLERS = {
    "validate": _cmd_validate,
    "der-space": _cmd_der_space,
    "semidirect": _cmd_semidirect,
    "cohomology": _cmd_cohomology,
    "cocycle-check": _cmd_cocycle_check,
    "extension-build": _cmd_extension_build,
    "extension-extract": _cmd_extension_extract,
    "extension-classify": _cmd_extension_classify,
    "der-extend": _cmd_der_extend,
    "deform-validate": _cmd_deform_validate,
    "deform-obstruct": _cmd_deform_obstruct,
    "deform-extend": _cmd_deform_extend,
    "deform-trivialize": _cmd_deform_trivialize,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trider",
        description="Exact cohomology, central extensions and deformations "
                    "of 3-Lie algebras with a derivation.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in _HANDLERS:
        p = sub.add_parser(verb)
        p.add_argument("--algebra", help="algebra JSON file")
        p.add_argument("--phi", help="derivation matrix JSON file")
        p.add_argument("--rep", help="representation JSON file")
        p.add_argument("--phim", help="module map JSON file")
        p.add_argument("--pair", help="derivation-pair JSON file")
        p.add_argument("--dermod", help="module (rep + phim) JSON file; "
                                        "also the fiber of an extension")
        p.add_argument("--cochain", action="append",
                       help="pair-cochain JSON file (repeatable)")
        p.add_argument("--extension", help="extension bundle JSON file")
        p.add_argument("--section", help="section matrix JSON file")
        p.add_argument("--deformation", help="deformation JSON file")
        p.add_argument("--degree", type=int, help="cochain degree")
        p.add_argument("--representatives", action="store_true",
                       help="include cohomology representatives")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--max-violations", type=int, default=10)
        p.add_argument("--max-steps", type=int, default=None)
    return parser


def _thread_budget() -> int:
    raw = os.environ.get("TRIDER_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"TRIDER_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError("TRIDER_THREADS must be >= 1")
    return value


def run(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        _thread_budget()  # validated; evaluation is sequential
        report = _HANDLERS[args.verb](args)
    except InputError as exc:
        return _emit(Report(args.verb, "error", {}, [str(exc)]), fmt)
    except CocycleViolation as exc:
        return _emit(Report(args.verb, "violated",
                            {"identity": exc.identity, "at": list(exc.at)},
                            [str(exc)]), fmt)
    return _emit(report, fmt)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
