"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 dependent generator
differentials, 4 certification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .adjoint import CertReport, certify, module_dimensions, principal_triple
from .invariants import E8GuardError, IndependenceError
from .orbit_cache import OrbitCache, default_cache_dir
from .principal import PrincipalBasis, dual_principal_basis, principal_basis
from .rootsys import (
    LieType,
    RootSystemError,
    build_root_system,
    langlands_dual,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEPENDENT = 3
EXIT_UNCERTIFIED = 4

TOOL = "cartan-principal"


class DocumentError(ValueError):
    pass


def _s(x) -> str:
    return str(Fraction(x)) if not isinstance(x, int) else str(x)


def report_summary(report: CertReport) -> dict[str, Any]:
    return {
        "certified": report.certified,
        "certified_on": report.type,
        "orthogonal": report.orthogonal,
        "module_dimensions": [str(d) for d in report.module_dimensions],
        "vectors": [
            {
                "exponent": str(v.exponent),
                "in_kernel_k_plus_1": v.in_kernel_k_plus_1,
                "in_kernel_k": v.in_kernel_k,
                "ef_eigenvector": v.ef_eigen_ok,
            }
            for v in report.vectors
        ],
        "sigma": list(report.sigma) if report.sigma is not None else None,
        "failures": list(report.failures),
    }


def basis_document(pb: PrincipalBasis, report: CertReport | None = None) -> dict[str, Any]:
    return {
        "tool": TOOL,
        "version": __version__,
        "type": str(pb.type),
        "dual": pb.dual,
        "form": "canonical",
        "route": pb.route,
        "coordinates": pb.coordinate_basis,
        "exponents": [str(k) for k in pb.exponent_labels],
        "generators": list(pb.generator_provenance),
        "sigma_refined": pb.sigma_refined,
        "basis": [
            {
                "exponent": str(k),
                "coordinates": [str(x) for x in v],
                "ambient": [_s(x) for x in a],
            }
            for k, v, a in zip(pb.exponent_labels, pb.vectors, pb.ambient)
        ],
        "certification": report_summary(report) if report is not None else None,
    }


def basis_from_document(doc: dict[str, Any]) -> PrincipalBasis:
    """Rebuild a :class:`PrincipalBasis` from a basis document."""
    try:
        t = LieType.parse(doc["type"])
        rows = doc["basis"]
        vectors = tuple(tuple(int(x) for x in row["coordinates"]) for row in rows)
        labels = tuple(int(row["exponent"]) for row in rows)
        ambient = tuple(tuple(Fraction(x) for x in row["ambient"]) for row in rows)
        return PrincipalBasis(
            type=t,
            dual=bool(doc["dual"]),
            vectors=vectors,
            ambient=ambient,
            exponent_labels=labels,
            generator_provenance=tuple(doc.get("generators", ())),
            sigma_refined=bool(doc.get("sigma_refined", False)),
            route=doc.get("route", "classical"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed basis document: {exc}") from None


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt_vec(v: Sequence) -> str:
    return "(" + ", ".join(_s(x) for x in v) + ")"


def render_basis_text(pb: PrincipalBasis, report: CertReport | None) -> str:
    space = "dual Cartan subalgebra h* (Cartan of the Langlands dual)" if pb.dual else "Cartan subalgebra h"
    lines = [
        f"principal basis of the {space} for {pb.type}",
        f"route: {pb.route}; generators: {', '.join(pb.generator_provenance)}",
        f"coordinates: {pb.coordinate_basis}",
        "",
    ]
    rows = [("exponent", "coordinates", "ambient")]
    rows += [(str(k), _fmt_vec(v), _fmt_vec(a)) for k, v, a in zip(pb.exponent_labels, pb.vectors, pb.ambient)]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    lines += [f"{a:<{w0}}  {b:<{w1}}  {c}" for a, b, c in rows]
    if pb.sigma_refined:
        lines.append("")
        lines.append(f"sigma-refined: vector {pb.type.rank // 2} spans the sigma = -1 line")
    if report is not None:
        lines.append("")
        if report.certified:
            lines.append(f"certified on {report.type}: kernel filtration, orthogonality"
                         + (", sigma eigenvectors" if report.sigma is not None else ""))
        else:
            lines.append(f"NOT certified on {report.type}:")
            lines += [f"  {f}" for f in report.failures]
    return "\n".join(lines) + "\n"


def _cache(args) -> OrbitCache | None:
    if getattr(args, "no_cache", False):
        return None
    directory = default_cache_dir()
    return OrbitCache(directory) if directory is not None else None


def _parse_type(text: str) -> LieType:
    try:
        return LieType.parse(text)
    except RootSystemError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_basis(args, out) -> int:
    t = args.type
    fn = dual_principal_basis if args.dual else principal_basis
    try:
        pb = fn(
            t,
            route=args.route,
            seed_weight=args.seed_weight,
            allow_e8=args.allow_e8,
            cache=_cache(args),
        )
    except E8GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndependenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPENDENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = certify(pb) if args.verify else None
    if args.format == "json":
        out.write(dumps(basis_document(pb, report)))
    else:
        out.write(render_basis_text(pb, report))
    if report is not None and not report.certified:
        print("error: certification failed: " + "; ".join(report.failures), file=sys.stderr)
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _info_result(t: LieType, what: str):
    rs = build_root_system(t)
    if what == "exponents":
        return [str(k) for k in rs.exponents]
    if what == "dual":
        return str(langlands_dual(t))
    if what == "dims":
        return [str(d) for d in module_dimensions(rs)]
    if what == "roots":
        return [
            {"height": str(h), "coefficients": [str(c) for c in co], "ambient": [_s(x) for x in v]}
            for h, co, v in zip(rs.heights, rs.root_coefficients, rs.positive_roots)
        ]
    tr = principal_triple(rs)
    return {
        "h0_coroot_coordinates": [_s(x) for x in rs.coroot_coordinates(tr.h0)],
        "h0_ambient": [_s(x) for x in tr.h0],
        "e0": [str(x) for x in tr.e0],
        "f0": [_s(x) for x in tr.c],
    }


def cmd_info(args, out) -> int:
    t = args.type
    result = _info_result(t, args.what)
    if args.format == "json":
        doc = {"tool": TOOL, "version": __version__, "type": str(t), "query": args.what, "result": result}
        out.write(dumps(doc))
        return EXIT_OK
    if args.what in ("exponents", "dims"):
        out.write(",".join(result) + "\n")
    elif args.what == "dual":
        out.write(result + "\n")
    elif args.what == "roots":
        for r in result:
            out.write(f"{r['height']:>3}  ({', '.join(r['coefficients'])})  ({', '.join(r['ambient'])})\n")
    else:
        out.write(f"h0 = 2 rho_check = ({', '.join(result['h0_coroot_coordinates'])}) in simple coroots\n")
        out.write("e0 = " + " + ".join(f"e{i + 1}" for i in range(len(result["e0"]))) + "\n")
        out.write("f0 = " + " + ".join(f"{c}*f{i + 1}" for i, c in enumerate(result["f0"])) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        doc = json.loads(Path(args.file).read_text(encoding="utf-8"))
        pb = basis_from_document(doc)
    except (OSError, ValueError, RootSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = certify(pb)
    if args.format == "json":
        out.write(dumps(report_summary(report)))
    else:
        if report.certified:
            out.write(f"certified on {report.type}\n")
        else:
            out.write(f"NOT certified on {report.type}:\n")
            out.write("".join(f"  {f}\n" for f in report.failures))
    return EXIT_OK if report.certified else EXIT_UNCERTIFIED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cartan-principal", description="Principal bases of Cartan subalgebras")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="compute a principal basis")
    b.add_argument("type", type=_parse_type, help="Lie type such as A2, g2, D4")
    b.add_argument("--dual", action="store_true", help="principal basis of the Langlands dual Cartan subalgebra")
    b.add_argument("--verify", action="store_true", help="certify with the ad(e0) kernel filtration")
    b.add_argument("--route", choices=("auto", "classical", "orbit"), default="auto")
    b.add_argument("--format", choices=("text", "json"), default="text")
    b.add_argument("--seed-weight", type=int, default=None, metavar="K",
                   help="seed every orbit power sum with the K-th fundamental weight")
    b.add_argument("--allow-e8", action="store_true", help="allow the E8 orbit computation")
    b.add_argument("--no-cache", action="store_true", help="do not read or write the orbit cache")
    b.set_defaults(func=cmd_basis)

    i = sub.add_parser("info", help="root data of a type")
    i.add_argument("type", type=_parse_type)
    i.add_argument("what", choices=("exponents", "roots", "dual", "dims", "triple"))
    i.add_argument("--format", choices=("text", "json"), default="text")
    i.set_defaults(func=cmd_info)

    v = sub.add_parser("verify", help="certify a basis stored as a JSON document")
    v.add_argument("file")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args, out)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
