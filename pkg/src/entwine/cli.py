"""Command-line front end.

Exit codes are a function of the mathematical outcome only: 0 when every
requested check passes or a witness exists, 1 when a property fails or a
system is infeasible (including non-Galois data for the report commands),
2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, EntwineError, GaloisError, InputError
from .fields import GF, QQ
from .linalg import LinMap
from .structures import verify_algebra, verify_coalgebra
from .entwining import (counit_morphism, unit_morphism, EntwiningMorphism,
                        make_entwining, verify_entwining, verify_morphism)
from .entmod import EntwinedModule, verify_entwined_module
from .galois import (build_coextension, build_galois, copointed_grouplike,
                     cotranslation_map, pointed_kappa, verify_action,
                     verify_coaction)
from .hochschild import (Bimodule, cohomology_dim, regular_bimodule,
                         relative_complex, verify_bimodule)
from .linalg import Subspace
from .separability import (check_coseparable, check_separable, check_split,
                           check_strongly_separable)
from .witness import (WitnessKind, solve_witness, integrability_system,
                      cointegrability_system)
from . import schema
from .catalog import make_example
from .galois import Coextension, GaloisExtension
from .entwining import Entwining

OK, FAIL, MALFORMED = 0, 1, 2


def _load(path: str) -> schema.InputDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise schema.SchemaError(f"cannot read {path}: {exc}") from exc
    return schema.parse_document(text)


def _emit(doc: dict, out: str | None, as_json: bool):
    text = schema.dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if as_json:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    doc = _load(args.file)
    failures = 0
    reports = []
    if doc.algebra is not None:
        reports.append(("algebra", verify_algebra(doc.algebra)))
    if doc.coalgebra is not None:
        reports.append(("coalgebra", verify_coalgebra(doc.coalgebra)))
    ent = None
    if doc.psi is not None:
        ent = Entwining(doc.algebra, doc.coalgebra, doc.psi)
        reports.append(("entwining", verify_entwining(ent)))
    if doc.coaction_a is not None:
        reports.append(("coactionA", verify_coaction(doc.coalgebra,
                                                     doc.coaction_a)))
    if doc.action_c is not None:
        reports.append(("actionC", verify_action(doc.algebra, doc.action_c)))
    if doc.module is not None:
        if ent is None:
            raise schema.SchemaError("module section needs psi")
        dim, action, coaction = doc.module
        reports.append(("module",
                        verify_entwined_module(EntwinedModule(ent, dim,
                                                              action,
                                                              coaction))))
    if doc.morphism is not None:
        if ent is None:
            raise schema.SchemaError("morphism section needs psi")
        fmap, gmap, (alg2, coalg2, psi2) = doc.morphism
        dst = Entwining(alg2, coalg2, psi2)
        reports.append(("morphism dst entwining", verify_entwining(dst)))
        reports.append(("morphism",
                        verify_morphism(EntwiningMorphism(ent, dst, fmap,
                                                          gmap))))
    for name, rep in reports:
        status = "ok" if rep.ok else "FAIL " + "; ".join(map(repr, rep.failures))
        print(f"{name}: {status}")
        if not rep.ok:
            failures += 1
    if not reports:
        print("nothing to check")
    return OK if failures == 0 else FAIL


# ---------------------------------------------------------------------------
# solve


_KIND_MAP = {
    "integral": WitnessKind.INTEGRAL,
    "cointegral": WitnessKind.COINTEGRAL,
    "integral-map": WitnessKind.INTEGRAL_MAP,
    "cointegral-map": WitnessKind.COINTEGRAL_MAP,
}


def _morphism_from(doc, ent, choice) -> EntwiningMorphism:
    if choice == "counit":
        return counit_morphism(ent)
    if choice == "unit":
        return unit_morphism(ent)
    if doc.morphism is None:
        raise schema.SchemaError("--morphism doc needs a morphism section")
    fmap, gmap, (alg2, coalg2, psi2) = doc.morphism
    dst = make_entwining(alg2, coalg2, psi2)
    mor = EntwiningMorphism(ent, dst, fmap, gmap)
    rep = verify_morphism(mor)
    if not rep.ok:
        raise DomainError(f"document morphism is invalid: {rep}")
    return mor


def cmd_solve(args) -> int:
    doc = _load(args.file)
    try:
        ent = doc.entwining()
    except schema.SchemaError:
        raise
    except InputError as exc:
        # shapes were already validated by the parser, so this is a failed
        # axiom, a mathematical outcome rather than malformed input
        print(f"invalid entwining: {exc}")
        return FAIL
    f = ent.field
    normalized = args.normalized
    if args.kind in _KIND_MAP:
        kind = _KIND_MAP[args.kind]
        sol = solve_witness(kind, ent, normalized=normalized)
        from .witness import witness_shapes
        dom, cod = witness_shapes(kind, ent)
        label = kind.value
    else:
        mor = _morphism_from(doc, ent, args.morphism)
        if args.kind == "lambda":
            sys_, ctx = integrability_system(mor, total=True)
            sol = sys_.solve()
            dom = ctx.carrier.inclusion().domain
            cod = LinMap.identity(f, (mor.src.alg.dim,)).domain
        else:
            sys_, ctx = cointegrability_system(mor, total=True)
            sol = sys_.solve()
            dom = LinMap.identity(f, (mor.dst.coalg.dim,)).domain
            cod = ctx.carrier.section.domain
        label = args.kind
        normalized = True  # the functor-level systems are always total
    if not sol.feasible:
        print(f"{label}: infeasible")
        return FAIL
    w = dom.total
    rows = [tuple(sol.particular[r * w + j] for j in range(w))
            for r in range(cod.total)]
    matrix = LinMap.from_rows(f, dom, cod, rows)
    if not args.json:
        print(f"{label}: found; solution family dimension "
              f"{sol.homogeneous.dim}")
        for row in matrix.entries:
            print("  [" + ", ".join(str(f.fmt(x)) for x in row) + "]")
    out_doc = schema.witness_document(f, label, normalized, matrix, sol)
    _emit(out_doc, args.output, args.json)
    return OK


# ---------------------------------------------------------------------------
# extension / coextension reports


def _fmt_scalar(f, x):
    return f.fmt(x)


def extension_report(ext: GaloisExtension, strategy: str) -> dict:
    f = ext.field
    sep = check_separable(ext)
    split = check_split(ext)
    strong = check_strongly_separable(ext, strategy)
    bimod = regular_bimodule(ext.alg)
    cx = relative_complex(ext.alg, ext.fixed, bimod, max_degree=1)
    h1, _ = cohomology_dim(cx, 1)
    report = {
        "schema": schema.SCHEMA,
        "kind": "extension_report",
        "field": schema.field_to_json(f),
        "dims": {"algebra": ext.alg.dim, "coalgebra": ext.coalg.dim,
                 "fixed_subalgebra": ext.fixed.dim},
        "separable": sep is not None,
        "split": split is not None,
        "strong": {
            "found": strong.found,
            "strategy": strategy,
            "inconclusive": strong.inconclusive,
            "tau": _fmt_scalar(f, strong.certificate.tau) if strong.found else None,
            "note": strong.note,
        },
        "certificates": {},
        "hochschild": {"h1_dim": h1},
        "hypothesis_flags": {
            "free_right_module": "verified" if strong.free_basis_found
            else "unverified",
        },
    }
    copointed = copointed_grouplike(ext)
    report["copointed"] = copointed is not None
    certs = report["certificates"]
    if sep is not None:
        certs["integral"] = schema.vector_to_json(f, sep.source_integral.value)
        certs["idempotent"] = schema.vector_to_json(
            f, ext.square.section.apply(sep.u))
    if split is not None:
        cert, family = split
        certs["phi"] = schema.matrix_to_json(cert.phi)
        certs["expectation"] = schema.matrix_to_json(cert.expectation)
        certs["phi_family_dim"] = family.homogeneous.dim
        report["hypothesis_flags"]["faithfully_flat_left_module"] = True
    if strong.found:
        certs["strong_phi"] = schema.matrix_to_json(strong.certificate.split.phi)
    return report


def cmd_extension(args) -> int:
    doc = _load(args.file)
    if doc.algebra is None or doc.coalgebra is None or doc.coaction_a is None:
        raise schema.SchemaError("extension report needs algebra, coalgebra "
                                 "and coactionA")
    try:
        ext = build_galois(doc.algebra, doc.coalgebra, doc.coaction_a)
    except (GaloisError, DomainError) as exc:
        print(f"not a coalgebra-Galois extension: {exc}")
        return FAIL
    report = extension_report(ext, args.strategy)
    if not args.json:
        print(f"separable: {str(report['separable']).lower()}")
        print(f"split: {str(report['split']).lower()}")
        strong = report["strong"]
        tau = f'"{strong["tau"]}"' if strong["tau"] is not None else "null"
        print(f"strong: {{found: {str(strong['found']).lower()}, tau: {tau}}}")
        print(f"hochschild H1: {report['hochschild']['h1_dim']}")
    _emit(report, args.output, args.json)
    return OK


def coextension_report(coext: Coextension) -> dict:
    f = coext.field
    cos = check_coseparable(coext)
    kappa = pointed_kappa(coext)
    report = {
        "schema": schema.SCHEMA,
        "kind": "coextension_report",
        "field": schema.field_to_json(f),
        "dims": {"coalgebra": coext.coalg.dim, "algebra": coext.alg.dim,
                 "coideal": coext.coideal.dim, "base": coext.base.dim},
        "coseparable": cos is not None,
        "pointed": kappa is not None,
        "certificates": {},
    }
    certs = report["certificates"]
    if cos is not None:
        certs["cointegral"] = schema.vector_to_json(
            f, cos.source_cointegral.value)
        certs["upsilon"] = schema.vector_to_json(f, cos.upsilon)
    if kappa is not None:
        certs["kappa"] = schema.vector_to_json(f, kappa)
    if coext.base.dim == 1 and kappa is not None:
        certs["cotranslation"] = schema.matrix_to_json(cotranslation_map(coext))
    return report


def cmd_coextension(args) -> int:
    doc = _load(args.file)
    if doc.algebra is None or doc.coalgebra is None or doc.action_c is None:
        raise schema.SchemaError("coextension report needs algebra, coalgebra "
                                 "and actionC")
    try:
        coext = build_coextension(doc.coalgebra, doc.algebra, doc.action_c)
    except (GaloisError, DomainError) as exc:
        print(f"not an algebra-Galois coextension: {exc}")
        return FAIL
    report = coextension_report(coext)
    if not args.json:
        print(f"coseparable: {str(report['coseparable']).lower()}")
        print(f"pointed: {str(report['pointed']).lower()}")
    _emit(report, args.output, args.json)
    return OK


# ---------------------------------------------------------------------------
# hochschild


def _parse_bimodule_file(path, alg):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise schema.SchemaError(f"cannot read bimodule file: {exc}") from exc
    schema._strict(obj, {"schema", "field", "bimodule"}, "bimodule document")
    if obj.get("schema") != schema.SCHEMA:
        raise schema.SchemaError("unsupported schema in bimodule file")
    f = schema.parse_field(obj.get("field", {}))
    if f != alg.field:
        raise schema.SchemaError("bimodule field does not match the algebra")
    sect = obj.get("bimodule")
    schema._strict(sect, {"dim", "left", "right"}, "bimodule")
    dim = int(sect.get("dim", 0))
    if dim < 1:
        raise schema.SchemaError("bimodule dimension must be positive")
    left = schema.parse_matrix(f, sect["left"], (alg.dim, dim), (dim,), "left")
    right = schema.parse_matrix(f, sect["right"], (dim, alg.dim), (dim,),
                                "right")
    return Bimodule(dim, left, right)


def cmd_hochschild(args) -> int:
    doc = _load(args.file)
    if doc.algebra is None:
        raise schema.SchemaError("hochschild needs an algebra")
    alg = doc.algebra
    f = alg.field
    if doc.coaction_a is not None:
        from .galois import fixed_subalgebra
        sub, _ = fixed_subalgebra(alg, doc.coaction_a)
    else:
        sub = Subspace.from_vectors(f, (alg.dim,), [tuple(alg.unit)])
    if args.bimodule:
        bimod = _parse_bimodule_file(args.bimodule, alg)
        rep = verify_bimodule(alg, bimod)
        if not rep.ok:
            print(f"bimodule: FAIL {rep}")
            return FAIL
    else:
        bimod = regular_bimodule(alg)
    cx = relative_complex(alg, sub, bimod, max_degree=max(1, args.degree))
    dim, reps = cohomology_dim(cx, args.degree)
    if not args.json:
        print(f"H^{args.degree} dimension: {dim}")
        if dim > 0:
            print("representative cocycle (cochain coordinates): "
                  + "[" + ", ".join(str(f.fmt(x)) for x in reps.basis[0])
                  + "]")
    out = {"schema": schema.SCHEMA, "kind": "hochschild",
           "field": schema.field_to_json(f),
           "degree": args.degree, "dim": dim,
           "cochain_dims": [s.dim for s in cx.spaces],
           "representatives": [schema.vector_to_json(f, v)
                               for v in reps.basis]}
    _emit(out, args.output, args.json)
    return OK


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args) -> int:
    field = QQ if args.field == "Q" else GF(args.p)
    params = {"field": field}
    for key in ("n", "d", "na", "nc"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.hopf:
        params["hopf"] = args.hopf
    if args.dual:
        params["dual"] = True
    entry = make_example(args.name, params)
    payload = entry.payload
    if isinstance(payload, GaloisExtension):
        doc = schema.entwining_document(payload.ent, coaction_a=payload.rho_a)
    elif isinstance(payload, Coextension):
        doc = schema.entwining_document(payload.ent, action_c=payload.rho_c)
    elif isinstance(payload, Entwining):
        doc = schema.entwining_document(payload)
    else:  # Hopf data
        doc = {"schema": schema.SCHEMA,
               "field": schema.field_to_json(field),
               "algebra": schema.algebra_to_json(payload.alg),
               "coalgebra": schema.coalgebra_to_json(payload.coalg)}
    for w in entry.extras.get("warnings", []):
        print(f"warning: {w}", file=sys.stderr)
    text = schema.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entwine",
        description="Exact certificates for entwining structures and "
                    "coalgebra-Galois extensions.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="verify every structure in a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("solve", help="solve for a witness")
    p.add_argument("--kind", required=True,
                   choices=[*_KIND_MAP, "lambda", "frakz"])
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--morphism", choices=["counit", "unit", "doc"],
                   default="counit",
                   help="morphism for lambda/frakz solves")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("extension", help="coalgebra-Galois extension reports")
    esubs = p.add_subparsers(dest="subcommand", required=True)
    pr = esubs.add_parser("report")
    pr.add_argument("file")
    pr.add_argument("--strategy", default="fixed_integral",
                    choices=["fixed_integral", "search"])
    pr.add_argument("--json", action="store_true")
    pr.add_argument("-o", "--output")
    pr.set_defaults(func=cmd_extension)

    p = subs.add_parser("coextension", help="algebra-Galois coextension reports")
    csubs = p.add_subparsers(dest="subcommand", required=True)
    pr = csubs.add_parser("report")
    pr.add_argument("file")
    pr.add_argument("--json", action="store_true")
    pr.add_argument("-o", "--output")
    pr.set_defaults(func=cmd_coextension)

    p = subs.add_parser("hochschild", help="relative cohomology dimensions")
    p.add_argument("--n", dest="degree", type=int, default=1, choices=[0, 1, 2])
    p.add_argument("--bimodule")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("file")
    p.set_defaults(func=cmd_hochschild)

    p = subs.add_parser("catalog", help="emit a catalog example")
    p.add_argument("--name", required=True)
    p.add_argument("--field", choices=["Q", "Fp"], default="Q")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--na", type=int)
    p.add_argument("--nc", type=int)
    p.add_argument("--hopf")
    p.add_argument("--dual", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except schema.SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return MALFORMED
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return MALFORMED
    except EntwineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
