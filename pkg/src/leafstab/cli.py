"""Command-line interface: manifest loading, dispatch, report emission.

Manifests are line-oriented INI files (``=`` delimited, case-sensitive keys)
declaring a chart and named objects; see the bundled presets under
``leafstab/data/presets`` for worked examples.  Reports are deterministic
JSON documents on stdout: exact values are rendered as integer fractions or
expression strings, floats with 17 significant digits.

Exit codes: 0 success, 2 validation error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bigraded import (
    BigradedElement,
    ConnectionData,
    GeometricTriple,
    bivector_from_triple,
    triple_from_bivector,
    verify_structure_equations,
)
from .chart import ChartSpec
from .cohomology import (
    LIE_ALGEBRA_PRESETS,
    MODULE_PRESETS,
    RING_MODEL_PRESETS,
    GradedRingModel,
    LieAlgebraData,
    aff1_algebra,
    ce_complex,
    cohomology_dims,
    cone_cohomology,
    evaluate_criteria,
    su2_algebra,
)
from .expressions import ExpressionError, parse_expression, rf_expression
from .leaffinder import (
    DiscreteSection,
    FindLeafParams,
    Grid,
    find_leaf,
    get_backend,
    make_family,
    sample_triple,
)
from .leaffinder.kernels import apply_thread_cap
from .multivector import Multivector, is_poisson
from .poly import Poly, RationalFunction
from .sections import (
    DeformationCocycle,
    Section,
    deform_by_cocycle,
    first_jet,
    flat_kernel_sections,
    leaf_obstruction,
    linearized_triple,
)


class ManifestError(ValueError):
    pass


class ValidationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# manifest loading
# ---------------------------------------------------------------------------

@dataclass
class Manifest:
    chart: ChartSpec
    digest: str
    bivectors: dict = field(default_factory=dict)
    triples: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)
    cocycles: dict = field(default_factory=dict)
    lie_algebras: dict = field(default_factory=dict)
    ring_models: dict = field(default_factory=dict)
    grid: Grid | None = None
    families: dict = field(default_factory=dict)

    def lookup(self, table: str, name: str):
        objs = getattr(self, table)
        if name not in objs:
            raise ValidationError(f"manifest defines no {table.rstrip('s')} named {name!r}")
        return objs[name]


def _parse_names(raw: str) -> tuple[str, ...]:
    return tuple(raw.split())


def _parse_fraction(raw: str, where: str) -> Fraction:
    try:
        return Fraction(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise ManifestError(f"{where}: not a rational number: {raw!r}") from None


def _parse_matrix(raw: str, where: str):
    rows = []
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        rows.append([_parse_fraction(e, where) for e in chunk.split()])
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ManifestError(f"{where}: ragged matrix")
    return rows


def _expr(chart: ChartSpec, raw: str, where: str) -> RationalFunction:
    try:
        return parse_expression(raw, chart)
    except ExpressionError as exc:
        raise ManifestError(f"{where}: {exc}") from None


def _index_list(chart: ChartSpec, spec: str, where: str, fiber: bool):
    names = [n for n in spec.strip().split("^") if n]
    out = []
    for n in names:
        idx = chart.index(n) if n in chart.all_vars else None
        if idx is None:
            raise ManifestError(f"{where}: unknown variable {n!r}")
        out.append(chart.fiber_index(idx) if fiber else idx)
    return tuple(out)


def _load_bivector(chart: ChartSpec, items, where: str) -> Multivector:
    terms = {}
    for key, raw in items:
        pair = key.split("^")
        if len(pair) != 2:
            raise ManifestError(f"{where}.{key}: bivector keys look like u^v")
        idx = tuple(chart.index(n.strip()) for n in pair)
        if idx[0] >= idx[1]:
            raise ManifestError(f"{where}.{key}: indices must be strictly increasing")
        terms[idx] = _expr(chart, raw, f"{where}.{key}")
    return Multivector(chart, 2, terms)


def _load_triple_parts(chart: ChartSpec, items, where: str):
    vert = {}
    conn = {}
    horiz = {}
    for key, raw in items:
        parts = key.split(".")
        tag = parts[0]
        value = _expr(chart, raw, f"{where}.{key}")
        if tag == "vertical" and len(parts) == 2:
            J = _index_list(chart, parts[1], f"{where}.{key}", fiber=True)
            if len(J) != 2:
                raise ManifestError(f"{where}.{key}: vertical keys look like vertical.ya^yb")
            vert[((), J)] = value
        elif tag == "connection" and len(parts) == 3:
            i = chart.index(parts[1])
            a = chart.fiber_index(chart.index(parts[2]))
            conn[(i, a)] = value
        elif tag == "horizontal" and len(parts) == 2:
            I = _index_list(chart, parts[1], f"{where}.{key}", fiber=False)
            if len(I) != 2:
                raise ManifestError(f"{where}.{key}: horizontal keys look like horizontal.xi^xj")
            horiz[(I, ())] = value
        else:
            raise ManifestError(f"{where}.{key}: unknown triple component")
    return vert, conn, horiz


def load_manifest(path: str | Path) -> Manifest:
    path = Path(path)
    try:
        text = path.read_bytes()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest: {exc}") from None
    parser = configparser.ConfigParser(delimiters=("=",), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text.decode("utf-8"))
    except (UnicodeDecodeError, configparser.Error) as exc:
        raise ManifestError(f"manifest parse failure: {exc}") from None
    if "chart" not in parser:
        raise ManifestError("manifest is missing the [chart] section")
    chart_sec = parser["chart"]
    if "base" not in chart_sec:
        raise ManifestError("chart: missing key 'base'")
    chart = ChartSpec(
        _parse_names(chart_sec["base"]),
        _parse_names(chart_sec.get("fiber", "")),
        _parse_names(chart_sec.get("params", "")),
    )
    manifest = Manifest(chart=chart, digest=hashlib.sha256(text).hexdigest())

    for section in parser.sections():
        if section == "chart":
            continue
        if section == "grid":
            sec = parser[section]
            try:
                manifest.grid = Grid(int(sec["n1"]), int(sec["n2"]))
            except (KeyError, ValueError) as exc:
                raise ManifestError(f"[grid]: {exc}") from None
            continue
        words = section.split()
        if len(words) != 2:
            raise ManifestError(f"[{section}]: sections look like [kind name]")
        kind, name = words
        items = list(parser[section].items())
        if kind == "bivector":
            manifest.bivectors[name] = _load_bivector(chart, items, section)
        elif kind == "triple":
            vert, conn, horiz = _load_triple_parts(chart, items, section)
            manifest.triples[name] = GeometricTriple(
                BigradedElement(chart, 2, 0, vert),
                ConnectionData(chart, conn),
                BigradedElement(chart, 0, 2, horiz),
            )
        elif kind == "cocycle":
            vert, conn, horiz = _load_triple_parts(chart, items, section)
            conn_elem = {((i,), (a,)): c for (i, a), c in conn.items()}
            manifest.cocycles[name] = DeformationCocycle(
                BigradedElement(chart, 2, 0, vert),
                BigradedElement(chart, 1, 1, conn_elem),
                BigradedElement(chart, 0, 2, horiz),
            )
        elif kind == "section":
            comps = [Poly.zero(chart)] * chart.n_fiber
            for key, raw in items:
                a = chart.fiber_index(chart.index(key.strip()))
                comps[a] = _expr(chart, raw, f"{section}.{key}").as_poly()
            manifest.sections[name] = Section(chart, tuple(comps))
        elif kind == "liealgebra":
            dim = None
            brackets = {}
            for key, raw in items:
                if key == "dim":
                    dim = int(raw)
                elif key.startswith("bracket."):
                    parts = key.split(".")
                    if len(parts) != 3:
                        raise ManifestError(f"{section}.{key}: bracket keys look like bracket.ei.ej")
                    i, j = (int(p.lstrip("e")) - 1 for p in parts[1:])
                    brackets[(i, j)] = [_parse_fraction(v, f"{section}.{key}") for v in raw.split()]
                else:
                    raise ManifestError(f"{section}.{key}: unknown key")
            if dim is None:
                raise ManifestError(f"{section}: missing key 'dim'")
            try:
                manifest.lie_algebras[name] = LieAlgebraData(dim, brackets)
            except ValueError as exc:
                raise ManifestError(f"{section}: {exc}") from None
        elif kind == "ringmodel":
            betti = ()
            sigma: tuple = ()
            cups = {}
            for key, raw in items:
                if key == "betti":
                    betti = tuple(int(v) for v in raw.split())
                elif key == "sigma":
                    sigma = tuple(_parse_fraction(v, f"{section}.{key}") for v in raw.split())
                elif key.startswith("cup."):
                    cups[int(key.split(".")[1])] = _parse_matrix(raw, f"{section}.{key}")
                else:
                    raise ManifestError(f"{section}.{key}: unknown key")
            try:
                manifest.ring_models[name] = GradedRingModel(betti, cups, sigma)
            except ValueError as exc:
                raise ManifestError(f"{section}: {exc}") from None
        elif kind == "family":
            manifest.families[name] = dict(items)
        else:
            raise ManifestError(f"[{section}]: unknown object kind {kind!r}")
    return manifest


# ---------------------------------------------------------------------------
# report helpers
# ---------------------------------------------------------------------------

def _float_repr(x: float) -> str:
    return format(float(x), ".17g")


def _element_payload(e: BigradedElement) -> dict:
    ch = e.chart
    out = {}
    for (I, J), c in e.terms.items():
        dx = "^".join(ch.base_vars[i] for i in I) or "1"
        dy = "^".join(ch.fiber_vars[a] for a in J) or "1"
        out[f"{dx}|{dy}"] = rf_expression(c)
    return {"bidegree": list(e.bidegree), "terms": out}


def _bivector_payload(b: Multivector) -> dict:
    ch = b.chart
    return {
        f"{ch.all_vars[u]}^{ch.all_vars[v]}": rf_expression(c) for (u, v), c in b.terms.items()
    }


def _connection_payload(c: ConnectionData) -> dict:
    ch = c.chart
    return {
        f"{ch.base_vars[i]}.{ch.fiber_vars[a]}": rf_expression(v) for (i, a), v in c.coeffs.items()
    }


def emit_report(command: str, digest: str, result: dict) -> None:
    report = {"command": command, "input_digest": digest, "result": result}
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _args_digest(parts) -> str:
    canon = "\x1f".join(str(p) for p in parts)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check_poisson(args) -> int:
    manifest = load_manifest(args.manifest)
    pi = manifest.lookup("bivectors", args.bivector)
    result = {"bivector": args.bivector, "is_poisson": is_poisson(pi)}
    emit_report("check-poisson", manifest.digest, result)
    return 0


def cmd_triple(args) -> int:
    manifest = load_manifest(args.manifest)
    theta = manifest.lookup("bivectors", args.bivector)
    triple = triple_from_bivector(theta)
    back = bivector_from_triple(triple)
    round_trip = (back - theta).is_zero()
    payload = {
        "bivector": args.bivector,
        "vertical": _element_payload(triple.vertical),
        "connection": _connection_payload(triple.connection),
        "horizontal": _element_payload(triple.horizontal),
        "round_trip_exact": round_trip,
        "round_trip_digest": _args_digest(sorted(_bivector_payload(back).items())),
    }
    emit_report("triple", manifest.digest, payload)
    return 0 if round_trip else 2


def cmd_verify(args) -> int:
    manifest = load_manifest(args.manifest)
    if not args.triple and not args.bivector:
        raise ValidationError("verify needs --triple or --bivector")
    if args.triple:
        triple = manifest.lookup("triples", args.triple)
        label = args.triple
    else:
        triple = triple_from_bivector(manifest.lookup("bivectors", args.bivector))
        label = f"triple({args.bivector})"
    res = verify_structure_equations(triple)
    names = ("vertical_square", "vertical_transport", "horizontal_transport", "curvature_equation")
    payload = {
        "object": label,
        "residuals": {
            name: {"zero": r.is_zero(), "terms": _element_payload(r)["terms"]}
            for name, r in zip(names, res.as_tuple())
        },
        "all_zero": res.all_zero,
    }
    emit_report("verify", manifest.digest, payload)
    return 0


def cmd_leaf_check(args) -> int:
    manifest = load_manifest(args.manifest)
    triple = manifest.lookup("triples", args.triple)
    section = manifest.lookup("sections", args.section)
    obstruction = leaf_obstruction(triple, section)
    payload = {
        "triple": args.triple,
        "section": args.section,
        "is_leaf": obstruction.is_zero,
        "vertical_part": _element_payload(obstruction.vertical_part),
        "connection_part": _element_payload(obstruction.connection_part),
    }
    emit_report("leaf-check", manifest.digest, payload)
    return 0


def cmd_linearize(args) -> int:
    manifest = load_manifest(args.manifest)
    triple = manifest.lookup("triples", args.triple)
    section = manifest.lookup("sections", args.section)
    lin = linearized_triple(triple, section)
    payload = {
        "triple": args.triple,
        "section": args.section,
        "vertical_lin": _element_payload(lin.vertical),
        "connection_lin": _connection_payload(lin.connection),
        "horizontal_lin": _element_payload(lin.horizontal),
    }
    emit_report("linearize", manifest.digest, payload)
    return 0


def cmd_jet(args) -> int:
    manifest = load_manifest(args.manifest)
    triple = manifest.lookup("triples", args.triple)
    jet = first_jet(triple)
    residuals = verify_structure_equations(jet.to_triple())
    payload = {
        "triple": args.triple,
        "vertical_lin": _element_payload(jet.vertical_lin),
        "connection_lin": _connection_payload(jet.connection_lin),
        "horizontal_affine": _element_payload(jet.horizontal_affine),
        "structure_equations_hold": residuals.all_zero,
    }
    emit_report("jet", manifest.digest, payload)
    return 0


def cmd_kernel(args) -> int:
    manifest = load_manifest(args.manifest)
    triple = manifest.lookup("triples", args.triple)
    jet = first_jet(triple)
    basis = flat_kernel_sections(jet, args.degree_bound)
    ch = manifest.chart
    payload = {
        "triple": args.triple,
        "degree_bound": args.degree_bound,
        "dimension": len(basis),
        "basis": [
            {ch.fiber_vars[a]: rf_expression(RationalFunction(c)) for a, c in enumerate(s.components)}
            for s in basis
        ],
    }
    emit_report("kernel", manifest.digest, payload)
    return 0


def _resolve_lie_algebra(args, manifest: Manifest | None) -> tuple[str, LieAlgebraData]:
    name = args.lie_algebra
    if name in LIE_ALGEBRA_PRESETS:
        return name, LIE_ALGEBRA_PRESETS[name]()
    if manifest is None:
        raise ValidationError(f"unknown Lie algebra preset {name!r} and no manifest given")
    return name, manifest.lookup("lie_algebras", name)


def _resolve_ring_model(args, manifest: Manifest | None) -> tuple[str, GradedRingModel]:
    name = args.ring_model
    if name in RING_MODEL_PRESETS:
        return name, RING_MODEL_PRESETS[name]()
    if manifest is None:
        raise ValidationError(f"unknown ring model preset {name!r} and no manifest given")
    return name, manifest.lookup("ring_models", name)


def cmd_cohomology(args) -> int:
    manifest = load_manifest(args.manifest) if args.manifest else None
    digest = manifest.digest if manifest else _args_digest([args.lie_algebra, args.ring_model, args.coeff, args.degree])
    if args.lie_algebra:
        name, algebra = _resolve_lie_algebra(args, manifest)
        if args.coeff not in MODULE_PRESETS:
            raise ValidationError(f"unknown coefficient module {args.coeff!r}")
        module = MODULE_PRESETS[args.coeff](algebra)
        dims = cohomology_dims(ce_complex(algebra, module))
        payload = {
            "lie_algebra": name,
            "coefficients": args.coeff,
            "dims": dims,
        }
        if args.degree is not None:
            if not 0 <= args.degree < len(dims):
                raise ValidationError(f"degree {args.degree} outside 0..{len(dims) - 1}")
            payload["dim_in_degree"] = dims[args.degree]
    elif args.ring_model:
        name, model = _resolve_ring_model(args, manifest)
        top = len(model.betti) + 1
        dims = [cone_cohomology(model, k) for k in range(top + 1)]
        payload = {"ring_model": name, "twisted_dims": dims}
        if args.degree is not None:
            payload["dim_in_degree"] = cone_cohomology(model, args.degree)
    else:
        raise ValidationError("cohomology needs --lie-algebra or --ring-model")
    emit_report("cohomology", digest, payload)
    return 0


CRITERIA_PRESETS = {
    "s2xs2": lambda: RING_MODEL_PRESETS["s2xs2"](),
    "t2-sigma0": lambda: RING_MODEL_PRESETS["t2-sigma0"](),
    "su2-point": su2_algebra,
    "aff1-point": aff1_algebra,
}


def cmd_criteria(args) -> int:
    if args.preset:
        if args.preset not in CRITERIA_PRESETS:
            raise ValidationError(f"unknown criteria preset {args.preset!r}")
        family = CRITERIA_PRESETS[args.preset]()
        digest = _args_digest(["preset", args.preset])
        label = args.preset
    else:
        manifest = load_manifest(args.manifest)
        digest = manifest.digest
        if args.ring_model:
            family = manifest.lookup("ring_models", args.ring_model)
            label = args.ring_model
        elif args.lie_algebra:
            family = manifest.lookup("lie_algebras", args.lie_algebra)
            label = args.lie_algebra
        else:
            raise ValidationError("criteria needs --preset, --ring-model or --lie-algebra")
    report = evaluate_criteria(family)
    payload = {"family": label} | report.as_dict()
    emit_report("criteria", digest, payload)
    return 0


def cmd_deform(args) -> int:
    manifest = load_manifest(args.manifest)
    triple = manifest.lookup("triples", args.triple)
    cocycle = manifest.lookup("cocycles", args.cocycle)
    t = _parse_fraction(args.t, "--t")
    deformed = deform_by_cocycle(triple, cocycle, t)
    res = verify_structure_equations(deformed)
    names = ("vertical_square", "vertical_transport", "horizontal_transport", "curvature_equation")
    payload = {
        "triple": args.triple,
        "cocycle": args.cocycle,
        "t": str(t),
        "residuals": {name: {"zero": r.is_zero(), "terms": _element_payload(r)["terms"]}
                      for name, r in zip(names, res.as_tuple())},
        "all_zero": res.all_zero,
    }
    emit_report("deform", manifest.digest, payload)
    return 0


def _start_section(spec: str, grid: Grid, m: int) -> DiscreteSection:
    import numpy as np

    if spec == "zero":
        return DiscreteSection.zero(grid, m)
    if spec.startswith("const:"):
        level = float(Fraction(spec.split(":", 1)[1]))
        return DiscreteSection.constant(grid, *([level] * m))
    if spec.startswith("bump:"):
        amp = float(Fraction(spec.split(":", 1)[1]))
        x1, x2 = grid.mesh()
        vals = np.stack([amp * np.sin(x1) * np.cos(x2)] * m)
        return DiscreteSection(grid, vals)
    raise ValidationError(f"unknown start section {spec!r} (use zero, const:V, bump:A)")


def cmd_find_leaf(args) -> int:
    apply_thread_cap()
    grid = Grid(args.grid[0], args.grid[1])
    params = {}
    if args.eps is not None:
        params["eps"] = _parse_fraction(args.eps, "--eps")
    if args.delta is not None:
        params["delta"] = _parse_fraction(args.delta, "--delta")
    if args.family:
        triple = make_family(args.family, grid, params)
        reference = make_family(args.family, grid, {})
        digest = _args_digest(["family", args.family, sorted(params.items()), grid.shape])
        label = args.family
    else:
        manifest = load_manifest(args.manifest)
        symbolic = manifest.lookup("triples", args.triple)
        triple = sample_triple(symbolic, grid, params)
        reference = triple
        digest = manifest.digest
        label = args.triple
    s0 = _start_section(args.s0, grid, triple.m)
    report = find_leaf(
        reference,
        triple,
        s0,
        FindLeafParams(tol=args.tol, max_iter=args.max_iter),
    )
    payload = {
        "family": label,
        "grid": list(grid.shape),
        "params": {k: str(v) for k, v in params.items()},
        "backend": get_backend(),
        "converged": report.converged,
        "residual": _float_repr(report.residual),
        "iterations": report.iterations,
        "kernel_component": [_float_repr(v) for v in report.kernel_component],
        "start": args.s0,
        "tol": _float_repr(args.tol),
    }
    emit_report("find-leaf", digest, payload)
    return 0 if report.converged else 3


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leafstab",
        description="Exact leaf-stability calculus and a numerical leaf finder.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def with_manifest(p, required=True):
        p.add_argument("--manifest", required=required, help="path to a manifest file")
        return p

    p = with_manifest(sub.add_parser("check-poisson", help="test [pi, pi] = 0 exactly"))
    p.add_argument("--bivector", required=True)
    p.set_defaults(func=cmd_check_poisson)

    p = with_manifest(sub.add_parser("triple", help="extract a geometric triple and round-trip it"))
    p.add_argument("--bivector", required=True)
    p.set_defaults(func=cmd_triple)

    p = with_manifest(sub.add_parser("verify", help="structure-equation residuals"))
    p.add_argument("--triple")
    p.add_argument("--bivector")
    p.set_defaults(func=cmd_verify)

    p = with_manifest(sub.add_parser("leaf-check", help="leaf obstruction of a section"))
    p.add_argument("--triple", required=True)
    p.add_argument("--section", required=True)
    p.set_defaults(func=cmd_leaf_check)

    p = with_manifest(sub.add_parser("linearize", help="fiberwise-linear part along a section"))
    p.add_argument("--triple", required=True)
    p.add_argument("--section", required=True)
    p.set_defaults(func=cmd_linearize)

    p = with_manifest(sub.add_parser("jet", help="first-order triple along the zero leaf"))
    p.add_argument("--triple", required=True)
    p.set_defaults(func=cmd_jet)

    p = with_manifest(sub.add_parser("kernel", help="flat polynomial sections of the jet"))
    p.add_argument("--triple", required=True)
    p.add_argument("--degree-bound", type=int, default=2)
    p.set_defaults(func=cmd_kernel)

    p = with_manifest(sub.add_parser("cohomology", help="exact cohomology dimensions"), required=False)
    p.add_argument("--lie-algebra")
    p.add_argument("--ring-model")
    p.add_argument("--coeff", default="trivial")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_cohomology)

    p = with_manifest(sub.add_parser("criteria", help="stability criteria report"), required=False)
    p.add_argument("--preset")
    p.add_argument("--ring-model")
    p.add_argument("--lie-algebra")
    p.set_defaults(func=cmd_criteria)

    p = with_manifest(sub.add_parser("deform", help="first-order cocycle deformation + verify"))
    p.add_argument("--triple", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_deform)

    p = with_manifest(sub.add_parser("find-leaf", help="projected descent on the obstruction norm"), required=False)
    p.add_argument("--family", choices=["torus-area-family", "torus-epsilon", "torus-f-shift"])
    p.add_argument("--triple")
    p.add_argument("--eps")
    p.add_argument("--delta")
    p.add_argument("--grid", type=int, nargs=2, default=[32, 32])
    p.add_argument("--s0", default="zero")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=5000)
    p.set_defaults(func=cmd_find_leaf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ManifestError, ValidationError, ExpressionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
