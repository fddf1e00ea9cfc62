"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 refusal, 64 usage error,
65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import cech, normal_forms as nf, quantize as qz
from .polytope import (
    DelzantPolytope,
    LatticePoint,
    PolytopeError,
    interior_lattice_points,
    validate_delzant,
)
from .symcalc.scalar import parse_rational

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_REFUSED = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65


class SystemParseError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class SystemDescription:
    kind: str  # polytope | inventory | band
    polytope: DelzantPolytope | None = None
    inventory: qz.FiberInventory | None = None
    band: cech.CechBandComplex | None = None


# parsing ---------------------------------------------------------------------


def _rational(value, path: str) -> Fraction:
    if not isinstance(value, str):
        raise SystemParseError(path, f"expected a rational string like \"p/q\", got {value!r}")
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SystemParseError(path, str(exc)) from None


def _int(obj: dict, key: str, path: str, default=None) -> int:
    if key not in obj:
        if default is None:
            raise SystemParseError(f"{path}.{key}", "missing required field")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SystemParseError(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def _bool(obj: dict, key: str, path: str, default: bool) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        raise SystemParseError(f"{path}.{key}", f"expected true or false, got {value!r}")
    return value


def _object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise SystemParseError(path, "expected an object")
    return value


def _check_keys(obj: dict, allowed: set[str], path: str):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SystemParseError(f"{path}.{extra[0]}", "unknown field")


def system_from_json(data) -> SystemDescription:
    root = _object(data, "$")
    variants = [k for k in ("polytope", "inventory", "band") if k in root]
    if len(variants) != 1 or len(root) != 1:
        raise SystemParseError("$", "expected exactly one of polytope, inventory, band")
    kind = variants[0]
    body = _object(root[kind], f"$.{kind}")
    path = f"$.{kind}"
    if kind == "polytope":
        _check_keys(body, {"vertices"}, path)
        verts = body.get("vertices")
        if not isinstance(verts, list) or not verts:
            raise SystemParseError(f"{path}.vertices", "expected a nonempty list of points")
        points = []
        for i, v in enumerate(verts):
            if not isinstance(v, list) or not v:
                raise SystemParseError(f"{path}.vertices[{i}]", "expected a list of rational strings")
            points.append([_rational(c, f"{path}.vertices[{i}][{j}]") for j, c in enumerate(v)])
        try:
            return SystemDescription(kind, polytope=DelzantPolytope(points))
        except PolytopeError as exc:
            raise SystemParseError(f"{path}.vertices", str(exc)) from None
    if kind == "inventory":
        _check_keys(body, {"n", "compact", "n_r", "focus", "hyperbolic_points", "k_h"}, path)
        focus_raw = body.get("focus", [])
        if not isinstance(focus_raw, list):
            raise SystemParseError(f"{path}.focus", "expected a list")
        fibers = []
        for i, f in enumerate(focus_raw):
            fp = f"{path}.focus[{i}]"
            f = _object(f, fp)
            _check_keys(f, {"nodes", "bs", "compact_fiber"}, fp)
            fibers.append(
                (_int(f, "nodes", fp, 1), _bool(f, "bs", fp, True), _bool(f, "compact_fiber", fp, True))
            )
        try:
            hyper = _int(body, "hyperbolic_points", path, 0)
            inv = qz.FiberInventory(
                n=_int(body, "n", path),
                compact=_bool(body, "compact", path, True),
                n_r=_int(body, "n_r", path),
                focus_fibers=tuple(qz.FocusFiber(*f) for f in fibers),
                hyperbolic_points=hyper,
                k_h=_int(body, "k_h", path, 1 if hyper else 0),
            )
        except SystemParseError:
            raise
        except ValueError as exc:
            raise SystemParseError(path, str(exc)) from None
        return SystemDescription(kind, inventory=inv)
    _check_keys(body, {"interval", "cover_size"}, path)
    interval = body.get("interval")
    if not isinstance(interval, list) or len(interval) != 2:
        raise SystemParseError(f"{path}.interval", "expected two rational strings")
    a = _rational(interval[0], f"{path}.interval[0]")
    b = _rational(interval[1], f"{path}.interval[1]")
    k = _int(body, "cover_size", path, 3)
    try:
        return SystemDescription(kind, band=cech.CechBandComplex(cech.Band(a, b), k))
    except ValueError as exc:
        raise SystemParseError(path, str(exc)) from None


def parse_system(path: str) -> SystemDescription:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SystemParseError(path, f"cannot read: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SystemParseError(path, f"invalid JSON: {exc}") from None
    return system_from_json(data)


# svg --------------------------------------------------------------------------

PX_PER_UNIT = 40
MARGIN = 20
RADIUS = 4


def _num(v: Fraction) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{float(v):.3f}".rstrip("0").rstrip(".")


def render_svg(P: DelzantPolytope, bs: Sequence[LatticePoint]) -> str:
    """SVG 1.1 drawing of a polygon or segment with its BS points and origin axes."""
    if P.dimension > 2:
        raise PolytopeError("SVG rendering supports dimension 1 and 2 only")
    if P.dimension == 1:
        lo, hi = P.bounding_box()
        xmin, xmax = min(lo[0], 0), max(hi[0], 0)
        ymin = ymax = Fraction(0)
    else:
        lo, hi = P.bounding_box()
        xmin, xmax = min(lo[0], 0), max(hi[0], 0)
        ymin, ymax = min(lo[1], 0), max(hi[1], 0)
    width = (xmax - xmin) * PX_PER_UNIT + 2 * MARGIN
    height = (ymax - ymin) * PX_PER_UNIT + 2 * MARGIN

    def sx(x) -> str:
        return _num((Fraction(x) - xmin) * PX_PER_UNIT + MARGIN)

    def sy(y) -> str:
        return _num((ymax - Fraction(y)) * PX_PER_UNIT + MARGIN)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" '
        f'height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">',
        '<g id="axes" stroke="#999999" stroke-width="1">',
        f'<line x1="0" y1="{sy(0)}" x2="{_num(width)}" y2="{sy(0)}"/>',
        f'<line x1="{sx(0)}" y1="0" x2="{sx(0)}" y2="{_num(height)}"/>',
        "</g>",
    ]
    if P.dimension == 1:
        a, b = P.vertices[0][0], P.vertices[-1][0]
        lines.append(
            f'<line id="polytope" x1="{sx(a)}" y1="{sy(0)}" x2="{sx(b)}" y2="{sy(0)}" '
            'stroke="#000000" stroke-width="3"/>'
        )
    else:
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in P.polygon_order())
        lines.append(f'<polygon id="polytope" points="{pts}" fill="none" stroke="#000000" stroke-width="2"/>')
    lines.append('<g id="bs-leaves" fill="#000000">')
    for p in sorted(bs, key=lambda lp: lp.coordinates):
        x = p.coordinates[0]
        y = p.coordinates[1] if P.dimension == 2 else 0
        lines.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="{RADIUS}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# verification suites ----------------------------------------------------------


def _suite_lifts() -> list[tuple[str, bool]]:
    out = []
    for name in ("rho_h", "rho_e", "rho_f"):
        fam = nf.cotangent_lift(name)
        for param, ok in nf.lift_matches_hamiltonians(fam).items():
            out.append((f"{fam.name} generator d/d{param} equals Hamiltonian field", ok))
    return out


def _suite_connection() -> list[tuple[str, bool]]:
    out = []
    for kind in (nf.BlockKind.REGULAR, nf.BlockKind.ELLIPTIC, nf.BlockKind.HYPERBOLIC):
        conn = nf.connection_one_form(kind)
        for cond, ok in conn.conditions().items():
            out.append((f"{kind.value} Theta = {conn.form}: {cond}", ok))
    return out


def _suite_blocks() -> list[tuple[str, bool]]:
    out = []
    for wt in nf.all_williamson_types(4):
        system = nf.compose_blocks(wt)
        label = f"(k={wt.k}, k_e={wt.k_e}, k_h={wt.k_h}, k_f={wt.k_f})"
        out.append((f"{label} moment map is involutive", system.is_involutive()))
    return out


SUITES = {"lifts": _suite_lifts, "connection": _suite_connection, "blocks": _suite_blocks}


# commands ---------------------------------------------------------------------


def _cmd_quantize(args) -> int:
    desc = parse_system(args.input)
    if args.model == "toric":
        if desc.kind != "polytope":
            raise SystemParseError("$", "the toric model needs a polytope description")
        report = qz.quantize_toric(desc.polytope)
    else:
        if desc.kind != "inventory":
            raise SystemParseError("$", f"the {args.model} model needs an inventory description")
        fn = qz.quantize_new if args.model == "new" else qz.quantize_old
        report = fn(desc.inventory)
    if args.json:
        print(report.to_json())
    else:
        print(f"model = {report.model}")
        print(f"degree = {report.degree}")
        print(f"dim = {report.finite_dim}" if report.is_finite else f"finite dim = {report.finite_dim}")
        print(f"Q = {report.render_text()}")
    return EXIT_OK


def _cmd_polytope(args) -> int:
    desc = parse_system(args.input)
    if desc.kind != "polytope":
        raise SystemParseError("$", "expected a polytope description")
    P = desc.polytope
    show_all = not (args.check_delzant or args.count_interior or args.svg)
    if args.check_delzant or show_all:
        rep = validate_delzant(P)
        if rep.ok:
            print("delzant = ok")
        else:
            pts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in rep.violations)
            print(f"delzant = violated at {pts}")
    points = interior_lattice_points(P)
    if args.count_interior or show_all:
        print(f"interior = {len(points)}")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_svg(P, points))
        print(f"svg = {args.svg}")
    return EXIT_OK


def _cmd_cech(args) -> int:
    desc = parse_system(args.input)
    if desc.kind != "band":
        raise SystemParseError("$", "expected a band description")
    res = cech.cohomology_dimensions(desc.band)
    print(f"H0={res.h0} H1={res.h1} BS={{{','.join(str(m) for m in res.bs_leaves)}}}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = SUITES[args.suite]()
    for label, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {label}")
    passed = sum(ok for _, ok in results)
    print(f"{passed}/{len(results)} passed")
    return EXIT_OK if passed == len(results) else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cotquant", description="Quantization of integrable systems via cotangent models.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("quantize", help="quantization report for a polytope or fiber inventory")
    q.add_argument("--model", required=True, choices=["toric", "old", "new"])
    q.add_argument("--input", required=True, metavar="FILE")
    q.add_argument("--json", action="store_true", help="print the report as JSON")
    q.set_defaults(func=_cmd_quantize)

    p = sub.add_parser("polytope", help="Delzant check, interior lattice points, SVG plot")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--check-delzant", action="store_true")
    p.add_argument("--count-interior", action="store_true")
    p.add_argument("--svg", metavar="OUT")
    p.set_defaults(func=_cmd_polytope)

    c = sub.add_parser("cech", help="cohomology of a cylinder band")
    c.add_argument("--input", required=True, metavar="FILE")
    c.set_defaults(func=_cmd_cech)

    v = sub.add_parser("verify", help="run a symbolic verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.set_defaults(func=_cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except qz.UnsupportedHyperbolicMultiplicity as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_REFUSED
    except (SystemParseError, PolytopeError, qz.QuantizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATAERR


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
