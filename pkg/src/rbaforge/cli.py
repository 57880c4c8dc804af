"""Command-line front end: ``rba-forge construct | verify | scan | export``.

Exit codes: 0 verified, 1 mathematical failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import constructions as C
from .exactreal import normalize_root, squarefree_decompose
from .linalg import RankError
from .matrix_model import (
    CharacterTheoryError,
    ClosureError,
    MatrixBasis,
    NotStarClosedError,
    character_data,
    extract_structure_constants,
)
from .rba_core import DegreeMap, tensor_flags, verify_rba
from .serialize import (
    FormatError,
    basis_to_json,
    decimal_basis,
    decimal_presentation,
    degree_map_to_json,
    latex_basis,
    latex_lambda_table,
    load_file,
    presentation_to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers -------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None


def parse_sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise UsageError(f"sign must be + or -, got {text!r}")


def parse_grid(values: Sequence[str]) -> list[Fraction]:
    """Expand ``1..10`` ranges (integer steps) and plain rationals, keeping order and uniqueness."""
    out: list[Fraction] = []
    for v in values:
        if ".." in v:
            lo, hi = v.split("..", 1)
            a, b = parse_rational(lo), parse_rational(hi)
            x = a
            while x <= b:
                out.append(x)
                x += 1
        else:
            out.append(parse_rational(v))
    seen = set()
    grid = [x for x in out if not (x in seen or seen.add(x))]
    return sorted(grid)


# -- reports ----------------------------------------------------------------------


def _character_summary(basis: MatrixBasis, delta: Optional[DegreeMap]) -> dict:
    try:
        cd = character_data(basis, delta)
    except CharacterTheoryError as exc:
        return {"passed": False, "error": str(exc)}
    return {
        "passed": True,
        "order": str(cd.order),
        "degrees": list(cd.degrees),
        "multiplicities": [str(m) for m in cd.multiplicities],
        "characters": [[str(v) for v in chi] for chi in cd.characters],
    }


def analyse(obj, delta: Optional[DegreeMap] = None) -> tuple[dict, bool]:
    """Full verification of a basis or presentation; returns ``(payload, ok)``."""
    payload: dict = {}
    if isinstance(obj, MatrixBasis):
        payload["basis"] = basis_to_json(obj)
        pres = extract_structure_constants(obj)
        if delta is None:
            delta = obj.positive_degree_map()
    else:
        pres = obj
    report = verify_rba(pres, delta)
    payload["presentation"] = presentation_to_json(pres)
    payload["degree_map"] = degree_map_to_json(report.degree_map)
    payload["report"] = report.to_dict()
    ok = report.is_rba
    if isinstance(obj, MatrixBasis) and report.degree_map_positive:
        chars = _character_summary(obj, report.degree_map)
        payload["characters"] = chars
        ok = ok and chars["passed"]
    return payload, ok


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def render(obj, fmt: str, digits: int, payload: Optional[dict] = None) -> str:
    if fmt == "json":
        if payload is None:
            payload = (
                basis_to_json(obj) if isinstance(obj, MatrixBasis) else presentation_to_json(obj)
            )
        return json.dumps(payload, indent=1, sort_keys=True)
    if fmt == "latex":
        parts = []
        if isinstance(obj, MatrixBasis):
            parts.append(latex_basis(obj))
            pres = extract_structure_constants(obj)
        else:
            pres = obj
        parts.append(latex_lambda_table(pres.tensor))
        return "\n\n".join(parts)
    if fmt == "decimal":
        if isinstance(obj, MatrixBasis):
            return json.dumps({"basis": decimal_basis(obj, digits)}, indent=1)
        return json.dumps({"lambda": decimal_presentation(obj, digits)}, indent=1)
    raise UsageError(f"unknown format {fmt!r}")


# -- construct --------------------------------------------------------------------


def build(args) -> tuple[object, dict]:
    kind = args.kind
    if kind == "dim5":
        if not args.d:
            raise UsageError("dim5 needs --d <d1> <d2> <d3>")
        d = [parse_rational(x) for x in args.d]
        signs = [parse_sign(x) for x in (args.signs or ["+", "+", "+"])]
        try:
            params = C.Dim5Params(*d, *signs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return C.dim5_family(params), {"d": [str(x) for x in d], "signs": signs}
    if kind == "cm":
        if args.m is None or args.delta is None:
            raise UsageError("cm needs --m and --delta")
        try:
            params = C.CmParams(
                args.m, parse_rational(args.delta), parse_sign(args.sign_x), parse_sign(args.sign_y)
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return C.cm_basis(params), {"m": args.m, "delta": args.delta}
    if kind == "mn":
        if args.n is None or args.n < 2:
            raise UsageError("mn needs --n >= 2")
        return C.rational_basis_mn(args.n), {"n": args.n}
    if kind == "sum":
        if not args.dims or any(k < 1 for k in args.dims):
            raise UsageError("sum needs --dims with positive entries")
        return C.semisimple_rational_basis(args.dims), {"dims": args.dims}
    if kind == "affine":
        if args.n is None or args.n < 2:
            raise UsageError("affine needs --n (the plane order q) >= 2")
        pres, ct = C.affine_plane_ta(args.n)
        return C.character_table_to_diag(ct), {"q": args.n}
    raise UsageError(f"unknown construction {kind!r}")


def cmd_construct(args) -> int:
    obj, params = build(args)
    payload, ok = analyse(obj)
    payload = {"construction": args.kind, "params": params, **payload}
    _emit(render(obj, args.format, args.digits, payload if args.format == "json" else None), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        obj, delta = load_file(args.input)
    except (OSError, FormatError, ValueError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    try:
        payload, ok = analyse(obj, delta)
    except (ClosureError, RankError, NotStarClosedError) as exc:
        _emit(json.dumps({"report": {"is_rba": False, "error": str(exc)}}, indent=1), args.out)
        return EXIT_FAIL
    _emit(json.dumps(payload, indent=1, sort_keys=True), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    try:
        obj, _ = load_file(args.input)
    except (OSError, FormatError, ValueError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    _emit(render(obj, args.format, args.digits), args.out)
    return EXIT_OK


# -- scan -------------------------------------------------------------------------


@dataclass(frozen=True)
class Filter:
    rational: bool = False
    nonnegative: bool = False
    integral: bool = False
    max_denominator: Optional[int] = None
    radicands: Optional[frozenset] = None
    field: bool = False

    @classmethod
    def parse(cls, specs: Iterable[str]) -> "Filter":
        kw: dict = {}
        for spec in specs:
            for item in spec.split(","):
                item = item.strip()
                if not item:
                    continue
                if item in ("rational", "nonnegative", "integral", "field"):
                    kw[item] = True
                elif item.startswith("maxden:"):
                    kw["max_denominator"] = _int_arg(item.split(":", 1)[1])
                elif item.startswith("radicands:"):
                    kw["radicands"] = frozenset(_int_arg(r) for r in item.split(":", 1)[1].split("+"))
                else:
                    raise UsageError(f"unknown filter {item!r}")
        return cls(**kw)

    def accepts(self, flags: dict) -> bool:
        if self.rational and not flags["is_rational"]:
            return False
        if self.nonnegative and not flags["nonnegative"]:
            return False
        if self.integral and not flags["is_integral"]:
            return False
        if self.max_denominator is not None and flags["max_denominator"] > self.max_denominator:
            return False
        if self.radicands is not None and not set(flags["radicands"]) <= self.radicands:
            return False
        if self.field and not flags.get("entries_in_field", False):
            return False
        return True


def _flags_dict(tensor) -> dict:
    f = tensor_flags(tensor)
    return {
        "nonnegative": f.nonnegative,
        "is_table_algebra": f.nonnegative,  # the family always carries a positive degree map
        "is_rational": f.is_rational,
        "is_integral": f.is_integral,
        "max_denominator": f.max_denominator,
        "radicands": sorted(f.radicands),
    }


def _scan_dim5_point(point: tuple[Fraction, Fraction, Fraction]) -> list[dict]:
    d1, d2, d3 = point
    by_eps = {}
    for eps in (1, -1):
        by_eps[eps] = _flags_dict(C._dim5_table(d1, d2, d3, eps))
    rows = []
    for signs in C.SIGN_TRIPLES:
        flags = dict(by_eps[signs[0] * signs[1] * signs[2]])
        rows.append({"point": [str(d1), str(d2), str(d3)], "signs": list(signs), "flags": flags})
    return rows


def _cross_check_dim5(row: dict) -> bool:
    d = [Fraction(x) for x in row["point"]]
    params = C.Dim5Params(*d, *row["signs"])
    return extract_structure_constants(C.dim5_family(params)).tensor == C.dim5_lambda_table(params)


def _quadratic_field_radicands(*gens: Fraction) -> frozenset:
    """Square-free radicands spanning Q(sqrt g1, sqrt g2, ...)."""
    rads = {1}
    for g in gens:
        _, r = normalize_root(g)
        rads |= {squarefree_decompose(r * x)[1] for x in rads}
    return frozenset(rads)


def _scan_cm_point(point: tuple[int, Fraction]) -> list[dict]:
    m, delta = point
    params = C.CmParams(m, delta)
    basis = C.cm_basis(params)
    flags = _flags_dict(extract_structure_constants(basis).tensor)
    entry_rads = sorted(
        {r for el in basis.elements for b in el for row in b for v in row for r in v.radicands()}
    )
    flags["entry_radicands"] = entry_rads
    flags["entries_in_field"] = set(entry_rads) <= _quadratic_field_radicands(Fraction(m), params.n)
    return [{"point": [m, str(delta)], "flags": flags}]


def scan_rows(kind: str, points: list, jobs: int) -> Iterable[dict]:
    worker = _scan_dim5_point if kind == "dim5" else _scan_cm_point
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves input order, so output is independent of scheduling
            results = pool.map(worker, points, chunksize=max(1, len(points) // (4 * jobs)))
            for rows in results:
                yield from rows
    else:
        for p in points:
            yield from worker(p)


def cmd_scan(args) -> int:
    filt = Filter.parse(args.filter or [])
    if args.kind == "dim5":
        grids = [args.d1, args.d2, args.d3]
        if args.grid:
            grids = [g or args.grid for g in grids]
        if any(not g for g in grids):
            raise UsageError("dim5 scan needs --grid or all of --d1 --d2 --d3")
        g1, g2, g3 = (parse_grid(g) for g in grids)
        if any(x <= 0 for g in (g1, g2, g3) for x in g):
            raise UsageError("degrees must be positive")
        points = [(a, b, c) for a in g1 for b in g2 for c in g3]
    elif args.kind == "cm":
        if not args.m or not args.delta:
            raise UsageError("cm scan needs --m and --delta")
        ms = sorted({int(x) for x in parse_grid(args.m)})
        deltas = parse_grid(args.delta)
        if any(m < 2 for m in ms) or any(x <= 0 for x in deltas):
            raise UsageError("cm scan needs m >= 2 and positive delta")
        points = [(m, dl) for m in ms for dl in deltas]
    else:
        raise UsageError(f"unknown scan family {args.kind!r}")
    if not points:
        raise UsageError("empty grid")

    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for row in scan_rows(args.kind, points, args.jobs):
            if not filt.accepts(row["flags"]):
                continue
            if args.cross_check:
                if args.kind == "dim5":
                    row["cross_check"] = _cross_check_dim5(row)
                else:
                    m, dl = row["point"]
                    basis = C.cm_basis(C.CmParams(m, Fraction(dl)))
                    row["cross_check"] = verify_rba(
                        extract_structure_constants(basis), basis.positive_degree_map()
                    ).is_rba
            out.write(json.dumps(row, sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# -- entry point ------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rba-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", default="json", choices=["json", "latex", "decimal"])
        p.add_argument("--digits", type=int, default=12)
        p.add_argument("--out", default=None)

    pc = sub.add_parser("construct", help="build a basis and verify it")
    pc.add_argument("kind", choices=["dim5", "cm", "mn", "sum", "affine"])
    pc.add_argument("--d", nargs=3, metavar="DELTA")
    pc.add_argument("--signs", nargs=3, metavar="SIGN")
    pc.add_argument("--m", type=int)
    pc.add_argument("--delta")
    pc.add_argument("--sign-x", default="-")
    pc.add_argument("--sign-y", default="+")
    pc.add_argument("--n", type=int)
    pc.add_argument("--dims", nargs="+", type=int)
    common(pc)

    pv = sub.add_parser("verify", help="verify a basis or presentation JSON file")
    pv.add_argument("input")
    pv.add_argument("--out", default=None)

    ps = sub.add_parser("scan", help="scan a parameter grid")
    ps.add_argument("kind", choices=["dim5", "cm"])
    ps.add_argument("--grid", nargs="+", help="values for every degree, e.g. 1..10 3/2")
    ps.add_argument("--d1", nargs="+")
    ps.add_argument("--d2", nargs="+")
    ps.add_argument("--d3", nargs="+")
    ps.add_argument("--m", nargs="+")
    ps.add_argument("--delta", nargs="+")
    ps.add_argument("--filter", action="append")
    ps.add_argument("--cross-check", action="store_true")
    ps.add_argument("--jobs", type=int, default=1)
    ps.add_argument("--out", default=None)

    pe = sub.add_parser("export", help="render a JSON file as json, latex or decimal")
    pe.add_argument("input")
    common(pe)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {
        "construct": cmd_construct,
        "verify": cmd_verify,
        "scan": cmd_scan,
        "export": cmd_export,
    }
    try:
        if getattr(args, "digits", 1) < 1:
            raise UsageError("--digits must be >= 1")
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"rba-forge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
