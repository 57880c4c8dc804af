"""JSON and LaTeX rendering of radicals, presentations and matrix bases."""

from __future__ import annotations

import json
from typing import Any, Optional

from .exactreal import RadicalNumber
from .matrix_model import Matrix, MatrixBasis
from .rba_core import DegreeMap, InvolutionPerm, RbaPresentation, StructureTensor


class FormatError(ValueError):
    """Input does not follow any of the JSON schemas."""


# -- JSON ------------------------------------------------------------------------


def presentation_to_json(pres: RbaPresentation) -> dict:
    return {
        "d": pres.d,
        "star": list(pres.star.image),
        "lambda": [
            {"i": i, "j": j, "k": k, "value": v.to_json()} for i, j, k, v in pres.tensor.entries()
        ],
    }


def presentation_from_json(data: dict) -> RbaPresentation:
    try:
        d = int(data["d"])
        star = InvolutionPerm(tuple(data["star"]))
        entries = [
            (int(e["i"]), int(e["j"]), int(e["k"]), RadicalNumber.from_json(e["value"]))
            for e in data["lambda"]
        ]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed presentation: {exc}") from exc
    return RbaPresentation(StructureTensor.from_entries(d, entries), star)


def basis_to_json(basis: MatrixBasis) -> dict:
    return {
        "shape": list(basis.shape),
        "elements": [
            [[[v.to_json() for v in row] for row in block] for block in el] for el in basis.elements
        ],
    }


def basis_from_json(data: dict) -> MatrixBasis:
    try:
        shape = tuple(int(m) for m in data["shape"])
        elements = tuple(
            tuple(
                tuple(tuple(RadicalNumber.from_json(v) for v in row) for row in block) for block in el
            )
            for el in data["elements"]
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed basis: {exc}") from exc
    return MatrixBasis(shape, elements)


def degree_map_to_json(delta: Optional[DegreeMap]):
    return None if delta is None else [x.to_json() for x in delta.degrees]


def degree_map_from_json(data) -> Optional[DegreeMap]:
    if data is None:
        return None
    return DegreeMap(tuple(RadicalNumber.from_json(x) for x in data))


def load_object(data: dict):
    """Decode a basis (has ``elements``) or a presentation (has ``lambda``).

    A top-level ``degrees`` entry, if present, is returned alongside.
    """
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    if "basis" in data and isinstance(data["basis"], dict):
        return load_object({**data["basis"], "degrees": data.get("degrees")})
    if "presentation" in data and isinstance(data["presentation"], dict):
        return load_object({**data["presentation"], "degrees": data.get("degrees")})
    degrees = degree_map_from_json(data.get("degrees"))
    if "elements" in data:
        return basis_from_json(data), degrees
    if "lambda" in data:
        return presentation_from_json(data), degrees
    raise FormatError("JSON object is neither a basis nor a presentation")


def load_file(path) -> tuple[Any, Optional[DegreeMap]]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    return load_object(data)


# -- LaTeX -----------------------------------------------------------------------


def _latex_integer_combination(terms: list[tuple[int, int]]) -> str:
    """Render ``sum c * sqrt(r)`` for integer ``c``."""
    out = ""
    for idx, (r, c) in enumerate(terms):
        sign = "-" if c < 0 else ("+" if idx else "")
        mag = abs(c)
        if r == 1:
            body = str(mag)
        else:
            body = (str(mag) if mag != 1 else "") + rf"\sqrt{{{r}}}"
        out += sign + body
    return out or "0"


def latex_radical(x: RadicalNumber) -> str:
    """``(-1-16\\sqrt{3})/9`` style: one fraction over the common denominator."""
    if not x:
        return "0"
    den = x.denominator_lcm()
    terms = [(r, int(c * den)) for r, c in x.terms]
    body = _latex_integer_combination(terms)
    if den == 1:
        return body
    if len(terms) == 1 and terms[0][1] < 0:
        return rf"-\frac{{{body[1:]}}}{{{den}}}"
    return rf"\frac{{{body}}}{{{den}}}"


def latex_matrix(m: Matrix) -> str:
    """``bmatrix`` with the common denominator of all entries pulled out front."""
    den = 1
    for row in m:
        for v in row:
            d = v.denominator_lcm()
            den = den * d // _gcd(den, d)
    rows = []
    for row in m:
        if den == 1:
            rows.append(" & ".join(latex_radical(v) for v in row))
        else:
            rows.append(
                " & ".join(_latex_integer_combination([(r, int(c * den)) for r, c in v.terms]) for v in row)
            )
    body = r"\begin{bmatrix} " + r" \\ ".join(rows) + r" \end{bmatrix}"
    return body if den == 1 else rf"\frac{{1}}{{{den}}} " + body


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def latex_basis(basis: MatrixBasis) -> str:
    lines = []
    for i, el in enumerate(basis.elements):
        blocks = ", ".join(
            latex_radical(b[0][0]) if len(b) == 1 else latex_matrix(b) for b in el
        )
        lines.append(rf"b_{{{i}}} = \left({blocks}\right)")
    return ",\n".join(lines)


def latex_lambda_table(tensor: StructureTensor, skip_identity: bool = True) -> str:
    """``\\lambda_{ijk}`` entries grouped by equal value, in index order."""
    groups: dict[RadicalNumber, list[str]] = {}
    for i, j, k, v in tensor.entries():
        if skip_identity and 0 in (i, j, k):
            continue
        groups.setdefault(v, []).append(rf"\lambda_{{{i}{j}{k}}}" if tensor.size <= 10 else rf"\lambda_{{{i},{j},{k}}}")
    lines = [" = ".join(names) + " = " + latex_radical(v) for v, names in groups.items()]
    return "\\begin{array}{l}\n" + " \\\\\n".join(lines) + "\n\\end{array}"


# -- decimal ---------------------------------------------------------------------


def decimal_basis(basis: MatrixBasis, digits: int) -> list:
    return [[[[v.to_decimal(digits) for v in row] for row in block] for block in el] for el in basis.elements]


def decimal_presentation(pres: RbaPresentation, digits: int) -> list:
    return [[i, j, k, v.to_decimal(digits)] for i, j, k, v in pres.tensor.entries()]
