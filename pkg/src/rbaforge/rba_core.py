"""Abstract RBA presentations: structure tensors, axiom checks, degree maps.

A presentation stores the products ``b_i b_j = sum_k lam[i][j][k] b_k`` sparsely,
one ``{k: value}`` dict per ordered pair, together with the involution on
indices.  Index 0 is always the identity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .exactreal import ONE, ZERO, RadicalNumber, as_radical, radical_sum

log = logging.getLogger(__name__)

__all__ = [
    "CheckResult",
    "DegreeMap",
    "InvalidCharacterError",
    "InvolutionPerm",
    "RbaPresentation",
    "StructureError",
    "StructureTensor",
    "TensorFlags",
    "VerificationReport",
    "circle_product",
    "degree_candidate",
    "extend_degree_map",
    "idempotent_of_character",
    "is_commutative",
    "multiply",
    "rescale",
    "standard_trace",
    "standardize",
    "tensor_flags",
    "verify_degree_map",
    "verify_rba",
]

MAX_WITNESSES = 25


class StructureError(ValueError):
    """Inconsistent dimensions or malformed tensor data."""


class InvalidCharacterError(ValueError):
    """A supplied map is not a real-valued linear character."""


@dataclass(frozen=True)
class InvolutionPerm:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        object.__setattr__(self, "image", image)
        n = len(image)
        if n == 0 or image[0] != 0:
            raise StructureError("involution must fix index 0")
        for i, j in enumerate(image):
            if not 0 <= j < n or image[j] != i:
                raise StructureError(f"involution is not involutive at {i} -> {j}")

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __len__(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, size: int) -> "InvolutionPerm":
        return cls(tuple(range(size)))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.image) if i == j)

    def cycles(self) -> str:
        """Cycle notation, e.g. ``(0)(3)(1 2)``: fixed points first, then 2-cycles."""
        fixed = "".join(f"({i})" for i in self.fixed_points())
        swaps = "".join(f"({i} {j})" for i, j in enumerate(self.image) if i < j)
        return fixed + swaps


class StructureTensor:
    """Sparse ``(d+1)^3`` array of structure constants."""

    __slots__ = ("d", "_rows")

    def __init__(self, d: int, products: Sequence[Sequence[Mapping[int, RadicalNumber]]]):
        size = d + 1
        if len(products) != size or any(len(row) != size for row in products):
            raise StructureError(f"product table is not {size}x{size}")
        rows = []
        for row in products:
            new_row = []
            for prod in row:
                entry = {}
                for k, v in prod.items():
                    if not 0 <= k < size:
                        raise StructureError(f"index {k} out of range for d={d}")
                    v = as_radical(v)
                    if v:
                        entry[int(k)] = v
                new_row.append(entry)
            rows.append(tuple(new_row))
        self.d = d
        self._rows = tuple(rows)

    @classmethod
    def from_entries(cls, d: int, entries: Iterable[tuple[int, int, int, object]]) -> "StructureTensor":
        size = d + 1
        products = [[{} for _ in range(size)] for _ in range(size)]
        for i, j, k, v in entries:
            if not (0 <= i < size and 0 <= j < size):
                raise StructureError(f"index ({i},{j},{k}) out of range for d={d}")
            products[i][j][k] = products[i][j].get(k, ZERO) + as_radical(v)
        return cls(d, products)

    @property
    def size(self) -> int:
        return self.d + 1

    def product(self, i: int, j: int) -> Mapping[int, RadicalNumber]:
        return self._rows[i][j]

    def __call__(self, i: int, j: int, k: int) -> RadicalNumber:
        return self._rows[i][j].get(k, ZERO)

    def entries(self) -> Iterable[tuple[int, int, int, RadicalNumber]]:
        for i, row in enumerate(self._rows):
            for j, prod in enumerate(row):
                for k in sorted(prod):
                    yield i, j, k, prod[k]

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.d == other.d and self._rows == other._rows

    def __hash__(self):
        return hash((self.d, tuple(tuple(tuple(sorted(p.items())) for p in row) for row in self._rows)))

    def __repr__(self) -> str:
        nnz = sum(len(p) for row in self._rows for p in row)
        return f"StructureTensor(d={self.d}, nnz={nnz})"


@dataclass(frozen=True)
class RbaPresentation:
    tensor: StructureTensor
    star: InvolutionPerm

    def __post_init__(self):
        if len(self.star) != self.tensor.size:
            raise StructureError(
                f"involution has {len(self.star)} points but tensor has size {self.tensor.size}"
            )

    @property
    def d(self) -> int:
        return self.tensor.d

    @property
    def size(self) -> int:
        return self.tensor.size

    def lam(self, i: int, j: int, k: int) -> RadicalNumber:
        return self.tensor(i, j, k)


@dataclass(frozen=True)
class DegreeMap:
    degrees: tuple[RadicalNumber, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(as_radical(x) for x in self.degrees))

    @classmethod
    def of(cls, *values) -> "DegreeMap":
        return cls(tuple(values))

    @property
    def order(self) -> RadicalNumber:
        return radical_sum(self.degrees)

    def __getitem__(self, i: int) -> RadicalNumber:
        return self.degrees[i]

    def __len__(self) -> int:
        return len(self.degrees)

    def is_positive(self) -> bool:
        return all(x.sign() > 0 for x in self.degrees)

    def apply(self, coords: Sequence[RadicalNumber]) -> RadicalNumber:
        return radical_sum(as_radical(c) * d for c, d in zip(coords, self.degrees))


# -- arithmetic on coordinate vectors -----------------------------------------


def multiply(tensor: StructureTensor, x: Sequence, y: Sequence) -> list[RadicalNumber]:
    """Product of two elements given by coordinate vectors."""
    acc: dict[int, list[RadicalNumber]] = {}
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = as_radical(xi) * yj
            for k, v in tensor.product(i, j).items():
                acc.setdefault(k, []).append(c * v)
    out = [ZERO] * tensor.size
    for k, vals in acc.items():
        out[k] = radical_sum(vals)
    return out


def _combine(pairs: Iterable[tuple[RadicalNumber, Mapping[int, RadicalNumber]]]) -> dict[int, RadicalNumber]:
    acc: dict[int, list[RadicalNumber]] = {}
    for c, prod in pairs:
        for k, v in prod.items():
            acc.setdefault(k, []).append(c * v)
    out = {}
    for k, vals in acc.items():
        s = radical_sum(vals)
        if s:
            out[k] = s
    return out


def is_commutative(pres: RbaPresentation) -> bool:
    t = pres.tensor
    return all(t.product(i, j) == t.product(j, i) for i in range(t.size) for j in range(i))


# -- verification -------------------------------------------------------------


@dataclass
class CheckResult:
    passed: bool = True
    failures: int = 0
    witnesses: list = field(default_factory=list)

    def fail(self, witness) -> None:
        self.passed = False
        self.failures += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)


@dataclass(frozen=True)
class TensorFlags:
    nonnegative: bool
    is_rational: bool
    is_integral: bool
    max_denominator: int
    radicands: frozenset


def tensor_flags(tensor: StructureTensor) -> TensorFlags:
    """Entry-wise properties of a tensor; cheap enough for parameter scans."""
    nonneg = rational = integral = True
    max_den = 1
    rads: set[int] = set()
    for _, _, _, v in tensor.entries():
        terms = v.terms
        if len(terms) == 1 and terms[0][0] == 1:
            c = terms[0][1]
            if c < 0:
                nonneg = False
            if c.denominator != 1:
                integral = False
            if c.denominator > max_den:
                max_den = c.denominator
            rads.add(1)
            continue
        rational = integral = False
        for r, c in terms:
            rads.add(r)
            if c.denominator > max_den:
                max_den = c.denominator
        if nonneg and v.sign() < 0:
            nonneg = False
    return TensorFlags(nonneg, rational, integral, max_den, frozenset(rads))


AXIOMS = ("identity", "associativity", "star", "unit_coefficient", "positivity")


@dataclass
class VerificationReport:
    checks: dict[str, CheckResult]
    flags: TensorFlags
    degree_map: Optional[DegreeMap] = None
    degree_map_positive: bool = False

    @property
    def is_rba(self) -> bool:
        return all(c.passed for c in self.checks.values())

    @property
    def is_table_algebra(self) -> bool:
        return self.is_rba and self.flags.nonnegative and self.degree_map_positive

    @property
    def is_rational(self) -> bool:
        return self.flags.is_rational

    @property
    def is_integral(self) -> bool:
        return self.flags.is_integral

    @property
    def max_denominator(self) -> int:
        return self.flags.max_denominator

    def failed(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_dict(self) -> dict:
        return {
            "is_rba": self.is_rba,
            "checks": {
                name: {
                    "passed": c.passed,
                    "failures": c.failures,
                    "witnesses": [_jsonable(w) for w in c.witnesses],
                }
                for name, c in self.checks.items()
            },
            "is_table_algebra": self.is_table_algebra,
            "nonnegative": self.flags.nonnegative,
            "is_rational": self.is_rational,
            "is_integral": self.is_integral,
            "max_denominator": self.max_denominator,
            "radicands": sorted(self.flags.radicands),
            "degree_map": None if self.degree_map is None else [str(x) for x in self.degree_map.degrees],
            "degree_map_positive": self.degree_map_positive,
        }


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    if isinstance(w, RadicalNumber):
        return str(w)
    return w


def verify_rba(pres: RbaPresentation, delta: Optional[DegreeMap] = None) -> VerificationReport:
    """Check every RBA axiom, collecting all failures.

    ``delta`` is an optional degree map; without one the standard candidate
    ``lam[i][i*][0]`` is tried.
    """
    t, star = pres.tensor, pres.star
    size = t.size
    checks = {name: CheckResult() for name in AXIOMS}

    ident = checks["identity"]
    for j in range(size):
        expected = {j: ONE}
        if t.product(0, j) != expected:
            ident.fail((0, j))
        if t.product(j, 0) != expected:
            ident.fail((j, 0))

    assoc = checks["associativity"]
    for i in range(size):
        for j in range(size):
            ij = t.product(i, j)
            for k in range(size):
                left = _combine((c, t.product(m, k)) for m, c in ij.items())
                right = _combine((c, t.product(i, m)) for m, c in t.product(j, k).items())
                if left != right:
                    for l in sorted(set(left) | set(right)):
                        if left.get(l, ZERO) != right.get(l, ZERO):
                            assoc.fail((i, j, k, l))

    st = checks["star"]
    for i in range(size):
        for j in range(size):
            a = t.product(i, j)
            b = t.product(star(j), star(i))
            mapped = {star(k): v for k, v in b.items()}
            if a != mapped:
                for k in sorted(set(a) | set(mapped)):
                    if a.get(k, ZERO) != mapped.get(k, ZERO):
                        st.fail((i, j, k))

    unit = checks["unit_coefficient"]
    pos = checks["positivity"]
    for i in range(size):
        for j in range(size):
            nonzero = bool(t(i, j, 0))
            if nonzero != (j == star(i)):
                unit.fail((i, j))
        a, b = t(i, star(i), 0), t(star(i), i, 0)
        if a != b or a.sign() <= 0:
            pos.fail((i, a))

    flags = tensor_flags(t)
    report = VerificationReport(checks=checks, flags=flags)
    if delta is None:
        delta = degree_candidate(pres)
    if delta is not None:
        ok, positive = verify_degree_map(pres, delta)
        if ok:
            report.degree_map = delta
            report.degree_map_positive = positive
    return report


# -- degree maps ---------------------------------------------------------------


def verify_degree_map(pres: RbaPresentation, delta: DegreeMap) -> tuple[bool, bool]:
    """Return ``(is_degree_map, is_positive)``.

    A degree map is a linear character with ``delta(b_0) = 1`` that agrees on
    ``b_i`` and ``b_i*``.
    """
    t, star = pres.tensor, pres.star
    if len(delta) != t.size:
        raise StructureError(f"degree map has length {len(delta)}, expected {t.size}")
    ok = delta[0] == ONE and all(delta[i] == delta[star(i)] for i in range(t.size))
    if ok:
        for i in range(t.size):
            for j in range(t.size):
                rhs = radical_sum(v * delta[k] for k, v in t.product(i, j).items())
                if delta[i] * delta[j] != rhs:
                    ok = False
                    break
            if not ok:
                break
    return ok, ok and delta.is_positive()


def degree_candidate(pres: RbaPresentation) -> Optional[DegreeMap]:
    """The standard guess ``delta_i = lam[i][i*][0]``, if it is a degree map."""
    t, star = pres.tensor, pres.star
    delta = DegreeMap(tuple(t(i, star(i), 0) for i in range(t.size)))
    ok, _ = verify_degree_map(pres, delta)
    return delta if ok else None


def rescale(pres: RbaPresentation, factors: Sequence, delta: Optional[DegreeMap] = None):
    """Replace ``b_i`` by ``c_i b_i``; returns the new presentation (and degree map if given)."""
    t, star = pres.tensor, pres.star
    c = [as_radical(x) for x in factors]
    if c[0] != ONE:
        raise StructureError("the identity cannot be rescaled")
    if any(c[i] != c[star(i)] for i in range(t.size)):
        raise StructureError("rescaling factors must be star-symmetric")
    inv = [x.inverse() for x in c]
    products = [
        [{k: c[i] * c[j] * v * inv[k] for k, v in t.product(i, j).items()} for j in range(t.size)]
        for i in range(t.size)
    ]
    new = RbaPresentation(StructureTensor(t.d, products), star)
    if delta is None:
        return new
    return new, DegreeMap(tuple(ci * di for ci, di in zip(c, delta.degrees)))


def standardize(pres: RbaPresentation, delta: DegreeMap) -> tuple[RbaPresentation, DegreeMap]:
    """Rescale so that ``lam[i][i*][0] == delta_i`` for the rescaled degrees."""
    ok, positive = verify_degree_map(pres, delta)
    if not (ok and positive):
        raise InvalidCharacterError("standardize needs a positive degree map")
    t, star = pres.tensor, pres.star
    factors = [delta[i] / t(i, star(i), 0) for i in range(t.size)]
    return rescale(pres, factors, delta)


def standard_trace(delta: DegreeMap, coords: Sequence) -> RadicalNumber:
    """``tau(sum x_i b_i) = n * x_0`` with ``n`` the order of ``delta``."""
    if len(coords) != len(delta):
        raise StructureError("coordinate vector length does not match the degree map")
    return delta.order * as_radical(coords[0])


# -- circle product ------------------------------------------------------------


def idempotent_of_character(pres: RbaPresentation, delta: DegreeMap) -> list[RadicalNumber]:
    """Coordinates of the central idempotent ``e`` with ``x e = delta(x) e`` and ``delta(e) = 1``.

    Found as the solution of a linear system rather than the closed formula,
    because the formula divides by ``delta(B+)``, which vanishes for the
    projection characters used when iterating circle products.
    """
    from .linalg import solve_unique

    t = pres.tensor
    size = t.size
    rows: list[list[RadicalNumber]] = []
    rhs: list[RadicalNumber] = []
    # b_i e - delta_i e = 0, coefficient of b_k; unknowns e_j
    for i in range(1, size):
        for k in range(size):
            row = [t(i, j, k) for j in range(size)]
            row[k] = row[k] - delta[i]
            if any(row):
                rows.append(row)
                rhs.append(ZERO)
    rows.append(list(delta.degrees))
    rhs.append(ONE)
    return solve_unique(rows, rhs)


def extend_degree_map(deltaC: DegreeMap, delta1: DegreeMap) -> DegreeMap:
    """Degree map on ``C o B1`` that restricts to ``deltaC`` and ``delta1``."""
    return DegreeMap(tuple(deltaC.degrees) + tuple(delta1.degrees[1:]))


def circle_product(presC: RbaPresentation, deltaC: DegreeMap, pres1: RbaPresentation) -> RbaPresentation:
    """Glue ``pres1`` onto ``presC`` through the idempotent of the character ``deltaC``.

    Index layout of the result: ``0..dC`` are the basis of ``presC``, followed by
    the non-identity elements of ``pres1`` in their original order.
    """
    ok, _ = verify_degree_map(presC, deltaC)
    if not ok:
        raise InvalidCharacterError("deltaC is not a real linear character of presC")
    if not is_commutative(presC):
        log.warning("circle product: first factor is not commutative (not a C-algebra)")

    tc, t1 = presC.tensor, pres1.tensor
    nc, h = tc.size, t1.d
    size = nc + h
    e = idempotent_of_character(presC, deltaC)
    e_sparse = {k: v for k, v in enumerate(e) if v}

    def c_index(j: int) -> int:
        return nc + j - 1

    products: list[list[dict]] = [[{} for _ in range(size)] for _ in range(size)]
    for i in range(nc):
        for j in range(nc):
            products[i][j] = dict(tc.product(i, j))
    for i in range(nc):
        for j in range(1, h + 1):
            if deltaC[i]:
                products[i][c_index(j)] = {c_index(j): deltaC[i]}
                products[c_index(j)][i] = {c_index(j): deltaC[i]}
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            prod = {}
            for k, v in t1.product(i, j).items():
                if k == 0:
                    continue
                prod[c_index(k)] = v
            if j == pres1.star(i):
                beta0 = t1(i, j, 0)
                for k, ek in e_sparse.items():
                    prod[k] = prod.get(k, ZERO) + beta0 * ek
            products[c_index(i)][c_index(j)] = prod

    star = list(presC.star.image) + [c_index(pres1.star(j)) for j in range(1, h + 1)]
    return RbaPresentation(StructureTensor(size - 1, products), InvolutionPerm(tuple(star)))
