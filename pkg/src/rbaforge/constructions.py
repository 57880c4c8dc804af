"""Basis constructions: diagonal table algebras, matrix algebras, circle products,
the five-dimensional family on C + M_2 and the reflection family on C + M_m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactreal import ONE, ZERO, RadicalNumber, as_radical, normalize_root, radical_sum, sqrt
from .linalg import RankError, rref
from .matrix_model import (
    MatrixBasis,
    diag,
    frobenius,
    identity,
    mat_add,
    mat_scale,
    mat_sub,
    matrix,
    transpose,
    unit,
    zeros,
)
from .rba_core import (
    DegreeMap,
    InvolutionPerm,
    RbaPresentation,
    StructureTensor,
    circle_product,
)

__all__ = [
    "CharacterTable",
    "CmParams",
    "Dim5Params",
    "P1Report",
    "affine_plane_ta",
    "character_table_to_diag",
    "check_p1_conditions",
    "cm_basis",
    "cyclic2",
    "diag_basis_small",
    "helmert_basis",
    "idempotent_weights",
    "dim5_family",
    "dim5_lambda_table",
    "lift_diag_to_full",
    "positive_rational_basis",
    "positive_rational_rba",
    "rational_basis_mn",
    "realize_circle_product",
    "reflect",
    "semisimple_rational_basis",
    "semisimple_rational_rba",
    "trivial_basis",
]


class ConstructionError(ArithmeticError):
    """A construction failed its own consistency check."""


# -- diagonal / commutative pieces ------------------------------------------------

_SMALL_DIAG = {
    2: [(1, 1), (1, -1)],
    3: [(1, 1, 1), (1, -1, 1), (2, 0, -2)],
    4: [(1, 1, 1, 1), (1, -1, -1, 1), (1, -1, 1, -1), (1, 1, -1, -1)],
}


def _diag_basis(rows: Sequence[Sequence]) -> MatrixBasis:
    k = len(rows[0])
    elements = [tuple(matrix([[v]]) for v in row) for row in rows]
    return MatrixBasis((1,) * k, tuple(elements))


def diag_basis_small(k: int) -> MatrixBasis:
    """Rational table-algebra bases of ``C^k`` for ``k`` in 2..4, as 1x1 blocks."""
    if k not in _SMALL_DIAG:
        raise ValueError(f"no hard-coded diagonal basis for k={k}; use affine_plane_ta")
    return _diag_basis(_SMALL_DIAG[k])


def as_diagonal_matrices(basis: MatrixBasis) -> list:
    """View a basis of shape ``(1, ..., 1)`` as diagonal ``k x k`` matrices."""
    if any(m != 1 for m in basis.shape):
        raise ValueError("basis is not diagonal")
    return [diag(b[0][0] for b in el) for el in basis.elements]


def trivial_basis() -> MatrixBasis:
    return MatrixBasis((1,), ((matrix([[1]]),),))


def cyclic2() -> MatrixBasis:
    """Group algebra of C_2 realised on its two characters; block 0 is trivial."""
    return diag_basis_small(2)


@dataclass(frozen=True)
class CharacterTable:
    """First eigenmatrix: row ``i`` holds the character values of ``b_i``."""

    entries: tuple[tuple[RadicalNumber, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_radical(x) for x in row) for row in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("character table must be square")
        if any(x != ONE for x in rows[0]):
            raise ValueError("first row of the character table must be all ones")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)


def affine_plane_ta(q: int) -> tuple[RbaPresentation, CharacterTable]:
    """Table algebra of dimension ``q + 2`` attached to an affine plane of order ``q``."""
    if q < 2:
        raise ValueError("affine plane table algebra needs q >= 2")
    size = q + 2
    products = [[{} for _ in range(size)] for _ in range(size)]
    for j in range(size):
        products[0][j] = {j: ONE}
        products[j][0] = {j: ONE}
    for i in range(1, size):
        for j in range(1, size):
            if i == j:
                prod = {0: RadicalNumber(q - 1), i: RadicalNumber(q - 2)}
            else:
                prod = {k: ONE for k in range(1, size) if k not in (i, j)}
            products[i][j] = prod
    pres = RbaPresentation(StructureTensor(size - 1, products), InvolutionPerm.identity(size))
    rows = [[1] * size]
    for i in range(1, size):
        row = [q - 1]
        row += [q - 1 if j == i else -1 for j in range(1, size)]
        rows.append(row)
    return pres, CharacterTable(tuple(tuple(r) for r in rows))


def character_table_to_diag(ct: CharacterTable) -> MatrixBasis:
    """``b_i -> sum_j p_ij E_jj`` as a basis of 1x1 blocks."""
    _, pivots = rref(ct.entries)
    if len(pivots) < ct.size:
        raise RankError("character table is singular")
    return _diag_basis(ct.entries)


class LiftPreconditionError(ValueError):
    """The diagonal basis cannot be lifted to an RBA-basis of the full matrix algebra."""


def helmert_basis(k: int) -> MatrixBasis:
    """Diagonal basis with pairwise orthogonal integer rows.

    Row ``i`` is ``(1, ..., 1, -i, 0, ..., 0)`` with ``i`` leading ones.
    Orthogonal rows give every primitive idempotent ``E_jj`` the same identity
    coefficient ``1/k``, which the lift requires.
    """
    if k < 1:
        raise ValueError("k must be positive")
    rows = [[1] * k]
    for i in range(1, k):
        rows.append([1] * i + [-i] + [0] * (k - i - 1))
    return _diag_basis(rows)


def idempotent_weights(diag_basis: MatrixBasis) -> list[RadicalNumber]:
    """Identity coefficient of each ``E_jj`` when expanded in ``diag_basis``."""
    from .matrix_model import coordinates

    k = len(diag_basis.shape)
    out = []
    for j in range(k):
        e = tuple(matrix([[1 if b == j else 0]]) for b in range(k))
        out.append(coordinates(diag_basis, e)[0])
    return out


def lift_diag_to_full(diag_basis: MatrixBasis, check: bool = True) -> MatrixBasis:
    """Extend a diagonal basis of ``M_k`` by all off-diagonal matrix units.

    Ordering: identity, the off-diagonal units ``E_ij`` in row-major order,
    then the remaining diagonal elements.  Since ``E_ij E_ji = E_ii``, the
    result satisfies ``lam[i][i*][0] == lam[i*][i][0]`` only when every ``E_jj``
    has the same identity coefficient; ``check`` enforces that.
    """
    if any(m != 1 for m in diag_basis.shape):
        raise LiftPreconditionError("lift needs a basis of the diagonal subalgebra (shape (1,...,1))")
    k = len(diag_basis.shape)
    if diag_basis.size != k:
        raise LiftPreconditionError("diagonal basis must span the diagonal subalgebra")
    mats = as_diagonal_matrices(diag_basis)
    if check:
        weights = idempotent_weights(diag_basis)
        if len(set(weights)) != 1:
            raise LiftPreconditionError(
                "idempotent weights differ: " + ", ".join(str(w) for w in weights)
            )
    offdiag = [unit(k, i, j) for i in range(k) for j in range(k) if i != j]
    elements = [(mats[0],)] + [(e,) for e in offdiag] + [(m,) for m in mats[1:]]
    return MatrixBasis((k,), tuple(elements))


def rational_basis_mn(k: int) -> MatrixBasis:
    """Rational RBA-basis of ``M_k`` under transpose, ``k >= 2``.

    The C_2 and Klein-group tables (k = 2, 4) lift directly; other sizes use
    the orthogonal-row diagonal basis.
    """
    if k < 2:
        raise ValueError("rational_basis_mn needs k >= 2")
    d = diag_basis_small(k) if k in (2, 4) else helmert_basis(k)
    return lift_diag_to_full(d)


# -- circle products --------------------------------------------------------------


def realize_circle_product(basisC: MatrixBasis, block: int, basis1: MatrixBasis) -> MatrixBasis:
    """Matrix realisation of ``C o_delta B1`` where ``delta`` is the 1x1 block ``block`` of ``basisC``.

    The algebra is ``C(1 - e_delta) + A1``: basis elements of ``C`` keep their
    other blocks and act on ``A1`` as ``delta(b) I``; elements of ``B1`` vanish
    on the blocks of ``C``.
    """
    if basisC.shape[block] != 1:
        raise ValueError("circle product character must come from a 1x1 block")
    keep = [b for b in range(len(basisC.shape)) if b != block]
    shape = tuple(basisC.shape[b] for b in keep) + basis1.shape
    elements = []
    for el in basisC.elements:
        dval = el[block][0][0]
        elements.append(tuple(el[b] for b in keep) + tuple(mat_scale(dval, identity(m)) for m in basis1.shape))
    for el in basis1.elements[1:]:
        elements.append(tuple(zeros(basisC.shape[b]) for b in keep) + tuple(el))
    return MatrixBasis(shape, tuple(elements))


def _presentation_of(basis: MatrixBasis) -> RbaPresentation:
    from .matrix_model import extract_structure_constants

    return extract_structure_constants(basis)


def _mn_presentation(k: int) -> RbaPresentation:
    if k == 1:
        return RbaPresentation(StructureTensor(0, [[{0: ONE}]]), InvolutionPerm((0,)))
    return _presentation_of(rational_basis_mn(k))


def _mn_basis(k: int) -> MatrixBasis:
    return trivial_basis() if k == 1 else rational_basis_mn(k)


def semisimple_rational_rba(dims: Sequence[int]) -> RbaPresentation:
    """Rational RBA presentation of ``M_{n_1} + ... + M_{n_r}`` by iterated circle products.

    The last component is split off as ``M_n``; ``C_2 o_triv B(M_n)`` realises
    ``C + M_n`` and the rest is attached through the character killing ``M_n``.
    """
    dims = [int(n) for n in dims]
    if not dims or any(n < 1 for n in dims):
        raise ValueError("dims must be a non-empty sequence of positive integers")
    if len(dims) == 1:
        return _mn_presentation(dims[0])
    n, rest = dims[-1], dims[:-1]
    c2 = _presentation_of(cyclic2())
    first = circle_product(c2, DegreeMap.of(1, 1), _mn_presentation(n))
    # projection onto C(1 - e_triv): x -> -1, M_n -> 0
    proj = DegreeMap(tuple([ONE, -ONE] + [ZERO] * (first.size - 2)))
    if rest == [1]:
        return first
    return circle_product(first, proj, semisimple_rational_rba(rest))


def semisimple_rational_basis(dims: Sequence[int]) -> MatrixBasis:
    """Matrix realisation of :func:`semisimple_rational_rba` with matching index order."""
    dims = [int(n) for n in dims]
    if not dims or any(n < 1 for n in dims):
        raise ValueError("dims must be a non-empty sequence of positive integers")
    if len(dims) == 1:
        return _mn_basis(dims[0])
    n, rest = dims[-1], dims[:-1]
    first = realize_circle_product(cyclic2(), 0, _mn_basis(n))
    if rest == [1]:
        return first
    # after dropping the trivial block of C_2, block 0 carries the projection character
    return realize_circle_product(first, 0, semisimple_rational_basis(rest))


# -- the five-dimensional family -------------------------------------------------


@dataclass(frozen=True)
class Dim5Params:
    d1: Fraction
    d2: Fraction
    d3: Fraction
    e1: int = 1
    e2: int = 1
    e3: int = 1

    def __post_init__(self):
        for name in ("d1", "d2", "d3"):
            v = Fraction(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, v)
        for name in ("e1", "e2", "e3"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1")

    @property
    def n(self) -> Fraction:
        return 1 + self.d1 + self.d2 + 2 * self.d3

    @property
    def signs(self) -> tuple[int, int, int]:
        return (self.e1, self.e2, self.e3)

    def with_signs(self, e1: int, e2: int, e3: int) -> "Dim5Params":
        return Dim5Params(self.d1, self.d2, self.d3, e1, e2, e3)

    def degree_map(self) -> DegreeMap:
        return DegreeMap.of(1, self.d1, self.d2, self.d3, self.d3)


SIGN_TRIPLES = tuple((a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1))


def dim5_entries(p: Dim5Params) -> dict[str, RadicalNumber]:
    """Matrix entries ``a, d, v, x, w, r, u, s, t`` of the standard basis."""
    n, d1, d2, d3 = p.n, p.d1, p.d2, p.d3
    nm1 = n - 1
    root1 = sqrt(n * d1 * (nm1 - d1))  # nonzero: n - 1 - d1 = d2 + 2 d3 > 0
    a = -d1 / nm1 + p.e1 * root1 / nm1
    d = -d1 / nm1 - p.e1 * root1 / nm1
    corr = n * d1 / (nm1 * root1)
    v = -d2 / nm1 - p.e1 * d2 * corr
    x = -d2 / nm1 + p.e1 * d2 * corr
    r = -d3 / nm1 - p.e1 * d3 * corr
    u = -d3 / nm1 + p.e1 * d3 * corr
    w = p.e2 * sqrt(2 * n * d2 * d3 / (nm1 * (nm1 - d1)))
    half = sqrt(d3 * n / (2 * nm1))
    s = -w / 2 + p.e3 * half
    t = -w / 2 - p.e3 * half
    return dict(a=a, d=d, v=v, x=x, w=w, r=r, u=u, s=s, t=t)


def dim5_family(params: Dim5Params) -> MatrixBasis:
    """Standard RBA^delta-basis of ``C + M_2`` for the given degrees and signs."""
    e = dim5_entries(params)
    z = ZERO
    b1 = matrix([[e["a"], z], [z, e["d"]]])
    b2 = matrix([[e["v"], e["w"]], [e["w"], e["x"]]])
    b3 = matrix([[e["r"], e["s"]], [e["t"], e["u"]]])
    one = lambda v: matrix([[v]])  # noqa: E731
    elements = (
        (one(1), identity(2)),
        (one(params.d1), b1),
        (one(params.d2), b2),
        (one(params.d3), b3),
        (one(params.d3), transpose(b3)),
    )
    return MatrixBasis((1, 2), elements)


def dim5_lambda_table(params: Dim5Params) -> StructureTensor:
    """Closed-form structure constants of :func:`dim5_family`.

    Depends on the signs only through ``eps = e1*e2*e3``.
    """
    return _dim5_table(params.d1, params.d2, params.d3, params.e1 * params.e2 * params.e3)


def _dim5_table(d1: Fraction, d2: Fraction, d3: Fraction, eps: int) -> StructureTensor:
    n = 1 + d1 + d2 + 2 * d3
    N, M = n + 1, n - 1
    M2 = M * M
    coeff, rad = normalize_root(n * d1 * d2)
    # every irrational entry is p + q*sqrt(n d1 d2); keep (p, q) as fractions
    Sq = eps * M * coeff  # eps (n-1) sqrt(n d1 d2) / sqrt(rad)

    def val(p: Fraction, q: Fraction = Fraction(0)) -> RadicalNumber:
        if not q:
            return RadicalNumber(p)
        if rad == 1:
            return RadicalNumber(p + q)
        return RadicalNumber._from_dict({1: p, rad: q})

    L: dict[tuple[int, int, int], RadicalNumber] = {}

    def put(keys, value):
        for key in keys:
            L[tuple(int(c) for c in key)] = value

    put(["111"], val((N * d1 * d1 - 3 * M * d1) / M2))
    put(["112", "113", "114"], val((N * d1 * d1 - M * d1) / M2))
    put(["121", "211"], val((N * d1 * d2 - M * d2) / M2))
    put(["122", "212"], val((N * d1 * d2 - M * d1) / M2))
    put(["123", "214"], val(N * d1 * d2 / M2, Sq / M2))
    put(["124", "213"], val(N * d1 * d2 / M2, -Sq / M2))
    put(["131", "141", "311", "411"], val((N * d1 * d3 - M * d3) / M2))
    put(["132", "412"], val(N * d1 * d2 * d3 / (d2 * M2), Sq * d3 / (d2 * M2)))
    put(["133", "414"], val((N * d1 * d3 - M * d1) / M2, -Sq / M2))
    put(["134", "143", "314", "413"], val(N * d1 * d3 / M2))
    put(["142", "312"], val(N * d1 * d2 * d3 / (d2 * M2), -Sq * d3 / (d2 * M2)))
    put(["144", "313"], val((N * d1 * d3 - M * d1) / M2, Sq / M2))
    put(["221", "223", "224"], val((N * d2 * d2 - M * d2) / M2))
    put(["222"], val((N * d2 * d2 - 3 * M * d2) / M2))
    put(["231", "421"], val(N * d1 * d2 * d3 / (d1 * M2), -Sq * d3 / (d1 * M2)))
    put(["232", "422", "242", "322"], val((N * d2 * d3 - M * d3) / M2))
    put(["233", "424"], val((N * d2 * d3 - M * d2) / M2, Sq / M2))
    put(["234", "423", "243", "324"], val(N * d2 * d3 / M2))
    put(["241", "321"], val(N * d1 * d2 * d3 / (d1 * M2), Sq * d3 / (d1 * M2)))
    put(["244", "323"], val((N * d2 * d3 - M * d2) / M2, -Sq / M2))
    put(["331", "332", "334", "441", "442", "443"], val(N * d3 * d3 / M2))
    put(["343", "344", "433", "434", "333", "444"], val((N * d3 * d3 - 2 * M * d3) / M2))
    put(["341"], val((N * d1 * d3 * d3 - M * d1 * d3) / (d1 * M2), -Sq * d3 / (d1 * M2)))
    put(["431"], val((N * d1 * d3 * d3 - M * d1 * d3) / (d1 * M2), Sq * d3 / (d1 * M2)))
    # the surd term of these two divides by d2, not d1
    put(["342"], val((N * d2 * d3 * d3 - M * d2 * d3) / (d2 * M2), Sq * d3 / (d2 * M2)))
    put(["432"], val((N * d2 * d3 * d3 - M * d2 * d3) / (d2 * M2), -Sq * d3 / (d2 * M2)))

    degrees = (Fraction(1), d1, d2, d3, d3)
    star = (0, 1, 2, 4, 3)
    products = [[{} for _ in range(5)] for _ in range(5)]
    for j in range(5):
        products[0][j] = {j: ONE}
        products[j][0] = {j: ONE}
    for i in range(1, 5):
        for j in range(1, 5):
            prod = {k: L[(i, j, k)] for k in range(1, 5) if L[(i, j, k)]}
            if j == star[i]:
                prod[0] = RadicalNumber(degrees[i])
            products[i][j] = prod
    return StructureTensor(4, products)


DIM5_STAR = InvolutionPerm((0, 1, 2, 4, 3))


# -- the reflection family on C + M_m ----------------------------------------------


@dataclass(frozen=True)
class CmParams:
    m: int
    delta: Fraction
    sign_x: int = -1
    sign_y: int = 1

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ValueError("m must be an integer >= 2")
        delta = Fraction(self.delta)
        if delta <= 0:
            raise ValueError("delta must be positive")
        object.__setattr__(self, "delta", delta)
        if self.sign_x not in (1, -1) or self.sign_y not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    @property
    def n(self) -> Fraction:
        return 1 + self.m * self.m * self.delta


def reflect(X, axis) -> tuple:
    """Reflection of ``X`` in the hyperplane orthogonal to ``axis`` for ``(A, B) = tr(A B^T)``."""
    c = 2 * frobenius(axis, X) / frobenius(axis, axis)
    return mat_sub(X, mat_scale(c, axis))


@dataclass
class P1Report:
    gram: bool = True
    transpose_pairing: bool = True
    sum_is_minus_identity: bool = True
    gram_witnesses: list = field(default_factory=list)
    fixed_points: tuple = ()
    matrix_sum: object = None

    @property
    def passed(self) -> bool:
        return self.gram and self.transpose_pairing and self.sum_is_minus_identity


def check_p1_conditions(matrices: Sequence, degrees: Sequence) -> P1Report:
    """Gram, transpose-pairing and sum conditions for ``m^2`` matrices of size ``m``."""
    mats = [matrix(M) for M in matrices]
    degs = [as_radical(x) for x in degrees]
    m = len(mats[0])
    if len(mats) != m * m or len(degs) != m * m:
        raise ValueError(f"expected {m * m} matrices and degrees for m = {m}")
    n = 1 + radical_sum(degs)
    nm1 = n - 1
    rep = P1Report()
    for i in range(len(mats)):
        for j in range(i, len(mats)):
            g = frobenius(mats[i], mats[j])
            if i == j:
                expected = degs[i] * (n - degs[i]) * m / nm1
            else:
                expected = -degs[i] * degs[j] * m / nm1
            if g != expected:
                rep.gram = False
                rep.gram_witnesses.append((i, j))

    index = {M: i for i, M in enumerate(mats)}
    pairing = []
    for i, M in enumerate(mats):
        j = index.get(transpose(M))
        if j is None or degs[i] != degs[j]:
            rep.transpose_pairing = False
            break
        pairing.append(j)
    if rep.transpose_pairing:
        fixed = tuple(i for i, j in enumerate(pairing) if i == j)
        rep.fixed_points = fixed
        if len(fixed) != m or any(pairing[pairing[i]] != i for i in range(len(pairing))):
            rep.transpose_pairing = False

    total = zeros(m)
    for M in mats:
        total = mat_add(total, M)
    rep.matrix_sum = total
    rep.sum_is_minus_identity = total == mat_scale(-1, identity(m))
    return rep


def cm_raw_matrices(params: CmParams) -> list:
    """``B_ij = x E_ij + y J`` before the reflection, ordered row-major in ``(i, j)``."""
    m = params.m
    x = params.sign_x * sqrt(params.n / m)
    y = (-x + params.sign_y * sqrt(Fraction(1, m))) / (m * m)
    J = tuple(tuple(y for _ in range(m)) for _ in range(m))
    return [mat_add(mat_scale(x, unit(m, i, j)), J) for i in range(m) for j in range(m)]


def cm_basis(params: CmParams) -> MatrixBasis:
    """RBA^delta-basis of ``C + M_m`` with all degrees equal to ``params.delta``."""
    m = params.m
    raw = cm_raw_matrices(params)
    total = zeros(m)
    for B in raw:
        total = mat_add(total, B)
    axis = mat_add(total, identity(m))
    mats = [reflect(B, axis) for B in raw]
    rep = check_p1_conditions(mats, [params.delta] * (m * m))
    if not rep.passed:
        raise ConstructionError(f"reflected matrices fail the basis conditions: {rep}")
    delta_block = matrix([[params.delta]])
    elements = [(matrix([[1]]), identity(m))] + [(delta_block, M) for M in mats]
    return MatrixBasis((1, m), tuple(elements))


# -- rational bases with a positive degree map -------------------------------------

# degrees (3/2, 1/6, 2/3) give a member whose entries are all rational;
# its b_2 corner entry is 1/18
RATIONAL_DIM5 = Dim5Params(Fraction(3, 2), Fraction(1, 6), Fraction(2, 3), -1, 1, 1)


def _positive_plan(dims: Sequence[int]) -> tuple[int, int]:
    dims = [int(n) for n in dims]
    if not dims or any(n < 1 for n in dims):
        raise ValueError("dims must be a non-empty sequence of positive integers")
    ones, twos = dims.count(1), dims.count(2)
    if ones == 0:
        raise ConstructionError("a positive degree map needs a one-dimensional component")
    if ones + twos != len(dims):
        raise ConstructionError("no rational basis with positive degree map is known for M_k, k >= 3")
    return ones, twos


def positive_rational_basis(dims: Sequence[int]) -> MatrixBasis:
    """Rational basis with a positive degree map for ``C^a + M_2^b`` (``a >= 1``).

    Copies of the rational ``C + M_2`` basis are glued along their degree maps,
    then further copies of ``C`` are attached with ``C_2``.  Blocks come out in
    construction order, not in the order of ``dims``.
    """
    ones, twos = _positive_plan(dims)
    if twos:
        basis = dim5_family(RATIONAL_DIM5)
        for _ in range(twos - 1):
            basis = realize_circle_product(dim5_family(RATIONAL_DIM5), 0, basis)
        extra = ones - 1
    else:
        basis = trivial_basis()
        extra = ones - 1
    for _ in range(extra):
        basis = realize_circle_product(cyclic2(), 0, basis)
    return basis


def positive_rational_rba(dims: Sequence[int]) -> tuple[RbaPresentation, DegreeMap]:
    """Abstract counterpart of :func:`positive_rational_basis` with its degree map."""
    from .matrix_model import extract_structure_constants
    from .rba_core import extend_degree_map

    ones, twos = _positive_plan(dims)
    if twos:
        base = RbaPresentation(dim5_lambda_table(RATIONAL_DIM5), DIM5_STAR)
        base_delta = RATIONAL_DIM5.degree_map()
        pres, delta = base, base_delta
        for _ in range(twos - 1):
            pres, delta = circle_product(base, base_delta, pres), extend_degree_map(base_delta, delta)
    else:
        pres = RbaPresentation(StructureTensor(0, [[{0: ONE}]]), InvolutionPerm((0,)))
        delta = DegreeMap.of(1)
    c2 = extract_structure_constants(cyclic2())
    triv = DegreeMap.of(1, 1)
    for _ in range(ones - 1):
        pres, delta = circle_product(c2, triv, pres), extend_degree_map(triv, delta)
    return pres, delta
