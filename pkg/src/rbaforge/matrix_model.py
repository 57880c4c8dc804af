"""Concrete bases realised as tuples of real block matrices.

An element of ``M_{m_1} + ... + M_{m_c}`` is a tuple of square blocks, each a
tuple of row tuples of :class:`RadicalNumber`.  The involution is blockwise
transpose throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactreal import ONE, ZERO, RadicalNumber, as_radical, normalize_root, radical_sum, sqrt
from .linalg import InconsistentSystemError, RankError, SpanSolver, inverse
from .rba_core import (
    DegreeMap,
    InvolutionPerm,
    RbaPresentation,
    StructureTensor,
    verify_degree_map,
)

Matrix = tuple[tuple[RadicalNumber, ...], ...]
Element = tuple[Matrix, ...]


class ClosureError(ArithmeticError):
    def __init__(self, i: int, j: int):
        super().__init__(f"product b_{i} b_{j} is not in the span of the basis")
        self.witness = (i, j)


class NotStarClosedError(ValueError):
    pass


class CharacterTheoryError(ArithmeticError):
    def __init__(self, component: int, message: str):
        super().__init__(f"component {component}: {message}")
        self.component = component


class QuadraticIdentityError(ArithmeticError):
    pass


# -- small matrix helpers -------------------------------------------------------


def matrix(rows) -> Matrix:
    return tuple(tuple(as_radical(x) for x in row) for row in rows)


def identity(m: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m))


def zeros(m: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(m))


def diag(values) -> Matrix:
    vals = [as_radical(v) for v in values]
    return tuple(tuple(vals[i] if i == j else ZERO for j in range(len(vals))) for i in range(len(vals)))


def unit(m: int, i: int, j: int) -> Matrix:
    return tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(m)) for r in range(m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0]) if b else 0
    cols = list(zip(*b))
    out = []
    for row in a:
        out.append(tuple(radical_sum(x * y for x, y in zip(row, cols[j]) if x and y) for j in range(n)))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = as_radical(c)
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def trace(a: Matrix) -> RadicalNumber:
    return radical_sum(a[i][i] for i in range(len(a)))


def frobenius(a: Matrix, b: Matrix) -> RadicalNumber:
    """``(A, B) = tr(A B^T)``."""
    return radical_sum(x * y for ra, rb in zip(a, b) for x, y in zip(ra, rb) if x and y)


def elem_mul(x: Element, y: Element) -> Element:
    return tuple(mat_mul(a, b) for a, b in zip(x, y))


def elem_add(x: Element, y: Element) -> Element:
    return tuple(mat_add(a, b) for a, b in zip(x, y))


def elem_scale(c, x: Element) -> Element:
    return tuple(mat_scale(c, a) for a in x)


def elem_transpose(x: Element) -> Element:
    return tuple(transpose(a) for a in x)


def flatten(x: Element) -> list[RadicalNumber]:
    return [v for block in x for row in block for v in row]


# -- bases ----------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixBasis:
    shape: tuple[int, ...]
    elements: tuple[Element, ...]

    def __post_init__(self):
        shape = tuple(int(m) for m in self.shape)
        if not shape or any(m < 1 for m in shape):
            raise ValueError(f"invalid block shape {shape}")
        elements = tuple(tuple(matrix(b) for b in el) for el in self.elements)
        for idx, el in enumerate(elements):
            if len(el) != len(shape) or any(
                len(b) != m or any(len(row) != m for row in b) for b, m in zip(el, shape)
            ):
                raise ValueError(f"element {idx} does not match shape {shape}")
        if not elements or elements[0] != self.identity_element(shape):
            raise ValueError("the first basis element must be the identity")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "elements", elements)

    @staticmethod
    def identity_element(shape) -> Element:
        return tuple(identity(m) for m in shape)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def d(self) -> int:
        return len(self.elements) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> Element:
        return self.elements[i]

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def combination(self, coords: Sequence) -> Element:
        out = tuple(zeros(m) for m in self.shape)
        for c, el in zip(coords, self.elements):
            c = as_radical(c)
            if c:
                out = elem_add(out, elem_scale(c, el))
        return out

    def block_degree_map(self, block: int) -> DegreeMap:
        """Values of the 1x1 block ``block`` on the basis (a linear character)."""
        if self.shape[block] != 1:
            raise ValueError(f"block {block} is not one-dimensional")
        return DegreeMap(tuple(el[block][0][0] for el in self.elements))

    def positive_degree_map(self) -> Optional[DegreeMap]:
        """The first one-dimensional block that is positive on every basis element."""
        for b, m in enumerate(self.shape):
            if m == 1:
                dm = self.block_degree_map(b)
                if dm.is_positive():
                    return dm
        return None


class _Coordinates:
    """Shared solver for expressing block elements in a basis."""

    def __init__(self, basis: MatrixBasis):
        self.solver = SpanSolver([flatten(el) for el in basis.elements])

    def __call__(self, x: Element) -> list[RadicalNumber]:
        return self.solver.coordinates(flatten(x))


def coordinates(basis: MatrixBasis, x: Element) -> list[RadicalNumber]:
    return _Coordinates(basis)(x)


def involution_on_indices(basis: MatrixBasis) -> InvolutionPerm:
    index = {el: i for i, el in enumerate(basis.elements)}
    image = []
    for i, el in enumerate(basis.elements):
        j = index.get(elem_transpose(el))
        if j is None:
            raise NotStarClosedError(f"transpose of element {i} is not in the basis")
        image.append(j)
    return InvolutionPerm(tuple(image))


def extract_structure_constants(basis: MatrixBasis) -> RbaPresentation:
    """Structure constants of ``basis`` by exact elimination."""
    try:
        coords = _Coordinates(basis)
    except RankError as exc:
        raise RankError(f"basis elements are linearly dependent: {exc}") from exc
    star = involution_on_indices(basis)
    size = basis.size
    products = []
    for i in range(size):
        row = []
        for j in range(size):
            try:
                c = coords(elem_mul(basis[i], basis[j]))
            except InconsistentSystemError:
                raise ClosureError(i, j) from None
            row.append({k: v for k, v in enumerate(c) if v})
        products.append(row)
    return RbaPresentation(StructureTensor(size - 1, products), star)


# -- character theory -----------------------------------------------------------


@dataclass(frozen=True)
class CharacterData:
    order: RadicalNumber
    characters: tuple[tuple[RadicalNumber, ...], ...]
    degrees: tuple[int, ...]
    multiplicities: tuple[RadicalNumber, ...]
    idempotents: tuple[tuple[RadicalNumber, ...], ...]
    degree_component: int


def character_data(basis: MatrixBasis, delta: Optional[DegreeMap] = None) -> CharacterData:
    """Block characters, central idempotents and trace multiplicities, all checked.

    The order used is ``sum_i delta_i**2 / lam[i][i*][0]``, the order after
    standardisation; it equals ``sum_i delta_i`` for standard bases and makes
    the idempotent formula independent of basis scaling.
    """
    pres = extract_structure_constants(basis)
    if delta is None:
        delta = basis.positive_degree_map()
        if delta is None:
            raise CharacterTheoryError(-1, "basis has no positive degree map")
    ok, positive = verify_degree_map(pres, delta)
    if not (ok and positive):
        raise CharacterTheoryError(-1, "supplied map is not a positive degree map")
    star = pres.star
    size = basis.size
    unit0 = [pres.lam(i, star(i), 0) for i in range(size)]
    n = radical_sum(delta[i] * delta[i] / unit0[i] for i in range(size))

    coords = _Coordinates(basis)
    chars, idems, mults = [], [], []
    for c, m in enumerate(basis.shape):
        chi = tuple(trace(el[c]) for el in basis.elements)
        e = tuple(identity(mm) if b == c else zeros(mm) for b, mm in enumerate(basis.shape))
        ec = coords(e)
        mult = n * ec[0] / chi[0]
        for i in range(size):
            expected = mult / n * chi[star(i)] / unit0[i]
            if ec[i] != expected:
                raise CharacterTheoryError(c, f"idempotent formula fails at b_{i}")
        if mult.sign() <= 0:
            raise CharacterTheoryError(c, f"non-positive multiplicity {mult}")
        chars.append(chi)
        idems.append(tuple(ec))
        mults.append(mult)

    for a, chi in enumerate(chars):
        for b, e in enumerate(idems):
            value = radical_sum(x * y for x, y in zip(e, chi))
            expected = chi[0] if a == b else ZERO
            if value != expected:
                raise CharacterTheoryError(a, f"orthogonality fails against component {b}")

    dcomp = next(
        (c for c, m in enumerate(basis.shape) if m == 1 and chars[c] == tuple(delta.degrees)), -1
    )
    if dcomp < 0 or mults[dcomp] != ONE:
        raise CharacterTheoryError(dcomp, "degree character must occur with multiplicity 1")
    return CharacterData(
        order=n,
        characters=tuple(chars),
        degrees=tuple(basis.shape),
        multiplicities=tuple(mults),
        idempotents=tuple(idems),
        degree_component=dcomp,
    )


# -- quadratic identity on C + M_2 ------------------------------------------------


@dataclass(frozen=True)
class QuadraticData:
    kappa: RadicalNumber
    lam: RadicalNumber
    mu: RadicalNumber
    discriminant: RadicalNumber
    eigenvalues: Optional[tuple[RadicalNumber, RadicalNumber]]
    complex_pair: bool
    new_radicand: Optional[int]


def quadratic_coeffs(basis: MatrixBasis, delta: DegreeMap, x_coords: Sequence) -> QuadraticData:
    """Coefficients with ``x^2 = kappa b0 + lam x + mu (B+ - b0 - x)`` for traceless ``x``.

    ``basis`` must be a standard basis of shape ``(1, 2)`` ordered as
    ``b0, b1 = b1*, b2 = b2*, b3, b4 = b3*``.  The identity is verified in the
    matrix model before returning.
    """
    if basis.shape != (1, 2) or basis.size != 5:
        raise ValueError("quadratic_coeffs needs a 5-element basis of shape (1, 2)")
    k = [as_radical(v) for v in x_coords]
    if len(k) != 5 or k[0]:
        raise ValueError("x must have five coordinates with x_0 = 0")
    n = delta.order
    d1, d2, d3 = delta[1], delta[2], delta[3]
    dx = delta.apply(k)
    kappa = k[1] * k[1] * d1 + k[2] * k[2] * d2 + 2 * k[3] * k[4] * d3
    nm1 = n - 1
    nm1sq = nm1 * nm1
    lam = ((n + 1) * dx * dx - 2 * nm1 * dx - kappa * nm1) / nm1sq
    mu = ((n + 1) * dx * dx - kappa * nm1) / nm1sq

    x = basis.combination(k)
    bplus = basis.combination([ONE] * 5)
    rhs = elem_add(
        elem_add(elem_scale(kappa, basis[0]), elem_scale(lam, x)),
        elem_scale(mu, elem_add(bplus, elem_scale(-1, elem_add(basis[0], x)))),
    )
    if elem_mul(x, x) != rhs:
        raise QuadraticIdentityError("x^2 is not kappa b0 + lam x + mu (B+ - b0 - x)")

    disc = kappa * n * nm1 - dx * dx * n
    eig = None
    complex_pair = False
    new_rad = None
    if disc.is_rational():
        q = disc.to_fraction()
        if q < 0:
            complex_pair = True
        else:
            root = sqrt(q)
            _, new_rad = normalize_root(q)
            base = -dx / nm1
            eig = (base + root / nm1, base - root / nm1)
    return QuadraticData(kappa, lam, mu, disc, eig, complex_pair, new_rad)


# -- change of basis -------------------------------------------------------------


def conjugate_basis(basis: MatrixBasis, P, block: Optional[int] = None) -> MatrixBasis:
    """Apply ``B -> P B P^{-1}`` to one block of every element.

    ``block`` defaults to the unique block of size 2.
    """
    P = matrix(P)
    if block is None:
        blocks = [b for b, m in enumerate(basis.shape) if m == len(P)]
        if len(blocks) != 1:
            raise ValueError("cannot infer which block to conjugate")
        block = blocks[0]
    try:
        Pinv = matrix(inverse(P))
    except RankError:
        raise RankError("conjugating matrix is singular") from None
    elements = []
    for el in basis.elements:
        new = list(el)
        new[block] = mat_mul(mat_mul(P, el[block]), Pinv)
        elements.append(tuple(new))
    return MatrixBasis(basis.shape, tuple(elements))
