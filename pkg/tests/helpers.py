from decimal import Decimal, localcontext
from fractions import Fraction

from hypothesis import strategies as st

from rbaforge.exactreal import RadicalNumber

SQUAREFREE = (1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 30)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
positive_fractions = st.fractions(min_value=Fraction(1, 40), max_value=40, max_denominator=40)


@st.composite
def radicals(draw, max_terms=3):
    rads = draw(st.lists(st.sampled_from(SQUAREFREE), max_size=max_terms, unique=True))
    return RadicalNumber({r: draw(fractions) for r in rads})


@st.composite
def nonzero_radicals(draw, max_terms=3):
    x = draw(radicals(max_terms))
    if not x:
        x = RadicalNumber(draw(fractions.filter(bool)))
    return x


def decimal_value(x: RadicalNumber, prec: int = 120) -> Decimal:
    """High-precision decimal evaluation, independent of the interval code."""
    with localcontext() as ctx:
        ctx.prec = prec
        total = Decimal(0)
        for r, c in x.terms:
            total += Decimal(c.numerator) / Decimal(c.denominator) * Decimal(r).sqrt()
        return total


def group_algebra(elements, mul, inv):
    """Presentation of a finite group algebra; ``elements[0]`` is the identity."""
    from rbaforge.rba_core import InvolutionPerm, RbaPresentation, StructureTensor

    index = {g: i for i, g in enumerate(elements)}
    entries = [(i, j, index[mul(g, h)], 1) for i, g in enumerate(elements) for j, h in enumerate(elements)]
    star = InvolutionPerm(tuple(index[inv(g)] for g in elements))
    return RbaPresentation(StructureTensor.from_entries(len(elements) - 1, entries), star)


def s3_algebra():
    from itertools import permutations

    perms = sorted(permutations(range(3)))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))

    def inv(p):
        out = [0] * 3
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    return group_algebra(perms, mul, inv)


def cyclic_algebra(n):
    return group_algebra(list(range(n)), lambda a, b: (a + b) % n, lambda a: -a % n)


def dense_product(tensor, x, y):
    """Independent dense product: sum_ij x_i y_j lam_ijk."""
    size = tensor.size
    from rbaforge.exactreal import ZERO

    out = [ZERO] * size
    for i in range(size):
        for j in range(size):
            for k in range(size):
                out[k] = out[k] + x[i] * y[j] * tensor(i, j, k)
    return out


# -- typeset bases -----------------------------------------------------------------

def _typeset_rational():
    from rbaforge.matrix_model import MatrixBasis

    F = Fraction
    return MatrixBasis(
        (1, 2),
        (
            ([[1]], [[1, 0], [0, 1]]),
            ([[F(3, 2)]], [[F(-3, 2), 0], [0, F(1, 2)]]),
            ([[F(1, 6)]], [[F(2, 9), F(4, 9)], [F(4, 9), F(-1, 6)]]),
            ([[F(2, 3)]], [[F(2, 9), F(4, 9)], [F(-8, 9), F(-2, 3)]]),
            ([[F(2, 3)]], [[F(2, 9), F(-8, 9)], [F(4, 9), F(-2, 3)]]),
        ),
    )


# rational five-element basis as typeset, b_2 corner entry 2/9 instead of 1/18
TYPESET_RATIONAL = _typeset_rational()


def cm_3_7_typeset():
    """The nine 3x3 blocks of the reflection basis for m = 3, delta = 7, in basis order."""
    from rbaforge.exactreal import as_radical, sqrt
    from rbaforge.matrix_model import matrix, transpose

    s3 = sqrt(3)

    def m(*rows):
        return matrix([[as_radical(v) / 9 for v in row] for row in rows])

    off = -4 + 4 * s3
    b11 = m([-1 - 16 * s3, 8, 8], [8, -1 + 8 * s3, 8], [8, 8, -1 + 8 * s3])
    b12 = m([-1, -4 - 20 * s3, off], [off, -1, off], [off, off, -1])
    b13 = m([-1, off, -4 - 20 * s3], [off, -1, off], [off, off, -1])
    b22 = m([-1 + 8 * s3, 8, 8], [8, -1 - 16 * s3, 8], [8, 8, -1 + 8 * s3])
    b23 = m([-1, off, off], [off, -1, -4 - 20 * s3], [off, off, -1])
    b33 = m([-1 + 8 * s3, 8, 8], [8, -1 + 8 * s3, 8], [8, 8, -1 - 16 * s3])
    return [b11, b12, b13, transpose(b12), b22, b23, transpose(b13), transpose(b23), b33]
