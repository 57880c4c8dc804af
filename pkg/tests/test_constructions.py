import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import TYPESET_RATIONAL, cm_3_7_typeset
from rbaforge.constructions import (
    DIM5_STAR,
    RATIONAL_DIM5,
    SIGN_TRIPLES,
    CharacterTable,
    CmParams,
    ConstructionError,
    Dim5Params,
    LiftPreconditionError,
    affine_plane_ta,
    character_table_to_diag,
    check_p1_conditions,
    cm_basis,
    cm_raw_matrices,
    cyclic2,
    diag_basis_small,
    dim5_entries,
    dim5_family,
    dim5_lambda_table,
    helmert_basis,
    idempotent_weights,
    lift_diag_to_full,
    positive_rational_basis,
    positive_rational_rba,
    rational_basis_mn,
    reflect,
    semisimple_rational_basis,
    semisimple_rational_rba,
)
from rbaforge.exactreal import ONE, ZERO, as_radical, sqrt
from rbaforge.linalg import RankError
from rbaforge.matrix_model import (
    character_data,
    diag,
    extract_structure_constants,
    frobenius,
    identity,
    involution_on_indices,
    mat_add,
    matrix,
    transpose,
    unit,
)
from rbaforge.rba_core import DegreeMap, RbaPresentation, circle_product, tensor_flags, verify_degree_map, verify_rba


def tensors_isomorphic(a, b):
    """Brute-force: some relabelling fixing 0 carries tensor a onto tensor b."""
    size = a.size
    if size != b.size:
        return False
    for rest in permutations(range(1, size)):
        p = (0,) + rest
        if all(a(i, j, k) == b(p[i], p[j], p[k]) for i in range(size) for j in range(size) for k in range(size)):
            return True
    return False


# -- diagonal pieces ----------------------------------------------------------------


def test_diag_basis_small_matches_displayed_bases():
    def diags(basis):
        return [tuple(b[0][0] for b in el) for el in basis.elements]

    assert diags(diag_basis_small(2)) == [(1, 1), (1, -1)]
    assert diags(diag_basis_small(3)) == [(1, 1, 1), (1, -1, 1), (2, 0, -2)]
    assert diags(diag_basis_small(4)) == [(1, 1, 1, 1), (1, -1, -1, 1), (1, -1, 1, -1), (1, 1, -1, -1)]
    with pytest.raises(ValueError):
        diag_basis_small(5)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_diag_bases_are_rbas(k):
    basis = diag_basis_small(k)
    pres = extract_structure_constants(basis)
    assert pres.star.image == tuple(range(k))
    assert verify_rba(pres, basis.positive_degree_map()).is_rba


def test_affine_plane_q3():
    pres, ct = affine_plane_ta(3)
    assert pres.size == 5
    assert pres.lam(1, 1, 0) == 2
    assert pres.lam(1, 1, 1) == 1
    assert pres.tensor.product(1, 2) == {3: ONE, 4: ONE}
    assert {v for row in ct.entries for v in row} == {1, 2, -1}


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_affine_plane_is_table_algebra(q):
    pres, ct = affine_plane_ta(q)
    rep = verify_rba(pres)
    assert rep.is_table_algebra and rep.is_integral
    assert rep.degree_map.order == q * q
    # the character table really diagonalises the algebra
    basis = character_table_to_diag(ct)
    assert extract_structure_constants(basis).tensor == pres.tensor


def test_affine_plane_q2_is_klein_four():
    pres, _ = affine_plane_ta(2)
    klein = extract_structure_constants(diag_basis_small(4))
    assert tensors_isomorphic(pres.tensor, klein.tensor)


def test_affine_plane_rejects_small_q():
    with pytest.raises(ValueError):
        affine_plane_ta(1)


def test_character_table_checks():
    assert character_table_to_diag(CharacterTable(((1, 1), (1, -1)))).elements == diag_basis_small(2).elements
    with pytest.raises(ValueError):
        CharacterTable(((1, 2), (1, -1)))
    with pytest.raises(RankError):
        character_table_to_diag(CharacterTable(((1, 1), (1, 1))))


def test_permuted_columns_permute_diagonals():
    _, ct = affine_plane_ta(3)
    perm = [0, 2, 4, 1, 3]
    swapped = CharacterTable(tuple(tuple(row[c] for c in perm) for row in ct.entries))
    a = character_table_to_diag(ct)
    b = character_table_to_diag(swapped)
    for ea, eb in zip(a.elements, b.elements):
        assert [eb[c] for c in range(5)] == [ea[perm[c]] for c in range(5)]
    assert extract_structure_constants(a).tensor == extract_structure_constants(b).tensor


# -- lift and M_n ---------------------------------------------------------------------


def test_lift_k2_gives_m2_basis():
    basis = lift_diag_to_full(diag_basis_small(2))
    assert basis.elements == (
        (identity(2),),
        (unit(2, 0, 1),),
        (unit(2, 1, 0),),
        (diag([1, -1]),),
    )
    pres = extract_structure_constants(basis)
    assert pres.star.cycles() == "(0)(3)(1 2)"
    assert pres.tensor.product(1, 2) == {0: as_radical(Fraction(1, 2)), 3: as_radical(Fraction(1, 2))}


def test_idempotent_weights():
    assert idempotent_weights(diag_basis_small(4)) == [Fraction(1, 4)] * 4
    assert idempotent_weights(diag_basis_small(3)) == [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]
    for k in range(2, 7):
        assert idempotent_weights(helmert_basis(k)) == [Fraction(1, k)] * k


def test_lift_needs_equal_weights():
    # E_12 E_21 = E_11 and E_21 E_12 = E_22 carry different identity coefficients here
    with pytest.raises(LiftPreconditionError):
        lift_diag_to_full(diag_basis_small(3))
    unchecked = lift_diag_to_full(diag_basis_small(3), check=False)
    rep = verify_rba(extract_structure_constants(unchecked))
    assert rep.failed() == ["positivity"]
    _, ct = affine_plane_ta(3)
    with pytest.raises(LiftPreconditionError):
        lift_diag_to_full(character_table_to_diag(ct))


def test_lift_rejects_non_diagonal():
    with pytest.raises(LiftPreconditionError):
        lift_diag_to_full(rational_basis_mn(2))


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_rational_basis_mn(k):
    basis = rational_basis_mn(k)
    assert basis.size == k * k
    rep = verify_rba(extract_structure_constants(basis))
    assert rep.is_rba and rep.is_rational
    assert rep.degree_map is None


def test_mn_k2_denominators():
    rep = verify_rba(extract_structure_constants(rational_basis_mn(2)))
    assert rep.max_denominator == 2


# -- circle products ------------------------------------------------------------------


@pytest.mark.parametrize("dims", [(1,), (2,), (3,), (1, 1), (1, 2), (2, 2), (1, 1, 2), (1, 3)])
def test_semisimple_matches_realisation(dims):
    pres = semisimple_rational_rba(dims)
    basis = semisimple_rational_basis(dims)
    assert sorted(basis.shape) == sorted(dims)
    extracted = extract_structure_constants(basis)
    assert pres.tensor == extracted.tensor
    assert pres.star == extracted.star
    rep = verify_rba(pres)
    assert rep.is_rba and rep.is_rational


def test_semisimple_two_is_mn():
    assert semisimple_rational_rba((2,)).tensor == extract_structure_constants(rational_basis_mn(2)).tensor


def test_c2_circle_c2():
    c2 = extract_structure_constants(cyclic2())
    pres = circle_product(c2, DegreeMap.of(1, 1), c2)
    # hand computation with b1 = x, b2 = c: x^2 = b0, x c = c x = c, c^2 = e = (b0 + x)/2
    t = pres.tensor
    assert pres.size == 3
    assert t.product(1, 1) == {0: ONE}
    assert t.product(1, 2) == t.product(2, 1) == {2: ONE}
    assert t.product(2, 2) == {0: as_radical(Fraction(1, 2)), 1: as_radical(Fraction(1, 2))}
    assert verify_rba(pres).is_rba
    assert semisimple_rational_rba((1, 1)).tensor == c2.tensor


def test_circle_product_keeps_rational_denominators():
    # factors have denominators dividing 2; e_delta = (b0 + x)/2 contributes one more factor 2
    pres = semisimple_rational_rba((1, 2))
    flags = tensor_flags(pres.tensor)
    assert flags.is_rational and 4 % flags.max_denominator == 0
    assert pres.lam(2, 3, 0) == Fraction(1, 4)


@pytest.mark.parametrize("dims", [(1, 2), (1, 3), (1, 1, 2)])
def test_semisimple_has_no_positive_degree_map(dims):
    """Gluing M_n along a character leaves no linear character positive on it."""
    pres = semisimple_rational_rba(dims)
    basis = semisimple_rational_basis(dims)
    assert basis.positive_degree_map() is None
    for b, m in enumerate(basis.shape):
        if m == 1:
            delta = basis.block_degree_map(b)
            assert verify_degree_map(pres, delta) == (True, False)


@pytest.mark.parametrize("dims", [(1,), (1, 1), (1, 2), (1, 1, 2), (1, 2, 2)])
def test_positive_rational_construction(dims):
    basis = positive_rational_basis(dims)
    pres, delta = positive_rational_rba(dims)
    assert sorted(basis.shape) == sorted(dims)
    assert extract_structure_constants(basis).tensor == pres.tensor
    rep = verify_rba(pres, delta)
    assert rep.is_rba and rep.is_rational and rep.degree_map_positive
    assert basis.positive_degree_map() == delta
    character_data(basis, delta)


@pytest.mark.parametrize("dims", [(2,), (1, 3), (2, 2)])
def test_positive_rational_unsupported(dims):
    with pytest.raises(ConstructionError):
        positive_rational_basis(dims)


# -- five-dimensional family ---------------------------------------------------------


SIXES = Dim5Params(6, 6, 6)


def test_sixes_entries():
    e = dim5_entries(SIXES)
    assert e["a"] == (-1 + 5 * sqrt(3)) / 4
    assert e["d"] == (-1 - 5 * sqrt(3)) / 4
    assert e["v"] == (-3 - 5 * sqrt(3)) / 12
    assert e["x"] == (-3 + 5 * sqrt(3)) / 12
    assert e["w"] == 5 / sqrt(6)
    assert e["s"] == (-5 * sqrt(6) + 15 * sqrt(2)) / 12
    assert e["t"] == (-5 * sqrt(6) - 15 * sqrt(2)) / 12


def test_sixes_typeset_b3_is_inconsistent():
    typeset_s = (-5 * sqrt(6) + 3 * sqrt(2)) / 12
    typeset_t = (-5 * sqrt(6) - 3 * sqrt(3)) / 12
    w = dim5_entries(SIXES)["w"]
    assert w + typeset_s + typeset_t != 0


def test_sixes_lambda_values():
    t = dim5_lambda_table(SIXES)
    assert t(1, 1, 1) == Fraction(7, 8)
    rep = verify_rba(RbaPresentation(t, DIM5_STAR))
    assert rep.is_table_algebra and rep.max_denominator == 8
    assert rep.degree_map == DegreeMap.of(1, 6, 6, 6, 6)
    assert rep.degree_map.order == 25


small_degrees = st.fractions(min_value=Fraction(1, 6), max_value=10, max_denominator=6)
signs = st.sampled_from(SIGN_TRIPLES)


@given(small_degrees, small_degrees, small_degrees, signs)
def test_family_identities(d1, d2, d3, sgn):
    p = Dim5Params(d1, d2, d3, *sgn)
    e = dim5_entries(p)
    n = p.n
    assert 1 + e["a"] + e["v"] + 2 * e["r"] == 0
    assert 1 + e["d"] + e["x"] + 2 * e["u"] == 0
    assert e["w"] + e["s"] + e["t"] == 0
    assert (e["s"] - e["t"]) ** 2 == 2 * d3 * n / (n - 1)
    target = -2 / (n - 1)
    assert (e["a"] + e["d"]) / d1 == (e["v"] + e["x"]) / d2 == (e["r"] + e["u"]) / d3 == target


@given(small_degrees, small_degrees, small_degrees)
def test_table_closed_forms(d1, d2, d3):
    p = Dim5Params(d1, d2, d3)
    n = p.n
    t = dim5_lambda_table(p)
    assert t(1, 3, 4) == t(1, 4, 3) == t(3, 1, 4) == t(4, 1, 3) == (n + 1) * d1 * d3 / (n - 1) ** 2
    assert t(3, 3, 1) == t(3, 3, 2) == t(3, 3, 4) == (n + 1) * d3 * d3 / (n - 1) ** 2
    assert t(1, 1, 1) == ((n + 1) * d1 * d1 - 3 * (n - 1) * d1) / (n - 1) ** 2
    for i in range(5):
        assert t(i, DIM5_STAR(i), 0) == p.degree_map()[i]


def test_table_depends_on_sign_product_only():
    d = (Fraction(3, 2), Fraction(1, 6), Fraction(2, 3))
    by_eps = {}
    for sgn in SIGN_TRIPLES:
        eps = sgn[0] * sgn[1] * sgn[2]
        t = dim5_lambda_table(Dim5Params(*d, *sgn))
        assert by_eps.setdefault(eps, t) == t
    assert by_eps[1] != by_eps[-1]


def test_family_oracle_random():
    rnd = random.Random(5)
    for _ in range(6):
        d = [Fraction(rnd.randint(1, 60), rnd.randint(1, 6)) for _ in range(3)]
        for sgn in SIGN_TRIPLES:
            p = Dim5Params(*d, *sgn)
            assert extract_structure_constants(dim5_family(p)).tensor == dim5_lambda_table(p)


def test_family_involution_has_three_fixed_points():
    pres = extract_structure_constants(dim5_family(SIXES))
    assert pres.star.cycles() == "(0)(1)(2)(3 4)"


def test_non_integrality_small_grid():
    for d1 in range(1, 8):
        for d2 in range(1, 8):
            for d3 in range(1, 8):
                for eps in (1, -1):
                    assert not tensor_flags(dim5_lambda_table(Dim5Params(d1, d2, d3, 1, 1, eps))).is_integral


def test_dim5_params_validation():
    with pytest.raises(ValueError):
        Dim5Params(0, 1, 1)
    with pytest.raises(ValueError):
        Dim5Params(1, 1, 1, 2)
    assert Dim5Params(1, 1, 1).with_signs(-1, 1, -1).signs == (-1, 1, -1)


# -- rational member, typeset variant --------------------------------------------------------------------

F = Fraction


def test_typeset_rational_fails_axioms():
    pres = extract_structure_constants(TYPESET_RATIONAL)
    rep = verify_rba(pres, TYPESET_RATIONAL.positive_degree_map())
    assert not rep.is_rba
    assert "unit_coefficient" in rep.failed() or "positivity" in rep.failed()
    assert pres.lam(3, 4, 0) == F(988, 1323) and pres.lam(4, 3, 0) == F(772, 1323)
    assert not any(dim5_family(Dim5Params(F(3, 2), F(1, 6), F(2, 3), *s)).element_set() == TYPESET_RATIONAL.element_set()
                   for s in SIGN_TRIPLES)


def test_corrected_rational_is_family_member():
    fam = dim5_family(RATIONAL_DIM5)
    differences = [
        (i, r, c)
        for i in range(5)
        for r in range(2)
        for c in range(2)
        if fam[i][1][r][c] != TYPESET_RATIONAL[i][1][r][c]
    ]
    assert differences == [(2, 0, 0)]
    assert fam[2][1][0][0] == F(1, 18)
    pres = extract_structure_constants(fam)
    rep = verify_rba(pres, fam.positive_degree_map())
    assert rep.is_rba and rep.is_rational and rep.degree_map_positive
    assert rep.degree_map == DegreeMap.of(1, F(3, 2), F(1, 6), F(2, 3), F(2, 3))
    cd = character_data(fam)
    assert cd.order == 4 and cd.multiplicities == (1, F(3, 2))


# -- reflection family ---------------------------------------------------------------


def test_cm_3_7_matrices():
    expected = cm_3_7_typeset()
    params = CmParams(3, 7)
    raw = cm_raw_matrices(params)
    assert raw[0][0][0] == (-8 / sqrt(3)) + 1 / sqrt(3) and raw[0][0][1] == 1 / sqrt(3)
    basis = cm_basis(params)
    assert [el[1] for el in basis.elements[1:]] == expected
    assert all(el[0] == ((7,),) for el in basis.elements[1:])


def test_cm_3_7_constants():
    basis = cm_basis(CmParams(3, 7))
    rep = verify_rba(extract_structure_constants(basis), basis.positive_degree_map())
    assert rep.is_rba and rep.degree_map_positive
    assert set(rep.flags.radicands) <= {1, 3}
    assert rep.max_denominator == 27
    assert character_data(basis).multiplicities == (1, 21)


def test_gram_values_m2():
    params = CmParams(2, 1)
    raw = cm_raw_matrices(params)
    assert params.n == 5
    assert frobenius(raw[0], raw[0]) == 2
    assert frobenius(raw[0], raw[1]) == Fraction(-1, 2)


def test_p1_checks():
    params = CmParams(3, 7)
    basis = cm_basis(params)
    mats = [el[1] for el in basis.elements[1:]]
    rep = check_p1_conditions(mats, [7] * 9)
    assert rep.passed and rep.fixed_points == (0, 4, 8)
    raw = cm_raw_matrices(params)
    rep = check_p1_conditions(raw, [7] * 9)
    assert rep.gram and rep.transpose_pairing and not rep.sum_is_minus_identity
    assert rep.matrix_sum == matrix([[1 / sqrt(3)] * 3] * 3)
    bumped = [mats[0][0][0] + 1] + list(mats[0][0][1:])
    perturbed = [matrix([bumped] + [list(r) for r in mats[0][1:]])] + mats[1:]
    rep = check_p1_conditions(perturbed, [7] * 9)
    assert not rep.gram and (0, 0) in rep.gram_witnesses


def test_p1_inner_product():
    params = CmParams(3, 7)
    basis = cm_basis(params)
    n, m = params.n, params.m
    size = basis.size
    degrees = basis.positive_degree_map()
    for i in range(size):
        for j in range(size):
            inner = (degrees[i] * degrees[j] + (n - 1) / m * frobenius(basis[i][1], basis[j][1])) / n
            assert inner == (degrees[i] if i == j else ZERO)


matrices3 = st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3)


@given(matrices3, matrices3)
def test_reflection_is_isometry(X, Y):
    params = CmParams(3, 7)
    raw = cm_raw_matrices(params)
    total = raw[0]
    for B in raw[1:]:
        total = mat_add(total, B)
    axis = mat_add(total, identity(3))
    X, Y = matrix(X), matrix(Y)
    assert frobenius(reflect(X, axis), reflect(Y, axis)) == frobenius(X, Y)
    assert reflect(transpose(X), axis) == transpose(reflect(X, axis))
    assert reflect(total, axis) == matrix([[-1 if i == j else 0 for j in range(3)] for i in range(3)])


@pytest.mark.parametrize("m,delta", [(2, 1), (2, 2), (2, Fraction(3, 4)), (3, Fraction(5, 3))])
def test_cm_family_verifies(m, delta):
    basis = cm_basis(CmParams(m, delta))
    pres = extract_structure_constants(basis)
    rep = verify_rba(pres, basis.positive_degree_map())
    assert rep.is_rba and rep.degree_map_positive
    cd = character_data(basis)
    assert cd.multiplicities[1] == (CmParams(m, delta).n - 1) / m
    assert involution_on_indices(basis).fixed_points() == (0,) + tuple(1 + i * (m + 1) for i in range(m))


def test_cm_params_validation():
    with pytest.raises(ValueError):
        CmParams(1, 1)
    with pytest.raises(ValueError):
        CmParams(2, 0)


def test_cyclic2_character_data():
    cd = character_data(cyclic2())
    assert cd.multiplicities == (1, 1)
