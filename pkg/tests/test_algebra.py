import itertools
from fractions import Fraction

import pytest

from parageo.algebra import (
    Ad,
    bracket,
    exp_nilpotent,
    group_exp,
    log_unipotent,
    normal_form_P,
    reconstruct_from_normal_form,
    truncated_Ad,
)
from parageo.catalog import g0_samples, make_algebra, validate_group_matrix
from parageo.errors import (
    AlgebraMismatch,
    BadParams,
    NotInNilpotentPart,
    NotInParabolic,
    NotNilpotent,
    UnknownCatalogName,
)
from parageo.matrices import Mat
from parageo.poly import P_T

EXPECTED_GRADE_DIMS = {
    "proj(1)": {-1: 1, 0: 1, 1: 1},
    "proj(2)": {-1: 2, 0: 4, 1: 2},
    "grass(1,2)": {-1: 2, 0: 4, 1: 2},
    "grass(2,2)": {-1: 4, 0: 7, 1: 4},
    "conf(1,1)": {-1: 2, 0: 2, 1: 2},
    "conf(1,2)": {-1: 3, 0: 4, 1: 3},
    "lagr3": {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1},
    "su21": {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1},
    "xxdot": {-2: 2, -1: 3, 0: 5, 1: 3, 2: 2},
}


def test_catalog_dimensions(any_algebra):
    dims = {g: len(any_algebra.grade_slices[g]) for g in range(-any_algebra.k, any_algebra.k + 1)}
    assert dims == EXPECTED_GRADE_DIMS[any_algebra.name]


def test_grading_jacobi_nilpotency_exhaustive(any_algebra):
    assert any_algebra.structure_violations() == []


def test_catalog_errors():
    with pytest.raises(UnknownCatalogName):
        make_algebra("borel(3)")
    with pytest.raises(BadParams):
        make_algebra("proj(0)")
    with pytest.raises(BadParams):
        make_algebra("conf(1,0)")
    with pytest.raises(BadParams):
        make_algebra("grass(0,2)")
    with pytest.raises(BadParams):
        make_algebra("lagr3(1)")


def test_bracket_examples(proj1):
    x = proj1.grade_basis(-1)[0]
    z = proj1.grade_basis(1)[0]
    assert bracket(x, x).is_zero()
    assert bracket(x, bracket(x, z)) == x * Fraction(-2)


def test_bracket_mismatch(proj1, lagr3):
    with pytest.raises(AlgebraMismatch):
        bracket(proj1.grade_basis(-1)[0], lagr3.grade_basis(-1)[0])


def test_grade_components_recombine(any_algebra):
    alg = any_algebra
    x = alg.elem(tuple(Fraction(i - 2) for i in range(alg.dim)))
    total = alg.zero_elem()
    for g in range(-alg.k, alg.k + 1):
        total = total + x.grade_component(g)
    assert total == x
    assert x.grade_component(-1).in_n()


def test_exp_nilpotent_examples(lagr3, proj1):
    assert exp_nilpotent(lagr3.zero_elem(), P_T) == Mat.identity(3)
    e31 = lagr3.grade_basis(-2)[0]
    m = exp_nilpotent(e31, P_T)
    assert m.rows[2][0] == P_T and m * exp_nilpotent(e31, -P_T) == Mat.identity(3)
    with pytest.raises(NotNilpotent):
        h = proj1.grade_basis(0)[0]
        exp_nilpotent(h, P_T)


def test_ad_matches_finite_series(any_algebra):
    alg = any_algebra
    for g in range(1, alg.k + 1):
        for z in alg.grade_basis(g)[:2]:
            gexp = group_exp(z * Fraction(2))
            for idx in range(alg.dim):
                x = alg.basis_elem(idx)
                series = alg.zero_elem()
                term = x
                p = 0
                while term:
                    series = series + term * Fraction(1)
                    p += 1
                    term = bracket(z * Fraction(2), term) * Fraction(1, p)
                assert Ad(gexp, x) == series


def test_ad_of_product_of_exponentials(lagr3):
    z1 = lagr3.grade_basis(1)[0] + lagr3.grade_basis(1)[1] * Fraction(2)
    z2 = lagr3.grade_basis(2)[0] * Fraction(-1)
    g = group_exp(z1) * group_exp(z2)
    for idx in range(lagr3.dim):
        x = lagr3.basis_elem(idx)
        assert Ad(g, x) == Ad(group_exp(z1), Ad(group_exp(z2), x))


def test_g0_preserves_grading(any_algebra):
    alg = any_algebra
    for g0 in g0_samples(alg):
        assert g0.in_G0()
        assert validate_group_matrix(alg, g0.mat)
        for g in range(-alg.k, alg.k + 1):
            for b in alg.grade_basis(g):
                assert Ad(g0, b).in_grade(g)


def test_truncated_ad_trivial_for_one_graded():
    alg = make_algebra("conf(1,2)")
    z = alg.grade_basis(1)[0] + alg.grade_basis(1)[2]
    g = group_exp(z)
    for y in alg.grade_basis(-1):
        assert truncated_Ad(g, y) == y


def test_truncated_ad_xxdot_formula(xxdot):
    # (x1, X1, X2) -> (x1 + Z1(X2), X1 - z1 X2, X2)
    e = xxdot.elem_from_grade_coords
    y = e({-1: (5, 1, 2), -2: (3, 4)})
    z = e({1: (7, 2, -1), 2: (1, 1)})
    out = truncated_Ad(group_exp(z), y)
    assert out == e({-1: (5 + (2 * 3 - 1 * 4), 1 - 7 * 3, 2 - 7 * 4), -2: (3, 4)})


def test_truncated_ad_is_an_action(lagr3, xxdot):
    for alg in (lagr3, xxdot):
        z1 = alg.grade_basis(1)[0] + alg.grade_basis(alg.k)[0] * Fraction(2)
        z2 = alg.grade_basis(1)[-1] * Fraction(-1) + alg.grade_basis(alg.k)[-1]
        b1, b2 = group_exp(z1), group_exp(z2)
        for i in range(alg.dim):
            if alg.basis_grades[i] >= 0:
                continue
            y = alg.basis_elem(i)
            assert truncated_Ad(b1 * b2, y) == truncated_Ad(b1, truncated_Ad(b2, y))


def test_truncated_ad_preconditions(lagr3):
    z = lagr3.grade_basis(1)[0]
    x = lagr3.grade_basis(-1)[0]
    with pytest.raises(NotInNilpotentPart):
        truncated_Ad(group_exp(z), z)
    lower = group_exp(x)
    with pytest.raises(NotInParabolic):
        truncated_Ad(lower, x)


def test_normal_form_roundtrip(any_algebra):
    alg = any_algebra
    zs_parts = []
    for g in range(1, alg.k + 1):
        zpart = alg.grade_basis(g)[0] * Fraction(2)
        if len(alg.grade_slices[g]) > 1:
            zpart = zpart + alg.grade_basis(g)[1] * Fraction(-1)
        zs_parts.append(zpart)
    for b0 in g0_samples(alg):
        b = b0
        for z in zs_parts:
            b = b * group_exp(z)
        nb0, zs = normal_form_P(b)
        assert nb0.mat == b0.mat
        assert list(zs) == zs_parts
        assert reconstruct_from_normal_form(nb0, zs).mat == b.mat


def test_normal_form_identity_and_g0(lagr3):
    ident = lagr3.group_identity()
    b0, zs = normal_form_P(ident)
    assert b0.mat == Mat.identity(3) and all(z.is_zero() for z in zs)
    blockdiag = g0_samples(lagr3)[1]
    b0, zs = normal_form_P(blockdiag)
    assert b0.mat == blockdiag.mat and all(z.is_zero() for z in zs)


def test_normal_form_rejects_non_parabolic(lagr3):
    x = lagr3.grade_basis(-1)[0]
    with pytest.raises(NotInParabolic):
        normal_form_P(group_exp(x))


def test_log_unipotent_inverts_exp(lagr3):
    z = lagr3.grade_basis(1)[0] + lagr3.grade_basis(2)[0] * Fraction(3)
    m = exp_nilpotent(z, Fraction(1))
    assert lagr3.express(log_unipotent(m)) == z.coords


# -- the worked closed-form bracket identities ---------------------------------


def conf_vec_elem(alg, vec):
    out = alg.zero_elem()
    for v, b in zip(vec, alg.grade_basis(-1)):
        out = out + b * v
    return out


@pytest.mark.parametrize("cid", ["conf(1,1)", "conf(1,2)"])
def test_conf_iterated_bracket_closed_form(cid):
    """[X,[X,Z]] = -2 Z(X) X + |X|^2 J Z^t over all basis pairs and combos."""
    alg = make_algebra(cid)
    signs = alg.meta["signs"]
    nn = len(signs)
    vecs = list(itertools.product((-1, 0, 1, 2), repeat=nn))
    for xv in vecs[:16]:
        for i, zb in enumerate(alg.grade_basis(1)):
            x = conf_vec_elem(alg, [Fraction(v) for v in xv])
            lhs = bracket(x, bracket(x, zb))
            zx = Fraction(xv[i])
            norm = sum(s * Fraction(v) * Fraction(v) for s, v in zip(signs, xv))
            jzt = [Fraction(0)] * nn
            jzt[i] = signs[i]
            rhs = x * (-2 * zx) + conf_vec_elem(alg, jzt) * norm
            assert lhs == rhs


@pytest.mark.xfail(strict=True, reason="the printed closed form carries a sign typo "
                   "in the |X|^2 J Z^t term; the realization forces the opposite sign")
def test_conf_iterated_bracket_printed_sign():
    alg = make_algebra("conf(1,1)")
    signs = alg.meta["signs"]
    x = conf_vec_elem(alg, [Fraction(1), Fraction(0)])
    zb = alg.grade_basis(1)[0]
    lhs = bracket(x, bracket(x, zb))
    jzt = [signs[0], Fraction(0)]
    rhs = x * Fraction(-2) + conf_vec_elem(alg, jzt) * Fraction(-1)
    assert lhs == rhs


def test_conf_null_direction_gives_multiple(any_algebra):
    alg = any_algebra
    if alg.family != "conf":
        return
    signs = alg.meta["signs"]
    if all(s > 0 for s in signs) or all(s < 0 for s in signs):
        return
    # a null vector: one +1 slot and one -1 slot
    i = signs.index(Fraction(1))
    j = signs.index(Fraction(-1))
    vec = [Fraction(0)] * len(signs)
    vec[i] = vec[j] = Fraction(1)
    x = conf_vec_elem(alg, vec)
    for zb in alg.grade_basis(1):
        out = bracket(x, bracket(x, zb))
        if out.is_zero():
            continue
        ratio = None
        for a, b in zip(x.coords, out.coords):
            if a:
                ratio = b / a
                break
        assert x * ratio == out


@pytest.mark.parametrize("cid", ["grass(1,2)", "grass(2,2)", "proj(2)"])
def test_grass_iterated_bracket_is_minus_2xzx(cid):
    alg = make_algebra(cid)
    for xb in alg.grade_basis(-1):
        for zb in alg.grade_basis(1):
            x = xb + alg.grade_basis(-1)[0] * Fraction(2)
            lhs = bracket(x, bracket(x, zb))
            rhs = alg.elem_from_matrix(x.matrix * zb.matrix * x.matrix * Fraction(-2))
            assert lhs == rhs


def test_su21_structure():
    alg = make_algebra("su21")
    u1, u2 = alg.grade_basis(-1)
    v = alg.grade_basis(-2)[0]
    assert bracket(u1, u2) == v * Fraction(-2)
    # contact grading: the g_-1 bracket onto g_-2 is nondegenerate
    assert bracket(u1, u1).is_zero() and bracket(u2, u2).is_zero()


def test_values_are_immutable(proj1):
    from parageo.poly import Poly, RatFun

    x = proj1.grade_basis(-1)[0]
    for obj, attr in (
        (x, "coords"),
        (group_exp(x), "mat"),
        (Poly((1, 2)), "coeffs"),
        (RatFun(Poly((1,)), Poly((1, 1))), "num"),
        (Mat.identity(2), "rows"),
    ):
        with pytest.raises(AttributeError):
            setattr(obj, attr, None)
