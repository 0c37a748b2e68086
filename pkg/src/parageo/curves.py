"""Distinguished curves b exp(tX)P and their exact jet calculus.

A curve spec (b, X) with b in P and X in n determines the curve
t -> b exp(tX) P.  Replacing the G-valued representative b exp(tX) by the
canonical one exp(t Ad_b X) does not change the projection to G/P, and the
comparison curve of two specs is

    u(t) = exp(-t Ad_{b2} X2) exp(t Ad_{b1} X1),

an exact polynomial matrix with u(0) = I.  The two projections coincide
iff u stays in the block pattern of P, and they agree to order ell at 0
iff the derivatives of the left logarithmic derivative delta_u = u^{-1} u'
at 0 lie in p for all orders < ell.  Everything here is decided exactly:
membership tests are coordinate (or polynomial-coefficient) vanishing.

The module also machine-checks, as identities of polynomial matrices, the
series expansion of delta(exp(Y(t))), the Leibniz rule for delta, the
iterated-adjoint formula for (delta u)^(i), the derivative formula for
Ad_{u(t)^{-1}} Y(t), and the reparametrized derivative formula with its
partition coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import (
    AlgElem,
    GroupElem,
    _same_algebra,
    exp_mat,
    exp_nilpotent,
    log_unipotent,
    normal_form_P,
    truncated_Ad,
)
from .errors import (
    BadReparam,
    NotInNilpotentPart,
    NotInParabolic,
    OracleDisagreement,
)
from .matrices import Mat, mat_inverse_unimodular
from .poly import P_T, Poly, poly_series_inverse

_F1 = Fraction(1)


class CurveSpec:
    """The data (b, X) of a distinguished curve c^{b,X}(t) = b exp(tX) P."""

    __slots__ = ("algebra", "b", "X", "b0", "zs", "_a_mat")

    def __init__(self, algebra, b, X):
        if b.algebra is not algebra or X.algebra is not algebra:
            raise NotInParabolic("curve data must live in the given algebra")
        if not b.in_P():
            raise NotInParabolic("base point b is not in P")
        if not X.in_n():
            raise NotInNilpotentPart("direction X is not in n")
        b0, zs = normal_form_P(b)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "zs", zs)
        object.__setattr__(self, "_a_mat", None)

    def __setattr__(self, name, value):
        raise AttributeError("CurveSpec is immutable")

    @classmethod
    def from_Z(cls, algebra, Z, X):
        """Curve c^{exp(Z), X} for Z in p_+ (the reduced form of 2.5a)."""
        if not Z.in_p_plus():
            raise NotInParabolic("Z must lie in p_+")
        return cls(algebra, GroupElem(algebra, exp_nilpotent(Z, _F1)), X)

    @classmethod
    def base(cls, algebra, X):
        return cls(algebra, algebra.group_identity(), X)

    @property
    def ad_matrix(self):
        """The constant matrix Ad_b X (nilpotent)."""
        if self._a_mat is None:
            object.__setattr__(self, "_a_mat", self.b.mat * self.X.matrix * self.b.inv_mat)
        return self._a_mat

    def curve_matrix(self, scale=P_T):
        """b exp(tX) as an exact polynomial matrix."""
        return self.b.mat * exp_nilpotent(self.X, scale)

    def rep_matrix(self, scale=P_T):
        """The canonical representative exp(t Ad_b X); same projection."""
        return exp_mat(self.ad_matrix.scale(scale))

    def direction(self):
        """Tangent direction at o as an element of n (= g/p)."""
        return truncated_Ad(self.b, self.X)

    def __repr__(self):
        return "CurveSpec(%s; X=%s)" % (self.algebra.name, list(self.X.coords))


class ComparisonCurve:
    """u(t) with rep_1(t) = rep_2(t) u(t), plus delta_u in coordinates."""

    __slots__ = ("c1", "c2", "u", "u_inv", "delta_u", "delta_coords")

    def __init__(self, c1, c2, u, u_inv, delta_u, delta_coords):
        for name, val in (
            ("c1", c1),
            ("c2", c2),
            ("u", u),
            ("u_inv", u_inv),
            ("delta_u", delta_u),
            ("delta_coords", delta_coords),
        ):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("ComparisonCurve is immutable")

    @property
    def algebra(self):
        return self.c1.algebra

    def delta_at_zero(self):
        return AlgElem(self.algebra, tuple(p[0] for p in self.delta_coords))


def comparison(c1, c2):
    """Comparison data of two curve specs in the same algebra."""
    _same_algebra(c1.X, c2.X)
    alg = c1.algebra
    a1, a2 = c1.ad_matrix, c2.ad_matrix
    u = exp_mat(a2.scale(-P_T)) * exp_mat(a1.scale(P_T))
    u_inv = exp_mat(a1.scale(-P_T)) * exp_mat(a2.scale(P_T))
    delta = u_inv * u.derivative()
    coords = alg.express_poly(delta)
    if coords is None:
        raise OracleDisagreement("delta_u left the algebra span; this cannot happen for curves in G")
    return ComparisonCurve(c1, c2, u, u_inv, delta, coords)


def curves_equal(c1, c2):
    """True iff the two curves coincide in G/P: u(t) stays in the P pattern."""
    _same_algebra(c1.X, c2.X)
    alg = c1.algebra
    u = exp_mat(c2.ad_matrix.scale(-P_T)) * exp_mat(c1.ad_matrix.scale(P_T))
    return alg.matrix_in_p_pattern(u)


def jet_orders_equal(cc, ell):
    """(delta_u)^(i)(0) in p for all i <= ell-1, by coordinate vanishing."""
    alg = cc.algebra
    for idx in range(alg.dim):
        if alg.basis_grades[idx] >= 0:
            continue
        coeffs = cc.delta_coords[idx].coeffs
        # i-th derivative at 0 is i! * coeffs[i]
        for i in range(min(ell, len(coeffs))):
            if coeffs[i]:
                return False
    return True


def jet_equal(c1, c2, ell, cross_check=True):
    """Decide equality of ell-jets at 0, with an independent oracle.

    Primary route: p-membership of (delta_u)^(i)(0) for i < ell.  Oracle:
    coefficientwise comparison of the normal-coordinate expansions up to
    order ell.  Disagreement raises OracleDisagreement.
    """
    if ell < 1:
        raise ValueError("jet order must be >= 1")
    cc = comparison(c1, c2)
    primary = jet_orders_equal(cc, ell)
    if cross_check:
        j1 = normal_coord_jet(c1, ell)
        j2 = normal_coord_jet(c2, ell)
        oracle = j1.coeffs_prefix(ell) == j2.coeffs_prefix(ell)
        if oracle != primary:
            raise OracleDisagreement(
                "jet_equal at order %d: delta-route %s vs normal-coordinate %s"
                % (ell, primary, oracle)
            )
    return primary


class NormalCoordJet:
    """Jet of the normal-coordinate representation exp(Y(t)) p(t)."""

    __slots__ = ("algebra", "order", "Y_coeffs", "P_part")

    def __init__(self, algebra, order, Y_coeffs, P_part):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "Y_coeffs", tuple(Y_coeffs))
        object.__setattr__(self, "P_part", P_part)

    def __setattr__(self, name, value):
        raise AttributeError("NormalCoordJet is immutable")

    def derivative_at_zero(self, i):
        """Y^(i)(0) as an algebra element."""
        return self.Y_coeffs[i] * Fraction(factorial(i))

    def coeffs_prefix(self, ell):
        return tuple(e.coords for e in self.Y_coeffs[: ell + 1])


def normal_coord_jet(c, order):
    """Factor the curve through the big cell: exp(Y(t)) p(t), truncated.

    Works on truncated power series; the factorization is the
    unipotent-lower / parabolic-upper block decomposition, which exists at
    t=0 because the representative starts at the identity.  Y lands in n
    exactly (asserted), and exp(Y) p reproduces the representative to the
    requested order.
    """
    if order < 1:
        raise ValueError("jet order must be >= 1")
    alg = c.algebra
    m = c.rep_matrix().truncate(order)
    lower, upper = _block_lu_series(alg, m, order)
    ymat = log_unipotent(lower).truncate(order)
    coords = alg.express_poly(ymat)
    if coords is None:
        raise OracleDisagreement("normal-coordinate factor left the algebra span")
    for idx in range(alg.dim):
        if alg.basis_grades[idx] >= 0 and coords[idx]:
            raise OracleDisagreement("normal-coordinate factor is not n-valued")
    ycoeffs = []
    for i in range(order + 1):
        ycoeffs.append(AlgElem(alg, tuple(p[i] for p in coords)))
    if ycoeffs[0]:
        raise OracleDisagreement("curve does not start at the origin of the chart")
    recon = (exp_mat(ymat) * upper).truncate(order)
    if recon != m:
        raise OracleDisagreement("big-cell factorization failed to reproduce the curve")
    return NormalCoordJet(alg, order, ycoeffs, upper)


def _block_lu_series(alg, m, order):
    """m = L Q with L block-lower unipotent, Q block-upper, mod t^(order+1)."""
    sizes = alg.block_sizes
    starts = []
    s = 0
    for size in sizes:
        starts.append(s)
        s += size
    d = alg.matrix_dim
    work = [[_as_poly_entry(m.rows[i][j]) for j in range(d)] for i in range(d)]
    lower = [[Poly.const(_F1) if i == j else Poly() for j in range(d)] for i in range(d)]
    nb = len(sizes)
    for jb in range(nb - 1):
        rj = range(starts[jb], starts[jb] + sizes[jb])
        piv = Mat(tuple(tuple(work[i][j] for j in rj) for i in rj))
        det = piv.det()
        det = det if isinstance(det, Poly) else Poly.const(det)
        inv_det = poly_series_inverse(det, order)
        piv_inv = piv.adjugate().map(lambda e: (e * inv_det).truncate(order))
        for ib in range(jb + 1, nb):
            ri = range(starts[ib], starts[ib] + sizes[ib])
            blk = Mat(tuple(tuple(work[i][j] for j in rj) for i in ri))
            f = (blk * piv_inv).map(lambda e: e.truncate(order))
            for a, i in enumerate(ri):
                for bcol, j in enumerate(rj):
                    lower[i][j] = f.rows[a][bcol]
            for a, i in enumerate(ri):
                for j in range(d):
                    acc = work[i][j]
                    for bcol, jj in enumerate(rj):
                        acc = acc - f.rows[a][bcol] * work[jj][j]
                    work[i][j] = acc.truncate(order)
    return Mat(lower), Mat(work)


def _as_poly_entry(e):
    return e if isinstance(e, Poly) else Poly.const(e)


# -- identity checkers ---------------------------------------------------------


def curve_matrix_from_coeffs(coeff_elems, require_n=True):
    """Sum_j t^j * Y_j as a polynomial matrix; Y_j algebra elements."""
    if not coeff_elems:
        raise ValueError("need at least one coefficient")
    alg = coeff_elems[0].algebra
    if require_n:
        for e in coeff_elems:
            if not e.in_n():
                raise NotInNilpotentPart("curve coefficient outside n")
    d = alg.matrix_dim
    acc = Mat.zero(d).map(lambda _: Poly())
    for j, e in enumerate(coeff_elems):
        acc = acc + e.matrix.map(lambda v: Poly.const(v).shift(j) if v else Poly())
    return acc


def delta_of_exp(ymat):
    """Left logarithmic derivative of exp(Y(t)) computed from first principles."""
    e = exp_mat(ymat)
    e_inv = exp_mat(-ymat)
    return e_inv * e.derivative()


def delta_series(ymat):
    """The finite series sum_p ad(-Y)^p Y'(t) / (p+1)!."""
    term = ymat.derivative()
    total = term.scale(Fraction(1, 1))
    p = 1
    while True:
        term = term * ymat - ymat * term  # ad(-Y) applied once
        if term.is_zero():
            break
        total = total + term.scale(Fraction(1, factorial(p + 1)))
        p += 1
        if p > ymat.dim * ymat.dim:
            raise OracleDisagreement("delta series failed to terminate")
    return total


def verify_lemma_2_3(coeff_elems):
    """Series formula for delta(exp o Y) on an n-valued polynomial curve."""
    ymat = curve_matrix_from_coeffs(coeff_elems)
    return delta_of_exp(ymat) == delta_series(ymat)


def verify_delta_leibniz(f, f_inv, g, g_inv):
    """delta(f g) = delta(g) + Ad_{g^{-1}} delta(f) for P-valued poly curves."""
    fg = f * g
    fg_inv = g_inv * f_inv
    lhs = fg_inv * fg.derivative()
    rhs = g_inv * g.derivative() + g_inv * (f_inv * f.derivative()) * g
    return lhs == rhs


def verify_lemma_2_4(cc, i_max):
    """(delta_u)^(i)(t) = ad(-Ad_{b1}X1)^i (delta_u(t)) for 1 <= i <= i_max."""
    a1 = cc.c1.ad_matrix
    lhs = cc.delta_u
    rhs = cc.delta_u
    for _ in range(1, i_max + 1):
        lhs = lhs.derivative()
        rhs = rhs * a1 - a1 * rhs  # ad(-a1)
        if lhs != rhs:
            return False
    return True


def verify_eq_2_4_1(u, coeff_elems):
    """d/dt (Ad_{u^{-1}} Y) = Ad_{u^{-1}} Y' - [delta_u, Ad_{u^{-1}} Y]."""
    ymat = curve_matrix_from_coeffs(coeff_elems, require_n=False)
    u_inv = mat_inverse_unimodular(u)
    ad_y = u_inv * ymat * u
    delta = u_inv * u.derivative()
    lhs = ad_y.derivative()
    rhs = u_inv * ymat.derivative() * u - (delta * ad_y - ad_y * delta)
    return lhs == rhs


def _partitions(total):
    """Integer partitions of ``total`` as descending tuples."""
    if total == 0:
        yield ()
        return
    def rec(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, maxpart), 0, -1):
            for tail in rec(rest - part, part):
                yield (part,) + tail
    yield from rec(total, total)


def partition_coefficient(i, parts):
    """Number of ways to split i derivative hits realizing the given parts."""
    num = factorial(i)
    den = 1
    mult = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    for p, a in mult.items():
        den *= factorial(p) ** a * factorial(a)
    return Fraction(num, den)


def reparam_comparison(cc, phi):
    """u(t) for exp(phi(t) Ad_{b1}X1) = exp(t Ad_{b2}X2) u(t), phi a Poly."""
    if phi[0]:
        raise BadReparam("phi(0) must be 0")
    if not phi[1]:
        raise BadReparam("phi'(0) must be nonzero")
    a1, a2 = cc.c1.ad_matrix, cc.c2.ad_matrix
    u = exp_mat(a2.scale(-P_T)) * exp_mat(a1.scale(phi))
    u_inv = exp_mat(a1.scale(-phi)) * exp_mat(a2.scale(P_T))
    return u, u_inv, a1


def verify_lemma_3_2(cc, phi, i_max):
    """Multi-index derivative formula for the reparametrized comparison.

    For each 1 <= i <= i_max the directly differentiated (delta_u)^(i)
    must equal phi^(i+1) X1 plus the signed partition sum applied to the
    iterated ad_{X1} of delta_u, exactly as polynomial matrices.
    """
    u, u_inv, a1 = reparam_comparison(cc, phi)
    delta = u_inv * u.derivative()
    ad_pow = [delta]
    for _ in range(i_max):
        prev = ad_pow[-1]
        ad_pow.append(a1 * prev - prev * a1)
    lhs = delta
    for i in range(1, i_max + 1):
        lhs = lhs.derivative()
        rhs = a1.scale(phi.nth_derivative(i + 1))
        coeff_by_k = {}
        for parts in _partitions(i):
            k = len(parts)
            if k < 1 or k > i:
                continue
            c = partition_coefficient(i, parts)
            term = Poly.const(c)
            for p in parts:
                term = term * phi.nth_derivative(p)
            coeff_by_k[k] = coeff_by_k.get(k, Poly()) + term
        for k, cpoly in coeff_by_k.items():
            sign = 1 if k % 2 == 0 else -1
            rhs = rhs + ad_pow[k].scale(cpoly).scale(Fraction(sign))
        if lhs != rhs:
            return False
    return True
