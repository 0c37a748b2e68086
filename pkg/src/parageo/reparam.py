"""Projective (Moebius) reparametrizations of distinguished curves.

A fractional-linear map phi(t) = (At+B)/(Ct+D) is stored projectively with
exact coefficients and AD - BC != 0; scaling all four entries by a nonzero
rational gives the same map, and exact scaling to determinant 1 is not
possible over Q (it needs a square root), so composition and equality are
projective.  With phi(0) = 0, phi'(0) = a != 0 and phi''(0) = b the map is
phi(t) = a t (1 - (b/2a) t)^{-1}; its higher derivatives at 0 follow the
recursion phi^(i+1)(0) = (i+1)!/2^i * b^i / a^(i-1).

Whether two distinguished curves agree up to such a reparametrization is
decided by exact linear algebra on iterated brackets, and every positive
answer is verifiable as an identity of rational-function matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import bracket, exp_nilpotent, group_exp, normal_form_P
from .errors import (
    NotApplicableGrading,
    PoleAtOrigin,
    ZeroVelocity,
)
from .matrices import solve_linear
from .poly import P_ONE, P_T, Poly, RatFun

_F0 = Fraction(0)
_F1 = Fraction(1)


class MobiusMap:
    """phi(t) = (At+B)/(Ct+D) with exact coefficients, AD-BC != 0."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        det = a * d - b * c
        if not det:
            raise ValueError("Moebius map needs AD - BC != 0")
        # canonical projective scaling: last nonzero of (D, C) becomes 1
        scale = d if d else c
        object.__setattr__(self, "a", a / scale)
        object.__setattr__(self, "b", b / scale)
        object.__setattr__(self, "c", c / scale)
        object.__setattr__(self, "d", d / scale)

    def __setattr__(self, name, value):
        raise AttributeError("MobiusMap is immutable")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def affine(cls, slope, shift=0):
        if not slope:
            raise ZeroVelocity("affine map needs a nonzero slope")
        return cls(slope, shift, 0, 1)

    @classmethod
    def from_seeds(cls, value0, velocity, acceleration):
        """Map with phi(0)=value0, phi'(0)=velocity, phi''(0)=acceleration."""
        a = Fraction(velocity)
        if not a:
            raise ZeroVelocity("phi'(0) must be nonzero")
        b = Fraction(acceleration)
        v0 = Fraction(value0)
        c = -b / (2 * a)
        return cls(a + c * v0, v0, c, 1)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def is_affine(self):
        return self.c == 0

    def as_ratfun(self):
        return RatFun(Poly((self.b, self.a)), Poly((self.d, self.c)))

    def compose(self, other):
        """self after other: (self.compose(other))(t) = self(other(t))."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def of_ratfun(self, r):
        """Apply the map to a rational function argument."""
        return RatFun(self.a * r.num + self.b * r.den, self.c * r.num + self.d * r.den)

    def inverse(self):
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def seeds(self):
        """(phi(0), phi'(0), phi''(0)); needs no pole at the origin."""
        if not self.d:
            raise PoleAtOrigin("map has a pole at t = 0")
        det = self.det
        return (
            self.b / self.d,
            det / (self.d * self.d),
            -2 * self.c * det / (self.d**3),
        )

    def eval(self, x):
        den = self.c * x + self.d
        if not den:
            raise ZeroDivisionError("evaluation at the pole")
        return (self.a * x + self.b) / den

    def taylor(self, order):
        if not self.d:
            raise PoleAtOrigin("map has a pole at t = 0")
        return self.as_ratfun().taylor(order)

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return "MobiusMap((%s t + %s)/(%s t + %s))" % (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class ReparamVerdict:
    exists: bool
    map: MobiusMap | None = None
    failure_reason: str | None = None


def _proportionality(x_ref, x):
    """Scalar a with x = a * x_ref, or None."""
    ratio = None
    for cr, cx in zip(x_ref.coords, x.coords):
        if cr:
            ratio = cx / cr
            break
        if cx:
            return None
    if ratio is None:
        return None
    if x_ref * ratio == x:
        return ratio
    return None


def reparam_solve(algebra, x1, z, x2):
    """Decide when c^{e,X1} and c^{exp Z,X2} trace the same geodesic.

    |1|-graded case: X1, X2 in g_-1 and Z in g_1; the verdict exists iff
    X2 = a X1 (a != 0) and [X2,[X2,Z]] = b X1, and then the projective map
    with seeds (0, a, b) does the job.  For the lowest-grade class in a
    deeper grading (X1, X2 in g_-k), the grade components Z_1..Z_{k-1}
    must first satisfy the cascade [Z_l, X2] = 0, after which the same
    two conditions run on the g_k component.
    """
    if x1.algebra is not algebra or x2.algebra is not algebra or z.algebra is not algebra:
        raise NotApplicableGrading("operands must live in the given algebra")
    if not z.in_p_plus():
        raise NotApplicableGrading("Z must lie in p_+")
    k = algebra.k
    if k == 1:
        if not (x1.in_grade(-1) and x2.in_grade(-1)):
            raise NotApplicableGrading("directions must lie in g_-1")
        z_top = z
    else:
        if not (x1.in_grade(-k) and x2.in_grade(-k)):
            raise NotApplicableGrading(
                "solver covers only the lowest-grade class in a |%d|-grading" % k
            )
        _, zs = normal_form_P(group_exp(z))
        for ell in range(1, k):
            if bracket(zs[ell - 1], x2):
                return ReparamVerdict(False, None, "cascade [Z_%d, X2] != 0" % ell)
        z_top = zs[k - 1]
    if x1.is_zero() or x2.is_zero():
        return ReparamVerdict(False, None, "zero direction")
    a = _proportionality(x1, x2)
    if a is None or a == 0:
        return ReparamVerdict(False, None, "X2 is not a nonzero multiple of X1")
    acc = bracket(x2, bracket(x2, z_top))
    b = _proportionality(x1, acc) if acc else _F0
    if b is None:
        return ReparamVerdict(False, None, "[X2,[X2,Z]] is not a multiple of X1")
    return ReparamVerdict(True, MobiusMap.from_seeds(0, a, b), None)


def verify_reparam(c1, c2, m):
    """Exact check that c2(t) and c1(phi(t)) project to the same curve.

    Builds u(t) = c2(t)^{-1} c1(phi(t)) over rational functions and tests
    that every entry outside the block pattern of P vanishes identically.
    """
    alg = c1.algebra
    phi = m.as_ratfun()
    if not phi.den.eval(_F0):
        raise PoleAtOrigin("reparametrization has a pole at t = 0")
    left = exp_nilpotent(c2.X, -P_T) * c2.b.inv_mat
    right = c1.b.mat * exp_nilpotent(c1.X, phi)
    u = left.map(_as_ratfun_entry) * right.map(_as_ratfun_entry)
    return alg.matrix_in_p_pattern(u)


def _as_ratfun_entry(e):
    if isinstance(e, RatFun):
        return e
    if isinstance(e, Poly):
        return RatFun(e, P_ONE)
    return RatFun(Poly((e,)), P_ONE)


def schwarzian_check(phi):
    """phi''' phi' = 3/2 (phi'')^2 as an identity of rational functions."""
    if isinstance(phi, MobiusMap):
        r = phi.as_ratfun()
    elif isinstance(phi, Poly):
        r = RatFun(phi, P_ONE)
    else:
        r = phi
    d1 = r.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    return d3 * d1 == d2 * d2 * Fraction(3, 2)


def projective_structure_exists(algebra, x, grade_for_z):
    """A witness Z in g_{grade} with [X,[X,Z]] = X, or None.

    The zero direction returns None by convention (a constant curve has no
    projective family of parametrizations).
    """
    if x.is_zero():
        return None
    if not x.in_grade(-grade_for_z):
        raise NotApplicableGrading("X must lie in g_-%d" % grade_for_z)
    basis = algebra.grade_basis(grade_for_z)
    cols = [bracket(x, bracket(x, bj)).coords for bj in basis]
    rows = [[cols[j][r] for j in range(len(basis))] for r in range(algebra.dim)]
    sol = solve_linear(rows, list(x.coords))
    if sol is None:
        return None
    out = algebra.zero_elem()
    for coeff, bj in zip(sol, basis):
        out = out + bj * coeff
    return out


def taylor_seed_expand(a, b, order):
    """Taylor coefficients (degrees 1..order) of a t (1 - (b/2a) t)^{-1}.

    The i-th coefficient is a (b/2a)^(i-1), the geometric-series form of
    the derivative recursion; the closed-form expansion is recomputed from
    the rational function and must agree exactly.
    """
    a = Fraction(a)
    b = Fraction(b)
    if not a:
        raise ZeroVelocity("phi'(0) must be nonzero")
    ratio = b / (2 * a)
    coeffs = []
    power = _F1
    for _ in range(order):
        coeffs.append(a * power)
        power *= ratio
    closed = RatFun(Poly((_F0, a)), Poly((_F1, -ratio)))
    series = closed.taylor(order)
    expected = Poly((_F0,) + tuple(coeffs))
    if series != expected.truncate(order):
        raise AssertionError("seed expansion disagrees with the closed form")
    return coeffs
