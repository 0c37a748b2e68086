"""|k|-graded matrix Lie algebras with parabolic structure.

A ``GradedAlgebra`` is a concrete matrix realization: a basis of constant
matrices organized by grade -k..k, together with the block structure of the
flag the parabolic stabilizes.  Row/column weights induced by the blocks
assign a grade to every matrix position; each basis matrix of grade i
occupies only positions of grade i, which makes membership tests (in p, in
n, in a single grade) exact coordinate-vanishing tests and makes the
P / G0 block patterns simple position tests on group matrices.

Coordinates of algebra elements are always plain rationals, also for the
Gaussian-entry realization: the algebra is a real form and the basis is a
basis over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import (
    AlgebraMismatch,
    NotInNilpotentPart,
    NotInParabolic,
    NotNilpotent,
)
from .matrices import Mat, rref
from .poly import Poly, poly_re_im
from .scalars import FIELD_GAUSSIAN, scalar_re_im

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GradedAlgebra:
    """A |k|-graded matrix Lie algebra from the catalog."""

    def __init__(self, name, family, params, field, k, block_sizes, basis_by_grade, meta=None):
        self.name = name
        self.family = family
        self.params = dict(params)
        self.field = field
        self.k = k
        self.block_sizes = tuple(block_sizes)
        self.meta = dict(meta or {})
        self.matrix_dim = sum(block_sizes)

        # consecutive blocks differ by weight 1, descending left to right
        nblocks = len(self.block_sizes)
        weights = []
        for b, size in enumerate(self.block_sizes):
            weights.extend([nblocks - 1 - b] * size)
        self.row_weights = tuple(weights)

        d = self.matrix_dim
        self.position_grade = tuple(
            tuple(weights[i] - weights[j] for j in range(d)) for i in range(d)
        )
        self.forbidden_positions = tuple(
            (i, j) for i in range(d) for j in range(d) if self.position_grade[i][j] < 0
        )
        self.offdiag_block_positions = tuple(
            (i, j) for i in range(d) for j in range(d) if self.position_grade[i][j] != 0
        )

        # flattened basis, grades ascending
        self.basis = []
        self.basis_grades = []
        self.grade_slices = {}
        for grade in range(-k, k + 1):
            mats = basis_by_grade.get(grade, ())
            start = len(self.basis)
            for m in mats:
                self._check_grade_purity(m, grade)
                self.basis.append(m)
            self.grade_slices[grade] = range(start, len(self.basis))
        self.basis = tuple(self.basis)
        for grade in range(-k, k + 1):
            self.basis_grades.extend([grade] * len(self.grade_slices[grade]))
        self.basis_grades = tuple(self.basis_grades)
        self.dim = len(self.basis)

        self._basis_vecs = tuple(self.vectorize(m) for m in self.basis)
        self._build_extractor()
        self._build_bracket_table()

    # -- construction helpers ------------------------------------------------

    def _check_grade_purity(self, m, grade):
        for i in range(self.matrix_dim):
            for j in range(self.matrix_dim):
                if m.rows[i][j] and self.position_grade[i][j] != grade:
                    raise ValueError(
                        "%s: basis matrix of grade %d has an entry at position "
                        "(%d,%d) of grade %d" % (self.name, grade, i, j, self.position_grade[i][j])
                    )

    def _build_extractor(self):
        # pick a row subset R of the vectorized-basis matrix B with B[R]
        # invertible; coords of v in span(B) are then inv(B[R]) @ v[R]
        nvec = len(self._basis_vecs[0])
        cols = self._basis_vecs
        chosen = []
        acc = []
        for r in range(nvec):
            row = tuple(col[r] for col in cols)
            if len(rref(acc + [row])[1]) > len(chosen):
                acc.append(row)
                chosen.append(r)
            if len(chosen) == self.dim:
                break
        if len(chosen) != self.dim:
            raise ValueError("%s: basis matrices are linearly dependent" % self.name)
        self._pivot_rows = tuple(chosen)
        self._extractor = Mat(acc).inverse()

    def _build_bracket_table(self):
        table = []
        for i, bi in enumerate(self.basis):
            row = []
            for bj in self.basis:
                m = bi * bj - bj * bi
                coords = self.express(m)
                if coords is None:
                    raise ValueError("%s: bracket of basis pair leaves the span" % self.name)
                row.append(coords)
            table.append(tuple(row))
        self.bracket_table = tuple(table)

    # -- vectorization and coordinates --------------------------------------

    def vectorize(self, mat):
        """Flatten a constant matrix into rational coordinates (re/im split
        for the Gaussian field)."""
        out = []
        for row in mat.rows:
            for e in row:
                if self.field == FIELD_GAUSSIAN:
                    re, im = scalar_re_im(e)
                    out.append(re)
                    out.append(im)
                else:
                    out.append(Fraction(e))
        return tuple(out)

    def vectorize_poly(self, mat):
        """Same as vectorize but for Poly entries; components are Q-polys."""
        out = []
        for row in mat.rows:
            for e in row:
                p = e if isinstance(e, Poly) else Poly.const(e)
                if self.field == FIELD_GAUSSIAN:
                    pre, pim = poly_re_im(p)
                    out.append(pre)
                    out.append(pim)
                else:
                    out.append(p)
        return tuple(out)

    def express(self, mat, check=True):
        """Coordinates of a constant matrix over the basis, or None."""
        vec = self.vectorize(mat)
        coords = tuple(
            sum((erow[r] * vec[pr] for r, pr in enumerate(self._pivot_rows) if vec[pr]), _ZERO)
        for erow in self._extractor.rows)
        if check:
            for r in range(len(vec)):
                acc = _ZERO
                for j, c in enumerate(coords):
                    if c:
                        acc += c * self._basis_vecs[j][r]
                if acc != vec[r]:
                    return None
        return coords

    def express_poly(self, mat, check=True):
        """Poly coordinates of a polynomial matrix curve in g, or None."""
        vec = self.vectorize_poly(mat)
        coords = []
        for erow in self._extractor.rows:
            acc = Poly()
            for r, pr in enumerate(self._pivot_rows):
                if erow[r] and vec[pr]:
                    acc = acc + erow[r] * vec[pr]
            coords.append(acc)
        coords = tuple(coords)
        if check:
            for r in range(len(vec)):
                acc = Poly()
                for j, c in enumerate(coords):
                    if c and self._basis_vecs[j][r]:
                        acc = acc + self._basis_vecs[j][r] * c
                if acc != vec[r]:
                    return None
        return coords

    # -- element constructors ------------------------------------------------

    def elem(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("expected %d coordinates, got %d" % (self.dim, len(coords)))
        return AlgElem(self, coords)

    def zero_elem(self):
        return AlgElem(self, (_ZERO,) * self.dim)

    def basis_elem(self, idx):
        coords = [_ZERO] * self.dim
        coords[idx] = _ONE
        return AlgElem(self, tuple(coords))

    def grade_basis(self, grade):
        return [self.basis_elem(i) for i in self.grade_slices[grade]]

    def elem_from_matrix(self, mat):
        coords = self.express(mat)
        if coords is None:
            raise ValueError("matrix is not in the span of the %s basis" % self.name)
        return AlgElem(self, coords)

    def elem_from_grade_coords(self, grade_coords):
        """Element from {grade: coordinate list} over the per-grade bases."""
        coords = [_ZERO] * self.dim
        for grade, vals in grade_coords.items():
            sl = self.grade_slices[grade]
            if len(vals) != len(sl):
                raise ValueError("grade %d expects %d coordinates" % (grade, len(sl)))
            for i, v in zip(sl, vals):
                coords[i] = Fraction(v)
        return AlgElem(self, tuple(coords))

    def group_identity(self):
        return GroupElem(self, Mat.identity(self.matrix_dim))

    # -- bracket through the structure table ---------------------------------

    def bracket_coords(self, cx, cy):
        out = [_ZERO] * self.dim
        table = self.bracket_table
        for i, a in enumerate(cx):
            if not a:
                continue
            for j, b in enumerate(cy):
                if not b:
                    continue
                ab = a * b
                for m, c in enumerate(table[i][j]):
                    if c:
                        out[m] += ab * c
        return tuple(out)

    # -- pattern tests on matrices -------------------------------------------

    def matrix_in_p_pattern(self, mat):
        """True when all entries at negative-grade positions vanish."""
        return all(not mat.rows[i][j] for i, j in self.forbidden_positions)

    def matrix_in_g0_pattern(self, mat):
        return all(not mat.rows[i][j] for i, j in self.offdiag_block_positions)

    def block_diagonal_part(self, mat):
        # a Fraction 0 mixes fine with any entry ring
        d = self.matrix_dim
        return Mat(
            tuple(
                tuple(
                    mat.rows[i][j] if self.position_grade[i][j] == 0 else _ZERO
                    for j in range(d)
                )
                for i in range(d)
            )
        )

    def grade_position_part(self, mat, grade):
        d = self.matrix_dim
        return Mat(
            tuple(
                tuple(
                    mat.rows[i][j] if self.position_grade[i][j] == grade else _ZERO
                    for j in range(d)
                )
                for i in range(d)
            )
        )

    def negative_position_part(self, mat):
        d = self.matrix_dim
        return Mat(
            tuple(
                tuple(
                    mat.rows[i][j] if self.position_grade[i][j] < 0 else _ZERO
                    for j in range(d)
                )
                for i in range(d)
            )
        )

    # -- structural invariants ------------------------------------------------

    def structure_violations(self, jacobi=True):
        """Exhaustive grading / Jacobi / nilpotency checks over the basis.

        Returns a list of human-readable violation strings (empty = pass).
        """
        bad = []
        n = self.dim
        for i in range(n):
            gi_ = self.basis_grades[i]
            if abs(gi_) >= 1 and self.basis[i].nilpotency_index() is None:
                bad.append("basis[%d] of grade %d is not nilpotent" % (i, gi_))
            for j in range(n):
                gj = self.basis_grades[j]
                target = gi_ + gj
                for m, c in enumerate(self.bracket_table[i][j]):
                    if c and self.basis_grades[m] != target:
                        bad.append(
                            "[g_%d, g_%d] leaks into grade %d (basis %d,%d)"
                            % (gi_, gj, self.basis_grades[m], i, j)
                        )
        if jacobi:
            for i in range(n):
                ei = self.basis_elem(i).coords
                for j in range(n):
                    ej = self.basis_elem(j).coords
                    bij = self.bracket_coords(ei, ej)
                    for m in range(n):
                        em = self.basis_elem(m).coords
                        lhs = self.bracket_coords(bij, em)
                        t1 = self.bracket_coords(self.bracket_coords(ei, em), ej)
                        t2 = self.bracket_coords(ei, self.bracket_coords(ej, em))
                        if any(a - b - c for a, b, c in zip(lhs, t1, t2)):
                            bad.append("Jacobi fails on basis triple (%d,%d,%d)" % (i, j, m))
        return bad

    def describe(self):
        return {
            "name": self.name,
            "family": self.family,
            "params": dict(self.params),
            "field": self.field,
            "matrix_dim": self.matrix_dim,
            "depth": self.k,
            "grade_dims": {str(g): len(self.grade_slices[g]) for g in range(-self.k, self.k + 1)},
        }

    def __repr__(self):
        return "GradedAlgebra(%s)" % self.name


class AlgElem:
    """An element of g as exact coordinates over the grade-organized basis."""

    __slots__ = ("algebra", "coords", "_mat")

    def __init__(self, algebra, coords):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", tuple(coords))
        object.__setattr__(self, "_mat", None)

    def __setattr__(self, name, value):
        raise AttributeError("AlgElem is immutable")

    @property
    def matrix(self):
        if self._mat is None:
            alg = self.algebra
            acc = Mat.zero(alg.matrix_dim)
            for c, b in zip(self.coords, alg.basis):
                if c:
                    acc = acc + b.scale(c)
            object.__setattr__(self, "_mat", acc)
        return self._mat

    def __add__(self, other):
        _same_algebra(self, other)
        return AlgElem(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _same_algebra(self, other)
        return AlgElem(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgElem(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, c):
        return AlgElem(self.algebra, tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def grade_component(self, grade):
        coords = [_ZERO] * self.algebra.dim
        for i in self.algebra.grade_slices[grade]:
            coords[i] = self.coords[i]
        return AlgElem(self.algebra, tuple(coords))

    def grade_coords(self, grade):
        return tuple(self.coords[i] for i in self.algebra.grade_slices[grade])

    def in_grade(self, grade):
        return all(
            not self.coords[i]
            for i in range(self.algebra.dim)
            if self.algebra.basis_grades[i] != grade
        )

    def in_p(self):
        return all(
            not self.coords[i]
            for i in range(self.algebra.dim)
            if self.algebra.basis_grades[i] < 0
        )

    def in_n(self):
        return all(
            not self.coords[i]
            for i in range(self.algebra.dim)
            if self.algebra.basis_grades[i] >= 0
        )

    def in_p_plus(self):
        return all(
            not self.coords[i]
            for i in range(self.algebra.dim)
            if self.algebra.basis_grades[i] <= 0
        )

    def negative_part(self):
        coords = [
            c if self.algebra.basis_grades[i] < 0 else _ZERO for i, c in enumerate(self.coords)
        ]
        return AlgElem(self.algebra, tuple(coords))

    def __repr__(self):
        return "AlgElem(%s; %s)" % (self.algebra.name, ", ".join(str(c) for c in self.coords))


class GroupElem:
    """An element of G as a constant invertible matrix."""

    __slots__ = ("algebra", "mat", "_inv")

    def __init__(self, algebra, mat):
        d = mat.det()
        if not d:
            raise ValueError("group element matrix is singular")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "_inv", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElem is immutable")

    @property
    def inv_mat(self):
        if self._inv is None:
            object.__setattr__(self, "_inv", self.mat.inverse())
        return self._inv

    def inverse(self):
        g = GroupElem(self.algebra, self.inv_mat)
        object.__setattr__(g, "_inv", self.mat)
        return g

    def __mul__(self, other):
        _same_algebra(self, other)
        return GroupElem(self.algebra, self.mat * other.mat)

    def __eq__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.algebra is other.algebra and self.mat == other.mat

    def __hash__(self):
        return hash((id(self.algebra), self.mat))

    def in_P(self):
        return self.algebra.matrix_in_p_pattern(self.mat)

    def in_G0(self):
        return self.algebra.matrix_in_g0_pattern(self.mat)

    def __repr__(self):
        return "GroupElem(%s; %s)" % (self.algebra.name, self.mat)


def _same_algebra(a, b):
    if a.algebra is not b.algebra:
        raise AlgebraMismatch(
            "operands live in different algebras: %s vs %s" % (a.algebra.name, b.algebra.name)
        )


# -- operations ---------------------------------------------------------------


def bracket(x, y):
    """Lie bracket [x, y] through the cached structure table."""
    _same_algebra(x, y)
    return AlgElem(x.algebra, x.algebra.bracket_coords(x.coords, y.coords))


def ad(x):
    """The operator ad_x as a closure on AlgElems."""
    return lambda y: bracket(x, y)


def exp_mat(m, max_power=None):
    """Exact exponential of a nilpotent matrix (entries may be Poly/RatFun)."""
    q = m.nilpotency_index(max_power)
    if q is None:
        raise NotNilpotent("matrix is not nilpotent")
    acc = Mat.identity(m.dim)
    power = None
    for p in range(1, q):
        power = m if power is None else power * m
        acc = acc + power.scale(Fraction(1, factorial(p)))
    return acc


def log_unipotent(m):
    """Finite matrix logarithm of I + N with N nilpotent."""
    n = m - Mat.identity(m.dim)
    q = n.nilpotency_index()
    if q is None:
        raise NotNilpotent("matrix is not unipotent")
    acc = Mat.zero(m.dim)
    power = None
    for p in range(1, q):
        power = n if power is None else power * n
        sign = Fraction(1, p) if p % 2 == 1 else Fraction(-1, p)
        acc = acc + power.scale(sign)
    return acc


def exp_nilpotent(x, scale=1):
    """Exponential series of scale*x for nilpotent x; exact and finite.

    ``scale`` may be a scalar, a Poly (giving the curve exp(phi(t) x)) or a
    RatFun.  Raises NotNilpotent when the matrix of x is not nilpotent.
    """
    m = x.matrix
    q = m.nilpotency_index()
    if q is None:
        raise NotNilpotent("element of %s is not nilpotent" % x.algebra.name)
    acc = Mat.identity(m.dim)
    power = None
    scale_pow = None
    for p in range(1, q):
        power = m if power is None else power * m
        scale_pow = scale if scale_pow is None else scale_pow * scale
        acc = acc + power.scale(scale_pow * Fraction(1, factorial(p)))
    return acc


def group_exp(x):
    """exp(x) as a GroupElem, for nilpotent x; inverse seeded as exp(-x)."""
    g = GroupElem(x.algebra, exp_nilpotent(x, _ONE))
    object.__setattr__(g, "_inv", exp_nilpotent(x, -_ONE))
    return g


def Ad(g, x):
    """Adjoint action g x g^{-1} expressed in basis coordinates."""
    _same_algebra(g, x)
    m = g.mat * x.matrix * g.inv_mat
    coords = x.algebra.express(m)
    if coords is None:
        raise ValueError("Ad image leaves the algebra span; matrix is not in G")
    return AlgElem(x.algebra, coords)


def truncated_Ad(g, y):
    """The P-action on g/p = n: Ad(g, y) projected to n along p."""
    _same_algebra(g, y)
    if not g.in_P():
        raise NotInParabolic("group element is not block upper triangular")
    if not y.in_n():
        raise NotInNilpotentPart("element has components outside n")
    return Ad(g, y).negative_part()


def normal_form_P(b):
    """Unique factorization b = b0 exp(Z_1) ... exp(Z_k) with b0 in G0.

    Returns (b0, (Z_1, ..., Z_k)); raises NotInParabolic when b is not in P
    or the unipotent part does not exponentiate from p_+.
    """
    alg = b.algebra
    if not b.in_P():
        raise NotInParabolic("group element is not block upper triangular")
    b0_mat = alg.block_diagonal_part(b.mat)
    if not b0_mat.det():
        raise NotInParabolic("block diagonal part is singular")
    v = b0_mat.inverse() * b.mat
    zs = []
    for grade in range(1, alg.k + 1):
        part = alg.grade_position_part(v - Mat.identity(alg.matrix_dim), grade)
        coords = alg.express(part)
        if coords is None:
            raise NotInParabolic("unipotent part leaves exp(p_+)")
        z = AlgElem(alg, coords)
        if not (z.is_zero() or z.in_grade(grade)):
            raise NotInParabolic("unipotent part leaves exp(p_+)")
        zs.append(z)
        v = exp_nilpotent(z, Fraction(-1)) * v
    if v != Mat.identity(alg.matrix_dim):
        raise NotInParabolic("residual unipotent part after extracting all grades")
    return GroupElem(alg, b0_mat), tuple(zs)


def reconstruct_from_normal_form(b0, zs):
    mat = b0.mat
    for z in zs:
        mat = mat * exp_nilpotent(z, _ONE)
    return GroupElem(b0.algebra, mat)
