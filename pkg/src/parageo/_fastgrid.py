"""Integer-scaled kernels for the deterministic grid experiments.

Grid points have integer coordinates and every rational-field catalog
basis has integer matrix entries, so the per-pair work (exponentials,
conjugation, the direction solve, jet derivatives at 0, and the
polynomial curve-equality check) can run on plain-int matrices with a
tracked positive denominator.  Scaling by a positive integer never
changes whether an entry vanishes, so all block-pattern tests are
unaffected: these kernels are exact and agree with the generic Fraction
path entry for entry (the test suite checks them against each other).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd


def _to_int_rows(mat):
    rows = []
    for row in mat.rows:
        out = []
        for e in row:
            f = Fraction(e)
            if f.denominator != 1:
                return None
            out.append(f.numerator)
        rows.append(tuple(out))
    return tuple(rows)


def _imul(a, b):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _iadd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _isub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _iscale(a, c):
    return tuple(tuple(c * x for x in row) for row in a)

def _izero(d):
    return tuple((0,) * d for _ in range(d))


def _iident(d, one=1):
    return tuple(tuple(one if i == j else 0 for j in range(d)) for i in range(d))


def _is_zero(a):
    return all(not x for row in a for x in row)


def _commute_right(d_rows, x_rows):
    # ad(-X) step: D X - X D
    return _isub(_imul(d_rows, x_rows), _imul(x_rows, d_rows))


class GridKernel:
    """Fast exact engine for one algebra and one integer base direction."""

    def __init__(self, alg, x):
        self.alg = alg
        self.d = alg.matrix_dim
        self.forbidden = alg.forbidden_positions
        self.x_rows = _to_int_rows(x.matrix)
        self.basis_rows = [_to_int_rows(b) for b in alg.basis]
        self.pplus_idx = [i for g in range(1, alg.k + 1) for i in alg.grade_slices[g]]
        self.usable = (
            self.x_rows is not None
            and all(b is not None for b in self.basis_rows)
            and self._build_extract()
        )
        if self.usable:
            self.exp_x_coeffs = self._exp_poly_coeffs(self.x_rows, 1, 1)

    def _build_extract(self):
        # integer-scaled copy of the algebra's pivot-row coordinate extractor
        alg = self.alg
        scale = 1
        for row in alg._extractor.rows:
            for e in row:
                d = Fraction(e).denominator
                scale = scale * d // gcd(scale, d)
        terms = []
        for row in alg._extractor.rows:
            terms.append(
                [
                    (int(e * scale), pr)
                    for e, pr in zip(row, alg._pivot_rows)
                    if e
                ]
            )
        self.extract_scale = scale
        self.extract_terms = terms
        return True

    def combo_rows(self, vals):
        """Integer matrix of the p_+ element with the given grid coordinates."""
        d = self.d
        acc = [[0] * d for _ in range(d)]
        for v, idx in zip(vals, self.pplus_idx):
            if not v:
                continue
            b = self.basis_rows[idx]
            for i in range(d):
                row = b[i]
                for j in range(d):
                    if row[j]:
                        acc[i][j] += v * row[j]
        return tuple(tuple(r) for r in acc)

    # -- scaled integer primitives ------------------------------------------

    def exp_pair(self, z_rows):
        """(num(exp Z), num(exp -Z), den) with den = (d-1)!."""
        d = self.d
        den = factorial(d - 1)
        pos_acc = _iident(d, den)
        neg_acc = _iident(d, den)
        power = None
        for p in range(1, d):
            power = z_rows if power is None else _imul(power, z_rows)
            if _is_zero(power):
                break
            c = den // factorial(p)
            term = _iscale(power, c)
            pos_acc = _iadd(pos_acc, term)
            neg_acc = _iadd(neg_acc, term) if p % 2 == 0 else _isub(neg_acc, term)
        return pos_acc, neg_acc, den

    def _negproj(self, rows):
        d = self.d
        grade = self.alg.position_grade
        return tuple(
            tuple(rows[i][j] if grade[i][j] < 0 else 0 for j in range(d)) for i in range(d)
        )

    def elem_coords(self, rows, den):
        """Fraction coordinates of an integer-scaled algebra element."""
        flat = [v for row in rows for v in row]
        denom = den * self.extract_scale
        return tuple(
            Fraction(sum(c * flat[r] for c, r in terms), denom)
            for terms in self.extract_terms
        )

    def solve_direction(self, e_num, einv_num, e_den):
        """Y with proj_n(Ad Y) = X; returns (num, den)."""
        s2 = e_den * e_den
        y_num, y_den = self.x_rows, 1
        for _ in range(self.alg.k + 1):
            img = self._negproj(_imul(_imul(e_num, y_num), einv_num))
            img_den = y_den * s2
            resid = _isub(_iscale(self.x_rows, img_den), img)
            if _is_zero(resid):
                return y_num, y_den
            y_num = _iadd(_iscale(y_num, s2), resid)
            y_den = img_den
        raise ArithmeticError("direction constraint failed to converge")

    def conj(self, e_num, einv_num, e_den, y_num, y_den):
        """Ad(exp Z) applied to Y, integer-scaled."""
        return _imul(_imul(e_num, y_num), einv_num), y_den * e_den * e_den

    def pair_jet_order(self, a2_num, a2_den, r_max):
        d0 = _isub(_iscale(self.x_rows, a2_den), a2_num)
        order = 0
        d_rows = d0
        while order < r_max and self._in_p(d_rows):
            order += 1
            d_rows = _commute_right(d_rows, self.x_rows)
        return order

    def _in_p(self, rows):
        return all(not rows[i][j] for i, j in self.forbidden)

    def _exp_poly_coeffs(self, a_rows, num_scale, den_scale):
        """Coefficient matrices of exp(t A/den_scale) * common positive scale.

        coeff of t^p is A^p num_scale^p / (p! den_scale^p); scaled by
        (d-1)! * den_scale^(d-1) everything is integral.
        """
        d = self.d
        coeffs = [_iident(d, factorial(d - 1) * den_scale ** (d - 1))]
        power = _iident(d)
        for p in range(1, d):
            power = _imul(power, a_rows)
            if _is_zero(power):
                break
            c = (factorial(d - 1) // factorial(p)) * (num_scale**p) * den_scale ** (d - 1 - p)
            coeffs.append(_iscale(power, c))
        return coeffs

    def curves_equal(self, a2_num, a2_den):
        """Exact polynomial identity: exp(-t A2) exp(t A1) in the P pattern."""
        left = self._exp_poly_coeffs(a2_num, -1, a2_den)
        right = self.exp_x_coeffs
        deg = len(left) + len(right) - 2
        for r in range(deg + 1):
            acc = None
            for p in range(max(0, r - len(right) + 1), min(r, len(left) - 1) + 1):
                term = _imul(left[p], right[r - p])
                acc = term if acc is None else _iadd(acc, term)
            if acc is not None and not self._in_p(acc):
                return False
        return True


def grid_kernel(alg, x):
    """A GridKernel when the algebra/direction admit the integer path."""
    if alg.field != "rational":
        return None
    k = GridKernel(alg, x)
    return k if k.usable else None
