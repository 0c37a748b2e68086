"""Catalog of |k|-graded matrix Lie algebra realizations.

Families:

* ``proj(m)``   sl(m+1, R), stabilizer of a line; |1|-graded.
* ``grass(n,m)`` sl(n+m, R), stabilizer of R^n, blocks (n, m); |1|-graded.
* ``conf(p,q)`` o(p+1, q+1) in the 3-block form (1, p+q, 1); |1|-graded.
* ``lagr3``     sl(3, R) with the Borel subalgebra; |2|-graded contact.
* ``su21``      su(2,1), Gaussian-rational entries, blocks (1,1,1); |2|-graded.
* ``xxdot``     sl(4, R) with blocks (1,1,2); |2|-graded.

Block conventions follow the displayed matrix forms used when these
geometries are worked out by hand: grass/proj put the X block in the lower
left (an m x n matrix), conf realizes vectors X as first-column entries
paired with -X^t J in the last row, and xxdot splits n into blocks
x1 (scalar), X1, X2 (2-vectors).  Per-grade coordinate orderings are
documented on each builder; the lab's classifiers rely on them.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .algebra import GradedAlgebra, GroupElem
from .errors import BadParams, UnknownCatalogName
from .matrices import Mat
from .scalars import FIELD_GAUSSIAN, FIELD_RATIONAL, GaussianRational

_F0 = Fraction(0)
_F1 = Fraction(1)


def _unit(d, i, j, val=_F1):
    rows = [[_F0] * d for _ in range(d)]
    rows[i][j] = val
    return Mat(rows)


def _gunit(d, i, j, val):
    rows = [[GaussianRational(0)] * d for _ in range(d)]
    rows[i][j] = val
    return Mat(rows)


def _sum_mats(mats):
    acc = mats[0]
    for m in mats[1:]:
        acc = acc + m
    return acc


# -- builders -----------------------------------------------------------------


def _build_grass(n, m, name=None):
    if n < 1 or m < 1:
        raise BadParams("grass(n,m) needs n,m >= 1; got (%d,%d)" % (n, m))
    d = n + m
    neg = [_unit(d, n + i, j) for i in range(m) for j in range(n)]
    g0 = [_unit(d, a, a) - _unit(d, a + 1, a + 1) for a in range(d - 1)]
    g0 += [_unit(d, a, b) for a in range(n) for b in range(n) if a != b]
    g0 += [_unit(d, n + a, n + b) for a in range(m) for b in range(m) if a != b]
    pos = [_unit(d, j, n + i) for j in range(n) for i in range(m)]
    return GradedAlgebra(
        name or "grass(%d,%d)" % (n, m),
        "grass" if name is None else "proj",
        {"n": n, "m": m},
        FIELD_RATIONAL,
        1,
        (n, m),
        {-1: neg, 0: g0, 1: pos},
        meta={"x_shape": (m, n), "z_shape": (n, m)},
    )


def _build_proj(m):
    if m < 1:
        raise BadParams("proj(m) needs m >= 1; got %d" % m)
    return _build_grass(1, m, name="proj(%d)" % m)


def _build_conf(p, q):
    if p < 0 or q < 0 or p + q < 2:
        raise BadParams("conf(p,q) needs p,q >= 0 and p+q >= 2; got (%d,%d)" % (p, q))
    nn = p + q
    d = nn + 2
    signs = tuple([_F1] * p + [-_F1] * q)
    neg = []
    for i in range(nn):
        neg.append(_unit(d, 1 + i, 0) + _unit(d, d - 1, 1 + i, -signs[i]))
    g0 = [_unit(d, 0, 0) - _unit(d, d - 1, d - 1)]
    for i in range(nn):
        for j in range(i + 1, nn):
            g0.append(_unit(d, 1 + i, 1 + j) + _unit(d, 1 + j, 1 + i, -signs[i] * signs[j]))
    pos = []
    for i in range(nn):
        pos.append(_unit(d, 0, 1 + i) + _unit(d, 1 + i, d - 1, -signs[i]))
    form_rows = [[_F0] * d for _ in range(d)]
    form_rows[0][d - 1] = _F1
    form_rows[d - 1][0] = _F1
    for i in range(nn):
        form_rows[1 + i][1 + i] = signs[i]
    return GradedAlgebra(
        "conf(%d,%d)" % (p, q),
        "conf",
        {"p": p, "q": q},
        FIELD_RATIONAL,
        1,
        (1, nn, 1),
        {-1: neg, 0: g0, 1: pos},
        meta={"signs": signs, "form": Mat(form_rows)},
    )


def _build_lagr3():
    # n-coordinates: g_-2 = (z at E31), g_-1 = (x at E21, y at E32)
    d = 3
    return GradedAlgebra(
        "lagr3",
        "lagr3",
        {},
        FIELD_RATIONAL,
        2,
        (1, 1, 1),
        {
            -2: [_unit(d, 2, 0)],
            -1: [_unit(d, 1, 0), _unit(d, 2, 1)],
            0: [_unit(d, 0, 0) - _unit(d, 1, 1), _unit(d, 1, 1) - _unit(d, 2, 2)],
            1: [_unit(d, 0, 1), _unit(d, 1, 2)],
            2: [_unit(d, 0, 2)],
        },
    )


def _build_su21():
    # real basis of su(2,1) for the Hermitian form J~ = antidiag(1,1,1);
    # all structure constants are rational over this basis
    d = 3
    i1 = GaussianRational(0, 1)
    one = GaussianRational(1)

    def gm(entries):
        rows = [[GaussianRational(0)] * d for _ in range(d)]
        for (r, c), v in entries.items():
            rows[r][c] = v
        return Mat(rows)

    v = gm({(2, 0): i1})
    u1 = gm({(1, 0): one, (2, 1): -one})
    u2 = gm({(1, 0): i1, (2, 1): i1})
    h1 = gm({(0, 0): one, (2, 2): -one})
    h2 = gm({(0, 0): i1, (1, 1): GaussianRational(0, -2), (2, 2): i1})
    z1 = gm({(0, 1): one, (1, 2): -one})
    z2 = gm({(0, 1): i1, (1, 2): i1})
    w = gm({(0, 2): i1})
    form = gm({(0, 2): one, (1, 1): one, (2, 0): one})
    return GradedAlgebra(
        "su21",
        "su21",
        {},
        FIELD_GAUSSIAN,
        2,
        (1, 1, 1),
        {-2: [v], -1: [u1, u2], 0: [h1, h2], 1: [z1, z2], 2: [w]},
        meta={"form": form},
    )


def _build_xxdot():
    # blocks (1,1,2); n-coordinates: g_-2 = X2 (2-vector at rows 2,3 of
    # column 0), g_-1 = (x1 at E10, X1 at rows 2,3 of column 1)
    d = 4
    return GradedAlgebra(
        "xxdot",
        "xxdot",
        {},
        FIELD_RATIONAL,
        2,
        (1, 1, 2),
        {
            -2: [_unit(d, 2, 0), _unit(d, 3, 0)],
            -1: [_unit(d, 1, 0), _unit(d, 2, 1), _unit(d, 3, 1)],
            0: [
                _unit(d, 0, 0) - _unit(d, 1, 1),
                _unit(d, 1, 1) - _unit(d, 2, 2),
                _unit(d, 2, 2) - _unit(d, 3, 3),
                _unit(d, 2, 3),
                _unit(d, 3, 2),
            ],
            1: [_unit(d, 0, 1), _unit(d, 1, 2), _unit(d, 1, 3)],
            2: [_unit(d, 0, 2), _unit(d, 0, 3)],
        },
    )


CATALOG = {
    "proj": ("proj(m)", "projective structures: sl(m+1,R), stabilizer of a line"),
    "grass": ("grass(n,m)", "almost Grassmannian: sl(n+m,R), stabilizer of R^n"),
    "conf": ("conf(p,q)", "conformal: o(p+1,q+1), stabilizer of a null line"),
    "lagr3": ("lagr3", "Lagrangian contact: sl(3,R) with Borel parabolic"),
    "su21": ("su21", "CR sphere: su(2,1), Gaussian rational realization"),
    "xxdot": ("xxdot", "x-x-dot: sl(4,R), flag R^1 in R^2 in R^4"),
}

_ID_RE = re.compile(r"^\s*([a-z0-9]+)\s*(?:\(\s*([0-9]+(?:\s*,\s*[0-9]+)*)\s*\))?\s*$")


def parse_catalog_id(text):
    """Parse 'conf(1,2)' into ('conf', (1, 2)); raises UnknownCatalogName."""
    m = _ID_RE.match(text)
    if not m:
        raise UnknownCatalogName("cannot parse catalog id %r" % text)
    family = m.group(1)
    if family not in CATALOG:
        raise UnknownCatalogName("unknown catalog family %r" % family)
    params = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
    return family, params


@lru_cache(maxsize=None)
def _make(family, params):
    if family == "proj":
        if len(params) != 1:
            raise BadParams("proj takes one parameter, got %r" % (params,))
        return _build_proj(params[0])
    if family == "grass":
        if len(params) != 2:
            raise BadParams("grass takes two parameters, got %r" % (params,))
        return _build_grass(*params)
    if family == "conf":
        if len(params) != 2:
            raise BadParams("conf takes two parameters, got %r" % (params,))
        return _build_conf(*params)
    if family in ("lagr3", "su21", "xxdot"):
        if params:
            raise BadParams("%s takes no parameters, got %r" % (family, params))
        return {"lagr3": _build_lagr3, "su21": _build_su21, "xxdot": _build_xxdot}[family]()
    raise UnknownCatalogName("unknown catalog family %r" % family)


def make_algebra(name, *params):
    """Construct (and cache) a catalog algebra from its id.

    Accepts either make_algebra("conf(1,2)") or make_algebra("conf", 1, 2).
    """
    if params:
        family = name
        if family not in CATALOG:
            raise UnknownCatalogName("unknown catalog family %r" % family)
        return _make(family, tuple(int(p) for p in params))
    family, parsed = parse_catalog_id(name)
    return _make(family, parsed)


def validate_group_matrix(alg, mat):
    """Exact membership test of a matrix in the catalog group G."""
    if alg.family in ("proj", "grass", "lagr3", "xxdot"):
        return mat.det() == 1
    if alg.family == "conf":
        form = alg.meta["form"]
        return mat.transpose() * form * mat == form
    if alg.family == "su21":
        form = alg.meta["form"]
        star = mat.transpose().map(lambda e: e.conjugate() if hasattr(e, "conjugate") else e)
        return star * form * mat == form and mat.det() == 1
    raise UnknownCatalogName(alg.family)


def group_elem(alg, rows, check=True):
    """Build a validated GroupElem from explicit matrix rows."""
    mat = rows if isinstance(rows, Mat) else Mat(rows)
    if check and not validate_group_matrix(alg, mat):
        raise ValueError("matrix is not in the group of %s" % alg.name)
    return GroupElem(alg, mat)


def g0_samples(alg):
    """A few explicit block-diagonal G0 elements with rational entries.

    These are user-style inputs: supplied as matrices and validated, not
    generated from abstract reductive group theory.
    """
    d = alg.matrix_dim
    out = [alg.group_identity()]
    if alg.family in ("proj", "grass"):
        n = alg.params["n"] if alg.family == "grass" else 1
        diag = [Fraction(2)] + [_F1] * (d - 2) + [Fraction(1, 2)]
        out.append(group_elem(alg, _diag(diag)))
        if n >= 2:
            # a unipotent shear inside the upper diagonal block
            rows = _diag([_F1] * d)
            rows[0][1] = _F1
            out.append(group_elem(alg, rows))
    elif alg.family == "conf":
        signs = alg.meta["signs"]
        nn = len(signs)
        out.append(group_elem(alg, _diag([Fraction(3)] + [_F1] * nn + [Fraction(1, 3)])))
        # a rational (pseudo-)rotation in the first two middle slots
        if nn >= 2:
            rows = _diag([_F1] * d)
            if signs[0] == signs[1]:
                c, s = Fraction(3, 5), Fraction(4, 5)
                rows[1][1], rows[1][2], rows[2][1], rows[2][2] = c, -s, s, c
            else:
                c, s = Fraction(5, 4), Fraction(3, 4)
                rows[1][1], rows[1][2], rows[2][1], rows[2][2] = c, s, s, c
            out.append(group_elem(alg, rows))
    elif alg.family in ("lagr3",):
        out.append(group_elem(alg, _diag([Fraction(2), Fraction(3), Fraction(1, 6)])))
        out.append(group_elem(alg, _diag([Fraction(1, 2), Fraction(-1), Fraction(-2)])))
    elif alg.family == "xxdot":
        out.append(group_elem(alg, _diag([Fraction(2), Fraction(3), Fraction(1, 2), Fraction(1, 3)])))
        rows = _diag([_F1, _F1, _F1, _F1])
        rows[2][3] = _F1
        out.append(group_elem(alg, rows))
    elif alg.family == "su21":
        one = GaussianRational(1)
        out.append(
            group_elem(alg, _gdiag([GaussianRational(2), one, GaussianRational(Fraction(1, 2))]))
        )
        out.append(
            group_elem(
                alg,
                _gdiag(
                    [
                        GaussianRational(1, 1),
                        GaussianRational(0, -1),
                        GaussianRational(Fraction(1, 2), Fraction(1, 2)),
                    ]
                ),
            )
        )
    return out


def _diag(vals):
    d = len(vals)
    rows = [[_F0] * d for _ in range(d)]
    for i, v in enumerate(vals):
        rows[i][i] = v
    return rows


def _gdiag(vals):
    d = len(vals)
    rows = [[GaussianRational(0)] * d for _ in range(d)]
    for i, v in enumerate(vals):
        rows[i][i] = v
    return rows
