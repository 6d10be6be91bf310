"""Exact-rational Lie algebras for three families and their groups.

Families:
  sl(n)             traceless n x n matrices, basis E_ij (i != j) then
                    H_k = E_kk - E_{k+1,k+1}; pairing = trace form;
                    designated minimal triple e = E_12, h = H_1, f = E_21.
  sl2_semidirect    sl2 acting on the plane by the standard
                    representation; coordinates (x1, x2, x3, v1, v2)
                    with the sl2 part written [[x1, x2], [x3, -x1]];
                    the dual plane is identified with the plane via the
                    symplectic form (e1, e2) -> e1 v2 - e2 v1.
  sl3_centralizer   the 4-dimensional algebra of matrices
                    [[t, x, z], [0, -2t, y], [0, 0, t]]; dual
                    coordinates (s, u, v, w) are the literal dual basis.

Dual vectors are stored in pairing coordinates: a coordinate vector c
represents the functional y -> c^T P y, where P is the family's pairing
matrix.  With that convention the coadjoint matrix of x is
-P^{-T} ad_x^T P^T, so that <ad*_x xi, y> = -<xi, [x, y]> exactly.
"""

from fractions import Fraction

from ..linalg import (frac_identity, frac_inv, frac_matmul, frac_matvec,
                      frac_nullspace, frac_rank, frac_transpose)


class LieError(ValueError):
    pass


def _commutator(a, b):
    return [[sum(a[i][k] * b[k][j] - b[i][k] * a[k][j]
                 for k in range(len(a))) for j in range(len(a))]
            for i in range(len(a))]


class LieAlgebra:
    """Structure constants plus pairing; validated once at build time."""

    def __init__(self, family, labels, dual_labels, brackets, pairing,
                 designated=None):
        self.family = family
        self.labels = list(labels)
        self.dual_labels = list(dual_labels)
        self.dim = len(labels)
        # brackets[i][j] = coordinate vector of [b_i, b_j]
        self.brackets = [[tuple(brackets[i][j]) for j in range(self.dim)]
                         for i in range(self.dim)]
        self.pairing = [list(r) for r in pairing]
        self.designated = dict(designated or {})
        self._coad_basis = None
        self._check_structure()
        self._pinv_t = frac_transpose(frac_inv(self.pairing))

    def _check_structure(self):
        d = self.dim
        z = (Fraction(0),) * d
        for i in range(d):
            if self.brackets[i][i] != z and any(self.brackets[i][i]):
                raise LieError(f"[b{i}, b{i}] != 0")
            for j in range(i + 1, d):
                if any(x + y for x, y in
                       zip(self.brackets[i][j], self.brackets[j][i])):
                    raise LieError(f"bracket not antisymmetric at ({i},{j})")
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    s = self.bracket(self.basis_vector(i),
                                     self.bracket(self.basis_vector(j),
                                                  self.basis_vector(k)))
                    s = _vadd(s, self.bracket(
                        self.basis_vector(j),
                        self.bracket(self.basis_vector(k),
                                     self.basis_vector(i))))
                    s = _vadd(s, self.bracket(
                        self.basis_vector(k),
                        self.bracket(self.basis_vector(i),
                                     self.basis_vector(j))))
                    if any(s):
                        raise LieError(f"Jacobi fails at ({i},{j},{k})")
        if frac_rank(self.pairing) != d:
            raise LieError("pairing is degenerate")

    def basis_vector(self, i):
        return tuple(Fraction(int(j == i)) for j in range(self.dim))

    def bracket(self, u, v):
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = self.brackets[i][j]
                for k in range(self.dim):
                    if c[k]:
                        out[k] += ui * vj * c[k]
        return tuple(out)

    def pair(self, c, y):
        """Evaluate the dual vector with pairing coordinates c on y."""
        return sum(ci * wi for ci, wi in zip(c, frac_matvec(self.pairing, y)))

    def ad(self, x):
        cols = [self.bracket(x, self.basis_vector(j))
                for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)]
                for i in range(self.dim)]

    def coad(self, x):
        """Matrix of ad*_x on pairing coordinates."""
        neg_adT = [[-r for r in row] for row in frac_transpose(self.ad(x))]
        return frac_matmul(frac_matmul(self._pinv_t, neg_adT),
                           frac_transpose(self.pairing))

    def coad_of_basis(self):
        if self._coad_basis is None:
            self._coad_basis = [self.coad(self.basis_vector(i))
                                for i in range(self.dim)]
        return self._coad_basis

    def centralizer_map(self, xi):
        """Matrix of x -> ad*_x xi; its kernel is the centralizer of xi."""
        cols = [frac_matvec(m, xi) for m in self.coad_of_basis()]
        return [[cols[j][i] for j in range(self.dim)]
                for i in range(self.dim)]


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# sl(n)


def _sln_basis(n):
    """E_ij (i != j, row-major) then H_k = E_kk - E_{k+1,k+1}."""
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [[Fraction(0)] * n for _ in range(n)]
                m[i][j] = Fraction(1)
                mats.append(m)
                labels.append(f"E{i + 1}{j + 1}")
    for k in range(n - 1):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[k][k] = Fraction(1)
        m[k + 1][k + 1] = Fraction(-1)
        mats.append(m)
        labels.append(f"H{k + 1}")
    return mats, labels


def sln_to_matrix(n, coords):
    mats, _ = _sln_basis(n)
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in zip(coords, mats):
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * m[i][j]
    return out


def sln_from_matrix(n, m):
    if sum(m[i][i] for i in range(n)) != 0:
        raise LieError("matrix has nonzero trace")
    coords = []
    for i in range(n):
        for j in range(n):
            if i != j:
                coords.append(Fraction(m[i][j]))
    acc = Fraction(0)
    for k in range(n - 1):
        acc += Fraction(m[k][k])
        coords.append(acc)
    return tuple(coords)


def _make_sln(n):
    if n < 2:
        raise LieError("sl(n) needs n >= 2")
    mats, labels = _sln_basis(n)
    d = len(mats)
    brackets = [[sln_from_matrix(n, _commutator(mats[i], mats[j]))
                 for j in range(d)] for i in range(d)]
    pairing = [[sum(frac_matmul(mats[i], mats[j])[k][k] for k in range(n))
                for j in range(d)] for i in range(d)]
    e = sln_from_matrix(n, mats[labels.index("E12")])
    f = sln_from_matrix(n, mats[labels.index("E21")])
    h = sln_from_matrix(n, mats[labels.index("H1")])
    alg = LieAlgebra(f"sl({n})", labels, [l + "*" for l in labels],
                     brackets, pairing, {"e": e, "h": h, "f": f, "n": n})
    return alg


# ---------------------------------------------------------------------------
# sl2 acting on the plane


def _sl2_matrix(coords):
    x1, x2, x3 = coords
    return [[x1, x2], [x3, -x1]]


def _make_sl2_semidirect():
    labels = ["x1", "x2", "x3", "v1", "v2"]
    dual = ["xi1", "xi2", "xi3", "eta1", "eta2"]
    h = (1, 0, 0)
    e = (0, 1, 0)
    f = (0, 0, 1)
    sl2 = {0: h, 1: e, 2: f}

    def rho(xc, v):
        m = _sl2_matrix(xc)
        return (m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1])

    def brack(i, j):
        out = [Fraction(0)] * 5
        if i < 3 and j < 3:
            a, b = _sl2_matrix(sl2[i]), _sl2_matrix(sl2[j])
            c = _commutator(a, b)
            out[0], out[1], out[2] = c[0][0], c[0][1], c[1][0]
        elif i < 3 <= j:
            w = rho(sl2[i], (int(j == 3), int(j == 4)))
            out[3], out[4] = w
        elif j < 3 <= i:
            w = rho(sl2[j], (int(i == 3), int(i == 4)))
            out[3], out[4] = -w[0], -w[1]
        return [Fraction(v) for v in out]

    brackets = [[brack(i, j) for j in range(5)] for i in range(5)]
    pairing = [[2, 0, 0, 0, 0],
               [0, 0, 1, 0, 0],
               [0, 1, 0, 0, 0],
               [0, 0, 0, 0, 1],
               [0, 0, 0, -1, 0]]
    return LieAlgebra("sl2_semidirect", labels, dual, brackets, pairing,
                      {"h": (1, 0, 0, 0, 0), "e": (0, 1, 0, 0, 0),
                       "f": (0, 0, 1, 0, 0)})


# ---------------------------------------------------------------------------
# the 4-dimensional centralizer algebra inside sl3


def sl3c_to_matrix(coords):
    t, x, y, z = coords
    return [[t, x, z], [0, -2 * t, y], [0, 0, t]]


def sl3c_from_matrix(m):
    t = m[0][0]
    if m[1][1] != -2 * t or m[2][2] != t or m[1][0] or m[2][0] or m[2][1]:
        raise LieError("matrix is not in the centralizer algebra")
    return (Fraction(t), Fraction(m[0][1]), Fraction(m[1][2]),
            Fraction(m[0][2]))


def _make_sl3_centralizer():
    labels = ["t", "x", "y", "z"]
    dual = ["s", "u", "v", "w"]
    basis = [sl3c_to_matrix([Fraction(int(i == j)) for j in range(4)])
             for i in range(4)]
    brackets = [[sl3c_from_matrix(_commutator(basis[i], basis[j]))
                 for j in range(4)] for i in range(4)]
    pairing = frac_identity(4)
    return LieAlgebra("sl3_centralizer", labels, dual, brackets, pairing)


_CACHE = {}


def make_algebra(family, n=None):
    """Construct (and cache) one of the three verified families."""
    if family == "sl(n)":
        if n is None or n < 2:
            raise LieError("sl(n) requires n >= 2")
        key = ("sl(n)", n)
        if key not in _CACHE:
            _CACHE[key] = _make_sln(n)
        return _CACHE[key]
    if n is not None:
        raise LieError(f"{family} takes no rank parameter")
    if family == "sl2_semidirect":
        if family not in _CACHE:
            _CACHE[family] = _make_sl2_semidirect()
        return _CACHE[family]
    if family == "sl3_centralizer":
        if family not in _CACHE:
            _CACHE[family] = _make_sl3_centralizer()
        return _CACHE[family]
    raise LieError(f"unknown family {family!r}")


def action_matrices(alg, x):
    """The adjoint and coadjoint matrices of an algebra element."""
    x = tuple(Fraction(c) for c in x)
    return alg.ad(x), alg.coad(x)


# ---------------------------------------------------------------------------
# group elements for the two explicit groups


class SL2SDElement:
    """Pair of a determinant-1 2x2 rational matrix and a translation."""

    def __init__(self, mat, vec):
        self.mat = [[Fraction(v) for v in row] for row in mat]
        self.vec = tuple(Fraction(v) for v in vec)
        if self.mat[0][0] * self.mat[1][1] - self.mat[0][1] * self.mat[1][0] != 1:
            raise LieError("matrix part must have determinant 1")

    def __mul__(self, other):
        prod = frac_matmul(self.mat, other.mat)
        moved = frac_matvec(self.mat, list(other.vec))
        return SL2SDElement(prod, (self.vec[0] + moved[0],
                                   self.vec[1] + moved[1]))

    def inverse(self):
        g = self.mat
        ginv = [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]]
        w = frac_matvec(ginv, list(self.vec))
        return SL2SDElement(ginv, (-w[0], -w[1]))

    def __eq__(self, other):
        return self.mat == other.mat and self.vec == other.vec

    def adjoint(self, alg):
        """Ad of this element as a 5x5 matrix on (x1, x2, x3, v1, v2)."""
        cols = []
        for i in range(5):
            xc = [Fraction(int(j == i)) for j in range(3)]
            uc = (Fraction(int(i == 3)), Fraction(int(i == 4)))
            gxg = frac_matmul(frac_matmul(self.mat, _sl2_matrix(xc)),
                              self.inverse().mat)
            gu = frac_matvec(self.mat, list(uc))
            shift = frac_matvec(gxg, list(self.vec))
            cols.append((gxg[0][0], gxg[0][1], gxg[1][0],
                         gu[0] - shift[0], gu[1] - shift[1]))
        return [[cols[j][i] for j in range(5)] for i in range(5)]


class SL3CElement:
    """Group element (r, a, b, c) with r != 0, as an upper-triangular
    3x3 matrix [[r, a, c], [0, r^-2, b], [0, 0, r]]."""

    def __init__(self, r, a, b, c):
        self.r = Fraction(r)
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        if self.r == 0:
            raise LieError("r must be nonzero")

    @property
    def params(self):
        return (self.r, self.a, self.b, self.c)

    def matrix(self):
        r, a, b, c = self.params
        return [[r, a, c], [0, r ** -2, b], [0, 0, r]]

    def __mul__(self, other):
        m = frac_matmul(self.matrix(), other.matrix())
        return SL3CElement(m[0][0], m[0][1], m[1][2], m[0][2])

    def inverse(self):
        r, a, b, c = self.params
        return SL3CElement(1 / r, -a * r, -b * r, a * b - c / r ** 2)

    def __eq__(self, other):
        return self.params == other.params

    def adjoint(self, alg):
        """Ad of this element as a 4x4 matrix on (t, x, y, z)."""
        g, ginv = self.matrix(), self.inverse().matrix()
        cols = []
        for i in range(4):
            b = sl3c_to_matrix([Fraction(int(j == i)) for j in range(4)])
            cols.append(sl3c_from_matrix(frac_matmul(frac_matmul(g, b), ginv)))
        return [[cols[j][i] for j in range(4)] for i in range(4)]


def coadjoint_matrix(alg, element):
    """Ad*_g on pairing coordinates: <Ad*_g xi, y> = <xi, Ad_{g^-1} y>."""
    adinv = element.inverse().adjoint(alg)
    return frac_matmul(frac_matmul(alg._pinv_t, frac_transpose(adinv)),
                       frac_transpose(alg.pairing))


def centralizer_basis(alg, xi):
    """Exact basis of {x : ad*_x xi = 0}."""
    xi = tuple(Fraction(c) for c in xi)
    return frac_nullspace(alg.centralizer_map(xi))


MINIMAL_CENTRALIZER_DIM = {
    "sl2_semidirect": 1,
    # the stabilizer of a slice point has two free parameters, so the
    # generic (= minimal) centralizer dimension in this family is 2
    "sl3_centralizer": 2,
}


def minimal_centralizer_dim(alg):
    if alg.family.startswith("sl("):
        return alg.designated["n"] - 1
    return MINIMAL_CENTRALIZER_DIM[alg.family]


def centralizer_report(alg, xi):
    """(dimension, is_regular, is_abelian, basis) at a dual point."""
    basis = centralizer_basis(alg, xi)
    dim = len(basis)
    abelian = all(not any(alg.bracket(u, v))
                  for i, u in enumerate(basis) for v in basis[i + 1:])
    return {"dimension": dim,
            "is_regular": dim == minimal_centralizer_dim(alg),
            "is_abelian": abelian,
            "basis": [tuple(v) for v in basis]}
