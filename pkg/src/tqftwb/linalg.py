"""Exact linear algebra over Fraction, plus integer lattice arithmetic.

Matrices are lists of rows.  The Fraction half provides elimination
based rank / nullspace / solve / inverse and the Faddeev-LeVerrier
characteristic polynomial.  The integer half works with sublattices of
Z^n given by generating vectors: echelon (triangular) bases, canonical
coset representatives, Smith normal form with unimodular transforms,
integer kernels, and presentations of finite abelian subquotients
(span(gens) + diag(d)Z^n) / diag(d)Z^n.  Everything is exact; nothing
here ever touches floating point.
"""

from fractions import Fraction


# ---------------------------------------------------------------------------
# Fraction matrices


def frac_mat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def frac_identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def frac_matmul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = Fraction(0)
            for t in range(k):
                s += a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def frac_matvec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def frac_transpose(a):
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def frac_rref(rows):
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    a = frac_mat(rows)
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def frac_rank(rows):
    return len(frac_rref(rows)[1])


def frac_nullspace(rows):
    """Basis of {x : A x = 0} as a list of Fraction vectors."""
    if not rows:
        return []
    n = len(rows[0])
    rref, pivots = frac_rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


def frac_solve(rows, b):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return [] if all(x == 0 for x in b) else None
    n = len(rows[0])
    aug = [list(r) + [bb] for r, bb in zip(frac_mat(rows), b)]
    rref, pivots = frac_rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][n]
    return x


def frac_inv(rows):
    n = len(rows)
    aug = [list(r) + list(frac_identity(n)[i]) for i, r in enumerate(frac_mat(rows))]
    rref, pivots = frac_rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rref]


def charpoly(rows):
    """Coefficients [1, c1, ..., cn] of det(tI - A) = t^n + c1 t^(n-1) + ... + cn.

    Faddeev-LeVerrier trace recursion, exact over Fraction.
    """
    a = frac_mat(rows)
    n = len(a)
    coeffs = [Fraction(1)]
    m = frac_identity(n)
    for k in range(1, n + 1):
        am = frac_matmul(a, m)
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


# ---------------------------------------------------------------------------
# Integer lattices.  A lattice is given by generator vectors in Z^n.


def _as_int_vec(v):
    return [int(x) for x in v]


def lattice_echelon(gens, n):
    """Triangular basis of span(gens) in Z^n.

    Returns a list of vectors with strictly increasing pivot positions,
    positive pivot entries, and zeros before each pivot.  (Column-style
    Hermite elimination; the basis is not further reduced above pivots,
    which canonical reduction does not require.)
    """
    work = [_as_int_vec(g) for g in gens if any(g)]
    basis = []
    for p in range(n):
        col = [v for v in work if v[p] != 0]
        rest = [v for v in work if v[p] == 0]
        if not col:
            work = rest
            continue
        while len(col) > 1:
            col.sort(key=lambda v: abs(v[p]))
            head = col[0]
            nxt = [head]
            for v in col[1:]:
                q = v[p] // head[p]
                w = [x - q * y for x, y in zip(v, head)]
                if w[p] != 0:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            if len(nxt) == 1:
                col = nxt
                break
            col = nxt
        piv = col[0]
        if piv[p] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        work = rest
    return basis


def lattice_reduce(basis, v):
    """Canonical coset representative of v modulo the echelon basis.

    For a full-rank basis the image has w[p] in [0, pivot) at every
    position, so representatives are unique per coset.
    """
    w = _as_int_vec(v)
    for b in basis:
        p = next(i for i, x in enumerate(b) if x != 0)
        q = w[p] // b[p]
        if q:
            w = [x - q * y for x, y in zip(w, b)]
    return tuple(w)


def lattice_contains(basis, v):
    return not any(lattice_reduce(basis, v))


def lattice_index(basis, n):
    """Index [Z^n : L] for a full-rank echelon basis (product of pivots)."""
    if len(basis) != n:
        raise ValueError("lattice is not full rank")
    out = 1
    for b in basis:
        p = next(i for i, x in enumerate(b) if x != 0)
        out *= b[p]
    return out


def lattice_quotient_reps(basis, n):
    """All canonical representatives of Z^n modulo a full-rank lattice."""
    if len(basis) != n:
        raise ValueError("lattice is not full rank")
    pivots = [next(i for i, x in enumerate(b) if x != 0) for b in basis]
    if pivots != list(range(n)):
        raise ValueError("unexpected pivot pattern")
    diag = [basis[i][i] for i in range(n)]
    reps = [()]
    for d in diag:
        reps = [r + (k,) for r in reps for k in range(d)]
    return [tuple(r) for r in reps]


def lattice_solve(basis, v):
    """Coordinates of v in the echelon basis, or None if v is outside."""
    w = _as_int_vec(v)
    coords = []
    by_pivot = {}
    for b in basis:
        p = next(i for i, x in enumerate(b) if x != 0)
        by_pivot[p] = b
    n = len(w)
    for p in range(n):
        if p in by_pivot:
            b = by_pivot[p]
            if w[p] % b[p]:
                return None
            q = w[p] // b[p]
            coords.append((p, q))
            w = [x - q * y for x, y in zip(w, b)]
        elif w[p] != 0:
            return None
    if any(w):
        return None
    out = []
    ci = dict(coords)
    for b in basis:
        p = next(i for i, x in enumerate(b) if x != 0)
        out.append(ci.get(p, 0))
    return out


def smith_normal_form(rows):
    """(D, U, V) with U A V = D diagonal, d1 | d2 | ..., U and V unimodular."""
    a = [_as_int_vec(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def addmul_row(i, j, q):
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def addmul_col(i, j, q):
        for r in a:
            r[i] += q * r[j]
        for r in v:
            r[i] += q * r[j]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, m)) \
                    and all(a[t][j] == 0 for j in range(t + 1, n)):
                break
        fixed = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    addmul_row(t, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def integer_kernel(rows):
    """Basis of {x in Z^m : A x = 0} for an integer matrix A (n x m)."""
    if not rows:
        return []
    n = len(rows)
    m = len(rows[0])
    d, _, v = smith_normal_form(rows)
    rank = sum(1 for i in range(min(n, m)) if d[i][i] != 0)
    basis = []
    for j in range(rank, m):
        basis.append([v[i][j] for i in range(m)])
    return basis


def int_inverse(rows):
    """Exact inverse of a unimodular integer matrix."""
    inv = frac_inv(rows)
    out = []
    for row in inv:
        r = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            r.append(int(x))
        out.append(r)
    return out


def subquotient(gens, moduli):
    """Presentation of (span(gens) + diag(moduli)Z^n) / diag(moduli)Z^n.

    Returns (factors, lifts): factors is the invariant-factor chain
    (trivial factors dropped), lifts are ambient vectors generating the
    group, one per factor.  moduli entries must be >= 1.
    """
    n = len(moduli)
    if n == 0:
        return (), []
    full = [list(g) for g in gens]
    for i, d in enumerate(moduli):
        e = [0] * n
        e[i] = int(d)
        full.append(e)
    h = lattice_echelon(full, n)
    if len(h) != n:
        raise ValueError("subquotient lattice must be full rank")
    # diag(moduli) in the coordinates of the echelon basis
    c_cols = []
    for i, d in enumerate(moduli):
        e = [0] * n
        e[i] = int(d)
        coords = lattice_solve(h, e)
        if coords is None:
            raise AssertionError("moduli vector escaped its own lattice")
        c_cols.append(coords)
    c = [[c_cols[j][i] for j in range(n)] for i in range(n)]
    d, u, _ = smith_normal_form(c)
    uinv = int_inverse(u)
    # generators of the group are (echelon basis) * U^{-1} columns
    hb = [[h[j][i] for j in range(n)] for i in range(n)]  # columns -> matrix
    gen_mat = [[sum(hb[i][k] * uinv[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
    factors = []
    lifts = []
    for j in range(n):
        f = d[j][j]
        if f in (0, 1):
            continue
        factors.append(f)
        lifts.append(tuple(gen_mat[i][j] % int(moduli[i]) if moduli[i] else gen_mat[i][j]
                           for i in range(n)))
    # invariant factors come out of SNF in a divisibility chain already
    return tuple(factors), lifts


def _check_hom(mat, src_moduli, tgt_moduli):
    # mat must descend to a homomorphism of the quotient boxes
    for j, d in enumerate(src_moduli):
        for i, e in enumerate(tgt_moduli):
            if (mat[i][j] * int(d)) % int(e):
                raise ValueError("matrix is not a homomorphism mod the moduli")


def kernel_subgroup(mat, src_gens, src_moduli, tgt_moduli):
    """Presentation of {v in <src_gens> : mat . v == 0 mod tgt_moduli}.

    The source group lives in Z^r / diag(src_moduli); src_gens generate
    it (unit vectors for a full box).  mat must define a homomorphism of
    the quotients.  Returns (factors, lifts).
    """
    r = len(src_moduli)
    s = len(tgt_moduli)
    _check_hom(mat, src_moduli, tgt_moduli)
    lat = [list(g) for g in src_gens]
    for i, dmod in enumerate(src_moduli):
        e = [0] * r
        e[i] = int(dmod)
        lat.append(e)
    b = lattice_echelon(lat, r)
    if len(b) != r:
        raise ValueError("source lattice must be full rank")
    if s == 0:
        return subquotient(b, src_moduli)
    # rows of mat act on ambient source coordinates; pass to basis coords
    bt = [[b[j][i] for j in range(r)] for i in range(r)]  # basis as columns
    mb = [[sum(mat[i][k] * bt[k][j] for k in range(r)) for j in range(r)]
          for i in range(s)]
    aug = [mb[i] + [int(tgt_moduli[j]) if j == i else 0 for j in range(s)]
           for i in range(s)]
    ker = integer_kernel(aug)
    sol_gens = []
    for k in ker:
        y = k[:r]
        vec = [sum(bt[i][j] * y[j] for j in range(r)) for i in range(r)]
        sol_gens.append(vec)
    return subquotient(sol_gens, src_moduli)


def image_lattice(mat, src_gens, tgt_moduli, src_moduli=None):
    """Echelon basis of (mat . <src_gens> + diag(tgt_moduli)Z^s) in Z^s."""
    s = len(tgt_moduli)
    if src_moduli is not None:
        _check_hom(mat, src_moduli, tgt_moduli)
    gens = []
    for g in src_gens:
        gens.append([sum(mat[i][k] * int(g[k]) for k in range(len(g))) for i in range(s)])
    for i, e in enumerate(tgt_moduli):
        v = [0] * s
        v[i] = int(e)
        gens.append(v)
    return lattice_echelon(gens, s)
