"""Slices, regularity, and the companion section of the adjoint quotient.

The companion slice of the traceless n x n matrices consists of the
transposed trace-free companion matrices T(a): superdiagonal ones, first
column (0, a_{n-2}, ..., a_0).  Writing det(tI - x) = t^n +
f_{n-2} t^{n-2} + ... + f_0, the section identity is
f(T(a)) = (-a_0, ..., -a_{n-2}).

The slice suites check, with exact arithmetic: containment of the
companion slice in the affine slice e + ker(ad_f) attached to the
designated nilpotent pair, transversality of slices against coadjoint
orbit tangents, regularity and abelianness of centralizers at slice
points, and the codimension of the printed complement loci.
"""

from fractions import Fraction

from ..linalg import charpoly, frac_nullspace, frac_rank, frac_solve
from .core import (LieError, centralizer_report, make_algebra,
                   minimal_centralizer_dim, sln_from_matrix)
from .reports import CheckReport, fmt, rand_vector, trial_rng


class SliceSpec:
    """An affine slice of a dual space: basepoint map plus directions."""

    def __init__(self, name, dim, point, directions, params):
        self.name = name
        self.dim = dim
        self.point = point            # params tuple -> dual coordinates
        self.directions = [tuple(Fraction(c) for c in d) for d in directions]
        self.params = list(params)
        if frac_rank(self.directions) != len(self.directions):
            raise LieError(f"slice {name!r} directions are dependent")


def companion(a):
    """The transposed companion matrix with parameters (a_0, ..., a_{n-2})."""
    n = len(a) + 1
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n - 1):
        m[k][k + 1] = Fraction(1)
    for k in range(1, n):
        m[k][0] = Fraction(a[n - 1 - k])
    return m


def char_coeffs(mat):
    """(f_0, ..., f_{n-2}) with det(tI - x) = t^n + sum f_i t^i; the
    input must be trace-free."""
    n = len(mat)
    if sum(mat[i][i] for i in range(n)) != 0:
        raise LieError("matrix has nonzero trace")
    desc = charpoly(mat)
    assert desc[1] == 0
    return tuple(desc[n - i] for i in range(n - 1))


def companion_section_check(a):
    """The section identity f(T(a)) = (-a_0, ..., -a_{n-2})."""
    return char_coeffs(companion(a)) == tuple(-Fraction(ai) for ai in a)


def companion_point(n, a):
    """Companion slice point as dual pairing coordinates of sl(n)."""
    return sln_from_matrix(n, companion(a))


def companion_slice(n):
    dirs = []
    for i in range(n - 1):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[n - 1 - i][0] = Fraction(1)
        dirs.append(sln_from_matrix(n, m))
    return SliceSpec("companion", n ** 2 - 1,
                     lambda a: companion_point(n, a), dirs,
                     [f"a{i}" for i in range(n - 1)])


def sl2sd_slice():
    return SliceSpec("sigma", 5, lambda p: (0, 0, p[0], 1, 0),
                     [(0, 0, 1, 0, 0)], ["z"])


def sl3c_slices():
    s1 = SliceSpec("sigma1", 4, lambda p: (0, 1, p[0], p[1]),
                   [(0, 0, 1, 0), (0, 0, 0, 1)], ["v", "w"])
    s2 = SliceSpec("sigma2", 4, lambda p: (0, p[0], 1, p[1]),
                   [(0, 1, 0, 0), (0, 0, 0, 1)], ["u", "w"])
    return s1, s2


def exact_codimension(dim, coordinate_indices):
    """Codimension of the locus cut by vanishing of the listed dual
    coordinates, as an exact rank."""
    rows = []
    for i in coordinate_indices:
        row = [Fraction(0)] * dim
        row[i] = Fraction(1)
        rows.append(row)
    return frac_rank(rows)


def orbit_tangent_rows(alg, xi):
    """Rows spanning {ad*_x xi : x in the algebra}."""
    m = alg.centralizer_map(xi)
    return [[m[i][j] for i in range(alg.dim)] for j in range(alg.dim)]


def slice_transversal_at(alg, spec, xi):
    rows = orbit_tangent_rows(alg, xi) + list(spec.directions)
    return frac_rank(rows) == alg.dim


def _span_rank(rows):
    return frac_rank([list(r) for r in rows]) if rows else 0


def slodowy_checks(n, samples=10, seed=0):
    """The affine slice e + ker(ad_f) at the designated nilpotent pair
    of sl(n): companion containment, transversality, leaf dimension."""
    if n < 3:
        raise LieError("the designated nilpotent pair needs n >= 3")
    alg = make_algebra("sl(n)", n)
    e = alg.designated["e"]
    f = alg.designated["f"]
    d = alg.dim
    report = CheckReport(f"sl({n})", {"n": n, "samples": samples, "seed": seed})

    kerf = frac_nullspace(alg.ad(f))
    expected = (n - 1) ** 2
    report.add("kernel-dimension", len(kerf) == expected,
               witnesses=[{"dim": len(kerf), "expected": expected}])

    cols = [[v[i] for v in kerf] for i in range(d)]
    bad = []
    for t in range(samples):
        rng = trial_rng(seed, t)
        a = rand_vector(rng, n - 1)
        vec = [p - q for p, q in zip(companion_point(n, a), e)]
        if frac_solve(cols, vec) is None:
            bad.append({"a": fmt(a)})
    report.add("companion-in-slice", not bad, samples, bad)

    bad = []
    for t in range(samples):
        rng = trial_rng(seed, 10_000 + t)
        a = rand_vector(rng, n - 1)
        x = companion_point(n, a)
        adx = alg.ad(x)
        rows = [[adx[i][j] for i in range(d)] for j in range(d)] + kerf
        if frac_rank(rows) != d:
            bad.append({"a": fmt(a), "rank": frac_rank(rows)})
    report.add("slice-transversality", not bad, samples, bad)

    bad = []
    found = 0
    t = 0
    while found < samples and t < 20 * samples:
        rng = trial_rng(seed, 20_000 + t)
        t += 1
        coeffs = rand_vector(rng, len(kerf), num_bound=4, dens=(1, 2))
        x = tuple(ei + sum(c * v[i] for c, v in zip(coeffs, kerf))
                  for i, ei in enumerate(e))
        adx = alg.ad(x)
        if len(frac_nullspace(adx)) != n - 1:
            continue          # not a regular sample; draw again
        found += 1
        im_rows = [[adx[i][j] for i in range(d)] for j in range(d)]
        rk_im = _span_rank(im_rows)
        rk_sum = _span_rank(im_rows + kerf)
        meet = rk_im + len(kerf) - rk_sum
        if meet != len(kerf) - (n - 1):
            bad.append({"coeffs": fmt(coeffs), "intersection": meet})
    report.add("leaf-dimension", found == samples and not bad, found, bad)
    return report


def _centralizer_entry(alg, xi):
    rep = centralizer_report(alg, xi)
    return rep["dimension"], rep["is_regular"], rep["is_abelian"]


def slice_report(family, trials=20, seed=0, n=None):
    """Transversality, regular abelian centralizers, and complement
    codimension for the family's printed slices."""
    alg = make_algebra(family, n)
    report = CheckReport(alg.family,
                         {"trials": trials, "seed": seed,
                          **({"n": n} if n is not None else {})})

    if family == "sl(n)":
        spec = companion_slice(n)
        bad_sec, bad_tr, bad_cent = [], [], []
        for t in range(trials):
            rng = trial_rng(seed, t)
            a = rand_vector(rng, n - 1)
            if not companion_section_check(a):
                bad_sec.append({"a": fmt(a)})
            xi = spec.point(a)
            if not slice_transversal_at(alg, spec, xi):
                bad_tr.append({"a": fmt(a)})
            dim, reg, ab = _centralizer_entry(alg, xi)
            if not (reg and ab):
                bad_cent.append({"a": fmt(a), "dim": dim})
        report.add("section-identity", not bad_sec, trials, bad_sec)
        report.add("slice-transversality", not bad_tr, trials, bad_tr)
        report.add("regular-abelian-centralizers", not bad_cent, trials,
                   bad_cent)
        return report

    if family == "sl2_semidirect":
        report.add("complement-codimension",
                   exact_codimension(5, [3, 4]) == 2,
                   witnesses=[{"locus": "eta = 0",
                               "codim": exact_codimension(5, [3, 4])}])
        spec = sl2sd_slice()
        bad_tr, bad_cent = [], []
        for t in range(trials):
            rng = trial_rng(seed, t)
            z = rand_vector(rng, 1)
            xi = spec.point(z)
            if not slice_transversal_at(alg, spec, xi):
                bad_tr.append({"z": fmt(z)})
            dim, reg, ab = _centralizer_entry(alg, xi)
            if not (reg and ab and dim == 1):
                bad_cent.append({"z": fmt(z), "dim": dim})
        report.add("slice-transversality", not bad_tr, trials, bad_tr)
        report.add("regular-abelian-centralizers", not bad_cent, trials,
                   bad_cent)
        return report

    if family == "sl3_centralizer":
        for locus, idx in (("u = w = 0", [1, 3]), ("v = w = 0", [2, 3])):
            cod = exact_codimension(4, idx)
            report.add(f"complement-codimension[{locus}]", cod == 2,
                       witnesses=[{"locus": locus, "codim": cod}])
        for spec in sl3c_slices():
            bad_tr, bad_cent = [], []
            for t in range(trials):
                rng = trial_rng(seed, t)
                p = rand_vector(rng, 2)
                xi = spec.point(p)
                if not slice_transversal_at(alg, spec, xi):
                    bad_tr.append({"params": fmt(p)})
                dim, reg, ab = _centralizer_entry(alg, xi)
                if not (reg and ab and dim == 2):
                    bad_cent.append({"params": fmt(p), "dim": dim})
            report.add(f"slice-transversality[{spec.name}]", not bad_tr,
                       trials, bad_tr)
            report.add(f"regular-abelian-centralizers[{spec.name}]",
                       not bad_cent, trials, bad_cent)
        return report

    raise LieError(f"no slice data for family {family!r}")
