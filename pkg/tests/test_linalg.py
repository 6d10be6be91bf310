"""Exact linear algebra: hand values plus brute-force cross-checks."""

import random
from fractions import Fraction
from itertools import product

from tqftwb.linalg import (
    charpoly, frac_identity, frac_inv, frac_matmul, frac_matvec,
    frac_nullspace, frac_rank, frac_solve, image_lattice, integer_kernel,
    int_inverse, kernel_subgroup, lattice_contains, lattice_echelon,
    lattice_index, lattice_quotient_reps, lattice_reduce, lattice_solve,
    smith_normal_form, subquotient,
)


def _rand_mat(rng, m, n, lo=-4, hi=4):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def _closure(gens, moduli):
    """Brute-force subgroup of prod Z/moduli generated by gens."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(int(x) % m for x, m in zip(g, moduli)) for g in gens]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % m for a, b, m in zip(cur, g, moduli))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def test_rank_nullspace_solve_inverse():
    rng = random.Random(7)
    for _ in range(40):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = _rand_mat(rng, m, n)
        null = frac_nullspace(a)
        assert len(null) == n - frac_rank(a)
        for v in null:
            assert all(x == 0 for x in frac_matvec(a, v))
        x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        b = frac_matvec(a, x)
        sol = frac_solve(a, b)
        assert sol is not None
        assert frac_matvec(a, sol) == b
    a = [[1, 2], [3, 5]]
    inv = frac_inv(a)
    assert frac_matmul(a, inv) == frac_identity(2)


def test_charpoly_known_values():
    assert charpoly([[0, 1], [0, 0]]) == [1, 0, 0]
    assert charpoly([[2, 0], [0, 3]]) == [1, -5, 6]
    # companion of t^3 - 2t - 5
    c = [[0, 0, 5], [1, 0, 2], [0, 1, 0]]
    assert charpoly(c) == [1, 0, -2, -5]


def test_charpoly_matches_determinant_expansion():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 3)
        a = _rand_mat(rng, n, n, -3, 3)
        coeffs = charpoly(a)
        # evaluate det(tI - A) at a few points by elimination
        for t in (0, 1, -2, 3):
            m = [[Fraction(t * (i == j) - a[i][j]) for j in range(n)] for i in range(n)]
            det = Fraction(1)
            mm = [row[:] for row in m]
            sign = 1
            for c in range(n):
                piv = next((r for r in range(c, n) if mm[r][c] != 0), None)
                if piv is None:
                    det = Fraction(0)
                    break
                if piv != c:
                    mm[c], mm[piv] = mm[piv], mm[c]
                    sign = -sign
                det *= mm[c][c]
                for r in range(c + 1, n):
                    f = mm[r][c] / mm[c][c]
                    mm[r] = [x - f * y for x, y in zip(mm[r], mm[c])]
            det *= sign
            val = sum(coeffs[k] * Fraction(t) ** (n - k) for k in range(n + 1))
            assert val == det


def test_lattice_echelon_reduce_quotient():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 3)
        moduli = [rng.choice([2, 3, 4, 6]) for _ in range(n)]
        gens = [_rand_mat(rng, 1, n)[0] for _ in range(rng.randint(0, 3))]
        full = list(gens)
        for i, d in enumerate(moduli):
            e = [0] * n
            e[i] = d
            full.append(e)
        basis = lattice_echelon(full, n)
        assert len(basis) == n
        for g in full:
            assert lattice_contains(basis, g)
            assert lattice_solve(basis, g) is not None
        reps = lattice_quotient_reps(basis, n)
        assert len(reps) == lattice_index(basis, n)
        assert len(set(reps)) == len(reps)
        for r in reps:
            assert lattice_reduce(basis, r) == r
        # quotient size equals box size divided by subgroup size
        sub = _closure(gens, moduli)
        box = 1
        for d in moduli:
            box *= d
        assert lattice_index(basis, n) * len(sub) == box


def test_smith_normal_form_properties():
    rng = random.Random(19)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = _rand_mat(rng, m, n)
        d, u, v = smith_normal_form(a)
        ua = [[sum(u[i][k] * a[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
        uav = [[sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
        assert uav == d
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
        diag = [d[i][i] for i in range(min(m, n))]
        for x, y in zip(diag, diag[1:]):
            if y != 0:
                assert x != 0 and y % x == 0
        int_inverse(u)
        int_inverse(v)


def test_integer_kernel():
    rng = random.Random(23)
    for _ in range(40):
        m = rng.randint(1, 3)
        n = rng.randint(1, 4)
        a = _rand_mat(rng, m, n)
        ker = integer_kernel(a)
        assert len(ker) == n - frac_rank(a)
        for k in ker:
            assert all(sum(a[i][j] * k[j] for j in range(n)) == 0 for i in range(m))


def test_subquotient_against_bruteforce():
    rng = random.Random(31)
    # unit vectors present the full box
    factors, _ = subquotient([[1, 0], [0, 1]], [2, 6])
    assert factors == (2, 6)
    for _ in range(160):
        n = rng.randint(1, 3)
        moduli = [rng.choice([2, 3, 4, 6]) for _ in range(n)]
        gens = [_rand_mat(rng, 1, n)[0] for _ in range(rng.randint(0, 3))]
        factors, lifts = subquotient(gens, moduli)
        group = _closure(gens, moduli)
        size = 1
        for f in factors:
            size *= f
        assert size == len(group)
        for f, g in zip(factors, factors[1:]):
            assert g % f == 0
        for v in lifts:
            assert tuple(int(x) % m for x, m in zip(v, moduli)) in group
        # lifts generate
        assert len(_closure(lifts, moduli)) == len(group)


def _rand_hom(rng, s, r, src_moduli, tgt_moduli):
    """Random integer matrix descending to a hom of the quotient boxes."""
    from math import gcd
    mat = []
    for i in range(s):
        row = []
        for j in range(r):
            step = tgt_moduli[i] // gcd(tgt_moduli[i], src_moduli[j])
            row.append(rng.randint(-2, 2) * step)
        mat.append(row)
    return mat


def test_kernel_subgroup_against_bruteforce():
    rng = random.Random(37)
    for _ in range(60):
        r = rng.randint(1, 3)
        s = rng.randint(0, 2)
        src_moduli = [rng.choice([2, 3, 4]) for _ in range(r)]
        tgt_moduli = [rng.choice([2, 3, 4]) for _ in range(s)]
        unit = [[int(i == j) for j in range(r)] for i in range(r)]
        mat = _rand_hom(rng, s, r, src_moduli, tgt_moduli)
        factors, lifts = kernel_subgroup(mat, unit, src_moduli, tgt_moduli)
        size = 1
        for f in factors:
            size *= f
        brute = set()
        for v in product(*[range(d) for d in src_moduli]):
            img = [sum(mat[i][j] * v[j] for j in range(r)) % tgt_moduli[i]
                   for i in range(s)]
            if all(x == 0 for x in img):
                brute.add(v)
        assert size == len(brute)
        for v in lifts:
            assert tuple(int(x) % m for x, m in zip(v, src_moduli)) in brute


def test_image_lattice_size():
    rng = random.Random(41)
    for _ in range(60):
        r = rng.randint(1, 3)
        s = rng.randint(1, 3)
        src_moduli = [rng.choice([2, 3, 4]) for _ in range(r)]
        tgt_moduli = [rng.choice([2, 3, 4]) for _ in range(s)]
        unit = [[int(i == j) for j in range(r)] for i in range(r)]
        mat = _rand_hom(rng, s, r, src_moduli, tgt_moduli)
        lat = image_lattice(mat, unit, tgt_moduli, src_moduli)
        box = 1
        for d in tgt_moduli:
            box *= d
        img = set()
        for v in product(*[range(d) for d in src_moduli]):
            img.add(tuple(sum(mat[i][j] * v[j] for j in range(r)) % tgt_moduli[i]
                          for i in range(s)))
        # img is a subgroup since the source ranges over the whole box
        assert lattice_index(lat, s) * len(img) == box
