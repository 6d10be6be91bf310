"""Coadjoint actions and transverse slices, exactly over Q.

Three families: sl(n) with the trace pairing, the semidirect product
of sl(2) with its plane, and a 4-dimensional centralizer inside sl(3).
Everything below is exact rational arithmetic -- structure constants,
centralizers, slice transversality, and the closed-form actions.
"""

from fractions import Fraction as F

from tqftwb.lie import (centralizer_report, char_coeffs, coad_formula_check,
                        companion, companion_point, make_algebra, run_suite,
                        sl2sd_coad_closed_form, slodowy_checks,
                        stabilizer_family_check)
from tqftwb.lie.reports import fmt
from tqftwb.linalg import frac_matvec

print("sl(2): the designated triple")
alg = make_algebra("sl(n)", 2)
e, h, f = (alg.designated[k] for k in "ehf")
print("  [h, e] =", fmt(alg.bracket(h, e)), " (= 2e)")
print("  [e, f] =", fmt(alg.bracket(e, f)), " (= h)")

print()
print("companion matrices invert the characteristic coefficients")
for a in [(F(5),), (F(2), F(3)), (F(-1), F(0), F(7))]:
    print(f"  a = {fmt(a)}: char coeffs of companion = "
          f"{fmt(char_coeffs(companion(a)))}")

print()
print("companion points are regular with abelian centralizers")
for n in (2, 3, 4):
    algn = make_algebra("sl(n)", n)
    a = tuple(F(k + 1) for k in range(n - 1))
    rep = centralizer_report(algn, companion_point(n, a))
    print(f"  n={n}: centralizer dim {rep['dimension']} "
          f"(minimal {n - 1}), abelian: {rep['is_abelian']}")

print()
print("the slice at the minimal nilpotent of sl(3)")
report = slodowy_checks(3, samples=5, seed=0)
for c in report.checks:
    print(f"  {'PASS' if c['passed'] else 'FAIL'}  {c['name']}")

print()
print("semidirect family: the closed-form coadjoint action")
x = (F(0), F(1), F(0), F(0), F(0))          # e, no translation part
xi = (F(1), F(0), F(0), F(1), F(0))
print("  closed form   :", fmt(sl2sd_coad_closed_form(x, xi)))
alg5 = make_algebra("sl2_semidirect")
print("  matrix oracle :", fmt(frac_matvec(alg5.coad(x), list(xi))))
fc = coad_formula_check("sl2_semidirect", trials=25, seed=0)
print("  25 random samples per formula, zero mismatches:", fc.all_pass)

print()
print("stabilizer families fix their slice points")
for family in ("sl2_semidirect", "sl3_centralizer"):
    sf = stabilizer_family_check(family, trials=25, seed=0)
    names = ", ".join(c["name"] for c in sf.checks)
    print(f"  {family}: {'all pass' if sf.all_pass else 'FAIL'}  ({names})")

print()
print("full suites")
for family, n in [("sl(n)", 3), ("sl2_semidirect", None),
                  ("sl3_centralizer", None)]:
    suite = run_suite(family, n=n, trials=10, seed=0)
    label = f"{family}" + (f" n={n}" if n else "")
    print(f"  {label:22s}: {len(suite.checks)} checks, "
          f"all pass: {suite.all_pass}")
