"""Evaluate cobordism terms as spans and check the Frobenius axioms.

Each generator becomes a span over powers of a model's groupoid; terms
evaluate by fibre-product composition.  The resulting assignment
satisfies the commutative Frobenius axioms, every connected genus-zero
surface evaluates to one standard span, and closed surfaces give exact
rational invariants.
"""

from fractions import Fraction

from tqftwb.frobenius import (check_axioms, closed_invariant, evaluate,
                              genus0_span, iso_bound)
from tqftwb.groupoid import AbelianModel, fingerprint

z2 = AbelianModel(["p"], {"p": [2]})
pq = AbelianModel(["p", "q"], {"p": [2], "q": [3]})

print("axiom report on the two-point model (Z/2 at p, Z/3 at q)")
report = check_axioms(pq, seed=0)
for entry in report.entries:
    print(f"  {'PASS' if entry['passed'] else 'FAIL'}  {entry['name']}")
print("  all pass:", report.all_pass)

print()
print("genus-zero law: random pair-of-pants trees give the same span")
bound = iso_bound(pq, power=3)
want = fingerprint(genus0_span(pq, 2, 1), max_isotropy=bound)
from tqftwb.cob2 import random_genus0_term  # noqa: E402

hits = 0
for seed in range(5):
    term = random_genus0_term(2, 1, seed)
    hits += fingerprint(evaluate(pq, term), max_isotropy=bound) == want
print(f"  5 random connected genus-0 terms of type 2->1: {hits}/5 standard")

print()
print("a handle is detected")
handle = fingerprint(evaluate(pq, "mu . delta"), max_isotropy=bound)
flat = fingerprint(genus0_span(pq, 1, 1), max_isotropy=bound)
print("  mu . delta  ==  cylinder :", handle == flat)

print()
print("closed surface invariants (exact rationals)")
print("  model          genus 0   genus 1   genus 2")
for name, model in [("Z/2 point    ", z2), ("Z/2 + Z/3    ", pq),
                    ("three points ", AbelianModel(["a", "b", "c"], {}))]:
    vals = [closed_invariant(model, g) for g in range(3)]
    print(f"  {name}  " + "   ".join(f"{str(v):>7s}" for v in vals))
print("  (the sphere counts points weighted by the isotropy order, the")
print("   torus counts points, and each extra handle divides by the order)")
assert closed_invariant(z2, 2) == Fraction(1, 2)
