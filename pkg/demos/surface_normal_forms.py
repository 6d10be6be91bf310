"""Walk through the cobordism term calculus.

Terms are built from the five generators (eta, mu, delta, eps, tau) and
identities, combined with * (side by side) and . (outer after inner).
Every term normalizes to its surface type: which boundary circles lie
on which connected component, and the genus of each.
"""

from tqftwb.cob2 import (normalize, parse_and_check, random_genus0_term,
                         random_term, render, signature)

print("generators and a first composite")
for text in ["eta", "mu", "delta", "eps", "tau",
             "mu . (id(1) * eta)",
             "mu . delta",
             "(mu * id(1)) . (id(1) * delta)"]:
    term = parse_and_check(text)
    m, n = signature(term)
    print(f"  {text:32s} : {m}->{n}  ~  {normalize(term).serialize()}")

print()
print("the pair-of-pants relations collapse to the same surfaces")
for lhs, rhs in [("mu . (eta * id(1))", "id(1)"),
                 ("mu . tau", "mu"),
                 ("mu . (mu * id(1))", "mu . (id(1) * mu)"),
                 ("(mu * id(1)) . (id(1) * delta)",
                  "(id(1) * mu) . (delta * id(1))")]:
    nl = normalize(parse_and_check(lhs))
    nr = normalize(parse_and_check(rhs))
    print(f"  {lhs:36s} == {rhs:34s} : {nl == nr}")

print()
print("a closed surface is a boundaryless component with a genus")
for text in ["eps . eta", "eps . mu . delta . eta",
             "eps . mu . delta . mu . delta . eta"]:
    print(f"  {text:40s} -> {normalize(parse_and_check(text)).serialize()}")

print()
print("random terms with the same normal form are equal as surfaces")
term = random_term(seed=11)
print("  random term :", render(term))
print("  normal form :", normalize(term).serialize())

print()
print("random connected genus-zero terms all normalize alike")
for seed in range(3):
    t = random_genus0_term(2, 1, seed)
    print(f"  seed {seed}: {normalize(t).serialize()}  ({render(t)[:58]}...)")
