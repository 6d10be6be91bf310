"""Spans of finite groupoids and their fibre-product composition.

A model is a finite base with a finite abelian isotropy group at each
point.  Spans between powers of the realized groupoid compose by a
homotopy fibre product, reduced to one apex object per component; the
fingerprint is a complete invariant for the spans that arise here.
"""

from tqftwb.groupoid import (AbelianModel, abelian_groupoid, abelian_power,
                             cardinality, compose_spans,
                             compose_spans_skeletal, fingerprint,
                             identity_span, product)

z2 = AbelianModel(["p"], {"p": [2]})
pq = AbelianModel(["p", "q"], {"p": [2], "q": [3]})

print("realized groupoids")
for name, model in [("one point with Z/2", z2), ("Z/2 and Z/3 points", pq)]:
    G = abelian_groupoid(model)
    print(f"  {name}: {len(G.objects)} object(s), {len(G.arrows)} arrow(s), "
          f"cardinality {cardinality(G)}")

print()
print("groupoid cardinality is multiplicative under products")
G = abelian_groupoid(pq)
print("  |G|   =", cardinality(G))
print("  |GxG| =", cardinality(abelian_power(pq, 2)),
      "=", cardinality(G) ** 2)

print()
print("identity spans compose to identity spans")
ident = identity_span(abelian_groupoid(z2))
twice = compose_spans_skeletal(ident, ident)
print("  id ; id   fingerprint equal to id :",
      fingerprint(twice) == fingerprint(ident))

print()
print("the skeletal composite agrees with the literal fibre product")
lit = compose_spans(ident, ident, mode="homotopy")
print("  literal apex size :", len(lit.apex.objects), "objects")
print("  skeletal apex size:", len(twice.apex.objects), "objects")
print("  same fingerprint  :", fingerprint(lit) == fingerprint(twice))

print()
print("products of spans run componentwise")
pair = product([ident, identity_span(abelian_groupoid(pq))])
both = product([abelian_groupoid(z2), abelian_groupoid(pq)])
print("  product apex objects:", len(pair.apex.objects))
print("  equals identity span of the product groupoid:",
      fingerprint(pair) == fingerprint(identity_span(both)))
print("  cardinality:", cardinality(pair.apex))
