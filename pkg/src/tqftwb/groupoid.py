"""Finite groupoids, abelian models, and the span calculus.

The central objects are *bundle groupoids*: groupoids with equal source
and target maps whose isotropy at an object x is a subgroup of an
ambient product of cyclic groups Z^k / (d_1, ..., d_k).  An arrow is a
pair (x, v) with v an integer vector reduced into the box [0, d_i), and
composition is componentwise addition.  Boundary groupoids (finite
products of an abelian model's realization) are bundle groupoids with
full ambient isotropy, and every apex produced by span composition in
this calculus is again a bundle groupoid, so functors between them can
be stored as one integer matrix per object and all span arithmetic
reduces to integer lattice computations (see linalg).

Spans are composed either literally -- materializing the homotopy fibre
product, whose objects (x1, g, x2) carry a connecting arrow g of the
middle groupoid, or the strong (equalizer) fibre product -- or through
the reduced path `compose_spans_skeletal`, which keeps one object per
isomorphism class of the homotopy fibre product and is an essentially
equivalent full subgroupoid of it.  Fingerprints below are invariant
under essential equivalence, so both paths agree on every recorded
quantity; tests cross-validate them.
"""

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (kernel_subgroup, lattice_echelon, lattice_index,
                     lattice_quotient_reps, subquotient)


class GroupoidError(ValueError):
    pass


# ---------------------------------------------------------------------------
# abelian models


class AbelianModel:
    """A finite base with a finite abelian isotropy group at each point.

    The realized groupoid has source = target everywhere; the isotropy
    at a point is the product of the listed cyclic factors (empty list
    = trivial group).
    """

    def __init__(self, base, isotropy):
        self.base = tuple(base)
        if not self.base:
            raise GroupoidError("base must be nonempty")
        if len(set(self.base)) != len(self.base):
            raise GroupoidError("base points must be distinct")
        self.isotropy = {}
        for p in self.base:
            factors = tuple(isotropy.get(p, ()))
            for f in factors:
                if not isinstance(f, int) or f < 2:
                    raise GroupoidError(f"invalid cyclic factor {f!r} at {p!r}")
            self.isotropy[p] = factors
        for p in isotropy:
            if p not in self.isotropy:
                raise GroupoidError(f"isotropy given for unknown point {p!r}")

    def factors(self, p):
        return self.isotropy[p]

    def order(self, p):
        out = 1
        for f in self.isotropy[p]:
            out *= f
        return out

    def to_json(self):
        return {"base": list(self.base),
                "isotropy": {p: list(fs) for p, fs in self.isotropy.items()}}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "base" not in data:
            raise GroupoidError("model JSON needs a 'base' list")
        return cls(data["base"], data.get("isotropy", {}))

    def __repr__(self):
        return f"AbelianModel({self.to_json()})"

    def __eq__(self, other):
        return (isinstance(other, AbelianModel)
                and self.base == other.base and self.isotropy == other.isotropy)


# ---------------------------------------------------------------------------
# finite groupoids


class FiniteGroupoid:
    """Explicit finite groupoid: object/arrow sets plus functional maps.

    comp(b, a) is the composite 'b after a', defined when src(b) = tgt(a).
    """

    def __init__(self, objects, arrows, src, tgt, ident, inv, comp):
        self.objects = tuple(objects)
        self._arrows = tuple(arrows)
        self.src = src
        self.tgt = tgt
        self.ident = ident
        self.inv = inv
        self.comp = comp
        self._hom = None

    @property
    def arrows(self):
        return self._arrows

    def _hom_index(self):
        if self._hom is None:
            self._hom = {}
            for a in self.arrows:
                self._hom.setdefault((self.src(a), self.tgt(a)), []).append(a)
        return self._hom

    def hom(self, x, y):
        return self._hom_index().get((x, y), [])

    def isotropy(self, x):
        return self.hom(x, x)

    def orbit_partition(self):
        """List of orbits (connected components), each a list of objects."""
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            rx, ry = find(self.src(a)), find(self.tgt(a))
            if rx != ry:
                parent[rx] = ry
        orbits = {}
        for x in self.objects:
            orbits.setdefault(find(x), []).append(x)
        return list(orbits.values())

    def isotropy_order(self, x):
        return len(self.isotropy(x))

    def validate(self, budget=200_000, seed=0):
        """Check the groupoid axioms; raises GroupoidError on violation.

        Unit and inverse laws are checked on every arrow.  Closure and
        associativity are exhaustive when the number of composable
        pairs/triples fits in `budget`, and a seeded deterministic
        sample otherwise.  Returns a small summary dict.
        """
        objset = set(self.objects)
        arrset = set(self.arrows)
        for x in self.objects:
            i = self.ident(x)
            if i not in arrset or self.src(i) != x or self.tgt(i) != x:
                raise GroupoidError(f"bad identity at {x!r}")
        by_src = {}
        for a in self.arrows:
            x, y = self.src(a), self.tgt(a)
            if x not in objset or y not in objset:
                raise GroupoidError(f"arrow {a!r} has endpoints outside objects")
            if self.comp(a, self.ident(x)) != a or self.comp(self.ident(y), a) != a:
                raise GroupoidError(f"unit law fails at {a!r}")
            b = self.inv(a)
            if b not in arrset or self.src(b) != y or self.tgt(b) != x:
                raise GroupoidError(f"bad inverse of {a!r}")
            if self.comp(b, a) != self.ident(x) or self.comp(a, b) != self.ident(y):
                raise GroupoidError(f"inverse law fails at {a!r}")
            by_src.setdefault(x, []).append(a)

        pairs = [(b, a) for a in self.arrows for b in by_src.get(self.tgt(a), [])]
        rng = random.Random(seed)
        exhaustive_pairs = len(pairs) <= budget
        sample = pairs if exhaustive_pairs else [pairs[rng.randrange(len(pairs))]
                                                 for _ in range(budget)]
        for b, a in sample:
            c = self.comp(b, a)
            if c not in arrset or self.src(c) != self.src(a) or self.tgt(c) != self.tgt(b):
                raise GroupoidError(f"composition escapes the groupoid at {(b, a)!r}")

        triples_checked = 0
        exhaustive_triples = True
        total = sum(len(by_src.get(self.tgt(b), [])) for b, _ in pairs)
        if total <= budget:
            for b, a in pairs:
                for c in by_src.get(self.tgt(b), []):
                    if self.comp(c, self.comp(b, a)) != self.comp(self.comp(c, b), a):
                        raise GroupoidError(f"associativity fails at {(c, b, a)!r}")
                    triples_checked += 1
        else:
            exhaustive_triples = False
            while triples_checked < budget:
                b, a = pairs[rng.randrange(len(pairs))]
                cands = by_src.get(self.tgt(b), [])
                if not cands:
                    continue
                c = cands[rng.randrange(len(cands))]
                if self.comp(c, self.comp(b, a)) != self.comp(self.comp(c, b), a):
                    raise GroupoidError(f"associativity fails at {(c, b, a)!r}")
                triples_checked += 1
        return {"objects": len(self.objects), "arrows": len(self.arrows),
                "pairs_checked": len(sample), "triples_checked": triples_checked,
                "exhaustive": exhaustive_pairs and exhaustive_triples}


def _vec_mod(v, moduli):
    return tuple(c % d for c, d in zip(v, moduli))


def _matvec(mat, v):
    return [sum(r * c for r, c in zip(row, v)) for row in mat]


def _unit_vectors(k):
    return [[1 if j == i else 0 for j in range(k)] for i in range(k)]


class BundleGroupoid(FiniteGroupoid):
    """Groupoid with s = t whose isotropy at x is a subgroup of Z^k/(d).

    moduli[x] is the tuple of ambient cyclic orders at x; gens[x]
    generates the isotropy subgroup (unit vectors = full ambient).
    Arrows are pairs (x, v) with v reduced componentwise into the box.
    """

    MAX_ENUM = 2_000_000

    def __init__(self, objects, moduli, gens):
        self.moduli = {x: tuple(moduli[x]) for x in objects}
        self.gens = {x: [list(g) for g in gens[x]] for x in objects}
        self._presentation = {}
        self._elements = {}
        self._arrow_cache = None
        super().__init__(tuple(objects), (), None, None, None, None, None)
        self.src = lambda a: a[0]
        self.tgt = lambda a: a[0]
        self.ident = lambda x: (x, (0,) * len(self.moduli[x]))
        self.inv = lambda a: (a[0], _vec_mod([-c for c in a[1]], self.moduli[a[0]]))
        self.comp = self._comp

    def _comp(self, b, a):
        if b[0] != a[0]:
            raise GroupoidError("composing arrows at different objects")
        return (a[0], _vec_mod([p + q for p, q in zip(b[1], a[1])], self.moduli[a[0]]))

    def presentation(self, x):
        """(invariant factors, lifting vectors) of the isotropy at x."""
        if x not in self._presentation:
            self._presentation[x] = subquotient(self.gens[x], list(self.moduli[x]))
        return self._presentation[x]

    def iso_factors(self, x):
        return tuple(self.presentation(x)[0])

    def iso_order(self, x):
        out = 1
        for f in self.presentation(x)[0]:
            out *= f
        return out

    def iso_elements(self, x):
        """All isotropy vectors at x, canonically reduced, fixed order."""
        if x not in self._elements:
            factors, lifts = self.presentation(x)
            if self.iso_order(x) > self.MAX_ENUM:
                raise GroupoidError(f"isotropy at {x!r} too large to enumerate")
            k = len(self.moduli[x])
            elts = []
            for coeffs in itertools.product(*[range(f) for f in factors]):
                v = [0] * k
                for c, lift in zip(coeffs, lifts):
                    for i in range(k):
                        v[i] += c * lift[i]
                elts.append(_vec_mod(v, self.moduli[x]))
            self._elements[x] = elts
        return self._elements[x]

    @property
    def arrows(self):
        if self._arrow_cache is None:
            total = sum(self.iso_order(x) for x in self.objects)
            if total > self.MAX_ENUM:
                raise GroupoidError(
                    f"{total} arrows exceed the enumeration cap; "
                    "use the reduced span operations instead")
            self._arrow_cache = tuple((x, v) for x in self.objects
                                      for v in self.iso_elements(x))
        return self._arrow_cache

    def hom(self, x, y):
        if x != y:
            return []
        return [(x, v) for v in self.iso_elements(x)]

    def orbit_partition(self):
        return [[x] for x in self.objects]

    def isotropy_order(self, x):
        return self.iso_order(x)

    def full_ambient(self, x):
        return self.gens[x] == _unit_vectors(len(self.moduli[x]))


def abelian_groupoid(model):
    """Realize an AbelianModel: one object (p,) per point, s = t,
    isotropy the full product of the point's cyclic factors."""
    objects = [(p,) for p in model.base]
    moduli = {(p,): model.factors(p) for p in model.base}
    gens = {(p,): _unit_vectors(len(model.factors(p))) for p in model.base}
    return BundleGroupoid(objects, moduli, gens)


def unit_groupoid():
    """The monoidal unit: one object, one arrow."""
    return BundleGroupoid([()], {(): ()}, {(): []})


def abelian_power(model, n):
    """The n-fold product of the model's realization (n = 0 gives the unit)."""
    return product([abelian_groupoid(model)] * n)


# ---------------------------------------------------------------------------
# functors and spans


class GroupoidFunctor:
    def __init__(self, source, target, on_object, on_arrow):
        self.source = source
        self.target = target
        self._obj = on_object
        self._arr = on_arrow

    def obj(self, x):
        return self._obj(x)

    def arr(self, a):
        return self._arr(a)

    def validate(self, budget=50_000, seed=0):
        G, H = self.source, self.target
        objset = set(H.objects)
        arrset = set(H.arrows)
        for x in G.objects:
            if self.obj(x) not in objset:
                raise GroupoidError(f"object image of {x!r} not in target")
            if self.arr(G.ident(x)) != H.ident(self.obj(x)):
                raise GroupoidError(f"identity at {x!r} not preserved")
        rng = random.Random(seed)
        arrows = G.arrows
        sample = arrows if len(arrows) <= budget else \
            [arrows[rng.randrange(len(arrows))] for _ in range(budget)]
        for a in sample:
            fa = self.arr(a)
            if fa not in arrset:
                raise GroupoidError(f"arrow image of {a!r} not in target")
            if H.src(fa) != self.obj(G.src(a)) or H.tgt(fa) != self.obj(G.tgt(a)):
                raise GroupoidError(f"endpoints of {a!r} not preserved")
        by_src = {}
        for a in arrows:
            by_src.setdefault(G.src(a), []).append(a)
        pairs = [(b, a) for a in arrows for b in by_src.get(G.tgt(a), [])]
        psample = pairs if len(pairs) <= budget else \
            [pairs[rng.randrange(len(pairs))] for _ in range(budget)]
        for b, a in psample:
            if self.arr(G.comp(b, a)) != H.comp(self.arr(b), self.arr(a)):
                raise GroupoidError(f"composition not preserved at {(b, a)!r}")
        return {"arrows_checked": len(sample), "pairs_checked": len(psample)}


class BundleMap(GroupoidFunctor):
    """Functor between bundle groupoids: an object map plus one integer
    matrix per source object acting on ambient isotropy vectors."""

    def __init__(self, source, target, obj_map, mats):
        self.obj_map = dict(obj_map)
        self.mats = {x: [list(r) for r in mats[x]] for x in source.objects}
        for x in source.objects:
            y = self.obj_map[x]
            sm, tm = source.moduli[x], target.moduli[y]
            mat = self.mats[x]
            if len(mat) != len(tm) or any(len(r) != len(sm) for r in mat):
                raise GroupoidError(f"matrix shape mismatch at {x!r}")
            for i, row in enumerate(mat):
                for j, entry in enumerate(row):
                    if sm[j] and tm[i] and (entry * sm[j]) % tm[i]:
                        raise GroupoidError(
                            f"matrix at {x!r} is not a homomorphism mod the moduli")
        super().__init__(source, target,
                         lambda x: self.obj_map[x],
                         self._apply)

    def _apply(self, a):
        x, v = a
        y = self.obj_map[x]
        return (y, _vec_mod(_matvec(self.mats[x], v), self.target.moduli[y]))


def identity_functor(G):
    if isinstance(G, BundleGroupoid):
        return BundleMap(G, G, {x: x for x in G.objects},
                         {x: _unit_vectors(len(G.moduli[x])) for x in G.objects})
    return GroupoidFunctor(G, G, lambda x: x, lambda a: a)


@dataclass
class Span:
    """apex --left--> left boundary, apex --right--> right boundary."""

    apex: FiniteGroupoid
    left: GroupoidFunctor
    right: GroupoidFunctor

    def __post_init__(self):
        if self.left.source is not self.apex or self.right.source is not self.apex:
            raise GroupoidError("span legs must start at the apex")

    @property
    def left_boundary(self):
        return self.left.target

    @property
    def right_boundary(self):
        return self.right.target


def identity_span(G):
    return Span(G, identity_functor(G), identity_functor(G))


def unit_span():
    return identity_span(unit_groupoid())


# ---------------------------------------------------------------------------
# products


def _product_bundles(items):
    if not items:
        return unit_groupoid()
    objects = [sum(combo, ()) for combo in
               itertools.product(*[g.objects for g in items])]
    moduli, gens = {}, {}
    for combo in itertools.product(*[g.objects for g in items]):
        flat = sum(combo, ())
        moduli[flat] = sum((g.moduli[x] for g, x in zip(items, combo)), ())
        block = []
        offset = 0
        width = len(moduli[flat])
        for g, x in zip(items, combo):
            for gen in g.gens[x]:
                row = [0] * width
                row[offset:offset + len(gen)] = gen
                block.append(row)
            offset += len(g.moduli[x])
        gens[flat] = block
    return BundleGroupoid(objects, moduli, gens)


def product(items):
    """Product of bundle groupoids or of spans (flat tuple objects).

    The empty product is the unit groupoid / the unit span.  Products
    of bundle groupoids concatenate object tuples, ambient moduli, and
    isotropy generators blockwise, so a product of model realizations
    is the realization over the product base.
    """
    items = list(items)
    if items and all(isinstance(s, Span) for s in items):
        return _product_spans(items)
    if not all(isinstance(g, BundleGroupoid) for g in items):
        raise GroupoidError("product supports bundle groupoids and spans")
    return _product_bundles(items)


def _product_leg(apexes, legs, apex):
    boundaries = [leg.target for leg in legs]
    boundary = _product_bundles(boundaries)
    obj_map, mats = {}, {}
    for combo in itertools.product(*[g.objects for g in apexes]):
        flat = sum(combo, ())
        images = [leg.obj_map[x] for leg, x in zip(legs, combo)]
        obj_map[flat] = sum(images, ())
        tgt_width = sum(len(b.moduli[y]) for b, y in zip(boundaries, images))
        src_width = len(apex.moduli[flat])
        roff = coff = 0
        block = [[0] * src_width for _ in range(tgt_width)]
        for leg, x, y, b, g in zip(legs, combo, images, boundaries, apexes):
            mat = leg.mats[x]
            for i, row in enumerate(mat):
                for j, entry in enumerate(row):
                    block[roff + i][coff + j] = entry
            roff += len(b.moduli[y])
            coff += len(g.moduli[x])
        mats[flat] = block
    return BundleMap(apex, boundary, obj_map, mats)


def _product_spans(spans):
    if not spans:
        return unit_span()
    for s in spans:
        if not isinstance(s.apex, BundleGroupoid):
            raise GroupoidError("span products need bundle apexes")
    apexes = [s.apex for s in spans]
    apex = _product_bundles(apexes)
    left = _product_leg(apexes, [s.left for s in spans], apex)
    right = _product_leg(apexes, [s.right for s in spans], apex)
    return Span(apex, left, right)


# ---------------------------------------------------------------------------
# span composition


def _check_composable(s1, s2):
    g1, g2 = s1.right_boundary, s2.left_boundary
    if g1.objects != g2.objects or \
            any(g1.moduli[x] != g2.moduli[x] for x in g1.objects):
        raise GroupoidError("spans are not composable: middle boundaries differ")
    return g1


def compose_spans(s1, s2, mode="homotopy", max_arrows=500_000):
    """Materialized fibre-product composition of s1 then s2.

    homotopy mode: apex objects are triples (x1, g, x2) with g an arrow
    of the middle groupoid from leg1(x1) to leg2(x2); an arrow
    (l1, g, l2): (x1, g, x2) -> (x1', g', x2') exists when
    g' = leg2(l2) . g . leg1(l1)^-1.  strong mode: the plain equalizer
    fibre product on objects and on arrows.  Legs are the outer
    projections either way.
    """
    middle = _check_composable(s1, s2)
    if mode == "strong":
        return _compose_strong(s1, s2)
    if mode != "homotopy":
        raise GroupoidError(f"unknown composition mode {mode!r}")
    a1, a2 = s1.apex, s2.apex
    legr, legl = s1.right, s2.left

    objects = []
    for x1 in a1.objects:
        y1 = legr.obj(x1)
        for x2 in a2.objects:
            if legl.obj(x2) != y1:
                continue
            for w in middle.iso_elements(y1):
                objects.append((x1, (y1, w), x2))
    count = 0
    match2 = {}
    for l2 in a2.arrows:
        match2.setdefault(legl.arr(l2)[0], []).append(l2)
    arrows = []
    for l1 in a1.arrows:
        y = legr.arr(l1)[0]
        room = match2.get(y, [])
        count += len(room) * len(middle.iso_elements(y))
        if count > max_arrows:
            raise GroupoidError(
                f"homotopy fibre product exceeds {max_arrows} arrows; "
                "use compose_spans_skeletal")
        for l2 in room:
            for w in middle.iso_elements(y):
                arrows.append((l1, (y, w), l2))

    def src(a):
        l1, g, l2 = a
        return (a1.src(l1), g, a2.src(l2))

    def tgt(a):
        l1, (y, w), l2 = a
        u1 = legr.arr(l1)[1]
        u2 = legl.arr(l2)[1]
        w2 = _vec_mod([p + q - r for p, q, r in zip(w, u2, u1)], middle.moduli[y])
        return (a1.tgt(l1), (y, w2), a2.tgt(l2))

    def ident(x):
        x1, g, x2 = x
        return (a1.ident(x1), g, a2.ident(x2))

    def inv(a):
        l1, g, l2 = a
        return (a1.inv(l1), tgt(a)[1], a2.inv(l2))

    def comp(b, a):
        if src(b) != tgt(a):
            raise GroupoidError("non-composable arrows")
        return (a1.comp(b[0], a[0]), a[1], a2.comp(b[2], a[2]))

    apex = FiniteGroupoid(objects, arrows, src, tgt, ident, inv, comp)
    left = GroupoidFunctor(apex, s1.left_boundary,
                           lambda x: s1.left.obj(x[0]),
                           lambda a: s1.left.arr(a[0]))
    right = GroupoidFunctor(apex, s2.right_boundary,
                            lambda x: s2.right.obj(x[2]),
                            lambda a: s2.right.arr(a[2]))
    return Span(apex, left, right)


def _compose_strong(s1, s2):
    a1, a2 = s1.apex, s2.apex
    legr, legl = s1.right, s2.left
    objects = [(x1, x2) for x1 in a1.objects for x2 in a2.objects
               if legr.obj(x1) == legl.obj(x2)]
    match2 = {}
    for l2 in a2.arrows:
        match2.setdefault(legl.arr(l2), []).append(l2)
    arrows = [(l1, l2) for l1 in a1.arrows for l2 in match2.get(legr.arr(l1), [])]

    apex = FiniteGroupoid(
        objects, arrows,
        lambda a: (a1.src(a[0]), a2.src(a[1])),
        lambda a: (a1.tgt(a[0]), a2.tgt(a[1])),
        lambda x: (a1.ident(x[0]), a2.ident(x[1])),
        lambda a: (a1.inv(a[0]), a2.inv(a[1])),
        lambda b, a: (a1.comp(b[0], a[0]), a2.comp(b[1], a[1])))
    left = GroupoidFunctor(apex, s1.left_boundary,
                           lambda x: s1.left.obj(x[0]),
                           lambda a: s1.left.arr(a[0]))
    right = GroupoidFunctor(apex, s2.right_boundary,
                            lambda x: s2.right.obj(x[1]),
                            lambda a: s2.right.arr(a[1]))
    return Span(apex, left, right)


def compose_spans_skeletal(s1, s2):
    """Reduced composition: one apex object per isomorphism class of the
    homotopy fibre product.

    For bundle spans over an s = t middle with full ambient isotropy,
    the classes over a compatible pair (x1, x2) are the cosets of
    D = im(leg1 on isotropy) + im(leg2 on isotropy) in the middle
    isotropy; each class object carries isotropy = ker of the combined
    leg difference, computed as an integer lattice kernel.  The result
    is an essentially equivalent full subgroupoid of the homotopy
    composite, so fingerprints and cardinality agree with it.
    """
    middle = _check_composable(s1, s2)
    a1, a2 = s1.apex, s2.apex
    if not (isinstance(a1, BundleGroupoid) and isinstance(a2, BundleGroupoid)):
        raise GroupoidError("skeletal composition needs bundle apexes")
    legr, legl = s1.right, s2.left

    objects, moduli, gens = [], {}, {}
    lmap, lmats, rmap, rmats = {}, {}, {}, {}
    for x1 in a1.objects:
        y = legr.obj_map[x1]
        my = list(middle.moduli[y])
        k = len(my)
        for x2 in a2.objects:
            if legl.obj_map[x2] != y:
                continue
            span_vecs = [_matvec(legr.mats[x1], g) for g in a1.gens[x1]]
            span_vecs += [_matvec(legl.mats[x2], g) for g in a2.gens[x2]]
            span_vecs += [[my[i] if j == i else 0 for j in range(k)]
                          for i in range(k)]
            d_lattice = lattice_echelon(span_vecs, k)
            reps = sorted(lattice_quotient_reps(d_lattice, k))

            m1, m2 = a1.moduli[x1], a2.moduli[x2]
            diff = [[0] * (len(m1) + len(m2)) for _ in range(k)]
            for i in range(k):
                for j in range(len(m1)):
                    diff[i][j] = legr.mats[x1][i][j]
                for j in range(len(m2)):
                    diff[i][len(m1) + j] = -legl.mats[x2][i][j]
            block = []
            width = len(m1) + len(m2)
            for g in a1.gens[x1]:
                block.append(list(g) + [0] * len(m2))
            for g in a2.gens[x2]:
                block.append([0] * len(m1) + list(g))
            _, lifts = kernel_subgroup(diff, block, list(m1) + list(m2), my)

            for w in reps:
                obj = ((x1, tuple(w), x2),)
                objects.append(obj)
                moduli[obj] = m1 + m2
                gens[obj] = lifts
                lmap[obj] = s1.left.obj_map[x1]
                rmap[obj] = s2.right.obj_map[x2]
                lmat = [row + [0] * len(m2) for row in s1.left.mats[x1]]
                rmat = [[0] * len(m1) + row for row in s2.right.mats[x2]]
                lmats[obj] = lmat
                rmats[obj] = rmat

    apex = BundleGroupoid(objects, moduli, gens)
    left = BundleMap(apex, s1.left_boundary, lmap, lmats)
    right = BundleMap(apex, s2.right_boundary, rmap, rmats)
    return Span(apex, left, right)


# ---------------------------------------------------------------------------
# equivalences


def essential_equivalence_check(functor):
    """True iff the functor is fully faithful and essentially surjective."""
    G, H = functor.source, functor.target
    image = {functor.obj(x) for x in G.objects}
    for orbit in H.orbit_partition():
        if not any(y in image for y in orbit):
            return False
    for x in G.objects:
        for y in G.objects:
            dom = G.hom(x, y)
            cod = H.hom(functor.obj(x), functor.obj(y))
            if len(dom) != len(cod):
                return False
            images = {functor.arr(a) for a in dom}
            if len(images) != len(dom) or not images <= set(cod):
                return False
    return True


def comparison_functor(s1, s2):
    """The canonical functor from the strong to the homotopy composite:
    (x1, x2) -> (x1, identity at the shared middle object, x2)."""
    middle = _check_composable(s1, s2)
    strong = compose_spans(s1, s2, mode="strong")
    homotopy = compose_spans(s1, s2, mode="homotopy")

    def on_obj(x):
        y = s1.right.obj(x[0])
        return (x[0], middle.ident(y), x[1])

    def on_arr(a):
        src1 = s1.apex.src(a[0])
        y = s1.right.obj(src1)
        return (a[0], middle.ident(y), a[1])

    psi = GroupoidFunctor(strong.apex, homotopy.apex, on_obj, on_arr)
    psi.strong = strong
    psi.homotopy = homotopy
    return psi


def comparison_is_equivalence(s1, s2):
    """Whether strong and homotopy composition agree for this pair, i.e.
    the comparison functor is an essential equivalence.

    For bundle spans this reduces to an exact lattice condition: full
    faithfulness is automatic (the compatibility equation matches hom
    sets bijectively over an s = t middle), and essential surjectivity
    holds iff D = im(leg1) + im(leg2) is the whole middle isotropy over
    every compatible object pair.  Falls back to materializing the
    comparison functor otherwise.
    """
    middle = _check_composable(s1, s2)
    a1, a2 = s1.apex, s2.apex
    if isinstance(a1, BundleGroupoid) and isinstance(a2, BundleGroupoid):
        legr, legl = s1.right, s2.left
        for x1 in a1.objects:
            y = legr.obj_map[x1]
            my = list(middle.moduli[y])
            k = len(my)
            for x2 in a2.objects:
                if legl.obj_map[x2] != y:
                    continue
                vecs = [_matvec(legr.mats[x1], g) for g in a1.gens[x1]]
                vecs += [_matvec(legl.mats[x2], g) for g in a2.gens[x2]]
                vecs += [[my[i] if j == i else 0 for j in range(k)]
                         for i in range(k)]
                if lattice_index(lattice_echelon(vecs, k), k) != 1:
                    return False
        return True
    return essential_equivalence_check(comparison_functor(s1, s2))


def weak_equivalence_search(s1, s2, max_arrows=12):
    """Exhaustive search for an essential equivalence between the two
    apexes that strictly commutes with both legs; None if there is none.

    Exponential; refuses apexes with more than max_arrows arrows."""
    G, H = s1.apex, s2.apex
    if len(G.arrows) > max_arrows or len(H.arrows) > max_arrows:
        raise GroupoidError("apexes too large for exhaustive functor search")

    def leg_obj(span, x):
        return (span.left.obj(x), span.right.obj(x))

    def leg_arr(span, a):
        return (span.left.arr(a), span.right.arr(a))

    obj_cands = {x: [y for y in H.objects if leg_obj(s2, y) == leg_obj(s1, x)]
                 for x in G.objects}
    if any(not c for c in obj_cands.values()):
        return None

    garrows = list(G.arrows)

    def extend(obj_map, arr_map, i):
        if i == len(garrows):
            functor = GroupoidFunctor(G, H,
                                      lambda x: obj_map[x],
                                      lambda a: arr_map[a])
            for a in garrows:
                for b in garrows:
                    if G.src(b) == G.tgt(a):
                        if arr_map[G.comp(b, a)] != H.comp(arr_map[b], arr_map[a]):
                            return None
            if essential_equivalence_check(functor):
                return functor
            return None
        a = garrows[i]
        x, y = G.src(a), G.tgt(a)
        for fa in H.hom(obj_map[x], obj_map[y]):
            if leg_arr(s2, fa) != leg_arr(s1, a):
                continue
            if a == G.ident(x) and fa != H.ident(obj_map[x]):
                continue
            arr_map[a] = fa
            got = extend(obj_map, arr_map, i + 1)
            if got is not None:
                return got
            del arr_map[a]
        return None

    for combo in itertools.product(*[obj_cands[x] for x in G.objects]):
        obj_map = dict(zip(G.objects, combo))
        got = extend(obj_map, {}, 0)
        if got is not None:
            return got
    return None


# ---------------------------------------------------------------------------
# fingerprints and cardinality


@dataclass(frozen=True)
class SpanFingerprint:
    """Canonical multiset of per-orbit records, each
    (left base tuple, right base tuple, isotropy invariant factors,
    kernel-of-legs invariant factors, sorted multiset of leg value pairs).
    Invariant under apex renaming and under essential equivalences of
    spans commuting with the legs."""

    records: tuple

    def serialize(self):
        lines = []
        for rec in self.records:
            lbase, rbase, iso, ker, legs = rec
            legtxt = ",".join(f"({'|'.join(map(str, l))};{'|'.join(map(str, r))})"
                              for l, r in legs)
            lines.append(f"L={lbase} R={rbase} iso={list(iso)} "
                         f"ker={list(ker)} legs=[{legtxt}]")
        return "\n".join(lines)


def _prime_factorization(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors_from_orders(orders):
    """Invariant factors (ascending divisibility chain, no 1s) of a finite
    abelian group, from the multiset of its element orders."""
    n = len(orders)
    if n == 1:
        return ()
    partitions = {}
    for p in _prime_factorization(n):
        counts = []
        j = 0
        prev = 1
        while True:
            j += 1
            c = sum(1 for o in orders if p ** j % o == 0)
            if c == prev:
                break
            ge = c // prev
            e = 0
            while p ** e < ge:
                e += 1
            if p ** e != ge:
                raise GroupoidError("isotropy is not abelian")
            counts.append(e)
            prev = c
        # counts[j-1] = number of parts >= j of the p-type partition;
        # transposing recovers the parts themselves, largest first
        lam = []
        for i in range(1, max(counts, default=0) + 1):
            lam.append(sum(1 for e in counts if e >= i))
        partitions[p] = lam
    depth = max((len(v) for v in partitions.values()), default=0)
    chain = []
    for t in range(depth):
        d = 1
        for p, parts in partitions.items():
            if t < len(parts):
                d *= p ** parts[t]
        chain.append(d)
    total = 1
    for d in chain:
        total *= d
    if total != n:
        raise GroupoidError("isotropy is not abelian")
    return tuple(sorted(chain))


def _arrow_order(G, a):
    x = G.src(a)
    e = G.ident(x)
    b = a
    k = 1
    while b != e:
        b = G.comp(a, b)
        k += 1
    return k


def _vec_order(v, moduli):
    out = 1
    for c, d in zip(v, moduli):
        if c:
            g = d // math.gcd(c, d)
            out = out * g // math.gcd(out, g)
    return out


def _subgroup_with_leg_values(apex, x, left, right):
    """All (v, left value, right value) over the isotropy at x, built
    multiplicatively from the presentation so each element costs O(dim)."""
    factors, lifts = apex.presentation(x)
    mod = apex.moduli[x]
    lm = left.target.moduli[left.obj_map[x]]
    rm = right.target.moduli[right.obj_map[x]]
    entries = [((0,) * len(mod), (0,) * len(lm), (0,) * len(rm))]
    for f, lift in zip(factors, lifts):
        stepv = _vec_mod(lift, mod)
        stepl = _vec_mod(_matvec(left.mats[x], lift), lm)
        stepr = _vec_mod(_matvec(right.mats[x], lift), rm)
        multiples = [((0,) * len(mod), (0,) * len(lm), (0,) * len(rm))]
        for _ in range(f - 1):
            pv, pl, pr = multiples[-1]
            multiples.append((
                _vec_mod([a + b for a, b in zip(pv, stepv)], mod),
                _vec_mod([a + b for a, b in zip(pl, stepl)], lm),
                _vec_mod([a + b for a, b in zip(pr, stepr)], rm)))
        entries = [(
            _vec_mod([a + b for a, b in zip(ev, mv)], mod),
            _vec_mod([a + b for a, b in zip(el, ml)], lm),
            _vec_mod([a + b for a, b in zip(er, mr)], rm))
            for mv, ml, mr in multiples for ev, el, er in entries]
    return entries


def _is_zero_arrow(a):
    return not any(a[1])


def fingerprint(span, max_isotropy=64):
    """Weak-equivalence-invariant summary of a span; see SpanFingerprint.

    Requires abelian apex isotropy of order at most max_isotropy per
    orbit (callers with larger known-abelian apexes pass a bigger
    bound)."""
    apex = span.apex
    records = []
    if isinstance(apex, BundleGroupoid) and isinstance(span.left, BundleMap) \
            and isinstance(span.right, BundleMap):
        for x in apex.objects:
            if apex.iso_order(x) > max_isotropy:
                raise GroupoidError(
                    f"isotropy order {apex.iso_order(x)} exceeds bound {max_isotropy}")
            lbase = span.left.obj(x)
            rbase = span.right.obj(x)
            legs = []
            kernel_orders = []
            for v, lv, rv in _subgroup_with_leg_values(apex, x, span.left, span.right):
                legs.append((lv, rv))
                if not any(lv) and not any(rv):
                    kernel_orders.append(_vec_order(v, apex.moduli[x]))
            iso = apex.iso_factors(x)
            ker = _invariant_factors_from_orders(kernel_orders)
            records.append((lbase, rbase, iso, ker, tuple(sorted(legs))))
    else:
        for orbit in apex.orbit_partition():
            rep = min(orbit, key=repr)
            iso_arrows = apex.isotropy(rep)
            if len(iso_arrows) > max_isotropy:
                raise GroupoidError(
                    f"isotropy order {len(iso_arrows)} exceeds bound {max_isotropy}")
            for a in iso_arrows:
                for b in iso_arrows:
                    if apex.comp(a, b) != apex.comp(b, a):
                        raise GroupoidError("non-abelian isotropy is unsupported")
            lbase = span.left.obj(rep)
            rbase = span.right.obj(rep)
            legs = []
            kernel = []
            for a in iso_arrows:
                la = span.left.arr(a)
                ra = span.right.arr(a)
                legs.append((la[1], ra[1]))
                if _is_zero_arrow(la) and _is_zero_arrow(ra):
                    kernel.append(a)
            iso = _invariant_factors_from_orders(
                [_arrow_order(apex, a) for a in iso_arrows])
            ker = _invariant_factors_from_orders(
                [_arrow_order(apex, a) for a in kernel])
            records.append((lbase, rbase, iso, ker, tuple(sorted(legs))))
    return SpanFingerprint(tuple(sorted(records)))


def cardinality(G):
    """Groupoid cardinality: sum over orbits of 1 / |isotropy|, exact."""
    total = Fraction(0)
    if isinstance(G, BundleGroupoid):
        for x in G.objects:
            total += Fraction(1, G.iso_order(x))
        return total
    for orbit in G.orbit_partition():
        total += Fraction(1, len(G.isotropy(orbit[0])))
    return total


# ---------------------------------------------------------------------------
# relabeling (isomorphic copies for invariance tests)


def relabel_span(span, seed=0):
    """An isomorphic copy of the span: apex objects renamed and, for
    bundle apexes, ambient coordinates permuted and sign-flipped, with
    leg matrices adjusted so the legs are unchanged on arrows."""
    rng = random.Random(seed)
    apex = span.apex
    if isinstance(apex, BundleGroupoid):
        order = list(apex.objects)
        rng.shuffle(order)
        names = {x: (f"relabel{i}",) for i, x in enumerate(order)}
        perms, signs = {}, {}
        objects, moduli, gens = [], {}, {}
        for x in apex.objects:
            k = len(apex.moduli[x])
            groups = {}
            for i, d in enumerate(apex.moduli[x]):
                groups.setdefault(d, []).append(i)
            perm = [None] * k
            for d, idxs in groups.items():
                shuffled = idxs[:]
                rng.shuffle(shuffled)
                for a, b in zip(idxs, shuffled):
                    perm[a] = b
            sign = [rng.choice((1, -1)) for _ in range(k)]
            perms[x], signs[x] = perm, sign
            nx = names[x]
            objects.append(nx)
            moduli[nx] = tuple(apex.moduli[x][perm[i]] for i in range(k))
            gens[nx] = [
                [(sign[i] * g[perm[i]]) % moduli[nx][i] if moduli[nx][i]
                 else sign[i] * g[perm[i]] for i in range(k)]
                for g in apex.gens[x]]
        new_apex = BundleGroupoid(objects, moduli, gens)

        def move_leg(leg):
            obj_map, mats = {}, {}
            for x in apex.objects:
                nx = names[x]
                perm, sign = perms[x], signs[x]
                obj_map[nx] = leg.obj_map[x]
                # column i of the new matrix acts on new coordinate i,
                # which carries sign[i] * (old coordinate perm[i])
                mats[nx] = [[row[perm[i]] * sign[i] for i in range(len(perm))]
                            for row in leg.mats[x]]
            return BundleMap(new_apex, leg.target, obj_map, mats)

        return Span(new_apex, move_leg(span.left), move_leg(span.right))

    names = {x: ("obj", i) for i, x in enumerate(apex.objects)}
    tags = {a: ("arr", i) for i, a in enumerate(apex.arrows)}
    back_obj = {v: k for k, v in names.items()}
    back_arr = {v: k for k, v in tags.items()}
    new_apex = FiniteGroupoid(
        [names[x] for x in apex.objects],
        [tags[a] for a in apex.arrows],
        lambda a: names[apex.src(back_arr[a])],
        lambda a: names[apex.tgt(back_arr[a])],
        lambda x: tags[apex.ident(back_obj[x])],
        lambda a: tags[apex.inv(back_arr[a])],
        lambda b, a: tags[apex.comp(back_arr[b], back_arr[a])])
    left = GroupoidFunctor(new_apex, span.left_boundary,
                           lambda x: span.left.obj(back_obj[x]),
                           lambda a: span.left.arr(back_arr[a]))
    right = GroupoidFunctor(new_apex, span.right_boundary,
                            lambda x: span.right.obj(back_obj[x]),
                            lambda a: span.right.arr(back_arr[a]))
    return Span(new_apex, left, right)
