"""Bundle groupoids, spans, fibre products, fingerprints."""

import random
from fractions import Fraction
from itertools import product as iproduct

import pytest

from tqftwb.groupoid import (
    AbelianModel, BundleGroupoid, BundleMap, FiniteGroupoid, GroupoidError,
    GroupoidFunctor, Span, abelian_groupoid, abelian_power, cardinality,
    comparison_functor, comparison_is_equivalence, compose_spans,
    compose_spans_skeletal, essential_equivalence_check, fingerprint,
    identity_functor, identity_span, product, relabel_span, unit_groupoid,
    unit_span, weak_equivalence_search, _invariant_factors_from_orders,
    _unit_vectors,
)

Z2 = AbelianModel(["pt"], {"pt": [2]})
PQ = AbelianModel(["p", "q"], {"p": [2], "q": [3]})


def test_model_validation_and_json():
    m = AbelianModel(["p", "q"], {"p": [2, 2], "q": []})
    assert m.factors("p") == (2, 2)
    assert m.order("p") == 4 and m.order("q") == 1
    assert AbelianModel.from_json(m.to_json()) == m
    with pytest.raises(GroupoidError):
        AbelianModel([], {})
    with pytest.raises(GroupoidError):
        AbelianModel(["p", "p"], {})
    with pytest.raises(GroupoidError):
        AbelianModel(["p"], {"p": [1]})
    with pytest.raises(GroupoidError):
        AbelianModel(["p"], {"q": [2]})
    with pytest.raises(GroupoidError):
        AbelianModel.from_json({"isotropy": {}})


def test_abelian_groupoid_sizes():
    g = abelian_groupoid(Z2)
    assert len(g.objects) == 1
    assert len(g.arrows) == 2
    assert g.validate()["exhaustive"]

    g = abelian_groupoid(PQ)
    assert len(g.objects) == 2
    assert len(g.arrows) == 5
    assert g.iso_order(("p",)) == 2 and g.iso_order(("q",)) == 3

    triv = abelian_groupoid(AbelianModel(["a", "b", "c"], {}))
    assert len(triv.arrows) == 3 == len(triv.objects)


def test_unit_and_powers():
    u = unit_groupoid()
    assert u.objects == ((),) and len(u.arrows) == 1
    sq = abelian_power(Z2, 2)
    assert len(sq.objects) == 1 and len(sq.arrows) == 4
    assert abelian_power(Z2, 0).objects == ((),)
    cube = abelian_power(PQ, 2)
    assert len(cube.objects) == 4
    assert cube.iso_order(("p", "q")) == 6


def test_product_of_spans_is_span_of_products():
    sp = product([identity_span(abelian_groupoid(Z2)),
                  identity_span(abelian_groupoid(PQ))])
    direct = identity_span(product([abelian_groupoid(Z2),
                                    abelian_groupoid(PQ)]))
    assert fingerprint(sp) == fingerprint(direct)
    assert product([]).objects == ((),)
    assert unit_span().apex.objects == ((),)


def test_validate_rejects_corrupted_groupoid():
    objs = [0]
    arrows = [(0, k) for k in range(3)]
    good = FiniteGroupoid(
        objs, arrows, lambda a: 0, lambda a: 0, lambda x: (0, 0),
        lambda a: (0, (-a[1]) % 3), lambda b, a: (0, (a[1] + b[1]) % 3))
    assert good.validate()["arrows"] == 3
    bad_inv = FiniteGroupoid(
        objs, arrows, lambda a: 0, lambda a: 0, lambda x: (0, 0),
        lambda a: a, lambda b, a: (0, (a[1] + b[1]) % 3))
    with pytest.raises(GroupoidError):
        bad_inv.validate()
    escapes = FiniteGroupoid(
        objs, arrows, lambda a: 0, lambda a: 0, lambda x: (0, 0),
        lambda a: (0, (-a[1]) % 3), lambda b, a: (0, a[1] + b[1]))
    with pytest.raises(GroupoidError):
        escapes.validate()


def test_functor_validation():
    g = abelian_groupoid(Z2)
    identity_functor(g).validate()
    shift = GroupoidFunctor(g, g, lambda x: x,
                            lambda a: (a[0], ((a[1][0] + 1) % 2,)))
    with pytest.raises(GroupoidError):
        shift.validate()
    with pytest.raises(GroupoidError):
        BundleMap(g, g, {("pt",): ("pt",)}, {("pt",): [[1], [0]]})
    with pytest.raises(GroupoidError):
        # doubling is not a bijection mod 2 but IS a hom; a non-hom matrix:
        BundleMap(g, abelian_groupoid(AbelianModel(["pt"], {"pt": [4]})),
                  {("pt",): ("pt",)}, {("pt",): [[1]]})


def test_essential_equivalence_examples():
    g = abelian_groupoid(PQ)
    assert essential_equivalence_check(identity_functor(g))

    # one object included into an indiscrete pair of objects
    objs = [0, 1]
    arrows = [(x, y) for x in objs for y in objs]
    pair = FiniteGroupoid(
        objs, arrows, lambda a: a[0], lambda a: a[1],
        lambda x: (x, x), lambda a: (a[1], a[0]),
        lambda b, a: (a[0], b[1]))
    pair.validate()
    point = unit_groupoid()
    incl = GroupoidFunctor(point, pair, lambda x: 0, lambda a: (0, 0))
    assert essential_equivalence_check(incl)

    # collapsing Z/2 isotropy is full but not faithful
    triv = abelian_groupoid(AbelianModel(["pt"], {}))
    crush = BundleMap(abelian_groupoid(Z2), triv,
                      {("pt",): ("pt",)}, {("pt",): []})
    assert not essential_equivalence_check(crush)


def _random_bundle_span(rng, middle, tag):
    """Span with a fresh single-object apex and random legs into the
    given middle groupoid on one side and a fresh boundary on the other.
    All moduli share one value so every integer matrix is a hom."""
    m = middle.moduli[middle.objects[0]][0]
    ka = rng.randint(1, 2)
    km = len(middle.moduli[middle.objects[0]])
    kb = rng.randint(1, 2)
    apex = BundleGroupoid([(tag,)], {(tag,): (m,) * ka},
                          {(tag,): [[rng.randrange(m) for _ in range(ka)]
                                    for _ in range(rng.randint(1, 3))]})
    out = BundleGroupoid([(tag, "b")], {(tag, "b"): (m,) * kb},
                         {(tag, "b"): _unit_vectors(kb)})
    to_mid = BundleMap(apex, middle, {(tag,): middle.objects[0]},
                       {(tag,): [[rng.randrange(m) for _ in range(ka)]
                                 for _ in range(km)]})
    to_out = BundleMap(apex, out, {(tag,): (tag, "b")},
                       {(tag,): [[rng.randrange(m) for _ in range(ka)]
                                 for _ in range(kb)]})
    return to_mid, to_out, apex


def test_skeletal_composition_matches_homotopy_composite():
    rng = random.Random(11)
    for trial in range(25):
        m = rng.choice([2, 3, 4])
        km = rng.randint(1, 2)
        middle = BundleGroupoid([("m",)], {("m",): (m,) * km},
                                {("m",): _unit_vectors(km)})
        r1, l1, a1 = _random_bundle_span(rng, middle, f"a{trial}")
        r2, l2, a2 = _random_bundle_span(rng, middle, f"c{trial}")
        s1 = Span(a1, l1, r1)
        s2 = Span(a2, r2, l2)
        lit = compose_spans(s1, s2, mode="homotopy")
        skel = compose_spans_skeletal(s1, s2)
        assert fingerprint(lit, max_isotropy=4096) == \
            fingerprint(skel, max_isotropy=4096)
        assert cardinality(lit.apex) == cardinality(skel.apex)
        # the fast equivalence criterion agrees with the literal functor
        psi = comparison_functor(s1, s2)
        psi.validate()
        assert comparison_is_equivalence(s1, s2) == \
            essential_equivalence_check(psi)


def test_identity_spans_compose_to_identity():
    for model in (Z2, PQ):
        g = abelian_groupoid(model)
        s = identity_span(g)
        ref = fingerprint(s)
        assert fingerprint(compose_spans_skeletal(s, s)) == ref
        assert fingerprint(compose_spans(s, s, mode="homotopy")) == ref
        assert fingerprint(compose_spans(s, s, mode="strong")) == ref
        assert comparison_is_equivalence(s, s)


def test_fingerprint_is_relabel_invariant():
    g = abelian_groupoid(PQ)
    s = identity_span(product([g, abelian_groupoid(Z2)]))
    ref = fingerprint(s)
    for seed in range(8):
        assert fingerprint(relabel_span(s, seed=seed)) == ref


def test_fingerprint_separates_twist_from_identity():
    sq = abelian_power(Z2, 2)
    straight = identity_span(sq)
    swap_mats = {x: [[0, 1], [1, 0]] for x in sq.objects}
    crossed = Span(sq, identity_functor(sq),
                   BundleMap(sq, sq, {x: x for x in sq.objects}, swap_mats))
    assert fingerprint(straight) != fingerprint(crossed)


def test_cardinality_values():
    assert cardinality(abelian_groupoid(Z2)) == Fraction(1, 2)
    assert cardinality(abelian_groupoid(PQ)) == Fraction(5, 6)
    three = abelian_groupoid(AbelianModel(["a", "b", "c"], {}))
    assert cardinality(three) == 3
    mixed = BundleGroupoid([("a",), ("b",)],
                           {("a",): (2,), ("b",): ()},
                           {("a",): [[1]], ("b",): []})
    assert cardinality(mixed) == Fraction(3, 2)
    rng = random.Random(3)
    for _ in range(10):
        ms = [AbelianModel(["x"], {"x": [rng.choice([2, 3, 4])]})
              for _ in range(2)]
        gs = [abelian_groupoid(m) for m in ms]
        assert cardinality(product(gs)) == \
            cardinality(gs[0]) * cardinality(gs[1])


def test_weak_equivalence_search():
    g = abelian_groupoid(Z2)
    s = identity_span(g)
    found = weak_equivalence_search(s, relabel_span(s, seed=5))
    assert found is not None
    found.validate()
    assert essential_equivalence_check(found)

    sq = abelian_power(Z2, 2)
    swap_mats = {x: [[0, 1], [1, 0]] for x in sq.objects}
    crossed = Span(sq, identity_functor(sq),
                   BundleMap(sq, sq, {x: x for x in sq.objects}, swap_mats))
    assert weak_equivalence_search(identity_span(sq), crossed) is None


def test_invariant_factors_from_order_statistics():
    def orders(moduli):
        out = []
        for v in iproduct(*[range(m) for m in moduli]):
            k = 1
            cur = v
            while any(cur):
                cur = tuple((a + b) % m for a, b, m in zip(cur, v, moduli))
                k += 1
            out.append(k)
        return out

    assert _invariant_factors_from_orders(orders([4])) == (4,)
    assert _invariant_factors_from_orders(orders([2, 2])) == (2, 2)
    assert _invariant_factors_from_orders(orders([2, 6])) == (2, 6)
    assert _invariant_factors_from_orders(orders([4, 6, 5])) == (2, 60)
    assert _invariant_factors_from_orders([1]) == ()
    with pytest.raises(GroupoidError):
        _invariant_factors_from_orders([1, 2, 2, 2, 3, 3])  # S3 statistics
