import random

import pytest

from tqftwb import cob2
from tqftwb.cob2 import (ArityError, Compose, Identity, Tensor, TermSyntaxError,
                         normalize, parse_and_check, render, signature)


def nf(text):
    return normalize(parse_and_check(text))


def test_parse_signatures():
    assert signature(parse_and_check("eta")) == (0, 1)
    assert signature(parse_and_check("mu")) == (2, 1)
    assert signature(parse_and_check("delta")) == (1, 2)
    assert signature(parse_and_check("eps")) == (1, 0)
    assert signature(parse_and_check("tau")) == (2, 2)
    assert signature(parse_and_check("id(5)")) == (5, 5)
    assert signature(parse_and_check("mu . (eta * id(1))")) == (1, 1)
    assert signature(parse_and_check("(delta * id(1)) . delta")) == (1, 3)


def test_precedence_and_associativity():
    # "*" binds tighter than "."; "." folds left
    t = parse_and_check("eps * eps . tau . mu * id(1)")
    assert t == Compose(
        Compose(Tensor(cob2.Generator('eps'), cob2.Generator('eps')),
                cob2.Generator('tau')),
        Tensor(cob2.Generator('mu'), Identity(1)))
    a = parse_and_check("mu . (delta . mu)")
    b = parse_and_check("mu . delta . mu")
    assert a != b                       # different trees
    assert normalize(a) == normalize(b)  # same surface


def test_syntax_errors_carry_position():
    with pytest.raises(TermSyntaxError) as err:
        parse_and_check("mu . ")
    assert err.value.position == 5
    with pytest.raises(TermSyntaxError) as err:
        parse_and_check("foo")
    assert err.value.position == 0
    with pytest.raises(TermSyntaxError):
        parse_and_check("id(x)")
    with pytest.raises(TermSyntaxError):
        parse_and_check("(mu")
    with pytest.raises(TermSyntaxError):
        parse_and_check("mu delta")
    with pytest.raises(TermSyntaxError):
        parse_and_check("mu @ delta")


def test_arity_errors_name_the_offending_composition():
    with pytest.raises(ArityError) as err:
        parse_and_check("mu . eta")
    assert "mu" in str(err.value) and "eta" in str(err.value)
    with pytest.raises(ArityError):
        parse_and_check("eps . (eta * eta)")
    with pytest.raises(ArityError):
        Compose(cob2.Generator('mu'), cob2.Generator('eta'))


def test_normal_form_examples():
    # handle attached to a torus: the composite mu . delta has genus 1
    assert nf("mu . delta").serialize() == "1->1: in[1] out[1] g1"
    # a closed sphere
    sphere = nf("eps . eta")
    assert sphere.components == (cob2.Component((), (), 0),)
    # the twist is not the identity: its components cross
    assert nf("tau") != nf("id(2)")
    assert nf("tau").components == (cob2.Component((1,), (2,), 0),
                                    cob2.Component((2,), (1,), 0))
    # empty cobordism
    assert nf("id(0)").components == ()
    # genus adds when handles chain up
    assert nf("mu . delta . mu . delta").serialize() == "1->1: in[1] out[1] g2"
    # closed components sort after open ones
    both = nf("(id(1) * (eps . eta)) . id(1)")
    assert both.components == (cob2.Component((1,), (1,), 0),
                               cob2.Component((), (), 0))


RELATIONS = [
    ("mu . (eta * id(1))", "id(1)"),
    ("mu . (id(1) * eta)", "id(1)"),
    ("(eps * id(1)) . delta", "id(1)"),
    ("(id(1) * eps) . delta", "id(1)"),
    ("mu . tau", "mu"),
    ("tau . delta", "delta"),
    ("mu . (mu * id(1))", "mu . (id(1) * mu)"),
    ("(delta * id(1)) . delta", "(id(1) * delta) . delta"),
    ("(id(1) * mu) . (delta * id(1))", "delta . mu"),
    ("(mu * id(1)) . (id(1) * delta)", "delta . mu"),
]


def test_frobenius_relations_hold_in_normal_form():
    for lhs, rhs in RELATIONS:
        left, right = nf(lhs), nf(rhs)
        assert left == right, f"{lhs} vs {rhs}: {left.serialize()} != {right.serialize()}"
        assert left.serialize() == right.serialize()


def test_relations_do_not_collapse_everything():
    assert nf("mu . delta") != nf("id(1)")
    assert nf("eta * eta") != nf("delta . eta")
    assert nf("eps . eta") != nf("eps . mu . delta . eta")


def random_context(rng, term):
    """Wrap term as  u . (id(a) * term * id(b)) . v  with random collars."""
    m, n = signature(term)
    a, b = rng.randint(0, 2), rng.randint(0, 2)
    mid = term
    if a:
        mid = Tensor(Identity(a), mid)
    if b:
        mid = Tensor(mid, Identity(b))
    p = rng.randint(0, 3)
    q = rng.randint(0, 3)
    u = cob2.random_term(rng.getrandbits(32), size=4, boundary=(a + n + b, p))
    v = cob2.random_term(rng.getrandbits(32), size=4, boundary=(q, a + m + b))
    return Compose(Compose(u, mid), v)


def test_normal_form_equality_is_a_congruence():
    rng = random.Random(20260814)
    checked = 0
    while checked < 500:
        lhs, rhs = RELATIONS[rng.randrange(len(RELATIONS))]
        t1, t2 = parse_and_check(lhs), parse_and_check(rhs)
        ctx_seed = rng.getrandbits(32)
        c1 = random_context(random.Random(ctx_seed), t1)
        c2 = random_context(random.Random(ctx_seed), t2)
        assert normalize(c1) == normalize(c2), (render(c1), render(c2))
        checked += 1


def test_random_pool_pairs_stay_equal_in_context():
    # bucket random terms by normal form, then check pair equality survives
    # a common random context
    rng = random.Random(7)
    buckets = {}
    for seed in range(400):
        t = cob2.random_term(seed, size=7)
        buckets.setdefault(normalize(t).serialize(), []).append(t)
    pairs = [(g[i], g[i + 1]) for g in buckets.values()
             for i in range(len(g) - 1)]
    assert len(pairs) >= 100
    for t1, t2 in pairs[:200]:
        ctx_seed = rng.getrandbits(32)
        c1 = random_context(random.Random(ctx_seed), t1)
        c2 = random_context(random.Random(ctx_seed), t2)
        assert normalize(c1) == normalize(c2)


def test_normal_form_partitions_boundary():
    for seed in range(200):
        t = cob2.random_term(seed, size=9)
        m, n = signature(t)
        s = normalize(t)
        assert (s.dom, s.cod) == (m, n)
        ins = sorted(i for c in s.components for i in c.inputs)
        outs = sorted(j for c in s.components for j in c.outputs)
        assert ins == list(range(1, m + 1))
        assert outs == list(range(1, n + 1))
        for c in s.components:
            assert c.genus >= 0


def test_render_round_trips():
    for seed in range(300):
        t = cob2.random_term(seed, size=9)
        assert parse_and_check(render(t)) == t


def test_random_term_is_deterministic():
    for seed in (0, 1, 17, 999):
        a = cob2.random_term(seed, size=8)
        b = cob2.random_term(seed, size=8)
        assert a == b
    assert cob2.random_term(3, size=8, boundary=(2, 2)).dom == 2


def test_random_genus0_terms_are_connected_genus0():
    rng = random.Random(11)
    for _ in range(150):
        m, n = rng.randint(0, 4), rng.randint(0, 4)
        if m + n == 0:
            continue
        t = cob2.random_genus0_term(m, n, rng.getrandbits(32))
        assert signature(t) == (m, n)
        s = normalize(t)
        assert len(s.components) == 1
        comp = s.components[0]
        assert comp.genus == 0
        assert comp.inputs == tuple(range(1, m + 1))
        assert len(comp.outputs) == n
    with pytest.raises(ValueError):
        cob2.random_genus0_term(0, 0, 1)
