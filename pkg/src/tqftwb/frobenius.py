"""The commutative Frobenius structure carried by an abelian model.

Each cobordism generator becomes a span between powers of the model's
realization A: the unit is the identity section of the base into A, the
multiplication span has apex the composable pairs A*A with legs the
pairwise inclusion into A x A and addition into A, the comultiplication
and counit are the mirror spans, and the twist is A x A with the
crossed right leg.  `evaluate` pushes a whole cobordism term through
this dictionary (tensor = product of spans, composition = fibre
product, reduced to a skeleton by default), and `check_axioms` verifies
every unit/counit/commutativity/Frobenius/associativity instance by
fingerprint comparison plus the comparison-functor equivalences.

Genus-0 cobordisms with m inputs and n outputs all evaluate to the span
of (m+n)-tuples with equal sums, and a closed genus-g surface evaluates
to a groupoid whose cardinality is Sum_x |A_x|^(1-g); both facts are
exercised by the tests.
"""

from dataclasses import dataclass, field

from . import cob2
from .groupoid import (BundleGroupoid, BundleMap, GroupoidError,
                       GroupoidFunctor, Span, abelian_power, cardinality,
                       comparison_is_equivalence, compose_spans,
                       compose_spans_skeletal, essential_equivalence_check,
                       fingerprint, identity_span, product, unit_groupoid,
                       _unit_vectors)


def _identity_mat(k):
    return _unit_vectors(k)


def _zero_mat(rows, cols):
    return [[0] * cols for _ in range(rows)]


def generator_span(model, name):
    """The span assigned to a single cobordism generator."""
    A1 = abelian_power(model, 1)
    if name in ("eta", "eps"):
        objects = [(p,) for p in model.base]
        moduli = {(p,): model.factors(p) for p in model.base}
        gens = {(p,): [] for p in model.base}
        apex = BundleGroupoid(objects, moduli, gens)
        unit = unit_groupoid()
        to_unit = BundleMap(apex, unit, {x: () for x in objects},
                            {x: _zero_mat(0, len(moduli[x])) for x in objects})
        section = BundleMap(apex, A1, {x: x for x in objects},
                            {x: _identity_mat(len(moduli[x])) for x in objects})
        if name == "eta":
            return Span(apex, to_unit, section)
        return Span(apex, section, to_unit)
    if name in ("mu", "delta"):
        A2 = abelian_power(model, 2)
        objects = [(p,) for p in model.base]
        moduli = {(p,): model.factors(p) * 2 for p in model.base}
        gens = {x: _unit_vectors(len(moduli[x])) for x in objects}
        apex = BundleGroupoid(objects, moduli, gens)
        pairs = BundleMap(apex, A2, {(p,): (p, p) for p in model.base},
                          {x: _identity_mat(len(moduli[x])) for x in objects})
        addmats = {}
        for p in model.base:
            k = len(model.factors(p))
            addmats[(p,)] = [[1 if j % k == i else 0 for j in range(2 * k)]
                             for i in range(k)]
        add = BundleMap(apex, A1, {(p,): (p,) for p in model.base}, addmats)
        if name == "mu":
            return Span(apex, pairs, add)
        return Span(apex, add, pairs)
    if name == "tau":
        apex = abelian_power(model, 2)
        straight = BundleMap(apex, abelian_power(model, 2),
                             {x: x for x in apex.objects},
                             {x: _identity_mat(len(apex.moduli[x]))
                              for x in apex.objects})
        swap_map, swap_mats = {}, {}
        target = abelian_power(model, 2)
        for (p, q) in apex.objects:
            kp, kq = len(model.factors(p)), len(model.factors(q))
            swap_map[(p, q)] = (q, p)
            mat = _zero_mat(kq + kp, kp + kq)
            for i in range(kq):
                mat[i][kp + i] = 1
            for i in range(kp):
                mat[kq + i][i] = 1
            swap_mats[(p, q)] = mat
        crossed = BundleMap(apex, target, swap_map, swap_mats)
        return Span(apex, straight, crossed)
    raise GroupoidError(f"unknown generator {name!r}")


def evaluate(model, term, reduced=True, max_arrows=500_000):
    """The span assigned to a whole cobordism term (string or tree).

    reduced=True composes through the skeletal fibre product; with
    reduced=False the homotopy fibre product is materialized literally
    (small models only -- composites then have generic apexes, so any
    enclosing tensor product is rejected).
    """
    if isinstance(term, str):
        term = cob2.parse_and_check(term)
    if isinstance(term, cob2.Generator):
        return generator_span(model, term.name)
    if isinstance(term, cob2.Identity):
        return identity_span(abelian_power(model, term.n))
    if isinstance(term, cob2.Tensor):
        return product([evaluate(model, term.left, reduced, max_arrows),
                        evaluate(model, term.right, reduced, max_arrows)])
    if isinstance(term, cob2.Compose):
        inner = evaluate(model, term.inner, reduced, max_arrows)
        outer = evaluate(model, term.outer, reduced, max_arrows)
        if reduced:
            return compose_spans_skeletal(inner, outer)
        return compose_spans(inner, outer, mode="homotopy", max_arrows=max_arrows)
    raise TypeError(f"not a term: {term!r}")


def genus0_span(model, m, n):
    """The span of (m+n)-tuples over each base point with equal input and
    output sums; every connected genus-0 cobordism evaluates to this."""
    if (m, n) == (0, 0):
        raise GroupoidError("the empty boundary signature (0, 0) is excluded")
    from .linalg import kernel_subgroup

    objects = [(p,) for p in model.base]
    moduli, gens, lmats, rmats = {}, {}, {}, {}
    lmap, rmap = {}, {}
    for p in model.base:
        fac = model.factors(p)
        k = len(fac)
        amb = fac * (m + n)
        moduli[(p,)] = amb
        diff = _zero_mat(k, k * (m + n))
        for i in range(k):
            for block in range(m):
                diff[i][block * k + i] = 1
            for block in range(m, m + n):
                diff[i][block * k + i] = -1
        _, lifts = kernel_subgroup(diff, _unit_vectors(k * (m + n)),
                                   list(amb), list(fac))
        gens[(p,)] = lifts
        lmap[(p,)] = (p,) * m
        rmap[(p,)] = (p,) * n
        lmat = _zero_mat(k * m, k * (m + n))
        for i in range(k * m):
            lmat[i][i] = 1
        rmat = _zero_mat(k * n, k * (m + n))
        for i in range(k * n):
            rmat[i][k * m + i] = 1
        lmats[(p,)] = lmat
        rmats[(p,)] = rmat
    apex = BundleGroupoid(objects, moduli, gens)
    left = BundleMap(apex, abelian_power(model, m), lmap, lmats)
    right = BundleMap(apex, abelian_power(model, n), rmap, rmats)
    return Span(apex, left, right)


def closed_invariant(model, genus):
    """Cardinality of the apex evaluated on the closed genus-g surface,
    presented as eps . (mu . delta)^g . eta."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    text = "eps . " + "mu . delta . " * genus + "eta"
    return cardinality(evaluate(model, text).apex)


def iso_bound(model, power=3):
    """Fingerprint isotropy bound ample for the axiom suite's apexes."""
    top = max(model.order(p) for p in model.base)
    return max(64, top ** power)


RELATION_INSTANCES = [
    ("unit-left", "mu . (eta * id(1))", "id(1)"),
    ("unit-right", "mu . (id(1) * eta)", "id(1)"),
    ("counit-left", "(eps * id(1)) . delta", "id(1)"),
    ("counit-right", "(id(1) * eps) . delta", "id(1)"),
    ("commutativity", "mu . tau", "mu"),
    ("cocommutativity", "tau . delta", "delta"),
    ("associativity", "mu . (mu * id(1))", "mu . (id(1) * mu)"),
    ("coassociativity", "(delta * id(1)) . delta", "(id(1) * delta) . delta"),
    ("frobenius-left", "(id(1) * mu) . (delta * id(1))", "delta . mu"),
    ("frobenius-right", "(mu * id(1)) . (id(1) * delta)", "delta . mu"),
    ("identity-left", "id(1) . mu", "mu"),
    ("identity-right", "mu . id(2)", "mu"),
]

# pairs (inner term, outer term) whose strong and homotopy composites the
# proofs compare through the canonical functor
COMPARISON_PAIRS = [
    ("unit-left", "eta * id(1)", "mu"),
    ("unit-right", "id(1) * eta", "mu"),
    ("counit-left", "delta", "eps * id(1)"),
    ("counit-right", "delta", "id(1) * eps"),
    ("commutativity", "tau", "mu"),
    ("cocommutativity", "delta", "tau"),
    ("associativity", "mu * id(1)", "mu"),
    ("coassociativity", "delta", "delta * id(1)"),
    ("frobenius-left", "delta * id(1)", "id(1) * mu"),
    ("frobenius-right", "id(1) * delta", "mu * id(1)"),
]


@dataclass
class RelationReport:
    model: dict
    seed: int
    entries: list = field(default_factory=list)

    @property
    def all_pass(self):
        return all(e["passed"] for e in self.entries)

    def to_json(self):
        return {"model": self.model, "seed": self.seed,
                "all_pass": self.all_pass, "entries": self.entries}


def frobenius_witness_span(model):
    """The span of composable triples: arrows (a, b, c) over each base
    point, left leg (a+b, c), right leg (a, b+c)."""
    objects = [(p,) for p in model.base]
    moduli = {(p,): model.factors(p) * 3 for p in model.base}
    gens = {x: _unit_vectors(len(moduli[x])) for x in objects}
    apex = BundleGroupoid(objects, moduli, gens)
    lmats, rmats = {}, {}
    for p in model.base:
        k = len(model.factors(p))
        lmat = _zero_mat(2 * k, 3 * k)
        rmat = _zero_mat(2 * k, 3 * k)
        for i in range(k):
            lmat[i][i] = lmat[i][k + i] = 1          # a + b
            lmat[k + i][2 * k + i] = 1               # c
            rmat[i][i] = 1                            # a
            rmat[k + i][k + i] = rmat[k + i][2 * k + i] = 1  # b + c
        lmats[(p,)] = lmat
        rmats[(p,)] = rmat
    A2 = abelian_power(model, 2)
    left = BundleMap(apex, A2, {(p,): (p, p) for p in model.base}, lmats)
    right = BundleMap(apex, A2, {(p,): (p, p) for p in model.base}, rmats)
    return Span(apex, left, right)


def frobenius_witness_check(model, seed=0):
    """Verify the explicit functor from the composable-triples span into
    the strong fibre product of (delta * id) and (id * mu): it must be a
    functor, commute with both legs, and be an essential equivalence."""
    s1 = evaluate(model, "delta * id(1)")
    s2 = evaluate(model, "id(1) * mu")
    strong = compose_spans(s1, s2, mode="strong")
    triples = frobenius_witness_span(model)

    def on_obj(x):
        p = x[0]
        return ((p, p), (p, p))

    def on_arr(a):
        x, v = a
        p = x[0]
        return (((p, p), v), ((p, p), v))

    functor = GroupoidFunctor(triples.apex, strong.apex, on_obj, on_arr)
    try:
        functor.validate(seed=seed)
    except GroupoidError:
        return False
    for a in triples.apex.arrows:
        fa = functor.arr(a)
        if strong.left.arr(fa) != triples.left.arr(a):
            return False
        if strong.right.arr(fa) != triples.right.arr(a):
            return False
    for x in triples.apex.objects:
        fx = functor.obj(x)
        if strong.left.obj(fx) != triples.left.obj(x):
            return False
        if strong.right.obj(fx) != triples.right.obj(x):
            return False
    return essential_equivalence_check(functor)


def check_axioms(model, seed=0):
    """Evaluate both sides of every relation instance, compare span
    fingerprints, and run the comparison-functor equivalences the
    proofs name; returns a RelationReport."""
    bound = iso_bound(model)
    report = RelationReport(model=model.to_json(), seed=seed)
    comparison = dict((name, (lhs, rhs)) for name, lhs, rhs in COMPARISON_PAIRS)
    for name, lhs, rhs in RELATION_INSTANCES:
        fl = fingerprint(evaluate(model, lhs), max_isotropy=bound)
        fr = fingerprint(evaluate(model, rhs), max_isotropy=bound)
        entry = {"name": name, "lhs": lhs, "rhs": rhs,
                 "fingerprints_equal": fl == fr}
        if name in comparison:
            inner, outer = comparison[name]
            entry["comparison_pair"] = [inner, outer]
            entry["comparison_equivalence"] = comparison_is_equivalence(
                evaluate(model, inner), evaluate(model, outer))
        else:
            entry["comparison_equivalence"] = None
        entry["passed"] = entry["fingerprints_equal"] and \
            entry["comparison_equivalence"] is not False
        if not entry["fingerprints_equal"]:
            entry["witness"] = {"lhs_fingerprint": fl.serialize(),
                                "rhs_fingerprint": fr.serialize()}
        report.entries.append(entry)

    witness_ok = frobenius_witness_check(model, seed=seed)
    genus0_ok = fingerprint(evaluate(model, "delta . mu"), max_isotropy=bound) \
        == fingerprint(genus0_span(model, 2, 2), max_isotropy=bound)
    report.entries.append({"name": "frobenius-witness",
                           "lhs": "(a,b,c) -> (a+b, c, a, b+c)",
                           "rhs": "strong((delta * id(1)), (id(1) * mu))",
                           "fingerprints_equal": genus0_ok,
                           "comparison_equivalence": witness_ok,
                           "passed": witness_ok and genus0_ok})
    return report
