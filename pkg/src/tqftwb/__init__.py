"""Verification workbench for two-dimensional topological field theories
built from finite abelian groupoids.

Three layers, each exact over the rationals:

* `cob2` — a term calculus for oriented surfaces with boundary, with a
  canonical surface normal form;
* `groupoid` / `frobenius` — spans of finite groupoids, fibre-product
  composition, and machine checks of the commutative-Frobenius axioms;
* `lie` — coadjoint actions, transverse slices, and stabilizer families
  for three small Lie algebra families over Q.
"""

__version__ = "0.1.0"

from . import cob2, frobenius, groupoid, lie
from .cob2 import (ArityError, TermSyntaxError, normalize, parse_and_check,
                   random_genus0_term, random_term, render, signature)
from .frobenius import (check_axioms, closed_invariant, evaluate, genus0_span,
                        iso_bound)
from .groupoid import (AbelianModel, GroupoidError, abelian_groupoid,
                       abelian_power, cardinality, compose_spans,
                       compose_spans_skeletal, fingerprint, identity_span,
                       product)
from .lie import LieError, make_algebra, run_suite

__all__ = [
    "AbelianModel", "ArityError", "GroupoidError", "LieError",
    "TermSyntaxError", "abelian_groupoid", "abelian_power", "cardinality",
    "check_axioms", "closed_invariant", "cob2", "compose_spans",
    "compose_spans_skeletal", "evaluate", "fingerprint", "frobenius",
    "genus0_span", "groupoid", "identity_span", "iso_bound", "lie",
    "make_algebra", "normalize", "parse_and_check", "product",
    "random_genus0_term", "random_term", "render", "run_suite", "signature",
]
