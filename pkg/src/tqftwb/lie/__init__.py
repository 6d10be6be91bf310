"""Exact-rational coadjoint geometry for three small Lie algebra families.

* ``sl(n)`` with the trace-form pairing, companion-matrix slice, and
  the nilpotent transverse slice through e = E_12;
* the semidirect product of sl(2) with its defining plane;
* a four-dimensional centralizer subalgebra of sl(3) with a literal
  dual basis.

`run_suite` bundles every verification relevant to a family into a
single CheckReport.
"""

from .core import (LieAlgebra, LieError, SL2SDElement, SL3CElement,
                   action_matrices, centralizer_basis, centralizer_report,
                   coadjoint_matrix, make_algebra, minimal_centralizer_dim,
                   sl3c_from_matrix, sl3c_to_matrix, sln_from_matrix,
                   sln_to_matrix)
from .formulas import (coad_formula_check, sl2sd_coad_closed_form,
                       sl2sd_stabilizer_element, sl2sd_unipotent_closed_form,
                       sl3c_coad_closed_form, sl3c_stabilizer_element,
                       stabilizer_family_check)
from .reports import CheckReport, trial_rng
from .slices import (char_coeffs, companion, companion_point,
                     companion_section_check, companion_slice,
                     exact_codimension, sl2sd_slice, sl3c_slices,
                     slice_report, slice_transversal_at, slodowy_checks)

__all__ = [
    "LieAlgebra", "LieError", "SL2SDElement", "SL3CElement", "CheckReport",
    "action_matrices", "centralizer_basis", "centralizer_report",
    "char_coeffs", "coad_formula_check", "coadjoint_matrix", "companion",
    "companion_point", "companion_section_check", "companion_slice",
    "exact_codimension", "make_algebra", "minimal_centralizer_dim",
    "run_suite", "sl2sd_coad_closed_form", "sl2sd_slice",
    "sl2sd_stabilizer_element", "sl2sd_unipotent_closed_form",
    "sl3c_coad_closed_form", "sl3c_from_matrix", "sl3c_slices",
    "sl3c_stabilizer_element", "sl3c_to_matrix", "slice_report",
    "slice_transversal_at", "sln_from_matrix", "sln_to_matrix",
    "slodowy_checks", "stabilizer_family_check", "trial_rng",
]


def run_suite(family, n=None, trials=25, seed=0):
    """All verifications for one family in a single report."""
    if family == "sl(n)":
        report = slice_report(family, trials=trials, seed=seed, n=n)
        if n is not None and n >= 3:
            report.extend(slodowy_checks(n, samples=min(trials, 10),
                                         seed=seed))
        return report
    report = coad_formula_check(family, trials=max(trials, 50), seed=seed)
    report.extend(stabilizer_family_check(family, trials=max(trials, 50),
                                          seed=seed))
    report.extend(slice_report(family, trials=trials, seed=seed))
    return report
