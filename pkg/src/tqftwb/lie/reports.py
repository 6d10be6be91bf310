"""Check reports and deterministic rational sampling.

Every verification suite in this package returns a CheckReport: a list
of named checks, each with a pass flag, the number of samples used, and
exact witnesses for failures.  Reports are reproducible: all randomness
flows from a master seed through per-trial derived seeds, and sample
points are recorded as exact "p/q" strings.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction


def trial_rng(seed, index):
    """Independent generator for one trial, derived from the master seed."""
    return random.Random(seed * 1_000_003 + index)


def rand_rational(rng, num_bound=9, dens=(1, 2, 3)):
    return Fraction(rng.randint(-num_bound, num_bound), rng.choice(dens))


def rand_vector(rng, k, num_bound=9, dens=(1, 2, 3)):
    return tuple(rand_rational(rng, num_bound, dens) for _ in range(k))


def rand_nonzero(rng, num_bound=9, dens=(1, 2, 3)):
    while True:
        q = rand_rational(rng, num_bound, dens)
        if q != 0:
            return q


def fmt(value):
    """Exact string form: Fractions as p/q, vectors recursively."""
    if isinstance(value, (list, tuple)):
        return [fmt(v) for v in value]
    if isinstance(value, (Fraction, int)):
        return str(value)
    return value


@dataclass
class CheckReport:
    family: str
    options: dict
    checks: list = field(default_factory=list)

    def add(self, name, passed, samples=0, witnesses=None):
        entry = {"name": name, "passed": bool(passed), "samples": samples}
        if witnesses:
            entry["witnesses"] = witnesses
        self.checks.append(entry)
        return entry

    def extend(self, other):
        self.checks.extend(other.checks)

    @property
    def all_pass(self):
        return all(c["passed"] for c in self.checks)

    def to_json(self):
        return {"family": self.family,
                "options": {k: fmt(v) if isinstance(v, Fraction) else v
                            for k, v in self.options.items()},
                "all_pass": self.all_pass,
                "checks": self.checks}
