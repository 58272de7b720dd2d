"""Sampled self-test suites over the oracle checks and the example family.

Each suite draws its own deterministic samples from ``(seed, suite, N, i)``
and reports the first counterexample it meets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bounds, oracle, states
from .bipartite import SchmidtVector, density_from_pure, pure_from_schmidt
from .linalg import eigvalsh

SCHMIDT_DIMS = (2, 3, 4, 5, 6)
POSITIVITY_DIMS = (2, 3, 4, 5, 6, 7, 8)
SANDWICH_DIMS = (2, 3, 4)


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: int = 0
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, details: Callable[[], dict]):
        self.total += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = details()


def _schmidt_samples(count, seed, tag):
    for n in SCHMIDT_DIMS:
        for i in range(count):
            yield n, states.random_schmidt(n, [seed, tag, n, i])


def _degenerate_schmidt(n: int) -> list[SchmidtVector]:
    """Boundary cases: product state, maximally entangled, one vanishing coefficient."""
    out = [SchmidtVector.from_values([1.0] + [0.0] * (n - 1)), SchmidtVector.from_values([1 / math.sqrt(n)] * n)]
    if n > 2:
        out.append(SchmidtVector.from_values([1 / math.sqrt(n - 1)] * (n - 1) + [0.0]))
    return out


def _alpha_suite(name, check, count, seed, tag):
    res = SuiteResult(name)
    samples = list(_schmidt_samples(count, seed, tag))
    samples += [(n, a) for n in SCHMIDT_DIMS for a in _degenerate_schmidt(n)]
    for _, alpha in samples:
        out = check(alpha)
        res.record(bool(out), lambda out=out: out.details)
    return res


def suite_t_structure(count=500, seed=0):
    return _alpha_suite("t_structure", oracle.t_structure_check, count, seed, 1)


def suite_charpoly(count=500, seed=0):
    if not oracle.confirm_charpoly_pattern():
        return SuiteResult("charpoly", 1, 1, {"error": "coefficient pattern not confirmed by expansion"})
    return _alpha_suite("charpoly", oracle.charpoly_check, count, seed, 2)


def suite_root_relations(count=500, seed=0):
    def check(alpha):
        r = oracle.root_relations_check(alpha)
        return oracle.CheckResult(
            "root_relations",
            r.passed,
            {
                "alphas": alpha.alphas.tolist(),
                "b_eigenvalues": r.b_eigenvalues.tolist(),
                "sum_roots": r.sum_roots,
                "prod_roots": r.prod_roots,
                "min_root": r.min_root,
                "pair_sum": r.pair_sum,
            },
        )

    return _alpha_suite("root_relations", check, count, seed, 3)


def suite_functional_property(count=1000, seed=0):
    return _alpha_suite("functional_property", oracle.functional_property_check, count, seed, 4)


def suite_chen_inequality(count=1000, seed=0):
    return _alpha_suite("chen_inequality", oracle.chen_inequality_check, count, seed, 5)


def suite_pure_lower_bound(count=1000, seed=0):
    def check(alpha):
        lb = bounds.phi_bound(density_from_pure(pure_from_schmidt(alpha)))
        c = oracle.pure_concurrence(alpha)
        return oracle.CheckResult("pure_lower_bound", lb <= c + 1e-9, {"alphas": alpha.alphas.tolist(), "phi_bound": lb, "concurrence": c})

    return _alpha_suite("pure_lower_bound", check, count, seed, 6)


def suite_phi_positivity(count=1000, seed=0):
    res = SuiteResult("phi_positivity")
    for n in POSITIVITY_DIMS:
        for i in range(count):
            sigma = states.random_single_density(n, [seed, 7, n, i], rank=1 + i % n)
            lam = float(eigvalsh(bounds.phi_map(sigma, n))[0])
            res.record(lam >= -1e-10, lambda: {"n": n, "min_eigenvalue": lam, "sigma": _encode(sigma)})
    return res


def suite_not_completely_positive(count=None, seed=0):
    res = SuiteResult("not_completely_positive")
    for n in POSITIVITY_DIMS:
        alpha = SchmidtVector.from_values([1 / math.sqrt(n)] * n)
        lam = float(eigvalsh(bounds.apply_id_phi(density_from_pure(pure_from_schmidt(alpha))))[0])
        res.record(lam < -1e-10, lambda: {"n": n, "min_eigenvalue": lam})
    return res


def suite_hou_eigenvalues(count=100, seed=0):
    res = SuiteResult("hou_eigenvalues")
    for i in range(count):
        q = states.random_hou_params([seed, 8, i])
        got = eigvalsh(bounds.apply_id_phi(states.hou_state(q)))
        listed = states.hou_eigenvalues(q)
        err = float(np.max(np.abs(got - np.sort(listed))))
        res.record(err <= 1e-10 and abs(sum(listed) - 3) <= 1e-12, lambda: {"q": q.as_tuple(), "max_abs_error": err, "list_sum": sum(listed)})
    return res


def suite_hou_closed_forms(count=1000, seed=0):
    res = SuiteResult("hou_closed_forms")
    for i in range(count):
        q = states.random_hou_params([seed, 9, i])
        rho = states.hou_state(q)
        diffs = {
            "phi": abs(bounds.phi_bound(rho) - states.closed_phi(q)),
            "ppt": abs(bounds.ppt_bound(rho) - states.closed_ppt(q)),
            "realign": abs(bounds.realign_bound(rho) - states.closed_realign(q)),
        }
        res.record(max(diffs.values()) <= 1e-9, lambda: {"q": q.as_tuple(), **diffs})
    return res


def suite_hou_validity(count=100, seed=0):
    """Grid over the simplex: every family member must be a valid density matrix."""
    res = SuiteResult("hou_validity")
    k = 1
    while math.comb(k + 3, 3) < count:
        k += 1
    grid = [(a, b, c, k - a - b - c) for a in range(k + 1) for b in range(k + 1 - a) for c in range(k + 1 - a - b)]
    for pt in grid:
        q = states.HouParams(*(x / k for x in pt[:3]), 1 - sum(x / k for x in pt[:3]))
        try:
            states.hou_state(q)
            ok, err = True, None
        except ValueError as exc:
            ok, err = False, str(exc)
        res.record(ok, lambda: {"q": q.as_tuple(), "error": err})
    return res


def suite_sandwich(count=200, seed=0):
    res = SuiteResult("sandwich")
    for n in SANDWICH_DIMS:
        for i in range(count):
            rho = states.random_density(n, 1 + i % (n * n), [seed, 10, n, i])
            rep = bounds.bound_report(rho)
            upper = oracle.convex_roof_upper(rho, seed=[seed, 11, n, i])
            lower = max(rep.phi_bound, rep.ppt_bound, rep.realign_bound, 0.0)
            res.record(lower <= upper + 1e-6, lambda: {"n": n, "lower": lower, "upper": upper, "rho": _encode(rho.matrix)})
    return res


def _encode(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


SUITES: dict[str, tuple[Callable[..., SuiteResult], int | None]] = {
    "t_structure": (suite_t_structure, 500),
    "charpoly": (suite_charpoly, 500),
    "root_relations": (suite_root_relations, 500),
    "functional_property": (suite_functional_property, 1000),
    "chen_inequality": (suite_chen_inequality, 1000),
    "pure_lower_bound": (suite_pure_lower_bound, 1000),
    "phi_positivity": (suite_phi_positivity, 1000),
    "not_completely_positive": (suite_not_completely_positive, None),
    "hou_eigenvalues": (suite_hou_eigenvalues, 100),
    "hou_closed_forms": (suite_hou_closed_forms, 1000),
    "hou_validity": (suite_hou_validity, 100),
    "sandwich": (suite_sandwich, 200),
}


def run_suites(level: str = "quick", seed: int = 0, names=None, stop_on_failure: bool = True):
    """Run the named suites (all by default); ``quick`` uses a tenth of the samples."""
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    for name in names or SUITES:
        fn, full_count = SUITES[name]
        count = full_count if level == "full" or full_count is None else max(1, full_count // 10)
        r = fn(count, seed)
        yield r
        if stop_on_failure and not r.passed:
            return
