"""Acceptance checks: every closed form is replayed against an independent
oracle (brute-force enumeration, finite differences, exact coefficients, or
Monte Carlo at fixed seeds), each with its pinned tolerance.

Monte Carlo checks run with fixed arbitrary seeds so the whole battery is
deterministic.  Setting the environment variable DEGSEQ_TAMPER_H to a scale
factor perturbs the covariance closed form on its way into the checks; this
is a negative control for CI wiring (the battery must then fail).
"""

from __future__ import annotations

import math
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .asymptotics import (
    asymptotic_log_gf,
    central_hessian,
    chi_value,
    contour_extract,
    hessian_H,
    limit_law,
    ones_weights,
    phi_second,
    solve_zeta,
)
from .exact import (
    GraphClassParams,
    brute_force_multigraph,
    brute_force_simple,
    class_is_empty,
    graph_gf,
    graph_gf_value,
    joint_pmf,
    v_factor,
)
from .sampler import (
    census,
    compensation_factor,
    run_experiment,
    sample_multigraph,
    sample_simple,
    validate_structure,
)
from .stats import (
    chi_square_gof,
    gaussian_check,
    moment_report,
    poisson_check,
    psd_check,
    standardize,
)

SEED_GAUSSIAN = 7
SEED_POISSON = 7
SEED_STRUCTURE = 29
SEED_GOF_SIMPLE = 3
SEED_GOF_MULTI = {(2, 4): 13, (4, 3): 17}


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return "%s  %2d  %-28s (%.1fs)" % (status, self.number, self.name, self.seconds)

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


def _hessian_under_test(alpha: float, q: int) -> np.ndarray:
    h = hessian_H(alpha, q)
    scale = os.environ.get("DEGSEQ_TAMPER_H")
    if scale:
        h = h * float(scale)
    return h


def _law_under_test(alpha: float, q: int, model: str):
    law = limit_law(alpha, q, model)
    return type(law)(
        alpha=law.alpha,
        q=law.q,
        model=law.model,
        mean_coeffs=law.mean_coeffs,
        hessian=_hessian_under_test(alpha, q),
        poisson_lambda=law.poisson_lambda,
    )


def check_exact_vs_bruteforce_simple() -> dict:
    """Census polynomial equals adjacency enumeration, exactly."""
    instances = 0
    for n1 in (0, 2, 4):
        for n2 in range(6):
            if n1 + n2 < 2 or class_is_empty(n1, n2, "simple"):
                continue
            p = GraphClassParams(n1, n2, q=max(2, n1 + n2))
            if graph_gf(p).poly != brute_force_simple(p).poly:
                return {"passed": False, "failed_at": [n1, n2]}
            instances += 1
    return {"passed": True, "instances": instances, "runtime_limit_s": 60}


def check_exact_vs_matching_oracle() -> dict:
    """Multigraph census polynomial equals stub-pairing enumeration, exactly."""
    instances = 0
    for n1 in range(0, 13, 2):
        for n2 in range(7 - n1 // 2):
            p = GraphClassParams(n1, n2, q=max(2, n1 + n2), model="multigraph")
            if graph_gf(p).poly != brute_force_multigraph(p).poly:
                return {"passed": False, "failed_at": [n1, n2]}
            instances += 1
    return {"passed": True, "instances": instances, "runtime_limit_s": 120}


def check_saddle_closed_form() -> dict:
    """At unit weights: zeta = alpha/(1+alpha) and curvature alpha(1+alpha)."""
    worst_zeta = 0.0
    worst_phi2 = 0.0
    for alpha in (0.1, 0.5, 1.0, 2.0, 10.0):
        u = ones_weights(4)
        zeta = solve_zeta(alpha, u)
        worst_zeta = max(worst_zeta, abs(zeta - alpha / (1 + alpha)))
        worst_phi2 = max(worst_phi2, abs(phi_second(zeta, u) - alpha * (1 + alpha)))
    return {
        "passed": worst_zeta <= 1e-12 and worst_phi2 <= 1e-10,
        "max_zeta_err": worst_zeta,
        "max_phi2_err": worst_phi2,
    }


def check_hessian_identity() -> dict:
    """Closed-form covariance equals the finite-difference Hessian of the
    cumulant rate, plus exact spot values at alpha = 1."""
    worst_fd = 0.0
    for alpha in (0.5, 1.0, 2.0):
        closed = _hessian_under_test(alpha, 5)
        fd = central_hessian(lambda t: chi_value(t, alpha, 5), np.zeros(4))
        worst_fd = max(worst_fd, float(np.abs(closed - fd).max()))
    h1 = _hessian_under_test(1.0, 3)
    spots = max(
        abs(h1[0, 0] - 0.125), abs(h1[0, 1] + 0.125), abs(h1[1, 1] - 0.1875)
    )
    return {
        "passed": worst_fd <= 1e-5 and spots <= 1e-12,
        "max_fd_dev": worst_fd,
        "max_spot_dev": spots,
    }


def check_psd() -> dict:
    """Limiting covariance is positive semi-definite on an alpha grid."""
    worst = 0.0
    for alpha in (0.1, 0.5, 1.0, 2.0, 10.0):
        verdict = psd_check(_hessian_under_test(alpha, 8), tol=1e-9)
        worst = min(worst, verdict.details["min_eigenvalue"])
        if not verdict.passed:
            return {"passed": False, "alpha": alpha, **verdict.details}
    return {"passed": True, "min_eigenvalue": worst}


def check_contour_extraction() -> dict:
    """Trapezoid contour coefficients match exact extraction to 1e-8 relative."""
    worst = 0.0
    weights = [
        None,
        ([1.0, 1.1, 0.9], [Fraction(1), Fraction(11, 10), Fraction(9, 10)]),
    ]
    for n1, n2 in ((2, 1), (20, 10)):
        p = GraphClassParams(n1, n2, q=3)
        for w in weights:
            if w is None:
                got = contour_extract(p, points=1024)
                exact = graph_gf_value(p) / v_factor(n1, n2)
            else:
                got = contour_extract(p, u=w[0], points=1024)
                exact = graph_gf_value(p, w[1]) / v_factor(n1, n2)
            worst = max(worst, abs(got / float(exact) - 1.0))
    return {"passed": worst <= 1e-8, "max_rel_err": worst}


def check_laplace_asymptotics() -> dict:
    """|log exact - log estimate| strictly decreases along doubling n1 and the
    final ratio is within 5%."""
    diffs = []
    for n1 in (40, 80, 160, 320):
        p = GraphClassParams(n1, n1 // 2, q=2)
        exact = graph_gf_value(p)
        log_exact = math.log(exact.numerator) - math.log(exact.denominator)
        diffs.append(abs(log_exact - asymptotic_log_gf(p)))
    decreasing = all(a > b for a, b in zip(diffs, diffs[1:]))
    final_ratio_err = abs(math.exp(diffs[-1]) - 1.0)
    return {
        "passed": decreasing and final_ratio_err <= 0.05,
        "log_diffs": diffs,
        "final_ratio_err": final_ratio_err,
    }


def check_gaussian_limit() -> dict:
    """Standardized census moments at n1=2000, N=20000 match N(0, H(1))."""
    p = GraphClassParams.from_alpha(1.0, 2000, q=4, model="simple")
    law = _law_under_test(1.0, 4, "simple")
    result = run_experiment(p, 20000, seed=SEED_GAUSSIAN)
    v = standardize(result.counts, law, p.n1)
    report = moment_report(v, p.n1, p.n2)
    verdict = gaussian_check(report, law, tol_mean_se=4.0, tol_cov_abs=0.06)
    return {
        "passed": verdict.passed,
        "seed": SEED_GAUSSIAN,
        "runtime_limit_s": 300,
        **verdict.details,
    }


def check_poisson_limit() -> dict:
    """Loop counts at n1=2000, N=20000 match Poisson(1/4)."""
    p = GraphClassParams.from_alpha(1.0, 2000, q=4, model="multigraph")
    lam = limit_law(1.0, 4, "multigraph").poisson_lambda
    result = run_experiment(p, 20000, seed=SEED_POISSON)
    verdict = poisson_check(result.counts[:, 0], lam, significance=0.001)
    return {"passed": verdict.passed, "seed": SEED_POISSON, **verdict.details}


def check_structural_invariants() -> dict:
    """Zero violations over 1e5 sampled graphs: sizes sum to n1+n2, path
    count is n1/2, every component is a path or a cycle, and rejection
    output always has compensation factor 1."""
    batches = [
        ("simple", 8, 6, 4, 25000),
        ("multigraph", 8, 6, 4, 25000),
        ("multigraph", 2, 3, 2, 25000),
        ("simple", 4, 4, 8, 25000),
    ]
    rng = np.random.Generator(np.random.PCG64(SEED_STRUCTURE))
    violations = 0
    checked = 0
    for model, n1, n2, q, reps in batches:
        for _ in range(reps):
            if model == "simple":
                g = sample_simple(n1, n2, rng)
            else:
                g = sample_multigraph(n1, n2, rng)
            c = census(g, q)
            ok = (
                c.component_sizes_sum == n1 + n2
                and c.path_components == n1 // 2
            )
            if model == "simple" and compensation_factor(g) != 1:
                ok = False
            try:
                validate_structure(g)
            except Exception:
                ok = False
            violations += not ok
            checked += 1
    return {"passed": violations == 0, "violations": violations, "samples": checked}


def check_small_instance_distributions() -> dict:
    """Sampled censuses match the exact laws: rejection sampler at (4,4)
    against the census PMF, pairing sampler against the matching oracle."""
    results = {}
    p = GraphClassParams(4, 4, q=8)
    pmf = joint_pmf(p)
    rng = np.random.Generator(np.random.PCG64(SEED_GOF_SIMPLE))
    observed = Counter()
    for _ in range(100000):
        observed[census(sample_simple(4, 4, rng), 8).counts] += 1
    verdict = chi_square_gof(observed, pmf, 100000, significance=0.001)
    results["simple_4_4_p"] = verdict.details["p_value"]
    passed = verdict.passed
    for (n1, n2), seed in SEED_GOF_MULTI.items():
        q = n1 + n2
        oracle = brute_force_multigraph(GraphClassParams(n1, n2, q=q, model="multigraph"))
        probs = {k: c / oracle.total for k, c in oracle.poly.terms.items()}
        rng = np.random.Generator(np.random.PCG64(seed))
        observed = Counter()
        for _ in range(100000):
            observed[census(sample_multigraph(n1, n2, rng), q).counts] += 1
        verdict = chi_square_gof(observed, probs, 100000, significance=0.001)
        results["multigraph_%d_%d_p" % (n1, n2)] = verdict.details["p_value"]
        passed = passed and verdict.passed
    results["passed"] = passed
    return results


CHECKS = (
    (1, "exact-vs-bruteforce-simple", check_exact_vs_bruteforce_simple),
    (2, "exact-vs-matching-oracle", check_exact_vs_matching_oracle),
    (3, "saddle-closed-form", check_saddle_closed_form),
    (4, "hessian-identity", check_hessian_identity),
    (5, "psd", check_psd),
    (6, "contour-extraction", check_contour_extraction),
    (7, "laplace-asymptotics", check_laplace_asymptotics),
    (8, "gaussian-limit", check_gaussian_limit),
    (9, "poisson-limit", check_poisson_limit),
    (10, "structural-invariants", check_structural_invariants),
    (11, "small-instance-gof", check_small_instance_distributions),
)

QUICK_CHECKS = (3, 4, 5, 6, 7)


def run_check(number: int) -> CheckResult:
    entry = next((c for c in CHECKS if c[0] == number), None)
    if entry is None:
        raise ValueError("no acceptance check numbered %d" % number)
    _, name, fn = entry
    start = time.perf_counter()
    details = fn()
    elapsed = time.perf_counter() - start
    passed = bool(details.pop("passed"))
    limit = details.get("runtime_limit_s")
    if limit is not None and elapsed > limit:
        passed = False
        details["runtime_exceeded"] = True
    return CheckResult(number, name, passed, elapsed, details)


def run_checks(numbers=None, emit=None) -> list:
    if numbers is None:
        numbers = [c[0] for c in CHECKS]
    results = []
    for number in numbers:
        result = run_check(number)
        if emit is not None:
            emit(result.line())
        results.append(result)
    return results
