#!/usr/bin/env python3
"""
HS Trace Tool - Random Suite
Seeded random inputs and the randomized property suite behind
`hstrace random-suite`.

Random scalars are p/q with p uniform in [-9, 9] and q uniform in
[-9, 9] without 0. Every trial gets its own generator spawned from the root
seed, so results do not depend on how trials are scheduled.
"""

import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from .hs_exterior import ExteriorElement
from .hs_identities import (
    CLASSICAL_CH,
    CLASSICAL_CH_OPERATOR,
    CONJUGACY,
    DEFAULT_TOL,
    EQ17,
    IBP,
    MULTIDEGREE,
    ORACLE,
    STAR2,
    STAR3,
    STAR3_CUBIC,
    STAR3_FIN,
    THM48,
    TRSQ,
    IdentityReport,
    classical_ch_residual,
    classical_ch_operator_residual,
    conjugacy_invariance_check,
    cubic_ch_residual,
    eq17_residual,
    eq_fin_residual,
    generalized_ch_residual,
    ibp_check,
    multidegree_ch_residual,
    oracle_equivalence_check,
    star2_skew_residual,
    star3_symmetrized_residual,
    tr_square_identity,
)
from .hs_matrix import Matrix
from .hs_scalars import (
    DimensionMismatchError,
    RATIONAL,
    ResourceBudgetExceeded,
    Scalar,
    SingularMatrixError,
)
from .hs_series import EndoTuple

try:
    import resource
except ImportError:  # Windows
    resource = None

MAX_SUITE_DIMENSION = 6
NONZERO_DENOMINATORS = [d for d in range(-9, 10) if d != 0]


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def random_scalar(rng: np.random.Generator, mode: str = RATIONAL) -> Scalar:
    value = Fraction(int(rng.integers(-9, 10)), int(rng.choice(NONZERO_DENOMINATORS)))
    return value if mode == RATIONAL else float(value)


def random_matrix(rng: np.random.Generator, size: int, mode: str = RATIONAL) -> Matrix:
    return Matrix([[random_scalar(rng, mode) for _ in range(size)] for _ in range(size)])


def random_tuple(rng: np.random.Generator, n: int, count: Optional[int] = None,
                 mode: str = RATIONAL) -> EndoTuple:
    count = n if count is None else count
    return EndoTuple([random_matrix(rng, n, mode) for _ in range(count)], allow_rectangular=count != n)


def random_invertible(rng: np.random.Generator, n: int, mode: str = RATIONAL,
                      max_attempts: int = 100) -> Matrix:
    for _ in range(max_attempts):
        candidate = random_matrix(rng, n, mode)
        if candidate.determinant() != 0:
            return candidate
    raise SingularMatrixError(f"No invertible {n}x{n} matrix after {max_attempts} attempts")


def random_element(rng: np.random.Generator, n: int, mode: str = RATIONAL,
                   density: float = 0.5) -> ExteriorElement:
    """Sparse element with each blade present with the given probability"""
    terms = {mask: random_scalar(rng, mode) for mask in range(1 << n) if rng.random() < density}
    return ExteriorElement(n, terms)


def peak_memory_mb() -> float:
    """Peak resident set size of this process"""
    if resource is None:
        return 0.0
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # bytes on macOS, kilobytes elsewhere
    return peak / (1024 * 1024) if sys.platform == "darwin" else peak / 1024


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def checks_for(n: int) -> List[str]:
    """Identity checks the suite runs for a given n"""
    if n == 1:
        return [CLASSICAL_CH, CLASSICAL_CH_OPERATOR]
    if n == 2:
        return [THM48, ORACLE, STAR2, TRSQ, IBP, CONJUGACY, CLASSICAL_CH, CLASSICAL_CH_OPERATOR, MULTIDEGREE]
    if n == 3:
        return [THM48, ORACLE, STAR3, STAR3_CUBIC, STAR3_FIN, EQ17, IBP, CONJUGACY,
                CLASSICAL_CH, CLASSICAL_CH_OPERATOR, MULTIDEGREE]
    if n == 4:
        return [THM48, ORACLE, CONJUGACY, CLASSICAL_CH, CLASSICAL_CH_OPERATOR, MULTIDEGREE]
    return [THM48, CLASSICAL_CH, CLASSICAL_CH_OPERATOR, MULTIDEGREE]


def run_check(name: str, phi: EndoTuple, rng: np.random.Generator, mode: str = RATIONAL,
              tol: float = DEFAULT_TOL) -> IdentityReport:
    """Evaluate one named check on a tuple, drawing any extra inputs from rng"""
    n = phi.n
    if name == THM48:
        return generalized_ch_residual(phi, tol=tol)
    if name == ORACLE:
        return oracle_equivalence_check(phi, max_workers=1, tol=tol)
    if name == STAR2:
        return star2_skew_residual(phi[0], phi[1], tol=tol)
    if name == TRSQ:
        return tr_square_identity(phi[0], tol=tol)
    if name == IBP:
        pairs = [(random_element(rng, n, mode), random_element(rng, n, mode)) for _ in range(2)]
        return ibp_check(phi, pairs, tol=tol)
    if name == CONJUGACY:
        return conjugacy_invariance_check(phi, random_invertible(rng, n, mode), tol=tol)
    if name == CLASSICAL_CH:
        return classical_ch_residual(phi[0], tol=tol)
    if name == CLASSICAL_CH_OPERATOR:
        return classical_ch_operator_residual(phi[0], tol=tol)
    if name == STAR3:
        return star3_symmetrized_residual(phi[0], phi[1], phi[2], tol=tol)
    if name == STAR3_CUBIC:
        return cubic_ch_residual(phi[0], tol=tol)
    if name == STAR3_FIN:
        return eq_fin_residual(phi[0], phi[1], tol=tol)
    if name == EQ17:
        return eq17_residual(phi[0], phi[1], tol=tol)
    if name == MULTIDEGREE:
        return multidegree_ch_residual(phi, (2,) + (1,) * (phi.m - 1), tol=tol)
    raise ValueError(f"Unknown check: {name}")


class RandomSuite:
    """Runs every check for n on seeded random tuples, in parallel"""

    def __init__(self, n: int, trials: int, seed: int = 0, mode: str = RATIONAL,
                 tol: float = DEFAULT_TOL, max_workers: Optional[int] = None,
                 time_budget_s: Optional[float] = None, memory_budget_mb: Optional[float] = None,
                 progress: bool = True, checks: Optional[Sequence[str]] = None,
                 on_failure: Optional[Callable[[dict], None]] = None):
        if not 1 <= n <= MAX_SUITE_DIMENSION:
            raise DimensionMismatchError(f"The random suite supports 1 <= n <= {MAX_SUITE_DIMENSION}, got {n}")
        if trials < 1:
            raise ValueError(f"trials must be at least 1, got {trials}")
        self.n = n
        self.trials = trials
        self.seed = seed
        self.mode = mode
        self.tol = tol
        self.max_workers = max_workers or min(8, (os.cpu_count() or 2) + 2)
        self.time_budget_s = time_budget_s
        self.memory_budget_mb = memory_budget_mb
        self.progress = progress
        self.checks = list(checks) if checks else checks_for(n)
        self.on_failure = on_failure
        self.stats = {
            'trials_run': 0,
            'trials_passed': 0,
            'checks_run': 0,
            'checks_failed': 0,
        }

    def trial_tuple(self, trial: int, rng: np.random.Generator) -> EndoTuple:
        if self.n == 1:
            # univariate case: one matrix, sizes cycling through 2, 3, 4
            return random_tuple(rng, 2 + trial % 3, count=1, mode=self.mode)
        return random_tuple(rng, self.n, mode=self.mode)

    def run_trial(self, trial: int, seed_sequence: np.random.SeedSequence,
                  started: Optional[float] = None) -> dict:
        """Run every check on one random tuple; with a start time the budgets are enforced between checks"""
        rng = np.random.default_rng(seed_sequence)
        phi = self.trial_tuple(trial, rng)
        outcome = {"trial": trial, "passed": True, "checks": {}, "failures": []}
        for name in self.checks:
            report = run_check(name, phi, rng, self.mode, self.tol).with_seed(self.seed)
            outcome["checks"][name] = report.passed
            if not report.passed:
                outcome["passed"] = False
                failure = report.to_json(self.mode)
                failure["trial"] = trial
                outcome["failures"].append(failure)
            if started is not None:
                self._check_budget(started)
        return outcome

    def _check_budget(self, started: float):
        elapsed = time.perf_counter() - started
        if self.time_budget_s is not None and elapsed > self.time_budget_s:
            raise ResourceBudgetExceeded(f"Time budget of {self.time_budget_s:g}s exceeded after {elapsed:.1f}s")
        if self.memory_budget_mb is not None:
            peak = peak_memory_mb()
            if peak > self.memory_budget_mb:
                raise ResourceBudgetExceeded(f"Memory budget of {self.memory_budget_mb:g} MB exceeded ({peak:.0f} MB)")

    def run(self) -> dict:
        started = time.perf_counter()
        seed_sequences = np.random.SeedSequence(self.seed).spawn(self.trials)
        results: Dict[int, dict] = {}

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_trial = {
                executor.submit(self.run_trial, trial, seed_sequence, started): trial
                for trial, seed_sequence in enumerate(seed_sequences)
            }
            progress_iter = tqdm(as_completed(future_to_trial), total=self.trials,
                                 desc=f"🎲 n={self.n} trials", unit="trial", disable=not self.progress)
            try:
                for future in progress_iter:
                    outcome = future.result()
                    results[future_to_trial[future]] = outcome
                    if not outcome["passed"] and self.on_failure:
                        self.on_failure(outcome)
                    self._check_budget(started)
            except BaseException:
                for future in future_to_trial:
                    future.cancel()
                raise
            finally:
                progress_iter.close()

        ordered = [results[trial] for trial in sorted(results)]
        per_check = {name: {"passed": 0, "failed": 0} for name in self.checks}
        failures = []
        for outcome in ordered:
            self.stats['trials_run'] += 1
            if outcome["passed"]:
                self.stats['trials_passed'] += 1
            for name, passed in outcome["checks"].items():
                self.stats['checks_run'] += 1
                per_check[name]["passed" if passed else "failed"] += 1
                if not passed:
                    self.stats['checks_failed'] += 1
            failures.extend(outcome["failures"])

        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "mode": self.mode,
            "passed": self.stats['trials_passed'],
            "failed": self.trials - self.stats['trials_passed'],
            "checks": per_check,
            "failures": failures[:10],
            "elapsed_s": round(time.perf_counter() - started, 3),
            "peak_memory_mb": round(peak_memory_mb(), 1),
        }
