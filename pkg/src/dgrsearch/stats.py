"""Observables over run records: cost statistics, exponential fits, and the
correct-hint selection probability with its analytic null model."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Iterable, Mapping

import numpy as np

FACT10 = 3628800
CATALOG_SIZE = 351
CORRECT_HINT_COUNT = 6


def computational_cost(t_star: float, M: int) -> float:
    """M * t_star / 10!, the group-size-weighted normalized halting time."""
    return M * t_star / FACT10


@dataclass
class CostSample:
    """Cost values of the solved runs, plus how many runs were censored."""

    values: list[float]
    censored_count: int = 0

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> "CostSample":
        values: list[float] = []
        censored = 0
        for rec in records:
            if rec["solved"]:
                values.append(float(rec["C"]))
            else:
                censored += 1
        return cls(values, censored)

    @classmethod
    def from_outcomes(cls, outcomes) -> "CostSample":
        values = [o.C for o in outcomes if o.solved]
        return cls(values, sum(1 for o in outcomes if not o.solved))


def _checked_values(sample: CostSample, minimum: int) -> np.ndarray:
    if len(sample.values) < minimum:
        raise ValueError(f"need at least {minimum} uncensored samples, have {len(sample.values)}")
    arr = np.asarray(sample.values, dtype=np.float64)
    if np.any(arr <= 0):
        raise ValueError("cost values must be positive (corrupt record?)")
    if sample.censored_count:
        warnings.warn(
            f"{sample.censored_count} censored runs excluded; the mean is a lower bound",
            RuntimeWarning,
            stacklevel=3,
        )
    return arr


def summarize(sample: CostSample) -> tuple[float, float]:
    """Mean and standard error of the uncensored cost values."""
    arr = _checked_values(sample, minimum=2)
    return float(arr.mean()), float(arr.std(ddof=1) / sqrt(arr.size))


@dataclass
class ExponentialFit:
    rate: float
    mean: float
    ks_statistic: float
    n: int


def fit_exponential(sample: CostSample) -> ExponentialFit:
    """Maximum-likelihood exponential fit plus the KS sup-distance.

    The ML rate is 1/mean by construction. The KS statistic compares the
    empirical distribution against Exponential(rate); no significance
    threshold is enforced here, callers pin their own.
    """
    arr = np.sort(_checked_values(sample, minimum=100))
    mean = float(arr.mean())
    rate = 1.0 / mean
    n = arr.size
    cdf = 1.0 - np.exp(-rate * arr)
    d_plus = float((np.arange(1, n + 1) / n - cdf).max())
    d_minus = float((cdf - np.arange(0, n) / n).max())
    return ExponentialFit(rate=rate, mean=mean, ks_statistic=max(d_plus, d_minus), n=n)


@dataclass
class PhiEstimate:
    """Chance that a board read returns a correct hint.

    ``phi`` is the mean of the per-run ratios (runs without selections are
    excluded); ``pooled_phi`` divides the pooled counters instead, which is
    the natural scale for binomial error bars.
    """

    phi: float
    selections: int
    correct: int
    runs_used: int
    pooled_phi: float


def _selection_counters(rec) -> tuple[int, int]:
    if isinstance(rec, Mapping):
        return int(rec["hint_selections"]), int(rec["correct_hint_selections"])
    return int(rec.hint_selections), int(rec.correct_hint_selections)


def phi_from_records(records: Iterable) -> PhiEstimate:
    ratios: list[float] = []
    total_sel = 0
    total_cor = 0
    for rec in records:
        sel, cor = _selection_counters(rec)
        total_sel += sel
        total_cor += cor
        if sel > 0:
            ratios.append(cor / sel)
    if not ratios:
        raise ValueError("no hint selections in any run; phi is undefined")
    return PhiEstimate(
        phi=float(np.mean(ratios)),
        selections=total_sel,
        correct=total_cor,
        runs_used=len(ratios),
        pooled_phi=total_cor / total_sel,
    )


def null_model_phi(B: int) -> float:
    """Correct-pick probability for a frozen uniformly random board.

    The number of correct hints on the board is hypergeometric; given k of
    them a uniform pick is correct with probability k/B. The sum collapses
    to 6/351 for every board size, computed here exactly.
    """
    if not 1 <= B <= CATALOG_SIZE:
        raise ValueError(f"board size must be in [1, {CATALOG_SIZE}], got {B}")
    wrong = CATALOG_SIZE - CORRECT_HINT_COUNT
    denominator = comb(CATALOG_SIZE, B)
    total = Fraction(0)
    for k in range(max(0, B - wrong), min(CORRECT_HINT_COUNT, B) + 1):
        weight = Fraction(comb(CORRECT_HINT_COUNT, k) * comb(wrong, B - k), denominator)
        total += weight * Fraction(k, B)
    return float(total)


def summary_from_records(records: Iterable[Mapping]) -> dict:
    """The summary row for a batch of same-configuration run records."""
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    first = records[0]
    sample = CostSample.from_records(records)
    summary = {
        "strategy": first["strategy"],
        "M": first["M"],
        "p": first["p"],
        "B": first["B"],
        "n_runs": len(records),
        "mean_C": None,
        "stderr_C": None,
        "rate": None,
        "ks": None,
        "phi": None,
        "phi_null": None,
        "censored": sample.censored_count,
    }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        if len(sample.values) >= 2:
            summary["mean_C"], summary["stderr_C"] = summarize(sample)
        if len(sample.values) >= 100:
            fit = fit_exponential(sample)
            summary["rate"] = fit.rate
            summary["ks"] = fit.ks_statistic
    try:
        summary["phi"] = phi_from_records(records).phi
    except ValueError:
        pass
    if first["strategy"] == "blackboard" and 1 <= first["B"] <= CATALOG_SIZE:
        summary["phi_null"] = null_model_phi(first["B"])
    return summary
