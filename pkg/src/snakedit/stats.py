"""Rank statistics: Spearman correlation, Mann-Whitney U, Wilcoxon signed-rank.

All three use midranks for ties and report two-sided p-values. Small samples
get exact p-values by full enumeration of the permutation null; larger ones
fall back to the usual approximations (Student t for the correlation, normal
with tie correction and 0.5 continuity correction for the two rank sums).
The reported ``method`` says which route was taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations

from scipy.special import ndtr, stdtr

SPEARMAN_EXACT_MAX_N = 9
RANKSUM_EXACT_MAX_N = 12

# Guards float jitter in >= comparisons during exact enumeration.
_ENUM_EPS = 1e-12


class StatsError(ValueError):
    pass


class LengthMismatch(StatsError):
    pass


class TooFewSamples(StatsError):
    pass


class EmptySample(StatsError):
    pass


class AllZeroDifferences(StatsError):
    pass


@dataclass(frozen=True)
class RankTestResult:
    statistic: float
    p_value: float
    method: str  # "exact" | "approximation"


def midranks(values) -> list[float]:
    """Ranks 1..n with tied values sharing the average of their ranks."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _pearson(xs, ys) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        return math.nan
    return sxy / math.sqrt(sxx * syy)


def _tie_term(values) -> float:
    """Sum of t^3 - t over groups of tied values."""
    total = 0.0
    for v in set(values):
        t = sum(1 for x in values if x == v)
        total += t**3 - t
    return total


def spearman_rho(xs, ys, method: str = "auto") -> RankTestResult:
    """Rank correlation with a two-sided p-value.

    Exact p enumerates all n! pairings of the rank vectors for n <= 9;
    beyond that a Student t approximation with n-2 degrees of freedom is
    used. Constant inputs have undefined correlation (NaN statistic and p).
    """
    if len(xs) != len(ys):
        raise LengthMismatch(f"samples have lengths {len(xs)} and {len(ys)}")
    n = len(xs)
    if n < 3:
        raise TooFewSamples("need at least 3 pairs")

    rx = midranks(xs)
    ry = midranks(ys)
    rho = _pearson(rx, ry)
    if method == "auto":
        method = "exact" if n <= SPEARMAN_EXACT_MAX_N else "approximation"
    if math.isnan(rho):
        return RankTestResult(statistic=rho, p_value=math.nan, method=method)

    if method == "exact":
        hits = 0
        total = 0
        for perm in permutations(ry):
            total += 1
            if abs(_pearson(rx, perm)) >= abs(rho) - _ENUM_EPS:
                hits += 1
        return RankTestResult(statistic=rho, p_value=hits / total, method="exact")

    if abs(rho) >= 1.0:
        return RankTestResult(statistic=rho, p_value=0.0, method="approximation")
    t = rho * math.sqrt((n - 2) / (1 - rho * rho))
    p = 2 * float(stdtr(n - 2, -abs(t)))
    return RankTestResult(statistic=rho, p_value=min(1.0, p), method="approximation")


def _u_statistic(pooled_ranks, idx, n1) -> float:
    return sum(pooled_ranks[i] for i in idx) - n1 * (n1 + 1) / 2


def mann_whitney_u(xs, ys, method: str = "auto") -> RankTestResult:
    """Two-sample rank-sum test; statistic is U for the first sample.

    U counts pairs where x beats y (ties half). Exact p enumerates every
    C(n1+n2, n1) group labeling when the combined size is <= 12; otherwise
    a tie-corrected normal approximation with continuity correction is used.
    """
    if not xs or not ys:
        raise EmptySample("both samples must be nonempty")
    n1, n2 = len(xs), len(ys)
    pooled = list(xs) + list(ys)
    ranks = midranks(pooled)
    u = _u_statistic(ranks, range(n1), n1)
    mean_u = n1 * n2 / 2

    if method == "auto":
        method = "exact" if n1 + n2 <= RANKSUM_EXACT_MAX_N else "approximation"

    if method == "exact":
        observed = abs(u - mean_u)
        hits = 0
        total = 0
        for idx in combinations(range(n1 + n2), n1):
            total += 1
            if abs(_u_statistic(ranks, idx, n1) - mean_u) >= observed - _ENUM_EPS:
                hits += 1
        return RankTestResult(statistic=u, p_value=hits / total, method="exact")

    n = n1 + n2
    tie_correction = _tie_term(pooled) / (n * (n - 1))
    variance = n1 * n2 / 12 * ((n + 1) - tie_correction)
    if variance <= 0:
        return RankTestResult(statistic=u, p_value=1.0, method="approximation")
    z = max(0.0, abs(u - mean_u) - 0.5) / math.sqrt(variance)
    p = 2 * float(ndtr(-z))
    return RankTestResult(statistic=u, p_value=min(1.0, p), method="approximation")


def wilcoxon_signed_rank(pairs, method: str = "auto") -> RankTestResult:
    """Paired rank test; statistic is the positive-difference rank sum.

    Zero differences are dropped (all zero raises AllZeroDifferences). Exact
    p enumerates all 2^m sign assignments for m <= 12 nonzero differences;
    otherwise a tie-corrected normal approximation with continuity correction.
    """
    pairs = list(pairs)
    if not pairs:
        raise EmptySample("no pairs given")
    diffs = [x - y for x, y in pairs if x != y]
    if not diffs:
        raise AllZeroDifferences("every pair is tied")
    m = len(diffs)
    abs_ranks = midranks([abs(d) for d in diffs])
    w = sum(r for d, r in zip(diffs, abs_ranks) if d > 0)
    mean_w = m * (m + 1) / 4

    if method == "auto":
        method = "exact" if m <= RANKSUM_EXACT_MAX_N else "approximation"

    if method == "exact":
        observed = abs(w - mean_w)
        hits = 0
        total = 1 << m
        for signs in range(total):
            w_perm = sum(abs_ranks[i] for i in range(m) if signs >> i & 1)
            if abs(w_perm - mean_w) >= observed - _ENUM_EPS:
                hits += 1
        return RankTestResult(statistic=w, p_value=hits / total, method="exact")

    variance = (m * (m + 1) * (2 * m + 1) - _tie_term(abs_ranks) / 2) / 24
    if variance <= 0:
        return RankTestResult(statistic=w, p_value=1.0, method="approximation")
    z = max(0.0, abs(w - mean_w) - 0.5) / math.sqrt(variance)
    p = 2 * float(ndtr(-z))
    return RankTestResult(statistic=w, p_value=min(1.0, p), method="approximation")
