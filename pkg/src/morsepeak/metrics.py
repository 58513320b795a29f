"""Exact matching distances on Morse sets and their transforms.

The Morse-set distance pairs critical points by rank and pads with the
origin; the Wasserstein distance minimizes over all matchings via an exact
assignment solver.  ``p = math.inf`` is a genuine bottleneck everywhere,
computed by threshold search, never a large-p approximation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import MorseSet, require_valid
from .pairing import PDSet, PTSet, RPTSet

DIAGONAL = "diagonal"
PAD_ORIGIN = "pad-origin"


class KindMismatchError(TypeError):
    """Operands of a transform distance are of different kinds."""


class UnmatchableInfinityError(ValueError):
    """An essential point has no essential partner and no finite-cost slack."""


class InfeasibleError(ValueError):
    """The assignment instance admits no finite-cost perfect matching."""


@dataclass(frozen=True)
class MatchResult:
    pairs: tuple[tuple[int, int], ...]
    cost: float


def _check_p(p: float) -> float:
    p = float(p)
    if not (p >= 1):
        raise ValueError("p must be >= 1 or infinity")
    return p


def sup_dist(u: Sequence[float], v: Sequence[float]) -> float:
    """Sup-norm distance with extended reals: equal infinite coordinates
    contribute nothing, mismatched ones make the distance infinite."""
    best = 0.0
    for a, b in zip(u, v):
        if math.isinf(a) or math.isinf(b):
            if a == b:
                continue
            return math.inf
        d = abs(a - b)
        if d > best:
            best = d
    return best


# ---------------------------------------------------------------------------
# Assignment solver


def solve_assignment(cost, objective: str = "sum") -> MatchResult:
    """Minimum-cost perfect matching on a square matrix of costs >= 0 or inf.

    ``objective="sum"`` minimizes the total cost; ``objective="bottleneck"``
    minimizes the largest matched entry via threshold search over the distinct
    finite entries.  Both are exact.
    """
    M = np.asarray(cost, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("cost matrix must be square")
    if M.size == 0:
        return MatchResult((), 0.0)
    if np.isnan(M).any() or (M < 0).any():
        raise ValueError("cost entries must be nonnegative or +inf")

    if objective == "sum":
        try:
            rows, cols = linear_sum_assignment(M)
        except ValueError as exc:
            raise InfeasibleError(str(exc)) from None
        total = float(M[rows, cols].sum())
        return MatchResult(tuple(zip(rows.tolist(), cols.tolist())), total)

    if objective != "bottleneck":
        raise ValueError(f"unknown objective {objective!r}")

    levels = np.unique(M[np.isfinite(M)])
    if levels.size == 0:
        raise InfeasibleError("all entries are infinite")
    lo, hi = 0, levels.size - 1
    if _matching_at(M, levels[hi]) is None:
        raise InfeasibleError("no perfect matching avoids infinite entries")
    while lo < hi:
        mid = (lo + hi) // 2
        if _matching_at(M, levels[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    cols = _matching_at(M, levels[lo])
    pairs = tuple((int(c), j) for j, c in enumerate(cols))
    pairs = tuple(sorted(pairs))
    return MatchResult(pairs, float(levels[lo]))


def _matching_at(M: np.ndarray, threshold: float):
    graph = csr_matrix(M <= threshold)
    match = maximum_bipartite_matching(graph, perm_type="row")
    if (match == -1).any():
        return None
    return match


def _aggregate(costs: Sequence[float], p: float) -> float:
    if math.isinf(p):
        return max(costs, default=0.0)
    if any(math.isinf(c) for c in costs):
        return math.inf
    return math.fsum(c ** p for c in costs) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Morse-set distance


_ORIGIN = (0.0, 0.0)


def mstar_pairs(K: MorseSet, L: MorseSet) -> list[tuple[tuple, tuple]]:
    """Rank matching: i-th maxima and j-th minima of each set are paired;
    the shorter lists are padded with the origin (0, 0)."""
    out = []
    for left, right in ((K.maxima, L.maxima), (K.minima, L.minima)):
        n = max(len(left), len(right))
        for i in range(n):
            a = left[i].coords() if i < len(left) else _ORIGIN
            b = right[i].coords() if i < len(right) else _ORIGIN
            out.append((a, b))
    return out


def morse_distance(K: MorseSet, L: MorseSet, p: float = 2.0) -> float:
    """p-aggregated sup-norm cost of the rank matching between two Morse sets."""
    p = _check_p(p)
    require_valid(K)
    require_valid(L)
    costs = [sup_dist(a, b) for a, b in mstar_pairs(K, L)]
    return _aggregate(costs, p)


# ---------------------------------------------------------------------------
# Wasserstein / bottleneck on transform outputs


def _pt_points(s: PTSet) -> tuple[list[tuple], list[float]]:
    # only the peak features carry matched mass; the diagonal-plane points
    # have zero persistence and act as the slack locus
    pts, slack = [], []
    for f in s.features:
        pts.append((f.x, f.birth, f.death))
        slack.append(math.inf if math.isinf(f.persistence)
                     else (f.birth - f.death) / 2.0)
    return pts, slack


def _rpt_points(s: RPTSet) -> tuple[list[tuple], list[float]]:
    pts = [(f.x, f.persistence) for f in s.features]
    slack = [f.persistence for f in s.features]
    return pts, slack


def _pd_points(s: PDSet) -> tuple[list[tuple], list[float]]:
    pts, slack = [], []
    for q in s.points:
        pts.append((q.birth, q.death))
        slack.append(math.inf if math.isinf(q.birth) or math.isinf(q.death)
                     else (q.birth - q.death) / 2.0)
    return pts, slack


_POINTERS = {PTSet: _pt_points, RPTSet: _rpt_points, PDSet: _pd_points}

TransformSet = Union[PTSet, RPTSet, PDSet]


def wasserstein(A: TransformSet, B: TransformSet, p: float = 2.0,
                slack: str = DIAGONAL) -> float:
    """Minimum p-aggregated sup-norm matching cost between two transform
    outputs of the same kind.

    ``slack="diagonal"`` lets unmatched points pay their distance to the
    nearest zero-persistence representative; ``slack="pad-origin"`` pads the
    smaller multiset with the all-zero point, mirroring the rank matching's
    padding.
    """
    p = _check_p(p)
    if type(A) is not type(B):
        raise KindMismatchError(
            f"cannot compare {type(A).__name__} with {type(B).__name__}")
    if slack not in (DIAGONAL, PAD_ORIGIN):
        raise ValueError(f"unknown slack policy {slack!r}")
    to_points = _POINTERS[type(A)]
    pa, sa = to_points(A)
    pb, sb = to_points(B)
    if not pa and not pb:
        return 0.0

    if slack == PAD_ORIGIN:
        dim = len(pa[0]) if pa else len(pb[0])
        zero = (0.0,) * dim
        n = max(len(pa), len(pb))
        pa = pa + [zero] * (n - len(pa))
        pb = pb + [zero] * (n - len(pb))
        raw = np.array([[sup_dist(a, b) for b in pb] for a in pa])
    else:
        n, m = len(pa), len(pb)
        size = n + m
        raw = np.full((size, size), math.inf)
        for i in range(n):
            for j in range(m):
                raw[i, j] = sup_dist(pa[i], pb[j])
        for i in range(n):
            raw[i, m + i] = sa[i]
        for j in range(m):
            raw[n + j, j] = sb[j]
        raw[n:, m:] = 0.0

    try:
        if math.isinf(p):
            result = solve_assignment(raw, objective="bottleneck")
            cost = result.cost
        else:
            result = solve_assignment(raw ** p, objective="sum")
            cost = result.cost ** (1.0 / p)
    except InfeasibleError:
        raise UnmatchableInfinityError(
            "an infinite-coordinate point has no admissible partner") from None
    if math.isinf(cost):
        raise UnmatchableInfinityError(
            "an infinite-coordinate point has no admissible partner")
    return float(cost)
