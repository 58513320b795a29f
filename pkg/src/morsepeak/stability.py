"""Randomized harness for the two transform stability inequalities.

Generates valid Morse sets, perturbs them within a sup-norm budget, and
checks that the Wasserstein distance between the transforms is bounded by
the Morse-set distance between the inputs.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import CriticalPoint, Kind, MorseSet, validate
from .metrics import PAD_ORIGIN, morse_distance, wasserstein
from .pairing import persistence_transformation, reduced_persistence_transformation

ABS_TOL = 1e-9
REL_TOL = 1e-7


@dataclass(frozen=True)
class GenParams:
    peak_count_range: tuple[int, int] = (1, 10)
    domain: tuple[float, float] = (0.0, 100.0)
    height_range: tuple[float, float] = (0.0, 10.0)
    seed: int = 0


def random_morse_set(params: GenParams) -> MorseSet:
    """Deterministic-in-seed generator of valid Morse sets.

    Produces boundary minima and alternating interior extrema; minima draw
    from the lower half of the height range and maxima from the upper half,
    which keeps the alternation strict.
    """
    lo_k, hi_k = params.peak_count_range
    if not (1 <= lo_k <= hi_k):
        raise ValueError("peak_count_range must be a nonempty range of ints >= 1")
    a, b = params.domain
    ylo, yhi = params.height_range
    if not (a < b and ylo < yhi):
        raise ValueError("domain and height_range must be nondegenerate")
    rng = np.random.default_rng(params.seed)
    k = int(rng.integers(lo_k, hi_k + 1))
    n_interior = 2 * k - 1
    while True:
        xs = np.sort(rng.uniform(a, b, n_interior))
        if (np.unique(xs).size == n_interior
                and (n_interior == 0 or (xs[0] > a and xs[-1] < b))):
            break
    positions = np.concatenate(([a], xs, [b]))
    mid = 0.5 * (ylo + yhi)
    heights = np.empty(2 * k + 1)
    heights[0::2] = rng.uniform(ylo, mid, k + 1)
    heights[1::2] = rng.uniform(mid, yhi, k)
    maxima = [(positions[i], heights[i]) for i in range(1, 2 * k + 1, 2)]
    minima = [(positions[i], heights[i]) for i in range(0, 2 * k + 1, 2)]
    return MorseSet.build(maxima, minima, (a, b))


@dataclass(frozen=True)
class PerturbInfo:
    shrink: float  # fraction of the requested displacement actually applied


def perturb(K: MorseSet, epsilon: float, seed: int) -> MorseSet:
    return perturb_with_info(K, epsilon, seed)[0]


def perturb_with_info(K: MorseSet, epsilon: float,
                      seed: int) -> tuple[MorseSet, PerturbInfo]:
    """Move every critical point by at most ``epsilon`` in sup-norm.

    Candidate displacements are halved until the result keeps the positional
    order and passes validation, so cardinalities and structure survive; the
    applied fraction is reported.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    pts = K.points_by_x()
    if epsilon == 0 or not pts:
        return K, PerturbInfo(0.0)
    rng = np.random.default_rng(seed)
    dx = rng.uniform(-epsilon, epsilon, len(pts))
    dy = rng.uniform(-epsilon, epsilon, len(pts))
    factor = 1.0
    while factor > 1e-12:
        moved = [CriticalPoint(p.x + factor * dx[i], p.y + factor * dy[i], p.kind)
                 for i, p in enumerate(pts)]
        if all(moved[i].x < moved[i + 1].x for i in range(len(moved) - 1)):
            cand = MorseSet.build(
                [p for p in moved if p.kind is Kind.MAX],
                [p for p in moved if p.kind is Kind.MIN],
                (moved[0].x, moved[-1].x))
            if validate(cand).ok:
                return cand, PerturbInfo(factor)
        factor *= 0.5
    return K, PerturbInfo(0.0)


@dataclass(frozen=True)
class StabilityReport:
    lhs: float
    rhs: float
    ratio: float
    holds: bool
    p: float
    slack: str
    transform: str
    seed: Optional[int] = None
    equal_cardinality: bool = True

    def to_json_dict(self) -> dict:
        return {
            "lhs": _enc(self.lhs), "rhs": _enc(self.rhs), "ratio": _enc(self.ratio),
            "holds": self.holds, "p": _enc(self.p), "slack": self.slack,
            "transform": self.transform, "seed": self.seed,
            "equal_cardinality": self.equal_cardinality,
        }


def _enc(v: float):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _tolerance(lhs: float, rhs: float) -> float:
    scale = max(abs(x) for x in (lhs, rhs, 0.0) if not math.isinf(x))
    return max(ABS_TOL, REL_TOL * scale)


def check_stability(K: MorseSet, L: MorseSet, p: float,
                    transform: str = "pt", slack: str = PAD_ORIGIN,
                    seed: Optional[int] = None) -> StabilityReport:
    """Compare d_Wp between the transforms (lhs) against the Morse-set
    distance between the inputs (rhs)."""
    if transform == "pt":
        lhs = wasserstein(persistence_transformation(K),
                          persistence_transformation(L), p, slack)
    elif transform == "rpt":
        lhs = wasserstein(reduced_persistence_transformation(K),
                          reduced_persistence_transformation(L), p, slack)
    else:
        raise ValueError(f"unknown transform {transform!r}")
    lhs = float(lhs)
    rhs = float(morse_distance(K, L, p))
    if math.isinf(rhs):
        holds = True
        ratio = 0.0 if not math.isinf(lhs) else 1.0
    else:
        holds = bool(lhs <= rhs + _tolerance(lhs, rhs))
        ratio = lhs / rhs if rhs > 0 else (0.0 if holds else math.inf)
    equal = (K.kappa_plus == L.kappa_plus and K.kappa_minus == L.kappa_minus)
    return StabilityReport(lhs, rhs, ratio, holds, p, slack, transform,
                           seed, equal)


def _trial(params: GenParams, index: int, epsilon: float,
           ps: Sequence[float], transforms: Sequence[str],
           slack: str) -> list[StabilityReport]:
    seed_k = params.seed * 1_000_003 + 2 * index
    K = random_morse_set(replace(params, seed=seed_k))
    L = perturb(K, epsilon, seed_k + 1)
    return [check_stability(K, L, p, transform, slack, seed=seed_k)
            for transform in transforms for p in ps]


def run_trials(params: GenParams, trials: int, epsilon: float = 0.1,
               ps: Sequence[float] = (1.0, 2.0, math.inf),
               transforms: Sequence[str] = ("pt", "rpt"),
               slack: str = PAD_ORIGIN,
               fixture_dir: Optional[str] = None,
               max_workers: int = 1) -> list[StabilityReport]:
    """Run perturbation trials; optionally persist failing pairs as fixtures.

    Results are deterministic in ``params.seed`` and independent of
    ``max_workers``; reports come back in trial order.
    """
    if max_workers > 1 and trials > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            batches = list(pool.map(
                _trial, [params] * trials, range(trials),
                [epsilon] * trials, [ps] * trials, [transforms] * trials,
                [slack] * trials, chunksize=max(1, trials // (4 * max_workers))))
    else:
        batches = [_trial(params, i, epsilon, ps, transforms, slack)
                   for i in range(trials)]
    reports = [r for batch in batches for r in batch]
    if fixture_dir is not None:
        failing = [r for r in reports if not r.holds]
        if failing:
            _persist_failures(params, epsilon, failing, fixture_dir)
    return reports


def _persist_failures(params: GenParams, epsilon: float,
                      failing: Iterable[StabilityReport],
                      fixture_dir: str) -> None:
    out = Path(fixture_dir)
    out.mkdir(parents=True, exist_ok=True)
    for r in failing:
        K = random_morse_set(replace(params, seed=r.seed))
        L = perturb(K, epsilon, r.seed + 1)
        K, L = shrink_counterexample(K, L, r.p, r.transform, r.slack)
        name = f"stability_{r.transform}_p{r.p}_{r.slack}_{r.seed}.json"
        payload = {
            "K": K.to_json_dict(), "L": L.to_json_dict(),
            "p": _enc(r.p), "transform": r.transform, "slack": r.slack,
        }
        (out / name).write_text(json.dumps(payload, sort_keys=True, indent=1))


def shrink_counterexample(K: MorseSet, L: MorseSet, p: float,
                          transform: str, slack: str) -> tuple[MorseSet, MorseSet]:
    """Best-effort reduction of a failing pair: interpolate L toward K while
    the violation persists, then try dropping rank-matched peak/saddle pairs."""
    def violates(a: MorseSet, b: MorseSet) -> bool:
        try:
            return not check_stability(a, b, p, transform, slack).holds
        except Exception:
            return False

    if not violates(K, L):
        return K, L
    if (K.kappa_plus == L.kappa_plus and K.kappa_minus == L.kappa_minus):
        lo, hi = 0.0, 1.0  # fraction of the displacement kept
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            cand = _lerp(K, L, mid)
            if cand is not None and violates(K, cand):
                hi = mid
            else:
                lo = mid
        cand = _lerp(K, L, hi)
        if cand is not None and violates(K, cand):
            L = cand
    for i in range(K.kappa_plus - 1, -1, -1):
        ka, la = _drop_peak(K, i), _drop_peak(L, i)
        if ka is not None and la is not None and violates(ka, la):
            K, L = ka, la
    return K, L


def _lerp(K: MorseSet, L: MorseSet, t: float) -> Optional[MorseSet]:
    def mix(ps, qs, kind):
        return [CriticalPoint((1 - t) * p.x + t * q.x,
                              (1 - t) * p.y + t * q.y, kind)
                for p, q in zip(ps, qs)]
    cand = MorseSet.build(mix(K.maxima, L.maxima, Kind.MAX),
                          mix(K.minima, L.minima, Kind.MIN))
    return cand if validate(cand).ok else None


def _drop_peak(ms: MorseSet, i: int) -> Optional[MorseSet]:
    if not (0 <= i < ms.kappa_plus):
        return None
    peak = ms.maxima[i]
    seq = ms.points_by_x()
    pos = seq.index(peak)
    if pos in (0, len(seq) - 1):
        return None  # boundary peak; removal would break the boundary axiom
    # remove the peak together with its higher adjacent minimum
    left, right = seq[pos - 1], seq[pos + 1]
    victim = left if left.colex_key() >= right.colex_key() else right
    cand = MorseSet.build([m for m in ms.maxima if m is not peak],
                          [m for m in ms.minima if m is not victim],
                          ms.domain)
    return cand if validate(cand).ok else None


def reports_to_json(reports: Sequence[StabilityReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports],
                      sort_keys=True, indent=1)
