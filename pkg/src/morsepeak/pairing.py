"""Elder-rule peak pairing and the transforms derived from it.

Two interchangeable pairing routines are provided: :func:`pair` sweeps the
upper levelsets with a union-find over the alternating critical sequence,
while :func:`pair_recursive` realizes the region-splitting recursion.  Both
produce the same injective map from maxima to death minima (the surviving
peak of each component is marked essential, death value minus infinity).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import (CriticalPoint, Kind, MorseSet, require_valid)


def elder_key(p: CriticalPoint) -> tuple[float, float]:
    # Smaller key = elder: higher value first, position breaks ties leftward.
    return (-p.y, p.x)


@dataclass(frozen=True)
class PairingEntry:
    peak: CriticalPoint
    death: Optional[CriticalPoint]  # None marks the essential peak

    @property
    def essential(self) -> bool:
        return self.death is None

    @property
    def death_value(self) -> float:
        return -math.inf if self.death is None else self.death.y

    @property
    def persistence(self) -> float:
        return self.peak.y - self.death_value


@dataclass(frozen=True)
class Pairing:
    entries: tuple[PairingEntry, ...]

    def as_dict(self) -> dict[CriticalPoint, Optional[CriticalPoint]]:
        return {e.peak: e.death for e in self.entries}


def pair(ms: MorseSet) -> Pairing:
    """Elder-rule pairing via a union-find sweep over the critical sequence.

    Points are activated from the top down; every interior minimum merges the
    components of its two neighboring maxima and kills the younger of the two
    representative peaks.
    """
    require_valid(ms)
    seq = ms.points_by_x()
    n = len(seq)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    elder = {i: i for i in range(n) if seq[i].kind is Kind.MAX}
    death: dict[int, CriticalPoint] = {}
    # maxima are processed before minima at equal height, so both neighbors of
    # an interior minimum are active when it is reached
    order = sorted(range(n),
                   key=lambda i: (-seq[i].y,
                                  0 if seq[i].kind is Kind.MAX else 1,
                                  seq[i].x))
    for i in order:
        if seq[i].kind is Kind.MIN and 0 < i < n - 1:
            left, right = find(i - 1), find(i + 1)
            if elder_key(seq[elder[left]]) <= elder_key(seq[elder[right]]):
                old, young = left, right
            else:
                old, young = right, left
            death[elder[young]] = seq[i]
            parent[young] = old

    index_of = {p: i for i, p in enumerate(seq)}
    entries = tuple(PairingEntry(m, death.get(index_of[m])) for m in ms.maxima)
    return Pairing(entries)


def pair_recursive(ms: MorseSet) -> Pairing:
    """Elder-rule pairing via region splitting.

    Pop the global maximum (essential), split the remaining maxima into the
    regions left and right of it, then repeatedly pop each region's top peak
    and assign it the lowest minimum strictly between that peak and the region
    edge shared with its higher neighbor.  Implemented with an explicit stack;
    the emitted pairs do not depend on traversal order.
    """
    require_valid(ms)
    if not ms.maxima:
        return Pairing(())
    minima = sorted(ms.minima, key=CriticalPoint.colex_key)
    maxima = sorted(ms.maxima, key=elder_key)
    death: dict[CriticalPoint, Optional[CriticalPoint]] = {}

    top = maxima[0]
    death[top] = None
    rest = maxima[1:]
    a, b = ms.domain
    # region edges seeded from the domain boundary so boundary-adjacent maxima
    # are never excluded; each frame is (outer edge, shared higher edge)
    stack = [(a, top.x, [k for k in rest if k.x < top.x], minima),
             (b, top.x, [k for k in rest if k.x > top.x], minima)]
    while stack:
        start, end, peaks, mins = stack.pop()
        lo, hi = (start, end) if start <= end else (end, start)
        peaks = [k for k in peaks if lo <= k.x <= hi]
        if not peaks:
            continue
        peaks.sort(key=elder_key)
        region_top = peaks.pop(0)
        stack.append((start, region_top.x, peaks, mins))
        wlo, whi = ((region_top.x, end) if region_top.x <= end
                    else (end, region_top.x))
        window = [m for m in mins if wlo < m.x < whi]
        saddle = window.pop(0)  # lowest separating minimum
        death[region_top] = saddle
        stack.append((saddle.x, region_top.x, peaks, window))
        stack.append((saddle.x, end, peaks, window))

    entries = tuple(PairingEntry(m, death[m]) for m in ms.maxima)
    return Pairing(entries)


# ---------------------------------------------------------------------------
# Transforms


@dataclass(frozen=True)
class PTFeature:
    x: float
    birth: float
    death: float

    @property
    def persistence(self) -> float:
        return self.birth - self.death


@dataclass(frozen=True)
class PTSet:
    features: tuple[PTFeature, ...]
    diagonal: tuple[PTFeature, ...]

    def to_json_dict(self) -> dict:
        return {
            "features": [[f.x, _enc(f.birth), _enc(f.death)] for f in self.features],
            "diagonal": [[f.x, f.birth] for f in self.diagonal],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PTSet":
        feats = tuple(PTFeature(x, _dec(b, math.inf), _dec(dd, -math.inf))
                      for x, b, dd in d["features"])
        diag = tuple(PTFeature(x, y, y) for x, y in d["diagonal"])
        return cls(feats, diag)


@dataclass(frozen=True)
class RPTFeature:
    x: float
    persistence: float


@dataclass(frozen=True)
class RPTSet:
    features: tuple[RPTFeature, ...]

    def to_json_dict(self) -> dict:
        return {"features": [[f.x, _enc(f.persistence)] for f in self.features]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "RPTSet":
        return cls(tuple(RPTFeature(x, _dec(p, math.inf)) for x, p in d["features"]))


@dataclass(frozen=True)
class PDPoint:
    birth: float
    death: float


@dataclass(frozen=True)
class PDSet:
    points: tuple[PDPoint, ...]

    def to_json_dict(self) -> dict:
        return {"points": [[_enc(p.birth), _enc(p.death)] for p in self.points]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "PDSet":
        return cls(tuple(PDPoint(_dec(b, math.inf), _dec(dd, -math.inf))
                         for b, dd in d["points"]))


def _enc(v: float):
    # JSON schema encodes the infinite values as null
    return None if math.isinf(v) else v


def _dec(v, inf_as: float) -> float:
    return inf_as if v is None else float(v)


def _feature_sort_key(f) -> tuple[float, float]:
    return (-f.persistence, f.x)


def persistence_transformation(ms: MorseSet) -> PTSet:
    """Map each maximum to (position, birth, death); minima land on the
    diagonal plane.  Features are sorted by descending persistence."""
    pr = pair(ms)
    feats = sorted((PTFeature(e.peak.x, e.peak.y, e.death_value)
                    for e in pr.entries), key=_feature_sort_key)
    diag = tuple(PTFeature(m.x, m.y, m.y) for m in ms.minima)
    return PTSet(tuple(feats), diag)


def reduced_persistence_transformation(ms: MorseSet,
                                       clip_essential: bool = False) -> RPTSet:
    """Map each maximum to (position, persistence).

    The essential peak gets infinite persistence unless ``clip_essential`` is
    set, in which case its death is clipped to the component's global minimum
    value so the output stays finite.
    """
    pr = pair(ms)
    floor = ms.global_min_value() if clip_essential and pr.entries else None
    feats = []
    for e in pr.entries:
        if e.essential and floor is not None:
            feats.append(RPTFeature(e.peak.x, e.peak.y - floor))
        else:
            feats.append(RPTFeature(e.peak.x, e.persistence))
    feats.sort(key=_feature_sort_key)
    return RPTSet(tuple(feats))


def to_persistence_diagram(pt: PTSet) -> PDSet:
    """Forget positions: project features to (birth, death) pairs.  Diagonal
    points are omitted; they form the diagram's diagonal."""
    pts = sorted((PDPoint(f.birth, f.death) for f in pt.features),
                 key=lambda p: (-p.birth, -p.death))
    return PDSet(tuple(pts))


def denoise(pt: PTSet, tau: float) -> PTSet:
    """Keep features with persistence >= tau; drop the diagonal when tau > 0."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    feats = tuple(f for f in pt.features if f.persistence >= tau)
    diag = pt.diagonal if tau == 0 else ()
    return PTSet(feats, diag)


def join_pt(parts: Iterable[PTSet]) -> PTSet:
    feats: list[PTFeature] = []
    diag: list[PTFeature] = []
    for p in parts:
        feats.extend(p.features)
        diag.extend(p.diagonal)
    feats.sort(key=_feature_sort_key)
    return PTSet(tuple(feats), tuple(diag))


def join_rpt(parts: Iterable[RPTSet]) -> RPTSet:
    feats: list[RPTFeature] = []
    for p in parts:
        feats.extend(p.features)
    feats.sort(key=_feature_sort_key)
    return RPTSet(tuple(feats))


def join_pd(parts: Iterable[PDSet]) -> PDSet:
    pts: list[PDPoint] = []
    for p in parts:
        pts.extend(p.points)
    pts.sort(key=lambda q: (-q.birth, -q.death))
    return PDSet(tuple(pts))
