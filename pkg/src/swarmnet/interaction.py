"""Time-windowed interaction networks and the diversity metric built on them.

From a best-neighbor log the weighted network at iteration t with window
t_w counts, for every unordered pair {i, j}, how many of the last t_w
iterations had i select j plus how many had j select i:

    I_ij(t) = sum over t' in (t - t_w, t] of [i == n_j(t')] + [j == n_i(t')]

so the maximum weight is 2*t_w (mutual selection throughout the window)
and the total weight is always |S| * t_w (one selection event per particle
per windowed iteration).

Destruction analysis removes edges whose normalized weight I_ij/(2*t_w)
falls strictly below a rising threshold and tracks the component count.
The area A_tw is the mean component count over the 2*t_w + 1 threshold
quanta; interaction diversity aggregates areas over a window set T:

    ID(t) = 1 - (1 / (|S| * |T|)) * sum over t_w in T of A_tw(t)

High ID means many coexisting information flows (slow shattering); low ID
means the swarm funnels through few flows (fast shattering).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .pso import InteractionLog


class DisjointSet:
    """Union-find over n elements with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


@dataclass(frozen=True)
class WeightedNetwork:
    """Symmetric integer-weight graph over the swarm for one (t, t_w)."""

    n: int
    t_w: int
    weights: np.ndarray  # (n, n) symmetric, zero diagonal

    def __post_init__(self):
        self.weights.setflags(write=False)

    @property
    def max_weight(self) -> int:
        """Largest representable weight: mutual selection all window long."""
        return 2 * self.t_w

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays (i, j, weight) for the pairs i < j with positive weight."""
        iu, ju = np.triu_indices(self.n, k=1)
        w = self.weights[iu, ju]
        keep = w > 0
        return iu[keep], ju[keep], w[keep]

    def total_weight(self) -> int:
        return int(self.weights.sum()) // 2


@dataclass(frozen=True)
class DestructionCurve:
    """Component counts as edges below each normalized threshold drop out."""

    thresholds: np.ndarray
    components: np.ndarray

    def __post_init__(self):
        self.thresholds.setflags(write=False)
        self.components.setflags(write=False)


@dataclass(frozen=True)
class DiversityReport:
    """Per-window destruction areas and the diversity value they yield."""

    window_set: tuple[int, ...]
    areas: tuple[float, ...]
    id_value: float


def build_network(log: InteractionLog, t: int, t_w: int) -> WeightedNetwork:
    """Interaction network at iteration t over the last t_w iterations."""
    if not 1 <= t_w <= t:
        raise InputError(f"window t_w={t_w} must satisfy 1 <= t_w <= t={t}")
    if t > len(log):
        raise InputError(f"iteration t={t} exceeds log length {len(log)}")
    n = log.n
    window = log.choices[t - t_w:t]
    counts = np.zeros(n * n, dtype=np.int64)
    # counts[a*n + b] = number of windowed iterations where a selected b
    flat = (np.arange(n) * n)[None, :] + window
    np.add.at(counts, flat.ravel(), 1)
    directed = counts.reshape(n, n)
    return WeightedNetwork(n, t_w, directed + directed.T)


def count_components(net: WeightedNetwork, min_normalized_weight: float) -> int:
    """Connected components keeping only edges with I_ij/(2*t_w) >= threshold.

    Isolated nodes count as components of size one.
    """
    if not 0.0 <= min_normalized_weight <= 1.0:
        raise InputError(
            f"threshold must lie in [0, 1], got {min_normalized_weight}"
        )
    i, j, w = net.edges()
    keep = w / net.max_weight >= min_normalized_weight
    ds = DisjointSet(net.n)
    for a, b in zip(i[keep], j[keep]):
        ds.union(int(a), int(b))
    return ds.components


def destruction_curve(net: WeightedNetwork) -> DestructionCurve:
    """Component counts over the full threshold grid k/(2*t_w), k = 0..2*t_w.

    Every distinct subgraph appears on this grid because weights are
    integers in [0, 2*t_w]. Computed incrementally: edges join the graph in
    descending weight order, so each grid point costs one bucket of unions.
    """
    w_max = net.max_weight
    i, j, w = net.edges()
    order = np.argsort(-w, kind="stable")
    i, j, w = i[order], j[order], w[order]
    counts = np.empty(w_max + 1, dtype=np.int64)
    ds = DisjointSet(net.n)
    pos = 0
    for k in range(w_max, 0, -1):
        while pos < len(w) and w[pos] >= k:
            ds.union(int(i[pos]), int(j[pos]))
            pos += 1
        counts[k] = ds.components
    counts[0] = ds.components  # threshold 0 keeps the same edge set as k=1
    thresholds = np.arange(w_max + 1) / w_max
    return DestructionCurve(thresholds, counts)


def area_under_destruction(curve: DestructionCurve) -> float:
    """Mean component count over the threshold grid; lies in [1, n]."""
    if len(curve.components) == 0:
        raise InputError("destruction curve is empty")
    return float(np.mean(curve.components))


def clip_windows(windows: tuple[int, ...], t: int) -> tuple[int, ...]:
    """Clip each window to the available history, keeping list length."""
    return tuple(min(w, t) for w in windows)


def interaction_diversity(log: InteractionLog, t: int,
                          windows: tuple[int, ...]) -> DiversityReport:
    """ID(t) over the window set: one minus the normalized mean area."""
    if not windows:
        raise InputError("window set must be non-empty")
    for w in windows:
        if not 1 <= w <= t:
            raise InputError(f"window {w} must satisfy 1 <= t_w <= t={t}")
    areas = tuple(
        area_under_destruction(destruction_curve(build_network(log, t, w)))
        for w in windows
    )
    id_value = 1.0 - sum(areas) / (log.n * len(windows))
    return DiversityReport(tuple(windows), areas, id_value)


def diversity_series(log: InteractionLog, windows: tuple[int, ...],
                     stride: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Sample ID at every stride-th iteration, always including the last.

    Windows are clipped to the history available at each sample point, so
    the series is defined from the first iteration onward.
    """
    if stride < 1:
        raise InputError(f"stride must be >= 1, got {stride}")
    total = len(log)
    points = list(range(stride, total + 1, stride))
    if not points or points[-1] != total:
        points.append(total)
    values = np.array([
        interaction_diversity(log, t, clip_windows(windows, t)).id_value
        for t in points
    ])
    return np.array(points, dtype=np.int64), values
