"""From-scratch K-means with elbow and silhouette diagnostics.

Lloyd iterations with kmeans++ (or random-point) initialization, restarted
from deterministic per-restart seeds; the best restart by final inertia
wins. Randomness comes from numpy's PCG64 (np.random.default_rng), so a
given seed reproduces bit-identical models across runs.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, NonFiniteDataError, NumericError

_INIT_MODES = ("kmeans++", "random-points")


@dataclass(frozen=True)
class KmeansConfig:
    """Clustering controls. k must not exceed the sample count at fit time."""

    k: int
    n_restarts: int = 25
    max_iter: int = 300
    tol: float = 1e-6
    seed: int = 0
    init: str = "kmeans++"

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.n_restarts < 1:
            raise ConfigError(f"n_restarts must be >= 1, got {self.n_restarts}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.tol < 0:
            raise ConfigError(f"tol must be >= 0, got {self.tol}")
        if self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed}")
        if self.init not in _INIT_MODES:
            raise ConfigError(f"init must be one of {_INIT_MODES}, got {self.init!r}")


@dataclass(frozen=True)
class ClusterModel:
    """A fitted clustering: centroids, argmin assignments, and bookkeeping.

    inertia_history records the inertia after every assignment pass of the
    winning restart; it is non-increasing by construction.
    """

    centroids: np.ndarray
    assignments: np.ndarray
    inertia: float
    iterations_run: int
    converged: bool
    seed_used: int
    restart_index: int
    inertia_history: tuple[float, ...]

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


@dataclass(frozen=True)
class KSelectionReport:
    """Per-k diagnostics for choosing the cluster count.

    mean_silhouettes holds NaN where the silhouette is undefined (k = 1 or
    a scan that skipped it). knee_k is None when the scanned range is too
    short for a second difference; knee_low_confidence marks that case and
    flat (all-equal) difference profiles.
    """

    k_values: np.ndarray
    inertias: np.ndarray
    mean_silhouettes: np.ndarray
    knee_k: int | None
    best_silhouette_k: int | None
    knee_low_confidence: bool


def _as_matrix(fm) -> np.ndarray:
    return np.asarray(getattr(fm, "rows", fm), dtype=float)


def _squared_distances(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # Direct (x - c)^2 sums; no cross-term expansion, so tiny distances are
    # computed without cancellation and argmin ties stay exact.
    diff = X[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _assign(X: np.ndarray, centroids: np.ndarray):
    dist2 = _squared_distances(X, centroids)
    labels = np.argmin(dist2, axis=1)  # ties resolve to the lowest cluster id
    return labels, dist2[np.arange(len(X)), labels]


def _assign_with_repair(X: np.ndarray, centroids: np.ndarray):
    """Assign samples, reseeding any empty cluster at the farthest sample.

    Each repair zeroes that sample's distance and reassignment never
    increases any other, so total inertia strictly decreases per round and
    the loop terminates.
    """
    labels, d2 = _assign(X, centroids)
    rounds = 0
    while True:
        counts = np.bincount(labels, minlength=len(centroids))
        empty = np.nonzero(counts == 0)[0]
        if empty.size == 0:
            return labels, d2, centroids
        j = int(empty[0])
        centroids = centroids.copy()
        centroids[j] = X[int(np.argmax(d2))]
        labels, d2 = _assign(X, centroids)
        rounds += 1
        if rounds > len(X) + len(centroids):
            raise NumericError("empty-cluster repair did not terminate")


def _cluster_means(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    counts = np.bincount(labels, minlength=k)
    return sums / counts[:, None]


def _init_centroids(X: np.ndarray, k: int, mode: str, rng: np.random.Generator):
    n = len(X)
    if mode == "random-points":
        return X[rng.choice(n, size=k, replace=False)].copy()
    # kmeans++: D^2-weighted sampling of successive centers.
    centroids = np.empty((k, X.shape[1]))
    centroids[0] = X[int(rng.integers(n))]
    diff = X - centroids[0]
    d2 = np.einsum("nd,nd->n", diff, diff)
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(d2), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        else:
            idx = int(rng.integers(n))
        centroids[j] = X[idx]
        diff = X - centroids[j]
        d2 = np.minimum(d2, np.einsum("nd,nd->n", diff, diff))
    return centroids


def _lloyd(X: np.ndarray, k: int, centroids: np.ndarray, max_iter: int, tol: float):
    labels, d2, centroids = _assign_with_repair(X, centroids)
    inertia = float(d2.sum())
    history = [inertia]
    converged = False
    iterations = 0
    for _ in range(max_iter):
        centroids = _cluster_means(X, labels, k)
        labels, d2, centroids = _assign_with_repair(X, centroids)
        new_inertia = float(d2.sum())
        history.append(new_inertia)
        iterations += 1
        if inertia - new_inertia <= tol * inertia:
            inertia = new_inertia
            converged = True
            break
        inertia = new_inertia
    return centroids, labels, inertia, iterations, converged, history


def kmeans_fit(fm, cfg: KmeansConfig) -> ClusterModel:
    """Best-of-restarts K-means on the feature matrix (or a raw 2-D array).

    Deterministic given (seed, n_restarts): restart r uses the generator
    seeded with seed + r, and ties on final inertia keep the earliest
    restart, so the result is independent of evaluation order.
    """
    X = _as_matrix(fm)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("expected a non-empty 2-D sample matrix")
    if not np.isfinite(X).all():
        raise NonFiniteDataError("feature matrix contains NaN or infinite values")
    if cfg.k > len(X):
        raise ConfigError(f"k={cfg.k} exceeds the {len(X)} available samples")
    n_distinct = np.unique(X, axis=0).shape[0]
    if cfg.k > n_distinct:
        raise ConfigError(f"k={cfg.k} exceeds the {n_distinct} distinct samples")

    best = None
    for r in range(cfg.n_restarts):
        rng = np.random.default_rng(cfg.seed + r)
        centroids = _init_centroids(X, cfg.k, cfg.init, rng)
        result = _lloyd(X, cfg.k, centroids, cfg.max_iter, cfg.tol)
        if best is None or result[2] < best[1][2]:
            best = (r, result)

    r, (centroids, labels, inertia, iterations, converged, history) = best
    return ClusterModel(
        centroids=centroids,
        assignments=labels,
        inertia=inertia,
        iterations_run=iterations,
        converged=converged,
        seed_used=cfg.seed,
        restart_index=r,
        inertia_history=tuple(history),
    )


def silhouette_values(fm, assignments) -> np.ndarray:
    """Per-sample silhouette coefficients (b - a) / max(a, b).

    a is the mean Euclidean distance to own-cluster co-members, b the
    smallest mean distance to another cluster. Members of singleton
    clusters score 0, as do samples where both means are 0.
    """
    X = _as_matrix(fm)
    labels = np.asarray(assignments)
    if len(labels) != len(X):
        raise ValueError("assignments length does not match sample count")
    ids, dense = np.unique(labels, return_inverse=True)
    k = ids.size
    if k < 2:
        raise NumericError("silhouette requires at least 2 clusters")
    n = len(X)
    counts = np.bincount(dense, minlength=k).astype(float)
    onehot = np.zeros((n, k))
    onehot[np.arange(n), dense] = 1.0

    scores = np.empty(n)
    chunk = max(1, min(n, (64 * 2**20) // max(1, n * X.shape[1] * 8)))
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        diff = X[start:stop, None, :] - X[None, :, :]
        dist = np.sqrt(np.einsum("cnd,cnd->cn", diff, diff))
        sums = dist @ onehot
        rows = np.arange(stop - start)
        own = dense[start:stop]
        own_count = counts[own]
        with np.errstate(invalid="ignore", divide="ignore"):
            a = sums[rows, own] / (own_count - 1.0)
            mean_other = sums / counts[None, :]
        mean_other[rows, own] = np.inf
        b = mean_other.min(axis=1)
        denom = np.maximum(a, b)
        s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
        s = np.where(own_count == 1.0, 0.0, s)
        scores[start:stop] = s
    return scores


def mean_silhouette(values) -> float:
    """Arithmetic mean of silhouette coefficients."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("mean_silhouette of an empty sequence")
    return float(values.mean())


def _knee_from_inertias(k_values: np.ndarray, inertias: np.ndarray):
    """Knee as the k with maximum second forward difference (ties -> smaller k)."""
    if len(k_values) < 3:
        return None, True
    second = inertias[:-2] - 2.0 * inertias[1:-1] + inertias[2:]
    knee = int(k_values[1 + int(np.argmax(second))])
    spread = float(second.max() - second.min())
    low_confidence = spread <= 1e-12 * max(1.0, float(np.abs(inertias).max()))
    return knee, low_confidence


def _scan_k(fm, k_min: int, k_max: int, cfg: KmeansConfig, with_silhouette: bool):
    X = _as_matrix(fm)
    if not (1 <= k_min <= k_max <= len(X)):
        raise ConfigError(
            f"need 1 <= k_min <= k_max <= n_samples, got [{k_min}, {k_max}] with n={len(X)}"
        )
    k_values = np.arange(k_min, k_max + 1)
    inertias = np.empty(len(k_values))
    sils = np.full(len(k_values), np.nan)
    for i, k in enumerate(k_values):
        model = kmeans_fit(X, replace(cfg, k=int(k)))
        inertias[i] = model.inertia
        if with_silhouette and k >= 2:
            sils[i] = mean_silhouette(silhouette_values(X, model.assignments))
    knee, low_confidence = _knee_from_inertias(k_values, inertias)
    if with_silhouette and not np.isnan(sils).all():
        best_k = int(k_values[int(np.nanargmax(sils))])  # ties -> smaller k
    else:
        best_k = None
    return KSelectionReport(
        k_values=k_values,
        inertias=inertias,
        mean_silhouettes=sils,
        knee_k=knee,
        best_silhouette_k=best_k,
        knee_low_confidence=low_confidence,
    )


def inertia_curve(fm, k_min: int, k_max: int, cfg: KmeansConfig) -> KSelectionReport:
    """Best-of-restarts inertia per k with the second-difference knee."""
    return _scan_k(fm, k_min, k_max, cfg, with_silhouette=False)


def select_k(fm, k_min: int, k_max: int, cfg: KmeansConfig) -> KSelectionReport:
    """Scan a k range, recording inertia and mean silhouette per k.

    The report recommends best_silhouette_k alongside the elbow knee; the
    caller makes the final call on k.
    """
    return _scan_k(fm, k_min, k_max, cfg, with_silhouette=True)


def adjusted_rand_index(labels_a, labels_b) -> float:
    """Chance-corrected agreement between two partitions of the same samples."""
    a = np.asarray(labels_a).ravel()
    b = np.asarray(labels_b).ravel()
    if len(a) != len(b):
        raise ValueError("partitions must label the same samples")
    n = len(a)
    if n < 2:
        return 1.0
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    ka, kb = ai.max() + 1, bi.max() + 1
    contingency = np.zeros((ka, kb), dtype=np.int64)
    np.add.at(contingency, (ai, bi), 1)

    def comb2(x):
        return int((x * (x - 1) // 2).sum())

    sum_ij = comb2(contingency)
    sum_a = comb2(contingency.sum(axis=1))
    sum_b = comb2(contingency.sum(axis=0))
    total = n * (n - 1) // 2
    expected = sum_a * sum_b / total
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        return 1.0
    return float((sum_ij - expected) / (max_index - expected))


def selection_report_to_csv(report: KSelectionReport) -> str:
    """CSV dump: k,inertia,mean_silhouette,knee_flag (flag marks the knee row)."""
    out = io.StringIO()
    out.write("k,inertia,mean_silhouette,knee_flag\n")
    for i, k in enumerate(report.k_values):
        sil = report.mean_silhouettes[i]
        cells = [
            str(int(k)),
            repr(float(report.inertias[i])),
            "" if np.isnan(sil) else repr(float(sil)),
            str(int(report.knee_k is not None and int(k) == report.knee_k)),
        ]
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def silhouette_table_to_csv(assignments, values, depth=None) -> str:
    """Per-sample silhouettes sorted by cluster, then descending value."""
    labels = np.asarray(assignments)
    values = np.asarray(values, dtype=float)
    order = np.lexsort((-values, labels))
    out = io.StringIO()
    if depth is None:
        out.write("cluster_id,silhouette\n")
        for i in order:
            out.write(f"{int(labels[i])},{float(values[i])!r}\n")
    else:
        depth = np.asarray(depth, dtype=float)
        out.write("cluster_id,silhouette,depth\n")
        for i in order:
            out.write(f"{int(labels[i])},{float(values[i])!r},{float(depth[i])!r}\n")
    return out.getvalue()
