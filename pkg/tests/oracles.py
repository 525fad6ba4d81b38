"""Independent reference implementations used to verify pipeline results.

These are deliberately written in a different style from the library code
(exhaustive enumeration, plain double loops) so a shared bug is unlikely:
they favor obviousness over speed and are only feasible at test sizes.
"""

import math

import numpy as np


def exhaustive_min_inertia(X, k: int) -> float:
    """Minimum within-cluster sum of squares over ALL label assignments.

    Enumerates every assignment of n samples to k cluster ids (k^n label
    vectors, feasible for n <= 12, k <= 3) and minimizes
    sum_i ||x_i||^2 - sum_c ||S_c||^2 / m_c, which equals the within-cluster
    SSD for that assignment. Assignments that leave some ids unused are
    included, so this is the optimum over at-most-k clusters; splitting any
    cluster with two distinct points strictly reduces SSD, so for data with
    >= k distinct points it equals the exactly-k optimum.
    """
    X = np.asarray(X, dtype=float)
    n = len(X)
    total = float((X ** 2).sum())
    codes = np.arange(k ** n, dtype=np.int64)
    digits = np.empty((k ** n, n), dtype=np.int8)
    for j in range(n):
        digits[:, j] = (codes // (k ** j)) % k

    reduction = np.zeros(k ** n)
    for c in range(k):
        member = digits == c
        counts = member.sum(axis=1).astype(float)
        norm_sq = np.zeros(k ** n)
        for dim in range(X.shape[1]):
            norm_sq += (member @ X[:, dim]) ** 2
        occupied = counts > 0
        reduction[occupied] += norm_sq[occupied] / counts[occupied]
    return float((total - reduction).min())


def naive_silhouette(X, labels) -> list:
    """Textbook O(n^2) silhouette, plain Python floats throughout."""
    X = [[float(v) for v in row] for row in np.asarray(X)]
    labels = [int(v) for v in np.asarray(labels)]
    n = len(X)
    dim = len(X[0])
    cluster_members: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        cluster_members.setdefault(lab, []).append(i)

    def dist(i, j):
        total = 0.0
        for t in range(dim):
            diff = X[i][t] - X[j][t]
            total += diff * diff
        return math.sqrt(total)

    scores = []
    for i in range(n):
        own = labels[i]
        same = [j for j in cluster_members[own] if j != i]
        if not same:
            scores.append(0.0)
            continue
        a = sum(dist(i, j) for j in same) / len(same)
        b = None
        for lab, members in cluster_members.items():
            if lab == own:
                continue
            mean = sum(dist(i, j) for j in members) / len(members)
            if b is None or mean < b:
                b = mean
        denom = max(a, b)
        scores.append(0.0 if denom == 0 else (b - a) / denom)
    return scores


def naive_adjusted_rand_index(labels_a, labels_b) -> float:
    """Pair-counting ARI: classify every sample pair, then chance-correct."""
    a = [int(v) for v in np.asarray(labels_a)]
    b = [int(v) for v in np.asarray(labels_b)]
    n = len(a)
    together_both = together_a_only = together_b_only = apart_both = 0
    for i in range(n):
        for j in range(i + 1, n):
            same_a = a[i] == a[j]
            same_b = b[i] == b[j]
            if same_a and same_b:
                together_both += 1
            elif same_a:
                together_a_only += 1
            elif same_b:
                together_b_only += 1
            else:
                apart_both += 1
    index = together_both
    sum_a = together_both + together_a_only
    sum_b = together_both + together_b_only
    total = n * (n - 1) // 2
    expected = sum_a * sum_b / total
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


def lloyd_reference_inertia(X, labels) -> float:
    """Within-cluster SSD of a given assignment, computed the slow way."""
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    total = 0.0
    for c in np.unique(labels):
        members = X[labels == c]
        centroid = members.mean(axis=0)
        total += float(((members - centroid) ** 2).sum())
    return total
