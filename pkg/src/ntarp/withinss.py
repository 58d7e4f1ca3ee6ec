"""Normalized withinss of 1-D point sets.

For a finite set of reals, the normalized withinss ``w`` is the fraction of
the total (population) variance left unexplained by the best binary split:
``w = min_partition SSE / (m * var)``, with ``1 - w`` the coefficient of
determination of the two-cluster indicator.  Optimal binary clusters in 1-D
are intervals, so only the ``m - 1`` sorted-order thresholds need scanning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConstantInputError",
    "SplitResult",
    "optimal_split",
    "between_variance",
    "brute_force_optimal_w",
    "batch_optimal_w",
]

BRUTE_FORCE_MAX = 15


class ConstantInputError(ValueError):
    """Raised for zero-variance input: a constant projection cannot be split."""


@dataclass(frozen=True)
class SplitResult:
    """Outcome of the optimal binary split of a 1-D point set.

    Attributes
    ----------
    w : float
        Normalized withinss in [0, 1]; scale- and shift-invariant.
    explained : float
        Between-cluster variance, in squared data units.
    threshold : float
        Midpoint between the largest left-cluster value and the smallest
        right-cluster value.
    left_size, right_size : int
        Cluster sizes; they sum to the input size.
    mu_left, mu_right : float
        Cluster means.
    r_squared : float
        explained / total variance; equals ``1 - w``.
    """

    w: float
    explained: float
    threshold: float
    left_size: int
    right_size: int
    mu_left: float
    mu_right: float
    r_squared: float


def _as_1d(values) -> np.ndarray:
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        x = x.ravel()
    return x


def optimal_split(values) -> SplitResult:
    """Find the binary threshold split of `values` minimizing normalized withinss.

    Scans all thresholds between strictly distinct sorted values, so equal
    values are never separated.  Among splits of equal quality the one with
    the smallest left cluster wins.  Runs in O(m log m).

    Parameters
    ----------
    values : array-like of shape (m,)
        At least two reals with nonzero empirical variance.

    Returns
    -------
    SplitResult

    Raises
    ------
    ValueError
        If fewer than two values are given.
    ConstantInputError
        If all values are equal (unsplittable constant projection).
    """
    x = _as_1d(values)
    m = x.size
    if m < 2:
        raise ValueError(f"need at least 2 values to split, got {m}")
    if not np.all(np.isfinite(x)):
        raise ValueError("values must be finite")
    xs = np.sort(x, kind="stable")
    lo, hi = xs[0], xs[-1]
    if lo == hi:
        raise ConstantInputError(
            "unsplittable constant projection: all values equal"
        )

    # Center and scale by the range before accumulating, to limit cancellation.
    span = hi - lo
    y = (xs - 0.5 * (lo + hi)) / span

    csum = np.cumsum(y)
    total = csum[-1]
    k = np.arange(1, m, dtype=np.float64)
    mu_l = csum[:-1] / k
    mu_r = (total - csum[:-1]) / (m - k)
    gain = (mu_l - mu_r) ** 2 * (k * (m - k))

    # Thresholds are valid only between strictly distinct sorted values.
    valid = xs[1:] > xs[:-1]
    gain[~valid] = -np.inf
    best = int(np.argmax(gain))  # first max: smallest left cluster wins ties

    left, right = y[: best + 1], y[best + 1 :]
    sse = float(((left - mu_l[best]) ** 2).sum() + ((right - mu_r[best]) ** 2).sum())
    var_y = float(((y - total / m) ** 2).mean())
    w = sse / (m * var_y)
    w = min(max(w, 0.0), 1.0)

    mu_left = float(0.5 * (lo + hi) + span * mu_l[best])
    mu_right = float(0.5 * (lo + hi) + span * mu_r[best])
    left_size = best + 1
    right_size = m - left_size
    return SplitResult(
        w=w,
        explained=between_variance(mu_left, mu_right, left_size, right_size, m),
        threshold=float(0.5 * (xs[best] + xs[best + 1])),
        left_size=left_size,
        right_size=right_size,
        mu_left=mu_left,
        mu_right=mu_right,
        r_squared=1.0 - w,
    )


def between_variance(
    mu_left: float, mu_right: float, left_size: int, right_size: int, m: int
) -> float:
    """Between-cluster variance of a binary partition.

    Equals the variance of the cluster-mean classifier:
    ``(mu_left - mu_right)**2 * left_size * right_size / m**2``.
    """
    if left_size < 1 or right_size < 1 or left_size + right_size != m:
        raise ValueError(
            f"cluster sizes {left_size}+{right_size} must be >= 1 and sum to {m}"
        )
    return (mu_left - mu_right) ** 2 * (left_size * right_size) / (m * m)


def brute_force_optimal_w(values) -> float:
    """Minimum normalized withinss over ALL two-part partitions.

    Exhaustive oracle: considers every partition of the multiset into two
    nonempty clusters, not only threshold splits.  Limited to
    ``2 <= m <= BRUTE_FORCE_MAX`` inputs (2**(m-1) - 1 partitions).
    """
    x = _as_1d(values)
    m = x.size
    if m < 2 or m > BRUTE_FORCE_MAX:
        raise ValueError(f"brute force supports 2 <= m <= {BRUTE_FORCE_MAX}, got {m}")
    var = float(x.var())
    if var == 0.0:
        raise ConstantInputError(
            "unsplittable constant projection: all values equal"
        )

    # Every mask assigns elements 1..m-1; element 0 is pinned to cluster 1,
    # which enumerates each unordered partition exactly once.
    n_masks = 1 << (m - 1)
    bits = (np.arange(n_masks)[:, None] >> np.arange(m - 1)) & 1
    member = np.hstack([np.ones((n_masks, 1), dtype=np.float64), bits.astype(np.float64)])
    member = member[:-1]  # drop the all-in-one-cluster row

    n1 = member.sum(axis=1)
    n2 = m - n1
    s1 = member @ x
    q1 = member @ (x * x)
    total_s = x.sum()
    total_q = float((x * x).sum())
    sse = (q1 - s1 * s1 / n1) + ((total_q - q1) - (total_s - s1) ** 2 / n2)
    w = float(sse.min()) / (m * var)
    return min(max(w, 0.0), 1.0)


def batch_optimal_w(rows) -> np.ndarray:
    """Normalized withinss of the optimal threshold split, one value per row.

    Vectorized companion of :func:`optimal_split` for Monte Carlo work;
    agrees with the scalar path to floating tolerance.

    Parameters
    ----------
    rows : array-like of shape (trials, m)

    Returns
    -------
    ndarray of shape (trials,)
    """
    x = np.asarray(rows, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] < 2:
        raise ValueError("expected a 2-D array with at least 2 columns")
    n = x.shape[1]
    xs = np.sort(x, axis=1)
    if np.any(xs[:, 0] == xs[:, -1]):
        raise ConstantInputError("constant row encountered")

    csum = np.cumsum(xs, axis=1)
    csq = np.cumsum(xs * xs, axis=1)
    k = np.arange(1, n, dtype=np.float64)
    s_l = csum[:, :-1]
    s_r = csum[:, -1:] - s_l
    sse = (csq[:, :-1] - s_l * s_l / k) + (csq[:, -1:] - csq[:, :-1] - s_r * s_r / (n - k))

    tie = xs[:, 1:] == xs[:, :-1]
    if tie.any():
        sse[tie] = np.inf
    mean = csum[:, -1] / n
    var = ((xs - mean[:, None]) ** 2).mean(axis=1)
    w = sse.min(axis=1) / (n * var)
    return np.clip(w, 0.0, 1.0)
