"""Planar geometry shared by all estimators: distances, line-of-position
systems for trilateration, and bearing-line triangulation.

Positions are 2-vectors ``[x, y]`` in meters. Azimuths are measured
counter-clockwise from the +x axis, in radians (the CLI converts degrees).
"""

from typing import NamedTuple, Sequence

import numpy as np

from .errors import CollinearAnchors, LengthMismatch, ParallelBearings


class LinearSystem(NamedTuple):
    """Stacked line-of-position equations ``A p = b`` for a node position p."""

    A: np.ndarray  # (S-1, 2)
    b: np.ndarray  # (S-1,)


def distance(a, b) -> float:
    """Euclidean distance between two planar points."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def as_anchor_array(anchors) -> np.ndarray:
    """Validate and return anchors as an (S, 2) float array."""
    arr = np.asarray(anchors, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise LengthMismatch(f"anchors must be (S, 2), got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("anchor coordinates must be finite")
    diff = arr[:, None, :] - arr[None, :, :]
    pair_d = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(pair_d, np.inf)
    if np.min(pair_d) == 0.0:
        raise ValueError("two anchors coincide")
    return arr


def build_lop_system(anchors, distances: Sequence[float]) -> LinearSystem:
    """Line-of-position linear system from anchor positions and ranges.

    Each ranging circle ``|p - p_i|^2 = d_i^2`` is differenced against the
    circle of the last anchor, yielding S-1 independent lines:

        2 (p_S - p_i) . p = d_i^2 - d_S^2 + |p_S|^2 - |p_i|^2

    A point satisfying all circle equations exactly satisfies ``A p = b``.

    Raises
    ------
    LengthMismatch
        If ``len(distances) != len(anchors)`` or fewer than 3 anchors.
    CollinearAnchors
        If the anchor layout leaves rank(A) < 2.
    """
    pts = as_anchor_array(anchors)
    d = np.asarray(distances, dtype=float)
    if d.ndim != 1 or d.shape[0] != pts.shape[0]:
        raise LengthMismatch(
            f"{pts.shape[0]} anchors but {d.shape[0]} distances"
        )
    if pts.shape[0] < 3:
        raise LengthMismatch("trilateration needs at least 3 anchors")
    if np.any(d <= 0):
        raise ValueError("distances must be positive")

    ref = pts[-1]
    d_ref = d[-1]
    a_mat = 2.0 * (ref[None, :] - pts[:-1])
    b_vec = (
        d[:-1] ** 2
        - d_ref**2
        + np.sum(ref**2)
        - np.sum(pts[:-1] ** 2, axis=1)
    )
    s = np.linalg.svd(a_mat, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        raise CollinearAnchors("anchors are collinear; LOP system is rank deficient")
    return LinearSystem(A=a_mat, b=b_vec)


def bearing_lines_locate(anchors, azimuths: Sequence[float]) -> np.ndarray:
    """Intersect bearing lines cast from each anchor (triangulation).

    Each anchor contributes the line through itself with direction
    ``(cos az, sin az)``; with more than two bearings the stacked line
    equations are solved in the least-squares sense.

    Raises ``ParallelBearings`` when the line system is rank deficient.
    """
    pts = as_anchor_array(anchors)
    az = np.asarray(azimuths, dtype=float)
    if az.ndim != 1 or az.shape[0] != pts.shape[0]:
        raise LengthMismatch(f"{pts.shape[0]} anchors but {az.shape[0]} bearings")
    if pts.shape[0] < 2:
        raise LengthMismatch("triangulation needs at least 2 bearings")

    # Line through p_i with direction u_i: sin(az) x - cos(az) y = sin(az) x_i - cos(az) y_i
    a_mat = np.column_stack([np.sin(az), -np.cos(az)])
    b_vec = np.sin(az) * pts[:, 0] - np.cos(az) * pts[:, 1]
    s = np.linalg.svd(a_mat, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        raise ParallelBearings("bearing lines are parallel")
    sol, *_ = np.linalg.lstsq(a_mat, b_vec, rcond=None)
    return sol


def bearing_to(origin, target) -> float:
    """Azimuth (radians, CCW from +x) of the ray from ``origin`` to ``target``."""
    origin = np.asarray(origin, dtype=float)
    target = np.asarray(target, dtype=float)
    return float(np.arctan2(target[1] - origin[1], target[0] - origin[0]))
