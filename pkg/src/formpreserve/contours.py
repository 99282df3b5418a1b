"""Level-curve extraction on regular 2-D fields (marching squares) plus
small geometric helpers for comparing the extracted polylines."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Polyline",
    "marching_squares",
    "hausdorff_distance",
    "fit_centered_conic",
    "fit_circle",
    "fit_parabola_x_of_p",
]


@dataclass(frozen=True)
class Polyline:
    """Ordered contour vertices in (x, p); closed when the chain loops."""

    points: np.ndarray
    closed: bool

    def __len__(self):
        return len(self.points)


def _edge_point(xa, ya, va, xb, yb, vb, level):
    frac = (level - va) / (vb - va)
    return (xa + frac * (xb - xa), ya + frac * (yb - ya))


# segment table: case index (bits A,B,C,D counterclockwise from lower-left)
# -> list of (edge, edge) pairs, edges 0=AB bottom, 1=BC right, 2=CD top, 3=DA left
_SEGMENTS = {
    0: [],
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    5: None,  # saddle, resolved by cell-centre value
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    10: None,  # saddle
    11: [(1, 2)],
    12: [(1, 3)],
    13: [(0, 1)],
    14: [(3, 0)],
    15: [],
}


def marching_squares(x_pts: np.ndarray, p_pts: np.ndarray, values: np.ndarray, level: float):
    """Extract level-set polylines of values[i, j] sampled at (x_pts[i], p_pts[j]).

    Linear interpolation along cell edges; saddle cells are split using the
    cell-centre average.  Segments are stitched into ordered polylines,
    flagged closed when the chain bites its own tail.
    """
    nx, npts = values.shape
    if nx != len(x_pts) or npts != len(p_pts):
        raise ValueError("values shape must be (len(x_pts), len(p_pts))")
    vmin, vmax = float(np.min(values)), float(np.max(values))
    if not (vmin <= level <= vmax):
        return []

    above = values > level
    # visit only cells the contour actually crosses
    crossing = (
        (above[:-1, :-1] != above[1:, :-1])
        | (above[:-1, :-1] != above[1:, 1:])
        | (above[:-1, :-1] != above[:-1, 1:])
    )
    segments = []
    for i, j in np.argwhere(crossing):
        a = above[i, j]
        b = above[i + 1, j]
        c = above[i + 1, j + 1]
        d = above[i, j + 1]
        case = (a << 0) | (b << 1) | (c << 2) | (d << 3)
        if case in (0, 15):
            continue
        va, vb = values[i, j], values[i + 1, j]
        vc, vd = values[i + 1, j + 1], values[i, j + 1]
        xa, xb = x_pts[i], x_pts[i + 1]
        pa, pb = p_pts[j], p_pts[j + 1]
        edge_pts = {}
        if (va > level) != (vb > level):
            edge_pts[0] = _edge_point(xa, pa, va, xb, pa, vb, level)
        if (vb > level) != (vc > level):
            edge_pts[1] = _edge_point(xb, pa, vb, xb, pb, vc, level)
        if (vd > level) != (vc > level):
            edge_pts[2] = _edge_point(xa, pb, vd, xb, pb, vc, level)
        if (va > level) != (vd > level):
            edge_pts[3] = _edge_point(xa, pa, va, xa, pb, vd, level)
        pairs = _SEGMENTS[case]
        if pairs is None:
            centre_above = 0.25 * (va + vb + vc + vd) > level
            if case == 5:
                pairs = [(3, 2), (0, 1)] if centre_above else [(3, 0), (1, 2)]
            else:  # case 10
                pairs = [(3, 0), (1, 2)] if centre_above else [(3, 2), (0, 1)]
        for e1, e2 in pairs:
            segments.append((edge_pts[e1], edge_pts[e2]))

    return _stitch(segments)


def _stitch(segments):
    if not segments:
        return []

    def key(pt):
        return (round(pt[0], 9), round(pt[1], 9))

    links = {}
    for idx, (p1, p2) in enumerate(segments):
        links.setdefault(key(p1), []).append((idx, 0))
        links.setdefault(key(p2), []).append((idx, 1))

    used = [False] * len(segments)
    curves = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        chain = [segments[start][0], segments[start][1]]
        # grow forward, then backward
        for direction in (1, 0):
            while True:
                endpoint = chain[-1] if direction == 1 else chain[0]
                candidates = [
                    (idx, end)
                    for idx, end in links.get(key(endpoint), [])
                    if not used[idx]
                ]
                if not candidates:
                    break
                idx, end = candidates[0]
                used[idx] = True
                nxt = segments[idx][1 - end]
                if direction == 1:
                    chain.append(nxt)
                else:
                    chain.insert(0, nxt)
        closed = key(chain[0]) == key(chain[-1]) and len(chain) > 3
        pts = np.asarray(chain[:-1] if closed else chain, dtype=float)
        curves.append(Polyline(points=pts, closed=closed))
    curves.sort(key=lambda c: (-len(c.points), c.points[0, 0], c.points[0, 1]))
    return curves


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric vertex-based Hausdorff distance between two point sets."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
    return float(np.sqrt(max(d2.min(axis=1).max(), d2.min(axis=0).max())))


def fit_centered_conic(points: np.ndarray):
    """Least-squares (a, b, c) with a x^2 + b x p + c p^2 = 1 through the points."""
    pts = np.asarray(points, dtype=float)
    design = np.column_stack([pts[:, 0] ** 2, pts[:, 0] * pts[:, 1], pts[:, 1] ** 2])
    coeffs, *_ = np.linalg.lstsq(design, np.ones(len(pts)), rcond=None)
    return tuple(float(c) for c in coeffs)


def fit_circle(points: np.ndarray):
    """Algebraic circle fit; returns (centre_x, centre_p, radius)."""
    pts = np.asarray(points, dtype=float)
    x, p = pts[:, 0], pts[:, 1]
    design = np.column_stack([2 * x, 2 * p, np.ones(len(pts))])
    sol, *_ = np.linalg.lstsq(design, x**2 + p**2, rcond=None)
    cx, cp, c0 = sol
    radius = float(np.sqrt(c0 + cx**2 + cp**2))
    return float(cx), float(cp), radius


def fit_parabola_x_of_p(points: np.ndarray):
    """Least-squares x = c0 + c1 p + c2 p^2 through the points; returns (c0, c1, c2, rms)."""
    pts = np.asarray(points, dtype=float)
    p = pts[:, 1]
    design = np.column_stack([np.ones(len(pts)), p, p**2])
    sol, *_ = np.linalg.lstsq(design, pts[:, 0], rcond=None)
    resid = design @ sol - pts[:, 0]
    return float(sol[0]), float(sol[1]), float(sol[2]), float(np.sqrt(np.mean(resid**2)))
