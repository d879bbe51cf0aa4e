"""Hausdorff distance between two trees at a fixed resolution.

The depth-n occupied cubes of each tree are sampled on the half-step
lattice (corners, edge midpoints, face centres and cube centres, i.e. all
points of (1/(2 b**n)) Z^d inside the union), and the distance returned is
the exact Hausdorff distance between the two finite samples.  In ambient
dimension 1 that value equals the Hausdorff distance between the interval
unions themselves: the directed suprema are attained at half-integer
breakpoints, all of which belong to the sample.  In higher dimensions it
is a genuine metric on trees either way (the cube-centre points pin down
the occupied set exactly), and deviates from the union distance by at
most half a cube diagonal.

All comparisons run on integer squared distances at denominator
(2 b**n)**2; the square root happens once at the end.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.spatial import cKDTree

from .errors import DepthOutOfRange, MixedParams
from .trees import CodedTree, index_vector


def _half_lattice(tree: CodedTree, n: int) -> np.ndarray:
    """Half-step lattice points of the depth-n cube union, integer
    coordinates at denominator 2 * base**n."""
    dim = tree.params.dim
    pts = set()
    offsets = list(itertools.product((0, 1, 2), repeat=dim))
    for p in tree.level(n):
        xs = index_vector(tree.params, p, n)
        for off in offsets:
            pts.add(tuple(2 * x + o for x, o in zip(xs, off)))
    arr = np.array(sorted(pts), dtype=np.int64)
    return arr.reshape(len(pts), dim)


def _directed_sq(a: np.ndarray, b: np.ndarray) -> int:
    """max over rows of `a` of the squared distance to the nearest row of
    `b`, computed exactly (coordinates are small integers)."""
    if len(b) == 1:
        diffs = a - b[0]
        return int(np.max(np.sum(diffs * diffs, axis=1)))
    kd = cKDTree(b.astype(np.float64))
    dists, idx = kd.query(a.astype(np.float64), k=1)
    # recompute the winning pairs in exact integers: the float query is
    # exact here (integer coords well under 2**26), but keep it airtight
    diffs = a - b[idx]
    sq = np.sum(diffs.astype(object) * diffs.astype(object), axis=1)
    return int(max(sq))


def hausdorff_distance_sq_at_resolution(
    a: CodedTree, b: CodedTree, n: int
) -> tuple[int, int]:
    """Exact squared distance as (numerator, denominator_sqrt):
    the distance is sqrt(num) / den."""
    if a.params != b.params:
        raise MixedParams("trees must share base and dimension")
    if n > min(a.height, b.height):
        raise DepthOutOfRange(f"resolution {n} exceeds a tree height")
    pa = _half_lattice(a, n)
    pb = _half_lattice(b, n)
    sq = max(_directed_sq(pa, pb), _directed_sq(pb, pa))
    return sq, 2 * a.params.base**n


def hausdorff_distance_at_resolution(a: CodedTree, b: CodedTree, n: int) -> float:
    """Symmetric, zero exactly when the depth-n levels coincide."""
    sq, den = hausdorff_distance_sq_at_resolution(a, b, n)
    return math.sqrt(sq) / den
