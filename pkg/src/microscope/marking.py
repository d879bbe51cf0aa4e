"""Canonical occupied-cube marking from exact rational material.

The material of a set is presented as a finite union of closed rational
boxes (possibly degenerate: points and faces are boxes of zero width).
A grid cube is occupied when it meets the material, except that material
lying only on an interior grid face is awarded to one side: the side whose
open slab also meets material, or the lower-index side when both open
slabs are empty.  Applied per axis, this reproduces the usual one-sided
coding of boundary points and keeps the tree of a set canonical, so that
isolated face contacts do not spawn spurious twin cubes.

Marking proceeds level by level; a cube is only eligible when its parent
was kept, and a face decision whose preferred side is unavailable falls
back to the available side, so the output is prefix-closed and tidy by
construction (the CodedTree constructor re-validates).
"""

from __future__ import annotations

import bisect
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PointOutOfRange
from .trees import CodedTree, TreeParams, packed_from_index

Box = tuple[tuple[Fraction, ...], tuple[Fraction, ...]]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary expansion
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def make_box(lo, hi) -> Box:
    lo_t = tuple(_to_fraction(v) for v in lo)
    hi_t = tuple(_to_fraction(v) for v in hi)
    if len(lo_t) != len(hi_t):
        raise ValueError("box corner dimensions differ")
    for a, b in zip(lo_t, hi_t):
        if a > b:
            raise ValueError("box has lo > hi")
    return lo_t, hi_t


def point_box(point) -> Box:
    if not isinstance(point, (tuple, list)):
        point = (point,)
    p = tuple(_to_fraction(v) for v in point)
    return p, p


class _Material:
    """Query structure over the box list.

    d = 1 gets a sorted prefix-max index (the heavy consumers are one
    dimensional); higher dimensions fall back to a linear scan, which is
    fine at desk scale.
    """

    def __init__(self, boxes: Sequence[Box], dim: int):
        self.boxes = boxes
        self.dim = dim
        self._los = None
        self._prefix_hi = None
        if dim == 1:
            order = sorted(range(len(boxes)), key=lambda i: boxes[i][0][0])
            self._los = [boxes[i][0][0] for i in order]
            self._prefix_hi = []
            best = None
            for i in order:
                hi = boxes[i][1][0]
                best = hi if best is None or hi > best else best
                self._prefix_hi.append(best)

    def meets_open_slab(
        self, axis: int, lo: Fraction, hi: Fraction, clamp: Box | None
    ) -> bool:
        """Any box with open-interval overlap on `axis` and closed overlap
        with `clamp` on every other axis?"""
        if self.dim == 1:
            idx = bisect.bisect_left(self._los, hi)
            return idx > 0 and self._prefix_hi[idx - 1] > lo
        clo, chi = clamp
        for blo, bhi in self.boxes:
            if not (bhi[axis] > lo and blo[axis] < hi):
                continue
            ok = True
            for l in range(self.dim):
                if l == axis:
                    continue
                if bhi[l] < clo[l] or blo[l] > chi[l]:
                    ok = False
                    break
            if ok:
                return True
        return False


def tree_from_boxes(
    params: TreeParams, boxes: Iterable, depth: int
) -> CodedTree:
    """Canonical depth-`depth` tree of the union of rational boxes.

    `boxes` is an iterable of (lo, hi) corner pairs; corners are sequences
    of exact coordinates.
    """
    normalised = [make_box(lo, hi) for lo, hi in boxes]
    return _mark(params, normalised, depth)


def _mark(params: TreeParams, boxes: list[Box], depth: int) -> CodedTree:
    if not boxes:
        raise ValueError("no material boxes")
    dim = params.dim
    seen = set()
    unique: list[Box] = []
    for box in boxes:
        if len(box[0]) != dim:
            raise ValueError(f"box dimension {len(box[0])} != ambient {dim}")
        for a, b in zip(box[0], box[1]):
            if a < 0 or b > 1:
                raise PointOutOfRange(f"box {box} leaves the unit cube")
        if box not in seen:
            seen.add(box)
            unique.append(box)
    material = _Material(unique, dim)
    b = params.base
    levels: list[list[int]] = [[0]]
    for n in range(1, depth + 1):
        scale = b**n
        prev = levels[-1]
        # candidate cubes with their incident boxes
        incident: dict[tuple[int, ...], list[int]] = {}
        for bi, (blo, bhi) in enumerate(unique):
            ranges = []
            for j in range(dim):
                i_min = max(0, math.ceil(blo[j] * scale - 1))
                i_max = min(scale - 1, math.floor(bhi[j] * scale))
                if i_min > i_max:
                    ranges = None
                    break
                ranges.append(range(i_min, i_max + 1))
            if ranges is None:
                continue
            for xs in itertools.product(*ranges):
                incident.setdefault(xs, []).append(bi)
        kept: list[int] = []
        arity = params.arity
        prev_set = prev  # sorted list; bisect for membership
        for xs in sorted(incident):
            packed = packed_from_index(params, xs, n)
            parent = packed // arity
            i = bisect.bisect_left(prev_set, parent)
            if i == len(prev_set) or prev_set[i] != parent:
                continue  # parent not kept: side unavailable
            if _cube_kept(params, material, unique, incident[xs], xs, n, prev_set):
                kept.append(packed)
        kept.sort()
        levels.append(kept)
    return CodedTree(params, levels)


def _cube_kept(
    params: TreeParams,
    material: _Material,
    boxes: list[Box],
    incident: list[int],
    xs: tuple[int, ...],
    n: int,
    prev_level: Sequence[int],
) -> bool:
    b = params.base
    scale = b**n
    side = Fraction(1, scale)
    clo = tuple(Fraction(x) * side for x in xs)
    chi = tuple(Fraction(x + 1) * side for x in xs)
    clamp = (clo, chi)
    dim = params.dim
    open_in = [False] * dim
    at_lo = [False] * dim
    at_hi = [False] * dim
    for bi in incident:
        blo, bhi = boxes[bi]
        for j in range(dim):
            if bhi[j] > clo[j] and blo[j] < chi[j]:
                open_in[j] = True
            if blo[j] <= clo[j] <= bhi[j]:
                at_lo[j] = True
            if blo[j] <= chi[j] <= bhi[j]:
                at_hi[j] = True
    for j in range(dim):
        if open_in[j]:
            continue
        kept_j = False
        if at_hi[j]:
            # material sits on the upper face; this cube is the lower side
            if chi[j] == 1:
                kept_j = True
            elif not material.meets_open_slab(j, chi[j], chi[j] + side, clamp):
                kept_j = True  # upper open slab empty: lower side keeps
            elif not _neighbour_available(params, xs, j, +1, n, prev_level):
                kept_j = True  # preferred upper side cannot exist here
        if not kept_j and at_lo[j]:
            # material on the lower face; the lower cube is preferred
            if clo[j] == 0:
                kept_j = True
            elif not _neighbour_available(params, xs, j, -1, n, prev_level):
                kept_j = True
        if not kept_j:
            return False
    return True


def _neighbour_available(
    params: TreeParams,
    xs: tuple[int, ...],
    axis: int,
    step: int,
    n: int,
    prev_level: Sequence[int],
) -> bool:
    x = xs[axis] + step
    if x < 0 or x >= params.base**n:
        return False
    nxs = xs[:axis] + (x,) + xs[axis + 1 :]
    parent = packed_from_index(params, nxs, n) // params.arity
    i = bisect.bisect_left(prev_level, parent)
    return i < len(prev_level) and prev_level[i] == parent


def tree_from_point_set(
    params: TreeParams, points: Iterable, depth: int
) -> CodedTree:
    """Canonical tree of a finite point set in [0,1]^d.

    Coordinates must be exact (int, Fraction, decimal string, or float,
    floats taken at their exact binary value).  A point on an interior
    grid face marks the lower cube unless the set meets the open upper
    side, per the one-sided coding convention.
    """
    boxes = [point_box(p) for p in points]
    if not boxes:
        raise ValueError("empty point set")
    return _mark(params, boxes, depth)
