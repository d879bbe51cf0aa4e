"""Coded b-adic trees for compact subsets of the unit cube.

A compact set is approximated to finite depth by the cubes of the b-adic
grid that meet it.  Each grid cube at level n is addressed by a path of n
digits, each digit in [0, b**d); levels are stored as sorted tuples of
packed integers (the digit path read as a base-(b**d) number), which keeps
membership O(log) and counting O(1) while staying exact: no floating point
enters set membership anywhere.

Packing convention: digit k at a vertex encodes per-axis sub-digits
k = sum_j axis_digit[j] * b**j (axis 0 least significant).  Numeric order
of packed addresses within a level equals lexicographic order of digit
paths.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DepthOutOfRange,
    EmptyRoot,
    MixedParams,
    NotTidy,
    PrefixViolation,
    VertexNotOccupied,
)

Address = tuple[int, ...]


@dataclass(frozen=True)
class TreeParams:
    """Grid parameters: b subdivisions per axis in ambient dimension d."""

    base: int = 2
    dim: int = 1

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")

    @property
    def arity(self) -> int:
        return self.base ** self.dim

    def split_digit(self, digit: int) -> tuple[int, ...]:
        """Per-axis sub-digits of one tree digit."""
        b = self.base
        return tuple((digit // b**j) % b for j in range(self.dim))

    def join_digit(self, axis_digits: Sequence[int]) -> int:
        b = self.base
        return sum(ax * b**j for j, ax in enumerate(axis_digits))


def pack(params: TreeParams, digits: Address) -> int:
    p = 0
    arity = params.arity
    for k in digits:
        if not 0 <= k < arity:
            raise ValueError(f"digit {k} out of range for arity {arity}")
        p = p * arity + k
    return p


def unpack(params: TreeParams, packed: int, height: int) -> Address:
    arity = params.arity
    digits = []
    for _ in range(height):
        packed, k = divmod(packed, arity)
        digits.append(k)
    return tuple(reversed(digits))


def index_vector(params: TreeParams, packed: int, height: int) -> tuple[int, ...]:
    """Integer grid coordinates of the cube: axis j spans
    [x_j, x_j + 1] / base**height."""
    xs = [0] * params.dim
    for k in unpack(params, packed, height):
        axes = params.split_digit(k)
        for j in range(params.dim):
            xs[j] = xs[j] * params.base + axes[j]
    return tuple(xs)


def packed_from_index(params: TreeParams, xs: Sequence[int], height: int) -> int:
    b = params.base
    digits = []
    for i in range(height):
        shift = b ** (height - 1 - i)
        digits.append(params.join_digit([(x // shift) % b for x in xs]))
    return pack(params, digits)


def cube_bounds(
    params: TreeParams, packed: int, height: int
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Exact closed cube [lo, hi] per axis, side base**-height."""
    side = Fraction(1, params.base**height)
    xs = index_vector(params, packed, height)
    lo = tuple(Fraction(x) * side for x in xs)
    hi = tuple(Fraction(x + 1) * side for x in xs)
    return lo, hi


class CodedTree:
    """Finite-depth tidy tree of occupied grid cubes.

    Immutable after construction; safe to share across threads.  All
    constructors validate prefix closure (occupied vertices have occupied
    parents) and tidiness (every vertex above the bottom level has at
    least one occupied child).
    """

    __slots__ = ("params", "levels")

    def __init__(self, params: TreeParams, levels: Sequence[Sequence[int]]):
        self.params = params
        self.levels: tuple[tuple[int, ...], ...] = tuple(
            tuple(level) for level in levels
        )
        self._validate()

    def _validate(self) -> None:
        if not self.levels or self.levels[0] != (0,):
            raise EmptyRoot("level 0 must contain exactly the root")
        arity = self.params.arity
        for n in range(1, len(self.levels)):
            level = self.levels[n]
            if not level:
                raise NotTidy(f"level {n} is empty")
            prev = self.levels[n - 1]
            parents_seen = set()
            last = -1
            for p in level:
                if p <= last:
                    raise ValueError(f"level {n} not sorted strictly increasing")
                last = p
                if p >= arity**n:
                    raise ValueError(f"packed address {p} out of range at level {n}")
                parent = p // arity
                i = bisect.bisect_left(prev, parent)
                if i == len(prev) or prev[i] != parent:
                    raise PrefixViolation(
                        f"vertex {p} at level {n} has unoccupied parent {parent}"
                    )
                parents_seen.add(parent)
            if len(parents_seen) != len(prev):
                orphan = next(p for p in prev if p not in parents_seen)
                raise NotTidy(
                    f"vertex {orphan} at level {n - 1} has no occupied child"
                )

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    def level(self, n: int) -> tuple[int, ...]:
        if not 0 <= n <= self.height:
            raise DepthOutOfRange(f"level {n} not in [0, {self.height}]")
        return self.levels[n]

    def level_count(self, n: int) -> int:
        return len(self.level(n))

    def leaf_count(self) -> int:
        return len(self.levels[-1])

    def is_occupied(self, address: Address) -> bool:
        n = len(address)
        if n > self.height:
            return False
        p = pack(self.params, address)
        level = self.levels[n]
        i = bisect.bisect_left(level, p)
        return i < len(level) and level[i] == p

    def addresses(self, n: int) -> Iterator[Address]:
        for p in self.level(n):
            yield unpack(self.params, p, n)

    def descendant_count(self, address: Address, rel_depth: int) -> int:
        """Number of occupied vertices rel_depth levels below `address`."""
        h = len(address)
        n = h + rel_depth
        if n > self.height:
            raise DepthOutOfRange(
                f"level {n} not in [0, {self.height}]"
            )
        if not self.is_occupied(address):
            raise VertexNotOccupied(f"address {address} not occupied")
        p = pack(self.params, address)
        span = self.params.arity**rel_depth
        level = self.levels[n]
        lo = bisect.bisect_left(level, p * span)
        hi = bisect.bisect_left(level, (p + 1) * span)
        return hi - lo

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CodedTree)
            and self.params == other.params
            and self.levels == other.levels
        )

    def __hash__(self) -> int:
        return hash((self.params, self.levels))

    def __repr__(self) -> str:
        return (
            f"CodedTree(base={self.params.base}, dim={self.params.dim}, "
            f"height={self.height}, leaves={self.leaf_count()})"
        )


def tree_from_levels(
    params: TreeParams, levels: Sequence[Iterable[Address | int]]
) -> CodedTree:
    """Build a tree from per-height address sets.

    Addresses may be digit tuples or already-packed integers.  Raises
    PrefixViolation / NotTidy / EmptyRoot if the input is not a tidy
    prefix-closed tree.
    """
    packed_levels = []
    for n, level in enumerate(levels):
        packed = set()
        for a in level:
            if isinstance(a, int):
                packed.add(a)
            else:
                if len(a) != n:
                    raise ValueError(f"address {a} has wrong height for level {n}")
                packed.add(pack(params, a))
        packed_levels.append(sorted(packed))
    return CodedTree(params, packed_levels)


def full_tree(params: TreeParams, depth: int) -> CodedTree:
    """The complete tree: every grid cube occupied down to `depth`."""
    return CodedTree(params, [range(params.arity**n) for n in range(depth + 1)])


def subtree(tree: CodedTree, address: Address, n: int) -> CodedTree:
    """Largest subtree rooted at `address` of height at most n, re-rooted.

    Height of the result is min(n, height - h(address)); the result is
    always tidy because the input is.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not tree.is_occupied(address):
        raise VertexNotOccupied(f"address {address} not occupied")
    h = len(address)
    height = min(n, tree.height - h)
    p = pack(tree.params, address)
    arity = tree.params.arity
    out = []
    for m in range(height + 1):
        span = arity**m
        level = tree.levels[h + m]
        lo = bisect.bisect_left(level, p * span)
        hi = bisect.bisect_left(level, (p + 1) * span)
        base_offset = p * span
        out.append([q - base_offset for q in level[lo:hi]])
    return CodedTree(tree.params, out)


def descendant_counts(tree: CodedTree, height: int, rel_depth: int) -> list[int]:
    """Descendant counts rel_depth below every level-`height` vertex,
    aligned with tree.level(height).  Single linear merge."""
    n = height + rel_depth
    if n > tree.height:
        raise DepthOutOfRange(f"level {n} not in [0, {tree.height}]")
    span = tree.params.arity**rel_depth
    parents = tree.levels[height]
    deep = tree.levels[n]
    counts = [0] * len(parents)
    i = 0
    for q in deep:
        anc = q // span
        while parents[i] != anc:
            i += 1
        counts[i] += 1
    return counts


def truncate(tree: CodedTree, depth: int) -> CodedTree:
    if depth > tree.height:
        raise DepthOutOfRange(f"cannot truncate to {depth} > {tree.height}")
    return CodedTree(tree.params, tree.levels[: depth + 1])


@dataclass
class TreeSequenceLimit:
    """Stabilisation report for a finite sequence of trees.

    For each depth n, index_table[n] holds the first index from which all
    later trees reaching depth n share the same depth-n truncation; depths
    where the last two available truncations disagree (or where fewer than
    two trees reach) are listed in not_stabilized.  The limit tree is the
    deepest truncation K_n over the contiguous stabilised prefix, so
    earlier K values are truncations of later ones by construction.
    """

    limit: CodedTree
    stable_depth: int
    index_table: dict[int, int] = field(default_factory=dict)
    not_stabilized: set[int] = field(default_factory=set)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "stable_depth": self.stable_depth,
            "index_table": {str(k): v for k, v in sorted(self.index_table.items())},
            "not_stabilized": sorted(self.not_stabilized),
        }


def tree_limit(seq: Sequence[CodedTree]) -> TreeSequenceLimit:
    """Stabilised-prefix limit of a finite tree sequence (shared params).

    A finite list cannot take a true limit, so the result reports, per
    depth, how far the suffix of the sequence has already stabilised and
    assembles the limit only from certified depths.
    """
    if not seq:
        raise ValueError("empty sequence")
    params = seq[0].params
    for t in seq:
        if t.params != params:
            raise MixedParams("trees must share base and dimension")
    max_h = max(t.height for t in seq)
    index_table: dict[int, int] = {0: 0}
    not_stabilized: set[int] = set()
    stable_depth = 0
    limit_source = seq[-1]
    for n in range(1, max_h + 1):
        reaching = [i for i, t in enumerate(seq) if t.height >= n]
        if len(reaching) < 2:
            not_stabilized.add(n)
            break
        ref = seq[reaching[-1]].levels[: n + 1]
        if seq[reaching[-2]].levels[: n + 1] != ref:
            not_stabilized.add(n)
            break
        # deeper trees may have stopped before shallow churn settled; the
        # certified value must extend the previous depth's certified value
        if ref[:n] != limit_source.levels[:n]:
            not_stabilized.add(n)
            break
        first = reaching[-1]
        for i in reversed(reaching):
            if seq[i].levels[: n + 1] == ref:
                first = i
            else:
                break
        index_table[n] = first
        stable_depth = n
        limit_source = seq[reaching[-1]]
    limit = truncate(limit_source, stable_depth)
    for n in range(stable_depth + 1, max_h + 1):
        not_stabilized.add(n)
    return TreeSequenceLimit(
        limit=limit,
        stable_depth=stable_depth,
        index_table=index_table,
        not_stabilized=not_stabilized,
    )
