"""Finite-scale dimension estimators from b-adic covering counts.

The level-n vertex count of the tree of a set equals its covering number
by grid cubes of side base**-n, so box-type estimates reduce to exact
integer counts.  Localised (Assouad / lower) estimates replace balls by
b-adic windows: among all occupied vertices that still have m levels
below them, the window exponent log_base(descendant count)/m is maximised
or minimised.  Windows shallower than 4 levels are flagged low
confidence; nothing is extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import DepthOutOfRange, HeightTooSmall, NotEquicontractive
from .ratios import PowerRatio, exact_power_of
from .trees import Address, CodedTree, descendant_counts, unpack

LOW_CONFIDENCE_WINDOW = 4


@dataclass
class DimensionEstimate:
    """A single finite-scale estimate with its diagnostics."""

    kind: str
    value: float
    window: int | None = None
    n_range: tuple[int, int] | None = None
    address: Address | None = None
    counts: list[tuple[int, int]] = field(default_factory=list)
    slope: float | None = None
    exact: Fraction | None = None
    flags: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": self.kind,
            "value": self.value,
            "window": self.window,
            "n_range": list(self.n_range) if self.n_range else None,
            "address": list(self.address) if self.address is not None else None,
            "counts": [[n, c] for n, c in self.counts],
            "slope": self.slope,
            "exact": str(self.exact) if self.exact is not None else None,
            "flags": self.flags,
        }

def box_estimate(
    tree: CodedTree, n_range: tuple[int, int] | None = None
) -> DimensionEstimate:
    """Endpoint proxy log_base(#_{n1}) / n1 plus the least-squares slope of
    log count against n log base over [n0, n1]."""
    n0, n1 = n_range if n_range is not None else (1, tree.height)
    if not 1 <= n0 <= n1 <= tree.height:
        raise DepthOutOfRange(f"range [{n0}, {n1}] not inside [1, {tree.height}]")
    base_log = math.log(tree.params.base)
    counts = [(n, tree.level_count(n)) for n in range(n0, n1 + 1)]
    proxy = math.log(counts[-1][1]) / (n1 * base_log)
    if len(counts) >= 2:
        xs = np.array([n * base_log for n, _ in counts])
        ys = np.array([math.log(c) for _, c in counts])
        slope = float(np.polyfit(xs, ys, 1)[0])
    else:
        slope = proxy
    return DimensionEstimate(
        kind="box",
        value=proxy,
        n_range=(n0, n1),
        counts=counts,
        slope=slope,
    )


def _window_extremum(tree: CodedTree, m: int, take_max: bool) -> DimensionEstimate:
    if m < 1:
        raise ValueError("m must be >= 1")
    if tree.height < m:
        raise HeightTooSmall(f"height {tree.height} < window {m}")
    base_log = math.log(tree.params.base)
    best_count = None
    best_addr: tuple[int, int] | None = None
    for h in range(0, tree.height - m + 1):
        counts = descendant_counts(tree, h, m)
        level = tree.levels[h]
        for i, c in enumerate(counts):
            if (
                best_count is None
                or (take_max and c > best_count)
                or (not take_max and c < best_count)
            ):
                best_count = c
                best_addr = (level[i], h)
    value = math.log(best_count) / (m * base_log)
    addr = unpack(tree.params, best_addr[0], best_addr[1])
    flags = {}
    if m < LOW_CONFIDENCE_WINDOW:
        flags["low_confidence"] = True
    return DimensionEstimate(
        kind="assouad_window" if take_max else "lower_window",
        value=value,
        window=m,
        address=addr,
        counts=[(m, best_count)],
        flags=flags,
    )


def assouad_window_estimate(tree: CodedTree, m: int) -> DimensionEstimate:
    """Max window exponent over all admissible depth-m windows."""
    return _window_extremum(tree, m, take_max=True)


def lower_window_estimate(tree: CodedTree, m: int) -> DimensionEstimate:
    """Min window exponent over all admissible depth-m windows."""
    return _window_extremum(tree, m, take_max=False)


def similarity_dimension(ifs) -> DimensionEstimate:
    """log(#maps) / -log(ratio) for an equicontractive homothety system,
    clamped to [0, d].

    Without a separation flag the value is only an upper bound and is
    flagged as such rather than raised.  Ratios carried symbolically as
    PowerRatio(base, exponent) give an exact rational dimension whenever
    the map count is a power of that base.
    """
    ratios = {m.ratio for m in ifs.maps}
    if len(ratios) != 1:
        raise NotEquicontractive(f"{len(ratios)} distinct ratios")
    ratio = next(iter(ratios))
    count = len(ifs.maps)
    d = ifs.dim
    exact: Fraction | None = None
    if ratio == 0:
        value = 0.0
        exact = Fraction(0)
    elif isinstance(ratio, PowerRatio):
        t = exact_power_of(count, ratio.base)
        if t is not None:
            exact = Fraction(t) / (-ratio.exponent)
            value = float(exact)
        else:
            value = math.log(count) / -math.log(float(ratio))
    else:
        rf = Fraction(ratio)
        # exact when both count and 1/ratio are powers of a common integer
        value = math.log(count) / -math.log(float(rf))
        exact = _exact_log_quotient(count, rf)
        if exact is not None:
            value = float(exact)
    if exact is not None and not 0 <= exact <= d:
        exact = min(max(exact, Fraction(0)), Fraction(d))
    value = min(max(value, 0.0), float(d))
    flags = {"separation": ifs.separation}
    if ifs.separation == "none":
        flags["upper_bound_only"] = True
    return DimensionEstimate(kind="similarity", value=value, exact=exact, flags=flags)


def _exact_log_quotient(count: int, ratio: Fraction) -> Fraction | None:
    """log(count) / -log(ratio) as an exact Fraction when ratio = g**-q and
    count = g**p for a common integer g, else None."""
    if ratio >= 1 or ratio <= 0 or ratio.numerator != 1:
        return None
    den = ratio.denominator
    # smallest prime-ish root of den: try bases from 2 up to den
    for g in range(2, den + 1):
        q = exact_power_of(den, g)
        if q:
            p = exact_power_of(count, g)
            if p is not None:
                return Fraction(p, q)
            return None
    return None
