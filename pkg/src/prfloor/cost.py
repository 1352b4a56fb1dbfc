"""Floorplan quality metrics and the composite annealing objective.

All geometry here uses boundary coordinates: a placement covering cells
x 0..3 spans [0, 4).  Wirelength is half-perimeter over net endpoints
(region rectangle centers and terminal edge points), area is the bounding
box of all placements, and wasted resources are weighted by scarcity
(fabric total over per-kind total).  The three terms are normalized by the
initial floorplan's values before weighting so the weights express relative
priority rather than unit conversions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .design import Design
from .fabric import Fabric
from .placer import Placement


@dataclass(frozen=True)
class CostWeights:
    alpha: float = 0.5  # wirelength
    beta: float = 0.2  # bounding area
    gamma: float = 0.3  # wasted resources

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.gamma < 0:
            raise ValueError("cost weights must be non-negative")
        if self.alpha == self.beta == self.gamma == 0:
            raise ValueError("at least one cost weight must be positive")


@dataclass(frozen=True)
class Normalizers:
    wl: float = 1.0
    area: float = 1.0
    wr: float = 1.0

    def __post_init__(self):
        if self.wl <= 0 or self.area <= 0 or self.wr <= 0:
            raise ValueError("normalizers must be positive")


@dataclass(frozen=True)
class CostBreakdown:
    wl: float
    area: float
    wr: float
    total: float


def endpoint_positions(
    placements: list[Placement], design: Design, fabric: Fabric
) -> dict[str, tuple[float, float]]:
    """Net endpoint positions: region rect centers and terminal edge points."""
    positions = {p.region: p.rect.center() for p in placements}
    for t in design.terminals:
        positions[t.name] = t.position(fabric)
    return positions


def hpwl(positions: dict[str, tuple[float, float]], nets) -> float:
    """Sum over nets of the endpoint bounding-box half-perimeter.

    Nets with fewer than two endpoints contribute zero.
    """
    total = 0.0
    for net in nets:
        first = True
        for ep in net.endpoints:
            if ep not in positions:
                raise KeyError(f"net {net.name!r}: endpoint {ep!r} has no position")
            x, y = positions[ep]
            if first:
                min_x = max_x = x
                min_y = max_y = y
                first = False
            else:
                min_x = min(min_x, x)
                max_x = max(max_x, x)
                min_y = min(min_y, y)
                max_y = max(max_y, y)
        if not first:
            total += (max_x - min_x) + (max_y - min_y)
    return total


def floorplan_hpwl(placements: list[Placement], design: Design, fabric: Fabric) -> float:
    return hpwl(endpoint_positions(placements, design, fabric), design.nets)


def bounding_area(placements: list[Placement]) -> float:
    """Area of the bounding box of all placement rectangles; 0 when empty.

    Terminals are excluded: only placed rectangles define the extremes.
    """
    if not placements:
        return 0.0
    x_min = min(p.rect.x1 for p in placements)
    x_max = max(p.rect.x2 + 1 for p in placements)
    y_min = min(p.rect.y1 for p in placements)
    y_max = max(p.rect.y2 + 1 for p in placements)
    return float((x_max - x_min) * (y_max - y_min))


def rw_cost(placements: list[Placement], fabric: Fabric) -> float:
    """Scarcity-weighted wasted blocks: each kind's waste is scaled by
    (all blocks on the chip) / (blocks of that kind on the chip)."""
    totals = fabric.totals()
    grand = totals.total()
    cost = 0.0
    for kind in ("clb", "bram", "dsp"):
        wasted = sum(p.waste.get(kind) for p in placements)
        if wasted == 0:
            continue
        kind_total = totals.get(kind)
        if kind_total == 0:
            raise ZeroDivisionError(f"wasted {kind} blocks on a fabric with no {kind}")
        cost += grand / kind_total * wasted
    return cost


def total_cost(
    wl: float,
    area: float,
    wr: float,
    weights: CostWeights,
    norms: Normalizers | None = None,
) -> CostBreakdown:
    norms = norms or Normalizers()
    total = (
        weights.alpha * wl / norms.wl
        + weights.beta * area / norms.area
        + weights.gamma * wr / norms.wr
    )
    return CostBreakdown(wl, area, wr, total)


def centroid(placements: list[Placement]) -> tuple[float, float]:
    """Area-weighted mean of placement rectangle centers."""
    if not placements:
        raise ValueError("centroid of an empty floorplan is undefined")
    total_area = 0.0
    sx = sy = 0.0
    for p in placements:
        a = p.rect.area
        cx, cy = p.rect.center()
        total_area += a
        sx += a * cx
        sy += a * cy
    return sx / total_area, sy / total_area
