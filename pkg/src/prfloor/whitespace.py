"""White-space detection and scoring for CLB-only region allocation.

A white space is a maximal rectangle of cells touching no claimed frame and
no reserved cell.  Because frames are claimed whole and statically blocked
frames are treated as claimed, freeness is constant within a frame row, so
the maximal rectangles are found on the frame grid and reported as
frame-aligned cell rectangles.  The list is recomputed from scratch after
every allocation; scoring penalizes enclosed scarce resources and distance
from the design centroid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fabric import Fabric, Rect, ResourceVector
from .placer import OccupancyState


@dataclass(frozen=True)
class WsWeights:
    """Scarcity weights for white-space scoring; must strictly decrease
    from DSP to BRAM to CLB to distance, all positive."""

    dsp: float = 27.0
    bram: float = 9.0
    clb: float = 3.0
    dist: float = 1.0

    def __post_init__(self):
        if not (self.dsp > self.bram > self.clb > self.dist > 0):
            raise ValueError(
                "white-space weights must satisfy dsp > bram > clb > dist > 0, "
                f"got ({self.dsp}, {self.bram}, {self.clb}, {self.dist})"
            )


@dataclass(frozen=True)
class WhiteSpace:
    rect: Rect
    free: ResourceVector
    cost: float = 0.0


def detect_whitespace(state: OccupancyState) -> list[WhiteSpace]:
    """All maximal free rectangles with their free resource vectors, unscored.

    A fully occupied fabric yields an empty list.
    """
    fabric = state.fabric
    rows = fabric.num_rows
    h = fabric.row_height
    row_bits = state.row_bits
    pref = fabric._kind_prefix
    slices = fabric.slices_per_frame
    out: list[WhiteSpace] = []
    for r1 in range(rows):
        acc = row_bits[r1]
        below = row_bits[r1 - 1] if r1 > 0 else 0
        for r2 in range(r1, rows):
            acc &= row_bits[r2]
            if not acc:
                break
            above = row_bits[r2 + 1] if r2 < rows - 1 else 0
            nrows = r2 - r1 + 1
            bits = acc
            while bits:
                low = bits & -bits
                start = low.bit_length() - 1
                shifted = bits >> start
                length = ((shifted + 1) & -(shifted + 1)).bit_length() - 1
                run_mask = ((1 << length) - 1) << start
                bits &= ~run_mask
                # The run is horizontally maximal; the rectangle is maximal
                # iff it cannot extend a full row down or up.
                if below & run_mask == run_mask or above & run_mask == run_mask:
                    continue
                end = start + length - 1
                rect = Rect(start, r1 * h, end, (r2 + 1) * h - 1)
                free = ResourceVector(
                    (pref["CLB"][end + 1] - pref["CLB"][start]) * slices["CLB"] * nrows,
                    (pref["BRAM"][end + 1] - pref["BRAM"][start]) * slices["BRAM"] * nrows,
                    (pref["DSP"][end + 1] - pref["DSP"][start]) * slices["DSP"] * nrows,
                )
                out.append(WhiteSpace(rect, free))
    return out


def whitespace_cost(
    ws: WhiteSpace,
    design_centroid: tuple[float, float],
    weights: WsWeights,
    fabric: Fabric,
) -> float:
    """Weighted free-resource count plus normalized centroid distance.

    The Euclidean distance between the white-space center and the design
    centroid is divided by the fabric half-perimeter so the distance term
    stays commensurate with block counts.
    """
    cx, cy = ws.rect.center()
    dist = math.hypot(cx - design_centroid[0], cy - design_centroid[1])
    half_perimeter = (fabric.grid_width + fabric.grid_height) / 2.0
    return (
        weights.dsp * ws.free.dsp
        + weights.bram * ws.free.bram
        + weights.clb * ws.free.clb
        + weights.dist * dist / half_perimeter
    )


def score_whitespaces(
    spaces: list[WhiteSpace],
    design_centroid: tuple[float, float],
    weights: WsWeights,
    fabric: Fabric,
) -> list[WhiteSpace]:
    """Attach costs and sort ascending (ties broken by rectangle position)."""
    scored = [
        WhiteSpace(ws.rect, ws.free, whitespace_cost(ws, design_centroid, weights, fabric))
        for ws in spaces
    ]
    scored.sort(key=lambda w: (w.cost, w.rect.x1, w.rect.y1, w.rect.x2, w.rect.y2))
    return scored
