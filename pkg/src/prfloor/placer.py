"""Frame-exclusive region allocation: the three resource-allocation schemes.

Placements are rectangles of whole frames: the y-extent covers complete
device rows and every frame inside the rectangle is owned by the placement,
so two regions can never share a frame.  Frames touched by a reserved
(static) rectangle are blocked from the start.

Search policy, shared by the initial floorplanner and the annealer's
realizer:

* Types 1-3 anchor on the scarcest required column kind (DSP, else BRAM).
  Anchors are scanned columns left to right, device rows bottom to top; the
  anchor column must host the whole primary frame stack.  Around an anchor,
  the rectangle grows horizontally before vertically, and among feasible
  candidates the smallest bounding box wins (ties: least DSP waste, least
  BRAM waste, least CLB waste, flattest, then nearest the anchor column).
* Type 4 picks the cheapest white space with enough CLBs and claims the
  smallest frame-aligned sub-rectangle anchored at the white-space corner
  nearest the design centroid.
* If the scheme-shaped search fails, a complete enumeration over all
  frame-aligned free rectangles runs, so ``None`` is returned only when no
  feasible rectangle exists at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fabric import Fabric, FrameId, Rect, ResourceVector
from .priority import RegionType, classify


def wasted_frames(n: int, per_frame: int) -> tuple[int, int]:
    """Frames needed for n blocks and the quantization remainder.

    frames = ceil(n / per_frame); waste = frames * per_frame - n.
    """
    if n < 0 or per_frame < 1:
        raise ValueError("need n >= 0 and per_frame >= 1")
    frames = -(-n // per_frame)
    return frames, frames * per_frame - n


def overlaps(a: Rect, b: Rect) -> bool:
    """True iff the two cell sets intersect (inclusive coordinates)."""
    return a.intersects(b)


@dataclass(frozen=True)
class Placement:
    """A region bound to a rectangle, owning every frame inside it."""

    region: str
    rect: Rect
    frames: frozenset
    waste: ResourceVector

    def requirement(self, fabric: Fabric) -> ResourceVector:
        return fabric.capacity(self.rect) - self.waste


@dataclass(frozen=True)
class SearchBounds:
    """Anchor-filter constraints on candidate rectangles.

    ``min_x1`` is the smallest allowed left column (regions that must lie to
    the right of earlier ones); ``max_top_row`` is the highest allowed device
    row (regions that must lie below earlier ones).  ``min_bottom_row`` and
    ``max_x2`` reserve space for regions the sequence pair will later force
    below or to the right; the realizer applies them as a first pass only.
    """

    min_x1: int = 0
    max_top_row: int | None = None
    min_bottom_row: int = 0
    max_x2: int | None = None


class OccupancyState:
    """Mutable claimed-frame bookkeeping for one floorplanning run."""

    def __init__(self, fabric: Fabric):
        self.fabric = fabric
        self.placements: list[Placement] = []
        self.claimed_frames: set[FrameId] = set()
        # Bit r of free_masks[x] set <=> frame (x, r) is claimable; row_bits
        # is the transposed view (bit x of row_bits[r]).
        full = (1 << fabric.num_rows) - 1
        self.free_masks: list[int] = [full] * fabric.num_columns
        self.row_bits: list[int] = [(1 << fabric.num_columns) - 1] * fabric.num_rows
        for frame in fabric.blocked_frames():
            self.free_masks[frame.column] &= ~(1 << frame.device_row)
            self.row_bits[frame.device_row] &= ~(1 << frame.column)

    def copy(self) -> "OccupancyState":
        dup = OccupancyState.__new__(OccupancyState)
        dup.fabric = self.fabric
        dup.placements = list(self.placements)
        dup.claimed_frames = set(self.claimed_frames)
        dup.free_masks = list(self.free_masks)
        dup.row_bits = list(self.row_bits)
        return dup

    def is_free(self, frame: FrameId) -> bool:
        return bool(self.free_masks[frame.column] >> frame.device_row & 1)

    def rect_free(self, rect: Rect) -> bool:
        """All frames intersecting ``rect`` are claimable."""
        r1 = rect.y1 // self.fabric.row_height
        r2 = rect.y2 // self.fabric.row_height
        mask = ((1 << (r2 - r1 + 1)) - 1) << r1
        return all(self.free_masks[x] & mask == mask for x in range(rect.x1, rect.x2 + 1))

    def claim(self, placement: Placement) -> None:
        fabric = self.fabric
        if not fabric.is_frame_aligned(placement.rect):
            raise ValueError(f"placement rect {placement.rect} is not frame-aligned")
        for frame in placement.frames:
            if not self.is_free(frame):
                raise ValueError(f"frame {frame} already claimed")
        for frame in placement.frames:
            self.free_masks[frame.column] &= ~(1 << frame.device_row)
            self.row_bits[frame.device_row] &= ~(1 << frame.column)
        self.claimed_frames |= placement.frames
        self.placements.append(placement)

    def place(self, name: str, rect: Rect, req: ResourceVector) -> Placement:
        """Build, validate and claim a placement for ``req`` at ``rect``."""
        h = self.fabric.row_height
        if self.fabric.is_frame_aligned(rect) and self.rect_free(rect):
            # All frames free implies no reserved cells inside, so the O(1)
            # window capacity equals the full capacity computation.
            cap_t = self._window_cap(rect.x1, rect.x2, (rect.y2 + 1 - rect.y1) // h)
            cap = ResourceVector(*cap_t)
        else:
            cap = self.fabric.capacity(rect)
        if not cap.covers(req):
            raise ValueError(f"rect {rect} capacity {cap} does not cover {req}")
        placement = Placement(name, rect, frozenset(self.fabric.frames_in(rect)), cap - req)
        self.claim(placement)
        return placement

    # -- capacity over an all-free, frame-aligned window ---------------------
    def _window_cap(self, x1: int, x2: int, nrows: int) -> tuple[int, int, int]:
        pref = self.fabric._kind_prefix
        s = self.fabric.slices_per_frame
        return (
            (pref["CLB"][x2 + 1] - pref["CLB"][x1]) * s["CLB"] * nrows,
            (pref["BRAM"][x2 + 1] - pref["BRAM"][x1]) * s["BRAM"] * nrows,
            (pref["DSP"][x2 + 1] - pref["DSP"][x1]) * s["DSP"] * nrows,
        )


def _covers(cap: tuple[int, int, int], req: ResourceVector) -> bool:
    return cap[0] >= req.clb and cap[1] >= req.bram and cap[2] >= req.dsp


def _rect_from_rows(fabric: Fabric, x1: int, x2: int, r0: int, nrows: int) -> Rect:
    h = fabric.row_height
    return Rect(x1, r0 * h, x2, (r0 + nrows) * h - 1)


def _anchored_search(
    state: OccupancyState,
    req: ResourceVector,
    primary: str,
    bounds: SearchBounds,
    anchor: tuple[int, int] | None = None,
) -> Rect | None:
    """Scheme 1/2 search: first anchor (column, bottom row) that admits a
    feasible window wins; within an anchor the minimal-key window is chosen."""
    fabric = state.fabric
    rows = fabric.num_rows
    width = fabric.num_columns
    free = state.free_masks
    min_x1 = bounds.min_x1
    max_top = bounds.max_top_row if bounds.max_top_row is not None else rows - 1
    max_x2 = bounds.max_x2 if bounds.max_x2 is not None else width - 1
    col_from, row_from = anchor if anchor else (0, 0)
    f_primary, _ = wasted_frames(req.get(primary), fabric.slices_per_frame[primary])

    for c in fabric._cols_by_kind[primary]:
        if c < min_x1 or c < col_from or c > max_x2:
            continue
        for r0 in range(max(row_from, bounds.min_bottom_row), max_top - f_primary + 2):
            best = None  # (area, waste_dsp, waste_bram, waste_clb, v, lateral), rect
            for v in range(f_primary, max_top - r0 + 2):
                mask = ((1 << v) - 1) << r0
                if free[c] & mask != mask:
                    break  # anchor column blocked at this height and above
                lb = c
                while lb > min_x1 and free[lb - 1] & mask == mask:
                    lb -= 1
                rb = c
                while rb < max_x2 and free[rb + 1] & mask == mask:
                    rb += 1
                if not _covers(state._window_cap(lb, rb, v), req):
                    continue
                # Minimal-width covering windows containing c, two pointers.
                x2 = c
                while x2 <= rb and not _covers(state._window_cap(c, x2, v), req):
                    x2 += 1
                windows = []
                for x1 in range(c, lb - 1, -1):
                    if x2 > rb:
                        if _covers(state._window_cap(x1, rb, v), req):
                            x2 = rb
                        else:
                            continue
                    while x2 > c and _covers(state._window_cap(x1, x2 - 1, v), req):
                        x2 -= 1
                    if _covers(state._window_cap(x1, x2, v), req):
                        windows.append((x1, x2))
                if not windows:
                    continue
                wmin = min(x2 - x1 + 1 for x1, x2 in windows)
                for x1, x2 in windows:
                    if x2 - x1 + 1 != wmin:
                        continue
                    cap = state._window_cap(x1, x2, v)
                    key = (
                        wmin * v,
                        cap[2] - req.dsp,
                        cap[1] - req.bram,
                        cap[0] - req.clb,
                        v,
                        c - x1,
                    )
                    if best is None or key < best[0]:
                        best = (key, _rect_from_rows(fabric, x1, x2, r0, v))
            if best is not None:
                return best[1]
    return None


def _fallback_search(
    state: OccupancyState, req: ResourceVector, bounds: SearchBounds
) -> Rect | None:
    """Complete enumeration over frame-aligned all-free rectangles.

    Runs only when the scheme-shaped search fails; guarantees that a ``None``
    allocation means no feasible rectangle exists under ``bounds``.
    """
    fabric = state.fabric
    rows = fabric.num_rows
    width = fabric.num_columns
    free = state.free_masks
    min_x1 = bounds.min_x1
    max_top = bounds.max_top_row if bounds.max_top_row is not None else rows - 1
    max_x2 = bounds.max_x2 if bounds.max_x2 is not None else width - 1

    for r0 in range(bounds.min_bottom_row, max_top + 1):
        for v in range(1, max_top - r0 + 2):
            mask = ((1 << v) - 1) << r0
            x = min_x1
            while x <= max_x2:
                if free[x] & mask != mask:
                    x += 1
                    continue
                run_start = x
                while x <= max_x2 and free[x] & mask == mask:
                    x += 1
                run_end = x - 1
                # Leftmost window in the run wins; if the full run cannot
                # cover the requirement no sub-window can.
                x2 = run_start
                while x2 <= run_end and not _covers(state._window_cap(run_start, x2, v), req):
                    x2 += 1
                if x2 <= run_end:
                    return _rect_from_rows(fabric, run_start, x2, r0, v)
    return None


def _corner_order(rect: Rect, centroid: tuple[float, float]) -> list[str]:
    corners = {
        "bl": (rect.x1, rect.y1),
        "br": (rect.x2 + 1, rect.y1),
        "tl": (rect.x1, rect.y2 + 1),
        "tr": (rect.x2 + 1, rect.y2 + 1),
    }
    order = ("bl", "br", "tl", "tr")
    return sorted(
        order,
        key=lambda c: (
            (corners[c][0] - centroid[0]) ** 2 + (corners[c][1] - centroid[1]) ** 2,
            order.index(c),
        ),
    )


def _whitespace_search(
    state: OccupancyState,
    req: ResourceVector,
    spaces,
    centroid: tuple[float, float],
    bounds: SearchBounds,
) -> Rect | None:
    """Scheme 3: cheapest sufficient white space, corner-anchored sub-rect."""
    fabric = state.fabric
    h = fabric.row_height
    max_top = bounds.max_top_row if bounds.max_top_row is not None else fabric.num_rows - 1
    max_x2 = bounds.max_x2 if bounds.max_x2 is not None else fabric.num_columns - 1
    ordered = sorted(
        spaces, key=lambda ws: (ws.cost, ws.rect.x1, ws.rect.y1, ws.rect.x2, ws.rect.y2)
    )
    for ws in ordered:
        if ws.free.clb < req.clb:
            continue
        wr = ws.rect
        ws_r1, ws_r2 = wr.y1 // h, wr.y2 // h
        ws_cols = wr.x2 - wr.x1 + 1
        ws_rows = ws_r2 - ws_r1 + 1
        for corner in _corner_order(wr, centroid):
            best = None  # (area, waste_dsp, waste_bram, waste_clb, v), rect
            for v in range(1, ws_rows + 1):
                if corner in ("bl", "br"):
                    r0 = ws_r1
                else:
                    r0 = ws_r2 - v + 1
                if r0 + v - 1 > max_top or r0 < bounds.min_bottom_row:
                    continue
                for w in range(1, ws_cols + 1):
                    if corner in ("bl", "tl"):
                        x1 = wr.x1
                    else:
                        x1 = wr.x2 - w + 1
                    x2 = x1 + w - 1
                    if x1 < bounds.min_x1 or x2 > max_x2:
                        continue
                    cap = state._window_cap(x1, x2, v)
                    if not _covers(cap, req):
                        continue
                    key = (w * v, cap[2] - req.dsp, cap[1] - req.bram, cap[0] - req.clb, v)
                    if best is None or key < best[0]:
                        best = (key, _rect_from_rows(fabric, x1, x2, r0, v))
                    break  # wider windows at this v only add area
            if best is not None:
                return best[1]
    return None


def _require_type(req: ResourceVector, expected: set[RegionType], scheme: str) -> None:
    rtype = classify(req)
    if rtype not in expected:
        raise ValueError(f"{scheme} cannot place a {rtype.name} requirement {req}")


def allocate_scheme1(
    state: OccupancyState,
    req: ResourceVector,
    anchor: tuple[int, int] | None = None,
    name: str = "rr",
    bounds: SearchBounds | None = None,
) -> Placement | None:
    """Place a Type 1 requirement (DSP + BRAM + CLB), DSP column first."""
    _require_type(req, {RegionType.TYPE1}, "scheme 1")
    bounds = bounds or SearchBounds()
    rect = _anchored_search(state, req, "DSP", bounds, anchor)
    if rect is None:
        rect = _fallback_search(state, req, bounds)
    return state.place(name, rect, req) if rect is not None else None


def allocate_scheme2(
    state: OccupancyState,
    req: ResourceVector,
    anchor: tuple[int, int] | None = None,
    name: str = "rr",
    bounds: SearchBounds | None = None,
) -> Placement | None:
    """Place a Type 2/3 requirement: the scarce kind first, CLBs around it."""
    _require_type(req, {RegionType.TYPE2, RegionType.TYPE3}, "scheme 2")
    bounds = bounds or SearchBounds()
    primary = "DSP" if req.dsp > 0 else "BRAM"
    rect = _anchored_search(state, req, primary, bounds, anchor)
    if rect is None:
        rect = _fallback_search(state, req, bounds)
    return state.place(name, rect, req) if rect is not None else None


def allocate_scheme3(
    state: OccupancyState,
    req: ResourceVector,
    ws_list,
    centroid: tuple[float, float] | None = None,
    name: str = "rr",
    bounds: SearchBounds | None = None,
) -> Placement | None:
    """Place a Type 4 (CLB-only) requirement into scored white space."""
    _require_type(req, {RegionType.TYPE4}, "scheme 3")
    bounds = bounds or SearchBounds()
    if centroid is None:
        centroid = (state.fabric.grid_width / 2.0, state.fabric.grid_height / 2.0)
    rect = _whitespace_search(state, req, ws_list, centroid, bounds)
    if rect is None:
        rect = _fallback_search(state, req, bounds)
    return state.place(name, rect, req) if rect is not None else None
