"""Sequence-pair encoding, annealing moves and the Metropolis driver.

The solution encoding is a sequence pair over region names plus per-region
column-offset hints.  Region p preceding q in both sequences means p lies
strictly left of q; p preceding q in the first but following it in the
second means p lies strictly above q.  The realizer allocates regions in
first-sequence order with each region's scheme, filtering candidate
rectangles through the relations already implied against placed regions, so
every realized floorplan satisfies its sequence pair by construction.

The annealer is a classic Metropolis chain over sequence pairs with
geometric cooling; infeasible realizations reject the move, so every
accepted state is a valid floorplan.  All randomness flows through one
seeded ``random.Random`` (Mersenne Twister), making runs reproducible
byte-for-byte for a fixed seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cmp_to_key

from .cost import (
    CostBreakdown,
    CostWeights,
    Normalizers,
    bounding_area,
    centroid,
    rw_cost,
    total_cost,
)
from .design import Design, check_capacity, region_requirement
from .fabric import Fabric, Rect
from .placer import OccupancyState, Placement, SearchBounds, _anchored_search, _fallback_search, _whitespace_search
from .priority import RegionType, classify, medal_sort
from .whitespace import WsWeights, detect_whitespace, score_whitespaces

UPHILL_TARGET = 0.8  # initial acceptance ratio the temperature probe aims for


class InfeasibleDesignError(RuntimeError):
    """The design cannot be floorplanned; names the failing resource/region."""

    def __init__(self, message: str, region: str | None = None, resources: tuple = ()):
        super().__init__(message)
        self.region = region
        self.resources = resources


@dataclass(frozen=True)
class SequencePair:
    seq_a: tuple[str, ...]
    seq_b: tuple[str, ...]
    offsets: dict = field(default_factory=dict)

    def __post_init__(self):
        if sorted(self.seq_a) != sorted(self.seq_b) or len(set(self.seq_a)) != len(self.seq_a):
            raise ValueError("seq_a and seq_b must be permutations of the same region set")


@dataclass(frozen=True)
class Floorplan:
    placements: tuple[Placement, ...]
    cost: CostBreakdown
    seed: int = 0
    iterations: int = 0


@dataclass
class AnnealParams:
    seed: int = 0
    t0: float | None = None  # None: calibrated from 100 probe moves
    cooling: float = 0.9
    moves_per_temp: int | None = None  # None: max(16, 4 * regions)
    stop_ratio: float = 1e-3
    stagnation_levels: int = 6
    max_moves: int | None = None  # None: min(2500, max(600, 64000 // regions))
    weights: CostWeights = field(default_factory=CostWeights)
    ws_weights: WsWeights = field(default_factory=WsWeights)

    def __post_init__(self):
        if not 0 < self.cooling < 1:
            raise ValueError("cooling factor must be in (0, 1)")
        if self.t0 is not None and self.t0 <= 0:
            raise ValueError("t0 must be positive")
        if self.stop_ratio <= 0 or self.stop_ratio >= 1:
            raise ValueError("stop_ratio must be in (0, 1)")
        if self.stagnation_levels < 1:
            raise ValueError("stagnation_levels must be >= 1")

    def resolved_moves_per_temp(self, regions: int) -> int:
        if self.moves_per_temp is not None:
            return self.moves_per_temp
        return max(16, 4 * regions)

    def resolved_max_moves(self, regions: int) -> int:
        if self.max_moves is not None:
            return self.max_moves
        return min(2500, max(600, 64000 // max(1, regions)))


@dataclass
class AnnealResult:
    best: Floorplan
    initial: Floorplan
    norms: Normalizers
    t0: float
    history: list  # (move index, current total, best total)
    moves_attempted: int = 0
    moves_accepted: int = 0
    moves_infeasible: int = 0


class PlanContext:
    """Immutable per-run lookup tables shared by realizer invocations."""

    def __init__(self, design: Design, fabric: Fabric, ws_weights: WsWeights | None = None):
        self.design = design
        self.fabric = fabric
        self.ws_weights = ws_weights or WsWeights()
        self.req = {r.name: region_requirement(r) for r in design.regions}
        self.rtype = {name: classify(req) for name, req in self.req.items()}
        self.term_pos = {t.name: t.position(fabric) for t in design.terminals}
        # Smallest possible footprint of each region, used by the realizer to
        # reserve room for regions the sequence pair places below/right later.
        self.min_rows: dict[str, int] = {}
        self.min_cols: dict[str, int] = {}
        for name, req in self.req.items():
            rows = cols = 1
            for kind in ("CLB", "BRAM", "DSP"):
                need = req.get(kind)
                if need == 0:
                    continue
                per_col = fabric.slices_per_frame[kind]
                total_cols = len(fabric._cols_by_kind[kind])
                if total_cols == 0:
                    continue  # capacity check reports this; avoid dividing by 0
                rows = max(rows, -(-need // (per_col * total_cols)))
                cols = max(cols, -(-need // (per_col * fabric.num_rows)))
            self.min_rows[name] = rows
            self.min_cols[name] = cols

    def evaluate(
        self, placements, weights: CostWeights, norms: Normalizers
    ) -> CostBreakdown:
        positions = {p.region: p.rect.center() for p in placements}
        positions.update(self.term_pos)
        wl = 0.0
        for net in self.design.nets:
            pts = [positions[ep] for ep in net.endpoints]
            if len(pts) >= 2:
                xs = [p[0] for p in pts]
                ys = [p[1] for p in pts]
                wl += max(xs) - min(xs) + max(ys) - min(ys)
        return total_cost(wl, bounding_area(placements), rw_cost(placements, self.fabric), weights, norms)


def _allocate_region(
    ctx: PlanContext,
    state: OccupancyState,
    name: str,
    bounds: SearchBounds,
    soft: SearchBounds | None = None,
    offset: int = 0,
    hint: Rect | None = None,
) -> Placement | None:
    """One region through its type's scheme, with the enumeration fallback.

    ``soft`` bounds additionally reserve space for regions the sequence pair
    forces below or to the right later; they are dropped when they admit no
    candidate, so a None return always means no rectangle satisfies the hard
    ``bounds`` at all.  ``hint`` is a rectangle to reuse verbatim when it is
    still free, capacity-covering and relation-clean (the annealer passes the
    region's current rectangle so local moves leave the rest of the plan
    unchanged).
    """
    req = ctx.req[name]
    rtype = ctx.rtype[name]
    if hint is not None and _hint_valid(ctx, state, hint, req, bounds):
        return state.place(name, hint, req)
    rect = None
    if rtype is RegionType.TYPE4:
        if state.placements:
            design_center = centroid(state.placements)
        else:
            design_center = (ctx.fabric.grid_width / 2.0, ctx.fabric.grid_height / 2.0)
        spaces = score_whitespaces(
            detect_whitespace(state), design_center, ctx.ws_weights, ctx.fabric
        )
        if soft is not None:
            rect = _whitespace_search(state, req, spaces, design_center, soft)
        if rect is None:
            rect = _whitespace_search(state, req, spaces, design_center, bounds)
    else:
        primary = "DSP" if req.dsp > 0 else "BRAM"
        if soft is not None:
            rect = _anchored_search(state, req, primary, soft)
        if rect is None:
            rect = _anchored_search(state, req, primary, bounds)
    if rect is None:
        rect = _fallback_search(state, req, bounds)
    if rect is None:
        return None
    if offset:
        shifted = _shift_rect(rect, offset, ctx.fabric.num_columns)
        if (
            shifted is not None
            and shifted.x1 >= bounds.min_x1
            and state.rect_free(shifted)
            and ctx.fabric.capacity(shifted).covers(req)
        ):
            rect = shifted
    return state.place(name, rect, req)


def _shift_rect(rect: Rect, offset: int, width: int) -> Rect | None:
    x1, x2 = rect.x1 + offset, rect.x2 + offset
    if x1 < 0 or x2 >= width:
        return None
    return Rect(x1, rect.y1, x2, rect.y2)


def _hint_valid(
    ctx: PlanContext,
    state: OccupancyState,
    rect: Rect,
    req,
    bounds: SearchBounds,
) -> bool:
    if rect.x1 < bounds.min_x1:
        return False
    h = ctx.fabric.row_height
    max_top = bounds.max_top_row
    if max_top is not None and rect.y2 // h > max_top:
        return False
    if not state.rect_free(rect):
        return False
    cap = state._window_cap(rect.x1, rect.x2, (rect.y2 + 1 - rect.y1) // h)
    return cap[0] >= req.clb and cap[1] >= req.bram and cap[2] >= req.dsp


def initial_floorplan(
    design: Design,
    fabric: Fabric,
    ws_weights: WsWeights | None = None,
    weights: CostWeights | None = None,
    norms: Normalizers | None = None,
    seed: int = 0,
) -> Floorplan:
    """Greedy floorplan in medal-sort order; the annealer's starting point.

    Raises :class:`InfeasibleDesignError` when the aggregate capacity check
    fails or some region cannot be placed despite it (fragmentation).
    """
    verdict = check_capacity(design, fabric)
    if not verdict.feasible:
        raise InfeasibleDesignError(
            "design exceeds fabric capacity for: " + ", ".join(verdict.violations),
            resources=verdict.violations,
        )
    ctx = PlanContext(design, fabric, ws_weights)
    state = OccupancyState(fabric)
    unbounded = SearchBounds()
    for entry in medal_sort(design):
        placement = _allocate_region(ctx, state, entry.name, unbounded)
        if placement is None:
            raise InfeasibleDesignError(
                f"no feasible rectangle for region {entry.name!r}", region=entry.name
            )
    placements = tuple(state.placements)
    cost = ctx.evaluate(placements, weights or CostWeights(), norms or Normalizers())
    return Floorplan(placements, cost, seed=seed, iterations=0)


def realize(
    sp: SequencePair,
    design: Design,
    fabric: Fabric,
    ws_weights: WsWeights | None = None,
    weights: CostWeights | None = None,
    norms: Normalizers | None = None,
) -> Floorplan | None:
    """Decode a sequence pair into a floorplan, or None when infeasible."""
    ctx = PlanContext(design, fabric, ws_weights)
    placements = _realize(ctx, sp)
    if placements is None:
        return None
    cost = ctx.evaluate(placements, weights or CostWeights(), norms or Normalizers())
    return Floorplan(tuple(placements), cost)


def _greedy_in_order(
    ctx: PlanContext, order, offsets: dict | None = None
) -> list[Placement] | None:
    """Fresh floorplan allocating regions in the given order, no relation
    filters; this is how a shuffle move restarts floorplanning."""
    state = OccupancyState(ctx.fabric)
    unbounded = SearchBounds()
    for name in order:
        offset = offsets.get(name, 0) if offsets else 0
        if _allocate_region(ctx, state, name, unbounded, offset=offset) is None:
            return None
    return state.placements


def _realize(
    ctx: PlanContext,
    sp: SequencePair,
    hints: dict[str, Rect] | None = None,
    base_offsets: dict | None = None,
) -> list[Placement] | None:
    """Allocate regions in seq_a order under the sequence-pair relations.

    ``hints`` maps regions to their rectangles in the floorplan the move was
    made from, with ``base_offsets`` the offsets active there; an offset hint
    that changed by d shifts the hinted rectangle by d columns.
    """
    fabric = ctx.fabric
    rows = fabric.num_rows
    width = fabric.num_columns
    h = fabric.row_height
    pos_b = {name: i for i, name in enumerate(sp.seq_b)}
    n = len(sp.seq_a)

    # Lookahead floors: regions later in seq_a always end up below or right
    # of earlier ones, so reserve their minimal chained footprint.
    below_floor = [0] * n
    right_margin = [0] * n
    for i in range(n - 1, -1, -1):
        qb = pos_b[sp.seq_a[i]]
        bf = rm = 0
        for j in range(i + 1, n):
            r = sp.seq_a[j]
            if pos_b[r] < qb:  # r must end up below seq_a[i]
                bf = max(bf, below_floor[j] + ctx.min_rows[r])
            else:  # r must end up right of seq_a[i]
                rm = max(rm, right_margin[j] + ctx.min_cols[r])
        below_floor[i] = bf
        right_margin[i] = rm

    state = OccupancyState(fabric)
    placed: list[Placement] = []
    for i, q in enumerate(sp.seq_a):
        min_x1 = 0
        max_top = rows - 1
        qb = pos_b[q]
        for p in placed:
            if pos_b[p.region] < qb:  # p left of q
                if p.rect.x2 + 1 > min_x1:
                    min_x1 = p.rect.x2 + 1
            else:  # p above q
                top = p.rect.y1 // h - 1
                if top < max_top:
                    max_top = top
        if min_x1 >= width or max_top < 0:
            return None
        hard = SearchBounds(min_x1, max_top)
        soft = None
        if below_floor[i] or right_margin[i]:
            soft = SearchBounds(min_x1, max_top, below_floor[i], width - 1 - right_margin[i])
        hint = None
        if hints is not None and q in hints:
            delta = sp.offsets.get(q, 0) - (base_offsets or {}).get(q, 0)
            hint = _shift_rect(hints[q], delta, width) if delta else hints[q]
        placement = _allocate_region(ctx, state, q, hard, soft, sp.offsets.get(q, 0), hint)
        if placement is None:
            return None
        placed.append(placement)
    return state.placements


def sp_from_floorplan(placements) -> SequencePair:
    """Extract a sequence pair consistent with realized rectangle relations.

    Disjoint rectangles separate on at least one axis; the x axis is
    preferred when both separate.
    """

    def x_disjoint(p: Placement, q: Placement) -> bool:
        return p.rect.x2 < q.rect.x1 or q.rect.x2 < p.rect.x1

    def cmp_a(p: Placement, q: Placement) -> int:  # left-of or above first
        if x_disjoint(p, q):
            return -1 if p.rect.x2 < q.rect.x1 else 1
        return -1 if p.rect.y1 > q.rect.y2 else 1

    def cmp_b(p: Placement, q: Placement) -> int:  # left-of or below first
        if x_disjoint(p, q):
            return -1 if p.rect.x2 < q.rect.x1 else 1
        return -1 if p.rect.y2 < q.rect.y1 else 1

    seq_a = tuple(p.region for p in sorted(placements, key=cmp_to_key(cmp_a)))
    seq_b = tuple(p.region for p in sorted(placements, key=cmp_to_key(cmp_b)))
    return SequencePair(seq_a, seq_b, {})


def propose_move(
    sp: SequencePair, rng: random.Random, temp_ratio: float, grid_width: int
) -> tuple[int, SequencePair]:
    """Draw one move: 0 shuffle, 1 swap pair, 2 remove and replace, 3 shift.

    The shuffle probability decays linearly with the temperature ratio; the
    rest is split evenly.  Designs with a single region only shift.
    """
    n = len(sp.seq_a)
    if n == 0:
        return 3, sp
    if n == 1:
        kind = 3
    else:
        p_shuffle = 0.4 * min(1.0, max(0.0, temp_ratio))
        r = rng.random()
        if r < p_shuffle:
            kind = 0
        else:
            kind = 1 + int((r - p_shuffle) / ((1.0 - p_shuffle) / 3.0))
            kind = min(kind, 3)

    if kind == 0:
        seq_a = list(sp.seq_a)
        seq_b = list(sp.seq_b)
        rng.shuffle(seq_a)
        rng.shuffle(seq_b)
        return 0, SequencePair(tuple(seq_a), tuple(seq_b), dict(sp.offsets))
    if kind == 1:
        a, b = rng.sample(sp.seq_a, 2)
        return 1, SequencePair(_swap(sp.seq_a, a, b), _swap(sp.seq_b, a, b), dict(sp.offsets))
    if kind == 2:
        name = rng.choice(sp.seq_a)
        return 2, SequencePair(
            _remove_append(sp.seq_a, name), _remove_append(sp.seq_b, name), dict(sp.offsets)
        )
    name = rng.choice(sp.seq_a)
    delta = rng.randint(1, 4) * rng.choice((-1, 1))
    offsets = dict(sp.offsets)
    bound = grid_width - 1
    offsets[name] = max(-bound, min(bound, offsets.get(name, 0) + delta))
    return 3, SequencePair(sp.seq_a, sp.seq_b, offsets)


def _swap(seq: tuple[str, ...], a: str, b: str) -> tuple[str, ...]:
    out = list(seq)
    i, j = out.index(a), out.index(b)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def _remove_append(seq: tuple[str, ...], name: str) -> tuple[str, ...]:
    out = [s for s in seq if s != name]
    out.append(name)
    return tuple(out)


def anneal(design: Design, fabric: Fabric, params: AnnealParams) -> Floorplan:
    """Minimize the composite cost; returns the best feasible floorplan."""
    return run_annealer(design, fabric, params).best


def run_annealer(design: Design, fabric: Fabric, params: AnnealParams) -> AnnealResult:
    ctx = PlanContext(design, fabric, params.ws_weights)
    raw_initial = initial_floorplan(design, fabric, params.ws_weights, seed=params.seed)
    norms = Normalizers(
        raw_initial.cost.wl or 1.0, raw_initial.cost.area or 1.0, raw_initial.cost.wr or 1.0
    )
    initial_cost = ctx.evaluate(raw_initial.placements, params.weights, norms)
    initial = Floorplan(raw_initial.placements, initial_cost, params.seed, 0)

    n = len(design.regions)
    moves_per_temp = params.resolved_moves_per_temp(n)
    max_moves = params.resolved_max_moves(n)
    result = AnnealResult(
        best=initial, initial=initial, norms=norms, t0=0.0, history=[(0, initial_cost.total, initial_cost.total)]
    )
    if n == 0 or moves_per_temp == 0 or max_moves == 0:
        return result

    rng = random.Random(params.seed)
    # The chain starts at the greedy floorplan; its extracted sequence pair
    # seeds the move generator.  A candidate only replaces the state once it
    # realizes feasibly, so every visited floorplan is valid.
    sp = sp_from_floorplan(initial.placements)
    current, cur_cost = list(initial.placements), initial_cost
    cur_rects = {p.region: p.rect for p in current}
    best_pl, best_cost = current, cur_cost

    def realize_candidate(kind: int, cand_sp: SequencePair):
        """Returns (sequence pair, placements) or (cand_sp, None).

        A shuffle restarts floorplanning in the shuffled order and adopts
        the sequence pair extracted from the result; other moves keep
        untouched regions on their current rectangles, retrying from
        scratch on failure.
        """
        if kind == 0:
            placements = _greedy_in_order(ctx, cand_sp.seq_a, cand_sp.offsets)
            if placements is None:
                return cand_sp, None
            fresh = sp_from_floorplan(placements)
            return SequencePair(fresh.seq_a, fresh.seq_b, dict(cand_sp.offsets)), placements
        hints = dict(cur_rects)
        if kind == 1:
            for i, name in enumerate(cand_sp.seq_a):
                if sp.seq_a[i] != name:
                    hints.pop(name, None)
        elif kind == 2:
            hints.pop(cand_sp.seq_a[-1], None)
        cand = _realize(ctx, cand_sp, hints, sp.offsets)
        if cand is None:
            cand = _realize(ctx, cand_sp)
        return cand_sp, cand

    width = fabric.num_columns
    if params.t0 is not None:
        t0 = params.t0
    else:
        # Probe with the local move mix (shuffle deltas would dominate and
        # overheat the chain); t0 puts the acceptance of the median uphill
        # delta at the target ratio.  The median resists the occasional
        # full-replacement outlier that would overheat short schedules.
        uphill = []
        for _ in range(100):
            kind, cand_sp = propose_move(sp, rng, 0.0, width)
            _, cand = realize_candidate(kind, cand_sp)
            if cand is None:
                continue
            delta = ctx.evaluate(cand, params.weights, norms).total - cur_cost.total
            if delta > 0:
                uphill.append(delta)
        if uphill:
            uphill.sort()
            t0 = uphill[len(uphill) // 2] / -math.log(UPHILL_TARGET)
        else:
            t0 = 1.0
        t0 = max(t0, 1e-9)
    result.t0 = t0

    temp = t0
    moves = accepted = infeasible = 0
    stagnant = 0  # consecutive temperature levels with a frozen chain
    while temp > params.stop_ratio * t0 and stagnant < params.stagnation_levels and moves < max_moves:
        accepted_level = 0
        for _ in range(moves_per_temp):
            if moves >= max_moves:
                break
            moves += 1
            kind, cand_sp = propose_move(sp, rng, temp / t0, width)
            cand_sp, cand = realize_candidate(kind, cand_sp)
            if cand is None:
                infeasible += 1
                result.history.append((moves, cur_cost.total, best_cost.total))
                continue
            cand_cost = ctx.evaluate(cand, params.weights, norms)
            delta = cand_cost.total - cur_cost.total
            if delta <= 0 or rng.random() < math.exp(-delta / temp):
                sp, current, cur_cost = cand_sp, cand, cand_cost
                cur_rects = {p.region: p.rect for p in current}
                accepted += 1
                accepted_level += 1
                if cur_cost.total < best_cost.total:
                    best_pl, best_cost = current, cur_cost
            result.history.append((moves, cur_cost.total, best_cost.total))
        temp *= params.cooling
        stagnant = 0 if accepted_level else stagnant + 1

    result.best = Floorplan(tuple(best_pl), best_cost, params.seed, moves)
    result.moves_attempted = moves
    result.moves_accepted = accepted
    result.moves_infeasible = infeasible
    return result
