"""Command-line front end: plan, validate, gen and render.

``plan`` runs the full pipeline (parse, capacity check, greedy floorplan,
annealing) and emits a constraint file plus optional SVG, JSON report and
matplotlib figures.  ``validate`` re-checks a constraint file against the
device and design.  ``gen`` produces seeded synthetic designs.  ``render``
draws an existing constraint file.

Exit codes: 0 ok, 1 validation violations, 2 parse errors, 3 infeasible,
4 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from random import Random

from .anneal import AnnealParams, AnnealResult, Floorplan, InfeasibleDesignError, run_annealer
from .cost import CostWeights
from .design import Design, bind_design, check_capacity, parse_design, region_requirement
from .fabric import Fabric, KINDS, ParseError, Rect, ResourceVector, parse_device
from .placer import Placement, overlaps
from .priority import medal_key
from .whitespace import WsWeights

SVG_CELL_PX = 10
SVG_KIND_FILL = {"CLB": "#dde6f0", "BRAM": "#f2b266", "DSP": "#e07a6a"}


# ---------------------------------------------------------------------------
# constraint-file emission and parsing
# ---------------------------------------------------------------------------


def emit_constraints(floorplan: Floorplan, fabric: Fabric, name: str = "plan") -> str:
    """Neutral constraint text: one pblock record per region, medal order."""
    lines = [f"plan {name}"]
    for placement in _medal_ordered(floorplan.placements, fabric):
        r = placement.rect
        counts = _frame_counts(fabric, r)
        lines.append(f"pblock {placement.region}")
        lines.append(f"rect {r.x1} {r.y1} {r.x2} {r.y2}")
        lines.append(
            f"frames CLB {counts['CLB']} BRAM {counts['BRAM']} DSP {counts['DSP']}"
        )
    return "\n".join(lines) + "\n"


def emit_xdc_style(floorplan: Floorplan, fabric: Fabric, name: str = "plan") -> str:
    """Vendor-flavoured constraint stub with grid-cell site names."""
    lines = [
        "# WARNING: X<col>Y<row> names below are abstract grid cells, not",
        "# vendor site names; map them with a real device database.",
        f"# plan {name}",
    ]
    for placement in _medal_ordered(floorplan.placements, fabric):
        r = placement.rect
        lines.append(f"create_pblock {placement.region}")
        lines.append(
            f"resize_pblock {placement.region} -add {{X{r.x1}Y{r.y1}:X{r.x2}Y{r.y2}}}"
        )
    return "\n".join(lines) + "\n"


def _medal_ordered(placements, fabric: Fabric) -> list[Placement]:
    return sorted(
        placements, key=lambda p: medal_key(p.region, p.requirement(fabric))
    )


def _frame_counts(fabric: Fabric, rect: Rect) -> dict:
    counts = {k: 0 for k in KINDS}
    for frame in fabric.frames_in(rect):
        counts[fabric.columns[frame.column]] += 1
    return counts


@dataclass(frozen=True)
class PlanRecord:
    region: str
    rect: Rect
    frames: dict


def parse_plan(text: str) -> tuple[str, list[PlanRecord]]:
    """Parse the neutral constraint grammar back into plan records."""
    name = None
    records: list[PlanRecord] = []
    current: str | None = None
    rect: Rect | None = None
    frames: dict | None = None

    def flush(lineno: int) -> None:
        nonlocal current, rect, frames
        if current is None:
            return
        if rect is None:
            raise ParseError(lineno, f"pblock {current!r} has no rect line")
        records.append(PlanRecord(current, rect, frames or {}))
        current, rect, frames = None, None, None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        if key == "plan":
            if len(fields) != 2:
                raise ParseError(lineno, "expected: plan <name>")
            name = fields[1]
        elif key == "pblock":
            if len(fields) != 2:
                raise ParseError(lineno, "expected: pblock <region>")
            flush(lineno)
            current = fields[1]
        elif key == "rect":
            if current is None:
                raise ParseError(lineno, "rect line outside a pblock")
            if len(fields) != 5:
                raise ParseError(lineno, "expected: rect <x1> <y1> <x2> <y2>")
            try:
                x1, y1, x2, y2 = (int(f) for f in fields[1:])
                rect = Rect(x1, y1, x2, y2)
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif key == "frames":
            if current is None:
                raise ParseError(lineno, "frames line outside a pblock")
            if len(fields) != 7 or fields[1] != "CLB" or fields[3] != "BRAM" or fields[5] != "DSP":
                raise ParseError(lineno, "expected: frames CLB <n> BRAM <n> DSP <n>")
            try:
                frames = {"CLB": int(fields[2]), "BRAM": int(fields[4]), "DSP": int(fields[6])}
            except ValueError:
                raise ParseError(lineno, "frame counts must be integers") from None
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    flush(len(text.splitlines()) + 1)
    if name is None:
        raise ParseError(1, "missing 'plan <name>' header")
    return name, records


# ---------------------------------------------------------------------------
# plan validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


def validate_plan(fabric: Fabric, design: Design, records: list[PlanRecord]) -> list[Violation]:
    """All constraint violations of a parsed plan; empty means legal."""
    out: list[Violation] = []
    requirements = {r.name: region_requirement(r) for r in design.regions}

    seen: set[str] = set()
    for rec in records:
        if rec.region not in requirements:
            out.append(Violation("unknown_region", f"{rec.region} is not in the design"))
        if rec.region in seen:
            out.append(Violation("duplicate_region", f"{rec.region} placed more than once"))
        seen.add(rec.region)
    for rname in requirements:
        if rname not in seen:
            out.append(Violation("missing_region", f"{rname} has no placement"))

    blocked = fabric.blocked_frames()
    placed: list[PlanRecord] = []
    for rec in records:
        if not fabric.in_bounds(rec.rect):
            out.append(Violation("out_of_bounds", f"{rec.region} rect leaves the grid"))
            continue
        r = rec.rect
        if not fabric.is_frame_aligned(r):
            out.append(
                Violation(
                    "misalignment",
                    f"{rec.region} y-extent [{r.y1}, {r.y2}] is not frame-aligned",
                )
            )
        frames = fabric.frames_in(r)
        hit = frames & blocked
        if hit:
            out.append(
                Violation(
                    "reserved_overlap",
                    f"{rec.region} claims {len(hit)} frame(s) of the static region",
                )
            )
        req = requirements.get(rec.region)
        if req is not None:
            cap = fabric.capacity(r)
            if not cap.covers(req):
                short = [
                    k
                    for k in ("clb", "bram", "dsp")
                    if cap.get(k) < req.get(k)
                ]
                out.append(
                    Violation(
                        "uncovered_requirement",
                        f"{rec.region} capacity {cap.as_dict()} lacks {', '.join(short).upper()}"
                        f" for requirement {req.as_dict()}",
                    )
                )
        if rec.frames:
            counts = _frame_counts(fabric, r)
            if counts != rec.frames:
                out.append(
                    Violation(
                        "frame_count",
                        f"{rec.region} frames line {rec.frames} != computed {counts}",
                    )
                )
        placed.append(rec)

    for i, a in enumerate(placed):
        for b in placed[i + 1 :]:
            if overlaps(a.rect, b.rect):
                out.append(Violation("overlap", f"{a.region} and {b.region} overlap"))
            elif fabric.frames_in(a.rect) & fabric.frames_in(b.rect):
                out.append(
                    Violation("frame_share", f"{a.region} and {b.region} share a frame")
                )

    verdict = check_capacity(design, fabric)
    if not verdict.feasible:
        out.append(
            Violation(
                "capacity_excess",
                "design exceeds fabric capacity for: " + ", ".join(verdict.violations),
            )
        )
    return out


# ---------------------------------------------------------------------------
# SVG emission
# ---------------------------------------------------------------------------


def emit_svg(floorplan: Floorplan, fabric: Fabric) -> str:
    """Standalone SVG: column-kind background grid plus labeled placements."""
    w_px = fabric.grid_width * SVG_CELL_PX
    h_px = fabric.grid_height * SVG_CELL_PX
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w_px}" height="{h_px}" '
        f'viewBox="0 0 {w_px} {h_px}">',
        f'<rect x="0" y="0" width="{w_px}" height="{h_px}" fill="#ffffff"/>',
    ]
    for x, kind in enumerate(fabric.columns):
        parts.append(
            f'<rect x="{x * SVG_CELL_PX}" y="0" width="{SVG_CELL_PX}" height="{h_px}" '
            f'fill="{SVG_KIND_FILL[kind]}" stroke="#ffffff" stroke-width="0.5"/>'
        )
    for r in range(1, fabric.num_rows):
        y = h_px - r * fabric.row_height * SVG_CELL_PX
        parts.append(
            f'<line x1="0" y1="{y}" x2="{w_px}" y2="{y}" stroke="#888888" stroke-width="1"/>'
        )
    for rect in fabric.reserved:
        parts.append(_svg_rect(rect, fabric, "#5a5a5a", "none", 0.8))
    for placement in floorplan.placements:
        parts.append(_svg_rect(placement.rect, fabric, "#fff4bf", "#333333", 0.75))
        cx = (placement.rect.x1 + placement.rect.x2 + 1) / 2 * SVG_CELL_PX
        cy = h_px - (placement.rect.y1 + placement.rect.y2 + 1) / 2 * SVG_CELL_PX
        parts.append(
            f'<text x="{cx}" y="{cy}" font-size="9" font-family="sans-serif" '
            f'text-anchor="middle" dominant-baseline="middle" class="region-label">'
            f"{placement.region}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _svg_rect(rect: Rect, fabric: Fabric, fill: str, stroke: str, opacity: float) -> str:
    x = rect.x1 * SVG_CELL_PX
    y = (fabric.grid_height - rect.y2 - 1) * SVG_CELL_PX
    w = rect.width * SVG_CELL_PX
    h = rect.height * SVG_CELL_PX
    stroke_attr = f' stroke="{stroke}" stroke-width="1.5"' if stroke != "none" else ""
    return (
        f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" '
        f'fill-opacity="{opacity}"{stroke_attr}/>'
    )


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def build_report(
    result: AnnealResult, design: Design, fabric: Fabric, runtime_ms: float, restarts: int
) -> dict:
    best = result.best
    totals = fabric.totals()
    waste = ResourceVector()
    for p in best.placements:
        waste = waste + p.waste
    waste_pct = {
        k: (100.0 * waste.get(k) / totals.get(k)) if totals.get(k) else 0.0
        for k in ("clb", "bram", "dsp")
    }
    return {
        "design": design.name,
        "device": fabric.name,
        "seed": best.seed,
        "iterations": best.iterations,
        "hpwl": best.cost.wl,
        "area": best.cost.area,
        "rw_cost": best.cost.wr,
        "total_cost": best.cost.total,
        "waste": waste.as_dict(),
        "waste_pct": waste_pct,
        "normalizers": {"wl": result.norms.wl, "area": result.norms.area, "wr": result.norms.wr},
        "t0": result.t0,
        "initial": {
            "hpwl": result.initial.cost.wl,
            "area": result.initial.cost.area,
            "rw_cost": result.initial.cost.wr,
            "total_cost": result.initial.cost.total,
        },
        "moves": {
            "attempted": result.moves_attempted,
            "accepted": result.moves_accepted,
            "infeasible": result.moves_infeasible,
        },
        "restarts": restarts,
        "placements": [
            {
                "region": p.region,
                "rect": [p.rect.x1, p.rect.y1, p.rect.x2, p.rect.y2],
                "waste": p.waste.as_dict(),
            }
            for p in _medal_ordered(best.placements, fabric)
        ],
        "runtime_ms": runtime_ms,
    }


# ---------------------------------------------------------------------------
# synthetic design generation
# ---------------------------------------------------------------------------


def generate_design(
    regions: int,
    seed: int,
    clb_range: tuple[int, int] = (4, 16),
    bram_range: tuple[int, int] = (0, 2),
    dsp_range: tuple[int, int] = (0, 1),
    instance_range: tuple[int, int] = (1, 3),
    fabric: Fabric | None = None,
    name: str | None = None,
) -> str:
    """Seeded synthetic design text: uniform demands, connected random nets,
    four corner terminals."""
    for label, (lo, hi) in (
        ("clb", clb_range),
        ("bram", bram_range),
        ("dsp", dsp_range),
        ("instances", instance_range),
    ):
        if lo > hi or lo < 0:
            raise ValueError(f"empty {label} range [{lo}, {hi}]")
    if clb_range[0] < 1:
        raise ValueError("clb range must start at 1: every module consumes logic")
    if instance_range[0] < 1:
        raise ValueError("instance range must start at 1")

    rng = Random(seed)
    lines = [f"design {name or f'gen{regions}s{seed}'}"]
    rnames = [f"r{i}" for i in range(regions)]
    for rname in rnames:
        lines.append(f"region {rname}")
        for m in range(rng.randint(*instance_range)):
            clb = rng.randint(*clb_range)
            bram = rng.randint(*bram_range)
            dsp = rng.randint(*dsp_range)
            lines.append(f"module {rname} m{m} clb {clb} bram {bram} dsp {dsp}")

    if fabric is not None:
        corners = [
            ("t_bl", "Bottom", 0),
            ("t_br", "Right", 0),
            ("t_tl", "Left", fabric.grid_height - 1),
            ("t_tr", "Top", fabric.grid_width - 1),
        ]
    else:
        corners = [
            ("t_bl", "Bottom", 0),
            ("t_br", "Right", 0),
            ("t_tl", "Left", 0),
            ("t_tr", "Top", 0),
        ]
    tnames = []
    for tname, edge, offset in corners:
        lines.append(f"terminal {tname} {edge} {offset}")
        tnames.append(tname)

    if regions > 0:
        nets = 0
        order = list(rnames)
        rng.shuffle(order)
        for i in range(1, len(order)):  # spanning tree keeps the graph connected
            peer = order[rng.randrange(i)]
            lines.append(f"net n{nets} {order[i]} {peer}")
            nets += 1
        extra = max(1, regions // 2)
        pool = rnames + tnames
        for _ in range(extra):
            size = rng.randint(2, 4)
            eps = rng.sample(pool, min(size, len(pool)))
            if not any(e in rnames for e in eps):
                eps[0] = rng.choice(rnames)
            lines.append(f"net n{nets} " + " ".join(eps))
            nets += 1
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# annealer parameter files
# ---------------------------------------------------------------------------


def parse_params_file(text: str) -> dict:
    """Key-value parameter file in the device-file style."""
    known_int = {"seed", "moves_per_temp", "max_moves", "stagnation"}
    known_float = {"t0", "cooling", "stop_ratio", "alpha", "beta", "gamma"}
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key in known_int and len(fields) == 2:
                out[key] = int(fields[1])
            elif key in known_float and len(fields) == 2:
                out[key] = float(fields[1])
            elif key == "ws_weights" and len(fields) == 5:
                out[key] = tuple(float(f) for f in fields[1:])
            else:
                raise ParseError(lineno, f"unknown parameter line {line!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(lineno, str(exc)) from None
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_inputs(args) -> tuple[Fabric, Design]:
    fabric = parse_device(_read(args.device))
    design = parse_design(_read(args.design))
    bind_design(design, fabric)
    return fabric, design


def _anneal_params(args, seed: int) -> AnnealParams:
    file_params = parse_params_file(_read(args.params)) if getattr(args, "params", None) else {}
    weights = CostWeights(
        args.alpha if args.alpha is not None else file_params.get("alpha", 0.5),
        args.beta if args.beta is not None else file_params.get("beta", 0.2),
        args.gamma if args.gamma is not None else file_params.get("gamma", 0.3),
    )
    if args.ws_weights is not None:
        ws = WsWeights(*args.ws_weights)
    elif "ws_weights" in file_params:
        ws = WsWeights(*file_params["ws_weights"])
    else:
        ws = WsWeights()
    return AnnealParams(
        seed=seed,
        t0=args.t0 if args.t0 is not None else file_params.get("t0"),
        cooling=args.cooling if args.cooling is not None else file_params.get("cooling", 0.9),
        moves_per_temp=(
            args.moves_per_temp
            if args.moves_per_temp is not None
            else file_params.get("moves_per_temp")
        ),
        stop_ratio=(
            args.stop_ratio if args.stop_ratio is not None else file_params.get("stop_ratio", 1e-3)
        ),
        stagnation_levels=(
            args.stagnation if args.stagnation is not None else file_params.get("stagnation", 6)
        ),
        max_moves=args.max_moves if args.max_moves is not None else file_params.get("max_moves"),
        weights=weights,
        ws_weights=ws,
    )


def _run_one(design: Design, fabric: Fabric, params: AnnealParams) -> AnnealResult:
    return run_annealer(design, fabric, params)


def cmd_plan(args) -> int:
    try:
        fabric, design = _load_inputs(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    verdict = check_capacity(design, fabric)
    if not verdict.feasible:
        print(
            "infeasible: design exceeds fabric capacity for: "
            + ", ".join(verdict.violations),
            file=sys.stderr,
        )
        return 3

    start = time.perf_counter()
    try:
        runs = []
        seeds = [args.seed + i for i in range(args.restarts)]
        if args.restarts > 1:
            with ProcessPoolExecutor(max_workers=min(args.restarts, 8)) as pool:
                futures = [
                    pool.submit(_run_one, design, fabric, _anneal_params(args, s)) for s in seeds
                ]
                runs = [f.result() for f in futures]
        else:
            runs = [_run_one(design, fabric, _anneal_params(args, seeds[0]))]
    except InfeasibleDesignError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    result = min(runs, key=lambda r: (r.best.cost.total, r.best.seed))
    runtime_ms = (time.perf_counter() - start) * 1000.0

    try:
        if args.out:
            text = (
                emit_xdc_style(result.best, fabric, design.name)
                if args.xdc_style
                else emit_constraints(result.best, fabric, design.name)
            )
            _write(args.out, text)
        if args.svg:
            _write(args.svg, emit_svg(result.best, fabric))
        if args.report:
            report = build_report(result, design, fabric, runtime_ms, args.restarts)
            _write(args.report, json.dumps(report, indent=2, sort_keys=True) + "\n")
        if args.figures:
            from . import viz

            viz.save_figures(args.figures, result, fabric)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    print(
        f"planned {len(result.best.placements)} regions: total cost "
        f"{result.best.cost.total:.6g} (initial {result.initial.cost.total:.6g}), "
        f"{result.moves_attempted} moves, {runtime_ms:.0f} ms"
    )
    return 0


def cmd_validate(args) -> int:
    try:
        fabric, design = _load_inputs(args)
        _, records = parse_plan(_read(args.plan))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    violations = validate_plan(fabric, design, records)
    for v in violations:
        print(f"{v.kind}: {v.message}")
    if violations:
        print(f"{len(violations)} violation(s)", file=sys.stderr)
        return 1
    print("plan is legal")
    return 0


def cmd_gen(args) -> int:
    try:
        fabric = parse_device(_read(args.device)) if args.device else None
        text = generate_design(
            args.regions,
            args.seed,
            tuple(args.clb),
            tuple(args.bram),
            tuple(args.dsp),
            tuple(args.instances),
            fabric,
            args.name,
        )
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    try:
        if args.out:
            _write(args.out, text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


def cmd_render(args) -> int:
    try:
        fabric, design = _load_inputs(args)
        _, records = parse_plan(_read(args.plan))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    placements = plan_placements(fabric, design, records)
    from .cost import CostBreakdown

    floorplan = Floorplan(tuple(placements), CostBreakdown(0.0, 0.0, 0.0, 0.0))
    try:
        if args.svg:
            _write(args.svg, emit_svg(floorplan, fabric))
        if args.png:
            from . import viz

            viz.save_floorplan_png(args.png, placements, fabric)
        if not args.svg and not args.png:
            print("nothing to do: pass --svg and/or --png", file=sys.stderr)
            return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


def plan_placements(fabric: Fabric, design: Design, records: list[PlanRecord]) -> list[Placement]:
    """Rebuild placements from plan records for rendering purposes."""
    requirements = {r.name: region_requirement(r) for r in design.regions}
    placements = []
    for rec in records:
        cap = fabric.capacity(rec.rect)
        req = requirements.get(rec.region, ResourceVector())
        waste = cap - req if cap.covers(req) else ResourceVector()
        placements.append(
            Placement(rec.region, rec.rect, frozenset(fabric.frames_in(rec.rect)), waste)
        )
    return placements


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _range_pair(text: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return [int(p) for p in parts]


def _ws_quad(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected A,B,G,D")
    return [float(p) for p in parts]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prfloor",
        description="Floorplanner for partially reconfigurable designs on "
        "column-heterogeneous FPGAs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    plan = sub.add_parser("plan", help="floorplan a design onto a device")
    plan.add_argument("--device", required=True)
    plan.add_argument("--design", required=True)
    plan.add_argument("--seed", type=int, default=0)
    plan.add_argument("--restarts", type=int, default=1)
    plan.add_argument("--alpha", type=float, default=None, help="wirelength weight")
    plan.add_argument("--beta", type=float, default=None, help="area weight")
    plan.add_argument("--gamma", type=float, default=None, help="wasted-resource weight")
    plan.add_argument("--ws-weights", type=_ws_quad, default=None, metavar="A,B,G,D")
    plan.add_argument("--t0", type=float, default=None)
    plan.add_argument("--cooling", type=float, default=None)
    plan.add_argument("--moves-per-temp", type=int, default=None)
    plan.add_argument("--max-moves", type=int, default=None)
    plan.add_argument("--stop-ratio", type=float, default=None)
    plan.add_argument("--stagnation", type=int, default=None)
    plan.add_argument("--params", default=None, help="annealer parameter file")
    plan.add_argument("--out", default=None, help="constraint file path")
    plan.add_argument("--xdc-style", action="store_true")
    plan.add_argument("--svg", default=None)
    plan.add_argument("--report", default=None)
    plan.add_argument("--figures", default=None, help="directory for matplotlib figures")
    plan.set_defaults(func=cmd_plan)

    val = sub.add_parser("validate", help="check a constraint file")
    val.add_argument("--device", required=True)
    val.add_argument("--design", required=True)
    val.add_argument("--plan", required=True)
    val.set_defaults(func=cmd_validate)

    gen = sub.add_parser("gen", help="generate a synthetic design")
    gen.add_argument("--regions", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--clb", type=_range_pair, default=[4, 16], metavar="LO,HI")
    gen.add_argument("--bram", type=_range_pair, default=[0, 2], metavar="LO,HI")
    gen.add_argument("--dsp", type=_range_pair, default=[0, 1], metavar="LO,HI")
    gen.add_argument("--instances", type=_range_pair, default=[1, 3], metavar="LO,HI")
    gen.add_argument("--device", default=None, help="align terminals to this device")
    gen.add_argument("--name", default=None)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    render = sub.add_parser("render", help="draw an existing plan")
    render.add_argument("--device", required=True)
    render.add_argument("--design", required=True)
    render.add_argument("--plan", required=True)
    render.add_argument("--svg", default=None)
    render.add_argument("--png", default=None)
    render.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
