"""Column-heterogeneous FPGA fabric model.

The device is a grid of cells: one cell is one CLB-row tall and one column
wide.  Columns carry a single block kind (CLB, BRAM or DSP).  ``row_height``
cells stack vertically into one frame, the smallest reconfigurable unit; a
frame of kind k holds ``slices_per_frame[k]`` blocks.  Cells covered by a
reserved rectangle belong to the static region and are unavailable to
reconfigurable regions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

KINDS = ("CLB", "BRAM", "DSP")

DEFAULT_SLICES = {"CLB": 20, "BRAM": 2, "DSP": 4}


class ParseError(ValueError):
    """Syntax or semantic error in an input file, with a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class ResourceVector:
    """Block counts of each kind; the requirement/capacity/waste currency.

    The feasibility order is componentwise: use :meth:`covers`, not ``<=``.
    """

    clb: int = 0
    bram: int = 0
    dsp: int = 0

    def __post_init__(self):
        for name in ("clb", "bram", "dsp"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} count must be a non-negative integer, got {v!r}")

    def covers(self, other: "ResourceVector") -> bool:
        """Componentwise feasibility order: every component of self >= other."""
        return self.clb >= other.clb and self.bram >= other.bram and self.dsp >= other.dsp

    def __add__(self, other: "ResourceVector") -> "ResourceVector":
        return ResourceVector(self.clb + other.clb, self.bram + other.bram, self.dsp + other.dsp)

    def __sub__(self, other: "ResourceVector") -> "ResourceVector":
        return ResourceVector(self.clb - other.clb, self.bram - other.bram, self.dsp - other.dsp)

    def max_with(self, other: "ResourceVector") -> "ResourceVector":
        return ResourceVector(
            max(self.clb, other.clb), max(self.bram, other.bram), max(self.dsp, other.dsp)
        )

    def get(self, kind: str) -> int:
        return getattr(self, kind.lower())

    def total(self) -> int:
        return self.clb + self.bram + self.dsp

    def as_dict(self) -> dict:
        return {"clb": self.clb, "bram": self.bram, "dsp": self.dsp}


@dataclass(frozen=True)
class Rect:
    """Inclusive cell rectangle: x = column index, y = CLB-row index, y up."""

    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self):
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError(f"degenerate rect {self}")

    @property
    def width(self) -> int:
        return self.x2 - self.x1 + 1

    @property
    def height(self) -> int:
        return self.y2 - self.y1 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def center(self) -> tuple[float, float]:
        """Center in boundary coordinates (x2+1, y2+1 are the far edges)."""
        return (self.x1 + self.x2 + 1) / 2.0, (self.y1 + self.y2 + 1) / 2.0

    def contains_cell(self, x: int, y: int) -> bool:
        return self.x1 <= x <= self.x2 and self.y1 <= y <= self.y2

    def intersects(self, other: "Rect") -> bool:
        return not (
            self.x2 < other.x1 or other.x2 < self.x1 or self.y2 < other.y1 or other.y2 < self.y1
        )


class FrameId(NamedTuple):
    column: int
    device_row: int


@dataclass(frozen=True)
class Fabric:
    """Immutable device description; safe to share across concurrent runs."""

    name: str
    num_rows: int
    row_height: int
    columns: tuple[str, ...]
    slices_per_frame: dict = field(default_factory=lambda: dict(DEFAULT_SLICES))
    reserved: tuple[Rect, ...] = ()

    def __post_init__(self):
        if not self.columns:
            raise ValueError("fabric needs at least one column")
        if self.num_rows < 1 or self.row_height < 1:
            raise ValueError("num_rows and row_height must be >= 1")
        for kind in self.columns:
            if kind not in KINDS:
                raise ValueError(f"unknown column kind {kind!r}")
        for kind in KINDS:
            if self.slices_per_frame.get(kind, 0) < 1:
                raise ValueError(f"slices_per_frame[{kind}] must be >= 1")
        for rect in self.reserved:
            if not self.in_bounds(rect):
                raise ValueError(f"reserved rect {rect} out of bounds")
        # Per-column merged reserved y-intervals, and per-column frame rows
        # blocked by the static region (a frame touched by any reserved cell
        # is not reconfigurable).
        intervals: list[list[tuple[int, int]]] = [[] for _ in self.columns]
        blocked: list[set[int]] = [set() for _ in self.columns]
        for rect in self.reserved:
            for x in range(rect.x1, rect.x2 + 1):
                intervals[x].append((rect.y1, rect.y2))
                for row in range(rect.y1 // self.row_height, rect.y2 // self.row_height + 1):
                    blocked[x].add(row)
        merged = [_merge_intervals(iv) for iv in intervals]
        object.__setattr__(self, "_reserved_by_col", tuple(tuple(iv) for iv in merged))
        object.__setattr__(self, "_blocked_rows_by_col", tuple(frozenset(b) for b in blocked))
        # Per-kind column prefix counts and column index lists (hot paths).
        prefix = {k: [0] for k in KINDS}
        cols_by_kind = {k: [] for k in KINDS}
        for x, kind in enumerate(self.columns):
            for k in KINDS:
                prefix[k].append(prefix[k][-1] + (1 if k == kind else 0))
            cols_by_kind[kind].append(x)
        object.__setattr__(self, "_kind_prefix", {k: tuple(v) for k, v in prefix.items()})
        object.__setattr__(self, "_cols_by_kind", {k: tuple(v) for k, v in cols_by_kind.items()})

    @property
    def num_columns(self) -> int:
        return len(self.columns)

    @property
    def grid_width(self) -> int:
        return len(self.columns)

    @property
    def grid_height(self) -> int:
        return self.num_rows * self.row_height

    def in_bounds(self, rect: Rect) -> bool:
        return (
            0 <= rect.x1
            and rect.x2 < self.grid_width
            and 0 <= rect.y1
            and rect.y2 < self.grid_height
        )

    def column_kind(self, x: int) -> str:
        return self.columns[x]

    def columns_of_kind(self, kind: str) -> list[int]:
        return [x for x, k in enumerate(self.columns) if k == kind]

    def reserved_cells_in_column(self, x: int, y1: int, y2: int) -> int:
        """Number of reserved cells in column x with y in [y1, y2]."""
        total = 0
        for a, b in self._reserved_by_col[x]:
            lo, hi = max(a, y1), min(b, y2)
            if lo <= hi:
                total += hi - lo + 1
        return total

    def blocked_frames(self) -> set[FrameId]:
        """Frames unavailable to reconfigurable regions (touch reserved cells)."""
        out = set()
        for x, rows in enumerate(self._blocked_rows_by_col):
            for r in rows:
                out.add(FrameId(x, r))
        return out

    def frame_rect(self, frame: FrameId) -> Rect:
        y1 = frame.device_row * self.row_height
        return Rect(frame.column, y1, frame.column, y1 + self.row_height - 1)

    def capacity(self, rect: Rect) -> ResourceVector:
        """Blocks of each kind inside ``rect``, excluding reserved cells.

        A column of kind k contributes ``covered_cells * s_k // row_height``
        blocks: full device rows contribute s_k each, partially covered frames
        count pro rata, rounded down.
        """
        if not self.in_bounds(rect):
            raise ValueError(f"rect {rect} out of bounds for {self.grid_width}x{self.grid_height}")
        counts = {k: 0 for k in KINDS}
        span = rect.y2 - rect.y1 + 1
        for x in range(rect.x1, rect.x2 + 1):
            cells = span - self.reserved_cells_in_column(x, rect.y1, rect.y2)
            kind = self.columns[x]
            counts[kind] += cells * self.slices_per_frame[kind] // self.row_height
        return ResourceVector(counts["CLB"], counts["BRAM"], counts["DSP"])

    def totals(self) -> ResourceVector:
        """Whole-chip block totals (static region included), per Eq.-of-record
        feasibility: the static region consumes from these totals."""
        counts = {k: 0 for k in KINDS}
        for kind in self.columns:
            counts[kind] += self.num_rows * self.slices_per_frame[kind]
        return ResourceVector(counts["CLB"], counts["BRAM"], counts["DSP"])

    def frames_in(self, rect: Rect) -> set[FrameId]:
        """Every frame whose column is covered and whose device row intersects
        [y1, y2]; partially covered device rows still yield their frame."""
        if not self.in_bounds(rect):
            raise ValueError(f"rect {rect} out of bounds for {self.grid_width}x{self.grid_height}")
        r1 = rect.y1 // self.row_height
        r2 = rect.y2 // self.row_height
        return {
            FrameId(x, r) for x in range(rect.x1, rect.x2 + 1) for r in range(r1, r2 + 1)
        }

    def is_frame_aligned(self, rect: Rect) -> bool:
        return rect.y1 % self.row_height == 0 and (rect.y2 + 1) % self.row_height == 0


def _merge_intervals(intervals: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1] + 1:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def parse_device(text: str) -> Fabric:
    """Parse a device description file (see the grammar in the README).

    Recognized lines: ``device <name>``, ``rows <R>``, ``row_height <H>``,
    ``cols <kind>{,<kind>}*`` (repeatable, appended in order),
    ``frame <kind> <slices>`` and ``reserved <x1> <y1> <x2> <y2>``.
    ``#`` starts a comment.
    """
    name = None
    num_rows = None
    row_height = 1
    columns: list[str] = []
    slices = dict(DEFAULT_SLICES)
    reserved: list[tuple[int, Rect]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key == "device":
                if len(fields) != 2:
                    raise ParseError(lineno, "expected: device <name>")
                name = fields[1]
            elif key == "rows":
                num_rows = _parse_count(lineno, fields, "rows <R>")
            elif key == "row_height":
                row_height = _parse_count(lineno, fields, "row_height <H>")
            elif key == "cols":
                spec = "".join(fields[1:])
                if not spec:
                    raise ParseError(lineno, "expected: cols <kind>{,<kind>}*")
                for token in spec.split(","):
                    kind = token.strip().upper()
                    if kind not in KINDS:
                        raise ParseError(lineno, f"unknown column kind {token.strip()!r}")
                    columns.append(kind)
            elif key == "frame":
                if len(fields) != 3:
                    raise ParseError(lineno, "expected: frame <kind> <slices>")
                kind = fields[1].upper()
                if kind not in KINDS:
                    raise ParseError(lineno, f"unknown column kind {fields[1]!r}")
                slices[kind] = _parse_int(lineno, fields[2])
                if slices[kind] < 1:
                    raise ParseError(lineno, "frame slices must be >= 1")
            elif key == "reserved":
                if len(fields) != 5:
                    raise ParseError(lineno, "expected: reserved <x1> <y1> <x2> <y2>")
                x1, y1, x2, y2 = (_parse_int(lineno, f) for f in fields[1:])
                reserved.append((lineno, Rect(x1, y1, x2, y2)))
            else:
                raise ParseError(lineno, f"unknown directive {key!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(lineno, str(exc)) from None

    if name is None:
        raise ParseError(1, "missing 'device <name>' line")
    if num_rows is None:
        raise ParseError(1, "missing 'rows <R>' line")
    if not columns:
        raise ParseError(1, "missing 'cols' line")
    width, height = len(columns), num_rows * row_height
    for lineno, rect in reserved:
        if rect.x1 < 0 or rect.y1 < 0 or rect.x2 >= width or rect.y2 >= height:
            raise ParseError(lineno, f"reserved rect out of bounds for {width}x{height} grid")
    return Fabric(
        name=name,
        num_rows=num_rows,
        row_height=row_height,
        columns=tuple(columns),
        slices_per_frame=slices,
        reserved=tuple(rect for _, rect in reserved),
    )


def serialize_device(fabric: Fabric) -> str:
    """Canonical device-file form; parse_device(serialize_device(f)) == f."""
    lines = [
        f"device {fabric.name}",
        f"rows {fabric.num_rows}",
        f"row_height {fabric.row_height}",
        "cols " + ",".join(fabric.columns),
    ]
    for kind in KINDS:
        lines.append(f"frame {kind} {fabric.slices_per_frame[kind]}")
    for r in fabric.reserved:
        lines.append(f"reserved {r.x1} {r.y1} {r.x2} {r.y2}")
    return "\n".join(lines) + "\n"


def _parse_int(lineno: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {token!r}") from None


def _parse_count(lineno: int, fields: list[str], usage: str) -> int:
    if len(fields) != 2:
        raise ParseError(lineno, f"expected: {usage}")
    value = _parse_int(lineno, fields[1])
    if value < 1:
        raise ParseError(lineno, f"{fields[0]} must be >= 1")
    return value
