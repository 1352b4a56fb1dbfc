"""PR design model: regions, module instances, terminals and hyperedge nets.

A region hosts one or more module instances and must be floorplanned large
enough for the biggest of them, componentwise.  Nets connect region
rectangles' centers and fixed terminal points on the device edges; pin-level
netlists are collapsed at ingestion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fabric import Fabric, ParseError, ResourceVector

EDGES = ("left", "right", "top", "bottom")


@dataclass(frozen=True)
class ModuleInstance:
    name: str
    demand: ResourceVector

    def __post_init__(self):
        if self.demand.clb == 0 and self.demand.total() > 0:
            raise ValueError(f"instance {self.name!r} uses BRAM/DSP but no CLB")


@dataclass(frozen=True)
class Region:
    name: str
    instances: tuple[ModuleInstance, ...]

    def __post_init__(self):
        if not self.instances:
            raise ValueError(f"region {self.name!r} has no module instances")


@dataclass(frozen=True)
class Terminal:
    """A fixed I/O point: edge plus a cell offset along that edge.

    Offsets are validated against a concrete fabric by
    :func:`bind_design`, not at parse time.
    """

    name: str
    edge: str
    offset: int

    def __post_init__(self):
        if self.edge not in EDGES:
            raise ValueError(f"terminal {self.name!r}: unknown edge {self.edge!r}")
        if self.offset < 0:
            raise ValueError(f"terminal {self.name!r}: negative offset")

    def position(self, fabric: Fabric) -> tuple[float, float]:
        """Boundary-coordinate point of this terminal on the device edge."""
        w, h = fabric.grid_width, fabric.grid_height
        if self.edge == "left":
            return 0.0, self.offset + 0.5
        if self.edge == "right":
            return float(w), self.offset + 0.5
        if self.edge == "bottom":
            return self.offset + 0.5, 0.0
        return self.offset + 0.5, float(h)


@dataclass(frozen=True)
class Net:
    name: str
    endpoints: tuple[str, ...]

    def __post_init__(self):
        if not self.endpoints:
            raise ValueError(f"net {self.name!r} has no endpoints")


@dataclass(frozen=True)
class Design:
    name: str
    regions: tuple[Region, ...]
    terminals: tuple[Terminal, ...] = ()
    nets: tuple[Net, ...] = ()
    static_demand: ResourceVector = field(default_factory=ResourceVector)

    def __post_init__(self):
        names = [r.name for r in self.regions] + [t.name for t in self.terminals]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ValueError(f"duplicate names: {sorted(dupes)}")
        known = set(names)
        for net in self.nets:
            for ep in net.endpoints:
                if ep not in known:
                    raise ValueError(f"net {net.name!r}: unresolved endpoint {ep!r}")

    def region(self, name: str) -> Region:
        for r in self.regions:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class CapacityVerdict:
    """Outcome of the aggregate chip-capacity check (a verdict, not an error)."""

    feasible: bool
    required: ResourceVector
    available: ResourceVector
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.feasible


def region_requirement(region: Region) -> ResourceVector:
    """Componentwise maximum over the region's instance demands."""
    req = ResourceVector()
    for inst in region.instances:
        req = req.max_with(inst.demand)
    return req


def check_capacity(design: Design, fabric: Fabric) -> CapacityVerdict:
    """Whole-chip feasibility: static demand plus the sum of all region
    requirements must fit the fabric totals, componentwise (non-strict)."""
    required = design.static_demand
    for region in design.regions:
        required = required + region_requirement(region)
    available = fabric.totals()
    violations = tuple(
        kind for kind in ("CLB", "BRAM", "DSP") if required.get(kind) > available.get(kind)
    )
    return CapacityVerdict(not violations, required, available, violations)


def bind_design(design: Design, fabric: Fabric) -> None:
    """Validate fabric-dependent design invariants (terminal offsets)."""
    for t in design.terminals:
        length = fabric.grid_height if t.edge in ("left", "right") else fabric.grid_width
        if t.offset >= length:
            raise ValueError(
                f"terminal {t.name!r}: offset {t.offset} exceeds {t.edge} edge length {length}"
            )


def parse_design(text: str) -> Design:
    """Parse a design file.

    Recognized lines: ``design <name>``, ``static clb <n> bram <n> dsp <n>``,
    ``region <rname>``, ``module <rname> <iname> clb <n> bram <n> dsp <n>``,
    ``terminal <tname> <edge> <offset>`` and ``net <nname> <endpoint>+``.
    """
    name = None
    static = ResourceVector()
    region_order: list[str] = []
    instances: dict[str, list[ModuleInstance]] = {}
    terminals: list[Terminal] = []
    nets: list[Net] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key == "design":
                if len(fields) != 2:
                    raise ParseError(lineno, "expected: design <name>")
                name = fields[1]
            elif key == "static":
                static = _parse_demand(lineno, fields[1:])
            elif key == "region":
                if len(fields) != 2:
                    raise ParseError(lineno, "expected: region <rname>")
                rname = fields[1]
                if rname in instances:
                    raise ParseError(lineno, f"duplicate region {rname!r}")
                region_order.append(rname)
                instances[rname] = []
            elif key == "module":
                if len(fields) < 3:
                    raise ParseError(lineno, "expected: module <rname> <iname> clb <n> ...")
                rname, iname = fields[1], fields[2]
                if rname not in instances:
                    raise ParseError(lineno, f"module for undeclared region {rname!r}")
                demand = _parse_demand(lineno, fields[3:])
                instances[rname].append(ModuleInstance(iname, demand))
            elif key == "terminal":
                if len(fields) != 4:
                    raise ParseError(lineno, "expected: terminal <tname> <edge> <offset>")
                edge = fields[2].lower()
                if edge not in EDGES:
                    raise ParseError(lineno, f"unknown edge {fields[2]!r}")
                terminals.append(Terminal(fields[1], edge, _parse_offset(lineno, fields[3])))
            elif key == "net":
                if len(fields) < 3:
                    raise ParseError(lineno, "expected: net <nname> <endpoint>+")
                nets.append(Net(fields[1], tuple(fields[2:])))
            else:
                raise ParseError(lineno, f"unknown directive {key!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(lineno, str(exc)) from None

    if name is None:
        raise ParseError(1, "missing 'design <name>' line")
    regions = []
    for rname in region_order:
        if not instances[rname]:
            raise ParseError(1, f"region {rname!r} declares no module instances")
        regions.append(Region(rname, tuple(instances[rname])))
    try:
        return Design(name, tuple(regions), tuple(terminals), tuple(nets), static)
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None


def serialize_design(design: Design) -> str:
    lines = [f"design {design.name}"]
    s = design.static_demand
    if s.total() > 0:
        lines.append(f"static clb {s.clb} bram {s.bram} dsp {s.dsp}")
    for region in design.regions:
        lines.append(f"region {region.name}")
        for inst in region.instances:
            d = inst.demand
            lines.append(
                f"module {region.name} {inst.name} clb {d.clb} bram {d.bram} dsp {d.dsp}"
            )
    for t in design.terminals:
        lines.append(f"terminal {t.name} {t.edge.capitalize()} {t.offset}")
    for net in design.nets:
        lines.append(f"net {net.name} " + " ".join(net.endpoints))
    return "\n".join(lines) + "\n"


def _parse_demand(lineno: int, fields: list[str]) -> ResourceVector:
    """Parse the ``clb <n> bram <n> dsp <n>`` tail of a demand line."""
    if len(fields) % 2 != 0:
        raise ParseError(lineno, "demand must be '<kind> <count>' pairs")
    counts = {"clb": 0, "bram": 0, "dsp": 0}
    for i in range(0, len(fields), 2):
        kind = fields[i].lower()
        if kind not in counts:
            raise ParseError(lineno, f"unknown resource kind {fields[i]!r}")
        value = int(fields[i + 1]) if fields[i + 1].lstrip("-").isdigit() else None
        if value is None or value < 0:
            raise ParseError(lineno, f"bad count {fields[i + 1]!r} for {kind}")
        counts[kind] = value
    return ResourceVector(**counts)


def _parse_offset(lineno: int, token: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(lineno, f"bad offset {token!r}") from None
    if value < 0:
        raise ParseError(lineno, "offset must be >= 0")
    return value
