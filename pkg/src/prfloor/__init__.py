"""Floorplanner for partially reconfigurable designs on heterogeneous FPGAs."""

from .anneal import (
    AnnealParams,
    AnnealResult,
    Floorplan,
    InfeasibleDesignError,
    SequencePair,
    anneal,
    initial_floorplan,
    propose_move,
    realize,
    run_annealer,
    sp_from_floorplan,
)
from .cost import CostBreakdown, CostWeights, Normalizers, bounding_area, centroid, hpwl, rw_cost, total_cost
from .design import (
    CapacityVerdict,
    Design,
    ModuleInstance,
    Net,
    Region,
    Terminal,
    check_capacity,
    parse_design,
    region_requirement,
    serialize_design,
)
from .fabric import (
    Fabric,
    FrameId,
    ParseError,
    Rect,
    ResourceVector,
    parse_device,
    serialize_device,
)
from .placer import (
    OccupancyState,
    Placement,
    SearchBounds,
    allocate_scheme1,
    allocate_scheme2,
    allocate_scheme3,
    overlaps,
    wasted_frames,
)
from .priority import RegionType, SortedRegion, classify, medal_sort
from .whitespace import WhiteSpace, WsWeights, detect_whitespace, score_whitespaces, whitespace_cost

__version__ = "0.1.0"
