"""Region classification and the medal-tally priority sort.

Regions are typed by which scarce resources they need and floorplanned in
that order: Type 1 (DSP+BRAM+CLB) first, then Type 2 (DSP+CLB), Type 3
(BRAM+CLB) and finally Type 4 (CLB only).  Within a type, scarcer demand
wins first, like a medal tally with gold=DSP, silver=BRAM, bronze=CLB.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .design import Design, region_requirement
from .fabric import ResourceVector


class RegionType(IntEnum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3
    TYPE4 = 4


@dataclass(frozen=True)
class SortedRegion:
    name: str
    rtype: RegionType
    requirement: ResourceVector


def classify(req: ResourceVector) -> RegionType:
    """Type of a requirement vector; rejects CLB-free regions."""
    if req.clb <= 0:
        raise ValueError("region requirement must include at least one CLB")
    if req.dsp > 0 and req.bram > 0:
        return RegionType.TYPE1
    if req.dsp > 0:
        return RegionType.TYPE2
    if req.bram > 0:
        return RegionType.TYPE3
    return RegionType.TYPE4


def medal_key(name: str, req: ResourceVector) -> tuple:
    """Sort key: type ascending, then (dsp, bram, clb) descending, then name."""
    return (classify(req), -req.dsp, -req.bram, -req.clb, name)


def medal_sort(design: Design) -> list[SortedRegion]:
    entries = [(r.name, region_requirement(r)) for r in design.regions]
    entries.sort(key=lambda e: medal_key(*e))
    return [SortedRegion(name, classify(req), req) for name, req in entries]
