import pytest
from hypothesis import given, strategies as st

from prfloor.design import (
    ModuleInstance,
    Region,
    Terminal,
    bind_design,
    check_capacity,
    parse_design,
    region_requirement,
    serialize_design,
)
from prfloor.fabric import ParseError, ResourceVector

TWO_REGIONS = """\
design two
region a
module a m0 clb 10 bram 0 dsp 0
region b
module b m0 clb 4 bram 2 dsp 0
net n0 a b
"""


def vec(clb, bram, dsp):
    return ResourceVector(clb, bram, dsp)


class TestParseDesign:
    def test_two_regions_one_net(self):
        des = parse_design(TWO_REGIONS)
        assert len(des.regions) == 2
        assert len(des.nets) == 1
        assert des.nets[0].endpoints == ("a", "b")

    def test_unresolved_endpoint_names_it(self):
        with pytest.raises(ParseError) as err:
            parse_design(TWO_REGIONS + "net n1 a foo\n")
        assert "foo" in str(err.value)

    def test_duplicate_region(self):
        text = TWO_REGIONS + "region a\nmodule a m9 clb 1 bram 0 dsp 0\n"
        with pytest.raises(ParseError):
            parse_design(text)

    def test_seven_region_filter(self, filter7_design):
        assert len(filter7_design.regions) == 7
        for region in filter7_design.regions:
            assert {i.name for i in region.instances} == {"median", "mean"}

    def test_region_without_instances(self):
        with pytest.raises(ParseError):
            parse_design("design d\nregion a\n")

    def test_instance_without_logic_rejected(self):
        with pytest.raises(Exception):
            parse_design("design d\nregion a\nmodule a m clb 0 bram 1 dsp 0\n")

    def test_static_line(self):
        des = parse_design("design d\nstatic clb 30 bram 2 dsp 1\nregion a\nmodule a m clb 1\n")
        assert des.static_demand == vec(30, 2, 1)

    def test_roundtrip(self, filter7_design):
        again = parse_design(serialize_design(filter7_design))
        assert again == filter7_design

    def test_terminal_offset_bound(self, fixture_device):
        des = parse_design("design d\nregion a\nmodule a m clb 1\nterminal t Left 25\n")
        with pytest.raises(ValueError):
            bind_design(des, fixture_device)

    def test_terminal_positions(self, fixture_device):
        assert Terminal("t", "left", 5).position(fixture_device) == (0.0, 5.5)
        assert Terminal("t", "right", 0).position(fixture_device) == (23.0, 0.5)
        assert Terminal("t", "bottom", 11).position(fixture_device) == (11.5, 0.0)
        assert Terminal("t", "top", 0).position(fixture_device) == (0.5, 10.0)


class TestRegionRequirement:
    def test_componentwise_max(self):
        r = Region("r", (ModuleInstance("a", vec(10, 0, 0)), ModuleInstance("b", vec(4, 2, 0))))
        assert region_requirement(r) == vec(10, 2, 0)

    def test_single_instance_identity(self):
        r = Region("r", (ModuleInstance("a", vec(5, 1, 2)),))
        assert region_requirement(r) == vec(5, 1, 2)

    def test_three_instances_exhaustive_max(self):
        demands = [vec(3, 1, 2), vec(5, 0, 1), vec(1, 4, 0)]
        r = Region("r", tuple(ModuleInstance(f"m{i}", d) for i, d in enumerate(demands)))
        expected = vec(
            max(d.clb for d in demands),
            max(d.bram for d in demands),
            max(d.dsp for d in demands),
        )
        assert expected == vec(5, 4, 2)
        assert region_requirement(r) == expected

    @given(st.lists(st.tuples(st.integers(1, 30), st.integers(0, 9), st.integers(0, 9)), min_size=1, max_size=6))
    def test_requirement_dominates_every_instance(self, rows):
        r = Region("r", tuple(ModuleInstance(f"m{i}", vec(*d)) for i, d in enumerate(rows)))
        req = region_requirement(r)
        for inst in r.instances:
            assert req.covers(inst.demand)
        for kind in ("clb", "bram", "dsp"):
            assert req.get(kind) in [inst.demand.get(kind) for inst in r.instances]


class TestCheckCapacity:
    def _design(self, demands, static=vec(0, 0, 0)):
        regions = tuple(
            Region(f"r{i}", (ModuleInstance("m", vec(*d)),)) for i, d in enumerate(demands)
        )
        from prfloor.design import Design

        return Design("d", regions, static_demand=static)

    def test_feasible_sum(self, fixture_device):
        des = self._design([(150, 15, 8)], static=vec(30, 2, 1))
        verdict = check_capacity(des, fixture_device)
        assert verdict.feasible
        assert verdict.required == vec(180, 17, 9)

    def test_boundary_equality_is_feasible(self, fixture_device):
        des = self._design([(200, 20, 10)])
        assert check_capacity(des, fixture_device).feasible

    def test_dsp_excess_names_dsp(self, fixture_device):
        des = self._design([(1, 0, 11)])
        verdict = check_capacity(des, fixture_device)
        assert not verdict.feasible
        assert verdict.violations == ("DSP",)

    @given(st.integers(1, 40), st.integers(0, 5), st.integers(0, 3))
    def test_monotone_in_added_instances(self, clb, bram, dsp):
        from prfloor.design import Design
        from prfloor.fabric import parse_device
        from prfloor import fixtures

        fab = parse_device(fixtures.DEVICE_10X23)
        base = self._design([(190, 18, 9)])
        grown = Design(
            "d",
            base.regions + (Region("extra", (ModuleInstance("m", vec(clb, bram, dsp)),)),),
        )
        if not check_capacity(base, fab).feasible:
            assert not check_capacity(grown, fab).feasible
