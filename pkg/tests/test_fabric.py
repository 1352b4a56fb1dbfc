import pytest
from hypothesis import given, strategies as st

from oracles import capacity_by_cells, frames_by_enumeration
from prfloor import fixtures
from prfloor.fabric import (
    Fabric,
    FrameId,
    ParseError,
    Rect,
    ResourceVector,
    parse_device,
    serialize_device,
)

MINIMAL = "device tiny\nrows 1\nrow_height 1\ncols CLB\n"


class TestResourceVector:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ResourceVector(-1, 0, 0)

    def test_covers_is_componentwise(self):
        assert ResourceVector(5, 2, 1).covers(ResourceVector(5, 2, 1))
        assert ResourceVector(5, 2, 1).covers(ResourceVector(4, 2, 0))
        assert not ResourceVector(5, 2, 1).covers(ResourceVector(6, 0, 0))
        assert not ResourceVector(5, 2, 1).covers(ResourceVector(0, 3, 0))

    @given(st.lists(st.integers(0, 50), min_size=6, max_size=6))
    def test_add_sub_roundtrip(self, vals):
        a = ResourceVector(*vals[:3])
        b = ResourceVector(*vals[3:])
        assert (a + b) - b == a

    def test_max_with(self):
        a = ResourceVector(3, 1, 2)
        b = ResourceVector(5, 0, 1)
        assert a.max_with(b) == ResourceVector(5, 1, 2)


class TestParseDevice:
    def test_fixture_10x23(self, fixture_device):
        fab = fixture_device
        assert fab.num_columns == 23
        assert fab.num_rows == 10
        assert fab.row_height == 1
        assert fab.columns.count("CLB") == 20
        assert fab.columns.count("BRAM") == 2
        assert fab.columns.count("DSP") == 1

    def test_minimal_single_frame(self):
        fab = parse_device(MINIMAL)
        assert fab.num_columns == 1 and fab.num_rows == 1
        assert fab.totals() == ResourceVector(clb=20)  # default slices apply

    def test_unknown_kind_names_line(self):
        text = "device d\nrows 1\nrow_height 1\ncols CLB,LUT\n"
        with pytest.raises(ParseError) as err:
            parse_device(text)
        assert err.value.line == 4
        assert "LUT" in str(err.value)

    def test_reserved_out_of_bounds(self):
        text = MINIMAL + "reserved 0 0 5 0\n"
        with pytest.raises(ParseError) as err:
            parse_device(text)
        assert "reserved" in str(err.value)

    def test_missing_rows(self):
        with pytest.raises(ParseError):
            parse_device("device d\ncols CLB\n")

    def test_comments_and_blank_lines(self):
        text = "# a device\ndevice d\n\nrows 2  # two rows\nrow_height 1\ncols CLB\n"
        assert parse_device(text).num_rows == 2

    def test_default_frame_slices(self):
        fab = parse_device("device d\nrows 1\nrow_height 20\ncols CLB,BRAM,DSP\n")
        assert fab.slices_per_frame == {"CLB": 20, "BRAM": 2, "DSP": 4}

    def test_roundtrip_identity(self, fixture_device, v5_device):
        for fab in (fixture_device, v5_device):
            again = parse_device(serialize_device(fab))
            assert again == fab
            assert serialize_device(again) == serialize_device(fab)

    def test_roundtrip_with_reserved(self):
        text = MINIMAL.replace("rows 1", "rows 4") + "reserved 0 1 0 2\n"
        fab = parse_device(text)
        assert parse_device(serialize_device(fab)) == fab


class TestCapacity:
    def test_full_grid_fixture(self, fixture_device):
        rect = Rect(0, 0, 22, 9)
        expected = capacity_by_cells(fixture_device, rect)
        assert expected == ResourceVector(200, 20, 10)
        assert fixture_device.capacity(rect) == expected

    def test_reserved_region_is_empty(self):
        text = MINIMAL.replace("rows 1", "rows 4") + "reserved 0 1 0 2\n"
        fab = parse_device(text)
        assert fab.capacity(Rect(0, 1, 0, 2)) == ResourceVector(0, 0, 0)

    def test_single_clb_cell(self, fixture_device):
        assert fixture_device.capacity(Rect(0, 0, 0, 0)) == ResourceVector(1, 0, 0)

    def test_out_of_bounds_rejected(self, fixture_device):
        with pytest.raises(ValueError):
            fixture_device.capacity(Rect(0, 0, 23, 9))

    def test_v5_partial_frame_pro_rata(self, v5_device):
        # Half a BRAM frame (10 of 20 cells) counts one of two blocks.
        x = v5_device.columns_of_kind("BRAM")[0]
        assert v5_device.capacity(Rect(x, 0, x, 9)) == ResourceVector(0, 1, 0)
        assert v5_device.capacity(Rect(x, 0, x, 19)) == ResourceVector(0, 2, 0)

    @given(st.data())
    def test_additive_over_column_split(self, data):
        fab = parse_device(fixtures.DEVICE_10X23)
        x1 = data.draw(st.integers(0, 21))
        x2 = data.draw(st.integers(x1 + 1, 22))
        split = data.draw(st.integers(x1, x2 - 1))
        y1 = data.draw(st.integers(0, 9))
        y2 = data.draw(st.integers(y1, 9))
        whole = fab.capacity(Rect(x1, y1, x2, y2))
        left = fab.capacity(Rect(x1, y1, split, y2))
        right = fab.capacity(Rect(split + 1, y1, x2, y2))
        assert whole == left + right

    @given(st.data())
    def test_matches_cell_oracle_with_reserved(self, data):
        text = (
            "device r\nrows 3\nrow_height 4\ncols CLB,BRAM,CLB,DSP,CLB\n"
            "frame CLB 4\nframe BRAM 2\nframe DSP 1\n"
            "reserved 1 2 3 7\nreserved 0 0 0 0\n"
        )
        fab = parse_device(text)
        x1 = data.draw(st.integers(0, 4))
        x2 = data.draw(st.integers(x1, 4))
        y1 = data.draw(st.integers(0, 11))
        y2 = data.draw(st.integers(y1, 11))
        rect = Rect(x1, y1, x2, y2)
        assert fab.capacity(rect) == capacity_by_cells(fab, rect)


class TestFrames:
    def test_single_frame(self, fixture_device):
        assert fixture_device.frames_in(Rect(3, 0, 3, 0)) == {FrameId(3, 0)}

    def test_two_by_two(self, fixture_device):
        frames = fixture_device.frames_in(Rect(0, 0, 1, 1))
        assert frames == {FrameId(0, 0), FrameId(0, 1), FrameId(1, 0), FrameId(1, 1)}

    def test_partial_row_is_atomic(self, v5_device):
        # One cell of device row 2 still claims the whole frame.
        frames = v5_device.frames_in(Rect(5, 45, 5, 45))
        assert frames == {FrameId(5, 2)}
        assert frames == {FrameId(*f) for f in frames_by_enumeration(v5_device, Rect(5, 45, 5, 45))}

    def test_matches_enumeration(self, v5_device):
        rect = Rect(3, 15, 6, 40)
        got = {tuple(f) for f in v5_device.frames_in(rect)}
        assert got == frames_by_enumeration(v5_device, rect)

    @given(st.data())
    def test_disjoint_aligned_rects_share_no_frame(self, data):
        fab = parse_device(fixtures.DEVICE_V5)
        h = fab.row_height

        def draw_rect():
            x1 = data.draw(st.integers(0, fab.num_columns - 1))
            x2 = data.draw(st.integers(x1, fab.num_columns - 1))
            r1 = data.draw(st.integers(0, fab.num_rows - 1))
            r2 = data.draw(st.integers(r1, fab.num_rows - 1))
            return Rect(x1, r1 * h, x2, (r2 + 1) * h - 1)

        a, b = draw_rect(), draw_rect()
        if not a.intersects(b):
            assert not (fab.frames_in(a) & fab.frames_in(b))

    def test_blocked_frames_cover_reserved(self):
        text = (
            "device r\nrows 3\nrow_height 4\ncols CLB,CLB\n"
            "frame CLB 4\n"
            "reserved 0 3 0 5\n"  # straddles device rows 0 and 1
        )
        fab = parse_device(text)
        assert fab.blocked_frames() == {FrameId(0, 0), FrameId(0, 1)}
