import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    all_free_rects,
    anchored_policy_choice,
    min_frames,
    rects_overlap_by_cells,
)
from prfloor import fixtures
from prfloor.fabric import Rect, ResourceVector, parse_device
from prfloor.placer import (
    OccupancyState,
    allocate_scheme1,
    allocate_scheme2,
    allocate_scheme3,
    overlaps,
    wasted_frames,
)
from prfloor.whitespace import WsWeights, detect_whitespace, score_whitespaces


def vec(clb, bram, dsp):
    return ResourceVector(clb, bram, dsp)


class TestWastedFrames:
    @pytest.mark.parametrize(
        "n,per_frame,expected",
        [
            (8, 4, (2, 0)),  # exact multiple wastes nothing
            (0, 4, (0, 0)),
            (5, 4, (2, 3)),  # frozen from the minimal-frame-count oracle
            (30, 20, (2, 10)),
        ],
    )
    def test_examples(self, n, per_frame, expected):
        assert min_frames(n, per_frame) == expected
        assert wasted_frames(n, per_frame) == expected

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            wasted_frames(-1, 4)
        with pytest.raises(ValueError):
            wasted_frames(3, 0)

    @given(st.integers(0, 500), st.integers(1, 40))
    def test_matches_oracle_and_remainder_bound(self, n, per_frame):
        frames, waste = wasted_frames(n, per_frame)
        assert (frames, waste) == min_frames(n, per_frame)
        assert 0 <= waste < per_frame
        assert frames * per_frame >= n


class TestOverlaps:
    def test_x_disjoint(self):
        assert not overlaps(Rect(0, 0, 2, 2), Rect(3, 0, 5, 2))

    def test_identical(self):
        assert overlaps(Rect(1, 1, 4, 4), Rect(1, 1, 4, 4))

    def test_corner_cell_shared(self):
        a, b = Rect(0, 0, 4, 4), Rect(4, 4, 6, 6)
        assert rects_overlap_by_cells(a, b)
        assert overlaps(a, b)

    @given(st.lists(st.integers(0, 7), min_size=8, max_size=8))
    def test_matches_cell_set_oracle(self, vals):
        x1, y1, dx1, dy1, x2, y2, dx2, dy2 = vals
        a = Rect(x1, y1, x1 + dx1, y1 + dy1)
        b = Rect(x2, y2, x2 + dx2, y2 + dy2)
        assert overlaps(a, b) == rects_overlap_by_cells(a, b)


class TestScheme1:
    def test_leftmost_anchor_on_empty_fixture(self, fixture_device):
        state = OccupancyState(fixture_device)
        req = vec(5, 1, 2)
        p = allocate_scheme1(state, req, name="a")
        oracle = anchored_policy_choice(fixture_device, set(), req, "DSP")
        assert p.rect == oracle == Rect(11, 0, 15, 1)
        assert p.frames == frozenset(fixture_device.frames_in(p.rect))
        assert p.waste == fixture_device.capacity(p.rect) - req

    def test_dsp_demand_beyond_device(self, fixture_device):
        state = OccupancyState(fixture_device)
        assert allocate_scheme1(state, vec(1, 1, 11), name="a") is None

    def test_second_allocation_moves_up(self, fixture_device):
        state = OccupancyState(fixture_device)
        req = vec(5, 1, 2)
        first = allocate_scheme1(state, req, name="a")
        second = allocate_scheme1(state, req, name="b")
        oracle = anchored_policy_choice(
            fixture_device, {tuple(f) for f in first.frames}, req, "DSP"
        )
        assert second.rect == oracle == Rect(11, 2, 15, 3)
        assert not (first.frames & second.frames)

    def test_type_mismatch_rejected(self, fixture_device):
        state = OccupancyState(fixture_device)
        with pytest.raises(ValueError):
            allocate_scheme1(state, vec(5, 0, 1), name="a")


class TestScheme2:
    def test_dsp_and_clb_single_row(self, fixture_device):
        state = OccupancyState(fixture_device)
        req = vec(3, 0, 1)
        p = allocate_scheme2(state, req, name="a")
        oracle = anchored_policy_choice(fixture_device, set(), req, "DSP")
        assert p.rect == oracle == Rect(11, 0, 15, 0)
        assert p.rect.y1 == p.rect.y2 == 0  # row 0 only

    def test_bram_and_clb_pair(self, fixture_device):
        state = OccupancyState(fixture_device)
        req = vec(1, 1, 0)
        p = allocate_scheme2(state, req, name="a")
        oracle = anchored_policy_choice(fixture_device, set(), req, "BRAM")
        assert p.rect == oracle == Rect(9, 0, 10, 0)
        assert p.waste == vec(0, 0, 0)

    def test_clb_zero_rejected(self, fixture_device):
        state = OccupancyState(fixture_device)
        with pytest.raises(ValueError):
            allocate_scheme2(state, ResourceVector(0, 1, 0), name="a")

    def test_type4_rejected(self, fixture_device):
        state = OccupancyState(fixture_device)
        with pytest.raises(ValueError):
            allocate_scheme2(state, vec(5, 0, 0), name="a")


class TestScheme3:
    def _spaces(self, state, centroid=(11.5, 5.0)):
        return score_whitespaces(
            detect_whitespace(state), centroid, WsWeights(), state.fabric
        )

    def test_min_cost_space_with_enough_clb_wins(self, fixture_device):
        state = OccupancyState(fixture_device)
        spaces = self._spaces(state)
        p = allocate_scheme3(state, vec(4, 0, 0), spaces, centroid=(11.5, 5.0), name="a")
        # Empty fixture: the whole grid is the single white space; the
        # sub-rectangle sits in a corner, away from the mid-grid DSP column.
        assert p.rect in (Rect(0, 0, 3, 0), Rect(19, 0, 22, 0), Rect(0, 9, 3, 9), Rect(19, 9, 22, 9))
        assert p.waste == vec(0, 0, 0)

    def test_cheaper_space_must_fit(self, fixture_device):
        # Demand exceeding every white space is infeasible.
        state = OccupancyState(fixture_device)
        spaces = self._spaces(state)
        assert allocate_scheme3(state, vec(201, 0, 0), spaces, name="a") is None

    def test_skips_too_small_cheap_space(self, clb4x4):
        state = OccupancyState(clb4x4)
        state.place("blk", Rect(0, 0, 1, 3), vec(8, 0, 0))
        spaces = self._spaces(state, centroid=(1.0, 2.0))
        # Only the right half remains; a 5-CLB request must use it.
        p = allocate_scheme3(state, vec(5, 0, 0), spaces, centroid=(1.0, 2.0), name="a")
        assert p is not None
        assert p.rect.x1 >= 2

    def test_selection_rule_min_cost_with_sufficient_clb(self, fixture_device):
        state = OccupancyState(fixture_device)
        # Claim the middle rows to split free space into two bands.
        state.place("mid", Rect(0, 4, 22, 5), vec(40, 4, 2))
        spaces = self._spaces(state)
        req = vec(10, 0, 0)
        chosen = allocate_scheme3(state, req, spaces, centroid=(11.5, 5.0), name="a")
        eligible = [ws for ws in spaces if ws.free.clb >= req.clb]
        assert eligible[0].cost == min(ws.cost for ws in eligible)
        r = chosen.rect
        wsr = eligible[0].rect
        assert wsr.x1 <= r.x1 and wsr.y1 <= r.y1 and r.x2 <= wsr.x2 and r.y2 <= wsr.y2

    def test_exact_fit_consumes_space(self, clb4x4):
        state = OccupancyState(clb4x4)
        state.place("blk", Rect(0, 0, 2, 3), vec(12, 0, 0))
        spaces = self._spaces(state, centroid=(2.0, 2.0))
        p = allocate_scheme3(state, vec(4, 0, 0), spaces, centroid=(2.0, 2.0), name="a")
        assert p.rect == Rect(3, 0, 3, 3)
        assert p.waste == vec(0, 0, 0)


class TestInvariants:
    @settings(deadline=None, max_examples=25)
    @given(st.data())
    def test_random_allocation_sequences_stay_disjoint(self, data):
        fab = parse_device(fixtures.DEVICE_10X23)
        state = OccupancyState(fab)
        placements = []
        for i in range(data.draw(st.integers(1, 6))):
            clb = data.draw(st.integers(1, 25))
            bram = data.draw(st.integers(0, 3))
            dsp = data.draw(st.integers(0, 2))
            req = vec(clb, bram, dsp)
            if dsp > 0 and bram > 0:
                p = allocate_scheme1(state, req, name=f"r{i}")
            elif dsp > 0 or bram > 0:
                p = allocate_scheme2(state, req, name=f"r{i}")
            else:
                spaces = score_whitespaces(
                    detect_whitespace(state), (11.5, 5.0), WsWeights(), fab
                )
                p = allocate_scheme3(state, req, spaces, centroid=(11.5, 5.0), name=f"r{i}")
            if p is None:
                continue
            placements.append(p)
            cap = fab.capacity(p.rect)
            assert cap.covers(req)
            assert p.waste == cap - req
            assert fab.is_frame_aligned(p.rect)
            # Eq.-15-style lower bound: claimed blocks come in whole frames.
            for kind in ("CLB", "BRAM", "DSP"):
                need = req.get(kind)
                _, remainder = wasted_frames(need, fab.slices_per_frame[kind])
                assert p.waste.get(kind) >= remainder or cap.get(kind) % fab.slices_per_frame[kind] != 0

        for i, a in enumerate(placements):
            for b in placements[i + 1 :]:
                assert not overlaps(a.rect, b.rect)
                assert not (a.frames & b.frames)

    def test_fallback_is_complete(self, fixture_device):
        # Fill everything except a T-shaped pocket the anchored scan cannot
        # express, then ask for a CLB+BRAM region that only fits there.
        state = OccupancyState(fixture_device)
        state.place("wall", Rect(0, 2, 22, 9), vec(160, 16, 8))
        state.place("plug", Rect(0, 0, 8, 1), vec(18, 0, 0))
        req = vec(2, 1, 0)
        p = allocate_scheme2(state, req, name="x")
        assert p is not None
        claimed = {tuple(f) for f in state.claimed_frames - p.frames}
        assert all_free_rects(fixture_device, claimed, req)

    def test_allocation_never_undercovers(self, fixture_device):
        state = OccupancyState(fixture_device)
        for i in range(30):
            p = allocate_scheme2(state, vec(3, 1, 0), name=f"r{i}")
            if p is None:
                break
            assert fixture_device.capacity(p.rect).covers(vec(3, 1, 0))
