"""Canonical device and design fixtures used by tests and the README.

``DEVICE_10X23``: a single clock region, 10 rows by 23 columns, one block
per frame (columns 0-9 CLB, 10 BRAM, 11 DSP, 12 BRAM, 13-22 CLB).

``DEVICE_V5``: a Virtex-5-scale device, 8 device rows of 20 CLB cells,
70 columns with scattered BRAM/DSP columns and slice counts of 20/2/4
blocks per frame.
"""

from __future__ import annotations

DEVICE_10X23 = """\
device user10x23
rows 10
row_height 1
cols CLB,CLB,CLB,CLB,CLB,CLB,CLB,CLB,CLB,CLB,BRAM,DSP,BRAM,CLB,CLB,CLB,CLB,CLB,CLB,CLB,CLB,CLB,CLB
frame CLB 1
frame BRAM 1
frame DSP 1
"""

_V5_BRAM_COLS = {4, 13, 22, 31, 38, 47, 56, 65}
_V5_DSP_COLS = {9, 18, 27, 42, 51, 60}


def _v5_columns() -> list[str]:
    cols = []
    for x in range(70):
        if x in _V5_BRAM_COLS:
            cols.append("BRAM")
        elif x in _V5_DSP_COLS:
            cols.append("DSP")
        else:
            cols.append("CLB")
    return cols


DEVICE_V5 = (
    "device virtex5s\n"
    "rows 8\n"
    "row_height 20\n"
    "cols " + ",".join(_v5_columns()) + "\n"
    "frame CLB 20\n"
    "frame BRAM 2\n"
    "frame DSP 4\n"
)

# Seven-region image filter style design for the 10x23 device: each region
# carries two alternative modules with identical pin footprints.
DESIGN_FILTER7 = """\
design filter7
region pr0
module pr0 median clb 12 bram 2 dsp 1
module pr0 mean clb 10 bram 1 dsp 1
region pr1
module pr1 median clb 10 bram 1 dsp 0
module pr1 mean clb 8 bram 2 dsp 0
region pr2
module pr2 median clb 14 bram 0 dsp 1
module pr2 mean clb 12 bram 0 dsp 0
region pr3
module pr3 median clb 9 bram 0 dsp 0
module pr3 mean clb 11 bram 0 dsp 0
region pr4
module pr4 median clb 8 bram 0 dsp 0
module pr4 mean clb 6 bram 0 dsp 0
region pr5
module pr5 median clb 10 bram 0 dsp 0
module pr5 mean clb 7 bram 0 dsp 0
region pr6
module pr6 median clb 6 bram 0 dsp 0
module pr6 mean clb 5 bram 0 dsp 0
terminal t_in Left 5
terminal t_out Right 5
terminal t_cfg Bottom 11
net n_in t_in pr0
net n_01 pr0 pr1
net n_12 pr1 pr2
net n_23 pr2 pr3
net n_34 pr3 pr4
net n_45 pr4 pr5
net n_56 pr5 pr6
net n_out pr6 t_out
net n_cfg t_cfg pr0 pr3 pr6
"""
