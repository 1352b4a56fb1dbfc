import pytest

from prfloor import fixtures, parse_design, parse_device


@pytest.fixture(scope="session")
def fixture_device():
    return parse_device(fixtures.DEVICE_10X23)


@pytest.fixture(scope="session")
def v5_device():
    return parse_device(fixtures.DEVICE_V5)


@pytest.fixture(scope="session")
def filter7_design():
    return parse_design(fixtures.DESIGN_FILTER7)


def make_clb_device(width: int, rows: int, name: str = "toy") -> str:
    """All-CLB device text with one block per frame."""
    return (
        f"device {name}\nrows {rows}\nrow_height 1\ncols "
        + ",".join(["CLB"] * width)
        + "\nframe CLB 1\nframe BRAM 1\nframe DSP 1\n"
    )


@pytest.fixture(scope="session")
def clb4x4():
    return parse_device(make_clb_device(4, 4))
