import pytest

from sumsetlab import PointConfig, normalize_config

from corpus import CORPUS


@pytest.fixture(scope="session")
def corpus():
    """(name, raw config, normalized config) for every corpus set."""
    out = []
    for name, pts in CORPUS:
        raw = PointConfig.from_points(pts)
        out.append((name, raw, normalize_config(raw)))
    return out
