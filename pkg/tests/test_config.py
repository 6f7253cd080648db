import pytest
from hypothesis import given, strategies as st

from grtbv.config import ConfigError, RunConfig, format_config, parse_config
from grtbv.superpoly import DarbouxSpace, Truncation

positive = st.integers(1, 50)


@given(positive, positive, positive, positive, positive, st.integers(0, 10**9), st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_config_round_trip(mv, me, h, u, d, seed, space):
    cfg = RunConfig(mv, me, h, u, d, seed, tuple(space))
    assert parse_config(format_config(cfg)) == cfg


def test_defaults_and_derived_objects():
    cfg = RunConfig()
    assert cfg.truncation == Truncation(3, 3, 6)
    assert cfg.darboux == DarbouxSpace((1, -1))
    assert cfg.updated(seed=5, u_order=None).seed == 5


def test_partial_file_keeps_defaults():
    cfg = parse_config("# run\nseed = 7\nspace = 0, 1\n")
    assert cfg == RunConfig(seed=7, space=(0, 1))


@pytest.mark.parametrize(
    "text",
    ["bogus = 1\n", "seed = x\n", "seed 3\n", "hbar_order = 0\n", "seed = -1\n", "seed = 1\nseed = 2\n", "space =\n"],
)
def test_bad_config_files(text):
    with pytest.raises(ConfigError):
        parse_config(text)
