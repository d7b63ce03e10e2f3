import pytest

from knotoid.engine import verify_model
from knotoid.models import (
    MODEL_NAMES,
    grid_to_tensor,
    model_by_name,
    sawollek_burau_R,
    sawollek_model,
    tensor_to_grid,
)
from knotoid.scalar import ONE, ZERO, poly_parse

ALL = ["bracket", "binary", "alexander", "sawollek", "homflypt:1", "homflypt:2", "homflypt:3"]


@pytest.mark.parametrize("name", ALL)
def test_models_pass_every_identity(name):
    report = verify_model(model_by_name(name))
    assert report.ok, str(report)


@pytest.mark.parametrize("name", ["bracket", "alexander", "homflypt:1"])
def test_corrupted_r_is_caught_with_a_witness(name):
    model = model_by_name(name)
    R = dict(model.R)
    key = next(iter(R))
    R[key] = R[key] + poly_parse("A*q")
    bad = verify_model(model.with_tensor(R=R, name=name + "-corrupt"))
    assert not bad.ok
    assert any(c.witness is not None for c in bad.failures())


def test_printed_sawollek_entry_breaks_invertibility():
    # with sigma*tau^-1 at (01, 10), R and Rbar are no longer inverse
    model = sawollek_model()
    R = dict(model.R)
    R[(0, 1, 1, 0)] = poly_parse("s*t^-1")
    report = verify_model(model.with_tensor(R=R))
    assert not next(c for c in report.checks if c.name == "R*Rbar = I").passed


def test_sawollek_is_the_rescaled_burau_matrix():
    R, Rinv = sawollek_burau_R()
    model = sawollek_model()
    up, down = poly_parse("s^-1*t"), poly_parse("s*t^-1")
    assert {k: v * up for k, v in R.items()} == model.R
    assert {k: v * down for k, v in Rinv.items()} == model.Rbar


def test_grid_roundtrip():
    grid = [[ONE, ZERO, ZERO, ZERO], [ZERO, ZERO, ONE, ZERO], [ZERO, ONE, ZERO, ZERO], [ZERO, ZERO, ZERO, ONE]]
    assert tensor_to_grid(grid_to_tensor(grid, 2), 2) == grid


def test_homflypt_label_sets():
    assert model_by_name("homflypt:2").labels == (-2, 0, 2)
    assert model_by_name("homflypt:3").n == 4


@pytest.mark.parametrize("bad", ["jones", "homflypt:0", "homflypt:x", ""])
def test_unknown_model_ids(bad):
    with pytest.raises(ValueError):
        model_by_name(bad)


def test_model_names_listed():
    assert "homflypt:<n>" in MODEL_NAMES
