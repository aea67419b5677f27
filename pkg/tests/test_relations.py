import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equibench.relations import (
    STRICTLY_MONOTONE_IDS,
    eval_relation,
    get_relation,
    list_relations,
    sample_x,
)

ALL_IDS = [s.id for s in list_relations()]


def test_catalog_has_21_relations_in_stable_order():
    specs = list_relations()
    assert len(specs) == 21
    assert specs[0].id == "line"
    assert specs[-1].id == "lopsided_l_shaped"
    assert [s.id for s in list_relations()] == ALL_IDS


def test_sample_x_deterministic():
    a = sample_x(5, seed=42)
    b = sample_x(5, seed=42)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, sample_x(5, seed=43))


def test_sample_x_uniform_mean():
    x = sample_x(10_000, seed=0)
    assert abs(x.mean() - 0.5) < 0.02
    assert x.min() >= 0.0 and x.max() <= 1.0


def test_sample_x_rejects_tiny_n():
    with pytest.raises(ValueError):
        sample_x(1, seed=0)


def test_unknown_relation_id():
    with pytest.raises(ValueError, match="unknown relation"):
        get_relation("nosuch")


# Scalar re-derivations of each catalog formula, written with math.* so a
# transcription slip in relations.py cannot hide. Three probe points each.
def _scalar_formulas():
    I = lambda b: 1.0 if b else 0.0
    return {
        "line": lambda x: x,
        "linear_periodic_low": lambda x: 0.2 * math.sin(4 * (2 * x - 1)) + 11 / 10 * (2 * x - 1),
        "linear_periodic_medium": lambda x: math.sin(10 * math.pi * x) + x,
        "linear_periodic_high1": lambda x: 0.1 * math.sin(10.6 * (2 * x - 1)) + 11 / 10 * (2 * x - 1),
        "linear_periodic_high2": lambda x: 0.2 * math.sin(10.6 * (2 * x - 1)) + 11 / 10 * (2 * x - 1),
        "non_fourier_cosine_low": lambda x: math.cos(7 * math.pi * x),
        "cosine_high": lambda x: math.cos(14 * math.pi * x),
        "cubic": lambda x: 4 * x**3 + x**2 - 4 * x,
        "cubic_y_stretched": lambda x: 41 * (4 * x**3 + x**2 - 4 * x),
        "l_shaped": lambda x: x / 99 * I(x <= 99 / 100) + I(x > 99 / 100),
        "exp_2x": lambda x: 2**x,
        "exp_10x": lambda x: 10**x,
        "parabola": lambda x: 4 * x**2,
        "non_fourier_sine_low": lambda x: math.sin(9 * math.pi * x),
        "sine_low": lambda x: math.sin(8 * math.pi * x),
        "sine_high": lambda x: math.sin(16 * math.pi * x),
        "sigmoid": lambda x: (50 * (x - 0.5) + 0.5) * I(1 / 20 <= x <= 51 / 100) + I(x > 51 / 100),
        "varying_freq_cosine": lambda x: math.sin(5 * math.pi * x * (1 + x)),
        "varying_freq_sine": lambda x: math.sin(6 * math.pi * x * (1 + x)),
        "spike": lambda x: 20 * I(x < 1 / 20)
        + (-18 * x + 19 / 10) * I(1 / 20 <= x < 1 / 10)
        + (-x / 9 + 1 / 9) * I(x >= 1 / 10),
        "lopsided_l_shaped": lambda x: 200 * x * I(x < 1 / 200)
        + (-198 * x + 199 / 100) * I(1 / 200 <= x < 1 / 100)
        + (-x / 99 + 1 / 99) * I(x >= 1 / 100),
    }


@pytest.mark.parametrize("rel_id", ALL_IDS)
def test_formula_matches_scalar_rederivation(rel_id):
    ref = _scalar_formulas()[rel_id]
    probes = np.array([0.0, 0.031, 0.077, 0.33, 0.5, 0.51, 0.77, 0.99, 1.0])
    got = eval_relation(rel_id, probes)
    want = np.array([ref(float(p)) for p in probes])
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)


def test_pinned_plugin_values():
    assert eval_relation("line", np.array([0.5]))[0] == 0.5
    assert eval_relation("parabola", np.array([0.5]))[0] == 1.0
    assert eval_relation("spike", np.array([0.04]))[0] == 20.0


# Exact branch-boundary values; each, evaluated by hand from the indicator
# inequalities. A point on a closed boundary must take the closed branch.
BOUNDARY_CASES = [
    ("l_shaped", 0.99, 0.01),  # x <= 99/100 keeps the x/99 branch
    ("l_shaped", 0.991, 1.0),
    ("sigmoid", 0.049, 0.0),  # below 1/20 both indicators are off
    ("sigmoid", 0.05, -22.0),  # 50(0.05-0.5)+0.5
    ("sigmoid", 0.51, 1.0),  # closed right edge of the ramp
    ("sigmoid", 0.52, 1.0),
    ("spike", 0.049, 20.0),
    ("spike", 0.05, 1.0),  # -18/20 + 19/10
    ("spike", 0.0999, -18 * 0.0999 + 1.9),
    ("spike", 0.1, 0.1),  # -(1/10)/9 + 1/9
    ("lopsided_l_shaped", 0.0049, 0.98),
    ("lopsided_l_shaped", 0.005, 1.0),  # -198/200 + 199/100
    ("lopsided_l_shaped", 0.0099, -198 * 0.0099 + 1.99),
    ("lopsided_l_shaped", 0.01, 0.01),  # -(1/100)/99 + 1/99
]


@pytest.mark.parametrize("rel_id,x,expected", BOUNDARY_CASES)
def test_piecewise_boundaries(rel_id, x, expected):
    got = eval_relation(rel_id, np.array([x]))[0]
    assert got == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("rel_id", ALL_IDS)
@given(xs=st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=50))
@settings(max_examples=25, deadline=None)
def test_total_and_deterministic_on_unit_interval(rel_id, xs):
    x = np.array(xs)
    y1 = eval_relation(rel_id, x)
    y2 = eval_relation(rel_id, x)
    assert np.all(np.isfinite(y1))
    np.testing.assert_array_equal(y1, y2)


def test_rejects_non_finite_x():
    with pytest.raises(ValueError):
        eval_relation("line", np.array([0.5, np.nan]))


def test_monotone_subset_is_strictly_increasing():
    x = np.linspace(0, 1, 200)
    for rel_id in STRICTLY_MONOTONE_IDS:
        y = eval_relation(rel_id, x)
        assert np.all(np.diff(y) > 0), rel_id
