import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrmdisc.baselines import (
    QuantaMatrix,
    caim_discretize_attribute,
    caim_value,
    equal_frequency,
    equal_width,
    info_gain,
    mdlp_discretize_attribute,
    pkid_discretize_attribute,
)
from mrmdisc.core import AttributeScheme, apply_scheme
from mrmdisc.errors import ShapeError
from mrmdisc.infotheory import JointCounts, mutual_information

import oracles

# MDL acceptance thresholds for a pure two-class split of N instances, two classes
MDLP_THRESHOLD_N4 = 0.598079355694690072
MDLP_THRESHOLD_N2 = 0.403677461028802054

attribute_with_labels = st.integers(2, 40).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 12), min_size=n, max_size=n),
        st.lists(st.integers(0, 2), min_size=n, max_size=n),
    )
)


class TestInfoGain:
    def test_perfect_split(self):
        assert info_gain([1, 2, 3, 4], [0, 0, 1, 1], 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_useless_split(self):
        assert info_gain([1, 2, 3, 4], [0, 1, 0, 1], 2.0) == pytest.approx(0.0, abs=1e-12)

    def test_empty_side(self):
        with pytest.raises(ValueError):
            info_gain([1, 2], [0, 1], 5.0)

    @settings(max_examples=100, deadline=None)
    @given(attribute_with_labels)
    def test_equals_mi_of_two_bin_scheme(self, case):
        x, y = case
        u = sorted(set(x))
        if len(u) < 2:
            return
        cut = float(u[len(u) // 2 - 1]) if len(u) > 2 else float(u[0])
        bins = apply_scheme(x, AttributeScheme((cut,)))
        _, yy = np.unique(y, return_inverse=True)
        mi = mutual_information(JointCounts.from_labels(bins, yy, 2, yy.max() + 1))
        assert info_gain(x, y, cut) == pytest.approx(mi, abs=1e-9)


class TestMdlp:
    def test_four_points(self):
        # gain 1.0 beats the N=4 threshold
        assert 1.0 > MDLP_THRESHOLD_N4
        assert mdlp_discretize_attribute([1, 2, 3, 4], [0, 0, 1, 1]).cuts == (2.0,)

    def test_two_points(self):
        assert 1.0 > MDLP_THRESHOLD_N2
        assert mdlp_discretize_attribute([1, 2], [0, 1]).cuts == (1.0,)

    def test_single_class(self):
        assert mdlp_discretize_attribute([1, 5, 9, 2], [1, 1, 1, 1]).cuts == ()

    def test_noise_rejected(self):
        assert mdlp_discretize_attribute([1, 2, 3, 4], [0, 1, 0, 1]).cuts == ()

    @settings(max_examples=150, deadline=None)
    @given(attribute_with_labels)
    def test_matches_naive(self, case):
        x, y = case
        got = mdlp_discretize_attribute(x, y).cuts
        assert list(got) == oracles.naive_mdlp([float(v) for v in x], y)


class TestCaim:
    def test_value_pure(self):
        assert caim_value([[3, 0], [0, 3]]) == pytest.approx(3.0)

    def test_value_mixed(self):
        # (3^2/4 + 3^2/4) / 2
        assert caim_value(QuantaMatrix(np.array([[3, 1], [1, 3]]))) == pytest.approx(2.25)

    def test_value_rejects_empty_interval(self):
        with pytest.raises(ValueError):
            caim_value([[0, 0], [1, 2]])

    def test_quanta_shape(self):
        with pytest.raises(ShapeError):
            QuantaMatrix(np.array([1, 2, 3]))

    def test_midpoint_cut(self):
        assert caim_discretize_attribute([1, 2, 3, 4], [0, 0, 1, 1]).cuts == (2.5,)

    def test_single_class(self):
        assert caim_discretize_attribute([1, 2, 3], [0, 0, 0]).cuts == ()

    @settings(max_examples=100, deadline=None)
    @given(attribute_with_labels)
    def test_matches_naive(self, case):
        x, y = case
        got = caim_discretize_attribute(x, y).cuts
        assert list(got) == pytest.approx(oracles.naive_caim([float(v) for v in x], y))


class TestUnsupervised:
    def test_pkid_hundred(self):
        x = np.arange(100.0)
        s = pkid_discretize_attribute(x)
        assert np.bincount(apply_scheme(x, s)).tolist() == [10] * 10

    def test_pkid_tiny(self):
        # floor(sqrt 3) == 1 interval
        assert pkid_discretize_attribute([1.0, 2.0, 3.0]).cuts == ()

    def test_pkid_ties_never_split(self):
        x = np.array([1.0] * 8 + [2.0] * 8)
        bins = apply_scheme(x, pkid_discretize_attribute(x))
        for v in (1.0, 2.0):
            assert len(set(bins[x == v])) == 1

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=200))
    def test_pkid_bin_count(self, values):
        s = pkid_discretize_attribute(values)
        assert len(s) <= math.isqrt(len(values)) - 1
        assert all(c < max(values) for c in s.cuts)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=300, unique=True))
    def test_pkid_distinct_values_balanced(self, values):
        x = np.array(values)
        s = pkid_discretize_attribute(x)
        sizes = np.bincount(apply_scheme(x, s))
        assert len(sizes) == math.isqrt(len(x))
        assert sizes.max() - sizes.min() <= 1

    def test_equal_width(self):
        assert equal_width(np.arange(11.0), 2).cuts == (5.0,)
        assert equal_width(np.arange(11.0), 1).cuts == ()
        assert equal_width([3.0, 3.0], 4).cuts == ()

    def test_equal_frequency(self):
        assert equal_frequency([1, 1, 1, 9], 2).cuts == (1.0,)
        assert equal_frequency([1, 2, 3, 4, 5, 6], 3).cuts == (2.0, 4.0)

    @pytest.mark.parametrize("f", [equal_width, equal_frequency])
    def test_k_must_be_positive(self, f):
        with pytest.raises(ValueError):
            f([1.0, 2.0], 0)
