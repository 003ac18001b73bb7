import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrmdisc import nbayes
from mrmdisc.core import DiscreteDataset
from mrmdisc.errors import FitError, ShapeError

import oracles


def _dd(rows, labels, bins_per_attribute, n_classes):
    rows = np.asarray(rows, dtype=np.int64).reshape(len(labels), len(bins_per_attribute))
    return DiscreteDataset(
        tuple(rows[:, j].copy() for j in range(rows.shape[1])),
        tuple(bins_per_attribute),
        np.asarray(labels, dtype=np.int64),
        n_classes,
    )


class TestSmoothing:
    # three instances, two classes; attribute 0 has 3 bins, attribute 1 has 8
    d = _dd([[0, 0], [0, 1], [1, 2]], [0, 0, 1], (3, 8), 2)

    def test_prior(self):
        m = nbayes.fit(self.d)
        assert math.exp(m.log_priors[0]) == pytest.approx(0.6)  # (2 + 1) / (3 + 2)
        assert math.exp(m.log_priors[1]) == pytest.approx(0.4)

    def test_likelihoods(self):
        m = nbayes.fit(self.d)
        p0 = np.exp(m.log_likelihoods[0])
        assert p0[0, 0] == pytest.approx(0.6)  # (2 + 1) / (2 + 3)
        assert p0[1, 1] == pytest.approx(0.5)  # (1 + 1) / (1 + 3)
        assert np.exp(m.log_likelihoods[1])[7, 0] == pytest.approx(0.1)  # (0 + 1) / (2 + 8)

    def test_tables_normalised(self):
        m = nbayes.fit(self.d)
        for t in m.log_likelihoods:
            np.testing.assert_allclose(np.exp(t).sum(axis=0), 1.0)

    def test_empty(self):
        with pytest.raises(FitError):
            nbayes.fit(_dd(np.zeros((0, 1)), [], (2,), 2))


class TestPredict:
    def test_dominant_class(self):
        d = _dd([[0]] * 9 + [[1]], [0] * 9 + [1], (2,), 2)
        m = nbayes.fit(d)
        assert nbayes.predict(m, [0]) == 0

    def test_tie_goes_to_smallest_index(self):
        d = _dd([[0], [1], [0], [1]], [1, 0, 0, 1], (2,), 2)
        m = nbayes.fit(d)
        assert nbayes.predict(m, [0]) == 0
        assert nbayes.predict_many(m, [[0], [1]]).tolist() == [0, 0]

    def test_out_of_range(self):
        m = nbayes.fit(_dd([[0], [1]], [0, 1], (2,), 2))
        with pytest.raises(ShapeError):
            nbayes.predict(m, [2])
        with pytest.raises(ShapeError):
            nbayes.predict(m, [0, 0])

    def test_unseen_class_still_scored(self):
        m = nbayes.fit(_dd([[0], [1]], [0, 0], (2,), 3))
        lp = nbayes.predict_log_posterior(m, [1])
        assert lp.shape == (3,)
        assert np.all(np.isfinite(lp))


problems = st.tuples(st.integers(1, 4), st.integers(1, 3), st.integers(2, 4), st.integers(1, 25)).flatmap(
    lambda s: st.tuples(
        st.just(s),
        st.lists(st.lists(st.integers(0, s[2] - 1), min_size=s[0], max_size=s[0]), min_size=s[3], max_size=s[3]),
        st.lists(st.integers(0, s[1]), min_size=s[3], max_size=s[3]),
        st.lists(st.integers(0, s[2] - 1), min_size=s[0], max_size=s[0]),
    )
)


@settings(max_examples=150, deadline=None)
@given(problems)
def test_posterior_matches_explicit_product(case):
    (n_attr, max_class, n_bins, _), rows, labels, x = case
    n_classes = max_class + 1
    bpa = [n_bins] * n_attr
    m = nbayes.fit(_dd(rows, labels, bpa, n_classes))
    lp = nbayes.predict_log_posterior(m, x)
    post = np.exp(lp - lp.max())
    post /= post.sum()
    np.testing.assert_allclose(post, oracles.naive_nb_posterior(rows, labels, bpa, n_classes, x), atol=1e-9)
    assert nbayes.predict(m, x) == int(np.argmax(lp))


@settings(max_examples=80, deadline=None)
@given(problems)
def test_constant_attribute_changes_nothing(case):
    (n_attr, max_class, n_bins, _), rows, labels, x = case
    n_classes = max_class + 1
    bpa = [n_bins] * n_attr
    base = nbayes.fit(_dd(rows, labels, bpa, n_classes))
    padded = nbayes.fit(_dd([r + [0] for r in rows], labels, bpa + [1], n_classes))
    lp1 = nbayes.predict_log_posterior(base, x)
    lp2 = nbayes.predict_log_posterior(padded, x + [0])
    # a one-bin attribute contributes log((n_c + 1) / (n_c + 1)) = 0 to every class
    np.testing.assert_allclose(lp1, lp2, atol=1e-12)


@settings(max_examples=80, deadline=None)
@given(problems)
def test_relabelled_bins_give_same_predictions(case):
    (n_attr, max_class, n_bins, _), rows, labels, x = case
    n_classes = max_class + 1
    bpa = [n_bins] * n_attr
    shift = [[(b + 1) % n_bins for b in r] for r in rows]
    m1 = nbayes.fit(_dd(rows, labels, bpa, n_classes))
    m2 = nbayes.fit(_dd(shift, labels, bpa, n_classes))
    np.testing.assert_allclose(
        nbayes.predict_log_posterior(m1, x),
        nbayes.predict_log_posterior(m2, [(b + 1) % n_bins for b in x]),
        atol=1e-12,
    )
