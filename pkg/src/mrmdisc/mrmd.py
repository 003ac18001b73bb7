"""Max-relevance / min-divergence greedy discretization.

For each numeric attribute, cut points are added one at a time.  A candidate
scheme is scored by

    psi = lambda * I(A; C) - JS(P_train || P_val)

where ``I`` is the mutual information between the training bins and the class,
``JS`` the Jensen-Shannon divergence between the training and validation bin
histograms, and ``lambda = exp(-n_cuts / n_d)`` shrinks as the scheme grows.
The loop stops as soon as the best candidate no longer beats the best score
so far.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import AttributeScheme, DiscretizationScheme, apply_scheme, passthrough_scheme
from .dataio import NUMERIC, Dataset
from .errors import ConfigurationError
from .infotheory import JointCounts, histogram, js_divergence, mutual_information

__all__ = [
    "MrmdConfig",
    "CandidateScore",
    "TraceStep",
    "MrmdTrace",
    "lambda_weight",
    "score_scheme",
    "mrmd_discretize_attribute",
    "mrmd_discretize",
    "write_trace_csv",
]

# Scores closer than this are treated as equal, both for tie-breaking between
# candidates and for the "no improvement" test.  Incremental and from-scratch
# evaluation of the same scheme differ by a few ulps.
SCORE_TOL = 1e-12

NO_IMPROVEMENT = "no_improvement"
CANDIDATES_EXHAUSTED = "candidates_exhausted"
CAP_REACHED = "cap_reached"


@dataclass(frozen=True)
class MrmdConfig:
    """``n_d`` sets the decay of lambda; ``max_cuts`` is an optional safety cap.

    ``initial_psi_max`` is the score the first candidate must beat.  The
    default (-inf) always accepts the best first cut; 0.0 compares it with
    the empty scheme instead, so an attribute whose every split costs more
    divergence than it gains relevance stays in a single bin.
    """

    n_d: float = 50.0
    max_cuts: int | None = None
    initial_psi_max: float = -math.inf

    def __post_init__(self):
        if not self.n_d >= 1:
            raise ConfigurationError(f"n_d must be >= 1, got {self.n_d}")
        if self.max_cuts is not None and self.max_cuts < 0:
            raise ConfigurationError("max_cuts must be non-negative")


DEFAULT_CONFIG = MrmdConfig()


@dataclass(frozen=True)
class CandidateScore:
    cut: float | None
    psi: float
    mi: float
    jsd: float
    lambda_used: float


@dataclass(frozen=True)
class TraceStep:
    round: int
    cut: float
    psi: float
    mi: float
    jsd: float
    lambda_used: float
    n_cuts: int


@dataclass
class MrmdTrace:
    steps: list[TraceStep] = field(default_factory=list)
    termination: str = CANDIDATES_EXHAUSTED

    @property
    def cut_sequence(self) -> list[float]:
        return [s.cut for s in self.steps]

    @property
    def psi_max(self) -> list[float]:
        return [s.psi for s in self.steps]


def lambda_weight(num_cuts: int, cfg: MrmdConfig = DEFAULT_CONFIG) -> float:
    return math.exp(-num_cuts / cfg.n_d)


def _dense_labels(labels) -> tuple[np.ndarray, int]:
    _, inv = np.unique(np.asarray(labels), return_inverse=True)
    return inv.astype(np.intp), int(inv.max()) + 1 if inv.size else 0


def score_scheme(
    train_vals,
    train_labels,
    val_vals,
    cuts: AttributeScheme,
    cfg: MrmdConfig = DEFAULT_CONFIG,
) -> CandidateScore:
    """Evaluate a complete scheme from scratch with the generic kernels."""
    train_vals = np.asarray(train_vals, dtype=float)
    val_vals = np.asarray(val_vals, dtype=float)
    if train_vals.size == 0:
        raise ConfigurationError("training portion is empty")
    if val_vals.size == 0:
        raise ConfigurationError("validation portion is empty; the divergence term is undefined")
    if not isinstance(cuts, AttributeScheme):
        cuts = AttributeScheme(tuple(cuts))
    y, n_classes = _dense_labels(train_labels)
    tb = apply_scheme(train_vals, cuts)
    vb = apply_scheme(val_vals, cuts)
    mi = mutual_information(JointCounts.from_labels(tb, y, cuts.n_bins, n_classes))
    jsd = js_divergence(histogram(tb, cuts.n_bins), histogram(vb, cuts.n_bins))
    lam = lambda_weight(len(cuts), cfg)
    return CandidateScore(cuts.cuts[-1] if cuts.cuts else None, lam * mi - jsd, mi, jsd, lam)


def _xlogx_ratio(num, den):
    """Elementwise num * log2(num / den) with 0 where num == 0."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    out = np.zeros(np.broadcast(num, den).shape)
    nz = np.broadcast_to(num > 0, out.shape)
    numb = np.broadcast_to(num, out.shape)
    denb = np.broadcast_to(den, out.shape)
    out[nz] = numb[nz] * np.log2(numb[nz] / denb[nz])
    return out


class _AttributeState:
    """Cumulative count tables over the sorted unique training values.

    Row ``b`` of ``cum_t`` holds class counts of training values ``<= u[b-1]``
    and ``cum_v[b]`` the number of validation values in the same range, so a
    bin spanning boundaries ``(lo, hi]`` has counts ``cum[hi] - cum[lo]``.
    """

    def __init__(self, x, y, n_classes, v):
        self.u = np.unique(x)
        n_u = len(self.u)
        pos = np.searchsorted(self.u, x)
        per_value = np.zeros((n_u, n_classes))
        np.add.at(per_value, (pos, y), 1.0)
        self.cum_t = np.vstack([np.zeros((1, n_classes)), np.cumsum(per_value, axis=0)])
        cum_v = np.concatenate([[0], np.searchsorted(np.sort(v), self.u, side="right")]).astype(float)
        cum_v[-1] = len(v)  # validation values above the training maximum clamp to the top bin
        self.cum_v = cum_v
        self.n_t = float(len(x))
        self.n_v = float(len(v))
        self.class_totals = self.cum_t[-1]

    def bin_terms(self, lo, hi):
        """Per-bin contributions to (mutual information, JS divergence)."""
        tc = self.cum_t[hi] - self.cum_t[lo]
        nb = tc.sum(axis=-1, keepdims=True)
        mi = _xlogx_ratio(tc / self.n_t, nb * self.class_totals / self.n_t**2).sum(axis=-1)
        pt = nb[..., 0] / self.n_t
        pv = (self.cum_v[hi] - self.cum_v[lo]) / self.n_v
        m = 0.5 * (pt + pv)
        js = 0.5 * (_xlogx_ratio(pt, m) + _xlogx_ratio(pv, m))
        return mi, js


def mrmd_discretize_attribute(
    train_vals,
    train_labels,
    val_vals,
    cfg: MrmdConfig = DEFAULT_CONFIG,
) -> tuple[AttributeScheme, MrmdTrace]:
    x = np.asarray(train_vals, dtype=float)
    v = np.asarray(val_vals, dtype=float)
    if x.size == 0:
        raise ConfigurationError("training portion is empty")
    if v.size == 0:
        raise ConfigurationError("validation portion is empty; the divergence term is undefined")
    y, n_classes = _dense_labels(train_labels)
    state = _AttributeState(x, y, n_classes, v)
    n_u = len(state.u)

    # Scheme as boundary indices into the cumulative tables; cut at u[b-1].
    boundaries = [0, n_u]
    remaining = np.arange(1, n_u)  # candidate boundaries, i.e. every unique value but the max
    trace = MrmdTrace()
    psi_max = cfg.initial_psi_max

    while True:
        if remaining.size == 0:
            trace.termination = CANDIDATES_EXHAUSTED
            break
        if cfg.max_cuts is not None and len(boundaries) - 2 >= cfg.max_cuts:
            trace.termination = CAP_REACHED
            break

        b_arr = np.asarray(boundaries)
        mi_bins, js_bins = state.bin_terms(b_arr[:-1], b_arr[1:])
        mi_now, js_now = mi_bins.sum(), js_bins.sum()

        slot = np.searchsorted(b_arr, remaining)
        lo, hi = b_arr[slot - 1], b_arr[slot]
        mi_w, js_w = state.bin_terms(lo, hi)
        mi_l, js_l = state.bin_terms(lo, remaining)
        mi_r, js_r = state.bin_terms(remaining, hi)
        mi = np.maximum(mi_now - mi_w + mi_l + mi_r, 0.0)
        jsd = np.clip(js_now - js_w + js_l + js_r, 0.0, 1.0)
        lam = lambda_weight(len(boundaries) - 1, cfg)
        psi = lam * mi - jsd

        best = psi.max()
        k = int(np.flatnonzero(psi >= best - SCORE_TOL)[0])  # smallest cut among ties
        if not psi[k] > psi_max + SCORE_TOL:
            trace.termination = NO_IMPROVEMENT
            break
        psi_max = float(psi[k])
        b = int(remaining[k])
        boundaries.insert(int(np.searchsorted(boundaries, b)), b)
        remaining = np.delete(remaining, k)
        trace.steps.append(
            TraceStep(
                round=len(trace.steps) + 1,
                cut=float(state.u[b - 1]),
                psi=psi_max,
                mi=float(mi[k]),
                jsd=float(jsd[k]),
                lambda_used=lam,
                n_cuts=len(boundaries) - 2,
            )
        )

    cuts = tuple(float(state.u[b - 1]) for b in boundaries[1:-1])
    return AttributeScheme(cuts), trace


def mrmd_discretize(
    train: Dataset,
    val: Dataset,
    cfg: MrmdConfig = DEFAULT_CONFIG,
    traces: dict[str, MrmdTrace] | None = None,
) -> DiscretizationScheme:
    """Discretize every numeric attribute independently; nominal ones pass through.

    When ``traces`` is a dict it is filled with the per-attribute traces.
    """
    if [a.name for a in train.attributes] != [a.name for a in val.attributes]:
        raise ConfigurationError("training and validation portions have different schemas")
    schemes = {}
    for j, a in enumerate(train.attributes):
        if a.kind != NUMERIC:
            continue
        schemes[a.name], tr = mrmd_discretize_attribute(
            train.columns[j], train.class_labels, val.columns[j], cfg
        )
        if traces is not None:
            traces[a.name] = tr
    return passthrough_scheme(train, schemes, method="mrmd")


def write_trace_csv(traces: dict[str, MrmdTrace], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["attribute", "round", "chosen_cut", "mi", "jsd", "lambda", "psi", "termination"])
        for name, tr in traces.items():
            for s in tr.steps:
                w.writerow([name, s.round, repr(s.cut), repr(s.mi), repr(s.jsd),
                            repr(s.lambda_used), repr(s.psi), tr.termination])
