import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from missqm.errors import TooFewVariablesError, UnknownMetricError
from missqm.filters import MetricPredicate, parse_filter
from missqm.matrices import JM_ABS, PairwiseQMMatrix
from missqm.ordering import order_by_pairwise, order_by_univariate, threshold_select
from missqm.univariate import MissingnessProfile, ProfileEntry

from conftest import coimbra_like
from missqm.generate import JmPairSpec, MissingnessSpec, inject_am, inject_jm
from missqm.joint import jm_matrices
from missqm.univariate import profile


def profile_of(q_values) -> MissingnessProfile:
    n = 10
    entries = tuple(
        ProfileEntry(f"v{j}", q, int(q * n), n - int(q * n)) for j, q in enumerate(q_values)
    )
    return MissingnessProfile(entries, sum(q_values) / len(q_values))


def symmetric_matrix(values, metric=JM_ABS) -> PairwiseQMMatrix:
    arr = np.asarray(values, dtype=float)
    np.fill_diagonal(arr, np.nan)
    k = arr.shape[0]
    names = tuple(f"v{j}" for j in range(k))
    return PairwiseQMMatrix(metric, names, arr, np.zeros((k, k), dtype=np.int64), symmetric=True)


def test_order_by_univariate_descending():
    ordering = order_by_univariate(profile_of([0.1, 0.5, 0.3]))
    assert ordering.permutation == (1, 2, 0)
    assert ordering.anchor_pair == (1, 2)


def test_order_by_univariate_stable_on_ties():
    ordering = order_by_univariate(profile_of([0.2, 0.2, 0.2]))
    assert ordering.permutation == (0, 1, 2)


def test_order_by_univariate_ascending():
    ordering = order_by_univariate(profile_of([0.1, 0.5, 0.3]), descending=False)
    assert ordering.permutation == (0, 2, 1)


def test_order_single_variable():
    ordering = order_by_univariate(profile_of([0.4]))
    assert ordering.permutation == (0,)
    assert ordering.anchor_pair is None


def test_regenerated_am_puts_highest_first():
    complete = coimbra_like()
    counts = [9, 14, 54, 20, 30, 40, 25, 35, 28, 18]
    targets = {n: c / 116 for n, c in zip(complete.variable_names, counts)}
    d, _ = inject_am(complete, MissingnessSpec(seed=2, mode="am", am_targets=targets))
    p = profile(d)
    ordering = order_by_univariate(p)
    top = ordering.permutation[0]
    assert p.entries[top].q_am == pytest.approx(0.466, abs=0.005)


def test_greedy_chain_hand_example():
    # AB = 0.9, BC = 0.5, AC = 0.1: seed AB, C attaches at B's end
    m = symmetric_matrix([
        [0.0, 0.9, 0.1],
        [0.9, 0.0, 0.5],
        [0.1, 0.5, 0.0],
    ])
    ordering = order_by_pairwise(m)
    assert ordering.permutation == (0, 1, 2)
    assert ordering.anchor_pair == (0, 1)


def test_greedy_chain_all_zeros_is_deterministic():
    m = symmetric_matrix(np.zeros((4, 4)))
    first = order_by_pairwise(m)
    second = order_by_pairwise(m)
    assert first.permutation == second.permutation
    assert first.anchor_pair == (0, 1)
    # unplaced variables fall back to index order at the left end
    assert first.permutation == (3, 2, 0, 1)


def test_greedy_needs_two_variables():
    m = symmetric_matrix(np.zeros((1, 1)))
    with pytest.raises(TooFewVariablesError):
        order_by_pairwise(m)


def test_anchor_pair_is_global_max_and_adjacent():
    rng = np.random.default_rng(11)
    for _ in range(50):
        k = int(rng.integers(2, 12))
        raw = rng.random((k, k))
        sym = (raw + raw.T) / 2
        ordering = order_by_pairwise(symmetric_matrix(sym))
        values = sym.copy()
        np.fill_diagonal(values, -np.inf)
        best = np.unravel_index(np.argmax(values), values.shape)
        assert set(ordering.anchor_pair) == set(best)
        pos = {v: i for i, v in enumerate(ordering.permutation)}
        assert abs(pos[ordering.anchor_pair[0]] - pos[ordering.anchor_pair[1]]) == 1
        assert sorted(ordering.permutation) == list(range(k))


def test_jm_regeneration_orders_strongest_pair_adjacent():
    complete = coimbra_like()
    pairs = (
        JmPairSpec("Age", "BMI", 0.32, 0.34, "below", 0.036),
        JmPairSpec("Glucose", "Insulin", 0.33, 0.33, "below", 0.073),
        JmPairSpec("HOMA", "Leptin", 0.26, 0.41, "equal"),
        JmPairSpec("Adiponectin", "Resistin", 0.46, 0.33, "above", 0.211),
        JmPairSpec("MCP_1", "Classification", 0.46, 0.50, "above", 0.383),
    )
    d, _ = inject_jm(complete, MissingnessSpec(seed=4, mode="jm", jm_pairs=pairs))
    _, _, absolute = jm_matrices(d)
    ordering = order_by_pairwise(absolute)
    pos = {v: i for i, v in enumerate(ordering.permutation)}
    mcp, cls = d.index_of("MCP_1"), d.index_of("Classification")
    assert abs(pos[mcp] - pos[cls]) == 1


def test_directional_matrix_symmetrized_by_max():
    arr = np.array([
        [np.nan, 0.9, 0.0],
        [0.1, np.nan, 0.0],
        [0.0, 0.0, np.nan],
    ])
    names = ("a", "b", "c")
    m = PairwiseQMMatrix("cm_did", names, arr, np.zeros((3, 3), dtype=np.int64), symmetric=False)
    ordering = order_by_pairwise(m)
    assert ordering.anchor_pair == (0, 1)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_ordering_is_always_a_permutation(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 10))
    raw = rng.random((k, k))
    ordering = order_by_pairwise(symmetric_matrix((raw + raw.T) / 2))
    assert sorted(ordering.permutation) == list(range(k))


# --- threshold selection ---------------------------------------------------

def test_top_n_by_q_am():
    p = profile_of([0.3, 0.5, 0.1, 0.9, 0.2, 0.6, 0.8, 0.4, 0.7, 0.05])
    chosen = threshold_select(p, top_n=9)
    assert len(chosen) == 9
    values = [p.q_am[j] for j in chosen]
    assert values == sorted(values, reverse=True)


def test_threshold_above_one_selects_nothing():
    p = profile_of([0.3, 0.5, 1.0])
    assert threshold_select(p, MetricPredicate("q_am", ">", 1.0)) == []


def test_profile_predicate():
    p = profile_of([0.3, 0.5, 0.1])
    assert threshold_select(p, MetricPredicate("q_am", ">=", 0.3)) == [1, 0]


def test_pairwise_conjunctive_filter_selects_incident_variables():
    k = 4
    names = tuple(f"v{j}" for j in range(k))
    dir_vals = np.full((k, k), 0.2)
    did_vals = np.zeros((k, k))
    # only the pair (1, 2) satisfies jm_dir < 0.05 and cm_did > 0.9
    dir_vals[1, 2] = dir_vals[2, 1] = 0.01
    did_vals[1, 2] = did_vals[2, 1] = 0.95
    np.fill_diagonal(dir_vals, np.nan)
    np.fill_diagonal(did_vals, np.nan)
    sup = np.zeros((k, k), dtype=np.int64)
    jm_dir = PairwiseQMMatrix("jm_dir", names, dir_vals, sup, symmetric=True)
    cm_did = PairwiseQMMatrix("cm_did", names, did_vals, sup.copy(), symmetric=False)
    chosen = threshold_select([jm_dir, cm_did], parse_filter("jm_dir<0.05,cm_did>0.9"))
    assert sorted(chosen) == [1, 2]


def test_unknown_metric_rejected():
    p = profile_of([0.1])
    with pytest.raises(UnknownMetricError):
        threshold_select(p, MetricPredicate("jm_abs", ">", 0.1))
    with pytest.raises(UnknownMetricError):
        MetricPredicate("nope", ">", 0.1)


def test_filter_parse_round_trip():
    preds = parse_filter("jm_dir<0.05,cm_did>=0.9")
    assert [str(p) for p in preds] == ["jm_dir<0.05", "cm_did>=0.9"]
    with pytest.raises(ValueError):
        parse_filter("jm_dir ! 0.3")
