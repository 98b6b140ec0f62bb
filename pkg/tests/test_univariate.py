import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from missqm.dataset import IncompleteDataset, VariableColumn
from missqm.errors import EmptyDatasetError
from missqm.univariate import amount_missing, profile, write_profile_csv

from conftest import column, coimbra_like, make_dataset, random_masked_dataset
from oracles import naive_amount_missing
from missqm.generate import MissingnessSpec, inject_am


def test_fully_recorded_is_zero():
    d = make_dataset([column("a", [1, 2, 3])])
    assert amount_missing(d, 0) == 0.0


def test_fully_missing_is_one():
    d = make_dataset([column("a", [1, 2, 3], missing=[1, 1, 1])])
    assert amount_missing(d, 0) == 1.0


def test_three_of_ten():
    d = make_dataset([column("a", range(10), missing=[1, 1, 1, 0, 0, 0, 0, 0, 0, 0])])
    assert amount_missing(d, 0) == 0.3


def test_empty_dataset_errors():
    d = make_dataset([column("a", [])])
    with pytest.raises(EmptyDatasetError):
        amount_missing(d, 0)
    with pytest.raises(EmptyDatasetError):
        profile(d)


def test_profile_order_and_total():
    d = make_dataset([
        column("a", [1, 2], missing=[0, 0]),
        column("b", [1, 2], missing=[1, 1]),
    ])
    p = profile(d)
    assert [e.variable for e in p.entries] == ["a", "b"]
    assert p.q_am == (0.0, 1.0)
    assert p.total_missing_fraction == 0.5


def test_profile_all_recorded():
    d = make_dataset([column("a", [1, 2]), column("b", [3, 4])])
    p = profile(d)
    assert all(e.q_am == 0.0 for e in p.entries)
    assert p.total_missing_fraction == 0.0


def test_regenerated_am_range_matches_published_bounds():
    complete = coimbra_like()
    counts = [9, 14, 54, 20, 30, 40, 25, 35, 28, 18]
    targets = {n: c / 116 for n, c in zip(complete.variable_names, counts)}
    generated, _ = inject_am(complete, MissingnessSpec(seed=1, mode="am", am_targets=targets))
    p = profile(generated)
    assert min(p.q_am) == pytest.approx(0.078, abs=0.005)
    assert max(p.q_am) == pytest.approx(0.466, abs=0.005)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_permuting_items_preserves_q_am(seed):
    rng = np.random.default_rng(seed)
    d = random_masked_dataset(rng, n=int(rng.integers(1, 40)), k=3)
    perm = rng.permutation(d.item_count)
    shuffled = IncompleteDataset(
        name="s",
        variables=tuple(
            VariableColumn(v.name, v.kind, v.values[perm], v.missing[perm].copy())
            for v in d.variables
        ),
    )
    assert profile(d).q_am == profile(shuffled).q_am


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_counts_are_exact_rationals(seed):
    rng = np.random.default_rng(seed)
    d = random_masked_dataset(rng, n=int(rng.integers(1, 50)), k=4)
    n = d.item_count
    for j in range(d.variable_count):
        q = amount_missing(d, j)
        assert 0.0 <= q <= 1.0
        # q_am is the exact quotient of an integer count by N
        m = round(q * n)
        assert q == m / n


def test_brute_force_recount_matches_exactly():
    rng = np.random.default_rng(7)
    for _ in range(20):
        d = random_masked_dataset(rng, n=int(rng.integers(1, 51)), k=int(rng.integers(1, 6)))
        for j in range(d.variable_count):
            assert amount_missing(d, j) == naive_amount_missing(d, j)


def test_profile_csv(tmp_path):
    d = make_dataset([column("a", [1, 2, 3], missing=[1, 0, 0])])
    path = tmp_path / "p.csv"
    write_profile_csv(profile(d), path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "variable,q_am"
    assert lines[1] == f"a,{1/3:.9f}"


def test_profile_json_round_trip():
    import json

    d = make_dataset([column("a", [1, 2], missing=[1, 0])])
    payload = json.loads(profile(d).to_json())
    assert payload["entries"][0]["q_am"] == 0.5
