"""Joint-missingness metrics for variable pairs.

For a pair (j, k), the magnitude is the fraction of items missing in both
variables. Under independence the expected joint fraction is the product of
the two per-variable missing fractions; the directional metric is the signed
deviation of the measured fraction from that expectation, and the absolute
metric is its magnitude. All counts are integers divided once by N.
"""

from __future__ import annotations

import numpy as np

from .dataset import IncompleteDataset
from .errors import EmptyDatasetError, TooFewVariablesError
from .matrices import JM_ABS, JM_DIR, JM_MAG, PairwiseQMMatrix
from .univariate import amount_missing


def _check(d: IncompleteDataset) -> None:
    if d.item_count == 0:
        raise EmptyDatasetError("joint missingness is undefined for an empty dataset")


def joint_missing_count(d: IncompleteDataset, j: int | str, k: int | str) -> int:
    """Number of items missing in both j and k."""
    j, k = d.resolve(j), d.resolve(k)
    return int((d[j].missing & d[k].missing).sum())


def jm_magnitude(d: IncompleteDataset, j: int | str, k: int | str) -> float:
    """Fraction of items jointly missing in j and k, in [0, 1]."""
    _check(d)
    return joint_missing_count(d, j, k) / d.item_count


def expected_jm(d: IncompleteDataset, j: int | str, k: int | str) -> float:
    """Joint missingness expected by chance: Q_AM(j) * Q_AM(k)."""
    _check(d)
    return amount_missing(d, j) * amount_missing(d, k)


def jm_directional(d: IncompleteDataset, j: int | str, k: int | str) -> float:
    """Signed deviation of measured joint missingness from the expected one.

    Positive when the pair is jointly missing more often than chance
    predicts; bounded by [-0.25, 0.25] since p - p^2 <= 1/4.
    """
    return jm_magnitude(d, j, k) - expected_jm(d, j, k)


def jm_absolute(d: IncompleteDataset, j: int | str, k: int | str) -> float:
    """Size of the deviation from expected joint missingness, in [0, 0.25]."""
    return abs(jm_directional(d, j, k))


def jm_matrices(d: IncompleteDataset) -> tuple[PairwiseQMMatrix, PairwiseQMMatrix, PairwiseQMMatrix]:
    """The three joint-missingness matrices (magnitude, directional, absolute).

    Support(j, k) is the joint missing count. The magnitude diagonal holds
    the per-variable amount missing; the directional/absolute diagonals are
    NaN (a pair with itself carries no deviation information).
    """
    _check(d)
    if d.variable_count < 2:
        raise TooFewVariablesError("joint missingness needs at least two variables")

    n = d.item_count
    mask = d.missing_matrix()
    joint = (mask.astype(np.int64) @ mask.T.astype(np.int64))

    q = joint.diagonal() / n
    mag = joint / n
    direction = mag - np.outer(q, q)
    np.fill_diagonal(direction, np.nan)
    absolute = np.abs(direction)

    names = d.variable_names
    return (
        PairwiseQMMatrix(JM_MAG, names, mag, joint.copy(), symmetric=True),
        PairwiseQMMatrix(JM_DIR, names, direction, joint.copy(), symmetric=True),
        PairwiseQMMatrix(JM_ABS, names, absolute, joint.copy(), symmetric=True),
    )
