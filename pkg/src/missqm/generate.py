"""Controlled missingness injection for complete datasets.

Three procedures, one per structure:

* amount-only: every targeted variable loses a uniformly chosen fraction of
  its cells;
* joint: a variable pair loses cells so that both the per-variable fractions
  and the jointly-missing fraction hit their targets exactly (at count
  granularity), with the joint fraction placed equal to, above or below the
  independence expectation;
* conditional: one variable of a pair loses cells preferentially among items
  whose value in the other (kept complete) variable falls inside a tertile
  range; the strength is the fraction of removed cells inside that range.

Every injection consumes a seeded RNG in a fixed order and emits a
ground-truth manifest whose counts can be recounted on the output dataset,
so generated structures are reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import CATEGORICAL, IncompleteDataset, VariableColumn, replace_masks
from .errors import FeasibilityError, IncompleteInputError, InvalidSpecError

AM_MODE = "am"
JM_MODE = "jm"
CM_MODE = "cm"
MODES = (AM_MODE, JM_MODE, CM_MODE)

PATTERN_EQUAL = "equal"
PATTERN_ABOVE = "above"
PATTERN_BELOW = "below"
JM_PATTERNS = (PATTERN_EQUAL, PATTERN_ABOVE, PATTERN_BELOW)

RANGE_LOW = "low"
RANGE_MEDIUM = "medium"
RANGE_HIGH = "high"
RANGE_TYPES = (RANGE_LOW, RANGE_MEDIUM, RANGE_HIGH)

#: Canonical strength levels (fraction of removed cells inside the range).
STRENGTH_LEVELS = {"low": 0.3, "medium": 0.6, "high": 0.9}


def round_half_up(x: float) -> int:
    """Deterministic count rounding: .5 always rounds up."""
    return int(math.floor(x + 0.5))


def _check_fraction(value: float, what: str) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise InvalidSpecError(f"{what} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class JmPairSpec:
    j: int | str
    k: int | str
    p_j: float
    p_k: float
    pattern: str = PATTERN_EQUAL
    p_jk: float | None = None

    def __post_init__(self):
        _check_fraction(self.p_j, "p_j")
        _check_fraction(self.p_k, "p_k")
        if self.pattern not in JM_PATTERNS:
            raise InvalidSpecError(f"unknown JM pattern {self.pattern!r}")
        if self.p_jk is not None:
            _check_fraction(self.p_jk, "p_jk")


@dataclass(frozen=True)
class CmPairSpec:
    j: int | str
    k: int | str
    am_j: float
    range_type: str
    strength: float

    def __post_init__(self):
        _check_fraction(self.am_j, "am_j")
        _check_fraction(self.strength, "strength")
        if self.range_type not in RANGE_TYPES:
            raise InvalidSpecError(f"unknown condition range type {self.range_type!r}")


@dataclass(frozen=True)
class MissingnessSpec:
    """Declarative description of the missingness to inject."""

    seed: int
    mode: str
    am_targets: dict[str, float] | None = None
    am_range: tuple[float, float] = (0.0, 0.5)
    jm_pairs: tuple[JmPairSpec, ...] = ()
    cm_pairs: tuple[CmPairSpec, ...] = ()
    source: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidSpecError(f"unknown mode {self.mode!r}")
        lo, hi = self.am_range
        _check_fraction(lo, "am range low")
        _check_fraction(hi, "am range high")
        if lo > hi:
            raise InvalidSpecError("am range low exceeds high")
        if self.am_targets is not None:
            for name, t in self.am_targets.items():
                _check_fraction(t, f"target for {name!r}")

    def to_dict(self) -> dict:
        out: dict = {"seed": self.seed, "mode": self.mode}
        if self.source is not None:
            out["source"] = self.source
        if self.mode == AM_MODE:
            out["am"] = (
                {"targets": dict(self.am_targets)}
                if self.am_targets is not None
                else {"range": list(self.am_range)}
            )
        if self.mode == JM_MODE:
            out["jm_pairs"] = [
                {k: v for k, v in (("j", p.j), ("k", p.k), ("p_j", p.p_j), ("p_k", p.p_k),
                                   ("pattern", p.pattern), ("p_jk", p.p_jk)) if v is not None}
                for p in self.jm_pairs
            ]
        if self.mode == CM_MODE:
            out["cm_pairs"] = [
                {"j": p.j, "k": p.k, "am_j": p.am_j,
                 "range_type": p.range_type, "strength": p.strength}
                for p in self.cm_pairs
            ]
        return out


def spec_from_dict(data: dict) -> MissingnessSpec:
    """Build a spec from a parsed JSON/TOML document."""
    try:
        seed = int(data["seed"])
        mode = str(data["mode"])
    except KeyError as exc:
        raise InvalidSpecError(f"spec is missing required field {exc.args[0]!r}") from None

    am_targets = None
    am_range = (0.0, 0.5)
    am = data.get("am", {})
    if "targets" in am:
        am_targets = {str(k): float(v) for k, v in am["targets"].items()}
    if "range" in am:
        lo, hi = am["range"]
        am_range = (float(lo), float(hi))

    def strength_value(raw) -> float:
        if isinstance(raw, str):
            try:
                return STRENGTH_LEVELS[raw.lower()]
            except KeyError:
                raise InvalidSpecError(f"unknown strength level {raw!r}") from None
        return float(raw)

    jm_pairs = tuple(
        JmPairSpec(
            j=p["j"], k=p["k"], p_j=float(p["p_j"]), p_k=float(p["p_k"]),
            pattern=p.get("pattern", PATTERN_EQUAL),
            p_jk=None if p.get("p_jk") is None else float(p["p_jk"]),
        )
        for p in data.get("jm_pairs", ())
    )
    cm_pairs = tuple(
        CmPairSpec(
            j=p["j"], k=p["k"], am_j=float(p["am_j"]),
            range_type=p["range_type"], strength=strength_value(p["strength"]),
        )
        for p in data.get("cm_pairs", ())
    )
    return MissingnessSpec(
        seed=seed, mode=mode, am_targets=am_targets, am_range=am_range,
        jm_pairs=jm_pairs, cm_pairs=cm_pairs, source=data.get("source"),
    )


def load_spec(path: str) -> MissingnessSpec:
    """Load a spec document; .toml uses TOML, anything else JSON."""
    if str(path).endswith(".toml"):
        try:
            import tomllib
        except ImportError:  # Python 3.10
            import tomli as tomllib
        with open(path, "rb") as fh:
            return spec_from_dict(tomllib.load(fh))
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


@dataclass(frozen=True)
class AmRecord:
    variable: str
    target: float
    missing_count: int


@dataclass(frozen=True)
class JmRecord:
    j: str
    k: str
    p_j: float
    p_k: float
    p_jk: float
    pattern: str
    joint_count: int
    missing_j: int
    missing_k: int
    residual_j: int
    residual_k: int


@dataclass(frozen=True)
class CmRecord:
    j: str
    k: str
    am_j: float
    range_type: str
    strength: float
    interval: tuple
    missing_count: int
    inside_count: int
    outside_count: int
    inside_available: int
    outside_available: int


@dataclass(frozen=True)
class GroundTruthManifest:
    """What an injection actually did, at count granularity."""

    seed: int
    mode: str
    item_count: int
    structures: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        def rec(s) -> dict:
            out = dict(s.__dict__)
            if "interval" in out:
                out["interval"] = list(out["interval"])
            return out

        return {
            "seed": self.seed,
            "mode": self.mode,
            "item_count": self.item_count,
            "structures": [rec(s) for s in self.structures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _resolve_ref(d: IncompleteDataset, ref) -> int:
    try:
        return d.resolve(ref)
    except (KeyError, IndexError) as exc:
        raise InvalidSpecError(f"spec references an unknown variable: {exc}") from None


def _require_complete(d: IncompleteDataset) -> None:
    incomplete = [v.name for v in d.variables if v.missing_count > 0]
    if incomplete:
        raise IncompleteInputError(
            f"input must be complete; missing cells in: {', '.join(incomplete)}"
        )


def _require_complete_column(col: VariableColumn) -> None:
    if col.missing_count > 0:
        raise IncompleteInputError(
            f"variable {col.name!r} must be complete before injection"
        )


def _check_disjoint(pairs: list[tuple[int, int]], names) -> None:
    seen: set[int] = set()
    for j, k in pairs:
        if j == k:
            raise InvalidSpecError(f"pair uses variable {names[j]!r} twice")
        for v in (j, k):
            if v in seen:
                raise InvalidSpecError(
                    f"variable {names[v]!r} appears in more than one pair"
                )
            seen.add(v)


def inject_am(complete: IncompleteDataset, spec: MissingnessSpec,
              name: str | None = None) -> tuple[IncompleteDataset, GroundTruthManifest]:
    """Remove a target fraction of cells, uniformly at random, per variable.

    Explicit targets apply to the named variables only; without targets
    every variable draws its fraction uniformly from ``spec.am_range``.
    """
    _require_complete(complete)
    n = complete.item_count
    rng = np.random.default_rng(spec.seed)

    if spec.am_targets is not None:
        targets = [(_resolve_ref(complete, ref), float(t)) for ref, t in spec.am_targets.items()]
    else:
        lo, hi = spec.am_range
        targets = [(j, float(rng.uniform(lo, hi))) for j in range(complete.variable_count)]

    masks: dict[int, np.ndarray] = {}
    records = []
    for j, target in targets:
        m = round_half_up(n * target)
        mask = np.zeros(n, dtype=bool)
        if m > 0:
            mask[rng.permutation(n)[:m]] = True
        masks[j] = mask
        records.append(AmRecord(complete[j].name, target, m))

    out = replace_masks(complete, masks, name=name)
    manifest = GroundTruthManifest(spec.seed, AM_MODE, n, tuple(records))
    return out, manifest


def _resolve_p_jk(pair: JmPairSpec, rng: np.random.Generator) -> float:
    expected = pair.p_j * pair.p_k
    lower = max(0.0, pair.p_j + pair.p_k - 1.0)
    upper = min(pair.p_j, pair.p_k)

    if pair.p_jk is None:
        if pair.pattern == PATTERN_EQUAL:
            return expected
        if pair.pattern == PATTERN_ABOVE:
            if upper <= expected:
                raise FeasibilityError(
                    f"no joint fraction above the expected {expected:.4f} fits "
                    f"under the upper bound min(p_j, p_k) = {upper:.4f}"
                )
            return float(rng.uniform(expected, upper))
        if lower >= expected:
            raise FeasibilityError(
                f"no joint fraction below the expected {expected:.4f} fits "
                f"over the lower bound max(0, p_j + p_k - 1) = {lower:.4f}"
            )
        return float(rng.uniform(lower, expected))

    p_jk = pair.p_jk
    if p_jk > upper + 1e-12:
        raise FeasibilityError(
            f"p_jk = {p_jk} exceeds the upper bound min(p_j, p_k) = {upper:.4f}"
        )
    if p_jk < lower - 1e-12:
        raise FeasibilityError(
            f"p_jk = {p_jk} violates the lower bound max(0, p_j + p_k - 1) = {lower:.4f}: "
            f"p_j + p_k - p_jk = {pair.p_j + pair.p_k - p_jk:.4f} items cannot fit in 1"
        )
    consistent = {
        PATTERN_EQUAL: abs(p_jk - expected) <= 1e-9,
        PATTERN_ABOVE: p_jk > expected,
        PATTERN_BELOW: p_jk < expected,
    }[pair.pattern]
    if not consistent:
        raise InvalidSpecError(
            f"pattern {pair.pattern!r} is inconsistent with p_jk = {p_jk} "
            f"vs expected {expected:.4f}"
        )
    return p_jk


def inject_jm(complete: IncompleteDataset, spec: MissingnessSpec,
              name: str | None = None) -> tuple[IncompleteDataset, GroundTruthManifest]:
    """Inject joint missingness into disjoint variable pairs.

    Per pair, the jointly-missing count is placed first and held exact;
    per-variable counts are then completed with items missing on one side
    only. All three item groups are disjoint by construction.
    """
    if not spec.jm_pairs:
        raise InvalidSpecError("jm mode needs at least one pair")
    n = complete.item_count
    names = complete.variable_names
    resolved = [(_resolve_ref(complete, p.j), _resolve_ref(complete, p.k)) for p in spec.jm_pairs]
    _check_disjoint(resolved, names)
    for (j, k) in resolved:
        _require_complete_column(complete[j])
        _require_complete_column(complete[k])

    rng = np.random.default_rng(spec.seed)
    masks: dict[int, np.ndarray] = {}
    records = []
    for pair, (j, k) in zip(spec.jm_pairs, resolved):
        p_jk = _resolve_p_jk(pair, rng)
        n_joint = round_half_up(n * p_jk)
        m_j = round_half_up(n * pair.p_j)
        m_k = round_half_up(n * pair.p_k)
        only_j = m_j - n_joint
        only_k = m_k - n_joint
        # rounding can push the joint count past a per-variable count; the
        # joint count wins and the shortfall is reported as a residual
        residual_j = min(only_j, 0)
        residual_k = min(only_k, 0)
        only_j = max(only_j, 0)
        only_k = max(only_k, 0)
        if n_joint + only_j + only_k > n:
            raise FeasibilityError(
                f"pair ({names[j]}, {names[k]}): {n_joint + only_j + only_k} distinct "
                f"items needed but only {n} exist (p_j + p_k - p_jk > 1)"
            )

        perm = rng.permutation(n)
        joint_items = perm[:n_joint]
        j_items = perm[n_joint:n_joint + only_j]
        k_items = perm[n_joint + only_j:n_joint + only_j + only_k]

        mask_j = np.zeros(n, dtype=bool)
        mask_k = np.zeros(n, dtype=bool)
        mask_j[joint_items] = True
        mask_j[j_items] = True
        mask_k[joint_items] = True
        mask_k[k_items] = True
        masks[j] = mask_j
        masks[k] = mask_k

        records.append(JmRecord(
            j=names[j], k=names[k], p_j=pair.p_j, p_k=pair.p_k, p_jk=p_jk,
            pattern=pair.pattern, joint_count=n_joint,
            missing_j=n_joint + only_j, missing_k=n_joint + only_k,
            residual_j=residual_j, residual_k=residual_k,
        ))

    out = replace_masks(complete, masks, name=name)
    manifest = GroundTruthManifest(spec.seed, JM_MODE, n, tuple(records))
    return out, manifest


def condition_range(col: VariableColumn, range_type: str):
    """Tertile membership of recorded items and the range as a value interval.

    Recorded values are rank-split at ceil(n/3) and ceil(2n/3); a value tied
    across a boundary belongs entirely to the lower third. Categorical
    variables are split the same way over label-sorted category ranks.
    Returns (inside_mask over all items, (low, high) interval); the interval
    bounds are the min and max value (or label) inside the selected third,
    or None when it is empty.
    """
    if range_type not in RANGE_TYPES:
        raise InvalidSpecError(f"unknown condition range type {range_type!r}")
    rec = ~col.missing
    if col.kind == CATEGORICAL:
        labels = sorted({str(v) for v in col.values[rec]})
        rank_of = {lab: i for i, lab in enumerate(labels)}
        keys = np.full(col.item_count, -1, dtype=float)
        keys[rec] = [rank_of[str(v)] for v in col.values[rec]]
    else:
        keys = np.where(rec, col.values.astype(float), -np.inf)

    rec_keys = np.sort(keys[rec])
    n = rec_keys.size
    if n == 0:
        raise FeasibilityError(f"condition variable {col.name!r} has no recorded values")
    c1 = math.ceil(n / 3)
    c2 = math.ceil(2 * n / 3)
    l1 = rec_keys[c1 - 1]
    l2 = rec_keys[c2 - 1]

    if range_type == RANGE_LOW:
        member = keys <= l1
    elif range_type == RANGE_MEDIUM:
        member = (keys > l1) & (keys <= l2)
    else:
        member = keys > l2
    member &= rec

    if not member.any():
        return member, (None, None)
    selected = keys[member]
    if col.kind == CATEGORICAL:
        interval = (labels[int(selected.min())], labels[int(selected.max())])
    else:
        interval = (float(selected.min()), float(selected.max()))
    return member, interval


def inject_cm(complete: IncompleteDataset, spec: MissingnessSpec,
              name: str | None = None) -> tuple[IncompleteDataset, GroundTruthManifest]:
    """Inject conditional missingness into disjoint variable pairs.

    For each pair, variable j loses round(N * am_j) cells: a ``strength``
    fraction of them among items whose value in k lies inside the tertile
    condition range, the remainder outside. Variable k keeps all values.
    """
    if not spec.cm_pairs:
        raise InvalidSpecError("cm mode needs at least one pair")
    n = complete.item_count
    names = complete.variable_names
    resolved = [(_resolve_ref(complete, p.j), _resolve_ref(complete, p.k)) for p in spec.cm_pairs]
    _check_disjoint(resolved, names)
    for (j, k) in resolved:
        _require_complete_column(complete[j])
        _require_complete_column(complete[k])

    rng = np.random.default_rng(spec.seed)
    masks: dict[int, np.ndarray] = {}
    records = []
    for pair, (j, k) in zip(spec.cm_pairs, resolved):
        inside, interval = condition_range(complete[k], pair.range_type)
        m = round_half_up(n * pair.am_j)
        n_in = round_half_up(m * pair.strength)
        n_out = m - n_in

        inside_items = np.flatnonzero(inside)
        outside_items = np.flatnonzero(~inside)
        if len(inside_items) < n_in:
            raise FeasibilityError(
                f"pair ({names[j]}, {names[k]}): condition range holds "
                f"{len(inside_items)} items but {n_in} are needed inside"
            )
        if len(outside_items) < n_out:
            raise FeasibilityError(
                f"pair ({names[j]}, {names[k]}): only {len(outside_items)} items lie "
                f"outside the condition range but {n_out} are needed there"
            )

        mask_j = np.zeros(n, dtype=bool)
        if n_in > 0:
            mask_j[rng.permutation(inside_items)[:n_in]] = True
        if n_out > 0:
            mask_j[rng.permutation(outside_items)[:n_out]] = True
        masks[j] = mask_j

        records.append(CmRecord(
            j=names[j], k=names[k], am_j=pair.am_j, range_type=pair.range_type,
            strength=pair.strength, interval=interval, missing_count=m,
            inside_count=n_in, outside_count=n_out,
            inside_available=int(len(inside_items)), outside_available=int(len(outside_items)),
        ))

    out = replace_masks(complete, masks, name=name)
    manifest = GroundTruthManifest(spec.seed, CM_MODE, n, tuple(records))
    return out, manifest


def inject(complete: IncompleteDataset, spec: MissingnessSpec,
           name: str | None = None) -> tuple[IncompleteDataset, GroundTruthManifest]:
    """Dispatch to the injection procedure selected by ``spec.mode``."""
    if spec.mode == AM_MODE:
        return inject_am(complete, spec, name=name)
    if spec.mode == JM_MODE:
        return inject_jm(complete, spec, name=name)
    return inject_cm(complete, spec, name=name)
