"""Exception hierarchy shared across the package."""


class MissqmError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(MissqmError):
    """A CSV file is structurally broken or fails validation."""


class EmptyDatasetError(MissqmError):
    """An operation requires at least one item (N >= 1)."""


class TooFewVariablesError(MissqmError):
    """An operation requires at least two variables."""


class NoRecordedValuesError(MissqmError):
    """A variable has no recorded values, so no distribution exists."""


class UnknownMetricError(MissqmError):
    """A metric id does not name a computed metric."""


class InvalidSpecError(MissqmError):
    """A missingness spec is malformed (bad fractions, overlapping pairs...)."""


class IncompleteInputError(MissqmError):
    """A generator requires complete input columns but found missing cells."""


class FeasibilityError(MissqmError):
    """Requested missingness targets cannot be met on this dataset."""
