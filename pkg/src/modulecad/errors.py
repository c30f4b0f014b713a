"""Domain errors.

Every error carries a stable machine-readable ``code`` used by the CLI exit
mapping and the HTTP error payloads.
"""


class ModuleCadError(Exception):
    code = "error"


# --- geometry ---------------------------------------------------------------

class InvalidGeometry(ModuleCadError):
    """A primitive or transform violates its construction invariants."""

    code = "invalid_geometry"


class ZeroLengthSegment(InvalidGeometry):
    code = "zero_length_segment"


class NonPositiveDistance(InvalidGeometry):
    code = "non_positive_distance"


class MiterLimitExceeded(InvalidGeometry):
    code = "miter_limit_exceeded"


class NonUniformScaleOfRound(ModuleCadError):
    """Circles and arcs only survive uniform scaling."""

    code = "non_uniform_scale_of_round"


class NonPositiveScale(ModuleCadError):
    code = "non_positive_scale"


# --- parameters and generators ----------------------------------------------

class InvalidParams(ModuleCadError):
    code = "invalid_params"


class UnknownKind(ModuleCadError):
    code = "unknown_kind"


class UnsortedRods(InvalidParams):
    code = "unsorted_rods"


class HeightOutOfRange(ModuleCadError):
    code = "height_out_of_range"


class RodsTooFar(ModuleCadError):
    code = "rods_too_far"


class UnknownUnit(ModuleCadError):
    code = "unknown_unit"


class DimensionMismatch(ModuleCadError):
    code = "dimension_mismatch"


# --- document ----------------------------------------------------------------

class UnknownModule(ModuleCadError):
    code = "unknown_module"


class WrongKind(ModuleCadError):
    code = "wrong_kind"


class UnknownLayer(ModuleCadError):
    code = "unknown_layer"


# --- persistence ---------------------------------------------------------------

class FileFormatError(ModuleCadError):
    code = "file_format"


class VersionError(FileFormatError):
    code = "version"


class ConsistencyError(ModuleCadError):
    """Stored geometry does not match what the parameters regenerate to."""

    code = "consistency"


# --- prototype libraries -------------------------------------------------------

class DuplicateName(ModuleCadError):
    code = "duplicate_name"


class UnknownPrototype(ModuleCadError):
    code = "unknown_prototype"
