"""Exception hierarchy.

Every error that can surface through the CLI carries a stable code of the
form "<module>.<snake_case_name>"; the CLI prints "error[<code>]: <message>"
and exits 1.  Usage errors (bad flags, malformed values) exit 2 instead.
"""


class FanolinesError(Exception):
    code = "fanolines.error"


class UnsupportedFieldError(FanolinesError):
    code = "gf.unsupported_field"


class ZeroDivisionInField(FanolinesError):
    code = "gf.zero_division"


class FormParseError(FanolinesError):
    code = "formring.parse_error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class FormValueError(FanolinesError):
    code = "formring.invalid_form"


class RankDeficientError(FanolinesError):
    code = "projgeom.rank_deficient"


class NotProjectivePointError(FanolinesError):
    code = "projgeom.not_projective_point"


class NotContainedError(FanolinesError):
    code = "fano.not_contained"


class LiftNotFoundError(FanolinesError):
    code = "fano.lift_not_found"


class GuaranteeViolatedError(FanolinesError):
    code = "fano.guarantee_violated"


class ResourceCapExceeded(FanolinesError):
    code = "smoothness.resource_cap_exceeded"


class BoundNotApplicableError(FanolinesError):
    code = "bounds.not_applicable"


class CensusConfigError(FanolinesError):
    code = "census.invalid_config"
