"""Error types raised by the numerical modules.

Every error carries a stable ``code`` string; the CLI reports failures as
``{"error": code, "message": text}`` so callers never parse tracebacks.
"""


class GeomomentumError(Exception):
    """Base class for all library errors."""

    code = "geomomentum_error"

    def to_payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class DegenerateChart(GeomomentumError, ValueError):
    """Raised when det g is at or below tolerance (coordinate singularity)."""

    code = "degenerate_chart"


class ShellFold(GeomomentumError, ValueError):
    """Raised when 1 - 2Mq3 + Kq3^2 <= 0 and the shell self-intersects."""

    code = "shell_fold"


class GridTooCoarse(GeomomentumError, ValueError):
    code = "grid_too_coarse"


class TruncationTooTight(GeomomentumError, ValueError):
    """Raised when the interior block reaches the truncation boundary."""

    code = "truncation_too_tight"


class PoleSingularity(GeomomentumError, ValueError):
    """Raised for theta at a pole of the sphere chart."""

    code = "pole_singularity"


class PoleHit(GeomomentumError, ValueError):
    """Raised when a complex momentum lands on a pole of sech or csch."""

    code = "pole_hit"


class AccuracyLoss(GeomomentumError):
    """Raised when quadrature cannot reach its accuracy target.

    ``estimated_error`` holds the cancellation estimate so callers can
    decide whether the value is still usable.
    """

    code = "accuracy_loss"

    def __init__(self, message: str, estimated_error: float):
        super().__init__(message)
        self.estimated_error = estimated_error

    def to_payload(self) -> dict:
        payload = super().to_payload()
        payload["estimated_error"] = self.estimated_error
        return payload


class NonpositiveRadius(GeomomentumError, ValueError):
    code = "nonpositive_radius"


class InvalidIndex(GeomomentumError, ValueError):
    """Raised for (l, m) outside l >= 0, |m| <= l."""

    code = "invalid_index"


class UnknownChart(GeomomentumError, ValueError):
    """Raised for a surface spec string the registry cannot build."""

    code = "unknown_chart"
