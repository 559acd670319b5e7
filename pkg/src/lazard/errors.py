"""Exception types raised by the computation modules.

Every error carries a short machine-readable ``code`` so the command line
front end can report it as JSON.
"""


class LazardError(Exception):
    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class MissingImage(LazardError):
    code = "MissingImage"


class DegreeMismatch(LazardError):
    code = "DegreeMismatch"


class NonNilpotentSubstitution(LazardError):
    code = "NonNilpotentSubstitution"


class NotInvertible(LazardError):
    code = "NotInvertible"


class BoundTooSmall(LazardError):
    code = "BoundTooSmall"


class NotSymmetric(LazardError):
    code = "NotSymmetric"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        out = super().to_json()
        out["witness"] = list(self.witness) if self.witness else None
        return out


class IndexOutOfRange(LazardError):
    code = "IndexOutOfRange"


class PSeriesObstructed(LazardError):
    code = "PSeriesObstructed"


class UnsupportedGroup(LazardError):
    code = "UnsupportedGroup"


class NonHomogeneousRelation(LazardError):
    code = "NonHomogeneousRelation"


class InvalidParameters(LazardError):
    code = "InvalidParameters"
