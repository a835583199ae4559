"""Exception hierarchy.  Every error carries a short machine-readable code."""


class MartnucError(Exception):
    code = "error"


class NonInvertible(MartnucError):
    code = "non-invertible"


class NoMatch(MartnucError):
    code = "no-match"


class DegenerateTwin(MartnucError):
    code = "degenerate-twin"


class PairNotTabulated(MartnucError):
    code = "pair-not-tabulated"


class NoRankOneConnection(MartnucError):
    code = "no-rank-one-connection"


class NoHabitPlane(MartnucError):
    code = "no-habit-plane"


class AssumptionViolated(MartnucError):
    code = "assumption-violated"


class MalformedPath(MartnucError):
    code = "malformed-path"


class DegenerateSpecimen(MartnucError):
    code = "degenerate-specimen"


class PlanesOverlap(MartnucError):
    code = "planes-overlap"


class EmptyRegion(MartnucError):
    code = "empty-region"


class InjectivityViolated(MartnucError):
    code = "injectivity-violated"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
