"""Exception hierarchy.

Every error carries a stable ``kind`` string (the class name) and an
``exit_code`` used by the command-line front end.
"""

from __future__ import annotations


class ArtifactError(Exception):
    kind = "ArtifactError"
    exit_code = 1

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.kind = cls.__name__


class ParseError(ArtifactError, ValueError):
    exit_code = 2


class PrecisionExhausted(ArtifactError):
    exit_code = 3


class NotASimpleRoot(ArtifactError, ValueError):
    exit_code = 4


class NotASubgroup(ArtifactError, ValueError):
    pass


class NonMonicDivisor(ArtifactError, ValueError):
    pass


class ZeroDivisor(ArtifactError, ZeroDivisionError):
    pass


class ZeroInput(ArtifactError, ValueError):
    pass


class NotIrreducible(ArtifactError, ValueError):
    pass


class NotIntegral(ArtifactError, ValueError):
    pass


class InadmissibleValue(ArtifactError, ValueError):
    pass


class DegreeRegression(ArtifactError, ValueError):
    pass


class DegreeOutOfRange(ArtifactError, ValueError):
    pass


class NotAKeyPolynomial(ArtifactError, ValueError):
    """A chain level whose residual data does not define a field."""


class NonConvergent(ArtifactError):
    pass


class ReducibleBranch(ArtifactError):
    """Several residual factors match the selected branch."""


class InconsistentAnalysis(ArtifactError):
    pass


class NegativeGeneratorValue(ArtifactError, ValueError):
    pass


class NotImmediate(ArtifactError, ValueError):
    pass


class BranchOutOfRange(ArtifactError, ValueError):
    pass
