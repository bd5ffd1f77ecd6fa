"""Exception hierarchy.  Every domain error derives from :class:`CurveKitError`;
the CLI maps those to exit code 1 and names the class in its report."""


class CurveKitError(Exception):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class PolySyntaxError(SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(CurveKitError, KeyError):
    def __init__(self, name: str, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        CurveKitError.__init__(self, f"unknown variable {name!r}{where}")
        self.name = name
        self.position = position

    def __str__(self):
        return self.args[0]


class DegreeZero(CurveKitError):
    pass


class NotACurve(CurveKitError):
    pass


class NotSquarefree(CurveKitError):
    pass


class AllMembersSingular(CurveKitError):
    pass


class PrecisionUnreachable(CurveKitError):
    pass


class NonRationalUnsupportedDetail(CurveKitError):
    pass


class SingularPointError(CurveKitError):
    pass


class CommonComponent(CurveKitError):
    pass


class ShearExhausted(CurveKitError):
    pass


class ZeroPolar(CurveKitError):
    pass


class UnsupportedSingularity(CurveKitError):
    pass


class Underdetermined(CurveKitError):
    pass


class Inconsistent(CurveKitError):
    pass


class EliminationDegenerate(CurveKitError):
    pass


class NotSmoothCubic(CurveKitError):
    pass


class EdgeComponent(CurveKitError):
    pass


class TriangleDegenerate(CurveKitError):
    pass


class CollapsedImage(CurveKitError):
    pass


class IterationCap(CurveKitError):
    pass


class NonRationalCenter(CurveKitError):
    pass


class DependentConditions(CurveKitError):
    pass


class HypothesisFailed(CurveKitError):
    pass


class NoSolution(CurveKitError):
    pass


class DiagonalContained(CurveKitError):
    pass


class ProportionalForms(CurveKitError):
    pass


class Reducible(CurveKitError):
    pass


class AllMembersContainCurve(CurveKitError):
    pass


class NoCanonical(CurveKitError):
    pass


class GroupOffCurve(CurveKitError):
    pass


class InconsistentLinkage(CurveKitError):
    pass


class CenterDegenerate(CurveKitError):
    pass


class DegenerateParametrization(CurveKitError):
    pass


class OutOfRegime(CurveKitError):
    pass


class PreconditionViolation(CurveKitError):
    pass
