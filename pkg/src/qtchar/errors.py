"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class QtcharError(Exception):
    code = "Error"

    def __init__(self, message="", witness=None):
        super().__init__(message or self.code)
        self.witness = witness


def _make(name, doc):
    return type(name, (QtcharError,), {"code": name, "__doc__": doc})


NotCartan = _make("NotCartan", "Diagonal not 2, positive off-diagonal entry or asymmetric zero pattern.")
Decomposable = _make("Decomposable", "The matrix splits into independent blocks.")
NotSymmetrizable = _make("NotSymmetrizable", "No positive symmetrizer exists.")
OverrideInconsistent = _make("OverrideInconsistent", "The given symmetrizer does not symmetrize the matrix.")
SingularCz = _make("SingularCz", "det C(z) vanishes identically.")
HypothesisViolated = _make("HypothesisViolated", "det C(z) does not have the unit-extreme shape needed for series inversion.")
ContextMismatch = _make("ContextMismatch", "Operands live in different algebra contexts.")
ParseError = _make("ParseError", "Malformed monomial or input string.")
ShiftInPeriodicContext = _make("ShiftInPeriodicContext", "Index shifts are only defined on Z-indexed vectors.")
GenericContext = _make("GenericContext", "Operation needs a root-of-unity context (s >= 1).")
SmallS = _make("SmallS", "Root-of-unity character operations need s > 2 r_vee.")
NotIDominant = _make("NotIDominant", "Monomial is not i-dominant.")
PeriodicTorsion = _make("PeriodicTorsion", "Screening normal forms are not faithful at s >= 1.")
PreconditionCCLe3 = _make("PreconditionCCLe3", "Some C_ij C_ji exceeds 3.")
Inconsistent = _make("Inconsistent", "Two directions force different coefficients on one monomial.")
TruncationInsufficient = _make("TruncationInsufficient", "max_degree is too small for a certified answer.")
ModeUnsupported = _make("ModeUnsupported", "The bicharacter mode is not available for this matrix.")
ConditionUnverified = _make("ConditionUnverified", "No positive null vector certifies finiteness per level.")
