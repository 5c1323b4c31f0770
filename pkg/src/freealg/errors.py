"""Exception hierarchy.

Every domain error carries a stable ``code`` and a ``context`` dict so the
CLI can emit ``{code, message, context}`` objects that scripts can match on.
"""


class AlgebraError(Exception):
    code = "AlgebraError"

    def __init__(self, message="", **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        return {"code": self.code, "message": self.message, "context": self.context}


def _make(name, doc, base=AlgebraError):
    return type(name, (base,), {"code": name, "__doc__": doc})


# coefficient fields
MixedFields = _make("MixedFields", "Operands live over different fields.")
DivisionByZero = _make("DivisionByZero", "Inverse of zero requested.")
NotPrime = _make("NotPrime", "Field modulus is not prime.")
BadFieldSelector = _make("BadFieldSelector", "Unparseable field selector.")

# free algebra
AlphabetMismatch = _make("AlphabetMismatch", "Operands use different alphabets.")
ZeroPolynomial = _make("ZeroPolynomial", "Operation undefined on the zero polynomial.")
BadWeights = _make("BadWeights", "Weight vector has wrong length or a weight < 1.")
ArityMismatch = _make("ArityMismatch", "Wrong number of substitution images.")
UnknownVariable = _make("UnknownVariable", "Variable name outside the alphabet.")
BadCoefficient = _make("BadCoefficient", "Coefficient literal invalid for the field.")


class ParseError(AlgebraError, SyntaxError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    code = "SyntaxError"

    def __init__(self, message, position, text=""):
        AlgebraError.__init__(self, message, position=position, text=text)
        self.position = position


# degree estimate
ZeroInput = _make("ZeroInput", "A required nonzero input was zero.")
HypothesesNotMet = _make("HypothesesNotMet", "A stated hypothesis fails on the input.")
BadK = _make("BadK", "Family parameter k out of range.")

# endomorphisms
NotAutomorphism = _make("NotAutomorphism", "Degree reduction failed; context holds the certificate.")
NoCertificateWithinBounds = _make(
    "NoCertificateWithinBounds", "Bounded coordinate search found no reducing move."
)
ConstantInput = _make("ConstantInput", "Input polynomial is constant.")
NotARetraction = _make("NotARetraction", "Endomorphism is not a proper retraction.")
ProperSubductionFailure = _make(
    "ProperSubductionFailure", "Images do not reduce to a single generator."
)
NoConvergence = _make("NoConvergence", "No idempotent power within the iteration budget.")
NotFixing = _make("NotFixing", "Endomorphism does not fix the given element.")
PreconditionFailed = _make("PreconditionFailed", "Input violates an operation precondition.")
CapExceeded = _make("CapExceeded", "Search cap exceeded.")

# Mal'tsev-Neumann series
FloorCollapse = _make("FloorCollapse", "No exact terms survive above the floor.")
NotASquareLeading = _make("NotASquareLeading", "Leading word is not a square.")
NotAnNthPowerLeading = _make("NotAnNthPowerLeading", "Leading term is not an n-th power.")
CharDividesN = _make("CharDividesN", "Field characteristic divides the root index.")
BasisExhausted = _make("BasisExhausted", "Root slice equation unsolvable on the candidate basis.")
InsufficientFloor = _make("InsufficientFloor", "Input series is not exact deep enough.")

# bimodule
ImprimitiveU = _make("ImprimitiveU", "Word is a proper power (or empty).")
BadBound = _make("BadBound", "Degree bound must be non-negative.")
