"""Error taxonomy shared by the library and the CLI.

DomainError covers well-formed inputs that fail a precondition or an
invariant of the requested operation (CLI exit status 1).  MalformedInput
covers inputs that do not parse or violate basic shape requirements
(CLI exit status 2).  Every error carries a stable code (its class name)
and an optional data dict that the CLI serializes verbatim.
"""


class DomainError(Exception):
    """Well-formed input rejected by a domain precondition."""

    def __init__(self, message, **data):
        super().__init__(message)
        self.message = message
        self.data = data

    @property
    def code(self):
        return type(self).__name__

    def to_json(self):
        return {"error": {"code": self.code, "message": self.message,
                          "data": _jsonable(self.data)}}


class MalformedInput(Exception):
    """Input that does not parse or fails basic shape checks."""

    def __init__(self, message, **data):
        super().__init__(message)
        self.message = message
        self.data = data

    @property
    def code(self):
        return "MalformedInput"

    def to_json(self):
        return {"error": {"code": self.code, "message": self.message,
                          "data": _jsonable(self.data)}}


def _jsonable(obj):
    """Best-effort conversion of error payload data to JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted((_jsonable(v) for v in obj), key=repr)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)


class NodeNotInTree(DomainError):
    """A node argument does not belong to the host tree."""


class NotAntichain(DomainError):
    """A node set contains two comparable nodes."""


class NotSubtree(DomainError):
    """Candidate is not a subset of the host with the host's root."""


class RootMismatch(DomainError):
    """Candidate subtree does not share the host's root."""


class CoherenceViolation(DomainError):
    """Kept successors of a kept node are not exactly the host's successors inside the candidate."""


class BudgetExceeded(DomainError):
    """A node drops more successors than the pruning budget allows."""


class NotAlmostFront(DomainError):
    """Node set is not reachable as the front of any budgeted exhaustive subtree."""


class NotFront(DomainError):
    """Node set is not a front of the host tree."""


class SizeLimitExceeded(DomainError):
    """Search space exceeds the configured enumeration cap."""


class WidthTooSmall(DomainError):
    """Tree width is too small for the requested thinning."""


class FamilyNotSingleton(DomainError):
    """Operation requires the node's family to consist of the singleton tree only."""


class DiagonalExhausted(DomainError):
    """No admissible diagonal choice remains."""


class NotMaximal(DomainError):
    """Tree is not maximal in the system's order."""


class PreconditionFailed(DomainError):
    """Operation precondition does not hold."""


class NotIncreasing(DomainError):
    """Sequence of systems is not increasing in the system order."""


class IllFormedMove(DomainError):
    """A game move violates the rules of the current round."""


class CapViolated(DomainError):
    """A played finite set exceeds its declared size cap."""


class EmptyFilterBase(DomainError):
    """Filter base is empty, has an empty member, or has empty intersection."""


class EmptyValueSet(DomainError):
    """A name takes no values, so the induced sequence tree is empty."""


class CapTooSmall(DomainError):
    """Requested per-round cap cannot carry the translation."""


class BignessUnavailable(DomainError):
    """No condition decides the required membership uniformly on enough successors."""


class ShapeMismatch(DomainError):
    """Witness data does not have the declared shape."""


class CapExceeded(DomainError):
    """Requested exhaustive run exceeds the configured instance caps."""
