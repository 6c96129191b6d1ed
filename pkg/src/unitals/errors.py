"""Exception hierarchy shared by all modules.

Every domain error derives from GeometryError so callers (notably the CLI)
can distinguish library failures from programming errors.
"""


class GeometryError(Exception):
    """Base class for all errors raised by this package."""


# --- finite field arithmetic ---

class CompositeCharacteristic(GeometryError):
    """The requested characteristic is not prime."""


class TooLarge(GeometryError):
    """The requested object exceeds the supported size bound."""


class DivisionByZero(GeometryError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class MixedFields(GeometryError):
    """Operands belong to different fields."""


class NotQuadraticExtension(GeometryError):
    """Conjugation requires a field tagged as GF(q^2) over GF(q)."""


class NotPrimePower(GeometryError):
    """The given order is not a prime power."""


# --- incidence structures ---

class MalformedStructure(GeometryError):
    """Point index out of range, block of size < 2, or duplicate block."""


class FormatError(GeometryError):
    """A serialized file violates its format contract."""


class InternalCheckFailed(GeometryError):
    """A mandatory self-check of a constructed object failed."""


class InvalidPointSet(GeometryError):
    """A point set argument is not a subset of the structure's points."""


class DegeneratePoint(GeometryError):
    """A point lies on fewer than 2 blocks where >= 2 are required."""


class IncidentPair(GeometryError):
    """The (point, block) pair must be non-incident."""


# --- graphs ---

class NonNegativeSmallestEigenvalue(GeometryError):
    """The ratio bound needs a negative smallest eigenvalue."""


class NotAClique(GeometryError):
    """The given block set contains a disjoint pair."""


class WrongCliqueSize(GeometryError):
    """The clique does not have the size required by the check."""


class GraphTooLarge(GeometryError):
    """The graph exceeds the size bound of the naive algorithm."""


# --- linear space classification ---

class LemmaViolation(GeometryError):
    """An internal consistency fact failed; the input is corrupted."""


class QTooSmall(GeometryError):
    """The classification requires q >= 3."""


class AssumptionViolation(GeometryError):
    """The input does not satisfy the standing assumptions."""


class NotAffinePlane(GeometryError):
    """The structure is not an affine plane of the expected order."""


class ConstructionFailed(GeometryError):
    """The completion construction met a contradiction; bad input."""


class NoEmbeddingFound(GeometryError):
    """Exhaustive search found no plane embedding; input is invalid."""


class QTooLargeForSearch(GeometryError):
    """Embedding search is only feasible for q <= 4."""


class NotInScope(GeometryError):
    """The 4-point special classification does not cover this input."""


# --- reconstruction ---

class NotAUnitalGraph(GeometryError):
    """The graph is not the block-intersection graph of a unital."""


class NotAGraphIsomorphism(GeometryError):
    """The given vertex map does not preserve adjacency."""


class PencilImageNotAPencil(GeometryError):
    """A pencil image is not a pencil; the inputs are not valid unitals."""
