"""Exception hierarchy. Mathematical failures and malformed input are kept apart
so the CLI can map them to distinct exit codes."""


class MalcevError(Exception):
    """Base class for all package errors."""


class SchemaError(MalcevError):
    """Malformed interchange document or structure description."""


class DimensionError(MalcevError):
    """Ambient dimension or shape mismatch."""


class ForeignElementError(MalcevError):
    """Element passed to an algebra it does not belong to."""


class IdealError(MalcevError):
    """Subspace is not a two-sided ideal; carries a witness pair."""


class EmbeddingError(MalcevError):
    """A claimed (E, H, F) triple fails the defining relations."""


class DecompositionError(MalcevError):
    """Annihilator/Lie/non-Lie parts fail to split the algebra."""


class CoordinatizationError(MalcevError):
    """Recovered scalar algebra fails a weight-space or axiom scan."""


class PairingError(MalcevError):
    """Skew pairing extraction or validation failed."""


class ScalarAlgebraError(MalcevError):
    """Commutativity/associativity/unit axiom failed; names the witness."""
