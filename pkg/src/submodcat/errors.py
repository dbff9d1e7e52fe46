"""Exception types shared across the package."""


class NoSolution(Exception):
    """A linear system over the chain ring has no solution."""


class ParentMismatch(ValueError):
    """Operands belong to different rings or different ambient modules."""


class NotInInterval(Exception):
    """A pair failed interval membership; `stage` names the failing check."""

    def __init__(self, stage, detail=""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}" if detail else stage)


class DecompositionFailed(Exception):
    """A subobject is not isomorphic to the expected canonical power."""


class SummandObstruction(Exception):
    """A representation has a simple summand blocking triple extraction."""

    def __init__(self, simple, dim):
        self.simple = simple
        self.dim = dim
        super().__init__(f"simple summand S({simple}) with multiplicity {dim}")


class ConstraintViolated(ValueError):
    """A morphism candidate does not satisfy its defining constraints."""


class PreconditionViolated(ValueError):
    """An argument fails a documented precondition of the operation."""


class NotKAlgebra(Exception):
    """An endomorphism quotient is not annihilated by t, so it carries no
    residue-field algebra structure."""


class InternalInconsistency(AssertionError):
    """An invariant that should hold by theory failed; indicates a bug."""
