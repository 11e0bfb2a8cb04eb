"""Exception hierarchy.

Physics errors (a requested quantity does not exist or a solver cannot
produce it) derive from :class:`PhysicsDomainError`; malformed inputs
(unknown labels, bad configs) derive from :class:`SchemaError`. The CLI
maps the two families onto different exit codes.
"""


class RydmolError(Exception):
    """Base class for all errors raised by rydmol."""


class SchemaError(RydmolError, ValueError):
    """Input does not match the expected structure (labels, keys, units)."""


class PhysicsDomainError(RydmolError, ValueError):
    """A physical quantity was requested outside its domain of validity."""


class DimensionError(SchemaError):
    def __init__(self, source: str, target: str):
        super().__init__(f"cannot convert {source} to {target}")
        self.source = source
        self.target = target


class SolverError(PhysicsDomainError):
    """Numerical solver failed its own consistency checks."""


class UnsupportedStateError(PhysicsDomainError):
    pass


class LabelingError(PhysicsDomainError):
    """Eigenstate cannot be assigned a dominant rotational quantum number."""


class SelectionRuleError(PhysicsDomainError):
    pass


class NotFoundError(PhysicsDomainError):
    """A root or stationary point does not exist in the searched interval."""


class PreconditionError(PhysicsDomainError):
    pass
