"""Exception hierarchy.

Everything raised on purpose by this package derives from :class:`DamgError`,
which itself is a ``ValueError`` so callers validating input can catch either.
"""

from __future__ import annotations


class DamgError(ValueError):
    pass


class CycleError(DamgError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("graph contains a directed cycle: " + " -> ".join(self.cycle))


class DuplicateIdError(DamgError):
    pass


class DanglingEndpointError(DamgError):
    pass


class ReservedCharacterError(DamgError):
    pass


class UnknownVertexError(DamgError, KeyError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown vertex {label!r}")

    def __str__(self):
        return self.args[0]


class CapExceededError(DamgError):
    pass


class ZeroStrengthError(DamgError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"strength of non-root vertex {vertex!r} is zero")


class NotABijectionError(DamgError):
    pass


class BaseMismatchError(DamgError):
    pass


class MixedScalarError(DamgError, TypeError):
    pass


class NotAncestrallyClosedError(DamgError):
    pass


class NotWeakError(DamgError):
    def __init__(self, vertex, reason="has non-zero synergy"):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} {reason}")


class ProjectionBlowupError(DamgError):
    pass


class KernelNotNormalizedError(DamgError):
    pass


class TooManyPlayersError(DamgError):
    pass


class TooLargeError(DamgError):
    pass


class ChainExplosionError(DamgError):
    pass


class NotACoverRelationError(DamgError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"cover pair {self.pair[0]!r} < {self.pair[1]!r} is implied by transitivity")


class NoUniqueBottomError(DamgError):
    pass


class OracleDisagreementError(DamgError):
    pass


class ParseError(DamgError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class UnknownDemoError(DamgError):
    pass
