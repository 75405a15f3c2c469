"""Exception hierarchy.

Every structural error carries a minimal witness (the offending edge, cell,
user...) in its message and, where useful, as attributes.
"""


class ProjcacheError(Exception):
    pass


class ArgumentError(ProjcacheError, ValueError):
    pass


class CapExceededError(ProjcacheError):
    """Raised when an enumeration would produce more objects than allowed."""

    def __init__(self, what, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} objects exceeds enumeration cap {cap}")


class UnsupportedError(ProjcacheError):
    pass


class StructuralError(ProjcacheError):
    pass


class IrregularGraphError(StructuralError):
    pass


class CoverError(StructuralError):
    pass


class NotAMatchingError(CoverError):
    pass


class NotInducedError(CoverError):
    def __init__(self, matching, cross_edge):
        self.matching = matching
        self.cross_edge = cross_edge
        super().__init__(f"matching {matching} is not induced: cross edge {cross_edge} is in the graph")


class SizeMismatchError(CoverError):
    pass


class PartitionError(CoverError):
    pass


class PdaError(StructuralError):
    pass


class PdaC1Error(PdaError):
    pass


class PdaC2Error(PdaError):
    pass


class PdaC3Error(PdaError):
    pass


class DecodeError(ProjcacheError):
    def __init__(self, user, subfile, reason):
        self.user = user
        self.subfile = subfile
        super().__init__(f"user {user} failed on subfile {subfile}: {reason}")


class SingularChannelError(ProjcacheError):
    pass
