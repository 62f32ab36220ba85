"""Exception hierarchy.

Everything raised on bad data derives from :class:`DataError` so the CLI can
map it to a single exit status.
"""


class DataError(Exception):
    """Input data violates a documented contract."""


class EmptyInput(DataError):
    def __init__(self, what="taggings"):
        super().__init__(f"empty input: no {what}")


class MissingProfile(DataError):
    def __init__(self, user):
        self.user = user
        super().__init__(f"user {user!r} has taggings but no demographics entry")


class InvalidIndex(DataError):
    def __init__(self, dimension, index):
        self.dimension = dimension
        self.index = index
        super().__init__(f"index {index} out of range for dimension {dimension}")


class TooLarge(DataError):
    def __init__(self, shape, limit):
        self.shape = shape
        super().__init__(f"relation of shape {shape} exceeds the brute-force guard ({limit} per dimension)")


class MissingResource(DataError):
    def __init__(self):
        super().__init__("tag suggestion needs a target resource")


class EmptyRecommendation(DataError):
    def __init__(self):
        super().__init__("precision is undefined for an empty recommendation list")


class UnknownLabel(DataError):
    def __init__(self, dimension, label):
        self.dimension = dimension
        self.label = label
        super().__init__(f"unknown {dimension} label {label!r}")


class UnknownUser(UnknownLabel):
    def __init__(self, label):
        super().__init__("user", label)


class ParseError(DataError):
    """A line of an input file could not be parsed."""

    def __init__(self, path, line, reason):
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")


class UnbucketableAge(DataError):
    def __init__(self, user, age):
        self.user = user
        self.age = age
        super().__init__(f"age {age} of user {user!r} falls outside every age bucket")
