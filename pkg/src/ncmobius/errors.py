"""Exception hierarchy shared by every module."""


class NCError(Exception):
    """Base class for all errors raised by ncmobius."""


class UnsupportedType(NCError):
    pass


class InvalidRank(NCError):
    pass


class MixedSystems(NCError):
    pass


class NotBounded(NCError):
    pass


class NoMinimum(NCError):
    pass


class NotComparable(NCError):
    pass


class NotGraded(NCError):
    pass


class NotUnrefinable(NCError):
    pass


class MalformedCover(NCError):
    pass


class SearchExhausted(NCError):
    pass


class ScaleExceeded(NCError):
    pass


class NonIntegerResult(NCError):
    pass


class CapExceeded(NCError):
    pass
