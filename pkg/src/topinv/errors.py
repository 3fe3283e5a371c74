"""Exception hierarchy shared by all modules.

Every domain failure derives from :class:`TopologyError` so the CLI can map
it to exit status 1; parse/usage failures derive from :class:`ParseError`
(exit status 2).
"""


class TopologyError(ValueError):
    pass


class ParseError(TopologyError):
    pass


class MalformedFacetError(ParseError):
    pass


class EmptyComplexError(ParseError):
    pass


class RingError(ParseError):
    pass


class NotAFaceError(TopologyError):
    pass


class InvalidMatchingError(TopologyError):
    pass


class NotAManifoldError(TopologyError):
    pass


class DisconnectedError(TopologyError):
    pass
