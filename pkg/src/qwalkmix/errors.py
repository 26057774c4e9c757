"""Exception hierarchy shared by all qwalkmix modules."""


class QWalkError(Exception):
    """Base class for every error raised by this package."""


class GraphError(QWalkError):
    """Invalid graph input."""


class NotConnected(GraphError):
    pass


class NotSimple(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class NotRegular(GraphError):
    pass


class InvalidVertex(GraphError):
    pass


class BipartiteNoOddCycle(GraphError):
    pass


class MarkedSetError(QWalkError):
    pass


class EmptyMarkedSet(MarkedSetError):
    pass


class FullMarkedSet(MarkedSetError):
    pass


class NotSymmetric(QWalkError):
    pass


class SingularBlock(QWalkError):
    pass


class WrongSpaceTag(QWalkError):
    pass


class NotAutomorphism(QWalkError):
    pass


class DoesNotFixS(QWalkError):
    pass
