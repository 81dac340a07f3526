"""
Exception hierarchy. Every error knows the process exit code it maps to

1 usage or parse error
2 precondition failure (connectivity, bounds, coverage)
3 internal invariant violation
"""


class FailedExecutionException(Exception):
    def __init__(self, exit_code: int, message: str):
        self.exit_code = exit_code
        self.message = message
        super(FailedExecutionException, self).__init__(self.message)


class FrankcertError(FailedExecutionException):
    exit_code: int = 3

    def __init__(self, message: str):
        super(FrankcertError, self).__init__(type(self).exit_code, message)


class UsageError(FrankcertError):
    exit_code = 1


class GraphFormatError(FrankcertError, ValueError):
    exit_code = 1

    def __init__(
        self, message: str, offset: int | None = None, line: int | None = None
    ):
        self.offset = offset
        self.line = line
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        elif line is not None:
            message = f"{message} (line {line})"
        super(GraphFormatError, self).__init__(message)


class IndexMismatchError(FrankcertError, ValueError):
    exit_code = 1


class ScheduleError(FrankcertError, ValueError):
    exit_code = 1


class ConnectivityError(FrankcertError):
    exit_code = 2

    def __init__(self, message: str, lambda_: int, cut: tuple[int, ...] = ()):
        self.lambda_ = lambda_
        self.cut = cut
        super(ConnectivityError, self).__init__(
            f"{message}: edge connectivity {lambda_}, cut edges {list(cut)}"
        )


class PackingError(FrankcertError):
    exit_code = 2

    def __init__(
        self, message: str, partition: tuple[tuple[int, ...], ...], crossing: int
    ):
        self.partition = partition
        self.crossing = crossing
        super(PackingError, self).__init__(
            f"{message}: {crossing} edges cross a partition into {len(partition)} parts"
        )


class OddDegreeError(FrankcertError):
    exit_code = 2

    def __init__(self, vertex: int, degree: int):
        self.vertex = vertex
        self.degree = degree
        super(OddDegreeError, self).__init__(
            f"Vertex {vertex} has odd degree {degree} in the edge set"
        )


class UncoverableError(FrankcertError):
    exit_code = 2

    def __init__(self, message: str, edges: tuple[int, ...] = ()):
        self.edges = edges
        super(UncoverableError, self).__init__(f"{message}: edges {list(edges)}")


class TooFewVerticesError(FrankcertError):
    exit_code = 2

    def __init__(self, vertex_count: int, needed: int = 2):
        self.vertex_count = vertex_count
        super(TooFewVerticesError, self).__init__(
            f"Edge connectivity needs at least {needed} vertices, got {vertex_count}"
        )


class BoundExceededError(FrankcertError):
    exit_code = 2


class GenerationError(FrankcertError):
    exit_code = 2


class CertificateRejected(FrankcertError):
    exit_code = 2


class InvariantViolation(FrankcertError):
    exit_code = 3
