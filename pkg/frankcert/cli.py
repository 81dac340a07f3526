"""
frankcert: Frank number certificates for 3-edge-connected graphs

Subcommands

  certify   build a certificate of at most 5 orientations
  verify    check a certificate against its graph
  exact     exact Frank number of a small graph
  flow      nowhere-zero Z2^3 flow
  econn     edge connectivity
  batch     one JSON line per graph6 line
  generate  random cubic 3-edge-connected graphs

Exit codes: 0 ok, 1 usage or parse error, 2 precondition failure,
3 internal invariant violation.
"""

import json
import logging
import sys
from enum import Enum
from typing import Any, Literal, Mapping

from pydantic import (
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    field_validator,
)

from ._version import __version__
from .certify import (
    MAX_ORIENTATIONS,
    Certificate,
    build_certificate,
    validate_certificate,
)
from .circuits import build_reference_orientations
from .core import Cmd, CliConfig
from .errors import (
    CertificateRejected,
    ConnectivityError,
    FrankcertError,
    ScheduleError,
    UsageError,
)
from .graphio import (
    Graph,
    GraphFormat,
    minimum_edge_cut,
    parse_graph,
    parse_graph6,
    to_graph6,
)
from .nzflow import DEFAULT_MAX_DIMENSION, cover_search_flow, jaeger_flow
from .oracle import DEFAULT_K_MAX, DEFAULT_MAX_EDGES, exact_frank, random_cubic_3ec
from .runner import (
    _get_error_exit_code,
    default_exception_handler,
    default_minimal_exception_handler,
    run_and_exit,
)
from .superpose import ValueSchedule, parse_schedule
from .utils import read_text, write_output

log = logging.getLogger(__name__)

CLI_CONFIG = CliConfig(frozen=True, cli_json_enable=True)


class LogLevel(str, Enum):
    INFO = "INFO"
    DEBUG = "DEBUG"
    WARN = "WARN"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


def _dumps(d: Any) -> str:
    return json.dumps(d, separators=(",", ":"))


def _schedules(xs: list[str] | None) -> list[ValueSchedule] | None:
    if not xs:
        return None
    if len(xs) > MAX_ORIENTATIONS:
        raise ScheduleError(
            f"{len(xs)} schedules given, a certificate holds at most {MAX_ORIENTATIONS}"
        )
    return [parse_schedule(x, name=f"U{i}") for i, x in enumerate(xs, start=1)]


def _dump_circuits(g: Graph) -> None:
    co = build_reference_orientations(g, jaeger_flow(g))
    sys.stderr.write(_dumps({"circuits": co.vertex_sequences(g)}) + "\n")


def certify_result(
    g: Graph,
    schedules: list[ValueSchedule] | None = None,
    shrink: bool = True,
    allow_4ec: bool = False,
) -> dict[str, Any]:
    cut = minimum_edge_cut(g)
    if cut.value >= 4:
        if not allow_4ec:
            raise ConnectivityError(
                "certify expects edge connectivity 3 (use --allow-4ec)",
                lambda_=cut.value,
                cut=cut.edges,
            )
        # a 4-edge-connected graph has a 2-arc-connected orientation
        return {"frank_number": 1, "lambda": cut.value}
    if cut.value < 3:
        raise ConnectivityError(
            "No orientations can certify a graph with a cut of size at most 2",
            lambda_=cut.value,
            cut=cut.edges,
        )
    cert = build_certificate(g, schedules, shrink_pass=shrink)
    return cert.model_dump(mode="json")


def flow_result(
    g: Graph, cover_search: bool = False, max_dimension: int = DEFAULT_MAX_DIMENSION
) -> dict[str, Any]:
    f = cover_search_flow(g, max_dimension) if cover_search else jaeger_flow(g)
    return {
        "edges": [
            {"id": e, "u": u, "v": v, "bits": list(bits)}
            for e, ((u, v), bits) in enumerate(zip(g.edges, f.values))
        ]
    }


def econn_result(g: Graph) -> dict[str, Any]:
    return {"lambda": minimum_edge_cut(g).value}


def exact_result(
    g: Graph, k_max: int = DEFAULT_K_MAX, max_edges: int = DEFAULT_MAX_EDGES
) -> dict[str, Any]:
    return exact_frank(g, k_max=k_max, max_edges=max_edges).model_dump()


class _RunConfig(Cmd):
    model_config = CLI_CONFIG

    input_path: str = Field(
        ...,
        description="Graph file, '-' for stdin",
        json_schema_extra={"cli": ("input_path",)},
    )
    graph_format: GraphFormat = Field(
        "graph6",
        description="Input format: graph6 or edgelist",
        json_schema_extra={"cli": ("--format",)},
    )
    out: str | None = Field(
        None,
        description="Output path (default stdout)",
        json_schema_extra={"cli": ("--out",)},
    )
    log_level: LogLevel = LogLevel.WARN

    def load_graph(self) -> Graph:
        return parse_graph(read_text(self.input_path), self.graph_format)

    def emit(self, d: Any) -> None:
        write_output(d if isinstance(d, str) else _dumps(d), self.out)


class _ScheduleOptions(_RunConfig):
    schedule: list[str] | None = Field(
        None,
        description=(
            "Custom schedule v1,v2,v3[,r1r2r3], repeat the option for each one "
            f"(at most {MAX_ORIENTATIONS}), replacing the standard five"
        ),
        json_schema_extra={"cli": ("--schedule",)},
    )
    no_shrink: bool = Field(
        False,
        description="Keep every orientation instead of dropping redundant ones",
        json_schema_extra={"cli": ("--no-shrink",)},
    )
    allow_4ec: bool = Field(
        False,
        description="Report F(G)=1 for 4-edge-connected input instead of failing",
        json_schema_extra={"cli": ("--allow-4ec",)},
    )

    @field_validator("schedule")
    @classmethod
    def _check_schedule(cls, xs: list[str] | None) -> list[str] | None:
        # raises ScheduleError (a ValueError) for inadmissible input
        _schedules(xs)
        return xs


class CertifyCmd(_ScheduleOptions):
    """Build a certificate of at most 5 strongly connected orientations"""

    dump_circuits: bool = Field(
        False,
        description="Write the circuit decomposition to stderr",
        json_schema_extra={"cli": ("--dump-circuits",)},
    )

    def run(self) -> None:
        g = self.load_graph()
        d = certify_result(
            g, _schedules(self.schedule), not self.no_shrink, self.allow_4ec
        )
        if self.dump_circuits and "orientations" in d:
            _dump_circuits(g)
        self.emit(d)


class VerifyCmd(_RunConfig):
    """Validate a certificate against its graph"""

    certificate: str = Field(
        ...,
        description="Certificate JSON file",
        json_schema_extra={"cli": ("--certificate",)},
    )

    def run(self) -> None:
        g = self.load_graph()
        cert = Certificate.model_validate_json(read_text(self.certificate))
        report = validate_certificate(g, cert)
        self.emit(report.model_dump_json())
        if not report.passed:
            raise CertificateRejected(
                f"Certificate rejected with {len(report.failures)} failures"
            )


class ExactCmd(_RunConfig):
    """Exact Frank number by exhaustive search"""

    max_edges: PositiveInt = Field(
        DEFAULT_MAX_EDGES, json_schema_extra={"cli": ("--max-edges",)}
    )
    k_max: PositiveInt = Field(DEFAULT_K_MAX, json_schema_extra={"cli": ("--k-max",)})

    def run(self) -> None:
        self.emit(exact_result(self.load_graph(), self.k_max, self.max_edges))


class FlowCmd(_RunConfig):
    """Nowhere-zero Z2^3 flow, per edge 3-bit vectors"""

    cover_search: bool = Field(
        False,
        description="Use the exhaustive cycle-space search instead of tree packing",
        json_schema_extra={"cli": ("--cover-search",)},
    )
    max_dimension: PositiveInt = Field(
        DEFAULT_MAX_DIMENSION, json_schema_extra={"cli": ("--max-dimension",)}
    )
    dump_circuits: bool = Field(
        False,
        description="Write the circuit decomposition to stderr",
        json_schema_extra={"cli": ("--dump-circuits",)},
    )

    def run(self) -> None:
        g = self.load_graph()
        d = flow_result(g, self.cover_search, self.max_dimension)
        if self.dump_circuits:
            _dump_circuits(g)
        self.emit(d)


class EconnCmd(_RunConfig):
    """Edge connectivity"""

    def run(self) -> None:
        self.emit(econn_result(self.load_graph()))


class BatchCmd(_ScheduleOptions):
    """Run an action on every graph6 line, one JSON line out per line in"""

    action: Literal["certify", "econn", "exact", "flow"] = Field(
        "certify", json_schema_extra={"cli": ("--action",)}
    )
    max_edges: PositiveInt = Field(
        DEFAULT_MAX_EDGES, json_schema_extra={"cli": ("--max-edges",)}
    )
    k_max: PositiveInt = Field(DEFAULT_K_MAX, json_schema_extra={"cli": ("--k-max",)})

    def _one(self, g: Graph) -> dict[str, Any]:
        if self.action == "econn":
            return econn_result(g)
        if self.action == "exact":
            return exact_result(g, self.k_max, self.max_edges)
        if self.action == "flow":
            return flow_result(g)
        return certify_result(
            g, _schedules(self.schedule), not self.no_shrink, self.allow_4ec
        )

    def run(self) -> None:
        if self.graph_format != "graph6":
            raise UsageError("batch reads graph6 lines only")
        lines: list[str] = []
        for ix, text in enumerate(read_text(self.input_path).splitlines(), start=1):
            row: dict[str, Any] = {"line": ix, "graph6": text.strip()}
            try:
                row["result"] = self._one(parse_graph6(text))
                row["status"] = 0
            except Exception as ex:
                status = _get_error_exit_code(ex, 3)
                log.warning(f"Line {ix} failed with status {status}: {ex}")
                row["status"] = status
                row["error"] = str(ex)
            lines.append(_dumps(row))
        self.emit("\n".join(lines))


class GenerateCmd(Cmd):
    """Random cubic 3-edge-connected graphs (pairing model)"""

    model_config = CLI_CONFIG

    n: PositiveInt = Field(..., json_schema_extra={"cli": ("--n",)})
    count: PositiveInt = Field(1, json_schema_extra={"cli": ("--count",)})
    seed: NonNegativeInt = Field(0, json_schema_extra={"cli": ("--seed",)})
    raw: bool = Field(
        False,
        description="Plain graph6 lines instead of JSON lines",
        json_schema_extra={"cli": ("--raw",)},
    )
    out: str | None = Field(None, json_schema_extra={"cli": ("--out",)})
    log_level: LogLevel = LogLevel.WARN

    def run(self) -> None:
        lines: list[str] = []
        for i in range(self.count):
            seed = self.seed + i
            g6 = to_graph6(random_cubic_3ec(self.n, seed))
            row = {"n": self.n, "seed": seed, "graph6": g6}
            lines.append(g6 if self.raw else _dumps(row))
        write_output("\n".join(lines), self.out)


CMDS: Mapping[str, type[Cmd]] = {
    "certify": CertifyCmd,
    "verify": VerifyCmd,
    "exact": ExactCmd,
    "flow": FlowCmd,
    "econn": EconnCmd,
    "batch": BatchCmd,
    "generate": GenerateCmd,
}


def prologue_handler(opts: Any) -> None:
    """Logging goes to stderr, stdout is reserved for JSON"""
    format_str = (
        "[%(levelname)s] %(asctime)s [%(name)s %(funcName)s %(lineno)d] %(message)s"
    )
    level: LogLevel = getattr(opts, "log_level", LogLevel.WARN)
    logging.basicConfig(level=level.value, stream=sys.stderr, format=format_str)
    log.info(f"Running frankcert {__version__} with {opts}")


def epilogue_handler(exit_code: int, run_time_sec: float) -> None:
    log.info(f"Completed with exit code {exit_code} in {run_time_sec:.3f} sec.")


def exception_handler(ex: BaseException) -> int:
    """Terse message for expected failures, traceback for anything else"""
    if isinstance(ex, ValidationError) or (
        isinstance(ex, FrankcertError) and ex.exit_code != 3
    ):
        return default_minimal_exception_handler(ex)
    return default_exception_handler(ex)


def main(args: list[str] | None = None) -> None:
    run_and_exit(
        CMDS,
        description=__doc__,
        version=__version__,
        exception_handler=exception_handler,
        prologue_handler=prologue_handler,
        epilogue_handler=epilogue_handler,
        args=args,
    )


if __name__ == "__main__":
    main()
