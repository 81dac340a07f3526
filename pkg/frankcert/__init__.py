from ._version import __version__

from .core import Cmd, CliConfig
from .core import EpilogueHandlerType, PrologueHandlerType, ExceptionHandlerType
from .errors import FrankcertError
from .graphio import (
    Graph,
    Multigraph,
    Orientation,
    edge_connectivity,
    minimum_edge_cut,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    to_graph6,
)
from .nzflow import GroupFlow, cover_search_flow, jaeger_flow, pack_spanning_trees
from .circuits import CircuitOrientation, build_reference_orientations
from .superpose import IntFlow, ValueSchedule, standard_schedules, superpose
from .certify import Certificate, Report, build_certificate, validate_certificate
from .oracle import exact_frank, frank_number, random_cubic_3ec
from .runner import (
    to_runner,
    run_and_exit,
    default_exception_handler,
    default_minimal_exception_handler,
    default_prologue_handler,
    default_epilogue_handler,
)

__all__ = [
    "__version__",
    "Cmd",
    "CliConfig",
    "EpilogueHandlerType",
    "PrologueHandlerType",
    "ExceptionHandlerType",
    "FrankcertError",
    "Graph",
    "Multigraph",
    "Orientation",
    "edge_connectivity",
    "minimum_edge_cut",
    "parse_edge_list",
    "parse_graph",
    "parse_graph6",
    "to_graph6",
    "GroupFlow",
    "cover_search_flow",
    "jaeger_flow",
    "pack_spanning_trees",
    "CircuitOrientation",
    "build_reference_orientations",
    "IntFlow",
    "ValueSchedule",
    "standard_schedules",
    "superpose",
    "Certificate",
    "Report",
    "build_certificate",
    "validate_certificate",
    "exact_frank",
    "frank_number",
    "random_cubic_3ec",
    "to_runner",
    "run_and_exit",
    "default_exception_handler",
    "default_minimal_exception_handler",
    "default_prologue_handler",
    "default_epilogue_handler",
]
