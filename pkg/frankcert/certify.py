"""
Strong connectivity, deletable arcs, and the Frank certificate: at most five
strongly connected orientations with, for every edge, the index of one in
which its arc can be deleted without losing strong connectivity.
"""

import logging
from typing import Sequence

import networkx as nx
from pydantic import BaseModel, ConfigDict

from .circuits import CircuitOrientation, build_reference_orientations
from .errors import (
    IndexMismatchError,
    InvariantViolation,
    ScheduleError,
    UncoverableError,
)
from .graphio import EdgeId, Graph, Orientation
from .nzflow import GroupFlow, jaeger_flow
from .superpose import (
    IntFlow,
    ValueSchedule,
    is_conservative,
    standard_schedules,
    superpose,
)

log = logging.getLogger(__name__)

MAX_ORIENTATIONS = 5


class Provenance(BaseModel):
    model_config = ConfigDict(frozen=True)

    schedule: tuple[int, int, int]
    reversed: tuple[bool, bool, bool]
    values: tuple[int, ...]


class Certificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    m: int
    orientations: tuple[tuple[bool, ...], ...]
    witness: tuple[int, ...]
    provenance: tuple[Provenance, ...] | None = None

    def orientation(self, j: int) -> Orientation:
        return Orientation(direction=self.orientations[j])


class OrientationVerdict(BaseModel):
    index: int
    strongly_connected: bool


class EdgeVerdict(BaseModel):
    edge: EdgeId
    witness: int | None
    valid: bool


class Report(BaseModel):
    passed: bool
    size_ok: bool
    orientations: list[OrientationVerdict]
    edges: list[EdgeVerdict]
    failures: list[str]


class Pipeline(BaseModel):
    """Intermediate state of build_certificate, before the shrink pass"""

    model_config = ConfigDict(frozen=True)

    flow: GroupFlow
    circuits: CircuitOrientation
    schedules: tuple[ValueSchedule, ...]
    flows: tuple[IntFlow, ...]
    deletable: tuple[frozenset[EdgeId], ...]


def _check_length(g: Graph, o: Orientation) -> None:
    if len(o.direction) != g.m:
        raise IndexMismatchError(
            f"Orientation has {len(o.direction)} arcs for a graph with {g.m} edges"
        )


def _digraph(g: Graph, o: Orientation) -> nx.DiGraph:
    D = nx.DiGraph()
    D.add_nodes_from(range(g.vertex_count))
    D.add_edges_from(o.arcs(g))
    return D


def _strong(D: nx.DiGraph) -> bool:
    return D.number_of_nodes() <= 1 or nx.is_strongly_connected(D)


def is_strongly_connected(g: Graph, o: Orientation) -> bool:
    _check_length(g, o)
    return _strong(_digraph(g, o))


def deletable_edges(g: Graph, o: Orientation) -> frozenset[EdgeId]:
    """Arcs whose removal alone keeps the orientation strongly connected"""
    _check_length(g, o)
    D = _digraph(g, o)
    if not _strong(D):
        raise InvariantViolation("Deletable arcs are only defined for strong orientations")
    out: set[EdgeId] = set()
    for e, (tail, head) in enumerate(o.arcs(g)):
        D.remove_edge(tail, head)
        if _strong(D):
            out.add(e)
        D.add_edge(tail, head)
    return frozenset(out)


def lemma4_counterexamples(g: Graph, flow: IntFlow) -> frozenset[EdgeId]:
    """Value-1 arcs that are not deletable (empty for every all-positive flow)"""
    return flow.value_one_edges() - deletable_edges(g, flow.orientation)


def run_pipeline(g: Graph, schedules: Sequence[ValueSchedule] | None = None) -> Pipeline:
    """Flow, reference orientations and one superposed flow per schedule"""
    schedules = standard_schedules() if schedules is None else list(schedules)
    flow = jaeger_flow(g)
    co = build_reference_orientations(g, flow)

    flows: list[IntFlow] = []
    deletable: list[frozenset[EdgeId]] = []
    for s in schedules:
        f = superpose(g, co, s)
        if not is_conservative(g, f):
            raise InvariantViolation(f"Superposition under {s.describe()} is not a flow")
        if not is_strongly_connected(g, f.orientation):
            raise InvariantViolation(f"Orientation of {s.describe()} is not strong")
        d = deletable_edges(g, f.orientation)
        missing = f.value_one_edges() - d
        if missing:
            raise InvariantViolation(
                f"Value-1 arcs {sorted(missing)} of {s.describe()} are not deletable"
            )
        log.debug(
            f"{s.describe()}: {len(f.value_one_edges())} value-1 arcs, {len(d)} deletable"
        )
        flows.append(f)
        deletable.append(d)

    return Pipeline(
        flow=flow,
        circuits=co,
        schedules=tuple(schedules),
        flows=tuple(flows),
        deletable=tuple(deletable),
    )


def assign_witnesses(p: Pipeline, m: int, standard: bool) -> list[int]:
    """Lowest schedule index with value 1; for custom schedules fall back to any deletable arc"""
    witness: list[int] = []
    orphans: list[EdgeId] = []
    for e in range(m):
        j = next((j for j, f in enumerate(p.flows) if f.value[e] == 1), None)
        if j is None and not standard:
            j = next((j for j, d in enumerate(p.deletable) if e in d), None)
        if j is None:
            orphans.append(e)
            witness.append(-1)
        else:
            witness.append(j)
    if orphans and standard:
        raise InvariantViolation(
            f"Edges {orphans} have value 1 under none of the standard schedules"
        )
    if orphans:
        raise UncoverableError("No orientation can witness these edges", tuple(orphans))
    return witness


def shrink(p: Pipeline, witness: list[int]) -> tuple[list[int], list[int]]:
    """
    Drop orientations whose witnessed edges are all deletable in some other
    remaining orientation, highest index first. Returns (kept, witness).
    """
    kept = list(range(len(p.flows)))
    witness = list(witness)
    for j in reversed(range(len(p.flows))):
        if len(kept) == 1:
            break
        others = [k for k in kept if k != j]
        moves: dict[EdgeId, int] = {}
        for e, w in enumerate(witness):
            if w != j:
                continue
            k = next((k for k in others if e in p.deletable[k]), None)
            if k is None:
                break
            moves[e] = k
        else:
            log.debug(f"Dropping {p.schedules[j].describe()}, re-witnessed {len(moves)} edges")
            kept = others
            for e, k in moves.items():
                witness[e] = k
    return kept, witness


def build_certificate(
    g: Graph,
    schedules: Sequence[ValueSchedule] | None = None,
    shrink_pass: bool = True,
) -> Certificate:
    standard = schedules is None
    if schedules is not None and len(schedules) > MAX_ORIENTATIONS:
        raise ScheduleError(
            f"{len(schedules)} schedules given, a certificate holds at most {MAX_ORIENTATIONS}"
        )
    p = run_pipeline(g, schedules)
    witness = assign_witnesses(p, g.m, standard)
    kept = list(range(len(p.flows)))
    if shrink_pass:
        kept, witness = shrink(p, witness)

    position = {j: ix for ix, j in enumerate(kept)}
    cert = Certificate(
        n=g.vertex_count,
        m=g.m,
        orientations=tuple(p.flows[j].orientation.direction for j in kept),
        witness=tuple(position[w] for w in witness),
        provenance=tuple(
            Provenance(
                schedule=p.schedules[j].values,
                reversed=p.schedules[j].reversed,
                values=p.flows[j].value,
            )
            for j in kept
        ),
    )

    report = validate_certificate(g, cert)
    if not report.passed:
        raise InvariantViolation(f"Built certificate failed validation: {report.failures}")
    log.info(
        f"Certificate with {len(kept)} orientations "
        f"({', '.join(p.schedules[j].describe() for j in kept)})"
    )
    return cert


def validate_certificate(g: Graph, c: Certificate) -> Report:
    """Check a certificate against the graph without trusting its producer"""
    failures: list[str] = []
    if c.n != g.vertex_count or c.m != g.m:
        failures.append(
            f"Certificate is for n={c.n}, m={c.m}, graph has n={g.vertex_count}, m={g.m}"
        )
    size_ok = len(c.orientations) <= MAX_ORIENTATIONS
    if not size_ok:
        failures.append(
            f"{len(c.orientations)} orientations exceed the bound {MAX_ORIENTATIONS}"
        )

    verdicts: list[OrientationVerdict] = []
    deletable: dict[int, frozenset[EdgeId]] = {}
    for j, direction in enumerate(c.orientations):
        o = Orientation(direction=direction)
        if len(direction) != g.m:
            failures.append(f"Orientation {j} has {len(direction)} arcs, expected {g.m}")
            strong = False
        else:
            strong = is_strongly_connected(g, o)
            if strong:
                deletable[j] = deletable_edges(g, o)
            else:
                failures.append(f"Orientation {j} is not strongly connected")
        verdicts.append(OrientationVerdict(index=j, strongly_connected=strong))

    if len(c.witness) != g.m:
        failures.append(f"Witness list has {len(c.witness)} entries, expected {g.m}")

    edges: list[EdgeVerdict] = []
    for e in range(g.m):
        w = c.witness[e] if e < len(c.witness) else None
        valid = w is not None and w in deletable and e in deletable[w]
        if not valid:
            failures.append(f"Edge {e} is not deletable in its witness orientation {w}")
        edges.append(EdgeVerdict(edge=e, witness=w, valid=valid))

    return Report(
        passed=not failures,
        size_ok=size_ok,
        orientations=verdicts,
        edges=edges,
        failures=failures,
    )
