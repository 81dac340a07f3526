"""
Coordinate subgraphs of a Z2^3 flow, their circuit decompositions and the
reference orientations o1, o2, o3 read off the circuits.
"""

import logging
from typing import Iterable

from pydantic import BaseModel, ConfigDict

from .errors import InvariantViolation, OddDegreeError
from .graphio import EdgeId, Graph
from .nzflow import GroupFlow, verify_group_flow

log = logging.getLogger(__name__)

COORDINATES = (1, 2, 3)


class Step(BaseModel):
    """Traversal of `edge`; forward means from its stored u to its stored v"""

    model_config = ConfigDict(frozen=True)

    edge: EdgeId
    forward: bool

    def tail(self, g: Graph) -> int:
        u, v = g.edges[self.edge]
        return u if self.forward else v

    def head(self, g: Graph) -> int:
        u, v = g.edges[self.edge]
        return v if self.forward else u


Circuit = tuple[Step, ...]


class CoordinateCircuits(BaseModel):
    model_config = ConfigDict(frozen=True)

    circuits: tuple[Circuit, ...] = ()
    arc_dir: dict[EdgeId, bool] = {}

    @property
    def edges(self) -> frozenset[EdgeId]:
        return frozenset(self.arc_dir)


class CircuitOrientation(BaseModel):
    model_config = ConfigDict(frozen=True)

    coordinates: tuple[CoordinateCircuits, CoordinateCircuits, CoordinateCircuits]

    def coordinate(self, i: int) -> CoordinateCircuits:
        return self.coordinates[i - 1]

    def reversed_coordinate(self, i: int) -> "CircuitOrientation":
        """Same decomposition with every circuit of coordinate i walked backwards"""
        cc = self.coordinate(i)
        flipped = CoordinateCircuits(
            circuits=tuple(
                tuple(Step(edge=s.edge, forward=not s.forward) for s in reversed(c))
                for c in cc.circuits
            ),
            arc_dir={e: not d for e, d in cc.arc_dir.items()},
        )
        coordinates = list(self.coordinates)
        coordinates[i - 1] = flipped
        return CircuitOrientation(
            coordinates=(coordinates[0], coordinates[1], coordinates[2])
        )

    def vertex_sequences(self, g: Graph) -> list[list[list[int]]]:
        """Circuits per coordinate as vertex lists (start vertex not repeated)"""
        return [
            [[step.tail(g) for step in circuit] for circuit in cc.circuits]
            for cc in self.coordinates
        ]


def coordinate_subgraph(g: Graph, f: GroupFlow, i: int) -> frozenset[EdgeId]:
    if i not in COORDINATES:
        raise ValueError(f"Coordinate must be one of {COORDINATES}, got {i}")
    return f.support(i)


def decompose_circuits(g: Graph, edges: Iterable[EdgeId]) -> list[Circuit]:
    """
    Partition an even edge set into edge-disjoint simple circuits.

    The walk always leaves along the lowest unused incident EdgeId and cuts
    a circuit off as soon as it returns to a vertex already on the walk.
    """
    members = frozenset(edges)
    for x in range(g.vertex_count):
        degree = sum(1 for e in g.incidence[x] if e in members)
        if degree % 2:
            raise OddDegreeError(x, degree)

    unused = set(members)
    circuits: list[Circuit] = []
    for first in sorted(members):
        if first not in unused:
            continue
        start = g.edges[first][0]
        walk: list[Step] = []
        position: dict[int, int] = {start: 0}
        x = start
        while True:
            e = next((e for e in g.incidence[x] if e in unused), None)
            if e is None:
                # even degrees: a stuck walk is back at its start and empty
                if walk:
                    raise InvariantViolation(f"Circuit walk stuck at vertex {x}")
                break
            unused.discard(e)
            walk.append(Step(edge=e, forward=g.edges[e][0] == x))
            x = g.other(e, x)
            if x in position:
                cut = position[x]
                circuit = tuple(walk[cut:])
                circuits.append(circuit)
                for step in circuit[1:]:
                    del position[step.tail(g)]
                del walk[cut:]
            else:
                position[x] = len(walk)
    return circuits


def _coordinate_circuits(g: Graph, edges: frozenset[EdgeId]) -> CoordinateCircuits:
    circuits = decompose_circuits(g, edges)
    arc_dir = {step.edge: step.forward for circuit in circuits for step in circuit}
    if arc_dir.keys() != edges:
        raise InvariantViolation("Circuit decomposition does not partition the edge set")
    return CoordinateCircuits(circuits=tuple(circuits), arc_dir=arc_dir)


def build_reference_orientations(g: Graph, f: GroupFlow) -> CircuitOrientation:
    """o_i orients each circuit of coordinate i along its traversal"""
    if not verify_group_flow(g, f):
        raise InvariantViolation("Reference orientations need a verified Z2^3 flow")
    coordinates = []
    for i in COORDINATES:
        cc = _coordinate_circuits(g, coordinate_subgraph(g, f, i))
        log.debug(f"Coordinate {i}: {len(cc.arc_dir)} edges in {len(cc.circuits)} circuits")
        coordinates.append(cc)
    return CircuitOrientation(coordinates=(coordinates[0], coordinates[1], coordinates[2]))
