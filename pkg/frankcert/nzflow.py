"""
Nowhere-zero Z2 x Z2 x Z2 flows.

The construction packs three edge-disjoint spanning trees into the doubled
graph (6-edge-connected when the input is 3-edge-connected), projects them
back, and sets coordinate i to the GF(2) sum of the fundamental cycles of
all edges outside tree i. An edge sits in at most two projected trees, so
some coordinate is 1 on it.

Cycle-space elements are Python ints used as bitmasks over EdgeIds.
"""

import itertools
import logging
from collections import deque
from typing import Iterator

from pydantic import BaseModel, ConfigDict, PositiveInt, field_validator

from .errors import (
    ConnectivityError,
    IndexMismatchError,
    InvariantViolation,
    PackingError,
    BoundExceededError,
    UncoverableError,
)
from .graphio import EdgeId, Graph, Multigraph, double, minimum_edge_cut

log = logging.getLogger(__name__)

Bits = tuple[int, int, int]
DEFAULT_MAX_DIMENSION = 10


class GroupFlow(BaseModel):
    """Per-edge value in Z2^3. Nowhere-zero and parity are checked against a graph"""

    model_config = ConfigDict(frozen=True)

    values: tuple[Bits, ...]

    @field_validator("values")
    @classmethod
    def _check_bits(cls, values: tuple[Bits, ...]) -> tuple[Bits, ...]:
        for e, bits in enumerate(values):
            if any(b not in (0, 1) for b in bits):
                raise ValueError(f"Edge {e} has non-binary value {bits}")
        return values

    def support(self, i: int) -> frozenset[EdgeId]:
        """Edges with a 1 in coordinate i (1-based)"""
        return frozenset(e for e, bits in enumerate(self.values) if bits[i - 1])


class TreePacking(BaseModel):
    model_config = ConfigDict(frozen=True)

    trees: tuple[frozenset[EdgeId], ...]


class _Forest:
    """Edge-indexed forest with path queries"""

    def __init__(self, n: int):
        self.adj: list[dict[EdgeId, int]] = [{} for _ in range(n)]
        self.edges: set[EdgeId] = set()

    def add(self, e: EdgeId, u: int, v: int) -> None:
        self.adj[u][e] = v
        self.adj[v][e] = u
        self.edges.add(e)

    def remove(self, e: EdgeId, u: int, v: int) -> None:
        del self.adj[u][e]
        del self.adj[v][e]
        self.edges.discard(e)

    def path(self, s: int, t: int) -> list[EdgeId] | None:
        """EdgeIds on the s-t path in order from s, None if disconnected"""
        if s == t:
            return []
        via: dict[int, tuple[int, EdgeId] | None] = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e, y in sorted(self.adj[x].items()):
                if y in via:
                    continue
                via[y] = (x, e)
                if y == t:
                    out: list[EdgeId] = []
                    cur = t
                    while (step := via[cur]) is not None:
                        cur, f = step
                        out.append(f)
                    return out[::-1]
                queue.append(y)
        return None


def _augment(
    m: Multigraph,
    forests: list[_Forest],
    owner: dict[EdgeId, int],
    sources: list[EdgeId],
) -> set[EdgeId] | None:
    """
    One round of matroid-partition augmentation (breadth first, so the
    exchange sequence is a shortest one and stays valid when applied).

    label[y] = x means x goes into the forest of y, replacing y.
    Returns None when some source was inserted, otherwise the labelled set.
    """
    label: dict[EdgeId, EdgeId | None] = {s: None for s in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        u, v = m.edges[x]
        for i, forest in enumerate(forests):
            if owner.get(x) == i:
                continue
            path = forest.path(u, v)
            if path is None:
                _apply_exchange(m, forests, owner, label, x, i)
                return None
            for y in path:
                if y not in label:
                    label[y] = x
                    queue.append(y)
    return set(label)


def _apply_exchange(
    m: Multigraph,
    forests: list[_Forest],
    owner: dict[EdgeId, int],
    label: dict[EdgeId, EdgeId | None],
    x: EdgeId | None,
    target: int,
) -> None:
    while x is not None:
        u, v = m.edges[x]
        previous = owner.get(x)
        if previous is not None:
            forests[previous].remove(x, u, v)
        forests[target].add(x, u, v)
        owner[x] = target
        log.debug(f"Moved edge {x} from forest {previous} to forest {target}")
        if previous is None:
            break
        x, target = label[x], previous


def _components(n: int, edges: list[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return tuple(tuple(xs) for xs in sorted(groups.values()))


def pack_spanning_trees(m: Multigraph, k: PositiveInt) -> TreePacking:
    """
    k pairwise edge-disjoint spanning trees of m.

    Edges are offered in ascending EdgeId. When the forests cannot all be
    completed the error carries a vertex partition crossed by fewer than
    k * (parts - 1) edges, which certifies that no packing exists.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    n = m.vertex_count
    forests = [_Forest(n) for _ in range(k)]
    owner: dict[EdgeId, int] = {}
    unassigned: list[EdgeId] = []

    def complete() -> bool:
        return all(len(f.edges) == max(n - 1, 0) for f in forests)

    for e in range(m.m):
        if complete():
            break
        if _augment(m, forests, owner, [e]) is not None:
            unassigned.append(e)

    while not complete():
        pending = [e for e in range(m.m) if e not in owner]
        labelled = _augment(m, forests, owner, pending)
        if labelled is None:
            continue
        partition = _components(n, [m.edges[e] for e in labelled])
        part_of = {x: p for p, xs in enumerate(partition) for x in xs}
        crossing = sum(1 for u, v in m.edges if part_of[u] != part_of[v])
        raise PackingError(
            f"No packing of {k} edge-disjoint spanning trees exists",
            partition=partition,
            crossing=crossing,
        )

    log.debug(
        f"Packed {k} spanning trees on n={n}, {len(unassigned)} edges left over"
    )
    return TreePacking(trees=tuple(frozenset(f.edges) for f in forests))


def _forest_arrays(
    g: Graph, forest: frozenset[EdgeId]
) -> tuple[list[int], list[int], list[EdgeId]]:
    n = g.vertex_count
    parent, depth, parent_edge = [-1] * n, [-1] * n, [-1] * n
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in g.incidence[x]:
                if e not in forest:
                    continue
                y = g.other(e, x)
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y], parent_edge[y] = x, e
                    queue.append(y)
    return parent, depth, parent_edge


def fundamental_cycles(g: Graph, forest: frozenset[EdgeId]) -> dict[EdgeId, int]:
    """Fundamental cycle bitmask of every edge outside `forest`, ascending EdgeId"""
    parent, depth, parent_edge = _forest_arrays(g, forest)
    cycles: dict[EdgeId, int] = {}
    for e, (a, b) in enumerate(g.edges):
        if e in forest:
            continue
        mask = 1 << e
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            mask ^= 1 << parent_edge[a]
            a = parent[a]
        cycles[e] = mask
    return cycles


def spanning_forest(g: Graph) -> frozenset[EdgeId]:
    """BFS spanning forest, lowest EdgeId first"""
    seen = [False] * g.vertex_count
    chosen: set[EdgeId] = set()
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in g.incidence[x]:
                y = g.other(e, x)
                if not seen[y]:
                    seen[y] = True
                    chosen.add(e)
                    queue.append(y)
    return frozenset(chosen)


def cycle_space_basis(g: Graph) -> list[int]:
    """Fundamental cycles of a BFS spanning forest, ordered by non-tree EdgeId"""
    return list(fundamental_cycles(g, spanning_forest(g)).values())


def _from_masks(g: Graph, masks: tuple[int, int, int]) -> GroupFlow:
    return GroupFlow(
        values=tuple(
            (
                (masks[0] >> e) & 1,
                (masks[1] >> e) & 1,
                (masks[2] >> e) & 1,
            )
            for e in range(g.m)
        )
    )


def project_packing(g: Graph, packing: TreePacking, dg: Multigraph) -> list[frozenset[EdgeId]]:
    """Map trees of the doubled graph back to EdgeIds of g"""
    assert dg.parent is not None
    projected: list[frozenset[EdgeId]] = []
    for tree in packing.trees:
        image = frozenset(dg.parent[c] for c in tree)
        if len(image) != len(tree):
            raise InvariantViolation("A packed tree holds both copies of an edge")
        projected.append(image)
    return projected


def jaeger_flow(g: Graph) -> GroupFlow:
    """
    Nowhere-zero Z2^3 flow on a graph of edge connectivity at least 3,
    built from three spanning trees packed in the doubled graph.
    """
    cut = minimum_edge_cut(g)
    if cut.value < 3:
        raise ConnectivityError(
            "The flow construction needs a 3-edge-connected graph",
            lambda_=cut.value,
            cut=cut.edges,
        )

    dg = double(g)
    packing = pack_spanning_trees(dg, 3)
    trees = project_packing(g, packing, dg)

    masks: list[int] = []
    for i, tree in enumerate(trees, start=1):
        mask = 0
        for cycle in fundamental_cycles(g, tree).values():
            mask ^= cycle
        log.debug(f"Coordinate {i}: {mask.bit_count()} edges from {g.m - len(tree)} cycles")
        masks.append(mask)

    flow = _from_masks(g, (masks[0], masks[1], masks[2]))
    if not verify_group_flow(g, flow):
        raise InvariantViolation("Constructed Z2^3 flow failed verification")
    return flow


def verify_group_flow(g: Graph, f: GroupFlow) -> bool:
    """Nowhere-zero and, per vertex and coordinate, an even number of 1s"""
    if len(f.values) != g.m:
        raise IndexMismatchError(
            f"Flow has {len(f.values)} values for a graph with {g.m} edges"
        )
    if any(bits == (0, 0, 0) for bits in f.values):
        return False
    for x in range(g.vertex_count):
        for i in range(3):
            if sum(f.values[e][i] for e in g.incidence[x]) % 2:
                return False
    return True


def _span(basis: list[int]) -> list[int]:
    """All 2^d elements, element j is the XOR of the basis vectors selected by j's bits"""
    elements = [0]
    for b in basis:
        elements.extend([x ^ b for x in elements])
    return elements


def _triples(size: int) -> Iterator[tuple[int, int, int]]:
    return itertools.combinations_with_replacement(range(size), 3)


def cover_search_flow(g: Graph, max_dimension: int = DEFAULT_MAX_DIMENSION) -> GroupFlow:
    """
    Exhaustive oracle: the first triple (lexicographic, repetition allowed)
    of cycle-space elements whose supports cover E, as a Z2^3 flow.
    """
    basis = cycle_space_basis(g)
    if len(basis) > max_dimension:
        raise BoundExceededError(
            f"Cycle space dimension {len(basis)} exceeds the bound {max_dimension}"
        )
    everything = (1 << g.m) - 1
    reachable = 0
    for b in basis:
        reachable |= b
    if reachable != everything:
        missing = tuple(e for e in range(g.m) if not (reachable >> e) & 1)
        raise UncoverableError("Bridges lie on no cycle, no flow can cover them", missing)

    elements = _span(basis)
    for a, b, c in _triples(len(elements)):
        if elements[a] | elements[b] | elements[c] == everything:
            log.debug(f"Cover found at element triple ({a}, {b}, {c})")
            return _from_masks(g, (elements[a], elements[b], elements[c]))
    raise UncoverableError("No triple of cycle-space elements covers E")
