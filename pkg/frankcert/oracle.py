"""
Ground truth for small graphs: the Frank number by exhaustive enumeration
of strongly connected orientations followed by an exact set cover over
their deletable arc sets, and the random cubic corpus generator.
"""

import itertools
import logging
import random

from pydantic import BaseModel, ConfigDict, NonNegativeInt

from .certify import deletable_edges, is_strongly_connected
from .errors import (
    BoundExceededError,
    ConnectivityError,
    GenerationError,
    UncoverableError,
)
from .graphio import Graph, Orientation, edge_connectivity, minimum_edge_cut

log = logging.getLogger(__name__)

DEFAULT_MAX_EDGES = 16
# the previously published upper bound, always enough for a cover
DEFAULT_K_MAX = 7
DEFAULT_MAX_ATTEMPTS = 1000


class DeletableProfile(BaseModel):
    """Deletable sets (bitmasks over EdgeIds) of the strong orientations"""

    model_config = ConfigDict(frozen=True)

    masks: frozenset[int]
    sc_orientations: NonNegativeInt
    pruned: bool = True


class ExactResult(BaseModel):
    frank_number: int
    sc_orientations: int
    distinct_maximal_masks: int


def _check_bound(g: Graph, max_edges: int) -> None:
    if g.m > max_edges:
        raise BoundExceededError(
            f"{g.m} edges exceed the enumeration bound of {max_edges}"
        )


def enumerate_strong_orientations(
    g: Graph, max_edges: int = DEFAULT_MAX_EDGES
) -> list[Orientation]:
    """Every strongly connected orientation, lexicographic in (direction[0], ...)"""
    _check_bound(g, max_edges)
    out: list[Orientation] = []
    for direction in itertools.product((False, True), repeat=g.m):
        o = Orientation(direction=direction)
        if is_strongly_connected(g, o):
            out.append(o)
    return out


def maximal_masks(masks: set[int] | frozenset[int]) -> frozenset[int]:
    """Drop every mask contained in another one"""
    kept: list[int] = []
    for mask in sorted(masks, key=lambda x: (-x.bit_count(), x)):
        if not any(mask | k == k for k in kept):
            kept.append(mask)
    return frozenset(kept)


def deletable_profile(
    g: Graph, max_edges: int = DEFAULT_MAX_EDGES, prune: bool = True
) -> DeletableProfile:
    """
    An orientation and its full reversal have the same deletable arcs, so
    only the half with edge 0 in stored direction is visited and the count
    is doubled.
    """
    _check_bound(g, max_edges)
    masks: set[int] = set()
    half = 0
    if g.m == 0:
        return DeletableProfile(
            masks=frozenset({0}) if g.vertex_count <= 1 else frozenset(),
            sc_orientations=1 if g.vertex_count <= 1 else 0,
            pruned=prune,
        )
    for rest in itertools.product((False, True), repeat=g.m - 1):
        o = Orientation(direction=(True,) + rest)
        if not is_strongly_connected(g, o):
            continue
        half += 1
        mask = 0
        for e in deletable_edges(g, o):
            mask |= 1 << e
        masks.add(mask)

    profile = DeletableProfile(
        masks=maximal_masks(masks) if prune else frozenset(masks),
        sc_orientations=2 * half,
        pruned=prune,
    )
    log.debug(
        f"{profile.sc_orientations} strong orientations, {len(masks)} distinct masks, "
        f"{len(profile.masks)} kept"
    )
    return profile


def min_cover(masks: frozenset[int], m: int, k_max: int = DEFAULT_K_MAX) -> int:
    """
    Smallest k <= k_max such that k masks cover all m edges. Branches on the
    lowest uncovered edge, bounded by the best coverage any single mask can
    still add.
    """
    universe = (1 << m) - 1
    ordered = sorted(masks, key=lambda x: (-x.bit_count(), x))
    failed: set[tuple[int, int]] = set()

    def coverable(uncovered: int, k: int) -> bool:
        if uncovered == 0:
            return True
        if k == 0 or (uncovered, k) in failed:
            return False
        best = max((mask & uncovered).bit_count() for mask in ordered)
        if best * k < uncovered.bit_count():
            failed.add((uncovered, k))
            return False
        low = uncovered & -uncovered
        for mask in ordered:
            if mask & low and coverable(uncovered & ~mask, k - 1):
                return True
        failed.add((uncovered, k))
        return False

    if not ordered:
        raise UncoverableError("No strongly connected orientation exists")
    for k in range(1, k_max + 1):
        if coverable(universe, k):
            return k
    missing = universe
    for mask in ordered:
        missing &= ~mask
    raise UncoverableError(
        f"No cover with at most {k_max} orientations",
        tuple(e for e in range(m) if (missing >> e) & 1),
    )


def frank_number(
    g: Graph,
    k_max: int = DEFAULT_K_MAX,
    max_edges: int = DEFAULT_MAX_EDGES,
    prune: bool = True,
) -> int:
    return exact_frank(g, k_max, max_edges, prune).frank_number


def exact_frank(
    g: Graph,
    k_max: int = DEFAULT_K_MAX,
    max_edges: int = DEFAULT_MAX_EDGES,
    prune: bool = True,
) -> ExactResult:
    _check_bound(g, max_edges)
    cut = minimum_edge_cut(g)
    if cut.value < 3:
        raise ConnectivityError(
            "The Frank number is defined for 3-edge-connected graphs",
            lambda_=cut.value,
            cut=cut.edges,
        )
    profile = deletable_profile(g, max_edges, prune)
    k = min_cover(profile.masks, g.m, k_max)
    return ExactResult(
        frank_number=k,
        sc_orientations=profile.sc_orientations,
        distinct_maximal_masks=len(maximal_masks(profile.masks)),
    )


def random_cubic_3ec(
    n: int, seed: int, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> Graph:
    """
    Pairing model: three stubs per vertex, shuffled and paired; rejected
    unless simple with edge connectivity exactly 3.
    """
    if n % 2:
        raise GenerationError(f"Cubic graphs need an even order, got n={n}")
    if n < 4:
        raise GenerationError(f"Cubic graphs need at least 4 vertices, got n={n}")
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        pairs: set[tuple[int, int]] = set()
        for a, b in zip(stubs[::2], stubs[1::2]):
            pair = (min(a, b), max(a, b))
            if a == b or pair in pairs:
                break
            pairs.add(pair)
        else:
            g = Graph(vertex_count=n, edges=tuple(sorted(pairs)))
            if edge_connectivity(g) == 3:
                log.debug(f"Accepted cubic graph n={n} seed={seed} after {attempt} attempts")
                return g
    raise GenerationError(
        f"No simple 3-edge-connected cubic graph on {n} vertices in {max_attempts} attempts"
    )
