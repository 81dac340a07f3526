"""
Superposition of the reference orientations under a value schedule.

For an edge, every coordinate i that contains it contributes +v_i when its
direction under o_i (after the schedule's reversal flag) is the stored u->v
direction and -v_i otherwise. The sign of the sum is the arc direction and
its absolute value the flow value. With an admissible schedule no sum is 0,
and since every o_i is a union of circuits the result conserves flow.
"""

import itertools
import logging
from typing import Mapping

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

from .circuits import COORDINATES, CircuitOrientation
from .errors import InvariantViolation, ScheduleError, UncoverableError
from .graphio import EdgeId, Graph, Orientation
from .nzflow import Bits

log = logging.getLogger(__name__)

Agreement = Mapping[tuple[int, int], bool]


class ValueSchedule(BaseModel):
    model_config = ConfigDict(frozen=True)

    values: tuple[PositiveInt, PositiveInt, PositiveInt]
    reversed: tuple[bool, bool, bool] = (False, False, False)
    name: str = "custom"

    def describe(self) -> str:
        flags = "".join("1" if r else "0" for r in self.reversed)
        return f"{self.name}({','.join(map(str, self.values))};{flags})"


class IntFlow(BaseModel):
    model_config = ConfigDict(frozen=True)

    orientation: Orientation
    value: tuple[PositiveInt, ...]

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.value) != len(self.orientation.direction):
            raise ValueError(
                f"{len(self.value)} values for {len(self.orientation.direction)} arcs"
            )
        return self

    def value_one_edges(self) -> frozenset[EdgeId]:
        return frozenset(e for e, x in enumerate(self.value) if x == 1)


def standard_schedules() -> list[ValueSchedule]:
    return [
        ValueSchedule(values=(1, 2, 4), name="S1"),
        ValueSchedule(values=(4, 2, 3), name="S2"),
        ValueSchedule(values=(4, 2, 3), reversed=(False, False, True), name="S3"),
        ValueSchedule(values=(2, 1, 4), reversed=(False, True, False), name="S4"),
        ValueSchedule(values=(2, 4, 1), reversed=(False, True, False), name="S5"),
    ]


def is_admissible(s: ValueSchedule) -> bool:
    """No signed sum over two or three of the values is zero"""
    for size in (2, 3):
        for subset in itertools.combinations(s.values, size):
            for signs in itertools.product((1, -1), repeat=size):
                if sum(sign * v for sign, v in zip(signs, subset)) == 0:
                    return False
    return True


def parse_schedule(text: str, name: str = "custom") -> ValueSchedule:
    """"v1,v2,v3" or "v1,v2,v3,r1r2r3" where each r is 0 or 1"""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (3, 4):
        raise ScheduleError(f"Schedule '{text}' must be v1,v2,v3[,r1r2r3]")
    try:
        values = tuple(int(p) for p in parts[:3])
    except ValueError:
        raise ScheduleError(f"Schedule values in '{text}' must be integers")
    if any(v <= 0 for v in values):
        raise ScheduleError(f"Schedule values in '{text}' must be positive")
    flags = parts[3] if len(parts) == 4 else "000"
    if len(flags) != 3 or any(c not in "01" for c in flags):
        raise ScheduleError(f"Reversal flags '{flags}' must be three 0/1 digits")
    s = ValueSchedule(
        values=(values[0], values[1], values[2]),
        reversed=(flags[0] == "1", flags[1] == "1", flags[2] == "1"),
        name=name,
    )
    if not is_admissible(s):
        raise ScheduleError(f"Schedule {s.describe()} has a vanishing signed sum")
    return s


def superpose(g: Graph, co: CircuitOrientation, s: ValueSchedule) -> IntFlow:
    if not is_admissible(s):
        raise ScheduleError(f"Schedule {s.describe()} is not admissible")

    direction: list[bool] = []
    values: list[int] = []
    uncovered: list[EdgeId] = []
    for e in range(g.m):
        total = 0
        present = False
        for i in COORDINATES:
            arc_dir = co.coordinate(i).arc_dir
            if e not in arc_dir:
                continue
            present = True
            along = arc_dir[e] != s.reversed[i - 1]
            total += s.values[i - 1] if along else -s.values[i - 1]
        if not present:
            uncovered.append(e)
            continue
        if total == 0:
            raise InvariantViolation(f"Edge {e} sums to 0 under {s.describe()}")
        direction.append(total > 0)
        values.append(abs(total))

    if uncovered:
        raise UncoverableError("Edges outside every coordinate subgraph", tuple(uncovered))
    return IntFlow(orientation=Orientation(direction=tuple(direction)), value=tuple(values))


def is_conservative(g: Graph, flow: IntFlow) -> bool:
    balance = [0] * g.vertex_count
    for (tail, head), x in zip(flow.orientation.arcs(g), flow.value):
        balance[tail] -= x
        balance[head] += x
    return not any(balance)


def edge_bits(co: CircuitOrientation, e: EdgeId) -> Bits:
    b = tuple(1 if e in co.coordinate(i).arc_dir else 0 for i in COORDINATES)
    return (b[0], b[1], b[2])


def edge_agreement(co: CircuitOrientation, e: EdgeId) -> dict[tuple[int, int], bool]:
    """For every pair of coordinates holding e, whether o_i and o_j orient e alike"""
    present = [i for i in COORDINATES if e in co.coordinate(i).arc_dir]
    return {
        (i, j): co.coordinate(i).arc_dir[e] == co.coordinate(j).arc_dir[e]
        for i, j in itertools.combinations(present, 2)
    }


# Table of final direction source and value under S1 = (1, 2, 4).
# Key: (bits, coordinates whose orientation differs from the others, or ()).
# Rows are numbered 1..13 in reading order.
_TABLE1: dict[tuple[Bits, tuple[int, ...]], tuple[int, int, int]] = {
    ((1, 0, 0), ()): (1, 1, 1),
    ((0, 1, 0), ()): (2, 2, 2),
    ((0, 0, 1), ()): (3, 3, 4),
    ((1, 1, 0), ()): (4, 2, 3),
    ((1, 1, 0), (1, 2)): (5, 2, 1),
    ((1, 0, 1), ()): (6, 3, 5),
    ((1, 0, 1), (1, 3)): (7, 3, 3),
    ((0, 1, 1), ()): (8, 3, 6),
    ((0, 1, 1), (2, 3)): (9, 3, 2),
    ((1, 1, 1), ()): (10, 3, 7),
    ((1, 1, 1), (1,)): (11, 3, 5),
    ((1, 1, 1), (2,)): (12, 3, 3),
    ((1, 1, 1), (3,)): (13, 3, 1),
}

# Index of the first standard schedule giving the row value 1
TABLE2_WITNESS: dict[int, int] = {
    1: 0,
    2: 3,
    3: 4,
    4: 3,
    5: 0,
    6: 2,
    7: 1,
    8: 2,
    9: 1,
    10: 4,
    11: 1,
    12: 2,
    13: 0,
}


def _table1_key(bits: Bits, agreement: Agreement) -> tuple[Bits, tuple[int, ...]]:
    if bits == (0, 0, 0) or any(b not in (0, 1) for b in bits):
        raise ValueError(f"Bits {bits} are not a nonzero Z2^3 value")
    present = [i for i in COORDINATES if bits[i - 1]]
    pairs = set(itertools.combinations(present, 2))
    given = {tuple(sorted(p)) for p in agreement}
    if given != pairs:
        raise ValueError(
            f"Agreement pairs {sorted(given)} do not match the coordinates {present}"
        )
    same = {tuple(sorted(p)): v for p, v in agreement.items()}

    if len(present) == 1:
        return bits, ()
    if len(present) == 2:
        return bits, () if same[pairs.pop()] else tuple(present)

    if [same[p] for p in sorted(pairs)].count(False) not in (0, 2):
        raise ValueError(f"Agreement {same} is not realizable by two directions")
    for i in COORDINATES:
        others = [p for p in pairs if i in p]
        if all(not same[p] for p in others):
            return bits, (i,)
    return bits, ()


def table1_row(bits: Bits, agreement: Agreement) -> int:
    return _TABLE1[_table1_key(bits, agreement)][0]


def classify_edge_table1(bits: Bits, agreement: Agreement) -> tuple[int, int]:
    """
    (coordinate whose orientation the arc follows, value) under S1, read
    from the table rather than computed.
    """
    _, source, value = _TABLE1[_table1_key(bits, agreement)]
    return source, value
