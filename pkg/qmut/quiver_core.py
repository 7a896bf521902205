"""Rank-3 quivers with real weights, stored as signed exchange triples.

A triple ``(b12, b23, b13)`` holds the upper entries of the skew-symmetric
exchange matrix ``B``; ``B[j][i] = -B[i][j]``. A positive ``b12`` is an arrow
1 -> 2, a negative one an arrow 2 -> 1, and likewise for the other pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from qmut.errors import NumericRangeError, QuiverArgumentError

VERTICES = (1, 2, 3)
EDGES = ((1, 2), (2, 3), (1, 3))
EDGE_NAMES = {(1, 2): "b12", (2, 3): "b23", (1, 3): "b13"}

MutationSequence = Tuple[int, ...]


class Orientation(str, Enum):
    CYCLIC = "Cyclic"
    ACYCLIC = "Acyclic"


@dataclass(frozen=True, slots=True)
class ExchangeTriple:
    b12: float
    b23: float
    b13: float

    def __post_init__(self):
        for name in ("b12", "b23", "b13"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise QuiverArgumentError(f"Weight {name} must be finite, got {value}")

    def entry(self, i: int, j: int) -> float:
        """Entry B[i][j] of the full skew-symmetric matrix"""
        if i == j:
            return 0.0
        if i < j:
            return self.weight(i, j)
        return -self.weight(j, i)

    def weight(self, i: int, j: int) -> float:
        """Signed weight stored for the edge {i, j}, i < j"""
        if (i, j) == (1, 2):
            return self.b12
        if (i, j) == (2, 3):
            return self.b23
        if (i, j) == (1, 3):
            return self.b13
        raise QuiverArgumentError(f"No edge ({i}, {j}) in a rank 3 quiver")

    def magnitudes(self) -> Tuple[float, float, float]:
        return abs(self.b12), abs(self.b23), abs(self.b13)

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.b12, self.b23, self.b13

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [
                [0.0, self.b12, self.b13],
                [-self.b12, 0.0, self.b23],
                [-self.b13, -self.b23, 0.0],
            ]
        )


@dataclass(frozen=True)
class CanonicalForm:
    p: float
    q: float
    r: float
    orientation: Orientation

    def weights(self) -> Tuple[float, float, float]:
        return self.p, self.q, self.r


def check_vertex(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k not in VERTICES:
        raise QuiverArgumentError(f"Mutation vertex must be 1, 2 or 3, got {k!r}")
    return int(k)


def as_sequence(vertices: Iterable[int]) -> MutationSequence:
    """Validate a mutation sequence; adjacent repeats are allowed"""
    return tuple(check_vertex(k) for k in vertices)


def parse_sequence(text: str) -> MutationSequence:
    """Parse a comma-separated vertex list such as '2,1,3'"""
    text = text.strip()
    if not text:
        return ()
    try:
        vertices = [int(part) for part in text.split(",")]
    except ValueError:
        raise QuiverArgumentError(f"Invalid mutation sequence '{text}'")
    return as_sequence(vertices)


def parse_triple(text: str) -> ExchangeTriple:
    """Parse the signed-triple syntax 'b12,b23,b13'"""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise QuiverArgumentError(f"Expected three comma-separated weights, got '{text}'")
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise QuiverArgumentError(f"Invalid weights '{text}'")
    return ExchangeTriple(*values)


def from_matrix(matrix) -> ExchangeTriple:
    """Read the upper entries of a 3x3 skew-symmetric matrix"""
    B = np.asarray(matrix, dtype=float)
    if B.shape != (3, 3):
        raise QuiverArgumentError(f"Exchange matrix must be 3x3, got shape {B.shape}")
    if not np.array_equal(B, -B.T):
        raise QuiverArgumentError("Exchange matrix must be skew-symmetric")
    return ExchangeTriple(float(B[0, 1]), float(B[1, 2]), float(B[0, 2]))


def opposite_vertex(edge: Tuple[int, int]) -> int:
    return 6 - edge[0] - edge[1]


def opposite_edge(k: int) -> Tuple[int, int]:
    i, j = (v for v in VERTICES if v != k)
    return i, j


def mutate(triple: ExchangeTriple, k: int) -> ExchangeTriple:
    """Mutation at vertex k.

    Entries touching k change sign; the entry between the other two vertices
    becomes b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2.
    """
    k = check_vertex(k)
    i, j = opposite_edge(k)
    b_ik = triple.entry(i, k)
    b_kj = triple.entry(k, j)
    changed = triple.entry(i, j) + (abs(b_ik) * b_kj + b_ik * abs(b_kj)) / 2
    if not math.isfinite(changed):
        name = EDGE_NAMES[(i, j)]
        raise NumericRangeError(f"Mutation at vertex {k} overflowed {name}", entry=name)

    values = {}
    for edge in EDGES:
        values[EDGE_NAMES[edge]] = changed if edge == (i, j) else -triple.weight(*edge)
    return ExchangeTriple(**values)


def mutate_sequence(triple: ExchangeTriple, sequence: Sequence[int]) -> List[ExchangeTriple]:
    """Trajectory [B, mu_i1(B), mu_i2 mu_i1(B), ...], first entry applied first"""
    sequence = as_sequence(sequence)
    trajectory = [triple]
    current = triple
    for step, k in enumerate(sequence, start=1):
        try:
            current = mutate(current, k)
        except NumericRangeError as e:
            raise e.at_step(step) from e
        trajectory.append(current)
    return trajectory


def is_cyclic(triple: ExchangeTriple) -> bool:
    """True iff the three arrows form a directed 3-cycle; zero weights never do"""
    b12, b23, b13 = triple.as_tuple()
    if b12 == 0.0 or b23 == 0.0 or b13 == 0.0:
        return False
    return (b12 > 0) == (b23 > 0) == (b13 < 0)


def canonicalize(triple: ExchangeTriple) -> CanonicalForm:
    p, q, r = sorted(triple.magnitudes(), reverse=True)
    orientation = Orientation.CYCLIC if is_cyclic(triple) else Orientation.ACYCLIC
    return CanonicalForm(p, q, r, orientation)


def markov_constant(triple: ExchangeTriple) -> float:
    """C(Q) = p^2 + q^2 + r^2 - pqr for cyclic quivers, + pqr otherwise"""
    form = canonicalize(triple)
    p, q, r = form.weights()
    squares = p * p + q * q + r * r
    if form.orientation is Orientation.CYCLIC:
        return squares - p * q * r
    return squares + p * q * r


def markov_scale(triple: ExchangeTriple) -> float:
    """p^2 + q^2 + r^2 + pqr, the size of the terms that make up C(Q)"""
    p, q, r = triple.magnitudes()
    return p * p + q * q + r * r + p * q * r


def markov_deviation(reference: float, triple: ExchangeTriple) -> float:
    """|C(triple) - reference| relative to the size of the terms of C"""
    scale = markov_scale(triple)
    if scale == 0.0:
        return abs(reference)
    return abs(markov_constant(triple) - reference) / scale


def norm(triple: ExchangeTriple) -> float:
    return max(triple.magnitudes())


def nonzero_edges(triple: ExchangeTriple) -> List[Tuple[int, int]]:
    return [edge for edge in EDGES if triple.weight(*edge) != 0.0]


def is_connected(triple: ExchangeTriple) -> bool:
    """At least two nonzero weights, i.e. the underlying graph is connected"""
    return len(nonzero_edges(triple)) >= 2


def has_path_through(triple: ExchangeTriple, k: int) -> bool:
    """True iff some arrow enters k and some arrow leaves k"""
    others = [v for v in VERTICES if v != k]
    incoming = any(triple.entry(i, k) > 0 for i in others)
    outgoing = any(triple.entry(k, j) > 0 for j in others)
    return incoming and outgoing
