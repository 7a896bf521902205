import math

import numpy as np
from hypothesis import strategies as hst

from qmut.classifier import classify
from qmut.quiver_core import ExchangeTriple, norm

MARKOV = ExchangeTriple(2.0, 2.0, -2.0)

# quivers plotted with published mutation sequences; all four classes are bounded
REFERENCE_QUIVERS = [
    ExchangeTriple(-0.02, -0.01, 0.03),
    ExchangeTriple(-0.9, -0.22, 0.7106),
    ExchangeTriple(-0.84, -0.26, 0.11),
    ExchangeTriple(-0.6, -0.43, 0.567),
]

weights = hst.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
triples = hst.builds(ExchangeTriple, weights, weights, weights)
vertices = hst.sampled_from([1, 2, 3])


def random_triple(rng: np.random.Generator, scale: float = 3.0) -> ExchangeTriple:
    b12, b23, b13 = rng.uniform(-scale, scale, size=3)
    return ExchangeTriple(float(b12), float(b23), float(b13))


def random_bounded_connected(rng: np.random.Generator) -> ExchangeTriple:
    while True:
        triple = random_triple(rng, 2.0)
        if classify(triple).bounded:
            return triple


def random_unbounded(rng: np.random.Generator, margin: float = 0.05) -> ExchangeTriple:
    """Unbounded quivers at least `margin` away from the boundary of the criterion"""
    while True:
        triple = random_triple(rng, 4.0)
        verdict = classify(triple)
        weight_margin, markov_margin = verdict.boundary_margin
        if not verdict.bounded and (weight_margin >= margin or markov_margin >= margin):
            return triple


def random_walk(rng: np.random.Generator, length: int):
    sequence = [int(rng.integers(1, 4))]
    while len(sequence) < length:
        k = int(rng.integers(1, 4))
        if k != sequence[-1]:
            sequence.append(k)
    return sequence[:length]


def close_triples(a: ExchangeTriple, b: ExchangeTriple, rel_tol: float = 1e-12) -> bool:
    scale = max(1.0, norm(a) ** 2)
    return all(math.isclose(x, y, rel_tol=rel_tol, abs_tol=rel_tol * scale) for x, y in zip(a.as_tuple(), b.as_tuple()))


def random_light_unbounded(rng: np.random.Generator, c_max: float = math.inf) -> ExchangeTriple:
    """Cyclic quivers with every weight at most 2 and 4 < C(Q) < c_max, in a random orientation"""
    while True:
        p, q, r = rng.uniform(0.0, 2.0, size=3)
        c = p * p + q * q + r * r - p * q * r
        if 4.0 + 1e-6 < c < c_max:
            sign = 1.0 if rng.random() < 0.5 else -1.0
            return ExchangeTriple(float(sign * p), float(sign * q), float(-sign * r))
