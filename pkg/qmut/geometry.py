"""Geometric realizations of rank-3 mutation classes.

Points live on the upper sheet of the hyperboloid <x, x> = -1 for the form
x1 y1 + x2 y2 - x3 y3; lines (geodesics of H^2 or great circles of S^2) are
given by unit normals, <e, e> = +1. Mutation acts by a rotation by pi about
a point, or by a reflection across a line; both are linear maps preserving
the form.

Point model: w_ij = 2 cosh d(a_i, a_j) = -2 <a_i, a_j> >= 2.
Line model:  w_ij = 2 |<e_i, e_j>|, i.e. |2 cos(angle)| for intersecting
lines and 2 cosh(distance) for disjoint hyperbolic ones.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from qmut.config import CLAMP_TOLERANCE, UNIT_TOLERANCE
from qmut.errors import InvalidConfigurationError, QuiverArgumentError
from qmut.quiver_core import EDGES, ExchangeTriple, as_sequence, check_vertex, mutate, opposite_edge

logger = logging.getLogger(__name__)

Weights = Tuple[float, float, float]


class Form(str, Enum):
    SPHERICAL = "Spherical"
    HYPERBOLIC = "Hyperbolic"


SIGNATURE = {
    Form.SPHERICAL: np.array([1.0, 1.0, 1.0]),
    Form.HYPERBOLIC: np.array([1.0, 1.0, -1.0]),
}


@dataclass(frozen=True)
class HVector:
    x1: float
    x2: float
    x3: float
    form: Form = Form.HYPERBOLIC

    def __post_init__(self):
        object.__setattr__(self, "form", Form(self.form))
        if not all(math.isfinite(x) for x in (self.x1, self.x2, self.x3)):
            raise InvalidConfigurationError(f"Coordinates must be finite, got {self.coords()}")

    @classmethod
    def from_array(cls, coords, form: Form = Form.HYPERBOLIC) -> "HVector":
        x1, x2, x3 = (float(x) for x in coords)
        return cls(x1, x2, x3, Form(form))

    def coords(self) -> Tuple[float, float, float]:
        return self.x1, self.x2, self.x3

    def as_array(self) -> np.ndarray:
        return np.array(self.coords())

    def inner(self, other: "HVector") -> float:
        if other.form is not self.form:
            raise InvalidConfigurationError(f"Cannot pair a {self.form.value} vector with a {other.form.value} one")
        return float(np.dot(SIGNATURE[self.form] * self.as_array(), other.as_array()))

    def scale(self) -> float:
        """Euclidean size, used to make tolerances relative"""
        return max(1.0, float(np.dot(self.as_array(), self.as_array())))


def _combine(form: Form, *terms: Tuple[float, HVector]) -> HVector:
    coords = sum(coefficient * vector.as_array() for coefficient, vector in terms)
    return HVector.from_array(coords, form)


def _check_point(a: HVector, name: str = "point") -> None:
    if a.form is not Form.HYPERBOLIC:
        raise InvalidConfigurationError(f"{name} must be a hyperbolic vector, got {a.form.value}")
    defect = abs(a.inner(a) + 1.0)
    if defect > UNIT_TOLERANCE * a.scale():
        raise InvalidConfigurationError(f"{name} {a.coords()} is off the hyperboloid (<a, a> + 1 = {defect:g})")
    if not a.x3 > 0:
        raise InvalidConfigurationError(f"{name} {a.coords()} is on the lower sheet")


def _check_unit_normal(e: HVector, name: str = "normal") -> None:
    defect = abs(e.inner(e) - 1.0)
    if defect > UNIT_TOLERANCE * e.scale():
        raise InvalidConfigurationError(f"{name} {e.coords()} is not a unit normal (<e, e> - 1 = {defect:g})")


@dataclass(frozen=True)
class PointConfig:
    a1: HVector
    a2: HVector
    a3: HVector

    def __post_init__(self):
        for k, a in enumerate(self.points(), start=1):
            _check_point(a, f"a{k}")

    def points(self) -> Tuple[HVector, HVector, HVector]:
        return self.a1, self.a2, self.a3

    def point(self, k: int) -> HVector:
        return self.points()[check_vertex(k) - 1]

    def with_point(self, k: int, a: HVector) -> "PointConfig":
        return replace(self, **{f"a{check_vertex(k)}": a})


@dataclass(frozen=True)
class LineConfig:
    e1: HVector
    e2: HVector
    e3: HVector

    def __post_init__(self):
        forms = {e.form for e in self.normals()}
        if len(forms) != 1:
            raise InvalidConfigurationError("All three normals must use the same form")
        for k, e in enumerate(self.normals(), start=1):
            _check_unit_normal(e, f"e{k}")

    @property
    def form(self) -> Form:
        return self.e1.form

    def normals(self) -> Tuple[HVector, HVector, HVector]:
        return self.e1, self.e2, self.e3

    def normal(self, k: int) -> HVector:
        return self.normals()[check_vertex(k) - 1]

    def with_normal(self, k: int, e: HVector) -> "LineConfig":
        return replace(self, **{f"e{check_vertex(k)}": e})


def _cosh_distance(a: HVector, b: HVector) -> float:
    value = -a.inner(b)
    if value < 1.0 - UNIT_TOLERANCE * max(1.0, a.x3 * b.x3):
        raise InvalidConfigurationError(f"-<a, b> = {value} is below 1; {a.coords()}, {b.coords()} are not points")
    return max(value, 1.0)


def point_distance(a: HVector, b: HVector) -> float:
    """Hyperbolic distance arccosh(-<a, b>)"""
    return math.acosh(_cosh_distance(a, b))


def points_to_weights(cfg: PointConfig) -> Weights:
    """(w12, w23, w13) with w_ij = 2 cosh d(a_i, a_j)"""
    w12, w23, w13 = (2.0 * _cosh_distance(cfg.point(i), cfg.point(j)) for i, j in EDGES)
    return w12, w23, w13


def points_to_quiver(cfg: PointConfig) -> ExchangeTriple:
    """Cyclic quiver 1 -> 2 -> 3 -> 1 realized by the three points"""
    w12, w23, w13 = points_to_weights(cfg)
    return ExchangeTriple(w12, w23, -w13)


def rotate_point_pi(x: HVector, center: HVector) -> HVector:
    """Rotation by pi about `center`: x -> -x - 2 <x, c> c"""
    return _combine(Form.HYPERBOLIC, (-1.0, x), (-2.0 * x.inner(center), center))


def geom_mutate_points(cfg: PointConfig, k: int) -> PointConfig:
    """Rotate the lower-indexed of the two other points by pi about a_k"""
    i, _ = opposite_edge(check_vertex(k))
    return cfg.with_point(i, rotate_point_pi(cfg.point(i), cfg.point(k)))


def realize_points_from_distances(d12: float, d23: float, d13: float) -> PointConfig:
    """Place a1 at the origin, a2 on the x1 axis and a3 in the half plane x2 >= 0"""
    distances = (d12, d23, d13)
    if not all(math.isfinite(d) and d >= 0 for d in distances):
        raise InvalidConfigurationError(f"Distances must be finite and non-negative, got {distances}")

    a1 = HVector(0.0, 0.0, 1.0)
    a2 = HVector(math.sinh(d12), 0.0, math.cosh(d12))
    z = math.cosh(d13)
    if d12 == 0.0:
        if not math.isclose(math.cosh(d13), math.cosh(d23), rel_tol=UNIT_TOLERANCE):
            raise InvalidConfigurationError(
                f"Gram matrix signature test failed: a1 = a2 forces d13 = d23, got {d13} and {d23}"
            )
        x = math.sinh(d13)
    else:
        x = (math.cosh(d12) * z - math.cosh(d23)) / math.sinh(d12)
    y_squared = math.sinh(d13) ** 2 - x * x
    if y_squared < -UNIT_TOLERANCE * max(1.0, z * z):
        raise InvalidConfigurationError(
            f"Gram matrix of distances {distances} fails the signature (2, 1) test "
            f"(x2^2 = {y_squared:g}); the triangle inequality is violated"
        )
    a3 = HVector(x, math.sqrt(max(y_squared, 0.0)), z)
    return PointConfig(a1, a2, a3)


def center_points(cfg: PointConfig, anchor: int = 1) -> PointConfig:
    """Apply the Lorentz boost that moves a_anchor to (0, 0, 1)"""
    c = cfg.point(anchor).as_array()
    v, c3 = c[:2], c[2]
    boost = np.empty((3, 3))
    boost[:2, :2] = np.eye(2) + np.outer(v, v) / (1.0 + c3)
    boost[:2, 2] = -v
    boost[2, :2] = -v
    boost[2, 2] = c3
    moved = [HVector.from_array(boost @ a.as_array()) for a in cfg.points()]
    moved[anchor - 1] = HVector(0.0, 0.0, 1.0)
    return PointConfig(*moved)


def line_weight(e: HVector, f: HVector) -> float:
    """2 |<e, f>| for unit normals e and f"""
    _check_unit_normal(e, "e")
    _check_unit_normal(f, "f")
    return 2.0 * abs(e.inner(f))


def lines_to_weights(cfg: LineConfig) -> Weights:
    w12, w23, w13 = (line_weight(cfg.normal(i), cfg.normal(j)) for i, j in EDGES)
    return w12, w23, w13


def lines_markov_constant(cfg: LineConfig) -> float:
    """C(Q) of the realized class from the signed products x_ij = 2 <e_i, e_j>.

    Flipping a normal changes two signs, so the product term and C do not
    depend on the choice of normals.
    """
    x12, x23, x13 = (2.0 * cfg.normal(i).inner(cfg.normal(j)) for i, j in EDGES)
    return x12 * x12 + x23 * x23 + x13 * x13 - x12 * x23 * x13


def reflect_line(e: HVector, mirror: HVector) -> HVector:
    """Reflection across the line with normal `mirror`: e -> e - 2 <e, m> m"""
    return _combine(e.form, (1.0, e), (-2.0 * e.inner(mirror), mirror))


def geom_mutate_lines(cfg: LineConfig, k: int) -> LineConfig:
    """Reflect the lower-indexed of the two other lines across e_k"""
    i, _ = opposite_edge(check_vertex(k))
    return cfg.with_normal(i, reflect_line(cfg.normal(i), cfg.normal(k)))


def min_realization_angle(c: float) -> float:
    """Angle theta with sin(theta) = sqrt(4 - C) / 2, so that 2 cos(theta) = sqrt(C)"""
    if not -CLAMP_TOLERANCE <= c <= 4.0 + CLAMP_TOLERANCE:
        raise QuiverArgumentError(f"Markov constant must lie in [0, 4], got {c}")
    c = min(max(c, 0.0), 4.0)
    return math.atan2(math.sqrt(4.0 - c), math.sqrt(c))


def random_point_config(rng: np.random.Generator, radius: float = 1.5) -> PointConfig:
    """Three points drawn within hyperbolic distance `radius` of the origin"""
    points = []
    for _ in range(3):
        r, phi = rng.uniform(0.0, radius), rng.uniform(0.0, 2 * math.pi)
        points.append(HVector(math.sinh(r) * math.cos(phi), math.sinh(r) * math.sin(phi), math.cosh(r)))
    return PointConfig(*points)


def random_line_config(rng: np.random.Generator, form: Form = Form.SPHERICAL, spread: float = 1.0) -> LineConfig:
    """Three random unit normals; hyperbolic ones are spacelike with |x3| <= sinh(spread)"""
    form = Form(form)
    normals = []
    for _ in range(3):
        if form is Form.SPHERICAL:
            v = rng.normal(size=3)
            normals.append(HVector.from_array(v / np.linalg.norm(v), form))
        else:
            t, phi = rng.uniform(-spread, spread), rng.uniform(0.0, 2 * math.pi)
            normals.append(HVector(math.cosh(t) * math.cos(phi), math.cosh(t) * math.sin(phi), math.sinh(t), form))
    return LineConfig(*normals)


@dataclass(frozen=True)
class GeometryStep:
    """Realized weights after `step` geometric mutations, and their disagreement with algebra"""

    step: int
    vertex: int
    weights: Weights
    deviation: float

    def to_dict(self) -> Dict[str, Any]:
        w12, w23, w13 = self.weights
        return {"step": self.step, "vertex": self.vertex, "w12": w12, "w23": w23, "w13": w13, "deviation": self.deviation}


def _relative_gap(actual: float, expected: float) -> float:
    return abs(actual - expected) / max(1.0, abs(expected))


def trace_points(
    cfg: PointConfig, sequence: Sequence[int], recenter: bool = True, max_weight: Optional[float] = None
) -> List[GeometryStep]:
    """Mutate the point model along `sequence` next to the algebraic mutation of its quiver.

    The deviation of a step is the largest relative gap between realized and
    algebraic weight magnitudes. Stops early once a weight passes `max_weight`.
    """
    sequence = as_sequence(sequence)
    quiver = points_to_quiver(cfg)
    steps = [GeometryStep(0, 0, points_to_weights(cfg), 0.0)]
    for step, k in enumerate(sequence, start=1):
        if recenter:
            # a rotation about the origin is exact in floating point
            cfg = center_points(cfg, k)
        cfg = geom_mutate_points(cfg, k)
        quiver = mutate(quiver, k)
        weights = points_to_weights(cfg)
        deviation = max(_relative_gap(w, m) for w, m in zip(weights, quiver.magnitudes()))
        steps.append(GeometryStep(step, k, weights, deviation))
        if max_weight is not None and max(weights) > max_weight:
            break
    return steps


def _exchange_gap(before: Weights, after: Weights, k: int) -> float:
    """Relative distance of a line-model update from the two exchange outcomes"""
    names = {edge: index for index, edge in enumerate(EDGES)}
    i, j = opposite_edge(k)
    changed = names[(i, j)]
    w_ik = before[names[tuple(sorted((i, k)))]]
    w_kj = before[names[tuple(sorted((k, j)))]]
    product, w_ij = w_ik * w_kj, before[changed]
    grown, shrunk = product + w_ij, abs(product - w_ij)
    to_grown, to_shrunk = _relative_gap(after[changed], grown), _relative_gap(after[changed], shrunk)
    branch = "w_ik w_kj + w_ij" if to_grown <= to_shrunk else "|w_ik w_kj - w_ij|"
    logger.debug("Line reflection at %d took the %s branch", k, branch)
    gap = min(to_grown, to_shrunk)
    for index in range(3):
        if index != changed:
            gap = max(gap, _relative_gap(after[index], before[index]))
    return gap


def trace_lines(cfg: LineConfig, sequence: Sequence[int], max_weight: Optional[float] = None) -> List[GeometryStep]:
    """Reflect along `sequence`; the deviation checks each update against w_ik w_kj +/- w_ij"""
    sequence = as_sequence(sequence)
    weights = lines_to_weights(cfg)
    steps = [GeometryStep(0, 0, weights, 0.0)]
    for step, k in enumerate(sequence, start=1):
        cfg = geom_mutate_lines(cfg, k)
        updated = lines_to_weights(cfg)
        steps.append(GeometryStep(step, k, updated, _exchange_gap(weights, updated, k)))
        weights = updated
        if max_weight is not None and max(weights) > max_weight:
            break
    return steps


def config_from_dict(data: Dict[str, Any], kind: str) -> Union[PointConfig, LineConfig]:
    """Parse {"form": ..., "vectors": [[x1, x2, x3], ...]} as a point or line configuration"""
    if not isinstance(data, dict):
        raise InvalidConfigurationError(f"A geometry config must be a JSON object, got {type(data).__name__}")
    try:
        form = Form(data.get("form", Form.HYPERBOLIC.value))
        vectors = [HVector.from_array(v, form) for v in data["vectors"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidConfigurationError(f"Invalid geometry config: {e}")
    if len(vectors) != 3:
        raise InvalidConfigurationError(f"A configuration needs exactly 3 vectors, got {len(vectors)}")
    if kind == "points":
        return PointConfig(*vectors)
    if kind == "lines":
        return LineConfig(*vectors)
    raise QuiverArgumentError(f"Unknown configuration kind '{kind}'")


def config_to_dict(cfg: Union[PointConfig, LineConfig]) -> Dict[str, Any]:
    vectors = cfg.points() if isinstance(cfg, PointConfig) else cfg.normals()
    return {"form": vectors[0].form.value, "vectors": [list(v.coords()) for v in vectors]}
