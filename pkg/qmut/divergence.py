"""Mutation sequences that make the norm of an unbounded class blow up.

Two growth mechanisms are implemented, both on cyclic representatives:

* alternating mutations at the two ends of a weight p0 > 2; the other two
  weights q_i, r_i satisfy q_i > r_i > q_{i-1} > 0 and q_i >= P**i * q0 with
  P = p0**2 - p0 - 1 > 1;
* mutating at the vertex opposite the smallest weight (mu-star) when every
  weight is at most 2 and C(Q) > 4; then p_i q_i - r_i exceeds
  (C/4)**((i + 2) // 2) * q0 at every step.

Each run is packaged as a DivergenceCertificate whose sequence replays on the
caller's vertex labels.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from qmut.classifier import MARKOV_CONSTANT, MARKOV_WEIGHT, classify, is_markov_quiver
from qmut.config import DEFAULT_MAX_STEPS, MAX_TARGET, OVERFLOW_LIMIT, PROBE_STEP_CAP
from qmut.errors import (
    CertificateError,
    ContractViolation,
    NumericRangeError,
    QuiverArgumentError,
    StepBudgetExceeded,
)
from qmut.quiver_core import (
    EDGE_NAMES,
    EDGES,
    VERTICES,
    ExchangeTriple,
    MutationSequence,
    as_sequence,
    canonicalize,
    has_path_through,
    is_connected,
    is_cyclic,
    mutate,
    mutate_sequence,
    nonzero_edges,
    norm,
    opposite_vertex,
)

logger = logging.getLogger(__name__)

GROWTH_SLACK = 1e-12
REPLAY_TOLERANCE = 1e-9
PROBE_MIN_INCREMENT = 1e-12


class Strategy(str, Enum):
    ACYCLIC_PREFIX_THEN_ALTERNATING = "AcyclicPrefixThenAlternating"
    ALTERNATING = "Alternating"
    MU_STAR = "MuStar"


@dataclass(frozen=True)
class StepRecord:
    """State after `step` mutations of a certificate's sequence"""

    step: int
    vertex: int
    triple: ExchangeTriple
    bound: Optional[float] = None
    monitored: Optional[float] = None

    @property
    def norm(self) -> float:
        return norm(self.triple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i": self.step,
            "vertex": self.vertex,
            "b12": self.triple.b12,
            "b23": self.triple.b23,
            "b13": self.triple.b13,
            "norm": self.norm,
            "bound": self.bound,
            "monitored": self.monitored,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StepRecord":
        return cls(
            step=int(data["i"]),
            vertex=int(data["vertex"]),
            triple=ExchangeTriple(float(data["b12"]), float(data["b23"]), float(data["b13"])),
            bound=None if data.get("bound") is None else float(data["bound"]),
            monitored=None if data.get("monitored") is None else float(data["monitored"]),
        )


@dataclass(frozen=True)
class DivergenceCertificate:
    strategy: Strategy
    initial: ExchangeTriple
    sequence: MutationSequence
    steps: Tuple[StepRecord, ...]
    achieved_norm: float
    target: float
    guaranteed: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "strategy": self.strategy.value,
            "initial": list(self.initial.as_tuple()),
            "sequence": list(self.sequence),
            "target": self.target,
            "achieved_norm": self.achieved_norm,
            "guaranteed": self.guaranteed,
            "steps": [step.to_dict() for step in self.steps],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DivergenceCertificate":
        try:
            return cls(
                strategy=Strategy(data["strategy"]),
                initial=ExchangeTriple(*(float(x) for x in data["initial"])),
                sequence=as_sequence(data["sequence"]),
                steps=tuple(StepRecord.from_dict(step) for step in data["steps"]),
                achieved_norm=float(data["achieved_norm"]),
                target=float(data["target"]),
                guaranteed=bool(data.get("guaranteed", True)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise QuiverArgumentError(f"Invalid certificate record: {e}")

    def replay(self, rel_tol: float = REPLAY_TOLERANCE) -> List[ExchangeTriple]:
        """Re-run the sequence from `initial` and check every recorded state"""
        trajectory = mutate_sequence(self.initial, self.sequence)
        for record in self.steps:
            replayed = trajectory[record.step]
            for name in ("b12", "b23", "b13"):
                expected, actual = getattr(record.triple, name), getattr(replayed, name)
                if not math.isclose(expected, actual, rel_tol=rel_tol, abs_tol=rel_tol):
                    raise CertificateError(
                        f"Replay mismatch at step {record.step} on {name}: {actual} != {expected}"
                    )
        final_norm = norm(trajectory[-1])
        if not math.isclose(final_norm, self.achieved_norm, rel_tol=rel_tol):
            raise CertificateError(f"Replay reached {final_norm}, certificate says {self.achieved_norm}")
        return trajectory


def _check_target(target: float) -> None:
    if not math.isfinite(target):
        raise QuiverArgumentError(f"Target must be finite, got {target}")
    if target > MAX_TARGET:
        raise QuiverArgumentError(f"Target {target:g} is above the cap {MAX_TARGET:g}")


def _guard_overflow(triple: ExchangeTriple, step: int) -> None:
    for edge in EDGES:
        if abs(triple.weight(*edge)) > OVERFLOW_LIMIT:
            name = EDGE_NAMES[edge]
            raise NumericRangeError(f"Weight {name} exceeded {OVERFLOW_LIMIT:g}", entry=name, step=step)


def _power(base: float, exponent: int) -> float:
    try:
        return base**exponent
    except OverflowError:
        return math.inf


def _edge_roles(triple: ExchangeTriple) -> Tuple[Tuple[int, int], ...]:
    """Edges ordered by weight magnitude, largest first; ties keep b12, b23, b13 order"""
    return tuple(sorted(EDGES, key=lambda edge: -abs(triple.weight(*edge))))


def _shared_vertex(first: Tuple[int, int], second: Tuple[int, int]) -> int:
    (vertex,) = set(first) & set(second)
    return vertex


def _weight(triple: ExchangeTriple, edge: Tuple[int, int]) -> float:
    return abs(triple.weight(*edge))


def _middle_vertex(triple: ExchangeTriple) -> Optional[int]:
    for k in VERTICES:
        if has_path_through(triple, k):
            return k
    return None


def acyclic_to_cyclic(triple: ExchangeTriple) -> Tuple[MutationSequence, ExchangeTriple]:
    """Reach a cyclic quiver in at most two mutations without lowering the norm.

    Mutating at the middle vertex of a path i -> k -> j puts pq (+ r) on the
    edge {i, j} and closes a 3-cycle. When the two arrows of a two-edge quiver
    share a source or sink, one leaf is turned around first.
    """
    if not is_connected(triple):
        raise ContractViolation(f"Quiver {triple.as_tuple()} is disconnected; it has no cyclic mutation")
    if is_cyclic(triple):
        return (), triple

    sequence = []
    current = triple
    middle = _middle_vertex(current)
    if middle is None:
        first, second = nonzero_edges(current)
        shared = _shared_vertex(first, second)
        leaf = min(v for v in VERTICES if v != shared)
        current = mutate(current, leaf)
        sequence.append(leaf)
        middle = _middle_vertex(current)

    current = mutate(current, middle)
    sequence.append(middle)
    if not is_cyclic(current) or norm(current) < norm(triple):
        raise CertificateError(f"Prefix {sequence} did not produce a cyclic quiver from {triple.as_tuple()}")
    return tuple(sequence), current


def _empty_certificate(strategy: Strategy, triple: ExchangeTriple, target: float) -> DivergenceCertificate:
    return DivergenceCertificate(
        strategy=strategy,
        initial=triple,
        sequence=(),
        steps=(),
        achieved_norm=norm(triple),
        target=target,
    )


def alternating_blowup(
    triple: ExchangeTriple, target: float, *, max_steps: int = DEFAULT_MAX_STEPS
) -> DivergenceCertificate:
    """Alternate mutations at the two ends of the largest weight p0 > 2.

    The first mutation is at the end shared with the middle weight q0, which
    replaces r0 by r1 = p0 q0 - r0; the next one, at the other end, replaces
    q0 by q1 = p0 r1 - q0, and so on.
    """
    _check_target(target)
    if not is_cyclic(triple):
        raise ContractViolation(f"Alternating blowup needs a cyclic quiver, got {triple.as_tuple()}")
    p_edge, q_edge, r_edge = _edge_roles(triple)
    p0, q0, r0 = _weight(triple, p_edge), _weight(triple, q_edge), _weight(triple, r_edge)
    if not p0 > MARKOV_WEIGHT:
        raise ContractViolation(f"Alternating blowup needs a weight above 2, largest is {p0}")
    if norm(triple) >= target:
        return _empty_certificate(Strategy.ALTERNATING, triple, target)

    second = _shared_vertex(p_edge, q_edge)
    first = p_edge[0] if p_edge[1] == second else p_edge[1]
    growth = p0 * p0 - p0 - 1

    steps = []
    current = triple
    previous_q, previous_r = q0, r0
    i = 0
    step = 0
    while norm(current) < target:
        if step >= max_steps:
            raise StepBudgetExceeded(
                f"Alternating blowup reached {norm(current):g} of {target:g} in {step} steps",
                steps=step,
                achieved_norm=norm(current),
            )
        step += 1
        if step % 2 == 1:
            i += 1
            vertex = second
            current = mutate(current, vertex)
            r_i = _weight(current, r_edge)
            bound = _power(growth, i - 1) * q0
            if not r_i > previous_q > 0:
                raise CertificateError(f"r_{i} = {r_i} does not exceed q_{i - 1} = {previous_q}")
            monitored = previous_r = r_i
        else:
            vertex = first
            current = mutate(current, vertex)
            q_i = _weight(current, q_edge)
            bound = _power(growth, i) * q0
            if not q_i > previous_r:
                raise CertificateError(f"q_{i} = {q_i} does not exceed r_{i} = {previous_r}")
            if q_i < bound * (1 - GROWTH_SLACK):
                raise CertificateError(f"q_{i} = {q_i} is below P^i q0 = {bound}")
            monitored = previous_q = q_i
        _guard_overflow(current, step)
        steps.append(StepRecord(step, vertex, current, bound, monitored))

    logger.info("Alternating blowup from %s reached %g in %d steps", triple.as_tuple(), norm(current), step)
    return DivergenceCertificate(
        strategy=Strategy.ALTERNATING,
        initial=triple,
        sequence=tuple(record.vertex for record in steps),
        steps=tuple(steps),
        achieved_norm=norm(current),
        target=target,
    )


def mu_star_step(triple: ExchangeTriple) -> Tuple[int, ExchangeTriple]:
    """Mutate at the vertex opposite the smallest weight; ties go to the smallest vertex"""
    if not is_cyclic(triple):
        raise ContractViolation(f"mu-star needs a cyclic quiver, got {triple.as_tuple()}")
    smallest = min(triple.magnitudes())
    vertex = min(opposite_vertex(edge) for edge in EDGES if _weight(triple, edge) == smallest)
    return vertex, mutate(triple, vertex)


def mu_star_blowup(
    triple: ExchangeTriple, target: float, *, max_steps: int = DEFAULT_MAX_STEPS
) -> DivergenceCertificate:
    """Iterate mu-star until the norm reaches `target`.

    Step i records p_i q_i - r_i (the weight it creates) against the bound
    (C/4)**((i + 2) // 2) * q0. The bound is a theorem when every initial
    weight is at most 2; otherwise it is recorded but not enforced.
    """
    _check_target(target)
    if not is_cyclic(triple):
        raise ContractViolation(f"mu-star blowup needs a cyclic quiver, got {triple.as_tuple()}")
    form = canonicalize(triple)
    c = form.p**2 + form.q**2 + form.r**2 - form.p * form.q * form.r
    if not c > MARKOV_CONSTANT:
        raise ContractViolation(f"mu-star blowup needs C(Q) > 4, got {c}")
    guaranteed = form.p <= MARKOV_WEIGHT
    if norm(triple) >= target:
        return _empty_certificate(Strategy.MU_STAR, triple, target)

    ratio = c / 4
    q0 = form.q
    steps = []
    current = triple
    previous = -math.inf
    previous_norm = norm(triple)
    i = 0
    while norm(current) < target:
        if i >= max_steps:
            raise StepBudgetExceeded(
                f"mu-star blowup reached {norm(current):g} of {target:g} in {i} steps",
                steps=i,
                achieved_norm=norm(current),
            )
        p, q, r = canonicalize(current).weights()
        monitored = p * q - r
        bound = _power(ratio, (i + 2) // 2) * q0
        if not monitored > previous:
            logger.debug("p_%d q_%d - r_%d = %r fell from %r", i, i, i, monitored, previous)

        vertex, current = mu_star_step(current)
        i += 1
        _guard_overflow(current, i)
        problems = []
        if not monitored > bound:
            problems.append(f"p_{i - 1} q_{i - 1} - r_{i - 1} = {monitored} does not exceed {bound}")
        if norm(current) < previous_norm * (1 - GROWTH_SLACK):
            problems.append(f"norm {norm(current)} at step {i} fell below {previous_norm}")
        if problems and guaranteed:
            raise CertificateError("; ".join(problems))
        for problem in problems:
            logger.warning("Non-guaranteed mu-star bound failed from %s: %s", triple.as_tuple(), problem)
        steps.append(StepRecord(i, vertex, current, bound, monitored))
        previous, previous_norm = monitored, norm(current)

    logger.info("mu-star blowup from %s reached %g in %d steps", triple.as_tuple(), norm(current), i)
    return DivergenceCertificate(
        strategy=Strategy.MU_STAR,
        initial=triple,
        sequence=tuple(record.vertex for record in steps),
        steps=tuple(steps),
        achieved_norm=norm(current),
        target=target,
        guaranteed=guaranteed,
    )


def divergence_witness(
    triple: ExchangeTriple, target: float, *, max_steps: int = DEFAULT_MAX_STEPS
) -> DivergenceCertificate:
    """Certificate that the class of an unbounded quiver reaches norm `target`"""
    _check_target(target)
    verdict = classify(triple)
    if verdict.bounded:
        raise ContractViolation(
            f"Quiver {triple.as_tuple()} has a bounded class ({verdict.reason.value}); no witness exists"
        )

    prefix, cyclic = acyclic_to_cyclic(triple)
    if canonicalize(cyclic).p > MARKOV_WEIGHT:
        strategy = Strategy.ACYCLIC_PREFIX_THEN_ALTERNATING if prefix else Strategy.ALTERNATING
        blowup = alternating_blowup
    else:
        strategy = Strategy.MU_STAR
        blowup = mu_star_blowup
    if norm(triple) >= target:
        return _empty_certificate(strategy, triple, target)

    tail = blowup(cyclic, target, max_steps=max(max_steps - len(prefix), 0))
    prefix_steps = [
        StepRecord(step, vertex, state)
        for step, (vertex, state) in enumerate(zip(prefix, mutate_sequence(triple, prefix)[1:]), start=1)
    ]
    tail_steps = [
        StepRecord(record.step + len(prefix), record.vertex, record.triple, record.bound, record.monitored)
        for record in tail.steps
    ]
    return DivergenceCertificate(
        strategy=strategy,
        initial=triple,
        sequence=tuple(prefix) + tail.sequence,
        steps=tuple(prefix_steps + tail_steps),
        achieved_norm=tail.achieved_norm,
        target=target,
        guaranteed=tail.guaranteed,
    )


@dataclass
class _ProbeState:
    current: ExchangeTriple
    sequence: List[int] = field(default_factory=list)

    def apply(self, vertex: int) -> None:
        self.current = mutate(self.current, vertex)
        self.sequence.append(vertex)


def _drive_to_acyclic(state: _ProbeState, edge: Tuple[int, int], cap: int) -> bool:
    """Alternate mutations at the ends of `edge` until the quiver is acyclic"""
    if not is_cyclic(state.current):
        return True
    u, v = edge
    order = (v, u) if not is_cyclic(mutate(state.current, v)) and is_cyclic(mutate(state.current, u)) else (u, v)
    for step in range(cap):
        state.apply(order[step % 2])
        if not is_cyclic(state.current):
            return True
    return False


def _grow_edge(state: _ProbeState, edge: Tuple[int, int]) -> bool:
    """Mutate at the vertex opposite `edge` so that its weight p becomes p + qr"""
    w = opposite_vertex(edge)
    if not has_path_through(state.current, w):
        turnable = [x for x in edge if not has_path_through(state.current, x)]
        if not turnable:
            return False
        state.apply(turnable[0])
        if not has_path_through(state.current, w):
            return False
    state.apply(w)
    return True


def _rest_squares(triple: ExchangeTriple, edge: Tuple[int, int]) -> float:
    return sum(_weight(triple, other) ** 2 for other in EDGES if other != edge)


def sharpness_probe(
    triple: ExchangeTriple, iterations: int = 50, *, step_cap: int = PROBE_STEP_CAP
) -> List[Tuple[ExchangeTriple, float]]:
    """Push the largest weight of a bounded class up towards sqrt(C(Q)).

    Each round reaches an acyclic representative by alternating at the ends
    of the largest weight p, then mutates at the third vertex so that p
    becomes p + qr. Returns the starting quiver and the quiver after each
    round, with their norms. Heuristic: only monotonicity is enforced.
    """
    if iterations < 0:
        raise QuiverArgumentError(f"iterations must be non-negative, got {iterations}")
    if not is_connected(triple):
        raise ContractViolation(f"Sharpness probe needs a connected quiver, got {triple.as_tuple()}")
    verdict = classify(triple)
    if not verdict.bounded:
        raise ContractViolation(f"Sharpness probe needs a bounded class, got {verdict.reason.value}")
    if not verdict.markov_c > 0:
        raise ContractViolation(f"Sharpness probe needs C(Q) > 0, got {verdict.markov_c}")

    rounds = [(triple, norm(triple))]
    if is_markov_quiver(triple):
        logger.info("Sharpness probe: the Markov quiver keeps every weight at 2")
        return rounds

    state = _ProbeState(triple)
    previous: Optional[Tuple[Tuple[int, int], float]] = None
    for round_index in range(1, iterations + 1):
        edge = _edge_roles(state.current)[0]
        if not _drive_to_acyclic(state, edge, step_cap):
            logger.warning(
                "Sharpness probe round %d: no acyclic quiver within %d mutations of %s",
                round_index,
                step_cap,
                state.current.as_tuple(),
            )
            break

        if previous is not None and previous[0] == edge:
            rest, earlier = _rest_squares(state.current, edge), previous[1]
            if rest > earlier + GROWTH_SLACK * max(1.0, earlier):
                raise CertificateError(
                    f"Round {round_index}: remaining weights grew ({rest} > {earlier}) at edge {edge}"
                )

        edge = _edge_roles(state.current)[0]
        before = _weight(state.current, edge)
        previous = (edge, _rest_squares(state.current, edge))
        if not _grow_edge(state, edge):
            logger.info("Sharpness probe round %d: edge %s cannot grow (zero weight)", round_index, edge)
            break

        after = _weight(state.current, edge)
        reached = norm(state.current)
        if reached < rounds[-1][1] * (1 - GROWTH_SLACK):
            raise CertificateError(f"Round {round_index}: largest weight fell from {rounds[-1][1]} to {reached}")
        rounds.append((state.current, reached))
        if after - before < PROBE_MIN_INCREMENT:
            break

    logger.info(
        "Sharpness probe from %s: %d rounds, %d mutations, largest weight %g",
        triple.as_tuple(),
        len(rounds) - 1,
        len(state.sequence),
        rounds[-1][1],
    )
    return rounds
