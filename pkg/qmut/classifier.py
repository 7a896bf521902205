"""Boundedness of a rank-3 mutation class, decided from one representative.

The class [Q] is bounded exactly when the largest weight p of Q is at most 2
and the Markov constant C(Q) is at most 4. Bounded connected classes never
leave the ball of radius sqrt(C(Q)).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from qmut.config import NEAR_BOUNDARY
from qmut.errors import ContractViolation, QuiverArgumentError
from qmut.quiver_core import (
    ExchangeTriple,
    Orientation,
    canonicalize,
    is_connected,
    markov_constant,
    norm,
)

logger = logging.getLogger(__name__)

MARKOV_WEIGHT = 2.0
MARKOV_CONSTANT = 4.0


class Reason(str, Enum):
    BOUNDED = "Bounded"
    MAX_WEIGHT_EXCEEDS_TWO = "MaxWeightExceedsTwo"
    MARKOV_CONSTANT_EXCEEDS_FOUR = "MarkovConstantExceedsFour"
    BOTH_EXCEEDED = "BothExceeded"
    DISCONNECTED = "DisconnectedTriviallyBounded"


BOUNDED_REASONS = (Reason.BOUNDED, Reason.DISCONNECTED)


@dataclass(frozen=True)
class Classification:
    bounded: bool
    markov_c: float
    max_weight: float
    norm_bound: Optional[float]
    reason: Reason
    boundary_margin: Tuple[float, float]

    @property
    def near_boundary(self) -> bool:
        weight_margin, markov_margin = self.boundary_margin
        return abs(weight_margin) < NEAR_BOUNDARY or abs(markov_margin) < NEAR_BOUNDARY

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bounded": self.bounded,
            "markov_c": self.markov_c,
            "max_weight": self.max_weight,
            "norm_bound": self.norm_bound,
            "reason": self.reason.value,
            "boundary_margin": list(self.boundary_margin),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Classification":
        try:
            weight_margin, markov_margin = data["boundary_margin"]
            norm_bound = data["norm_bound"]
            return cls(
                bounded=bool(data["bounded"]),
                markov_c=float(data["markov_c"]),
                max_weight=float(data["max_weight"]),
                norm_bound=None if norm_bound is None else float(norm_bound),
                reason=Reason(data["reason"]),
                boundary_margin=(float(weight_margin), float(markov_margin)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise QuiverArgumentError(f"Invalid classification record: {e}")


def classify(triple: ExchangeTriple) -> Classification:
    """Apply the criterion p <= 2 and C(Q) <= 4 to the given representative"""
    form = canonicalize(triple)
    c = markov_constant(triple)
    margin = (form.p - MARKOV_WEIGHT, c - MARKOV_CONSTANT)

    if not is_connected(triple):
        return Classification(
            bounded=True,
            markov_c=c,
            max_weight=form.p,
            norm_bound=norm(triple),
            reason=Reason.DISCONNECTED,
            boundary_margin=margin,
        )

    weight_exceeded = form.p > MARKOV_WEIGHT
    markov_exceeded = c > MARKOV_CONSTANT
    if weight_exceeded and markov_exceeded:
        reason = Reason.BOTH_EXCEEDED
    elif weight_exceeded:
        reason = Reason.MAX_WEIGHT_EXCEEDS_TWO
    elif markov_exceeded:
        reason = Reason.MARKOV_CONSTANT_EXCEEDS_FOUR
    else:
        reason = Reason.BOUNDED

    bounded = reason is Reason.BOUNDED
    result = Classification(
        bounded=bounded,
        markov_c=c,
        max_weight=form.p,
        norm_bound=math.sqrt(max(c, 0.0)) if bounded else None,
        reason=reason,
        boundary_margin=margin,
    )
    if result.near_boundary:
        logger.info(
            "Quiver %s is within %g of the boundary (margins %r); verdict %s",
            triple.as_tuple(),
            NEAR_BOUNDARY,
            margin,
            reason.value,
        )
    return result


def is_markov_quiver(triple: ExchangeTriple) -> bool:
    """Exactly the cyclic quiver with all three weights equal to 2"""
    form = canonicalize(triple)
    return form.orientation is Orientation.CYCLIC and form.weights() == (2.0, 2.0, 2.0)


def norm_bound(triple: ExchangeTriple) -> float:
    """sqrt(C(Q)), an upper bound for every norm in a bounded connected class"""
    if not is_connected(triple):
        raise ContractViolation(f"norm_bound needs a connected quiver, got {triple.as_tuple()}")
    verdict = classify(triple)
    if not verdict.bounded:
        raise ContractViolation(
            f"norm_bound needs a bounded class, {triple.as_tuple()} is {verdict.reason.value}"
        )
    return verdict.norm_bound


def classification_flips(triple: ExchangeTriple, mutated: ExchangeTriple) -> bool:
    """Log and report a verdict change across one mutation.

    The verdict is a class property, so a flip can only come from rounding
    next to the boundary.
    """
    before, after = classify(triple), classify(mutated)
    if before.bounded == after.bounded:
        return False
    logger.warning(
        "Verdict changed across a mutation: %s (%s) -> %s (%s)",
        triple.as_tuple(),
        before.reason.value,
        mutated.as_tuple(),
        after.reason.value,
    )
    return True
