import logging
import math

import pytest

from helpers import MARKOV, REFERENCE_QUIVERS, random_bounded_connected, random_triple, random_walk
from qmut.classifier import (
    Classification,
    Reason,
    classification_flips,
    classify,
    is_markov_quiver,
    norm_bound,
)
from qmut.errors import ContractViolation, QuiverArgumentError
from qmut.quiver_core import ExchangeTriple, mutate, norm


def test_markov_quiver_is_bounded_on_the_boundary():
    verdict = classify(MARKOV)
    assert verdict.bounded
    assert verdict.reason is Reason.BOUNDED
    assert verdict.markov_c == 4.0
    assert verdict.norm_bound == 2.0
    assert verdict.boundary_margin == (0.0, 0.0)
    assert verdict.near_boundary


def test_near_boundary_is_logged(caplog):
    caplog.set_level(logging.INFO, logger="qmut.classifier")
    classify(MARKOV)
    assert "boundary" in caplog.text
    caplog.clear()
    classify(ExchangeTriple(1.0, 1.0, 0.0))
    assert caplog.text == ""


@pytest.mark.parametrize(
    "triple, reason, c",
    [
        (ExchangeTriple(2.0, 2.0, -0.5), Reason.MARKOV_CONSTANT_EXCEEDS_FOUR, 6.25),
        (ExchangeTriple(3.0, 3.0, 3.0), Reason.BOTH_EXCEEDED, 54.0),
        (ExchangeTriple(3.0, 3.0, -3.0), Reason.MAX_WEIGHT_EXCEEDS_TWO, 0.0),
        (ExchangeTriple(5.0, 0.1, 0.0), Reason.BOTH_EXCEEDED, 25.01),
    ],
)
def test_unbounded_verdicts(triple, reason, c):
    verdict = classify(triple)
    assert not verdict.bounded
    assert verdict.reason is reason
    assert verdict.markov_c == pytest.approx(c)
    assert verdict.norm_bound is None


def test_path_quiver_is_bounded():
    verdict = classify(ExchangeTriple(1.0, 1.0, 0.0))
    assert verdict.bounded
    assert verdict.markov_c == 2.0
    assert verdict.norm_bound == pytest.approx(math.sqrt(2.0))


def test_disconnected_quiver_is_trivially_bounded():
    verdict = classify(ExchangeTriple(5.0, 0.0, 0.0))
    assert verdict.bounded
    assert verdict.reason is Reason.DISCONNECTED
    assert verdict.norm_bound == 5.0
    assert classify(ExchangeTriple(0.0, 0.0, 0.0)).reason is Reason.DISCONNECTED


@pytest.mark.parametrize("triple", REFERENCE_QUIVERS)
def test_reference_quivers_are_bounded(triple):
    verdict = classify(triple)
    assert verdict.bounded
    assert verdict.reason is Reason.BOUNDED
    assert verdict.markov_c < 4.0


def test_norm_bound_contract():
    assert norm_bound(MARKOV) == 2.0
    with pytest.raises(ContractViolation):
        norm_bound(ExchangeTriple(5.0, 0.0, 0.0))
    with pytest.raises(ContractViolation):
        norm_bound(ExchangeTriple(3.0, 3.0, 3.0))


def test_markov_quiver_detection():
    assert is_markov_quiver(MARKOV)
    assert is_markov_quiver(mutate(MARKOV, 3))
    assert not is_markov_quiver(ExchangeTriple(2.0, 2.0, 2.0))


def test_classification_flips(caplog):
    caplog.set_level(logging.WARNING, logger="qmut.classifier")
    path = ExchangeTriple(1.0, 1.0, 0.0)
    assert not classification_flips(path, mutate(path, 2))
    assert classification_flips(MARKOV, ExchangeTriple(2.0, 2.0, -1.9))
    assert "Verdict changed" in caplog.text


def test_classification_record_round_trip():
    verdict = classify(ExchangeTriple(2.0, 2.0, -0.5))
    assert Classification.from_dict(verdict.to_dict()) == verdict
    with pytest.raises(QuiverArgumentError):
        Classification.from_dict({"bounded": True})
    with pytest.raises(QuiverArgumentError):
        Classification.from_dict({**verdict.to_dict(), "reason": "Unknown"})


def test_small_cyclic_weights_keep_markov_constant_at_most_four(rng):
    for _ in range(100_000):
        p, q, r = sorted(rng.uniform(0.0, math.sqrt(2.0), size=3), reverse=True)
        c = p * p + q * q + r * r - p * q * r
        assert c <= 4.0 + 1e-12


def test_cyclic_growth_beats_markov_ratio(rng):
    checked = 0
    for _ in range(100_000):
        p = rng.uniform(math.sqrt(2.0), 2.0)
        q = rng.uniform(0.0, p)
        r = rng.uniform(0.0, q)
        if r == 0.0:
            continue
        c = p * p + q * q + r * r - p * q * r
        if c <= 4.0:
            continue
        checked += 1
        assert p * q - r - (c / 4.0) * q > -1e-12
    assert checked > 0


def test_bounded_orbits_stay_in_the_markov_ball(rng):
    for _ in range(200):
        triple = random_bounded_connected(rng)
        bound = norm_bound(triple)
        current = triple
        for k in random_walk(rng, 10_000):
            current = mutate(current, k)
            assert norm(current) <= bound + 1e-9


def test_verdict_is_constant_along_orbits_away_from_the_boundary(rng):
    checked = 0
    while checked < 500:
        triple = random_triple(rng)
        verdict = classify(triple)
        if min(abs(m) for m in verdict.boundary_margin) < 1e-6:
            continue
        checked += 1
        current = triple
        for k in random_walk(rng, 20):
            current = mutate(current, k)
            if norm(current) > 1e6:
                break
            assert classify(current).bounded == verdict.bounded
