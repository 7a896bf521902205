"""Random mutation orbits: seeded sequences, streamed trajectories and exports."""

from __future__ import annotations

import json
import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass
from importlib import resources
from itertools import islice
from typing import IO, Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import pandas as pd

from qmut import svg
from qmut.classifier import classify
from qmut.config import DRIFT_TOLERANCE
from qmut.errors import ExportError, NumericRangeError, QuiverArgumentError
from qmut.quiver_core import (
    ExchangeTriple,
    MutationSequence,
    as_sequence,
    markov_constant,
    markov_deviation,
    mutate,
    norm,
    parse_sequence,
    parse_triple,
)

logger = logging.getLogger(__name__)

Destination = Union[str, os.PathLike, IO[str]]

CSV_COLUMNS = ["step", "vertex", "b12", "b23", "b13", "norm"]
CSV_FLOAT_FORMAT = "%.17g"
CSV_CHUNK_SIZE = 10_000

REFERENCE_PACKAGE = "qmut.data"
REFERENCE_DIR = "reference_orbits"
QUIVER_HEADER = "# quiver:"

SVG_PANELS = ((0, 1), (1, 2), (0, 2))
SVG_LABELS = ("b12", "b23", "b13")


class SplitMix64:
    """SplitMix64 generator; state and outputs are unsigned 64-bit integers"""

    INCREMENT = 0x9E3779B97F4A7C15
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + self.INCREMENT) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)


def random_alternating_sequence(length: int, seed: int) -> MutationSequence:
    """Random vertices with no index equal to its predecessor.

    The first vertex is ``next() % 3 + 1``; each later one takes the top bit
    of ``next()`` to choose between the two vertices other than the previous
    one, in increasing order.
    """
    if length < 0:
        raise QuiverArgumentError(f"Sequence length must be non-negative, got {length}")
    if length == 0:
        return ()
    rng = SplitMix64(seed)
    sequence = [rng.next() % 3 + 1]
    for _ in range(length - 1):
        choices = [k for k in (1, 2, 3) if k != sequence[-1]]
        sequence.append(choices[rng.next() >> 63])
    return tuple(sequence)


@dataclass(frozen=True)
class OrbitRecord:
    step: int
    vertex: int
    triple: ExchangeTriple

    @property
    def norm(self) -> float:
        return norm(self.triple)

    @property
    def markov_c(self) -> float:
        return markov_constant(self.triple)

    def to_dict(self) -> Dict[str, Any]:
        b12, b23, b13 = self.triple.as_tuple()
        return {"step": self.step, "vertex": self.vertex, "b12": b12, "b23": b23, "b13": b13, "norm": self.norm}


@dataclass(frozen=True)
class OrbitSummary:
    max_norm: float
    argmax_step: int
    final_triple: ExchangeTriple
    markov_drift: float
    length: int
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_norm": self.max_norm,
            "argmax_step": self.argmax_step,
            "final_triple": list(self.final_triple.as_tuple()),
            "markov_drift": self.markov_drift,
            "length": self.length,
            "seed": self.seed,
        }


def run_orbit(triple: ExchangeTriple, sequence: Sequence[int]) -> Iterator[OrbitRecord]:
    """Yield the quiver before any mutation and after each one, lazily"""
    sequence = as_sequence(sequence)
    current = triple
    yield OrbitRecord(0, 0, current)
    for step, k in enumerate(sequence, start=1):
        try:
            current = mutate(current, k)
        except NumericRangeError as e:
            raise e.at_step(step) from e
        yield OrbitRecord(step, k, current)


class SummaryTracker:
    """Accumulates an OrbitSummary while records stream past"""

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self.first: Optional[OrbitRecord] = None
        self.last: Optional[OrbitRecord] = None
        self.max_norm = 0.0
        self.argmax_step = 0
        self.drift = 0.0
        self._reference = 0.0

    def add(self, record: OrbitRecord) -> None:
        if self.first is None:
            self.first = record
            self._reference = record.markov_c
            self.max_norm, self.argmax_step = record.norm, record.step
        else:
            if record.norm > self.max_norm:
                self.max_norm, self.argmax_step = record.norm, record.step
            self.drift = max(self.drift, markov_deviation(self._reference, record.triple))
        self.last = record

    def watch(self, records: Iterable[OrbitRecord]) -> Iterator[OrbitRecord]:
        for record in records:
            self.add(record)
            yield record

    def summary(self) -> OrbitSummary:
        if self.first is None:
            raise QuiverArgumentError("Cannot summarize an empty orbit")
        if self.drift > DRIFT_TOLERANCE:
            logger.warning(
                "Markov constant drifted by %g (relative) along the orbit of %s",
                self.drift,
                self.first.triple.as_tuple(),
            )
        return OrbitSummary(
            max_norm=self.max_norm,
            argmax_step=self.argmax_step,
            final_triple=self.last.triple,
            markov_drift=self.drift,
            length=self.last.step - self.first.step,
            seed=self.seed,
        )


def orbit_summary(records: Iterable[OrbitRecord], seed: Optional[int] = None) -> OrbitSummary:
    tracker = SummaryTracker(seed)
    for record in records:
        tracker.add(record)
    return tracker.summary()


def records_frame(records: Iterable[OrbitRecord]) -> pd.DataFrame:
    rows = [record.to_dict() for record in records]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    return frame.astype({"step": "int64", "vertex": "int64", "b12": float, "b23": float, "b13": float, "norm": float})


@contextmanager
def _open_destination(destination: Destination):
    if hasattr(destination, "write"):
        yield destination
        return
    path = str(destination)
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e


def _chunks(records: Iterable[OrbitRecord], size: int) -> Iterator[List[OrbitRecord]]:
    iterator = iter(records)
    while chunk := list(islice(iterator, size)):
        yield chunk


def export_csv(records: Iterable[OrbitRecord], destination: Destination, chunk_size: int = CSV_CHUNK_SIZE) -> None:
    """Write `step,vertex,b12,b23,b13,norm` rows, consuming a stream chunk by chunk"""
    with _open_destination(destination) as handle:
        header = True
        for chunk in _chunks(records, chunk_size):
            records_frame(chunk).to_csv(
                handle, index=False, header=header, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
            )
            header = False
        if header:
            records_frame([]).to_csv(handle, index=False, lineterminator="\n")


def orbit_document(
    records: Sequence[OrbitRecord], seed: Optional[int] = None, sequence: Optional[Sequence[int]] = None
) -> Dict[str, Any]:
    if not records:
        raise QuiverArgumentError("Cannot export an empty orbit")
    initial = records[0].triple
    if sequence is None:
        sequence = [record.vertex for record in records[1:]]
    return {
        "initial": list(initial.as_tuple()),
        "seed": seed,
        "sequence": list(sequence),
        "classification": classify(initial).to_dict(),
        "records": [record.to_dict() for record in records],
    }


def export_json(
    records: Iterable[OrbitRecord],
    destination: Destination,
    seed: Optional[int] = None,
    sequence: Optional[Sequence[int]] = None,
) -> None:
    document = orbit_document(list(records), seed=seed, sequence=sequence)
    with _open_destination(destination) as handle:
        json.dump(document, handle, indent=2)
        handle.write("\n")


def orbit_svg(records: Sequence[OrbitRecord], title: str = "") -> str:
    if not records:
        raise QuiverArgumentError("Cannot plot an empty orbit")
    columns = tuple(zip(*(record.triple.as_tuple() for record in records)))
    extent = max(record.norm for record in records)
    return svg.scatter_panels(columns, SVG_PANELS, SVG_LABELS, extent, title=title)


def render_svg_scatter(records: Iterable[OrbitRecord], destination: Destination, title: str = "") -> None:
    """Three panels (b12-b23, b23-b13, b12-b13) with one marker per record"""
    document = orbit_svg(list(records), title=title)
    with _open_destination(destination) as handle:
        handle.write(document)


@dataclass(frozen=True)
class ReferenceOrbit:
    name: str
    quiver: ExchangeTriple
    sequences: Tuple[MutationSequence, ...]


def _parse_reference(name: str, text: str) -> ReferenceOrbit:
    quiver = None
    sequences = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(QUIVER_HEADER):
            quiver = parse_triple(line[len(QUIVER_HEADER) :])
        elif not line.startswith("#"):
            sequences.append(parse_sequence(line))
    if quiver is None:
        raise QuiverArgumentError(f"Reference orbit '{name}' has no quiver header")
    return ReferenceOrbit(name=name, quiver=quiver, sequences=tuple(sequences))


def reference_orbit_names() -> List[str]:
    folder = resources.files(REFERENCE_PACKAGE) / REFERENCE_DIR
    return sorted(entry.name[: -len(".txt")] for entry in folder.iterdir() if entry.name.endswith(".txt"))


def load_reference_sequences(name: str) -> ReferenceOrbit:
    """Load a vendored quiver and its published mutation sequences"""
    resource = resources.files(REFERENCE_PACKAGE) / REFERENCE_DIR / f"{name}.txt"
    if not resource.is_file():
        raise QuiverArgumentError(f"Unknown reference orbit '{name}'; available: {reference_orbit_names()}")
    return _parse_reference(name, resource.read_text(encoding="utf-8"))


def reference_orbits() -> List[ReferenceOrbit]:
    return [load_reference_sequences(name) for name in reference_orbit_names()]
