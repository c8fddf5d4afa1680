"""Exhaustive searches for maximal integral point sets of small diameter.

Every maximal set of diameter at most D contains a non-degenerate triangle with longest
side at most D, so sweeping all Heronian triangles up to D, all their embeddings and all
maximal cliques of the extension graphs finds every such set. Sets found this way with a
larger diameter are kept as witnesses but do not prove a minimum.
"""

from __future__ import annotations

import json
import logging
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Literal, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .canon import CanonicalForm, normal_form
from .cliques import (
    MaximalSet,
    build_graph,
    constrained_maximal_cliques,
    is_crab,
    maximal_cliques,
)
from .errors import CheckpointError
from .extension import Mode, has_extension, is_maximal
from .geometry import GridPoint, PositionClass, diameter, position_class
from .heronian import HeronTriangle, embeddings, heronian_triangles, is_right_triangle

logger = logging.getLogger(__name__)


class SearchMode(str, Enum):
    MAXIMAL_SETS = "maximal_sets"
    MAXIMAL_TRIANGLES = "maximal_triangles"


class SearchConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_diameter: int = Field(ge=1)
    position_filter: PositionClass = PositionClass.ARBITRARY
    min_cardinality: int = Field(default=3, ge=3)
    mode: SearchMode = SearchMode.MAXIMAL_SETS
    within_filter: bool = False
    start_diameter: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1)

    def same_search(self, other: "SearchConfig") -> bool:
        return (self.position_filter, self.mode, self.within_filter) == (
            other.position_filter,
            other.mode,
            other.within_filter,
        )


class SetRecord(BaseModel):
    kind: Literal["set"] = "set"
    canonical: str
    cardinality: int
    diameter: int
    position: PositionClass
    maximal_within_filter: bool
    unconditionally_maximal: bool
    crab: bool
    seed: str

    def form(self) -> CanonicalForm:
        return CanonicalForm.parse(self.canonical)


class DiameterMark(BaseModel):
    kind: Literal["diameter"] = "diameter"
    diameter: int


class CheckpointHeader(BaseModel):
    kind: Literal["header"] = "header"
    config: SearchConfig


@dataclass(frozen=True)
class TableRow:
    cardinality: int
    diameter: int
    witness: CanonicalForm
    exhaustive_up_to: int

    @property
    def proven(self) -> bool:
        return self.diameter <= self.exhaustive_up_to

    def to_tsv(self) -> str:
        relation = "=" if self.proven else "<="
        return "\t".join(
            [str(self.cardinality), relation, str(self.diameter), str(self.exhaustive_up_to),
             self.witness.serialize()]
        )


@dataclass
class DiameterTable:
    exhaustive_up_to: int
    rows: Dict[int, TableRow] = field(default_factory=dict)

    def offer(self, record: SetRecord) -> None:
        current = self.rows.get(record.cardinality)
        form = record.form()
        if current is not None and (current.diameter, current.witness.sort_key()) <= (
            record.diameter,
            form.sort_key(),
        ):
            return
        self.rows[record.cardinality] = TableRow(
            record.cardinality, record.diameter, form, self.exhaustive_up_to
        )

    def minimum(self, cardinality: int) -> Optional[int]:
        row = self.rows.get(cardinality)
        return None if row is None else row.diameter

    def to_tsv(self) -> str:
        return "".join(self.rows[k].to_tsv() + "\n" for k in sorted(self.rows))


class DedupStore:
    """Canonical form -> record, first writer wins."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._records: Dict[str, SetRecord] = {}

    def insert(self, record: SetRecord) -> bool:
        with self._lock:
            if record.canonical in self._records:
                return False
            self._records[record.canonical] = record
            return True

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[SetRecord]:
        return iter(list(self._records.values()))


def _record(ms: MaximalSet, seed: HeronTriangle) -> SetRecord:
    return SetRecord(
        canonical=ms.canonical.serialize(),
        cardinality=ms.cardinality,
        diameter=ms.diameter,
        position=position_class(ms.points),
        maximal_within_filter=ms.maximal_within_filter,
        unconditionally_maximal=ms.unconditionally_maximal,
        crab=is_crab(ms.points),
        seed=str(seed),
    )


Unit = Tuple[Tuple[int, int, int], Tuple[Tuple[int, int], ...], str, bool]


def _process_unit(unit: Unit) -> List[SetRecord]:
    sides, coords, filter_value, within_filter = unit
    triangle = HeronTriangle(*sides)
    seed = [GridPoint(x, y) for x, y in coords]
    filter_ = PositionClass(filter_value)
    graph = build_graph(seed)
    if within_filter and filter_ is not PositionClass.ARBITRARY:
        found = constrained_maximal_cliques(graph, filter_)
    else:
        found = maximal_cliques(graph)
    return [_record(ms, triangle) for ms in found]


def _units(d: int, cfg: SearchConfig) -> List[Unit]:
    units = []
    for t in heronian_triangles(d):
        for emb in embeddings(t, dedup=True):
            coords = tuple((p.x, p.y) for p in emb.vertices)
            units.append((t.sides, coords, cfg.position_filter.value, cfg.within_filter))
    return units


class Checkpoint:
    """Append-only JSON-lines log of a search: header, set records, finished diameters."""

    def __init__(self, path: Union[Path, str]):
        self.path = Path(path)

    def load(self, cfg: SearchConfig) -> Tuple[List[SetRecord], Set[int]]:
        if not self.path.exists():
            self._append([CheckpointHeader(config=cfg)])
            return [], set()
        records: List[SetRecord] = []
        done: Set[int] = set()
        with open(self.path, encoding="utf-8") as f:
            lines = [line for line in f if line.strip()]
        if not lines:
            self._append([CheckpointHeader(config=cfg)])
            return [], set()
        try:
            header = CheckpointHeader.model_validate_json(lines[0])
            for line in lines[1:]:
                kind = json.loads(line).get("kind")
                if kind == "set":
                    records.append(SetRecord.model_validate_json(line))
                elif kind == "diameter":
                    done.add(DiameterMark.model_validate_json(line).diameter)
        except (ValidationError, ValueError) as e:
            raise CheckpointError(f"corrupt checkpoint {self.path}: {e}") from e
        if not header.config.same_search(cfg):
            raise CheckpointError(
                f"checkpoint {self.path} belongs to a different search",
                {"checkpoint": header.config.model_dump(mode="json")},
            )
        logger.info("resuming from %s: %d sets, %d diameters done",
                    self.path, len(records), len(done))
        return records, done

    def _append(self, entries: Iterable[BaseModel]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            for entry in entries:
                f.write(entry.model_dump_json() + "\n")

    def finish_diameter(self, d: int, records: List[SetRecord]) -> None:
        self._append(list(records) + [DiameterMark(diameter=d)])


class MaximalSetSearch:
    """Sweep diameters in order, merging unit results deterministically."""

    def __init__(self, cfg: SearchConfig, checkpoint: Optional[Union[Path, str]] = None):
        self.cfg = cfg
        self.store = DedupStore()
        self.checkpoint = Checkpoint(checkpoint) if checkpoint is not None else None
        self.swept: Set[int] = set()

    def run(self) -> DiameterTable:
        done: Set[int] = set()
        if self.checkpoint is not None:
            records, done = self.checkpoint.load(self.cfg)
            for record in records:
                self.store.insert(record)
            self.swept |= done

        pool = ProcessPoolExecutor(self.cfg.workers) if self.cfg.workers > 1 else None
        try:
            for d in range(self.cfg.start_diameter, self.cfg.max_diameter + 1):
                if d in done:
                    continue
                units = _units(d, self.cfg)
                results = pool.map(_process_unit, units) if pool else map(_process_unit, units)
                fresh = [r for batch in results for r in batch if self.store.insert(r)]
                if self.checkpoint is not None:
                    self.checkpoint.finish_diameter(d, fresh)
                self.swept.add(d)
                logger.info("diameter %d: %d units, %d new sets, %d total",
                            d, len(units), len(fresh), len(self.store))
        finally:
            if pool is not None:
                pool.shutdown()
        return self.table()

    def exhaustive_up_to(self) -> int:
        """Largest D such that every diameter 1..D has been swept."""
        d = 0
        while d + 1 in self.swept:
            d += 1
        return d

    def qualifies(self, record: SetRecord) -> bool:
        if record.cardinality < self.cfg.min_cardinality:
            return False
        if not self.cfg.position_filter.admits(record.position):
            return False
        if self.cfg.within_filter:
            return record.maximal_within_filter
        return record.unconditionally_maximal

    def table(self) -> DiameterTable:
        table = DiameterTable(exhaustive_up_to=self.exhaustive_up_to())
        for record in self.store:
            if self.qualifies(record):
                table.offer(record)
        return table

    def records(self) -> List[SetRecord]:
        return sorted(self.store, key=lambda r: (r.cardinality, r.diameter, r.form().sort_key()))


def search_maximal_sets(
    cfg: SearchConfig, checkpoint: Optional[Union[Path, str]] = None
) -> DiameterTable:
    return MaximalSetSearch(cfg, checkpoint).run()


def _triangle_verdict(sides: Tuple[int, int, int]) -> Optional[CanonicalForm]:
    t = HeronTriangle(*sides)
    placed = embeddings(t)
    if not placed:
        logger.warning("triangle %s has no grid embedding", t)
        return None
    if has_extension(placed[0], Mode.RATIONAL):
        return None
    return min((normal_form(e.vertices) for e in placed), key=CanonicalForm.sort_key)


def search_maximal_triangles(
    max_diameter: int, start: int = 1, workers: int = 1
) -> List[Tuple[HeronTriangle, CanonicalForm]]:
    """Non-right Heronian triangles up to ``max_diameter`` without rational extension points."""
    found = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for d in range(start, max_diameter + 1):
            candidates = [t for t in heronian_triangles(d) if not is_right_triangle(t)]
            sides = [t.sides for t in candidates]
            verdicts = pool.map(_triangle_verdict, sides) if pool else map(_triangle_verdict, sides)
            for t, form in zip(candidates, verdicts):
                if form is not None:
                    logger.info("strongly maximal triangle %s", t)
                    found.append((t, form))
            logger.debug("diameter %d: %d non-right triangles checked", d, len(candidates))
    finally:
        if pool is not None:
            pool.shutdown()
    return found


def verify_witness(row: TableRow, filter_: PositionClass = PositionClass.ARBITRARY) -> bool:
    """Re-check a table witness from scratch."""
    points = row.witness.to_pointset()
    return (
        len(points) == row.cardinality
        and diameter(points) == row.diameter
        and filter_.admits(position_class(points))
        and is_maximal(points)
    )
