"""Categorical tables: parsing, value ordering, and conjunction counts.

A dataset is stored as an aggregated frequency table keyed by full value-index
tuples, so memory scales with the number of distinct rows rather than the row
count, and every query the layout needs is a sum over matching tuples.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class DatasetError(ValueError):
    """Base class for malformed input or invalid queries."""


class EmptyInputError(DatasetError):
    pass


class RaggedRowError(DatasetError):
    def __init__(self, record: int, expected: int, got: int):
        super().__init__(
            f"record {record}: expected {expected} fields, got {got}"
        )
        self.record = record
        self.expected = expected
        self.got = got


class DuplicateDimensionError(DatasetError):
    pass


class DimensionAlreadyFixedError(DatasetError):
    pass


@dataclass(frozen=True)
class Dimension:
    """One categorical attribute: a name and its ordered value list.

    Values are unique and sorted ascending by code-point-wise comparison on
    the raw strings; no locale is involved, so the order is reproducible.
    """

    name: str
    values: tuple[str, ...]
    index: int

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise DatasetError(f"dimension {self.name!r} has duplicate values")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise DatasetError(f"dimension {self.name!r} values not sorted")

    def value_index(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise DatasetError(
                f"dimension {self.name!r} has no value {value!r}"
            ) from None


@dataclass(frozen=True)
class CategoryPath:
    """A conjunction of fixed (dimension index, value index) pairs."""

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        dims = [d for d, _ in self.entries]
        if len(set(dims)) != len(dims):
            raise DatasetError("category path fixes a dimension twice")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def dimensions(self) -> frozenset[int]:
        return frozenset(d for d, _ in self.entries)

    def extended(self, dim: int, value: int) -> CategoryPath:
        return CategoryPath(self.entries + ((dim, value),))


@dataclass(frozen=True)
class Dataset:
    """An immutable frequency table over ordered categorical dimensions."""

    dimensions: tuple[Dimension, ...]
    row_count: int
    counts: Mapping[tuple[int, ...], int] = field(repr=False)

    def __post_init__(self):
        total = sum(self.counts.values())
        if total != self.row_count:
            raise DatasetError(
                f"counts sum to {total}, expected row count {self.row_count}"
            )
        n = len(self.dimensions)
        for key in self.counts:
            if len(key) != n or any(
                not 0 <= v < len(self.dimensions[d].values)
                for d, v in enumerate(key)
            ):
                raise DatasetError(f"count key {key!r} out of range")

    @property
    def dimension_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.dimensions)

    def dimension_by_name(self, name: str) -> Dimension:
        for d in self.dimensions:
            if d.name == name:
                return d
        raise DatasetError(f"no dimension named {name!r}")

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Distinct value tuples with their multiplicities, in key order."""
        return iter(sorted(self.counts.items()))

    def to_csv(self) -> str:
        """Canonical expansion: header plus one record per original row."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.dimension_names)
        for key, count in self.items():
            row = [self.dimensions[d].values[v] for d, v in enumerate(key)]
            for _ in range(count):
                writer.writerow(row)
        return out.getvalue()


def parse_csv(text: str) -> Dataset:
    """Parse a UTF-8 CSV table into a Dataset.

    The first record is the header of dimension names; every later record has
    exactly one cell per dimension. Cells are trimmed of surrounding
    whitespace; the empty string is a legal value. Per-dimension value lists
    are collected from the data and sorted code-point-wise ascending.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyInputError("no header record") from None
    names = [cell.strip() for cell in header]
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateDimensionError(f"duplicate dimension names: {dupes}")
    n = len(names)

    rows: list[tuple[str, ...]] = []
    for record, raw in enumerate(reader, start=2):
        if not raw:
            continue  # blank line
        if len(raw) != n:
            raise RaggedRowError(record, n, len(raw))
        rows.append(tuple(cell.strip() for cell in raw))

    value_sets: list[set[str]] = [set() for _ in range(n)]
    for row in rows:
        for d, cell in enumerate(row):
            value_sets[d].add(cell)
    dimensions = tuple(
        Dimension(name=names[d], values=tuple(sorted(value_sets[d])), index=d)
        for d in range(n)
    )

    lookup = [
        {v: i for i, v in enumerate(dim.values)} for dim in dimensions
    ]
    counts: dict[tuple[int, ...], int] = {}
    for row in rows:
        key = tuple(lookup[d][cell] for d, cell in enumerate(row))
        counts[key] = counts.get(key, 0) + 1
    return Dataset(dimensions=dimensions, row_count=len(rows), counts=counts)


def _matches(key: Sequence[int], fixed: CategoryPath) -> bool:
    return all(key[d] == v for d, v in fixed)


def filter_count(ds: Dataset, fixed: CategoryPath) -> int:
    """Number of rows matching every fixed (dimension, value) pair."""
    if not fixed.entries:
        return ds.row_count
    return sum(c for key, c in ds.counts.items() if _matches(key, fixed))


def partition_counts(
    ds: Dataset, fixed: CategoryPath, dim: int
) -> list[tuple[int, int]]:
    """Per-value counts of `dim` among rows matching `fixed`.

    Returns one (value index, count) entry per value of the dimension, in
    value order; counts may be zero. Exhaustive: the counts sum to
    filter_count(ds, fixed).
    """
    if dim in fixed.dimensions:
        raise DimensionAlreadyFixedError(
            f"dimension {ds.dimensions[dim].name!r} is already fixed"
        )
    tally = [0] * len(ds.dimensions[dim].values)
    for key, c in ds.counts.items():
        if _matches(key, fixed):
            tally[key[dim]] += c
    return list(enumerate(tally))


def partition_items(
    items: Iterable[tuple[tuple[int, ...], int]], dim: int, n_values: int
) -> list[list[tuple[tuple[int, ...], int]]]:
    """Group (key, count) items by their value in `dim`.

    Internal helper for recursive tree construction: each level partitions
    the surviving items once instead of rescanning the whole table.
    """
    buckets: list[list[tuple[tuple[int, ...], int]]] = [
        [] for _ in range(n_values)
    ]
    for key, c in items:
        buckets[key[dim]].append((key, c))
    return buckets
