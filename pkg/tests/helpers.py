"""Shared generators and oracles for the test suite."""

from __future__ import annotations

import random
from collections import Counter
from typing import Sequence

from hidmap.dataset import Dataset, parse_csv


def rows_to_csv(names: Sequence[str], rows: Sequence[tuple[str, ...]]) -> str:
    head = ",".join(names)
    return head + "\n" + "\n".join(",".join(r) for r in rows) + "\n"


def random_rows(
    rng: random.Random, n_dims: int, max_values: int, m: int
) -> tuple[list[str], list[tuple[str, ...]]]:
    """Random categorical table with skewed value frequencies."""
    names = [f"d{i}" for i in range(n_dims)]
    pools = []
    for d in range(n_dims):
        k = rng.randint(2, max_values)
        pools.append([f"{chr(97 + d)}{j}" for j in range(k)])
    rows = []
    for _ in range(m):
        row = []
        for pool in pools:
            # Bias toward early values so counts are uneven.
            j = min(rng.randrange(len(pool)), rng.randrange(len(pool)))
            row.append(pool[j])
        rows.append(tuple(row))
    return names, rows


def random_dataset(
    rng: random.Random, n_dims: int, max_values: int, m: int
) -> tuple[Dataset, list[tuple[str, ...]]]:
    names, rows = random_rows(rng, n_dims, max_values, m)
    return parse_csv(rows_to_csv(names, rows)), rows


def leaf_count_oracle(
    rows: Sequence[tuple[str, ...]], dims: Sequence[int]
) -> Counter:
    """Row-scan tally of value-name conjunctions over the given dimensions."""
    return Counter(tuple(r[d] for d in dims) for r in rows)
