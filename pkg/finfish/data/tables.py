import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from finfish.core.errors import PreconditionError

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]

FISH_FIELDS = ("size", "tails", "rsize", "lsize", "fin")
TREE_FIELDS = ("nodes", "right_branches", "non_root_even", "odd", "core")


@dataclass
class JointTable:
    """Exact counts indexed by statistic tuples."""

    fields: Tuple[str, ...]
    counts: Counter = field(default_factory=Counter)

    def __post_init__(self):
        self.fields = tuple(self.fields)
        self.counts = Counter({tuple(k): v for k, v in self.counts.items() if v})

    def add(self, key: Sequence[int], count: int = 1) -> None:
        key = tuple(key)
        if len(key) != len(self.fields):
            raise PreconditionError(f"key {key} does not match fields {self.fields}")
        self.counts[key] += count

    def update(self, other: "JointTable") -> None:
        if other.fields != self.fields:
            raise PreconditionError(f"cannot merge {other.fields} into {self.fields}")
        self.counts.update(other.counts)

    def __getitem__(self, key: Sequence[int]) -> int:
        return self.counts.get(tuple(key), 0)

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[Key]:
        return iter(sorted(self.counts))

    def items(self) -> List[Tuple[Key, int]]:
        return sorted(self.counts.items())

    def total(self) -> int:
        return sum(self.counts.values())

    def marginal(self, *names: str) -> Dict[Key | int, int]:
        """Sum out every field not named; single-field marginals use plain int keys."""
        idx = [self.fields.index(n) for n in names]
        out: Counter = Counter()
        for key, count in self.counts.items():
            projected = tuple(key[i] for i in idx)
            out[projected[0] if len(idx) == 1 else projected] += count
        return dict(sorted(out.items()))

    def weighted(self, name: str, weight=None) -> Dict[int, int]:
        """Per-value sums of ``weight(key)`` grouped by field ``name``."""
        i = self.fields.index(name)
        out: Counter = Counter()
        for key, count in self.counts.items():
            w = 1 if weight is None else weight(dict(zip(self.fields, key)))
            out[key[i]] += w * count
        return dict(sorted(out.items()))

    def filter(self, **bounds: int) -> "JointTable":
        """Rows whose named fields are at most the given bounds."""
        idx = {self.fields.index(n): b for n, b in bounds.items()}
        kept = {k: v for k, v in self.counts.items() if all(k[i] <= b for i, b in idx.items())}
        return JointTable(self.fields, Counter(kept))

    def remap(self, fields: Sequence[str], mapping) -> "JointTable":
        """Re-key every row through ``mapping(key) -> new key``."""
        out = JointTable(tuple(fields))
        for key, count in self.counts.items():
            out.add(mapping(key), count)
        return out

    def first_difference(self, other: "JointTable") -> Optional[Tuple[Key, int, int]]:
        """Lexicographically smallest key whose counts differ, with (self, other) counts."""
        for key in sorted(set(self.counts) | set(other.counts)):
            if self[key] != other[key]:
                return key, self[key], other[key]
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, JointTable):
            return NotImplemented
        return self.first_difference(other) is None

    # -- export ---------------------------------------------------------------

    def to_frame(self) -> pd.DataFrame:
        rows = [(*key, count) for key, count in self.items()]
        return pd.DataFrame(rows, columns=[*self.fields, "count"])

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator="\n")

    def to_json(self) -> dict:
        return {"fields": list(self.fields), "rows": [[*key, count] for key, count in self.items()]}

    @classmethod
    def from_json(cls, payload: dict) -> "JointTable":
        table = cls(tuple(payload["fields"]))
        width = len(table.fields)
        for row in payload["rows"]:
            table.add(row[:width], row[width])
        return table

    @classmethod
    def from_keys(cls, fields: Sequence[str], keys: Iterable[Sequence[int]]) -> "JointTable":
        table = cls(tuple(fields))
        for key in keys:
            table.add(key)
        return table
