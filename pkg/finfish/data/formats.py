"""Record models and the text formats written by the CLI."""

from typing import Iterable, Optional, Sequence, TextIO

from pydantic import BaseModel, Field


class FishRecord(BaseModel):
    term: str
    code: str
    size: int
    tails: int
    rsize: int
    lsize: int
    fin: int
    fin_word: str
    area: int
    planar: Optional[bool] = None
    polyomino: Optional[bool] = None


class TreeRecord(BaseModel):
    tree: str
    nodes: int
    core: int
    right_branches: int
    even: int
    odd: int
    non_root_even: int


def write_jsonl(records: Iterable[BaseModel], stream: TextIO) -> int:
    """One JSON object per line; returns the number written."""
    written = 0
    for record in records:
        stream.write(record.model_dump_json(exclude_none=True))
        stream.write("\n")
        written += 1
    return written


def bfile_lines(values: Sequence[int], offset: int = 1) -> str:
    """OEIS b-file text: ``n a(n)`` per line starting at ``offset``."""
    return "".join(f"{offset + i} {v}\n" for i, v in enumerate(values))


def parse_bfile(text: str) -> dict[int, int]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n, value = line.split()
        out[int(n)] = int(value)
    return out


class SeriesLine(BaseModel):
    t: int = Field(ge=0)
    y: int = Field(ge=0)
    a: int = Field(ge=0)
    b: int = Field(ge=0)
    u: int = Field(ge=0)
    value: str

    def render(self) -> str:
        return f"t^{self.t} y^{self.y} a^{self.a} b^{self.b} u^{self.u} : {self.value}"
