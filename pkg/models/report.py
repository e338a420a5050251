"""JSON reports written by the command-line tool."""

import pathlib as pth

import pydantic as pd

from .bench import BenchRecord


class SeparatorEntry(pd.BaseModel):
    vertices: list[int]
    apexes: list[int]


class ExpansionEntry(pd.BaseModel):
    num_max: int
    num_all: int
    ratio: float | None
    added: list[SeparatorEntry]


class AcsReport(pd.BaseModel):
    instance: str
    method: str
    triangulation: str | None = None
    count: int
    elapsed_ms: int
    separators: list[SeparatorEntry]
    expansion: ExpansionEntry | None = None


class TriangulationReport(pd.BaseModel):
    instance: str
    method: str
    n: int
    m: int
    fill_count: int
    max_bag: int
    width: int
    rounds: int
    minimal_claimed: bool
    verified_minimal: bool


class AtomEntry(pd.BaseModel):
    index: int
    file: str
    vertices: list[int]


class TreeEdgeEntry(pd.BaseModel):
    atoms: tuple[int, int]
    separator: SeparatorEntry


class DecompositionManifest(pd.BaseModel):
    instance: str
    lister: str
    atoms: list[AtomEntry]
    tree_edges: list[TreeEdgeEntry]
    stats: BenchRecord

    @classmethod
    def from_json_file(cls, file: pth.Path | str):
        with open(file, 'rb') as f:
            raw = f.read()
        return cls.model_validate_json(raw)


def dump_json(model: pd.BaseModel, path: pth.Path | str | None = None) -> str:
    text = model.model_dump_json(indent=2)
    if path is not None:
        with open(path, 'w') as f:
            f.write(text + '\n')
    return text
