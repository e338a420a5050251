"""Per-instance benchmark statistics and their CSV form."""

from collections.abc import Iterable
import csv
import math
import pathlib as pth
import typing as t

import pydantic as pd


class BenchRecord(pd.BaseModel):
    instance: str
    n: int = pd.Field(ge=0)
    m: int = pd.Field(ge=0)
    lister: str
    triangulation: str | None = None
    t_list_ms: int = pd.Field(ge=0)
    num_acs: int = pd.Field(ge=0)                       # |A| in the first round
    num_max: int | None = pd.Field(default=None, ge=0)  # |A| after greedy expansion
    num_all: int | None = pd.Field(default=None, ge=0)
    sterile: bool | None = None
    rounds: int = pd.Field(ge=0)
    num_atoms: int = pd.Field(ge=0)
    max_atom: int = pd.Field(ge=0)
    ratio_rho1: float | None = None
    ratio_rho2: float | None = None

    @pd.model_validator(mode='after')
    def _counts(self) -> t.Self:
        assert self.max_atom <= self.n, f'max atom {self.max_atom} above n={self.n}'
        chain = [c for c in (self.num_acs, self.num_max, self.num_all) if c is not None]
        assert chain == sorted(chain), f'separator counts out of order: {chain}'
        return self

    @classmethod
    def columns(cls) -> list[str]:
        return list(cls.model_fields)


class RatioRecord(pd.BaseModel):
    """Heuristic against standard lister on one instance."""
    instance: str
    n: int
    m: int
    t_heuristic_ms: int
    t_standard_ms: int
    rho1: float | None
    ma_heuristic: int
    ma_standard: int
    rho2: float | None

    @classmethod
    def merge(cls, heuristic: BenchRecord, standard: BenchRecord) -> t.Self:
        assert heuristic.instance == standard.instance, 'merging different instances'
        return cls(instance=heuristic.instance, n=heuristic.n, m=heuristic.m,
                   t_heuristic_ms=heuristic.t_list_ms, t_standard_ms=standard.t_list_ms,
                   rho1=ratio(heuristic.t_list_ms, standard.t_list_ms),
                   ma_heuristic=heuristic.max_atom, ma_standard=standard.max_atom,
                   rho2=ratio(heuristic.max_atom, standard.max_atom))


class CompareRecord(pd.BaseModel):
    """Separators found through one triangulation method on one instance."""
    instance: str
    n: int
    m: int
    method: str
    width: int
    num_acs: int
    num_max: int
    num_all: int
    expansion: float | None


def ratio(num: float, den: float) -> float | None:
    if den == 0:
        return None if num == 0 else math.inf
    return num / den


def write_csv(records: Iterable[pd.BaseModel], path: pth.Path | str,
              columns: list[str] | None = None):
    records = list(records)
    if columns is None:
        columns = list(type(records[0]).model_fields) if records else []

    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=columns)
        writer.writeheader()
        for rec in records:
            row = rec.model_dump(mode='json')
            writer.writerow({k: '' if row[k] is None else row[k] for k in columns})
