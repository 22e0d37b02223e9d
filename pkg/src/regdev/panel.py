"""Indicator panel: loading, validation and slicing.

The panel is a region x year x indicator cube.  Missing cells are stored as
NaN; a present value is always finite (the loader rejects ``nan``/``inf``
literals), so NaN is an unambiguous missing marker.
"""
from __future__ import annotations

import csv
import enum
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateCell,
    MalformedRow,
    MissingData,
    TooFewColumns,
    TooFewRows,
    UnknownIndicator,
    UnknownYear,
)

DATA_HEADER = ("region_code", "region_name", "year", "indicator_id", "value")
SPEC_HEADER = ("indicator_id", "name", "dimension", "polarity", "unit")


class Dimension(str, enum.Enum):
    ECONOMIC = "Economic"
    SOCIAL = "Social"


class Polarity(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


class Scope(str, enum.Enum):
    """Analysis scope: which indicator group feeds an index."""

    ECONOMIC = "economic"
    SOCIAL = "social"
    SOCIOECONOMIC = "socioeconomic"

    @property
    def dimension(self) -> Dimension | None:
        return {
            Scope.ECONOMIC: Dimension.ECONOMIC,
            Scope.SOCIAL: Dimension.SOCIAL,
        }.get(self)


class MissingPolicy(str, enum.Enum):
    DROP = "drop"
    FAIL = "fail"


@dataclass(frozen=True)
class IndicatorSpec:
    id: str
    name: str
    dimension: Dimension
    polarity: Polarity
    unit: str = ""


@dataclass(frozen=True)
class Region:
    code: str
    name: str


# Published indicator set: ten economic, then six social.
DEFAULT_INDICATORS: tuple[IndicatorSpec, ...] = (
    IndicatorSpec("gdp_pc", "GDP", Dimension.ECONOMIC, Polarity.POSITIVE, "Per capita ($)"),
    IndicatorSpec("cars", "Number of cars", Dimension.ECONOMIC, Polarity.POSITIVE, "Per thousand people"),
    IndicatorSpec("plant_prod", "Value of plant production", Dimension.ECONOMIC, Polarity.POSITIVE, "Total (thousand $)"),
    IndicatorSpec("animal_prod", "Value of animal production", Dimension.ECONOMIC, Polarity.POSITIVE, "Total (thousand $)"),
    IndicatorSpec("housing_sales", "Housing sales", Dimension.ECONOMIC, Polarity.POSITIVE, "Total"),
    IndicatorSpec("electricity", "Electricity consumption", Dimension.ECONOMIC, Polarity.POSITIVE, "Total per capita (kWh)"),
    IndicatorSpec("net_exports", "Net Exports", Dimension.ECONOMIC, Polarity.POSITIVE, "Total (thousand $)"),
    IndicatorSpec("net_migration", "Net migration rate", Dimension.ECONOMIC, Polarity.POSITIVE, "Per mille"),
    IndicatorSpec("age_dependency", "Age dependency ratio", Dimension.ECONOMIC, Polarity.NEGATIVE, "Total percentage (%)"),
    IndicatorSpec("pop_growth", "Population growth rate", Dimension.ECONOMIC, Polarity.POSITIVE, "Annual per mille"),
    IndicatorSpec("hospital_beds", "Number of hospital beds", Dimension.SOCIAL, Polarity.POSITIVE, "Per hundred thousand people"),
    IndicatorSpec("physicians", "Number of physicians", Dimension.SOCIAL, Polarity.POSITIVE, "Per thousand people"),
    IndicatorSpec("infant_mortality", "Infant mortality rate", Dimension.SOCIAL, Polarity.NEGATIVE, "Per mille"),
    IndicatorSpec("primary_enrollment", "Primary school enrollment rate", Dimension.SOCIAL, Polarity.POSITIVE, "Net percentage (%)"),
    IndicatorSpec("sewerage", "Sewerage service", Dimension.SOCIAL, Polarity.POSITIVE, "Municipal population (%)"),
    IndicatorSpec("college_grads", "Number of colleges graduates", Dimension.SOCIAL, Polarity.POSITIVE, "Percentage (%)"),
)


@dataclass(frozen=True, eq=False)
class IndicatorPanel:
    regions: tuple[Region, ...]
    years: tuple[int, ...]
    spec: tuple[IndicatorSpec, ...]
    values: np.ndarray  # (region, year, indicator), NaN = missing

    def __post_init__(self):
        shape = (len(self.regions), len(self.years), len(self.spec))
        if self.values.shape != shape:
            raise ValueError(f"value cube has shape {self.values.shape}, expected {shape}")
        if any(b <= a for a, b in zip(self.years, self.years[1:])):
            raise ValueError("years must be strictly increasing")
        if np.isinf(self.values).any():
            raise ValueError("infinite value stored in panel")
        if len({r.code for r in self.regions}) != len(self.regions):
            raise ValueError("region codes must be unique")
        if len({s.id for s in self.spec}) != len(self.spec):
            raise ValueError("indicator ids must be unique")
        self.values.setflags(write=False)

    @property
    def missing(self) -> np.ndarray:
        return np.isnan(self.values)

    @property
    def polarity(self) -> dict[str, Polarity]:
        return {s.id: s.polarity for s in self.spec}

    def region_index(self, code: str) -> int:
        for i, r in enumerate(self.regions):
            if r.code == code:
                return i
        raise KeyError(code)

    def equals(self, other: "IndicatorPanel") -> bool:
        return (
            self.regions == other.regions
            and self.years == other.years
            and self.spec == other.spec
            and np.array_equal(self.values, other.values, equal_nan=True)
        )


@dataclass
class ValidationReport:
    missing_cells: list[tuple[str, int, str]] = field(default_factory=list)
    degenerate_columns: list[str] = field(default_factory=list)
    out_of_range: list[tuple[str, int, str, float]] = field(default_factory=list)
    rows_per_year: dict[int, int] = field(default_factory=dict)

    @property
    def is_clean(self) -> bool:
        return not (self.missing_cells or self.degenerate_columns or self.out_of_range)

    def lines(self) -> list[str]:
        out = ["kind,region_code,year,indicator_id,detail"]
        out += [f"missing,{c},{y},{i}," for c, y, i in self.missing_cells]
        out += [f"degenerate,,,{i},constant over pooled panel" for i in self.degenerate_columns]
        out += [f"out_of_range,{c},{y},{i},{v!r}" for c, y, i, v in self.out_of_range]
        out += [f"complete_rows,,{y},,{n}" for y, n in self.rows_per_year.items()]
        return out


@dataclass(frozen=True, eq=False)
class DataMatrix:
    rows: tuple[tuple[str, int], ...]
    columns: tuple[str, ...]
    values: np.ndarray
    dropped: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.values.shape != (len(self.rows), len(self.columns)):
            raise ValueError("matrix shape does not match row/column keys")
        if len(set(self.rows)) != len(self.rows):
            raise ValueError("row keys must be unique")
        if not np.isfinite(self.values).all():
            raise ValueError("data matrix must be finite")

    def column(self, indicator: str) -> np.ndarray:
        return self.values[:, self.columns.index(indicator)]

    def subset(self, columns: Sequence[str]) -> "DataMatrix":
        idx = [self.columns.index(c) for c in columns]
        return DataMatrix(self.rows, tuple(columns), self.values[:, idx], self.dropped)


def _code_key(code: str):
    # plate codes sort numerically; anything else sorts after, lexically
    return (0, int(code), "") if code.isdigit() else (1, 0, code)


def _parse_enum(enum_cls, raw: str, where: str):
    for member in enum_cls:
        if raw.strip().lower() == member.value.lower():
            return member
    allowed = "/".join(m.value for m in enum_cls)
    raise MalformedRow(f"{where}: {raw!r} is not one of {allowed}")


def _open_csv(path):
    return open(path, newline="", encoding="utf-8-sig")


def _check_header(header, expected, path):
    if header is None or tuple(h.strip() for h in header) != expected:
        raise MalformedRow(f"{path}: header must be {','.join(expected)}, got {header}")


def load_spec(path: str | os.PathLike) -> tuple[IndicatorSpec, ...]:
    with _open_csv(path) as fh:
        reader = csv.reader(fh)
        _check_header(next(reader, None), SPEC_HEADER, path)
        specs = []
        seen = set()
        for lineno, row in enumerate(reader, start=2):
            if not row or not any(cell.strip() for cell in row):
                continue
            where = f"{path}:{lineno}"
            if len(row) != len(SPEC_HEADER):
                raise MalformedRow(f"{where}: expected {len(SPEC_HEADER)} fields, got {len(row)}")
            ind_id, name, dim, pol, unit = (c.strip() for c in row)
            if not ind_id:
                raise MalformedRow(f"{where}: empty indicator_id")
            if ind_id in seen:
                raise MalformedRow(f"{where}: duplicate indicator_id {ind_id!r}")
            seen.add(ind_id)
            specs.append(IndicatorSpec(
                ind_id, name,
                _parse_enum(Dimension, dim, where),
                _parse_enum(Polarity, pol, where),
                unit,
            ))
    if not specs:
        raise MalformedRow(f"{path}: no indicators defined")
    return tuple(specs)


def write_spec(specs: Iterable[IndicatorSpec], path: str | os.PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SPEC_HEADER)
        for s in specs:
            w.writerow([s.id, s.name, s.dimension.value, s.polarity.value, s.unit])


def _parse_value(raw: str, where: str) -> float:
    raw = raw.strip()
    if raw == "":
        return math.nan
    try:
        v = float(raw)
    except ValueError:
        raise MalformedRow(f"{where}: unparseable value {raw!r}") from None
    if not math.isfinite(v):
        raise MalformedRow(f"{where}: non-finite value {raw!r}")
    return v


def load_panel(data_path: str | os.PathLike, spec_path: str | os.PathLike) -> IndicatorPanel:
    """Read long-format rows into a dense cube; absent rows become missing cells."""
    spec = load_spec(spec_path)
    ind_pos = {s.id: j for j, s in enumerate(spec)}
    names: dict[str, str] = {}
    cells: dict[tuple[str, int, str], float] = {}

    with _open_csv(data_path) as fh:
        reader = csv.reader(fh)
        _check_header(next(reader, None), DATA_HEADER, data_path)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            where = f"{data_path}:{lineno}"
            if len(row) != len(DATA_HEADER):
                raise MalformedRow(f"{where}: expected {len(DATA_HEADER)} fields, got {len(row)}")
            code, name, year_raw, ind, value_raw = row
            code, name, ind, year_raw = code.strip(), name.strip(), ind.strip(), year_raw.strip()
            if not code:
                raise MalformedRow(f"{where}: empty region_code")
            if len(year_raw) != 4 or not year_raw.isdigit():
                raise MalformedRow(f"{where}: year must be a 4-digit integer, got {year_raw!r}")
            if ind not in ind_pos:
                raise UnknownIndicator(f"{where}: indicator {ind!r} is not in the spec file")
            if names.setdefault(code, name) != name:
                raise MalformedRow(f"{where}: region {code} named both {names[code]!r} and {name!r}")
            key = (code, int(year_raw), ind)
            if key in cells:
                raise DuplicateCell(f"{where}: duplicate cell region={code} year={year_raw} indicator={ind}")
            cells[key] = _parse_value(value_raw, where)

    if not cells:
        raise TooFewRows(f"{data_path}: no data rows")
    regions = tuple(Region(c, names[c]) for c in sorted(names, key=_code_key))
    years = tuple(sorted({y for _, y, _ in cells}))
    r_pos = {r.code: i for i, r in enumerate(regions)}
    y_pos = {y: i for i, y in enumerate(years)}
    cube = np.full((len(regions), len(years), len(spec)), np.nan)
    for (code, year, ind), v in cells.items():
        cube[r_pos[code], y_pos[year], ind_pos[ind]] = v
    return IndicatorPanel(regions, years, spec, cube)


def write_panel(panel: IndicatorPanel, path: str | os.PathLike, include_missing: bool = False) -> None:
    """Write long format.  Missing cells are omitted unless ``include_missing``
    (then they appear with an empty value field); both reload identically."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DATA_HEADER)
        for i, region in enumerate(panel.regions):
            for t, year in enumerate(panel.years):
                for j, s in enumerate(panel.spec):
                    v = panel.values[i, t, j]
                    if np.isnan(v):
                        if include_missing:
                            w.writerow([region.code, region.name, year, s.id, ""])
                        continue
                    w.writerow([region.code, region.name, year, s.id, repr(float(v))])


def _looks_like_percentage(unit: str) -> bool:
    u = unit.lower()
    return "%" in u and "per mille" not in u


def validate_panel(panel: IndicatorPanel) -> ValidationReport:
    report = ValidationReport()
    miss = panel.missing
    for i, t, j in zip(*np.nonzero(miss)):
        report.missing_cells.append((panel.regions[i].code, panel.years[t], panel.spec[j].id))
    for j, s in enumerate(panel.spec):
        col = panel.values[:, :, j]
        present = col[~np.isnan(col)]
        if present.size == 0 or present.min() == present.max():
            report.degenerate_columns.append(s.id)
        if _looks_like_percentage(s.unit):
            bad = ~np.isnan(col) & ((col < 0) | (col > 100))
            for i, t in zip(*np.nonzero(bad)):
                report.out_of_range.append(
                    (panel.regions[i].code, panel.years[t], s.id, float(col[i, t])))
    complete = ~miss.any(axis=2)
    report.rows_per_year = {y: int(complete[:, t].sum()) for t, y in enumerate(panel.years)}
    return report


def select_indicators(panel: IndicatorPanel, scope: Scope | str) -> list[str]:
    """Indicator ids of a scope, in spec-file order."""
    scope = Scope(scope) if not isinstance(scope, Scope) else scope
    dim = scope.dimension
    return [s.id for s in panel.spec if dim is None or s.dimension == dim]


def slice_matrix(
    panel: IndicatorPanel,
    scope: Scope | str = Scope.SOCIOECONOMIC,
    years: Sequence[int] | None = None,
    missing: MissingPolicy | str = MissingPolicy.DROP,
) -> DataMatrix:
    """Flatten the cube to a (region, year) x indicator observation matrix.

    ``scope`` picks the indicator group (``socioeconomic`` means all of them).
    """
    missing = MissingPolicy(missing)
    ids = select_indicators(panel, scope)
    if len(ids) < 2:
        raise TooFewColumns(f"scope {Scope(scope).value!r} selects {len(ids)} indicator(s); need >= 2")
    if years is None:
        t_idx = list(range(len(panel.years)))
    else:
        unknown = [y for y in years if y not in panel.years]
        if unknown:
            raise UnknownYear(f"year(s) not in panel: {unknown}")
        t_idx = [panel.years.index(y) for y in sorted(set(years))]
    j_idx = [[s.id for s in panel.spec].index(i) for i in ids]

    rows, data, dropped = [], [], []
    for i, region in enumerate(panel.regions):
        for t in t_idx:
            vec = panel.values[i, t, j_idx]
            key = (region.code, panel.years[t])
            holes = np.isnan(vec)
            if holes.any():
                if missing is MissingPolicy.FAIL:
                    ind = ids[int(np.argmax(holes))]
                    raise MissingData(f"missing cell region={region.code} year={key[1]} indicator={ind}")
                dropped.append(key)
                continue
            rows.append(key)
            data.append(vec)
    if len(rows) < 3:
        raise TooFewRows(f"{len(rows)} complete row(s) after applying missing policy; need >= 3")
    return DataMatrix(tuple(rows), tuple(ids), np.array(data, dtype=float), tuple(dropped))
