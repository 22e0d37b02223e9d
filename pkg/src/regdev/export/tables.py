"""CSV writers and readers for index tables, cluster assignments and reports."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import IncompleteRatings, MalformedRow
from ..index import SCOPES, IndexSeries
from ..panel import Scope, _code_key
from .common import atomic_write, fmt2, fmt_full

Ratings = Mapping[tuple[Scope, int], Mapping[str, str]]


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_index_table(series: IndexSeries, ratings: Ratings | None, path,
                      years: Sequence[int] | None = None,
                      scopes: Sequence[Scope] | None = None) -> None:
    """One row per region with ``<scope>_<year>_index``/``_label`` pairs.

    Values are printed to two decimals.  With ``ratings=None`` the label
    columns are left empty; otherwise every region present in a (scope, year)
    must carry a label.
    """
    years = list(series.years if years is None else years)
    scopes = [Scope(s) for s in (series.scopes if scopes is None else scopes)]
    lookup = {key: i for i, key in enumerate(series.rows)}
    codes = sorted(series.codes, key=_code_key)

    if ratings is not None:
        for scope in scopes:
            for year in years:
                got = ratings.get((scope, year))
                if got is None:
                    raise IncompleteRatings(f"no ratings for {scope.value} {year}")
                lacking = [c for c in codes if (c, year) in lookup and c not in got]
                if lacking:
                    raise IncompleteRatings(f"{scope.value} {year}: no rating for {', '.join(lacking)}")

    header = ["region_code", "region_name"]
    for scope in scopes:
        for year in years:
            header += [f"{scope.value}_{year}_index", f"{scope.value}_{year}_label"]
    with atomic_write(path) as fh:
        w = _writer(fh)
        w.writerow(header)
        if not years:
            return
        for code in codes:
            row = [code, series.names.get(code, code)]
            for scope in scopes:
                for year in years:
                    i = lookup.get((code, year))
                    if i is None:
                        row += ["", ""]
                        continue
                    label = ratings[(scope, year)][code] if ratings is not None else ""
                    row += [fmt2(series.values[scope][i]), label]
            w.writerow(row)


@dataclass
class IndexTable:
    codes: list[str]
    names: dict[str, str]
    values: dict[tuple[Scope, int], np.ndarray]  # NaN where blank
    labels: dict[tuple[Scope, int], list[str]]

    @property
    def keys(self) -> list[tuple[Scope, int]]:
        return list(self.values)

    def to_series(self) -> IndexSeries:
        """Rows present (non-blank) in every column of the table."""
        years = sorted({y for _, y in self.values})
        scopes = [s for s in SCOPES if any(k[0] is s for k in self.values)]
        rows, vals = [], {s: [] for s in scopes}
        for year in years:
            for i, code in enumerate(self.codes):
                cells = [self.values.get((s, year)) for s in scopes]
                if any(c is None or np.isnan(c[i]) for c in cells):
                    continue
                rows.append((code, year))
                for s, c in zip(scopes, cells):
                    vals[s].append(c[i])
        return IndexSeries(tuple(rows), dict(self.names), {s: np.array(v) for s, v in vals.items()})


def read_index_table(path) -> IndexTable:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[:2] != ["region_code", "region_name"]:
            raise MalformedRow(f"{path}: index table must start with region_code,region_name")
        cols = []
        for pos in range(2, len(header), 2):
            scope_raw, year_raw, kind = header[pos].rsplit("_", 2)
            if kind != "index" or header[pos + 1] != f"{scope_raw}_{year_raw}_label":
                raise MalformedRow(f"{path}: unexpected column {header[pos]!r}")
            try:
                cols.append((Scope(scope_raw), int(year_raw)))
            except ValueError:
                raise MalformedRow(f"{path}: bad column {header[pos]!r}") from None
        codes, names = [], {}
        raw_vals = {c: [] for c in cols}
        raw_labels = {c: [] for c in cols}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise MalformedRow(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            codes.append(row[0])
            names[row[0]] = row[1]
            for n, c in enumerate(cols):
                cell = row[2 + 2 * n].strip()
                try:
                    raw_vals[c].append(float(cell) if cell else np.nan)
                except ValueError:
                    raise MalformedRow(f"{path}:{lineno}: unparseable value {cell!r}") from None
                raw_labels[c].append(row[3 + 2 * n])
    return IndexTable(codes, names, {c: np.array(v, dtype=float) for c, v in raw_vals.items()}, raw_labels)


def write_index_long(series: IndexSeries, path) -> None:
    """Full-precision sidecar: one line per (region, year, scope)."""
    with atomic_write(path) as fh:
        w = _writer(fh)
        w.writerow(["region_code", "year", "scope", "index"])
        for i, (code, year) in enumerate(series.rows):
            for scope in series.scopes:
                w.writerow([code, year, scope.value, fmt_full(series.values[scope][i])])


@dataclass(frozen=True)
class ClusterRecord:
    region_code: str
    year: int
    scope: str
    index: float
    cluster_id: int
    label: str


def write_clusters(records: Iterable[ClusterRecord], path) -> None:
    with atomic_write(path) as fh:
        w = _writer(fh)
        w.writerow(["region_code", "year", "scope", "index", "cluster_id", "label"])
        for r in records:
            w.writerow([r.region_code, r.year, r.scope, fmt_full(r.index), r.cluster_id, r.label])


def write_kselect(reports, path) -> None:
    """``reports`` yields (scope name, year or '', KSelectionReport)."""
    with atomic_write(path) as fh:
        w = _writer(fh)
        w.writerow(["scope", "year", "k", "wcss", "silhouette", "calinski_harabasz",
                    "davies_bouldin", "elbow_strength", "elbow", "candidate", "ambiguous"])
        for scope, year, rep in reports:
            for k in sorted(rep.wcss):
                v = rep.validity.get(k)
                strength = rep.elbow.strengths.get(k)
                w.writerow([
                    scope, year, k, fmt_full(rep.wcss[k]),
                    fmt_full(v.silhouette) if v else "",
                    fmt_full(v.calinski_harabasz) if v else "",
                    fmt_full(v.davies_bouldin) if v else "",
                    fmt_full(strength) if strength is not None else "",
                    int(rep.elbow.k == k),
                    int(k in rep.elbow.candidates),
                    int(rep.elbow.ambiguous),
                ])


def write_describe(stats, path) -> None:
    with atomic_write(path) as fh:
        w = _writer(fh)
        w.writerow(["indicator_id", "count", "mean", "median", "sd", "min", "max"])
        for ind, n, mean, med, sd, lo, hi in stats.as_rows():
            w.writerow([ind, n] + [fmt_full(v) for v in (mean, med, sd, lo, hi)])


def write_matrix_csv(columns: Sequence[str], values: np.ndarray, path) -> None:
    with atomic_write(path) as fh:
        w = _writer(fh)
        w.writerow([""] + list(columns))
        for name, row in zip(columns, values):
            w.writerow([name] + [fmt_full(v) for v in row])


def read_matrix_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    cols = rows[0][1:]
    return cols, np.array([[float(v) for v in r[1:]] for r in rows[1:]])
