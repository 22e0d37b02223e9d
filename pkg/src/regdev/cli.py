"""Command-line entry point.

Each paper stage has its own subcommand; ``pipeline`` runs them all and writes
a manifest of SHA-256 digests for every output file.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .cluster import (
    KSelectionReport,
    agglomerate,
    kmeans_run,
    label_clusters,
    select_k,
)
from .config import KEYS, RunConfig, load_config
from .errors import BadConfig, RegdevError
from .export import (
    ClusterRecord,
    PlotSpec,
    RatedRegion,
    write_clusters,
    write_corr_heatmap,
    write_dendrogram,
    write_describe,
    write_geojson,
    write_index_long,
    write_index_table,
    write_kselect,
    read_index_table,
)
from .export.common import atomic_write
from .index import IndexSeries, build_index_series
from .panel import IndicatorPanel, Scope, load_panel, slice_matrix, validate_panel
from .preprocess import correlation_matrix, describe

log = logging.getLogger("regdev")

COMMANDS = ("ingest", "describe", "correlate", "index", "select-k", "cluster", "dendrogram", "map", "pipeline")
JOINT = "joint"


@dataclass
class RunManifest:
    config: RunConfig
    version: str = __version__
    timings: dict[str, float] = field(default_factory=dict)
    outputs: list[Path] = field(default_factory=list)

    def render(self, root: Path) -> str:
        # timings stay out of the file: manifests must be byte-identical across runs
        lines = ["# regdev run manifest", f"tool_version = {self.version}", "", "[config]"]
        lines += [f"{k} = {v}" for k, v in self.config.echo()]
        lines += ["", "[outputs]"]
        for p in sorted(set(self.outputs), key=lambda p: p.relative_to(root).as_posix()):
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
            lines.append(f"{digest}  {p.relative_to(root).as_posix()}")
        return "\n".join(lines) + "\n"


@dataclass
class Clustering:
    scope: str
    year: int
    codes: list[str]
    values: np.ndarray  # (n,) or (n, d)
    index: np.ndarray  # (n,) value written to tables
    rated: object
    report: KSelectionReport | None = None


class Run:
    """Lazily computed pipeline state shared by the subcommands."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.out = Path(cfg.out)
        self.manifest = RunManifest(cfg)
        self._panel: IndicatorPanel | None = None
        self._series: IndexSeries | None = None
        self._clusterings: list[Clustering] | None = None
        self._reports: dict[tuple[str, int], KSelectionReport] = {}

    # stage timing
    def timed(self, stage, fn, *args):
        t0 = time.perf_counter()
        try:
            return fn(*args)
        finally:
            self.manifest.timings[stage] = time.perf_counter() - t0
            log.info("stage %s: %.3f s", stage, self.manifest.timings[stage])

    def wrote(self, *paths) -> None:
        for p in paths:
            self.manifest.outputs.append(Path(p))

    # inputs
    @property
    def panel(self) -> IndicatorPanel:
        if self._panel is None:
            if not (self.cfg.data and self.cfg.spec):
                raise BadConfig("data", "--data and --spec are required for this command")
            self._panel = load_panel(self.cfg.data, self.cfg.spec)
            self._check_years(self._panel.years)
        return self._panel

    def _check_years(self, available) -> None:
        if self.cfg.years is not None:
            extra = sorted(set(self.cfg.years) - set(available))
            if extra:
                raise BadConfig("years", f"not in the data: {extra}")

    @property
    def years(self) -> tuple[int, ...]:
        return self.cfg.years if self.cfg.years is not None else self.series.years

    @property
    def series(self) -> IndexSeries:
        if self._series is None:
            if self.cfg.indices:
                self._series = read_index_table(self.cfg.indices).to_series()
                self._check_years(self._series.years)
                missing = [s.value for s in self.cfg.scopes if s not in self._series.scopes]
                if missing:
                    raise BadConfig("scope", f"index table has no {missing} columns")
            else:
                rule, tau = self.cfg.retention
                self._series = build_index_series(self.panel, self.cfg.norm, rule, tau,
                                                  scopes=self.cfg.scopes)
        return self._series

    # clustering
    def _units(self):
        s = self.series
        for year in self.years:
            mask = s.year_mask(year)
            codes = [c for (c, y), m in zip(s.rows, mask) if m]
            if self.cfg.space == JOINT:
                pts = np.column_stack([s.values[sc][mask] for sc in self.cfg.scopes])
                yield JOINT, year, codes, pts, s.values[self.cfg.scopes[-1]][mask]
            else:
                for sc in self.cfg.scopes:
                    v = s.values[sc][mask]
                    yield sc.value, year, codes, v, v

    def reports(self) -> dict[tuple[str, int], KSelectionReport]:
        if not self._reports:
            for scope, year, _, pts, _ in self._units():
                self._reports[(scope, year)] = select_k(pts, self.cfg.kmax, self.cfg.seed, self.cfg.restarts)
        return self._reports

    def clusterings(self) -> list[Clustering]:
        if self._clusterings is None:
            out = []
            for scope, year, codes, pts, idx in self._units():
                report = None
                k = self.cfg.k
                if k == "auto":
                    report = self.reports()[(scope, year)]
                    k = report.elbow.k
                    if k is None:
                        k = 4
                        log.warning("%s %s: no elbow found, falling back to k=4", scope, year)
                res = kmeans_run(pts, k, seed=self.cfg.seed, restarts=self.cfg.restarts)
                rated = label_clusters(res, pts)
                out.append(Clustering(scope, year, codes, pts, idx, rated, report))
            self._clusterings = out
        return self._clusterings

    def ratings(self) -> dict[tuple[Scope, int], dict[str, str]]:
        out = {}
        for c in self.clusterings():
            if c.scope == JOINT:
                continue
            out[(Scope(c.scope), c.year)] = dict(zip(c.codes, c.rated.row_labels))
        return out

    # writers
    def do_ingest(self) -> None:
        report = validate_panel(self.panel)
        path = self.out / "validation.csv"
        with atomic_write(path) as fh:
            fh.write("\n".join(report.lines()) + "\n")
        self.wrote(path)
        p = self.panel
        print(f"regions={len(p.regions)} years={len(p.years)} indicators={len(p.spec)} "
              f"missing={len(report.missing_cells)} degenerate={len(report.degenerate_columns)} "
              f"out_of_range={len(report.out_of_range)}")

    def _pooled(self):
        return slice_matrix(self.panel, Scope.SOCIOECONOMIC)

    def do_describe(self) -> None:
        path = self.out / "describe.csv"
        write_describe(describe(self._pooled()), path)
        self.wrote(path)

    def do_correlate(self) -> None:
        svg = self.out / "corr.svg"
        side = write_corr_heatmap(correlation_matrix(self._pooled()), svg)
        self.wrote(svg, side)

    def do_index(self, ratings=None) -> None:
        table = self.out / "indices.csv"
        series = self.series.select_years(self.years)
        scopes = [s for s in self.cfg.scopes]
        write_index_table(series, ratings, table, years=self.years, scopes=scopes)
        full = self.out / "indices_full.csv"
        write_index_long(series, full)
        self.wrote(table, full)

    def do_select_k(self) -> None:
        path = self.out / "kselect.csv"
        write_kselect(((s, y, r) for (s, y), r in self.reports().items()), path)
        self.wrote(path)

    def do_cluster(self) -> None:
        path = self.out / "clusters.csv"
        records = []
        for c in self.clusterings():
            labels = c.rated.row_labels
            for i, code in enumerate(c.codes):
                records.append(ClusterRecord(code, c.year, c.scope, float(c.index[i]),
                                             int(c.rated.result.assignments[i]), labels[i]))
        write_clusters(records, path)
        self.wrote(path)

    def do_dendrogram(self) -> None:
        s = self.series
        year = self.years[-1]
        mask = s.year_mask(year)
        pts = np.column_stack([s.values[sc][mask] for sc in self.cfg.scopes])
        names = [s.names.get(c, c) for (c, y), m in zip(s.rows, mask) if m]
        tree = agglomerate(pts, self.cfg.linkage, names)
        svg = self.out / "dendrogram.svg"
        side = write_dendrogram(tree, svg)
        self.wrote(svg, side)

    def _map_clustering(self) -> Clustering:
        year = self.years[-1]
        cands = [c for c in self.clusterings() if c.year == year]
        for c in cands:
            if c.scope in (Scope.SOCIOECONOMIC.value, JOINT):
                return c
        return cands[0]

    def do_map(self) -> None:
        if not self.cfg.boundaries:
            raise BadConfig("boundaries", "--boundaries is required for map")
        c = self._map_clustering()
        rated = c.rated
        ranks = rated.rank_of_cluster
        labels = rated.row_labels
        regions = [
            RatedRegion(code, self.series.names.get(code, code), float(c.index[i]),
                        int(rated.result.assignments[i]), labels[i],
                        ranks[int(rated.result.assignments[i])])
            for i, code in enumerate(c.codes)
        ]
        path = self.out / "map.geojson"
        write_geojson(regions, self.cfg.boundaries, path, k=rated.result.k, ramp=self.cfg.ramp)
        self.wrote(path)

    def do_plots(self) -> None:
        from .export import write_scatter

        series = self.series.select_years(self.years)
        # colour every row by the rating of the map scope in its own year
        by_key = {}
        for c in self.clusterings():
            if c.scope not in (Scope.SOCIOECONOMIC.value, JOINT) and len(self.cfg.scopes) > 1:
                continue
            ranks = c.rated.rank_of_cluster
            for i, code in enumerate(c.codes):
                a = int(c.rated.result.assignments[i])
                by_key[(code, c.year)] = (c.rated.label_of_cluster[a], ranks[a])
        ratings = [by_key[r] for r in series.rows] if len(by_key) >= len(series.rows) else None
        scopes = [s.value for s in self.cfg.scopes]
        if Scope.ECONOMIC in self.cfg.scopes and Scope.SOCIAL in self.cfg.scopes:
            svg = self.out / "scatter.svg"
            side = write_scatter(series, ratings, PlotSpec("scatter", "economic", "social", ramp=self.cfg.ramp), svg)
            self.wrote(svg, side)
        else:
            log.warning("scatter.svg needs both economic and social scopes; skipped")
        if len(scopes) >= 2:
            svg = self.out / "pairs.svg"
            side = write_scatter(series, ratings, PlotSpec("pair", columns=tuple(scopes), ramp=self.cfg.ramp), svg)
            self.wrote(svg, side)

    def do_pipeline(self) -> None:
        self.timed("ingest", self.do_ingest)
        self.timed("describe", self.do_describe)
        self.timed("correlate", self.do_correlate)
        self.timed("index", lambda: self.series)
        self.timed("select-k", self.do_select_k)
        self.timed("cluster", self.do_cluster)
        self.timed("export-index", self.do_index, self.ratings())
        self.timed("plots", self.do_plots)
        self.timed("dendrogram", self.do_dendrogram)
        if self.cfg.boundaries:
            self.timed("map", self.do_map)
        self.write_manifest()

    def write_manifest(self) -> None:
        path = self.out / "manifest.txt"
        text = self.manifest.render(self.out)
        with atomic_write(path) as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags override it")
    for key in KEYS:
        common.add_argument(f"--{key}", dest=key, default=None, metavar=key.upper())
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="regdev", description="Regional development indices and ratings.")
    parser.add_argument("--version", action="version", version=f"regdev {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    helps = {
        "ingest": "load and validate the panel (validation.csv)",
        "describe": "descriptive statistics (describe.csv)",
        "correlate": "correlation matrix (corr.csv, corr.svg)",
        "index": "composite indices (indices.csv, indices_full.csv)",
        "select-k": "WCSS curve, elbow and validity indices (kselect.csv)",
        "cluster": "k-means ratings (clusters.csv)",
        "dendrogram": "agglomerative tree (dendrogram.svg, dendrogram.txt)",
        "map": "choropleth GeoJSON (map.geojson)",
        "pipeline": "every stage plus manifest.txt",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config, {k: getattr(args, k) for k in KEYS})
        run = Run(cfg)
        run.out.mkdir(parents=True, exist_ok=True)
        cmd = args.command
        if cmd == "pipeline":
            run.do_pipeline()
        else:
            {
                "ingest": run.do_ingest,
                "describe": run.do_describe,
                "correlate": run.do_correlate,
                "index": run.do_index,
                "select-k": run.do_select_k,
                "cluster": run.do_cluster,
                "dendrogram": run.do_dendrogram,
                "map": run.do_map,
            }[cmd]()
    except RegdevError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
