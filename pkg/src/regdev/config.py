"""Run configuration: flat ``key = value`` files, overridden by CLI flags."""
from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from typing import Mapping

from .cluster.hierarchy import Linkage
from .errors import BadConfig
from .export.common import RATING_RAMP
from .index import parse_retention
from .panel import Scope
from .preprocess import NormMethod

KEYS = (
    "data", "spec", "boundaries", "indices", "years", "scope", "norm", "retain",
    "k", "kmax", "seed", "restarts", "linkage", "out", "space", "ramp",
)

_HEX = re.compile(r"#[0-9a-f]{6}")


@dataclass(frozen=True)
class RunConfig:
    data: str | None = None
    spec: str | None = None
    boundaries: str | None = None
    indices: str | None = None  # precomputed index table, same layout as indices.csv
    years: tuple[int, ...] | None = None  # None: every year available
    scopes: tuple[Scope, ...] = (Scope.ECONOMIC, Scope.SOCIAL, Scope.SOCIOECONOMIC)
    norm: NormMethod = NormMethod.MINMAX
    retain: str = "kaiser"
    k: int | str = 4  # or "auto"
    kmax: int = 10
    seed: int = 0
    restarts: int = 100
    linkage: Linkage = Linkage.WARD
    out: str = "out"
    space: str = "index"  # index: 1-D per scope; joint: all scope indices together
    ramp: tuple[str, ...] = RATING_RAMP  # rating colors, lowest first

    @property
    def retention(self) -> tuple[str, float]:
        return parse_retention(self.retain)

    def echo(self) -> list[tuple[str, str]]:
        """Resolved settings as text, output directory excluded."""
        out = []
        for f in fields(self):
            if f.name == "out":
                continue
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(str(getattr(x, "value", x)) for x in v)
            elif v is None:
                v = ""
            else:
                v = getattr(v, "value", v)
            out.append((f.name, str(v)))
        return out


def read_config_file(path) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise BadConfig("config", f"cannot read {path}: {exc.strerror}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            sep = "=" if "=" in line else ":" if ":" in line else None
            if sep is None:
                raise BadConfig(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
            key, _, value = line.partition(sep)
            key = key.strip().replace("-", "_")
            if key not in KEYS:
                raise BadConfig(key, "unknown configuration key")
            values[key] = value.strip()
    return values


def parse_years(text: str) -> tuple[int, ...]:
    years: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, dash, hi = part.partition("-")
        if dash:
            a, b = int(lo), int(hi)
            if b < a:
                raise ValueError(f"empty year range {part!r}")
            years.update(range(a, b + 1))
        else:
            years.add(int(part))
    if not years:
        raise ValueError("no years given")
    return tuple(sorted(years))


def _int(key: str, raw: str, lo: int | None = None, hi: int | None = None) -> int:
    try:
        v = int(raw)
    except ValueError:
        raise BadConfig(key, f"expected an integer, got {raw!r}") from None
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        bounds = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise BadConfig(key, f"{v} is outside {bounds}")
    return v


def resolve(values: Mapping[str, str]) -> RunConfig:
    cfg = RunConfig()
    upd: dict = {}
    for key, raw in values.items():
        if raw is None:
            continue
        raw = str(raw).strip()
        if key in ("data", "spec", "boundaries", "indices", "out"):
            upd[key] = raw or None
        elif key == "years":
            if raw.lower() in ("", "all"):
                upd["years"] = None
            else:
                try:
                    upd["years"] = parse_years(raw)
                except ValueError as exc:
                    raise BadConfig("years", str(exc)) from None
        elif key == "scope":
            try:
                scopes = tuple(Scope(s.strip().lower()) for s in raw.split(",") if s.strip())
            except ValueError:
                raise BadConfig("scope", f"{raw!r}: scopes are economic, social, socioeconomic") from None
            if not scopes:
                raise BadConfig("scope", "at least one scope required")
            upd["scopes"] = tuple(dict.fromkeys(scopes))
        elif key == "norm":
            try:
                upd["norm"] = NormMethod(raw.lower())
            except ValueError:
                raise BadConfig("norm", f"{raw!r}: expected minmax or zscore") from None
        elif key == "retain":
            try:
                parse_retention(raw)
            except ValueError as exc:
                raise BadConfig("retain", str(exc)) from None
            upd["retain"] = raw.lower()
        elif key == "k":
            upd["k"] = "auto" if raw.lower() == "auto" else _int("k", raw, 2, 12)
        elif key == "kmax":
            upd["kmax"] = _int("kmax", raw, 3, 30)
        elif key == "seed":
            upd["seed"] = _int("seed", raw, 0)
        elif key == "restarts":
            upd["restarts"] = _int("restarts", raw, 1)
        elif key == "linkage":
            try:
                upd["linkage"] = Linkage(raw.lower())
            except ValueError:
                raise BadConfig("linkage", f"{raw!r}: expected ward, average or complete") from None
        elif key == "space":
            if raw.lower() not in ("index", "joint"):
                raise BadConfig("space", f"{raw!r}: expected index or joint")
            upd["space"] = raw.lower()
        elif key == "ramp":
            colors = tuple(c.strip().lower() for c in raw.split(",") if c.strip())
            if len(colors) < 2 or not all(_HEX.fullmatch(c) for c in colors):
                raise BadConfig("ramp", f"{raw!r}: expected at least two #rrggbb colors")
            upd["ramp"] = colors
        else:
            raise BadConfig(key, "unknown configuration key")
    cfg = replace(cfg, **upd)
    if cfg.out is None:
        raise BadConfig("out", "output directory must not be empty")
    return cfg


def load_config(path=None, overrides: Mapping[str, str | None] | None = None) -> RunConfig:
    """File values first, then non-None ``overrides`` on top."""
    values = read_config_file(path) if path else {}
    for key, v in (overrides or {}).items():
        if v is not None:
            values[key] = v
    return resolve(values)
