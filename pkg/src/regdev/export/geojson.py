"""Choropleth output: rated regions joined onto externally supplied boundaries."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import InvalidBoundaryFile, MissingGeometry
from .common import RATING_RAMP, atomic_write, rating_colors


@dataclass(frozen=True)
class RatedRegion:
    code: str
    name: str
    index: float
    cluster_id: int
    label: str
    rank: int  # 0 = lowest rating


def _check_position(p, where):
    if (not isinstance(p, list) or len(p) < 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) and math.isfinite(c) for c in p)):
        raise InvalidBoundaryFile(f"{where}: bad position {p!r}")


def _check_ring(ring, where):
    if not isinstance(ring, list) or len(ring) < 4:
        raise InvalidBoundaryFile(f"{where}: linear ring needs >= 4 positions")
    for p in ring:
        _check_position(p, where)
    if ring[0] != ring[-1]:
        raise InvalidBoundaryFile(f"{where}: linear ring is not closed")


def _check_polygon(coords, where):
    if not isinstance(coords, list) or not coords:
        raise InvalidBoundaryFile(f"{where}: polygon needs at least one ring")
    for ring in coords:
        _check_ring(ring, where)


def check_geometry(geom, where: str = "geometry") -> None:
    if not isinstance(geom, dict):
        raise InvalidBoundaryFile(f"{where}: geometry must be an object")
    kind, coords = geom.get("type"), geom.get("coordinates")
    if kind == "Polygon":
        _check_polygon(coords, where)
    elif kind == "MultiPolygon":
        if not isinstance(coords, list) or not coords:
            raise InvalidBoundaryFile(f"{where}: empty MultiPolygon")
        for poly in coords:
            _check_polygon(poly, where)
    else:
        raise InvalidBoundaryFile(f"{where}: geometry type must be Polygon or MultiPolygon, got {kind!r}")


def load_boundaries(source, code_field: str = "code") -> dict[str, dict]:
    """Geometry per region code from a GeoJSON FeatureCollection (path or dict)."""
    if isinstance(source, dict):
        doc = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidBoundaryFile(f"{source}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection" or not isinstance(doc.get("features"), list):
        raise InvalidBoundaryFile("boundary file must be a GeoJSON FeatureCollection")
    out: dict[str, dict] = {}
    for n, feat in enumerate(doc["features"]):
        where = f"feature {n}"
        if not isinstance(feat, dict) or feat.get("type") != "Feature":
            raise InvalidBoundaryFile(f"{where}: not a Feature")
        props = feat.get("properties") or {}
        if code_field not in props:
            raise InvalidBoundaryFile(f"{where}: no {code_field!r} property")
        code = str(props[code_field])
        if code in out:
            raise InvalidBoundaryFile(f"{where}: duplicate region code {code}")
        check_geometry(feat.get("geometry"), f"{where} ({code})")
        out[code] = feat["geometry"]
    return out


def write_geojson(ratings: Sequence[RatedRegion], boundaries, path, k: int | None = None,
                  ramp: Sequence[str] = RATING_RAMP, code_field: str = "code") -> dict:
    geoms = boundaries if _is_geometry_map(boundaries) else load_boundaries(boundaries, code_field)
    lacking = [r.code for r in ratings if r.code not in geoms]
    if lacking:
        raise MissingGeometry(lacking)
    k = k or (max((r.rank for r in ratings), default=-1) + 1)
    colors = rating_colors(k, tuple(ramp)) if k else ()
    features = [{
        "type": "Feature",
        "properties": {
            "code": r.code, "name": r.name, "index": float(r.index),
            "cluster_id": int(r.cluster_id), "label": r.label, "color": colors[r.rank],
        },
        "geometry": geoms[r.code],
    } for r in ratings]
    doc = {"type": "FeatureCollection", "features": features}
    with atomic_write(path) as fh:
        json.dump(doc, fh, ensure_ascii=False, separators=(",", ":"))
        fh.write("\n")
    return doc


def _is_geometry_map(obj) -> bool:
    return isinstance(obj, dict) and obj.get("type") != "FeatureCollection" and all(
        isinstance(v, dict) and "coordinates" in v for v in obj.values())
