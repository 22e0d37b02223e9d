from __future__ import annotations

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path

# light -> dark, lowest rating first
RATING_RAMP = ("#fee5d9", "#fcae91", "#fb6a4a", "#a50f15")

HEAT_POS = (178, 24, 43)  # r = +1
HEAT_NEG = (33, 102, 172)  # r = -1
WHITE = (255, 255, 255)


@contextmanager
def atomic_write(path, mode: str = "w"):
    """Write to a temporary sibling, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        kwargs = {"encoding": "utf-8", "newline": ""} if "b" not in mode else {}
        with os.fdopen(fd, mode, **kwargs) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _hex(rgb) -> str:
    return "#{:02x}{:02x}{:02x}".format(*(int(round(c)) for c in rgb))


def _parse_hex(color: str) -> tuple[int, int, int]:
    c = color.lstrip("#")
    return int(c[0:2], 16), int(c[2:4], 16), int(c[4:6], 16)


def _mix(a, b, t: float):
    return tuple(x + (y - x) * t for x, y in zip(a, b))


def rating_colors(k: int, ramp=RATING_RAMP) -> tuple[str, ...]:
    """``k`` colors along the ramp, lowest rating first."""
    if k == len(ramp):
        return tuple(ramp)
    if k == 1:
        return (ramp[-1],)
    stops = [_parse_hex(c) for c in ramp]
    out = []
    for i in range(k):
        pos = i / (k - 1) * (len(stops) - 1)
        lo = min(int(pos), len(stops) - 2)
        out.append(_hex(_mix(stops[lo], stops[lo + 1], pos - lo)))
    return tuple(out)


def diverging_color(r: float) -> str:
    """Blue (-1) through white (0) to red (+1)."""
    r = max(-1.0, min(1.0, float(r)))
    return _hex(_mix(WHITE, HEAT_POS if r >= 0 else HEAT_NEG, abs(r)))


def fmt_full(v: float) -> str:
    return repr(float(v))


def fmt2(v: float) -> str:
    s = f"{float(v):.2f}"
    return "0.00" if s == "-0.00" else s
