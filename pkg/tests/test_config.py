from __future__ import annotations

import pytest

from regdev.cluster import Linkage
from regdev.config import load_config, parse_years, read_config_file
from regdev.errors import BadConfig
from regdev.panel import Scope


def test_file_then_flags(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# comment\nk = 3\nyears = 2000-2002, 2010\nscope = social\nlinkage: complete\n")
    cfg = load_config(f, {"k": "5", "seed": None})
    assert cfg.k == 5 and cfg.years == (2000, 2001, 2002, 2010)
    assert cfg.scopes == (Scope.SOCIAL,) and cfg.linkage is Linkage.COMPLETE
    assert ("seed", "0") in cfg.echo() and all(k != "out" for k, _ in cfg.echo())


@pytest.mark.parametrize("key,value", [
    ("k", "1"), ("k", "13"), ("k", "x"), ("kmax", "2"), ("restarts", "0"), ("norm", "sigmoid"),
    ("retain", "scree"), ("scope", "political"), ("linkage", "single"), ("years", "2005-2001"),
    ("space", "both"),
])
def test_rejects_bad_values(key, value):
    with pytest.raises(BadConfig) as exc:
        load_config(None, {key: value})
    assert exc.value.key == key and exc.value.exit_code == 2


def test_unknown_key(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("colour = red\n")
    with pytest.raises(BadConfig):
        read_config_file(f)


def test_auto_k_and_years():
    assert load_config(None, {"k": "AUTO"}).k == "auto"
    assert parse_years("2020,2018-2019") == (2018, 2019, 2020)


def test_defaults_and_precedence(tmp_path):
    cfg = load_config(None, {"data": "d.csv", "spec": "s.csv"})
    assert (cfg.k, cfg.restarts, cfg.retain, cfg.norm.value, cfg.linkage) == (4, 100, "kaiser", "minmax", Linkage.WARD)
    f = tmp_path / "run.cfg"
    f.write_text("k = 6\n")
    assert load_config(f, {"k": "4"}).k == 4


def test_ramp():
    cfg = load_config(None, {"ramp": "#000000, #FFFFFF"})
    assert cfg.ramp == ("#000000", "#ffffff")
    with pytest.raises(BadConfig):
        load_config(None, {"ramp": "red,blue"})
