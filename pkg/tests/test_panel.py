from __future__ import annotations

import numpy as np
import pytest

from regdev.errors import (
    DuplicateCell, MalformedRow, MissingData, TooFewColumns, TooFewRows, UnknownIndicator, UnknownYear,
)
from regdev.panel import (
    DEFAULT_INDICATORS, Dimension, IndicatorPanel, IndicatorSpec, MissingPolicy, Polarity, Region, Scope,
    load_panel, load_spec, select_indicators, slice_matrix, validate_panel, write_panel, write_spec,
)

TINY_SPEC = (
    IndicatorSpec("a", "A", Dimension.ECONOMIC, Polarity.POSITIVE, "u"),
    IndicatorSpec("b", "B", Dimension.SOCIAL, Polarity.NEGATIVE, "u"),
)
TINY_ROWS = [
    "1,One,2020,a,1.5",
    "1,One,2020,b,2.0",
    "2,Two,2020,a,3.0",
    "2,Two,2020,b,4.0",
]


def _write(tmp_path, rows, spec=TINY_SPEC):
    data, sp = tmp_path / "d.csv", tmp_path / "s.csv"
    data.write_text("region_code,region_name,year,indicator_id,value\n" + "\n".join(rows) + "\n")
    write_spec(spec, sp)
    return data, sp


def test_table_one_layout():
    assert len(DEFAULT_INDICATORS) == 16
    dims = [s.dimension for s in DEFAULT_INDICATORS]
    assert dims.count(Dimension.ECONOMIC) == 10 and dims.count(Dimension.SOCIAL) == 6
    negative = {s.id for s in DEFAULT_INDICATORS if s.polarity is Polarity.NEGATIVE}
    assert negative == {"age_dependency", "infant_mortality"}


def test_spec_round_trip(tmp_path):
    write_spec(DEFAULT_INDICATORS, tmp_path / "s.csv")
    assert load_spec(tmp_path / "s.csv") == DEFAULT_INDICATORS


def test_complete_tiny_file(tmp_path):
    p = load_panel(*_write(tmp_path, TINY_ROWS))
    assert p.values.shape == (2, 1, 2)
    assert not p.missing.any()
    assert p.values[1, 0, 0] == 3.0


def test_deleted_row_becomes_missing_cell(tmp_path):
    p = load_panel(*_write(tmp_path, TINY_ROWS[:-1]))
    assert int(p.missing.sum()) == 1
    assert validate_panel(p).missing_cells == [("2", 2020, "b")]


def test_unknown_indicator(tmp_path):
    with pytest.raises(UnknownIndicator, match="gdppc"):
        load_panel(*_write(tmp_path, TINY_ROWS + ["1,One,2021,gdppc,1"]))


@pytest.mark.parametrize("row", ["1,One,2020,a", "1,One,2021,a,abc", "1,One,20x0,a,1", "1,One,2021,a,inf"])
def test_malformed_rows(tmp_path, row):
    with pytest.raises(MalformedRow):
        load_panel(*_write(tmp_path, TINY_ROWS + [row]))


def test_conflicting_region_name(tmp_path):
    with pytest.raises(MalformedRow):
        load_panel(*_write(tmp_path, TINY_ROWS + ["1,Uno,2021,a,1"]))


def test_duplicate_cell(tmp_path):
    with pytest.raises(DuplicateCell):
        load_panel(*_write(tmp_path, TINY_ROWS + ["1,One,2020,a,9"]))


def test_region_codes_sort_numerically(tmp_path):
    rows = [f"{c},R{c},2020,{i},{c}" for c in (10, 2, 1) for i in "ab"]
    p = load_panel(*_write(tmp_path, rows))
    assert [r.code for r in p.regions] == ["1", "2", "10"]


def test_write_load_round_trip(tmp_path, small_panel, spec_file):
    cube = small_panel.values.copy()
    cube[0, 0, 0] = np.nan
    p = IndicatorPanel(small_panel.regions, small_panel.years, small_panel.spec, cube)
    for include in (False, True):
        write_panel(p, tmp_path / "d.csv", include_missing=include)
        assert load_panel(tmp_path / "d.csv", spec_file).equals(p)


def test_panel_invariants():
    with pytest.raises(ValueError):
        IndicatorPanel((Region("1", "x"),), (2020, 2019), TINY_SPEC, np.zeros((1, 2, 2)))
    with pytest.raises(ValueError):
        IndicatorPanel((Region("1", "x"),), (2020,), TINY_SPEC, np.zeros((1, 1, 3)))
    with pytest.raises(ValueError):
        IndicatorPanel((Region("1", "x"),), (2020,), TINY_SPEC, np.array([[[np.inf, 0.0]]]))
    p = IndicatorPanel((Region("1", "x"),), (2020,), TINY_SPEC, np.zeros((1, 1, 2)))
    with pytest.raises(ValueError):
        p.values[0, 0, 0] = 1.0


def test_validation_clean_and_degenerate(small_panel):
    assert validate_panel(small_panel).is_clean
    cube = small_panel.values.copy()
    cube[:, :, 3] = 7.0
    rep = validate_panel(IndicatorPanel(small_panel.regions, small_panel.years, small_panel.spec, cube))
    assert rep.degenerate_columns == [small_panel.spec[3].id]


def test_validation_lists_every_missing_cell_once(small_panel):
    cube = small_panel.values.copy()
    cube[4, 1, :3] = np.nan
    rep = validate_panel(IndicatorPanel(small_panel.regions, small_panel.years, small_panel.spec, cube))
    assert len(rep.missing_cells) == 3 == len(set(rep.missing_cells))
    assert rep.rows_per_year[small_panel.years[1]] == 19


def test_out_of_range_percentages(small_panel):
    j = [s.id for s in small_panel.spec].index("sewerage")
    cube = small_panel.values.copy()
    cube[0, 0, j] = 140.0
    rep = validate_panel(IndicatorPanel(small_panel.regions, small_panel.years, small_panel.spec, cube))
    assert rep.out_of_range == [("1", small_panel.years[0], "sewerage", 140.0)]


def test_scopes(small_panel):
    assert len(select_indicators(small_panel, Scope.ECONOMIC)) == 10
    assert len(select_indicators(small_panel, "social")) == 6
    assert len(select_indicators(small_panel, Scope.SOCIOECONOMIC)) == 16


def test_slice_drop_and_fail(small_panel):
    cube = small_panel.values.copy()
    cube[2, 0, 12] = np.nan  # a social indicator
    p = IndicatorPanel(small_panel.regions, small_panel.years, small_panel.spec, cube)
    m = slice_matrix(p, Scope.SOCIAL)
    assert len(m.rows) == 59 and m.dropped == (("3", small_panel.years[0]),)
    assert len(slice_matrix(p, Scope.ECONOMIC).rows) == 60
    with pytest.raises(MissingData, match="infant_mortality"):
        slice_matrix(p, Scope.SOCIAL, missing=MissingPolicy.FAIL)


def test_slice_years(small_panel):
    m = slice_matrix(small_panel, years=[2019])
    assert {y for _, y in m.rows} == {2019} and len(m.rows) == 20
    with pytest.raises(UnknownYear):
        slice_matrix(small_panel, years=[1999])


def test_slice_errors():
    spec = TINY_SPEC[:1] + (IndicatorSpec("c", "C", Dimension.ECONOMIC, Polarity.POSITIVE, "u"),)
    regions = tuple(Region(str(i), str(i)) for i in range(2))
    p = IndicatorPanel(regions, (2020,), spec, np.arange(4.0).reshape(2, 1, 2))
    with pytest.raises(TooFewColumns):
        slice_matrix(p, Scope.SOCIAL)
    with pytest.raises(TooFewRows):
        slice_matrix(p, Scope.ECONOMIC)
