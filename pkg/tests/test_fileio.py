import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heilbronn.fileio import (
    ConfigurationFormatError,
    dumps_configuration,
    loads_configuration,
    read_configuration,
    write_configuration,
)
from heilbronn.geometry import Configuration, min_triangle_area
from heilbronn.heuristics import known_configuration

unit = st.floats(0.0, 1.0, allow_nan=False)


@given(st.lists(st.tuples(unit, unit), min_size=3, max_size=10))
def test_round_trip_is_exact(xy):
    c = Configuration.from_xy(xy)
    back, meta = loads_configuration(dumps_configuration(c, {"k": 1}))
    assert back == c
    assert meta == {"k": 1}


def test_schema_shape(tmp_path):
    c = known_configuration(7).points
    p = write_configuration(tmp_path / "c.json", c)
    doc = json.loads(p.read_text())
    assert doc["n"] == 7
    assert set(doc["points"][0]) == {"x", "y"}
    assert min_triangle_area(read_configuration(p)[0]).min_abs == min_triangle_area(c).min_abs


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"n": 3}',
        '{"n": 4, "points": [{"x": 0, "y": 0}, {"x": 1, "y": 0}, {"x": 0, "y": 1}]}',
        '{"n": 3, "points": [{"x": 0, "y": 0}, {"x": 1, "y": 0}, {"x": 0, "y": 2}]}',
        '{"n": 0, "points": []}',
        '{"n": 3, "points": [{"x": 0}, {"x": 1, "y": 0}, {"x": 0, "y": 1}]}',
    ],
)
def test_malformed_inputs_raise(text):
    with pytest.raises(ConfigurationFormatError):
        loads_configuration(text)
