import json

import pytest

from deltasite import fixtures
from deltasite.errors import ModelError
from deltasite.model_io import (model_hash, parse_model, serialize_model)

MINIMAL = {
    "schema": 1,
    "ground_set": ["a"],
    "events": {
        "empty": {"atoms": [], "levels": {}},
        "omega": {"atoms": ["a"], "levels": {"0": ["a"]}},
    },
    "maps": {
        "i:empty>omega": {"source": "empty", "target": "omega", "levels": {}},
    },
    "category": {
        "objects": ["empty", "omega"],
        "morphisms": {
            "i:empty>omega": {"source": "empty", "target": "omega",
                              "map": "i:empty>omega"},
        },
        "composition": [],
        "pullbacks": [],
    },
    "measure": {"a": 1.0},
}


def minimal_text():
    return json.dumps(MINIMAL, indent=2, sort_keys=True) + "\n"


def test_minimal_model_parses_and_round_trips():
    model = parse_model(minimal_text())
    assert model.ground_set == frozenset(["a"])
    assert sorted(model.category.objects) == ["empty", "omega"]
    canonical = serialize_model(model)
    assert serialize_model(parse_model(canonical)) == canonical


def test_round_trip_is_byte_identical_on_all_bundled_fixtures():
    for name in fixtures.ALL_FIXTURES:
        text = fixtures.fixture_text(name)
        assert serialize_model(parse_model(text)) == text, name


def test_bundled_files_match_builders():
    for name, builder in fixtures.ALL_FIXTURES.items():
        assert fixtures.fixture_text(name) == serialize_model(builder()), name


def test_category_referencing_undeclared_event_fails_with_name():
    doc = json.loads(minimal_text())
    doc["events"] = {}
    doc["maps"] = {}
    doc["category"]["morphisms"] = {}
    with pytest.raises(ModelError) as err:
        parse_model(json.dumps(doc))
    paths = [p for p, _ in err.value.errors]
    assert "category.objects.empty" in paths
    assert "category.objects.omega" in paths


def test_weights_not_summing_to_one_rejected():
    doc = json.loads(minimal_text())
    doc["measure"] = {"a": 0.9}
    with pytest.raises(ModelError) as err:
        parse_model(json.dumps(doc))
    assert any(p == "measure" and "0.9" in m for p, m in err.value.errors)


def test_syntax_error_reports_position():
    with pytest.raises(ModelError) as err:
        parse_model('{"schema": 1,,}')
    path, _ = err.value.errors[0]
    assert path.startswith("line 1 col")


def test_schema_version_checked():
    doc = json.loads(minimal_text())
    doc["schema"] = 2
    with pytest.raises(ModelError) as err:
        parse_model(json.dumps(doc))
    assert any(p == "schema" for p, _ in err.value.errors)


def test_unknown_map_reference_is_located():
    doc = json.loads(minimal_text())
    doc["category"]["morphisms"]["i:empty>omega"]["map"] = "ghost"
    with pytest.raises(ModelError) as err:
        parse_model(json.dumps(doc))
    assert any("category.morphisms.i:empty>omega" == p for p, _ in err.value.errors)


def test_operad_requires_filtration():
    doc = json.loads(minimal_text())
    doc["operad"] = [{"name": "g", "inputs": ["omega"], "output": "omega",
                      "at": ["0", 1]}]
    with pytest.raises(ModelError) as err:
        parse_model(json.dumps(doc))
    assert any(p == "operad" for p, _ in err.value.errors)


def test_bad_event_structure_located():
    doc = json.loads(minimal_text())
    doc["events"]["omega"]["faces"] = {"1": {"e": ["a", "a"]}}
    with pytest.raises(ModelError) as err:
        parse_model(json.dumps(doc))
    assert any(p == "events.omega" for p, _ in err.value.errors)


def test_model_hash_is_stable():
    text = minimal_text()
    assert model_hash(text) == model_hash(text)
    assert model_hash(text) != model_hash(text + " ")


def test_fixture_loader_matches_parser():
    model = fixtures.load_fixture("four_events")
    assert sorted(model.category.objects) == ["e_a", "e_ab", "e_b", "empty"]
    assert model.filtration is not None and model.measure is not None


def test_degeneracies_survive_round_trip():
    from deltasite.categories import FiniteCategory
    from deltasite.events import point_event
    from deltasite.model_io import ModelDescription

    ground = frozenset(["a"])
    pt = point_event(ground, max_dim=2, name="pt")
    assert pt.degeneracies  # the terminal event stores degenerate simplices
    model = ModelDescription(ground, {"pt": pt}, {},
                             FiniteCategory({"pt": pt}, []))
    text = serialize_model(model)
    back = parse_model(text)
    assert back.events["pt"].degeneracies == pt.degeneracies
    assert back.events["pt"].faces == pt.faces
    assert serialize_model(back) == text
