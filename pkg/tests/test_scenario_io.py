import json
from pathlib import Path

import numpy as np
import pytest

from tvd import (
    Request,
    Scenario,
    ScenarioError,
    SymmetryTransform,
    canonical_dumps,
    parse_scenario,
    run_scenario,
    serialize_report,
    serialize_scenario,
    shipped_scenario_paths,
)

DATA_DIR = Path(__file__).parent / "data"

FROZEN_SCENARIO_BYTES = (
    b'{"dim":2,"matrices":{"hamiltonian":[[[1,0],[0,0.5]],[[0,-0.5],[2,0]]]},'
    b'"requests":[{"detector":"wigner","symmetry":"T"}],"schema_version":1,"seed":5,'
    b'"states":{"ground":[[1,0],[0,0]]},'
    b'"symmetries":[{"antilinear":true,"label":"T","unitary_part":[[[1,0],[0,0]],[[0,0],[1,0]]]}],'
    b'"tolerances":{"tau_zero":1.0000000000000001e-09}}\n'
)


def small_scenario() -> Scenario:
    return Scenario(
        dim=2,
        matrices={"hamiltonian": np.array([[1.0, 0.5j], [-0.5j, 2.0]])},
        symmetries={"T": SymmetryTransform(np.eye(2, dtype=complex), antilinear=True, label="T")},
        states={"ground": np.array([1.0, 0.0], dtype=complex)},
        requests=(Request("wigner", {"symmetry": "T"}),),
        tolerance_overrides={"tau_zero": 1e-9},
        seed=5,
    )


def corrupt(mutator) -> bytes:
    doc = json.loads(FROZEN_SCENARIO_BYTES)
    mutator(doc)
    return json.dumps(doc).encode()


def test_serialization_is_frozen_and_canonical():
    assert serialize_scenario(small_scenario()) == FROZEN_SCENARIO_BYTES


def test_round_trip_is_byte_identical():
    parsed = parse_scenario(FROZEN_SCENARIO_BYTES)
    assert serialize_scenario(parsed) == FROZEN_SCENARIO_BYTES
    assert parsed.dim == 2
    assert parsed.seed == 5
    assert parsed.requests[0].detector == "wigner"


def test_canonical_dumps_sorts_keys_and_terminates():
    raw = canonical_dumps({"b": 1, "a": [True, None, 0.5]})
    assert raw == b'{"a":[true,null,0.5],"b":1}\n'


def test_rejects_unknown_top_level_field():
    data = corrupt(lambda d: d.__setitem__("surprise", 1))
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    assert "surprise" in str(err.value)


def test_rejects_unknown_state_reference():
    data = corrupt(lambda d: d["requests"].append({"detector": "unitary_curie", "symmetry": "T", "state": "psi9", "time": 1.0}))
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    assert "psi9" in str(err.value)


def test_rejects_non_unitary_symmetry():
    data = corrupt(lambda d: d["symmetries"][0]["unitary_part"].__setitem__(0, [[9.0, 0.0], [0.0, 0.0]]))
    with pytest.raises(ScenarioError):
        parse_scenario(data)


def test_rejects_matrix_dimension_mismatch():
    data = corrupt(lambda d: d["matrices"].__setitem__("hamiltonian", [[[1.0, 0.0]]]))
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    assert "matrices.hamiltonian" in str(err.value)


def test_rejects_wrong_schema_version():
    data = corrupt(lambda d: d.__setitem__("schema_version", 2))
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    assert "schema_version" in str(err.value)


def test_rejects_duplicate_symmetry_label():
    def add_dup(d):
        d["symmetries"].append(dict(d["symmetries"][0]))

    with pytest.raises(ScenarioError) as err:
        parse_scenario(corrupt(add_dup))
    assert "duplicate" in str(err.value)


def test_rejects_unknown_detector():
    data = corrupt(lambda d: d["requests"].__setitem__(0, {"detector": "psychic"}))
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    assert "psychic" in str(err.value)


def test_rejects_request_without_required_matrix():
    def drop_matrix(d):
        del d["matrices"]["hamiltonian"]

    with pytest.raises(ScenarioError) as err:
        parse_scenario(corrupt(drop_matrix))
    assert "hamiltonian" in str(err.value)


def test_rejects_unnormalized_state():
    data = corrupt(lambda d: d["states"].__setitem__("ground", [[2.0, 0.0], [0.0, 0.0]]))
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    assert "not normalized" in str(err.value)


def test_rejects_malformed_complex_entry():
    data = corrupt(lambda d: d["states"].__setitem__("ground", [[1.0], [0.0, 0.0]]))
    with pytest.raises(ScenarioError):
        parse_scenario(data)


def test_rejects_invalid_json():
    with pytest.raises(ScenarioError) as err:
        parse_scenario(b"{not json")
    assert "invalid JSON" in str(err.value)


def test_empty_request_list_is_valid():
    data = corrupt(lambda d: d.__setitem__("requests", []))
    parsed = parse_scenario(data)
    assert parsed.requests == ()
    report = run_scenario(parsed, parsed.effective_tolerances())
    assert report.records == ()


def test_report_bytes_match_golden_file():
    path = shipped_scenario_paths()["cpt_link_toy"]
    scenario = parse_scenario(path.read_bytes())
    report = run_scenario(scenario, scenario.effective_tolerances())
    assert serialize_report(report) == (DATA_DIR / "golden_report.json").read_bytes()


def test_shipped_scenarios_round_trip():
    for path in shipped_scenario_paths().values():
        raw = path.read_bytes()
        assert serialize_scenario(parse_scenario(raw)) == raw
