import pytest
from fastapi.testclient import TestClient

from uisbench.agents import AgentProfile, honest_parameters
from uisbench.domain import default_readings, default_table, exact_posterior
from uisbench.engines import ENGINE_KINDS, system_to_dict
from uisbench.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=tmp_path / "sessions")
    with TestClient(app) as c:
        yield c


def _drive_learning(client, sid):
    table, readings = default_table(), default_readings()
    while True:
        state = client.get(f"/sessions/{sid}").json()
        if state["phase"] != "Learning":
            return state
        trial = client.get(f"/sessions/{sid}/trial").json()
        post = exact_posterior(table, readings, trial["temperature"], trial["pressure"])
        verdict = "M" if post >= 0.5 else "W"
        client.post(f"/sessions/{sid}/answer", json={"verdict": verdict})


class TestMetaEndpoints:
    def test_engine_list(self, client):
        assert client.get("/engines").json() == {"engines": list(ENGINE_KINDS)}

    def test_schemas_served(self, client):
        schemas = client.get("/schemas").json()
        assert sorted(schemas) == sorted(ENGINE_KINDS)

    def test_domain_readings_exposed_without_joint(self, client):
        doc = client.get("/domain").json()
        assert "readings" in doc
        assert "joint" not in doc


class TestSessionEndpoints:
    def test_create(self, client):
        res = client.post("/sessions", json={"engine": "emycin", "seed": 3})
        assert res.status_code == 201
        body = res.json()
        assert body["phase"] == "Learning"
        assert body["engine"] == "emycin"

    def test_create_invalid_engine(self, client):
        res = client.post("/sessions", json={"engine": "nope"})
        assert res.status_code == 400
        assert res.json()["code"] == "validation"

    def test_unknown_session_404(self, client):
        res = client.get("/sessions/snope")
        assert res.status_code == 404
        assert res.json()["code"] == "not_found"

    def test_trial_and_answer_cycle(self, client):
        sid = client.post("/sessions", json={"engine": "fuzzy", "seed": 1}).json()["id"]
        trial = client.get(f"/sessions/{sid}/trial").json()
        assert {"temperature", "pressure", "trial_index"} <= set(trial)
        feedback = client.post(f"/sessions/{sid}/answer", json={"verdict": "M"}).json()
        assert feedback["correct_answer"] in ("M", "W")
        assert feedback["trials_completed"] == 1

    def test_answer_without_trial_conflicts(self, client):
        sid = client.post("/sessions", json={"engine": "fuzzy", "seed": 1}).json()["id"]
        res = client.post(f"/sessions/{sid}/answer", json={"verdict": "M"})
        assert res.status_code == 409
        assert res.json()["code"] == "no_staged_trial"

    def test_bad_verdict_rejected(self, client):
        sid = client.post("/sessions", json={"engine": "fuzzy", "seed": 1}).json()["id"]
        client.get(f"/sessions/{sid}/trial")
        res = client.post(f"/sessions/{sid}/answer", json={"verdict": "X"})
        assert res.status_code == 400

    def test_wrong_phase_put(self, client):
        sid = client.post("/sessions", json={"engine": "emycin", "seed": 2}).json()["id"]
        res = client.put(f"/sessions/{sid}/system", json={"kind": "emycin"})
        assert res.status_code == 409
        assert res.json()["code"] == "wrong_phase"

    def test_get_system_before_put_is_404(self, client):
        sid = client.post("/sessions", json={"engine": "emycin", "seed": 2}).json()["id"]
        assert client.get(f"/sessions/{sid}/system").status_code == 404


class TestFullProtocolOverHttp:
    @pytest.mark.parametrize("kind", ["independence", "dshafer"])
    def test_complete_session(self, client, kind):
        table, readings = default_table(), default_readings()
        sid = client.post("/sessions", json={"engine": kind, "seed": 42}).json()["id"]
        state = _drive_learning(client, sid)
        assert state["phase"] == "Building"

        doc = system_to_dict(honest_parameters(AgentProfile(kind), table, readings))
        res = client.put(f"/sessions/{sid}/system", json=doc)
        assert res.status_code == 200
        assert res.json()["phase"] == "Tuning"

        fetched = client.get(f"/sessions/{sid}/system").json()
        assert fetched == doc   # lossless PUT/GET round-trip

        probe = client.post(f"/sessions/{sid}/probe",
                            json={"temperature": 200.0, "pressure": 82.0}).json()
        assert probe["verdict"] in ("M", "W")

        summary = client.post(f"/sessions/{sid}/finalize").json()
        assert len(summary["records"]) == 30
        assert summary["trials_to_tune"] == 1
        assert client.get(f"/sessions/{sid}").json()["phase"] == "Done"

    def test_validation_error_names_field(self, client):
        table, readings = default_table(), default_readings()
        sid = client.post("/sessions", json={"engine": "independence", "seed": 8}).json()["id"]
        _drive_learning(client, sid)
        doc = system_to_dict(honest_parameters(AgentProfile("independence"),
                                               table, readings))
        doc["params"]["p_nn"] = 2.0
        res = client.put(f"/sessions/{sid}/system", json=doc)
        assert res.status_code == 400
        body = res.json()
        assert body["code"] == "validation"
        assert body["field"] == "p_nn"

    def test_sessions_are_independent(self, client):
        a = client.post("/sessions", json={"engine": "emycin", "seed": 1}).json()["id"]
        b = client.post("/sessions", json={"engine": "fuzzy", "seed": 1}).json()["id"]
        client.get(f"/sessions/{a}/trial")
        state_b = client.get(f"/sessions/{b}").json()
        assert state_b["learning_trials"] == 0
        assert not state_b["trial_staged"]
