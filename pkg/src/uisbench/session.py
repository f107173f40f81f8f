"""Interactive participant protocol: phase machine plus event-sourced store.

A session moves forward through Learning -> Building -> Tuning -> Testing ->
Done.  Every state change appends one JSON event to a per-session log and
rewrites a snapshot; replaying the log reproduces the snapshot bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .domain import (Case, CellLabel, ContingencyTable, CRITERION_CORRECT,
                     CRITERION_WINDOW, LEARNING_TRIAL_CAP, ReadingModel, sample_case)
from .engines import (BeliefReport, ENGINE_KINDS, Verdict, system_from_dict,
                      system_to_dict)
from .errors import PhaseError, UisError, ValidationError
from .experiment import classify_trial

LEARNING = "Learning"
BUILDING = "Building"
TUNING = "Tuning"
TESTING = "Testing"
DONE = "Done"
PHASES = (LEARNING, BUILDING, TUNING, TESTING, DONE)

TEST_TRIALS = 30


class NoStagedTrialError(UisError):
    """Answer submitted without a staged learning trial."""


def _case_to_dict(case: Case) -> dict:
    return {"temperature": case.temperature, "pressure": case.pressure,
            "cell": {"temp_high": case.cell.temp_high,
                     "pressure_high": case.cell.pressure_high,
                     "malfunction": case.cell.malfunction}}


def _case_from_dict(d: dict) -> Case:
    c = d["cell"]
    return Case(d["temperature"], d["pressure"],
                CellLabel(c["temp_high"], c["pressure_high"], c["malfunction"]))


def _report_to_dict(report: BeliefReport) -> dict:
    return {"scale": report.scale, "values": dict(report.values),
            "verdict": report.verdict.value}


@dataclass
class SessionState:
    id: str
    engine_kind: str
    seed: int
    phase: str = LEARNING
    history: list[dict] = field(default_factory=list)   # serialized TrialRecords
    staged: dict | None = None                          # serialized Case
    system: dict | None = None                          # serialized UisSystem
    probes: list[dict] = field(default_factory=list)
    test: dict | None = None
    draws: int = 0

    def to_dict(self) -> dict:
        return {"id": self.id, "engine": self.engine_kind, "seed": self.seed,
                "phase": self.phase, "history": self.history, "staged": self.staged,
                "system": self.system, "probes": self.probes, "test": self.test,
                "draws": self.draws}

    @classmethod
    def from_dict(cls, d: dict) -> "SessionState":
        return cls(id=d["id"], engine_kind=d["engine"], seed=d["seed"], phase=d["phase"],
                   history=list(d["history"]), staged=d["staged"], system=d["system"],
                   probes=list(d["probes"]), test=d["test"], draws=d["draws"])

    def correct_in_window(self) -> int:
        recent = self.history[-CRITERION_WINDOW:]
        return sum(1 for r in recent if r["correct"])

    def criterion_met(self) -> bool:
        return (len(self.history) >= CRITERION_WINDOW
                and self.correct_in_window() >= CRITERION_CORRECT)

    def public_dict(self) -> dict:
        """State view that never exposes hidden ground truth."""
        return {"id": self.id, "engine": self.engine_kind, "seed": self.seed,
                "phase": self.phase, "learning_trials": len(self.history),
                "correct_in_window": self.correct_in_window(),
                "criterion_met": self.criterion_met(),
                "trial_staged": self.staged is not None,
                "has_system": self.system is not None,
                "probe_count": len(self.probes),
                "test": self.test}


def apply_event(state: SessionState | None, event: dict) -> SessionState:
    """Pure fold step: event payloads carry everything, nothing is recomputed."""
    etype = event["type"]
    if etype == "created":
        return SessionState(id=event["id"], engine_kind=event["engine"], seed=event["seed"])
    assert state is not None, "event log must start with 'created'"
    if etype == "staged":
        state.staged = event["case"]
        state.draws += 1
    elif etype == "answered":
        state.history.append(event["record"])
        state.staged = None
    elif etype == "phase":
        state.phase = event["to"]
    elif etype == "system_put":
        state.system = event["system"]
    elif etype == "probed":
        state.probes.append(event["probe"])
    elif etype == "finalized":
        state.test = event["summary"]
        state.draws += event["draws_used"]
    else:
        raise ValidationError(f"unknown event type {etype!r}", "type")
    return state


def replay_events(events: list[dict]) -> SessionState:
    state: SessionState | None = None
    for event in events:
        state = apply_event(state, event)
    if state is None:
        raise ValidationError("empty event log", "events")
    return state


class SessionStore:
    """Append-only JSONL event logs with a latest-state snapshot per session."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _log_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.log.jsonl"

    def _snapshot_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.snapshot.json"

    def next_id(self) -> str:
        counter_path = self.root / "counter"
        n = int(counter_path.read_text()) if counter_path.exists() else 0
        counter_path.write_text(str(n + 1))
        return f"s{n + 1:04d}"

    def append(self, session_id: str, event: dict, state: SessionState) -> None:
        with self._log_path(session_id).open("a") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
        self._snapshot_path(session_id).write_text(
            json.dumps(state.to_dict(), sort_keys=True))

    def events(self, session_id: str) -> list[dict]:
        path = self._log_path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        return [json.loads(line) for line in path.read_text().splitlines() if line]

    def snapshot(self, session_id: str) -> dict:
        path = self._snapshot_path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        return json.loads(path.read_text())

    def list_ids(self) -> list[str]:
        return sorted(p.name[:-len(".log.jsonl")] for p in self.root.glob("*.log.jsonl"))


class Session:
    """One participant session bound to a domain and a store.

    Callers must serialize access per session; distinct sessions are
    independent.
    """

    def __init__(self, state: SessionState, table: ContingencyTable,
                 readings: ReadingModel, store: SessionStore):
        self.state = state
        self.table = table
        self.readings = readings
        self.store = store

    # -- construction -----------------------------------------------------

    @classmethod
    def create(cls, engine_kind: str, seed: int, table: ContingencyTable,
               readings: ReadingModel, store: SessionStore) -> "Session":
        if engine_kind not in ENGINE_KINDS:
            raise ValidationError(f"unknown engine kind {engine_kind!r}", "engine")
        if not isinstance(seed, int):
            raise ValidationError("seed must be an integer", "seed")
        session_id = store.next_id()
        event = {"type": "created", "id": session_id, "engine": engine_kind, "seed": seed}
        state = apply_event(None, event)
        store.append(session_id, event, state)
        return cls(state, table, readings, store)

    @classmethod
    def load(cls, session_id: str, table: ContingencyTable, readings: ReadingModel,
             store: SessionStore) -> "Session":
        return cls(SessionState.from_dict(store.snapshot(session_id)), table, readings, store)

    # -- internals ---------------------------------------------------------

    def _emit(self, event: dict) -> None:
        apply_event(self.state, event)
        self.store.append(self.state.id, event, self.state)

    def _draw_case(self) -> Case:
        # One fresh, seedable stream per draw: deterministic for a given
        # (session seed, draw index) even across restarts.
        rng = np.random.default_rng((self.state.seed, self.state.draws))
        return sample_case(self.table, self.readings, rng)

    def _require_phase(self, *allowed: str) -> None:
        if self.state.phase not in allowed:
            raise PhaseError(
                f"operation requires phase {' or '.join(allowed)}, "
                f"session is in {self.state.phase}", self.state.phase)

    def _advance(self, phase: str) -> None:
        self._emit({"type": "phase", "to": phase})

    # -- protocol operations ------------------------------------------------

    def next_learning_trial(self) -> dict:
        """Stage (or re-serve) the current learning case; the label stays hidden."""
        self._require_phase(LEARNING)
        if self.state.staged is None:
            case = self._draw_case()
            self._emit({"type": "staged", "case": _case_to_dict(case)})
        staged = self.state.staged
        return {"temperature": staged["temperature"], "pressure": staged["pressure"],
                "trial_index": len(self.state.history)}

    def submit_answer(self, verdict: Verdict) -> dict:
        self._require_phase(LEARNING)
        if self.state.staged is None:
            raise NoStagedTrialError("no staged trial; fetch the next trial first")
        case = _case_from_dict(self.state.staged)
        correct = verdict == case.cell.verdict
        record = {"temperature": case.temperature, "pressure": case.pressure,
                  "cell": self.state.staged["cell"], "answer": verdict.value,
                  "correct": correct, "trial_index": len(self.state.history)}
        self._emit({"type": "answered", "record": record})
        if self.state.criterion_met() or len(self.state.history) >= LEARNING_TRIAL_CAP:
            self._advance(BUILDING)
        return {"correct": correct, "correct_answer": case.cell.verdict.value,
                "trials_completed": len(self.state.history),
                "correct_in_window": self.state.correct_in_window(),
                "criterion_met": self.state.criterion_met(),
                "phase": self.state.phase}

    def put_system(self, system_doc: dict) -> dict:
        self._require_phase(BUILDING, TUNING)
        system = system_from_dict(system_doc)   # raises ValidationError field-by-field
        if system.kind != self.state.engine_kind:
            raise ValidationError(
                f"system kind {system.kind!r} does not match session engine "
                f"{self.state.engine_kind!r}", "kind")
        self._emit({"type": "system_put", "system": system_to_dict(system)})
        if self.state.phase == BUILDING:
            self._advance(TUNING)
        return {"phase": self.state.phase}

    def get_system(self) -> dict | None:
        return self.state.system

    def test_case(self, temperature: float, pressure: float) -> dict:
        self._require_phase(TUNING)
        if not (math.isfinite(temperature) and math.isfinite(pressure)):
            raise ValidationError("readings must be finite", "temperature")
        system = system_from_dict(self.state.system)
        report = system.infer(temperature, pressure)
        probe = {"temperature": temperature, "pressure": pressure,
                 "report": _report_to_dict(report)}
        self._emit({"type": "probed", "probe": probe})
        return probe["report"]

    def finalize(self) -> dict:
        self._require_phase(TUNING)
        self._advance(TESTING)
        system = system_from_dict(self.state.system)
        rng = np.random.default_rng((self.state.seed, self.state.draws, 1))
        records = []
        per_type = {"consistent": [0, 0], "mixed": [0, 0]}
        hits = 0
        for i in range(TEST_TRIALS):
            case = sample_case(self.table, self.readings, rng)
            report = system.infer(case.temperature, case.pressure)
            correct = report.verdict == case.cell.verdict
            etype = classify_trial(case)
            per_type[etype][0] += int(correct)
            per_type[etype][1] += 1
            hits += int(correct)
            records.append({"temperature": case.temperature, "pressure": case.pressure,
                            "evidence_type": etype, "answer": report.verdict.value,
                            "correct_answer": case.cell.verdict.value, "correct": correct})
        summary = {
            "accuracy": hits / TEST_TRIALS,
            "consistent_accuracy": (per_type["consistent"][0] / per_type["consistent"][1]
                                    if per_type["consistent"][1] else None),
            "mixed_accuracy": (per_type["mixed"][0] / per_type["mixed"][1]
                               if per_type["mixed"][1] else None),
            "trials_to_tune": len(self.state.probes),
            "records": records,
        }
        self._emit({"type": "finalized", "summary": summary, "draws_used": TEST_TRIALS})
        self._advance(DONE)
        return summary
