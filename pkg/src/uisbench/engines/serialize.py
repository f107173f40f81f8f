"""Lossless JSON round-tripping for engine configurations.

Every system serializes to a plain dict with a ``kind`` discriminator;
floats pass through ``json`` untouched, so round-trips preserve full
precision.
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import ValidationError
from .base import Antecedent, EvidenceRamps, RampInterpreter
from .dshafer import DShaferSystem, SupportFunction
from .emycin import EmycinRule, EmycinSystem
from .fuzzy import FuzzyMembership, FuzzyRule, FuzzySystem
from .probabilistic import (IndependenceParams, IndependenceSystem,
                            RegressionParams, RegressionSystem)
from .prospector import ProspectorRule, ProspectorSystem

ENGINE_KINDS = ("emycin", "prospector", "independence", "regression", "fuzzy", "dshafer")

_MEMBERSHIP_FIELDS = ("absent_lo", "absent_hi", "present_lo", "present_hi",
                      "uncertain1_lo", "uncertain1_hi", "uncertain2_lo", "uncertain2_hi")


def _ramps_to_dict(ramps: EvidenceRamps) -> dict:
    return {"temp": {"lo": ramps.temp.lo, "hi": ramps.temp.hi},
            "pressure": {"lo": ramps.pressure.lo, "hi": ramps.pressure.hi}}


def _ramps_from_dict(d: Any) -> EvidenceRamps:
    return EvidenceRamps(RampInterpreter(d["temp"]["lo"], d["temp"]["hi"]),
                         RampInterpreter(d["pressure"]["lo"], d["pressure"]["hi"]))


def system_to_dict(system) -> dict:
    kind = system.kind
    if kind == "emycin":
        return {"kind": kind,
                "rules": [{"antecedent": r.antecedent.value, "cf": r.cf} for r in system.rules],
                "ramps": _ramps_to_dict(system.ramps),
                "activation_threshold": system.activation_threshold}
    if kind == "prospector":
        return {"kind": kind,
                "rules": [{"antecedent": r.antecedent.value, "ls_scale": r.ls_scale,
                           "ln_scale": r.ln_scale,
                           "prior_evidence_scale": r.prior_evidence_scale}
                          for r in system.rules],
                "conclusion_prior_scale": system.conclusion_prior_scale,
                "ramps": _ramps_to_dict(system.ramps)}
    if kind == "independence":
        p = system.params
        return {"kind": kind,
                "params": {"p_nn": p.p_nn, "p_nh": p.p_nh, "p_hn": p.p_hn, "p_hh": p.p_hh},
                "ramps": _ramps_to_dict(system.ramps)}
    if kind == "regression":
        p = system.params
        return {"kind": kind,
                "params": {"a": p.a, "b1": p.b1, "b2": p.b2},
                "ramps": _ramps_to_dict(system.ramps)}
    if kind == "fuzzy":
        return {"kind": kind,
                "temp_membership": {f: getattr(system.temp_membership, f)
                                    for f in _MEMBERSHIP_FIELDS},
                "pressure_membership": {f: getattr(system.pressure_membership, f)
                                        for f in _MEMBERSHIP_FIELDS},
                "rules": [{"antecedent": r.antecedent.value, "strength": r.strength}
                          for r in system.rules]}
    if kind == "dshafer":
        return {"kind": kind,
                "temp_anchors": list(system.temp_support.anchors),
                "pressure_anchors": list(system.pressure_support.anchors)}
    raise ValidationError(f"unknown engine kind {kind!r}", "kind")


def _antecedent(value: str, field: str) -> Antecedent:
    try:
        return Antecedent(value)
    except ValueError:
        raise ValidationError(f"unknown antecedent {value!r}", field) from None


def system_from_dict(data: Any):
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("system document must be an object with a 'kind' key", "kind")
    kind = data["kind"]
    try:
        if kind == "emycin":
            return EmycinSystem(
                rules=tuple(EmycinRule(_antecedent(r["antecedent"], f"rules[{i}].antecedent"),
                                       r["cf"])
                            for i, r in enumerate(data["rules"])),
                ramps=_ramps_from_dict(data["ramps"]),
                activation_threshold=data.get("activation_threshold", 0.0))
        if kind == "prospector":
            return ProspectorSystem(
                rules=tuple(ProspectorRule(_antecedent(r["antecedent"], f"rules[{i}].antecedent"),
                                           r["ls_scale"], r["ln_scale"],
                                           r["prior_evidence_scale"])
                            for i, r in enumerate(data["rules"])),
                conclusion_prior_scale=data["conclusion_prior_scale"],
                ramps=_ramps_from_dict(data["ramps"]))
        if kind == "independence":
            p = data["params"]
            return IndependenceSystem(
                IndependenceParams(p["p_nn"], p["p_nh"], p["p_hn"], p["p_hh"]),
                _ramps_from_dict(data["ramps"]))
        if kind == "regression":
            p = data["params"]
            return RegressionSystem(RegressionParams(p["a"], p["b1"], p["b2"]),
                                    _ramps_from_dict(data["ramps"]))
        if kind == "fuzzy":
            return FuzzySystem(
                temp_membership=FuzzyMembership(**{f: data["temp_membership"][f]
                                                   for f in _MEMBERSHIP_FIELDS}),
                pressure_membership=FuzzyMembership(**{f: data["pressure_membership"][f]
                                                       for f in _MEMBERSHIP_FIELDS}),
                rules=tuple(FuzzyRule(_antecedent(r["antecedent"], f"rules[{i}].antecedent"),
                                      r["strength"])
                            for i, r in enumerate(data["rules"])))
        if kind == "dshafer":
            return DShaferSystem(SupportFunction(tuple(data["temp_anchors"])),
                                 SupportFunction(tuple(data["pressure_anchors"])))
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}", str(exc.args[0])) from None
    except TypeError as exc:
        raise ValidationError(str(exc), "system") from None
    raise ValidationError(f"unknown engine kind {kind!r}", "kind")


def system_to_json(system) -> str:
    return json.dumps(system_to_dict(system), sort_keys=True)


def system_from_json(text: str):
    return system_from_dict(json.loads(text))
