"""Parameter-form schemas for each engine, served to UI clients.

One source of truth for legal ranges and field layout; editors render
forms from this document and the server re-validates on PUT.
"""

from __future__ import annotations

ANTECEDENT_CHOICES = ["temp", "pressure", "temp_and_pressure", "temp_or_pressure"]
FUZZY_ANTECEDENT_CHOICES = ["temp", "pressure", "temp_and_pressure"]

_RAMP_FIELDS = [
    {"path": "ramps.temp.lo", "label": "Temp ramp: certainly normal below", "type": "number"},
    {"path": "ramps.temp.hi", "label": "Temp ramp: certainly high above", "type": "number"},
    {"path": "ramps.pressure.lo", "label": "Pressure ramp: certainly normal below",
     "type": "number"},
    {"path": "ramps.pressure.hi", "label": "Pressure ramp: certainly high above",
     "type": "number"},
]

_MEMBERSHIP_FIELDS = [
    ("absent_lo", "Definitely absent: low"),
    ("absent_hi", "Definitely absent: high"),
    ("uncertain1_lo", "Uncertain interval 1: low"),
    ("uncertain1_hi", "Uncertain interval 1: high"),
    ("present_lo", "Definitely present: low"),
    ("present_hi", "Definitely present: high"),
    ("uncertain2_lo", "Uncertain interval 2: low"),
    ("uncertain2_hi", "Uncertain interval 2: high"),
]

_ANCHOR_LABELS = [
    "Bel(working)=0.999",
    "Bel(working)=0.5",
    "neutral",
    "Bel(malfunction)=0.5",
    "Bel(malfunction)=0.999",
]


def engine_schemas() -> dict:
    """Form schema per engine kind: scalar fields, rule lists, and constraints."""
    return {
        "emycin": {
            "label": "Certainty factors",
            "scale": "cf",
            "rules": {
                "path": "rules",
                "antecedents": ANTECEDENT_CHOICES,
                "fields": [{"path": "cf", "label": "Rule CF", "type": "number",
                            "min": -1.0, "max": 1.0}],
            },
            "fields": _RAMP_FIELDS + [
                {"path": "activation_threshold", "label": "Activation threshold",
                 "type": "number", "min": 0.0, "max": 0.99, "default": 0.0},
            ],
        },
        "prospector": {
            "label": "Odds-likelihood updating",
            "scale": "posterior-probability-with-prior",
            "rules": {
                "path": "rules",
                "antecedents": ANTECEDENT_CHOICES,
                "fields": [
                    {"path": "ls_scale", "label": "Sufficiency (log10)", "type": "number",
                     "min": -6.0, "max": 6.0},
                    {"path": "ln_scale", "label": "Necessity (log10)", "type": "number",
                     "min": -6.0, "max": 6.0},
                    {"path": "prior_evidence_scale", "label": "Evidence prior odds (log10)",
                     "type": "number", "min": -4.0, "max": 4.0},
                ],
            },
            "fields": _RAMP_FIELDS + [
                {"path": "conclusion_prior_scale", "label": "Conclusion prior odds (log10)",
                 "type": "number", "min": -4.0, "max": 4.0},
            ],
        },
        "independence": {
            "label": "Independent-evidence probabilities",
            "scale": "probability",
            "fields": _RAMP_FIELDS + [
                {"path": "params.p_nn", "label": "P(malfunction | both normal)",
                 "type": "number", "min": 0.0, "max": 1.0},
                {"path": "params.p_nh", "label": "P(malfunction | normal temp, high pressure)",
                 "type": "number", "min": 0.0, "max": 1.0},
                {"path": "params.p_hn", "label": "P(malfunction | high temp, normal pressure)",
                 "type": "number", "min": 0.0, "max": 1.0},
                {"path": "params.p_hh", "label": "P(malfunction | both high)",
                 "type": "number", "min": 0.0, "max": 1.0},
            ],
        },
        "regression": {
            "label": "Linear regression on probabilities",
            "scale": "probability",
            "fields": _RAMP_FIELDS + [
                {"path": "params.a", "label": "Intercept a", "type": "number",
                 "min": 0.0, "max": 1.0},
                {"path": "params.b1", "label": "Temperature weight b1", "type": "number",
                 "min": -1.0, "max": 1.0},
                {"path": "params.b2", "label": "Pressure weight b2", "type": "number",
                 "min": -1.0, "max": 1.0},
            ],
        },
        "fuzzy": {
            "label": "Fuzzy memberships",
            "scale": "membership-degree",
            "rules": {
                "path": "rules",
                "antecedents": FUZZY_ANTECEDENT_CHOICES,
                "fields": [{"path": "strength", "label": "Rule strength", "type": "number",
                            "min": 0.0, "max": 1.0}],
            },
            "fields": (
                [{"path": f"temp_membership.{f}", "label": f"Temperature — {label}",
                  "type": "number"} for f, label in _MEMBERSHIP_FIELDS]
                + [{"path": f"pressure_membership.{f}", "label": f"Pressure — {label}",
                    "type": "number"} for f, label in _MEMBERSHIP_FIELDS]
            ),
        },
        "dshafer": {
            "label": "Belief functions",
            "scale": "belief-pair",
            "fields": (
                [{"path": f"temp_anchors.{i}", "label": f"Temperature anchor {i + 1}: {label}",
                  "type": "number", "ordered_group": "temp_anchors"}
                 for i, label in enumerate(_ANCHOR_LABELS)]
                + [{"path": f"pressure_anchors.{i}", "label": f"Pressure anchor {i + 1}: {label}",
                    "type": "number", "ordered_group": "pressure_anchors"}
                   for i, label in enumerate(_ANCHOR_LABELS)]
            ),
        },
    }
