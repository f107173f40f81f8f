"""Six uncertain inference engines behind one ``infer`` interface."""

from __future__ import annotations

from typing import Union

from .base import (Antecedent, BeliefReport, EvidenceRamps, RampInterpreter,
                   SCALE_BELIEF_PAIR, SCALE_CF, SCALE_MEMBERSHIP,
                   SCALE_POSTERIOR_WITH_PRIOR, SCALE_PROBABILITY, Verdict, ramp_eval)
from .dshafer import (ANCHOR_BELIEFS, DShaferSystem, MassFunction2, SupportFunction,
                      VACUOUS, ds_combine, ds_support_from_reading)
from .emycin import EmycinRule, EmycinSystem, emycin_combine
from .fuzzy import FuzzyMembership, FuzzyRule, FuzzySystem, fuzzy_membership
from .probabilistic import (IndependenceParams, IndependenceSystem, RegressionParams,
                            RegressionSystem, independence_mixture)
from .prospector import (ProspectorRule, ProspectorSystem, RuleConsistencyWarning,
                         prospector_rule_posterior)
from .schema import engine_schemas
from .serialize import (ENGINE_KINDS, system_from_dict, system_from_json,
                        system_to_dict, system_to_json)

UisSystem = Union[EmycinSystem, ProspectorSystem, IndependenceSystem,
                  RegressionSystem, FuzzySystem, DShaferSystem]


def infer(system: UisSystem, temperature: float, pressure: float) -> BeliefReport:
    """Run the active engine on a pair of readings."""
    return system.infer(temperature, pressure)


__all__ = [
    "ANCHOR_BELIEFS", "Antecedent", "BeliefReport", "DShaferSystem", "EmycinRule",
    "EmycinSystem", "ENGINE_KINDS", "EvidenceRamps", "FuzzyMembership", "FuzzyRule",
    "FuzzySystem", "IndependenceParams", "IndependenceSystem", "MassFunction2",
    "ProspectorRule", "ProspectorSystem", "RampInterpreter", "RegressionParams",
    "RegressionSystem", "RuleConsistencyWarning", "SCALE_BELIEF_PAIR", "SCALE_CF",
    "SCALE_MEMBERSHIP", "SCALE_POSTERIOR_WITH_PRIOR", "SCALE_PROBABILITY",
    "SupportFunction", "UisSystem", "VACUOUS", "Verdict", "ds_combine",
    "ds_support_from_reading", "emycin_combine", "engine_schemas", "fuzzy_membership",
    "independence_mixture", "infer", "prospector_rule_posterior", "ramp_eval",
    "system_from_dict", "system_from_json", "system_to_dict", "system_to_json",
]
