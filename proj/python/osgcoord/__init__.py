"""Online submodular multi-agent coordination.

Thin Python layer over the C++ core: the fixed-share expert forecaster, the
online sequential greedy coordinator, greedy/optimal baselines, regret
metrics, and the multi-robot target-tracking simulator.
"""

import json as _json

from ._core import (
    Forecaster,
    best_expert_switches,
    brute_force_opt,
    check_normalized_monotone_submodular,
    forecaster_equivalence_deviation,
    marginal_gain,
    regret_bound_rhs,
    run_scenario_json,
    sample_index,
    sg_select,
    tracking_objective,
)

__all__ = [
    "Forecaster",
    "best_expert_switches",
    "brute_force_opt",
    "check_normalized_monotone_submodular",
    "forecaster_equivalence_deviation",
    "marginal_gain",
    "regret_bound_rhs",
    "run_scenario",
    "run_scenario_json",
    "sample_index",
    "sg_select",
    "tracking_objective",
]


def run_scenario(config_text):
    """Run a scenario described by flat key = value config text.

    Returns the experiment summary as a dict.
    """
    return _json.loads(run_scenario_json(config_text))
