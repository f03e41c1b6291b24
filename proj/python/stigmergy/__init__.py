from ._core import (
    ConfigError,
    DegenerateStateError,
    SigmoidParams,
    attractiveness,
    choice_distribution,
    cl_update,
    default_config_json,
    ifd_distribution,
    initial_policy,
    pheromone_step,
    replicator_rhs,
    run_adaptation,
    run_config,
    simulate_occupancy,
    stigmergic_gain,
    verify_equivalence,
)

__all__ = [
    "ConfigError",
    "DegenerateStateError",
    "SigmoidParams",
    "attractiveness",
    "choice_distribution",
    "cl_update",
    "default_config_json",
    "ifd_distribution",
    "initial_policy",
    "pheromone_step",
    "replicator_rhs",
    "run_adaptation",
    "run_config",
    "simulate_occupancy",
    "stigmergic_gain",
    "verify_equivalence",
]
