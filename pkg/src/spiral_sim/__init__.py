"""Agent-based spiral-of-silence simulation with a dual opinion climate.

Agents sit on a torus lattice; each tick their willingness to speak moves
under a static media field and the summed willingness of neighbours within
a vision radius.
"""

from ._backend import DEFAULT_BACKEND
from .config import InitialSplit, ModelConfig, validate_config
from .dynamics import (
    Outcome,
    RunResult,
    classify_outcome,
    detect_stability,
    group_term,
    media_term,
    neighbor_offsets,
    run_sim,
    step,
)
from .experiments import (
    PRESETS,
    ReplicationSet,
    new_silent_series,
    preset,
    run_experiment,
    run_replications,
    summarize,
)
from .stats import StatResult, anova_oneway, linreg_r2, mean_sd, pearson_r, welch_t
from .world import WorldState, assign_media, init_world, place_agents, sample_initial_w

__version__ = "0.1.0"
