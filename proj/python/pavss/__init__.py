"""Viterbi state selection for waveguide-fed pinching-antenna arrays."""

from ._pavss import (
    ChannelMatrix,
    SystemConfig,
    accumulated_signal,
    best_singleton,
    brute_force_select,
    build_channel_matrix,
    dbm_to_watts,
    greedy_pgga_select,
    maxmin_metric,
    pa_positions,
    quantize_phase,
    rate_report,
    reference_config,
    run_convergence,
    run_sweep,
    sample_users,
    state_of,
    verify,
    vss_select,
    watts_to_dbm,
)

__all__ = [
    "ChannelMatrix",
    "SystemConfig",
    "accumulated_signal",
    "best_singleton",
    "brute_force_select",
    "build_channel_matrix",
    "dbm_to_watts",
    "greedy_pgga_select",
    "maxmin_metric",
    "pa_positions",
    "quantize_phase",
    "rate_report",
    "reference_config",
    "run_convergence",
    "run_sweep",
    "sample_users",
    "state_of",
    "verify",
    "vss_select",
    "watts_to_dbm",
]
