"""Traffic network simulator with congestion-aware coverage routing.

The heavy lifting lives in the compiled `_covroute` extension; this package
re-exports its surface.
"""

from covroute._covroute import (  # noqa: F401
    AlphaRange,
    CoverageParams,
    Junction,
    LambdaHat,
    Network,
    NetworkStats,
    Road,
    RouterKind,
    RunMetrics,
    SimConfig,
    SimResult,
    SweepCell,
    TripRecord,
    __version__,
    build_grid,
    build_random_rewire,
    build_scale_free,
    build_spiderweb,
    classify_congested,
    cost,
    derive_capacity,
    derive_seed,
    emit_csv,
    emit_heatmap_grid,
    free_flow_time,
    lambda_hat_from_cells,
    load_network,
    network_stats,
    optimal_alpha,
    parse_csv,
    preset_names,
    preset_network,
    rho,
    router,
    run_metrics,
    run_simulation,
    run_sweep,
    save_network,
    shortest_distance_map,
    write_trip_log,
)
