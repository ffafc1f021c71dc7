#pragma once

#include <optional>
#include <vector>

#include "covroute/engine.hpp"
#include "covroute/network.hpp"
#include "covroute/routing.hpp"

namespace covroute {

/// Cap applied to per-trip delays before averaging into mean_delay_capped;
/// doubles as the congestion threshold.
inline constexpr double kDelayCap = 500.0;

struct RunMetrics {
    double mean_travel_time = 0.0;   // censored trips enter at their lower bound
    double mean_delay = 0.0;         // censored trips enter at their lower bound
    double mean_delay_capped = 0.0;  // per-trip delays capped before averaging
    double completion_rate = 0.0;
    bool congested = false;
    // completed-only variants, for examining the censoring convention
    double mean_delay_completed = 0.0;
    double mean_travel_time_completed = 0.0;
};

struct LambdaHat {
    RouterKind router;
    std::optional<double> lambda_hat;  // nullopt = limit not found on the grid
    double grid_step = 0.0;

    bool found() const { return lambda_hat.has_value(); }
};

/// Shortest-path distance / v_max. Throws if dest is unreachable.
double free_flow_time(const Network& net, int origin, int dest, double v_max);

/// Aggregates a run. Per-trip delay is (arrival - spawn) - free_flow for
/// completed trips; censored trips contribute the lower bound
/// max(0, horizon - spawn - free_flow). Throws if nothing was spawned.
RunMetrics run_metrics(const SimResult& result, double cap = kDelayCap);

/// Congested iff mean_delay_capped >= threshold or completion_rate < 0.5.
bool classify_congested(const RunMetrics& metrics, double threshold = kDelayCap);

/// Field-wise mean; the congested flag is re-derived from the averages.
RunMetrics average_metrics(const std::vector<RunMetrics>& ms, double threshold = kDelayCap);

/// First-crossing rule over seed-averaged points sorted by lambda: the
/// largest grid lambda below which every point classifies non-congested.
/// All points congested -> throws (transition below grid); none congested
/// -> lambda_hat is nullopt (limit not found).
LambdaHat find_lambda_hat(const std::vector<std::pair<double, RunMetrics>>& cells,
                          const RouterKind& router, double threshold = kDelayCap);

}  // namespace covroute
