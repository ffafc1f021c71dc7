#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covroute/engine.hpp"
#include "covroute/metrics.hpp"
#include "covroute/network.hpp"

namespace covroute {

struct SweepSpec {
    std::string topology;  // preset name or file label, recorded in every cell
    Network net;
    std::vector<double> alphas;   // sorted ascending
    std::vector<double> lambdas;  // sorted ascending
    int replicates = 3;
    SimConfig base;               // lambda/seed/router fields are overridden per cell
    std::vector<RouterKind> routers = {RouterKind::coverage(0.85)};
    int jobs = 1;

    void validate() const;
};

struct SweepCell {
    std::string topology;
    RouterKind router;
    double alpha = 0.0;
    double lambda = 0.0;
    int replicate = 0;
    std::uint64_t seed = 0;
    RunMetrics metrics;
    bool failed = false;
};

/// Deterministic per-cell seed from the base seed and grid indices. Routers
/// share the seed of their (alpha, lambda, replicate) triple so comparisons
/// are paired.
std::uint64_t derive_seed(std::uint64_t base, std::size_t alpha_idx,
                          std::size_t lambda_idx, std::size_t replicate_idx);

/// One simulation per (alpha, lambda, replicate, router) cell. Output is in
/// canonical order (alpha, lambda, replicate, router) regardless of the
/// worker pool schedule; failed runs are kept as marked cells.
std::vector<SweepCell> run_sweep(const SweepSpec& spec);

/// Seed-averaged lambda_hat for one router (and alpha, when coverage) from
/// sweep cells.
LambdaHat lambda_hat_from_cells(const std::vector<SweepCell>& cells,
                                const RouterKind& router,
                                std::optional<double> alpha = std::nullopt);

struct AlphaRange {
    std::vector<double> alphas;  // the argmax set, ascending
    double lo = 0.0;
    double hi = 0.0;
    bool contiguous = true;
};

/// The set of alphas achieving the maximum lambda_hat (limit-not-found
/// counts as +infinity; alphas congested everywhere are skipped). Throws if
/// every alpha is congested everywhere.
AlphaRange optimal_alpha(const std::vector<SweepCell>& cells,
                         RouterType router = RouterType::Coverage);

struct RouterCurvePoint {
    double lambda = 0.0;
    RunMetrics metrics;  // averaged over replicates
};

struct RouterComparison {
    RouterKind router;
    std::vector<RouterCurvePoint> curve;
    LambdaHat lambda_hat;
};

/// Delay-vs-lambda curves plus lambda_hat for each router at a fixed
/// coverage alpha. Scanning stops after the first congested grid point,
/// which the first-crossing rule makes equivalent to the full grid.
std::vector<RouterComparison> compare_routers(const Network& net,
                                              const std::vector<double>& lambda_grid,
                                              double alpha_star, int replicates,
                                              const SimConfig& base, int jobs = 1,
                                              const std::vector<RouterKind>& routers = {
                                                  RouterKind::shortest_path(),
                                                  RouterKind::modified_shortest_path(),
                                                  RouterKind::coverage(0.85)});

// --- artifacts ---

/// Columns: topology,router,alpha,lambda,replicate,seed,mean_travel_time,
/// mean_delay,mean_delay_capped,completion_rate,congested,status.
void emit_csv(const std::vector<SweepCell>& cells, const std::string& path);
std::vector<SweepCell> parse_csv(const std::string& path);

/// Dense alpha x lambda matrix of replicate-averaged mean_delay_capped:
/// one header row of lambda values, one header column of alpha values.
/// Cells must all belong to a single router.
void emit_heatmap_grid(const std::vector<SweepCell>& cells, const std::string& path);

}  // namespace covroute
