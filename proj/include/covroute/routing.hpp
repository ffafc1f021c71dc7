#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "covroute/network.hpp"
#include "covroute/rng.hpp"

namespace covroute {

/// Parameters of the coverage cost J = alpha*phi + (1-alpha)*rho.
struct CoverageParams {
    double alpha = 0.85;
    double eta_crit = 0.2;
    double sigma = 10.0;

    void validate() const;
};

enum class RouterType { Coverage, ShortestPath, ModifiedShortestPath };

struct RouterKind {
    RouterType type = RouterType::Coverage;
    CoverageParams params{};

    static RouterKind coverage(double alpha, double eta_crit = 0.2, double sigma = 10.0) {
        return {RouterType::Coverage, {alpha, eta_crit, sigma}};
    }
    static RouterKind shortest_path() { return {RouterType::ShortestPath, {}}; }
    static RouterKind modified_shortest_path() { return {RouterType::ModifiedShortestPath, {}}; }
};

std::string router_name(const RouterKind& r);          // coverage | sp | msp
RouterType router_type_from_name(const std::string&);  // throws on unknown name

/// Normalization constants for phi: the largest network distance from any
/// junction to the destination, and the longest road in the network.
struct NormConstants {
    double max_dest_distance = 0.0;  // per destination
    double max_edge_length = 0.0;    // network-global
};

struct PhiValue {
    double value = 1.0;
    bool reachable = true;
};

struct CostBreakdown {
    int road_id = -1;
    double phi = 0.0;
    double rho = 0.0;
    double j_cost = 0.0;
};

/// Distance sensory function for one candidate road:
/// (dist[road.to] + road.length) / (max_dest_distance + max_edge_length).
/// An unreachable road.to yields {1, false} so selection can deprioritize it.
PhiValue phi(const std::vector<double>& dist_map, const Road& road, const NormConstants& norms);

/// Congestion sensory function: eta below eta_crit, else 1 - exp(-sigma*eta).
/// The jump at eta_crit is intentional. Throws if eta is outside [0,1].
double rho(double eta, const CoverageParams& params);

/// Convex combination alpha*phi + (1-alpha)*rho.
double cost(double phi_val, double rho_val, double alpha);

CostBreakdown cost_breakdown(const Road& road, const std::vector<double>& dist_map,
                             const NormConstants& norms, const CoverageParams& params);

/// Costs within this tolerance count as tied; ties break uniformly at random.
inline constexpr double kCostTieTol = 1e-12;
/// Tie tolerance for meter-valued comparisons (shortest-path candidates).
inline constexpr double kDistTieTol = 1e-9;

/// Coverage selection at `junction` for a vehicle bound for the dist_map's
/// destination. Candidates are the outgoing roads except the exact reverse
/// of `arrival_road` (U-turns allowed only from dead ends). Reachable
/// candidates always beat unreachable ones; ties split uniformly via rng.
int choose_next_road(const Network& net, int junction, std::optional<int> arrival_road,
                     const std::vector<double>& dist_map, const NormConstants& norms,
                     const CoverageParams& params, Rng& rng);

/// Dijkstra-successor selection: minimize dist_map[road.to] + road.length,
/// ties uniform at random. Throws if the destination is unreachable.
int shortest_path_next(const Network& net, int junction,
                       const std::vector<double>& dist_map, Rng& rng);

/// Like shortest_path_next, but among the distance minimizers prefers the
/// lowest-occupancy road; remaining ties uniform at random.
int modified_shortest_next(const Network& net, int junction,
                           const std::vector<double>& dist_map, Rng& rng);

/// Per-destination distance maps and norm constants, computed lazily and
/// cached for the lifetime of one simulation run.
class DistanceCache {
public:
    explicit DistanceCache(const Network& net);

    const std::vector<double>& distances(int dest);
    const NormConstants& norms(int dest);
    double max_edge_length() const { return max_edge_length_; }

private:
    const Network* net_;
    double max_edge_length_ = 0.0;
    std::unordered_map<int, std::vector<double>> dist_;
    std::unordered_map<int, NormConstants> norms_;
};

/// Router dispatch used by the engine: picks the next road out of `junction`
/// for a vehicle heading to `dest`. `candidate_filter_full` drops roads with
/// load == capacity from the candidate set (used at network entry).
int route_next(const Network& net, const RouterKind& router, int dest, int junction,
               std::optional<int> arrival_road, DistanceCache& cache, Rng& rng,
               bool exclude_full = false);

}  // namespace covroute
