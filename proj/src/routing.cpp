#include "covroute/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covroute {

void CoverageParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0,1]");
    if (!(eta_crit > 0.0 && eta_crit < 1.0))
        throw std::invalid_argument("eta_crit must be in (0,1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}

std::string router_name(const RouterKind& r) {
    switch (r.type) {
        case RouterType::Coverage: return "coverage";
        case RouterType::ShortestPath: return "sp";
        case RouterType::ModifiedShortestPath: return "msp";
    }
    return "?";
}

RouterType router_type_from_name(const std::string& name) {
    if (name == "coverage") return RouterType::Coverage;
    if (name == "sp") return RouterType::ShortestPath;
    if (name == "msp") return RouterType::ModifiedShortestPath;
    throw std::invalid_argument("unknown router: " + name + " (expected coverage|sp|msp)");
}

PhiValue phi(const std::vector<double>& dist_map, const Road& road, const NormConstants& norms) {
    const double d = dist_map[static_cast<std::size_t>(road.to)];
    if (d == kUnreachable) return {1.0, false};
    return {(d + road.length) / (norms.max_dest_distance + norms.max_edge_length), true};
}

double rho(double eta, const CoverageParams& params) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must be in [0,1]");
    if (eta < params.eta_crit) return eta;
    return 1.0 - std::exp(-params.sigma * eta);
}

double cost(double phi_val, double rho_val, double alpha) {
    return alpha * phi_val + (1.0 - alpha) * rho_val;
}

CostBreakdown cost_breakdown(const Road& road, const std::vector<double>& dist_map,
                             const NormConstants& norms, const CoverageParams& params) {
    const PhiValue p = phi(dist_map, road, norms);
    const double r = rho(road.occupancy(), params);
    return {road.id, p.value, r, cost(p.value, r, params.alpha)};
}

namespace {

// Uniform pick among candidates whose key is within tol of the minimum.
// Candidates must be in ascending road-id order; a single minimizer does
// not consume an rng draw.
int pick_min(const std::vector<std::pair<int, double>>& cands, double tol, Rng& rng) {
    double best = cands.front().second;
    for (const auto& [id, v] : cands) best = std::min(best, v);
    std::vector<int> tied;
    for (const auto& [id, v] : cands)
        if (v - best <= tol) tied.push_back(id);
    if (tied.size() == 1) return tied.front();
    return tied[rng.uniform_index(tied.size())];
}

}  // namespace

int choose_next_road(const Network& net, int junction, std::optional<int> arrival_road,
                     const std::vector<double>& dist_map, const NormConstants& norms,
                     const CoverageParams& params, Rng& rng) {
    const auto& out = net.out_roads(junction);
    if (out.empty()) throw std::runtime_error("junction has no outgoing roads");

    // forbid the immediate U-turn unless it is the only exit
    int reverse = -1;
    if (arrival_road) reverse = net.reverse_id[static_cast<std::size_t>(*arrival_road)];

    std::vector<std::pair<int, double>> reachable, unreachable;
    for (int rid : out) {
        if (rid == reverse && out.size() > 1) continue;
        const auto& road = net.roads[static_cast<std::size_t>(rid)];
        const PhiValue p = phi(dist_map, road, norms);
        const double j = cost(p.value, rho(road.occupancy(), params), params.alpha);
        (p.reachable ? reachable : unreachable).push_back({rid, j});
    }
    // a reachable candidate always beats an unreachable one, whatever its J
    auto& cands = reachable.empty() ? unreachable : reachable;
    return pick_min(cands, kCostTieTol, rng);
}

int shortest_path_next(const Network& net, int junction,
                       const std::vector<double>& dist_map, Rng& rng) {
    const auto& out = net.out_roads(junction);
    if (out.empty()) throw std::runtime_error("junction has no outgoing roads");
    std::vector<std::pair<int, double>> cands;
    for (int rid : out) {
        const auto& road = net.roads[static_cast<std::size_t>(rid)];
        const double d = dist_map[static_cast<std::size_t>(road.to)];
        if (d == kUnreachable) continue;
        cands.push_back({rid, d + road.length});
    }
    if (cands.empty()) throw std::runtime_error("destination unreachable from junction");
    return pick_min(cands, kDistTieTol, rng);
}

int modified_shortest_next(const Network& net, int junction,
                           const std::vector<double>& dist_map, Rng& rng) {
    const auto& out = net.out_roads(junction);
    if (out.empty()) throw std::runtime_error("junction has no outgoing roads");
    std::vector<std::pair<int, double>> cands;
    double best = kUnreachable;
    for (int rid : out) {
        const auto& road = net.roads[static_cast<std::size_t>(rid)];
        const double d = dist_map[static_cast<std::size_t>(road.to)];
        if (d == kUnreachable) continue;
        cands.push_back({rid, d + road.length});
        best = std::min(best, d + road.length);
    }
    if (cands.empty()) throw std::runtime_error("destination unreachable from junction");
    // among the distance minimizers, take the emptiest road
    std::vector<std::pair<int, double>> minimizers;
    for (const auto& [rid, v] : cands) {
        if (v - best <= kDistTieTol)
            minimizers.push_back({rid, net.roads[static_cast<std::size_t>(rid)].occupancy()});
    }
    return pick_min(minimizers, kCostTieTol, rng);
}

DistanceCache::DistanceCache(const Network& net) : net_(&net) {
    for (const auto& r : net.roads) max_edge_length_ = std::max(max_edge_length_, r.length);
}

const std::vector<double>& DistanceCache::distances(int dest) {
    auto it = dist_.find(dest);
    if (it == dist_.end())
        it = dist_.emplace(dest, shortest_distance_map(*net_, dest)).first;
    return it->second;
}

const NormConstants& DistanceCache::norms(int dest) {
    auto it = norms_.find(dest);
    if (it == norms_.end()) {
        const auto& d = distances(dest);
        double max_d = 0.0;
        for (double v : d)
            if (v != kUnreachable) max_d = std::max(max_d, v);
        it = norms_.emplace(dest, NormConstants{max_d, max_edge_length_}).first;
    }
    return it->second;
}

int route_next(const Network& net, const RouterKind& router, int dest, int junction,
               std::optional<int> arrival_road, DistanceCache& cache, Rng& rng,
               bool exclude_full) {
    const auto& dist = cache.distances(dest);
    if (!exclude_full) {
        switch (router.type) {
            case RouterType::Coverage:
                return choose_next_road(net, junction, arrival_road, dist, cache.norms(dest),
                                        router.params, rng);
            case RouterType::ShortestPath:
                return shortest_path_next(net, junction, dist, rng);
            case RouterType::ModifiedShortestPath:
                return modified_shortest_next(net, junction, dist, rng);
        }
    }

    // Entry variant: restrict candidates to roads with spare capacity. The
    // caller guarantees at least one such road exists.
    std::vector<std::pair<int, double>> cands;
    const auto& norms = cache.norms(dest);
    double best_dist = kUnreachable;
    for (int rid : net.out_roads(junction)) {
        const auto& road = net.roads[static_cast<std::size_t>(rid)];
        if (road.load >= road.capacity) continue;
        const double d = dist[static_cast<std::size_t>(road.to)];
        switch (router.type) {
            case RouterType::Coverage: {
                const PhiValue p = phi(dist, road, norms);
                if (!p.reachable) continue;
                cands.push_back(
                    {rid, cost(p.value, rho(road.occupancy(), router.params), router.params.alpha)});
                break;
            }
            case RouterType::ShortestPath:
            case RouterType::ModifiedShortestPath: {
                if (d == kUnreachable) continue;
                cands.push_back({rid, d + road.length});
                best_dist = std::min(best_dist, d + road.length);
                break;
            }
        }
    }
    if (cands.empty()) throw std::runtime_error("no enterable road at junction");
    if (router.type == RouterType::ModifiedShortestPath) {
        std::vector<std::pair<int, double>> minimizers;
        for (const auto& [rid, v] : cands)
            if (v - best_dist <= kDistTieTol)
                minimizers.push_back({rid, net.roads[static_cast<std::size_t>(rid)].occupancy()});
        return pick_min(minimizers, kCostTieTol, rng);
    }
    return pick_min(cands, router.type == RouterType::Coverage ? kCostTieTol : kDistTieTol, rng);
}

}  // namespace covroute
