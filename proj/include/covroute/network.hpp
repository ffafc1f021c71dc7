#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace covroute {

/// Distance value marking junctions with no path to the destination.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Default urban speed limit applied by the generators, m/s (~50 km/h).
inline constexpr double kDefaultSpeedLimit = 13.9;

/// Effective space one vehicle occupies when jammed, m. Road capacity is
/// derived from this unless stated otherwise.
inline constexpr double kEffectiveVehicleLength = 7.5;

struct Junction {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

/// One directed road. Undirected streets are stored as two paired roads so
/// load and occupancy are tracked per direction.
struct Road {
    int id = 0;
    int from = 0;
    int to = 0;
    double length = 0.0;      // m
    int capacity = 1;         // vehicles
    int load = 0;             // vehicles currently on the road
    double speed_limit = kDefaultSpeedLimit;  // m/s

    double occupancy() const {
        return static_cast<double>(load) / static_cast<double>(capacity);
    }
};

struct Network {
    std::vector<Junction> junctions;
    std::vector<Road> roads;
    std::vector<std::vector<int>> adjacency;  // outgoing road ids per junction
    std::vector<int> reverse_id;              // paired opposite road per road

    int junction_count() const { return static_cast<int>(junctions.size()); }
    int road_count() const { return static_cast<int>(roads.size()); }

    const std::vector<int>& out_roads(int junction) const {
        return adjacency[static_cast<std::size_t>(junction)];
    }

    int add_junction(double x, double y);

    /// Adds the paired directed roads (a,b) and (b,a) with equal length and
    /// capacity. Returns the id of the a->b road; its reverse is id+1.
    int add_road_pair(int a, int b, double length, int capacity,
                      double speed_limit = kDefaultSpeedLimit);

    bool has_edge(int a, int b) const;
    bool is_connected() const;

    void reset_loads();

    /// Checks structural invariants (paired reverses, endpoint validity,
    /// positive lengths, load within capacity). Throws on violation.
    void validate() const;
};

struct NetworkStats {
    int node_count = 0;
    int edge_count = 0;     // undirected edges = directed roads / 2
    double mean_degree = 0.0;
    double diameter = 0.0;  // m, longest shortest-path distance
};

/// max(1, floor(length / effective_vehicle_length)).
int derive_capacity(double length, double effective_vehicle_length = kEffectiveVehicleLength);

Network build_grid(int rows, int cols, double edge_len);
Network build_spiderweb(int rings, int spokes, double ring_spacing);
Network build_random_rewire(const Network& base, int rewires, std::uint64_t seed);
Network build_scale_free(int nodes, int target_edges, std::uint64_t seed);

/// Single-source shortest distances (by road length) to `dest` from every
/// junction, indexed by junction id. Unreachable junctions map to
/// kUnreachable. Distances are symmetric on the paired-road networks built
/// here, so this doubles as the distance-from-dest map.
std::vector<double> shortest_distance_map(const Network& net, int dest);

NetworkStats network_stats(const Network& net);

// --- network file format (JSON, schema in README) ---
std::string network_to_json(const Network& net);
Network network_from_json(const std::string& text);
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

// --- named presets ---
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
Network preset_network(const std::string& name);

}  // namespace covroute
