#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covroute/network.hpp"
#include "covroute/routing.hpp"

namespace covroute {

enum class VehicleState { Moving, WaitingAtHead, Arrived, Queued };

struct Vehicle {
    int id = 0;
    int origin = 0;
    int dest = 0;
    int current_road = -1;   // -1 while queued at the origin
    double offset = 0.0;     // m from the road tail
    double spawn_time = 0.0; // s
    VehicleState state = VehicleState::Queued;
};

enum class GenMode { Poisson, Constant };

struct FixedOd {
    int origin = 0;
    int dest = 0;
};

struct SimConfig {
    double duration = 3600.0;  // s
    double dt = 1.0;           // s
    double lambda = 1.0;       // vehicles per time step
    GenMode gen_mode = GenMode::Poisson;
    RouterKind router = RouterKind::coverage(0.85);
    std::optional<FixedOd> fixed_od;  // nullopt = uniform random O-D
    std::uint64_t seed = 0;
    double v_max = 13.9;  // m/s
    double v_min = 1.0;   // m/s
    bool check_invariants = false;  // per-step conservation asserts

    void validate() const;
};

struct TripRecord {
    int vehicle_id = 0;
    int origin = 0;
    int dest = 0;
    double spawn_time = 0.0;
    std::optional<double> arrival_time;  // nullopt = censored at the horizon
    double free_flow_time = 0.0;

    bool completed() const { return arrival_time.has_value(); }
};

struct SimResult {
    std::vector<TripRecord> trips;  // sorted by vehicle id
    long spawned = 0;
    long completed = 0;
    long censored = 0;
    long deferred_spawns = 0;  // vehicles whose network entry was delayed
    double horizon_time = 0.0; // end-of-run clock, s
    std::vector<double> occupancy_series;  // per-step network mean occupancy
};

/// v = max(v_min, v_max * (1 - load/capacity)).
double speed_on_road(const Road& road, const SimConfig& cfg);

/// One time step of movement along the current road; clamps at the head and
/// flips the state to WaitingAtHead there.
void advance_vehicle(Vehicle& vehicle, const Network& net, const SimConfig& cfg);

/// Discrete-time simulation state. Owns a private copy of the network (road
/// loads are mutated during the run) and a seeded rng, so concurrent runs
/// share nothing.
class Simulation {
public:
    Simulation(SimConfig cfg, const Network& net);

    /// Sub-phases, in order: entry of queued + newly generated vehicles,
    /// advance of moving vehicles, junction crossing of waiting vehicles in
    /// ascending vehicle-id order, metrics recording.
    void step();

    bool done() const { return step_index_ >= total_steps_; }

    /// Runs remaining steps, censors everything still unfinished, and
    /// returns the result. Call at most once.
    SimResult finish();

    // introspection, used by tests and invariant checks
    const Network& network() const { return net_; }
    const SimConfig& config() const { return cfg_; }
    long spawned() const { return spawned_; }
    long completed() const { return static_cast<long>(completed_trips_.size()); }
    long on_road_count() const;
    long queued_count() const;
    long step_index() const { return step_index_; }
    double now() const { return static_cast<double>(step_index_) * cfg_.dt; }
    const std::vector<Vehicle>& vehicles() const { return vehicles_; }

private:
    void enter_queued_vehicles();
    void generate_vehicles();
    bool try_enter(Vehicle& v);
    void advance_phase();
    void crossing_phase();
    void record_phase();
    void check_conservation() const;
    int generation_count_for_step();
    std::pair<int, int> draw_od();

    SimConfig cfg_;
    Network net_;
    DistanceCache cache_;
    Rng rng_;
    long step_index_ = 0;
    long total_steps_ = 0;
    double gen_accumulator_ = 0.0;

    std::vector<Vehicle> vehicles_;             // indexed by vehicle id
    std::vector<int> active_;                   // on-road vehicle ids, ascending
    std::map<int, std::deque<int>> entry_queues_;  // origin -> queued vehicle ids
    std::vector<TripRecord> completed_trips_;
    std::vector<double> occupancy_series_;
    long spawned_ = 0;
    long deferred_ = 0;
    bool finished_ = false;
};

/// Convenience wrapper: full run over a fresh copy of `net`.
SimResult run_simulation(const SimConfig& cfg, const Network& net);

/// Trip log: header + one comma-separated record per trip; censored trips
/// carry the literal CENSORED in the arrival column.
void write_trip_log(const SimResult& result, const std::string& path);

}  // namespace covroute
