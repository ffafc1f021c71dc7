#include "covroute/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace covroute {

void SimConfig::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(v_max > v_min)) throw std::invalid_argument("v_max must exceed v_min");
    if (!(v_min > 0.0)) throw std::invalid_argument("v_min must be positive");
    if (router.type == RouterType::Coverage) router.params.validate();
}

double speed_on_road(const Road& road, const SimConfig& cfg) {
    return std::max(cfg.v_min, cfg.v_max * (1.0 - road.occupancy()));
}

void advance_vehicle(Vehicle& vehicle, const Network& net, const SimConfig& cfg) {
    if (vehicle.state != VehicleState::Moving) return;
    // a vehicle is impeded by the others on the road, not by itself, so a
    // lone vehicle travels at v_max
    Road road = net.roads[static_cast<std::size_t>(vehicle.current_road)];
    road.load = std::max(0, road.load - 1);
    const auto& actual = net.roads[static_cast<std::size_t>(vehicle.current_road)];
    vehicle.offset = std::min(actual.length, vehicle.offset + speed_on_road(road, cfg) * cfg.dt);
    if (vehicle.offset >= actual.length) vehicle.state = VehicleState::WaitingAtHead;
}

Simulation::Simulation(SimConfig cfg, const Network& net)
    : cfg_(cfg), net_(net), cache_(net_), rng_(cfg.seed) {
    cfg_.validate();
    net_.reset_loads();
    net_.validate();
    if (!net_.is_connected()) throw std::invalid_argument("network must be connected");
    if (cfg_.fixed_od) {
        const auto [o, d] = *cfg_.fixed_od;
        if (o < 0 || o >= net_.junction_count() || d < 0 || d >= net_.junction_count() || o == d)
            throw std::invalid_argument("invalid fixed O-D pair");
    }
    total_steps_ = static_cast<long>(std::ceil(cfg_.duration / cfg_.dt));
}

int Simulation::generation_count_for_step() {
    if (cfg_.lambda <= 0.0) return 0;
    const double mean = cfg_.lambda * cfg_.dt;
    if (cfg_.gen_mode == GenMode::Poisson) return rng_.poisson(mean);
    // constant mode: fractional accumulator keeps the running mean exact
    gen_accumulator_ += mean;
    const int count = static_cast<int>(std::floor(gen_accumulator_));
    gen_accumulator_ -= count;
    return count;
}

std::pair<int, int> Simulation::draw_od() {
    if (cfg_.fixed_od) return {cfg_.fixed_od->origin, cfg_.fixed_od->dest};
    const int n = net_.junction_count();
    const int origin = static_cast<int>(rng_.uniform_index(static_cast<std::size_t>(n)));
    int dest = static_cast<int>(rng_.uniform_index(static_cast<std::size_t>(n - 1)));
    if (dest >= origin) ++dest;  // uniform over the n-1 junctions != origin
    return {origin, dest};
}

bool Simulation::try_enter(Vehicle& v) {
    bool any_free = false;
    for (int rid : net_.out_roads(v.origin)) {
        const auto& road = net_.roads[static_cast<std::size_t>(rid)];
        if (road.load < road.capacity) {
            any_free = true;
            break;
        }
    }
    if (!any_free) return false;
    const int rid = route_next(net_, cfg_.router, v.dest, v.origin, std::nullopt, cache_, rng_,
                               /*exclude_full=*/true);
    net_.roads[static_cast<std::size_t>(rid)].load += 1;
    v.current_road = rid;
    v.offset = 0.0;
    v.state = VehicleState::Moving;
    return true;
}

void Simulation::enter_queued_vehicles() {
    std::vector<int> entered;
    for (auto it = entry_queues_.begin(); it != entry_queues_.end();) {
        auto& queue = it->second;
        while (!queue.empty()) {
            Vehicle& v = vehicles_[static_cast<std::size_t>(queue.front())];
            if (!try_enter(v)) break;  // origin saturated; rest of queue waits too
            entered.push_back(v.id);
            queue.pop_front();
        }
        it = queue.empty() ? entry_queues_.erase(it) : std::next(it);
    }
    if (!entered.empty()) {
        std::sort(entered.begin(), entered.end());
        const std::size_t mid = active_.size();
        active_.insert(active_.end(), entered.begin(), entered.end());
        std::inplace_merge(active_.begin(), active_.begin() + static_cast<long>(mid),
                           active_.end());
    }
}

void Simulation::generate_vehicles() {
    const int count = generation_count_for_step();
    for (int i = 0; i < count; ++i) {
        const auto [origin, dest] = draw_od();
        Vehicle v;
        v.id = static_cast<int>(vehicles_.size());
        v.origin = origin;
        v.dest = dest;
        v.spawn_time = now();
        v.state = VehicleState::Queued;
        vehicles_.push_back(v);
        ++spawned_;
        Vehicle& stored = vehicles_.back();
        auto queue_it = entry_queues_.find(origin);
        const bool must_queue = queue_it != entry_queues_.end() && !queue_it->second.empty();
        if (!must_queue && try_enter(stored)) {
            active_.push_back(stored.id);  // ids grow monotonically; stays sorted
        } else {
            ++deferred_;
            entry_queues_[origin].push_back(stored.id);
        }
    }
}

void Simulation::advance_phase() {
    for (int id : active_) advance_vehicle(vehicles_[static_cast<std::size_t>(id)], net_, cfg_);
}

void Simulation::crossing_phase() {
    bool any_arrived = false;
    for (int id : active_) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(id)];
        if (v.state != VehicleState::WaitingAtHead) continue;
        const auto& road = net_.roads[static_cast<std::size_t>(v.current_road)];
        const int junction = road.to;
        if (junction == v.dest) {
            net_.roads[static_cast<std::size_t>(v.current_road)].load -= 1;
            v.state = VehicleState::Arrived;
            const double ff =
                cache_.distances(v.dest)[static_cast<std::size_t>(v.origin)] / cfg_.v_max;
            const double arrival = now() + cfg_.dt;
            if (cfg_.check_invariants && arrival - v.spawn_time < ff - 1e-9)
                throw std::logic_error("trip completed faster than free flow");
            completed_trips_.push_back({v.id, v.origin, v.dest, v.spawn_time, arrival, ff});
            any_arrived = true;
            continue;
        }
        const int next =
            route_next(net_, cfg_.router, v.dest, junction, v.current_road, cache_, rng_);
        auto& next_road = net_.roads[static_cast<std::size_t>(next)];
        if (next_road.load >= next_road.capacity) continue;  // blocked; retry next step
        net_.roads[static_cast<std::size_t>(v.current_road)].load -= 1;
        next_road.load += 1;
        v.current_road = next;
        v.offset = 0.0;
        v.state = VehicleState::Moving;
    }
    if (any_arrived) {
        active_.erase(std::remove_if(active_.begin(), active_.end(),
                                     [this](int id) {
                                         return vehicles_[static_cast<std::size_t>(id)].state ==
                                                VehicleState::Arrived;
                                     }),
                      active_.end());
    }
}

void Simulation::record_phase() {
    double total = 0.0;
    for (const auto& r : net_.roads) total += r.occupancy();
    occupancy_series_.push_back(total / static_cast<double>(net_.road_count()));
}

void Simulation::check_conservation() const {
    long load_sum = 0;
    for (const auto& r : net_.roads) {
        if (r.load < 0 || r.load > r.capacity)
            throw std::logic_error("road load outside [0, capacity]");
        load_sum += r.load;
    }
    if (load_sum != on_road_count())
        throw std::logic_error("road loads out of sync with on-road vehicle count");
    if (spawned_ != completed() + on_road_count() + queued_count())
        throw std::logic_error("vehicle accounting mismatch");
}

void Simulation::step() {
    if (done()) throw std::logic_error("stepping past the horizon");
    enter_queued_vehicles();
    generate_vehicles();
    advance_phase();
    crossing_phase();
    record_phase();
    if (cfg_.check_invariants) check_conservation();
    ++step_index_;
}

long Simulation::on_road_count() const {
    return static_cast<long>(active_.size());
}

long Simulation::queued_count() const {
    long n = 0;
    for (const auto& [origin, queue] : entry_queues_) n += static_cast<long>(queue.size());
    return n;
}

SimResult Simulation::finish() {
    if (finished_) throw std::logic_error("finish() called twice");
    while (!done()) step();
    finished_ = true;

    SimResult result;
    result.trips = std::move(completed_trips_);
    for (const auto& v : vehicles_) {
        if (v.state == VehicleState::Arrived) continue;
        const double ff = cache_.distances(v.dest)[static_cast<std::size_t>(v.origin)] / cfg_.v_max;
        result.trips.push_back({v.id, v.origin, v.dest, v.spawn_time, std::nullopt, ff});
    }
    std::sort(result.trips.begin(), result.trips.end(),
              [](const TripRecord& a, const TripRecord& b) { return a.vehicle_id < b.vehicle_id; });
    result.spawned = spawned_;
    for (const auto& t : result.trips)
        (t.completed() ? result.completed : result.censored) += 1;
    result.deferred_spawns = deferred_;
    result.horizon_time = static_cast<double>(total_steps_) * cfg_.dt;
    result.occupancy_series = std::move(occupancy_series_);
    return result;
}

SimResult run_simulation(const SimConfig& cfg, const Network& net) {
    Simulation sim(cfg, net);
    return sim.finish();
}

void write_trip_log(const SimResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trip log: " + path);
    out << "vehicle_id,origin,dest,spawn_time,arrival_time,free_flow_time\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        const auto written = std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf, static_cast<std::size_t>(written));
    };
    for (const auto& t : result.trips) {
        out << t.vehicle_id << ',' << t.origin << ',' << t.dest << ',' << fmt(t.spawn_time) << ','
            << (t.completed() ? fmt(*t.arrival_time) : std::string("CENSORED")) << ','
            << fmt(t.free_flow_time) << '\n';
    }
}

}  // namespace covroute
