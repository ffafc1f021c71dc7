#include "covroute/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covroute {

double free_flow_time(const Network& net, int origin, int dest, double v_max) {
    if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be positive");
    if (origin == dest) return 0.0;
    const auto dist = shortest_distance_map(net, dest);
    const double d = dist[static_cast<std::size_t>(origin)];
    if (d == kUnreachable) throw std::runtime_error("destination unreachable from origin");
    return d / v_max;
}

RunMetrics run_metrics(const SimResult& result, double cap) {
    if (result.spawned == 0) throw std::invalid_argument("metrics undefined with zero spawns");

    RunMetrics m;
    double delay_sum = 0.0, capped_sum = 0.0, travel_sum = 0.0;
    double delay_sum_c = 0.0, travel_sum_c = 0.0;
    long n = 0, n_completed = 0;
    for (const auto& t : result.trips) {
        double travel, delay;
        if (t.completed()) {
            travel = *t.arrival_time - t.spawn_time;
            delay = travel - t.free_flow_time;
            delay_sum_c += delay;
            travel_sum_c += travel;
            ++n_completed;
        } else {
            // censored: lower bound on what the trip has already cost
            travel = result.horizon_time - t.spawn_time;
            delay = std::max(0.0, travel - t.free_flow_time);
        }
        delay_sum += delay;
        capped_sum += std::min(delay, cap);
        travel_sum += travel;
        ++n;
    }
    m.mean_travel_time = travel_sum / static_cast<double>(n);
    m.mean_delay = delay_sum / static_cast<double>(n);
    m.mean_delay_capped = capped_sum / static_cast<double>(n);
    m.completion_rate = static_cast<double>(n_completed) / static_cast<double>(result.spawned);
    if (n_completed > 0) {
        m.mean_delay_completed = delay_sum_c / static_cast<double>(n_completed);
        m.mean_travel_time_completed = travel_sum_c / static_cast<double>(n_completed);
    }
    m.congested = classify_congested(m);
    return m;
}

bool classify_congested(const RunMetrics& metrics, double threshold) {
    return metrics.mean_delay_capped >= threshold || metrics.completion_rate < 0.5;
}

RunMetrics average_metrics(const std::vector<RunMetrics>& ms, double threshold) {
    if (ms.empty()) throw std::invalid_argument("cannot average zero metrics");
    RunMetrics avg;
    for (const auto& m : ms) {
        avg.mean_travel_time += m.mean_travel_time;
        avg.mean_delay += m.mean_delay;
        avg.mean_delay_capped += m.mean_delay_capped;
        avg.completion_rate += m.completion_rate;
        avg.mean_delay_completed += m.mean_delay_completed;
        avg.mean_travel_time_completed += m.mean_travel_time_completed;
    }
    const double n = static_cast<double>(ms.size());
    avg.mean_travel_time /= n;
    avg.mean_delay /= n;
    avg.mean_delay_capped /= n;
    avg.completion_rate /= n;
    avg.mean_delay_completed /= n;
    avg.mean_travel_time_completed /= n;
    avg.congested = classify_congested(avg, threshold);
    return avg;
}

LambdaHat find_lambda_hat(const std::vector<std::pair<double, RunMetrics>>& cells,
                          const RouterKind& router, double threshold) {
    if (cells.size() < 2) throw std::invalid_argument("need at least two lambda grid points");
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].first <= cells[i - 1].first)
            throw std::invalid_argument("lambda grid must be sorted ascending");
    }
    LambdaHat out;
    out.router = router;
    out.grid_step = cells[1].first - cells[0].first;

    std::size_t first_congested = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (classify_congested(cells[i].second, threshold)) {
            first_congested = i;
            break;
        }
    }
    if (first_congested == 0)
        throw std::runtime_error("transition below grid: every lambda classifies congested");
    if (first_congested == cells.size()) return out;  // limit not found
    out.lambda_hat = cells[first_congested - 1].first;
    return out;
}

}  // namespace covroute
