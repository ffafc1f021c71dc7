#include "covroute/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

#include "covroute/rng.hpp"

namespace covroute {

int Network::add_junction(double x, double y) {
    const int id = junction_count();
    junctions.push_back({id, x, y});
    adjacency.emplace_back();
    return id;
}

int Network::add_road_pair(int a, int b, double length, int capacity, double speed_limit) {
    if (a == b) throw std::invalid_argument("road endpoints must differ");
    if (length <= 0.0) throw std::invalid_argument("road length must be positive");
    if (capacity < 1) throw std::invalid_argument("road capacity must be >= 1");
    const int fwd = road_count();
    roads.push_back({fwd, a, b, length, capacity, 0, speed_limit});
    roads.push_back({fwd + 1, b, a, length, capacity, 0, speed_limit});
    adjacency[static_cast<std::size_t>(a)].push_back(fwd);
    adjacency[static_cast<std::size_t>(b)].push_back(fwd + 1);
    reverse_id.push_back(fwd + 1);
    reverse_id.push_back(fwd);
    return fwd;
}

bool Network::has_edge(int a, int b) const {
    for (int rid : adjacency[static_cast<std::size_t>(a)]) {
        if (roads[static_cast<std::size_t>(rid)].to == b) return true;
    }
    return false;
}

bool Network::is_connected() const {
    if (junctions.empty()) return false;
    std::vector<char> seen(junctions.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const int j = stack.back();
        stack.pop_back();
        for (int rid : adjacency[static_cast<std::size_t>(j)]) {
            const int k = roads[static_cast<std::size_t>(rid)].to;
            if (!seen[static_cast<std::size_t>(k)]) {
                seen[static_cast<std::size_t>(k)] = 1;
                ++reached;
                stack.push_back(k);
            }
        }
    }
    return reached == junctions.size();
}

void Network::reset_loads() {
    for (auto& r : roads) r.load = 0;
}

void Network::validate() const {
    const int n = junction_count();
    for (int i = 0; i < n; ++i) {
        const auto& j = junctions[static_cast<std::size_t>(i)];
        if (j.id != i) throw std::runtime_error("junction ids must be contiguous from 0");
        if (!std::isfinite(j.x) || !std::isfinite(j.y))
            throw std::runtime_error("junction coordinates must be finite");
    }
    if (reverse_id.size() != roads.size())
        throw std::runtime_error("reverse table out of sync with roads");
    for (std::size_t i = 0; i < roads.size(); ++i) {
        const auto& r = roads[i];
        if (r.id != static_cast<int>(i)) throw std::runtime_error("road ids must be contiguous from 0");
        if (r.from < 0 || r.from >= n || r.to < 0 || r.to >= n)
            throw std::runtime_error("road endpoint out of range");
        if (r.from == r.to) throw std::runtime_error("self-loop road");
        if (r.length <= 0.0) throw std::runtime_error("non-positive road length");
        if (r.capacity < 1) throw std::runtime_error("road capacity below 1");
        if (r.load < 0 || r.load > r.capacity) throw std::runtime_error("road load outside [0, capacity]");
        const auto& rev = roads[static_cast<std::size_t>(reverse_id[i])];
        if (rev.from != r.to || rev.to != r.from || rev.length != r.length ||
            rev.capacity != r.capacity)
            throw std::runtime_error("missing or mismatched paired reverse road");
    }
}

int derive_capacity(double length, double effective_vehicle_length) {
    if (length <= 0.0) throw std::invalid_argument("length must be positive");
    if (effective_vehicle_length <= 0.0)
        throw std::invalid_argument("effective vehicle length must be positive");
    return std::max(1, static_cast<int>(std::floor(length / effective_vehicle_length)));
}

namespace {

int capacity_for(double length) { return derive_capacity(length); }

double planar_dist(const Junction& a, const Junction& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

Network build_grid(int rows, int cols, double edge_len) {
    if (rows < 1 || cols < 1 || rows * cols < 2)
        throw std::invalid_argument("grid needs at least two junctions");
    if (edge_len <= 0.0) throw std::invalid_argument("edge_len must be positive");

    Network net;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            net.add_junction(c * edge_len, r * edge_len);

    const int cap = capacity_for(edge_len);
    auto id_of = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) net.add_road_pair(id_of(r, c), id_of(r, c + 1), edge_len, cap);
            if (r + 1 < rows) net.add_road_pair(id_of(r, c), id_of(r + 1, c), edge_len, cap);
        }
    }
    return net;
}

Network build_spiderweb(int rings, int spokes, double ring_spacing) {
    if (rings < 1) throw std::invalid_argument("need at least one ring");
    if (spokes < 3) throw std::invalid_argument("a ring needs at least 3 junctions");
    if (ring_spacing <= 0.0) throw std::invalid_argument("ring_spacing must be positive");

    Network net;
    const double two_pi = 2.0 * M_PI;
    for (int k = 1; k <= rings; ++k) {
        const double radius = k * ring_spacing;
        for (int s = 0; s < spokes; ++s) {
            const double angle = two_pi * s / spokes;
            net.add_junction(radius * std::cos(angle), radius * std::sin(angle));
        }
    }
    auto id_of = [spokes](int ring, int s) { return (ring - 1) * spokes + s; };
    for (int k = 1; k <= rings; ++k) {
        const double chord = 2.0 * k * ring_spacing * std::sin(M_PI / spokes);
        for (int s = 0; s < spokes; ++s) {
            net.add_road_pair(id_of(k, s), id_of(k, (s + 1) % spokes), chord,
                              capacity_for(chord));
        }
        if (k < rings) {
            for (int s = 0; s < spokes; ++s) {
                net.add_road_pair(id_of(k, s), id_of(k + 1, s), ring_spacing,
                                  capacity_for(ring_spacing));
            }
        }
    }
    return net;
}

Network build_random_rewire(const Network& base, int rewires, std::uint64_t seed) {
    if (rewires < 0) throw std::invalid_argument("rewires must be >= 0");
    if (!base.is_connected()) throw std::invalid_argument("base network must be connected");

    // Work on an undirected edge list, then re-emit the paired roads.
    struct Edge {
        int a, b;
        double speed_limit;
    };
    std::vector<Edge> edges;
    for (const auto& r : base.roads) {
        if (r.from < r.to) edges.push_back({r.from, r.to, r.speed_limit});
    }
    const int n = base.junction_count();

    auto build = [&](const std::vector<Edge>& es) {
        Network net;
        for (const auto& j : base.junctions) net.add_junction(j.x, j.y);
        for (const auto& e : es) {
            const double len = planar_dist(net.junctions[static_cast<std::size_t>(e.a)],
                                           net.junctions[static_cast<std::size_t>(e.b)]);
            net.add_road_pair(e.a, e.b, len, capacity_for(len), e.speed_limit);
        }
        return net;
    };

    auto edges_connected = [&](const std::vector<Edge>& es) {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (const auto& e : es) {
            adj[static_cast<std::size_t>(e.a)].push_back(e.b);
            adj[static_cast<std::size_t>(e.b)].push_back(e.a);
        }
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int j = stack.back();
            stack.pop_back();
            for (int k : adj[static_cast<std::size_t>(j)]) {
                if (!seen[static_cast<std::size_t>(k)]) {
                    seen[static_cast<std::size_t>(k)] = 1;
                    ++reached;
                    stack.push_back(k);
                }
            }
        }
        return reached == n;
    };

    Rng rng(seed);
    std::set<std::pair<int, int>> present;
    for (const auto& e : edges) present.insert({std::min(e.a, e.b), std::max(e.a, e.b)});

    const int attempt_budget = 200;
    for (int done = 0; done < rewires; ++done) {
        bool rewired = false;
        for (int attempt = 0; attempt < attempt_budget && !rewired; ++attempt) {
            const std::size_t ei = rng.uniform_index(edges.size());
            Edge e = edges[ei];
            // keep one endpoint, reattach the other
            const bool keep_a = rng.uniform_index(2) == 0;
            const int keep = keep_a ? e.a : e.b;
            const int drop = keep_a ? e.b : e.a;
            const int cand = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
            if (cand == keep || cand == drop) continue;
            const auto new_key = std::make_pair(std::min(keep, cand), std::max(keep, cand));
            if (present.count(new_key)) continue;
            if (planar_dist(base.junctions[static_cast<std::size_t>(keep)],
                            base.junctions[static_cast<std::size_t>(cand)]) <= 0.0)
                continue;  // coincident coordinates would make a zero-length road

            const auto old_key = std::make_pair(std::min(e.a, e.b), std::max(e.a, e.b));
            edges[ei] = Edge{keep, cand, e.speed_limit};
            present.erase(old_key);
            present.insert(new_key);

            if (edges_connected(edges)) {
                rewired = true;
            } else {
                // roll back and retry
                edges[ei] = e;
                present.erase(new_key);
                present.insert(old_key);
            }
        }
        if (!rewired)
            throw std::runtime_error("no valid rewire found within attempt budget");
    }
    return build(edges);
}

namespace {

// Pick an index with probability proportional to weights[i] (all >= 0,
// sum > 0).
std::size_t weighted_pick(const std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = rng.uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        r -= weights[i];
        if (r <= 0.0) return i;
    }
    return weights.size() - 1;
}

// Force-directed layout (Fruchterman-Reingold style) rescaled so the mean
// edge length is `target_mean_len`.
std::vector<std::pair<double, double>> force_layout(
    int n, const std::vector<std::pair<int, int>>& edges, double target_mean_len, Rng& rng) {
    std::vector<double> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * M_PI * i / n;
        px[static_cast<std::size_t>(i)] = std::cos(angle) + 0.01 * (rng.uniform() - 0.5);
        py[static_cast<std::size_t>(i)] = std::sin(angle) + 0.01 * (rng.uniform() - 0.5);
    }
    const double k = std::sqrt(4.0 / n);  // ideal spacing in unit-ish area
    const int iterations = 250;
    for (int it = 0; it < iterations; ++it) {
        const double temp = 0.1 * (1.0 - static_cast<double>(it) / iterations) + 1e-3;
        std::vector<double> dx(static_cast<std::size_t>(n), 0.0), dy(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double ex = px[i] - px[j], ey = py[i] - py[j];
                double d2 = ex * ex + ey * ey + 1e-9;
                double d = std::sqrt(d2);
                double rep = k * k / d2;
                dx[i] += ex / d * rep;
                dy[i] += ey / d * rep;
                dx[j] -= ex / d * rep;
                dy[j] -= ey / d * rep;
            }
        }
        for (const auto& [a, b] : edges) {
            double ex = px[a] - px[b], ey = py[a] - py[b];
            double d = std::sqrt(ex * ex + ey * ey + 1e-9);
            double att = d * d / k;
            dx[a] -= ex / d * att;
            dy[a] -= ey / d * att;
            dx[b] += ex / d * att;
            dy[b] += ey / d * att;
        }
        for (int i = 0; i < n; ++i) {
            double d = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]) + 1e-12;
            double cap = std::min(d, temp);
            px[i] += dx[i] / d * cap;
            py[i] += dy[i] / d * cap;
        }
    }
    double mean_len = 0.0;
    for (const auto& [a, b] : edges)
        mean_len += std::hypot(px[a] - px[b], py[a] - py[b]);
    mean_len /= static_cast<double>(edges.size());
    const double scale = target_mean_len / std::max(mean_len, 1e-9);
    std::vector<std::pair<double, double>> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pos[static_cast<std::size_t>(i)] = {px[i] * scale, py[i] * scale};
    return pos;
}

}  // namespace

Network build_scale_free(int nodes, int target_edges, std::uint64_t seed) {
    if (nodes < 2) throw std::invalid_argument("need at least 2 nodes");
    if (target_edges < nodes - 1)
        throw std::invalid_argument("target_edges below the connected minimum");
    const long max_edges = static_cast<long>(nodes) * (nodes - 1) / 2;
    if (target_edges > max_edges)
        throw std::invalid_argument("target_edges exceeds the simple-graph maximum");

    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> present;
    std::vector<double> degree(static_cast<std::size_t>(nodes), 0.0);
    auto add_edge = [&](int a, int b) {
        edges.push_back({a, b});
        present.insert({std::min(a, b), std::max(a, b)});
        degree[static_cast<std::size_t>(a)] += 1.0;
        degree[static_cast<std::size_t>(b)] += 1.0;
    };

    // Preferentially attached tree backbone keeps the graph connected.
    add_edge(0, 1);
    for (int v = 2; v < nodes; ++v) {
        std::vector<double> w(degree.begin(), degree.begin() + v);
        const int target = static_cast<int>(weighted_pick(w, rng));
        add_edge(v, target);
    }

    // Extra edges: both endpoints drawn preferentially, rejecting repeats.
    while (static_cast<int>(edges.size()) < target_edges) {
        int a = static_cast<int>(weighted_pick(degree, rng));
        int b = static_cast<int>(weighted_pick(degree, rng));
        if (a == b) continue;
        if (present.count({std::min(a, b), std::max(a, b)})) continue;
        add_edge(a, b);
    }

    const auto pos = force_layout(nodes, edges, 100.0, rng);
    Network net;
    for (int i = 0; i < nodes; ++i)
        net.add_junction(pos[static_cast<std::size_t>(i)].first,
                         pos[static_cast<std::size_t>(i)].second);
    for (const auto& [a, b] : edges) {
        double len = planar_dist(net.junctions[static_cast<std::size_t>(a)],
                                 net.junctions[static_cast<std::size_t>(b)]);
        len = std::max(len, 1.0);  // layout can put connected hubs very close
        net.add_road_pair(a, b, len, capacity_for(len));
    }
    return net;
}

std::vector<double> shortest_distance_map(const Network& net, int dest) {
    if (dest < 0 || dest >= net.junction_count())
        throw std::invalid_argument("destination junction out of range");
    std::vector<double> dist(net.junctions.size(), kUnreachable);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(dest)] = 0.0;
    heap.push({0.0, dest});
    while (!heap.empty()) {
        const auto [d, j] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(j)]) continue;
        for (int rid : net.out_roads(j)) {
            const auto& road = net.roads[static_cast<std::size_t>(rid)];
            const double nd = d + road.length;
            if (nd < dist[static_cast<std::size_t>(road.to)]) {
                dist[static_cast<std::size_t>(road.to)] = nd;
                heap.push({nd, road.to});
            }
        }
    }
    return dist;
}

NetworkStats network_stats(const Network& net) {
    if (net.junctions.empty()) throw std::invalid_argument("empty network");
    if (!net.is_connected())
        throw std::invalid_argument("diameter undefined on a disconnected network");
    NetworkStats stats;
    stats.node_count = net.junction_count();
    stats.edge_count = net.road_count() / 2;
    stats.mean_degree = 2.0 * stats.edge_count / stats.node_count;
    double diameter = 0.0;
    for (int j = 0; j < stats.node_count; ++j) {
        const auto dist = shortest_distance_map(net, j);
        for (double d : dist) diameter = std::max(diameter, d);
    }
    stats.diameter = diameter;
    return stats;
}

}  // namespace covroute
