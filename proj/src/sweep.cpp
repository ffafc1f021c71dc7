#include "covroute/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "covroute/rng.hpp"

namespace covroute {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw std::runtime_error("bad numeric field: " + s);
    return v;
}

}  // namespace

void SweepSpec::validate() const {
    if (alphas.empty() || lambdas.empty()) throw std::invalid_argument("empty sweep grid");
    if (!std::is_sorted(alphas.begin(), alphas.end()) ||
        !std::is_sorted(lambdas.begin(), lambdas.end()))
        throw std::invalid_argument("sweep grids must be sorted ascending");
    for (double a : alphas)
        if (a < 0.0 || a > 1.0) throw std::invalid_argument("alpha grid values must be in [0,1]");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (routers.empty()) throw std::invalid_argument("no routers selected");
    if (!net.is_connected()) throw std::invalid_argument("sweep network must be connected");
}

std::uint64_t derive_seed(std::uint64_t base, std::size_t alpha_idx, std::size_t lambda_idx,
                          std::size_t replicate_idx) {
    std::uint64_t h = splitmix64(base ^ 0x5bd1e9955bd1e995ULL);
    h = splitmix64(h + alpha_idx + 1);
    h = splitmix64(h + lambda_idx + 1);
    h = splitmix64(h + replicate_idx + 1);
    return h;
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec) {
    spec.validate();

    struct Task {
        std::size_t ai, li;
        int rep;
        RouterKind router;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::set<std::uint64_t> seeds_seen;
    for (std::size_t ai = 0; ai < spec.alphas.size(); ++ai) {
        for (std::size_t li = 0; li < spec.lambdas.size(); ++li) {
            for (int rep = 0; rep < spec.replicates; ++rep) {
                const std::uint64_t seed =
                    derive_seed(spec.base.seed, ai, li, static_cast<std::size_t>(rep));
                seeds_seen.insert(seed);
                for (const auto& router : spec.routers) {
                    RouterKind r = router;
                    if (r.type == RouterType::Coverage) r.params.alpha = spec.alphas[ai];
                    tasks.push_back({ai, li, rep, r, seed});
                }
            }
        }
    }
    // routers intentionally share the seed of their grid triple
    if (seeds_seen.size() != spec.alphas.size() * spec.lambdas.size() *
                                static_cast<std::size_t>(spec.replicates))
        throw std::logic_error("derived seed collision across the sweep");

    std::vector<SweepCell> cells(tasks.size());
    auto run_task = [&](std::size_t i) {
        const Task& t = tasks[i];
        SweepCell cell;
        cell.topology = spec.topology;
        cell.router = t.router;
        cell.alpha = spec.alphas[t.ai];
        cell.lambda = spec.lambdas[t.li];
        cell.replicate = t.rep;
        cell.seed = t.seed;
        try {
            SimConfig cfg = spec.base;
            cfg.lambda = spec.lambdas[t.li];
            cfg.router = t.router;
            cfg.seed = t.seed;
            cell.metrics = run_metrics(run_simulation(cfg, spec.net));
        } catch (const std::exception&) {
            cell.failed = true;
        }
        cells[i] = std::move(cell);
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1 || tasks.size() == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min<int>(jobs, static_cast<int>(tasks.size()));
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    run_task(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return cells;  // task order is the canonical (alpha, lambda, replicate, router) order
}

LambdaHat lambda_hat_from_cells(const std::vector<SweepCell>& cells, const RouterKind& router,
                                std::optional<double> alpha) {
    std::map<double, std::vector<RunMetrics>> by_lambda;
    for (const auto& c : cells) {
        if (c.failed) continue;
        if (c.router.type != router.type) continue;
        if (alpha && std::abs(c.alpha - *alpha) > 1e-12) continue;
        by_lambda[c.lambda].push_back(c.metrics);
    }
    std::vector<std::pair<double, RunMetrics>> averaged;
    averaged.reserve(by_lambda.size());
    for (const auto& [lambda, ms] : by_lambda) averaged.push_back({lambda, average_metrics(ms)});
    return find_lambda_hat(averaged, router);
}

AlphaRange optimal_alpha(const std::vector<SweepCell>& cells, RouterType router) {
    std::set<double> alpha_grid;
    for (const auto& c : cells)
        if (c.router.type == router) alpha_grid.insert(c.alpha);
    if (alpha_grid.size() < 3)
        throw std::invalid_argument("optimal_alpha needs cells covering >= 3 alpha values");

    // lambda_hat per alpha; limit-not-found sorts above every finite value
    constexpr double kNotFound = std::numeric_limits<double>::infinity();
    std::map<double, double> hat_by_alpha;
    RouterKind probe;
    probe.type = router;
    for (double a : alpha_grid) {
        try {
            const LambdaHat hat = lambda_hat_from_cells(cells, probe, a);
            hat_by_alpha[a] = hat.found() ? *hat.lambda_hat : kNotFound;
        } catch (const std::runtime_error&) {
            // congested on the whole grid: this alpha never wins
        }
    }
    if (hat_by_alpha.empty())
        throw std::runtime_error("every alpha is congested across the whole lambda grid");

    double best = -1.0;
    for (const auto& [a, hat] : hat_by_alpha) best = std::max(best, hat);
    AlphaRange out;
    for (const auto& [a, hat] : hat_by_alpha)
        if (hat == best) out.alphas.push_back(a);
    out.lo = out.alphas.front();
    out.hi = out.alphas.back();
    // contiguous on the swept grid?
    std::vector<double> grid(alpha_grid.begin(), alpha_grid.end());
    const auto lo_it = std::find(grid.begin(), grid.end(), out.lo);
    out.contiguous = true;
    for (std::size_t i = 0; i < out.alphas.size(); ++i) {
        if (lo_it + static_cast<long>(i) == grid.end() ||
            *(lo_it + static_cast<long>(i)) != out.alphas[i]) {
            out.contiguous = false;
            break;
        }
    }
    return out;
}

std::vector<RouterComparison> compare_routers(const Network& net,
                                              const std::vector<double>& lambda_grid,
                                              double alpha_star, int replicates,
                                              const SimConfig& base, int jobs,
                                              const std::vector<RouterKind>& routers) {
    if (lambda_grid.size() < 2) throw std::invalid_argument("need at least two lambda grid points");
    if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end()))
        throw std::invalid_argument("lambda grid must be sorted ascending");
    if (lambda_grid.front() <= 0.0)
        throw std::invalid_argument("lambda grid values must be positive");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");

    std::vector<RouterComparison> out;
    for (const auto& base_router : routers) {
        RouterKind router = base_router;
        if (router.type == RouterType::Coverage) router.params.alpha = alpha_star;

        RouterComparison cmp;
        cmp.router = router;
        std::vector<std::pair<double, RunMetrics>> averaged;
        for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
            std::vector<RunMetrics> reps(static_cast<std::size_t>(replicates));
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto work = [&] {
                try {
                    for (std::size_t r = next.fetch_add(1); r < reps.size();
                         r = next.fetch_add(1)) {
                        SimConfig cfg = base;
                        cfg.lambda = lambda_grid[li];
                        cfg.router = router;
                        cfg.seed = derive_seed(base.seed, 0, li, r);
                        reps[r] = run_metrics(run_simulation(cfg, net));
                    }
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            };
            if (jobs <= 1 || replicates == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                const int workers = std::min(jobs, replicates);
                for (int w = 0; w < workers; ++w) pool.emplace_back(work);
                for (auto& th : pool) th.join();
            }
            if (failure) std::rethrow_exception(failure);
            const RunMetrics avg = average_metrics(reps);
            cmp.curve.push_back({lambda_grid[li], avg});
            averaged.push_back({lambda_grid[li], avg});
            // The first-crossing rule ignores everything above the first
            // congested point, so stop scanning there.
            if (classify_congested(avg)) break;
        }
        if (averaged.size() == 1 && classify_congested(averaged[0].second))
            throw std::runtime_error("transition below grid for router " + router_name(router));
        cmp.lambda_hat = find_lambda_hat(averaged, router);
        out.push_back(std::move(cmp));
    }
    return out;
}

void emit_csv(const std::vector<SweepCell>& cells, const std::string& path) {
    if (cells.empty()) throw std::invalid_argument("no cells to emit");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "topology,router,alpha,lambda,replicate,seed,mean_travel_time,mean_delay,"
           "mean_delay_capped,completion_rate,congested,status\n";
    for (const auto& c : cells) {
        out << c.topology << ',' << router_name(c.router) << ',' << fmt_double(c.alpha) << ','
            << fmt_double(c.lambda) << ',' << c.replicate << ',' << c.seed << ',';
        if (c.failed) {
            out << "nan,nan,nan,nan,0,failed\n";
        } else {
            out << fmt_double(c.metrics.mean_travel_time) << ',' << fmt_double(c.metrics.mean_delay)
                << ',' << fmt_double(c.metrics.mean_delay_capped) << ','
                << fmt_double(c.metrics.completion_rate) << ',' << (c.metrics.congested ? 1 : 0)
                << ",ok\n";
        }
    }
}

std::vector<SweepCell> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
    std::vector<SweepCell> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 12) throw std::runtime_error("malformed csv row: " + line);
        SweepCell c;
        c.topology = fields[0];
        c.router.type = router_type_from_name(fields[1]);
        c.alpha = parse_double(fields[2]);
        if (c.router.type == RouterType::Coverage) c.router.params.alpha = c.alpha;
        c.lambda = parse_double(fields[3]);
        c.replicate = static_cast<int>(parse_double(fields[4]));
        c.seed = std::stoull(fields[5]);
        c.failed = fields[11] == "failed";
        if (!c.failed) {
            c.metrics.mean_travel_time = parse_double(fields[6]);
            c.metrics.mean_delay = parse_double(fields[7]);
            c.metrics.mean_delay_capped = parse_double(fields[8]);
            c.metrics.completion_rate = parse_double(fields[9]);
            c.metrics.congested = fields[10] == "1";
        }
        cells.push_back(std::move(c));
    }
    return cells;
}

void emit_heatmap_grid(const std::vector<SweepCell>& cells, const std::string& path) {
    if (cells.empty()) throw std::invalid_argument("no cells to emit");
    for (const auto& c : cells) {
        if (c.router.type != cells.front().router.type)
            throw std::invalid_argument("heatmap cells must belong to a single router");
    }
    std::set<double> alphas, lambdas;
    std::map<std::pair<double, double>, std::vector<double>> values;
    for (const auto& c : cells) {
        alphas.insert(c.alpha);
        lambdas.insert(c.lambda);
        if (!c.failed) values[{c.alpha, c.lambda}].push_back(c.metrics.mean_delay_capped);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write heatmap: " + path);
    out << "alpha_lambda";
    for (double l : lambdas) out << ' ' << fmt_double(l);
    out << '\n';
    for (double a : alphas) {
        out << fmt_double(a);
        for (double l : lambdas) {
            const auto it = values.find({a, l});
            if (it == values.end()) {
                out << " nan";
            } else {
                double sum = 0.0;
                for (double v : it->second) sum += v;
                out << ' ' << fmt_double(sum / static_cast<double>(it->second.size()));
            }
        }
        out << '\n';
    }
}

}  // namespace covroute
