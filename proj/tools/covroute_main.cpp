// covroute: traffic network generators, simulation runs, parameter sweeps
// and router comparisons, driven by JSON configs plus flag overrides.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "covroute/engine.hpp"
#include "covroute/metrics.hpp"
#include "covroute/network.hpp"
#include "covroute/sweep.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace covroute;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 2;   // bad usage, bad config file, bad preset
constexpr int kExitRuntime = 3;  // failures after configuration was accepted

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json default_sim_json() {
    return json{{"network", {{"preset", "grid5"}}},
                {"router", "coverage"},
                {"alpha", 0.85},
                {"eta_crit", 0.2},
                {"sigma", 10.0},
                {"lambda", 1.0},
                {"gen_mode", "poisson"},
                {"duration", 3600.0},
                {"dt", 1.0},
                {"v_max", 13.9},
                {"v_min", 1.0},
                {"seed", 1},
                {"trip_mode", "uniform"}};
}

json default_sweep_json() {
    json alphas = json::array();
    for (int i = 0; i <= 20; ++i) alphas.push_back(i * 0.05);
    json lambdas = json::array();
    for (int i = 1; i <= 25; ++i) lambdas.push_back(i * 0.2);
    return json{{"network", {{"preset", "grid5"}}},
                {"alphas", alphas},
                {"lambdas", lambdas},
                {"replicates", 3},
                {"routers", {"coverage"}},
                {"sim", default_sim_json()}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
}

// Flag overrides, applied on top of the config file.
struct Overrides {
    std::optional<std::string> preset, net_file, router, gen_mode;
    std::optional<double> alpha, lambda, duration;
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates, jobs;
};

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::uint64_t fallback_seed() {
    if (const char* env = std::getenv("COVERAGE_ROUTER_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw ConfigError("COVERAGE_ROUTER_SEED is not a valid integer");
        }
    }
    return 1;
}

struct ResolvedNetwork {
    Network net;
    std::string label;  // preset name or file path
};

ResolvedNetwork resolve_network(const json& cfg, const Overrides& ov) {
    if (ov.preset && ov.net_file) throw ConfigError("--preset and --net are mutually exclusive");
    if (ov.preset) {
        if (!is_preset(*ov.preset)) throw ConfigError("unknown preset: " + *ov.preset);
        return {preset_network(*ov.preset), *ov.preset};
    }
    if (ov.net_file) {
        if (!fs::exists(*ov.net_file)) throw ConfigError("network file not found: " + *ov.net_file);
        return {load_network(*ov.net_file), *ov.net_file};
    }
    const auto net_cfg = cfg.value("network", json{{"preset", "grid5"}});
    if (net_cfg.contains("preset")) {
        const std::string name = net_cfg.at("preset").get<std::string>();
        if (!is_preset(name)) throw ConfigError("unknown preset: " + name);
        return {preset_network(name), name};
    }
    if (net_cfg.contains("file")) {
        const std::string path = net_cfg.at("file").get<std::string>();
        if (!fs::exists(path)) throw ConfigError("network file not found: " + path);
        return {load_network(path), path};
    }
    throw ConfigError("config 'network' needs a 'preset' or 'file' entry");
}

RouterKind resolve_router(const json& cfg, const Overrides& ov) {
    const std::string name = ov.router ? *ov.router : cfg.value("router", std::string("coverage"));
    RouterKind router;
    try {
        router.type = router_type_from_name(name);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    router.params.alpha = ov.alpha ? *ov.alpha : cfg.value("alpha", 0.85);
    router.params.eta_crit = cfg.value("eta_crit", 0.2);
    router.params.sigma = cfg.value("sigma", 10.0);
    return router;
}

SimConfig resolve_sim_config(const json& cfg, const Overrides& ov) {
    SimConfig sim;
    sim.duration = ov.duration ? *ov.duration : cfg.value("duration", 3600.0);
    sim.dt = cfg.value("dt", 1.0);
    sim.lambda = ov.lambda ? *ov.lambda : cfg.value("lambda", 1.0);
    const std::string mode =
        ov.gen_mode ? *ov.gen_mode : cfg.value("gen_mode", std::string("poisson"));
    if (mode == "poisson")
        sim.gen_mode = GenMode::Poisson;
    else if (mode == "constant")
        sim.gen_mode = GenMode::Constant;
    else
        throw ConfigError("gen_mode must be poisson or constant, got: " + mode);
    sim.router = resolve_router(cfg, ov);
    if (cfg.contains("trip_mode") && cfg.at("trip_mode").is_object()) {
        sim.fixed_od = FixedOd{cfg.at("trip_mode").at("origin").get<int>(),
                               cfg.at("trip_mode").at("dest").get<int>()};
    }
    if (ov.seed)
        sim.seed = *ov.seed;
    else if (cfg.contains("seed"))
        sim.seed = cfg.at("seed").get<std::uint64_t>();
    else
        sim.seed = fallback_seed();
    sim.v_max = cfg.value("v_max", 13.9);
    sim.v_min = cfg.value("v_min", 1.0);
    try {
        sim.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return sim;
}

json sim_config_to_json(const SimConfig& sim, const std::string& net_label) {
    json j{{"network", net_label},
           {"router", router_name(sim.router)},
           {"lambda", sim.lambda},
           {"gen_mode", sim.gen_mode == GenMode::Poisson ? "poisson" : "constant"},
           {"duration", sim.duration},
           {"dt", sim.dt},
           {"v_max", sim.v_max},
           {"v_min", sim.v_min},
           {"seed", sim.seed}};
    if (sim.router.type == RouterType::Coverage) {
        j["alpha"] = sim.router.params.alpha;
        j["eta_crit"] = sim.router.params.eta_crit;
        j["sigma"] = sim.router.params.sigma;
    }
    if (sim.fixed_od)
        j["trip_mode"] = {{"origin", sim.fixed_od->origin}, {"dest", sim.fixed_od->dest}};
    else
        j["trip_mode"] = "uniform";
    return j;
}

void write_manifest(const fs::path& dir, const std::string& config_path, const json& resolved,
                    const std::vector<std::string>& outputs, const std::string& started) {
    json manifest{{"tool", "covroute"},
                  {"version", kVersion},
                  {"started_at", started},
                  {"config_path", config_path},
                  {"resolved", resolved},
                  {"outputs", outputs}};
    std::ofstream out(dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest");
    out << manifest.dump(2) << "\n";
}

// Runs `body` against a temp directory, then renames it into place, so an
// interrupted command leaves no partial final outputs.
template <typename Body>
void atomic_out_dir(const std::string& out, Body&& body) {
    const fs::path final_dir(out);
    if (fs::exists(final_dir)) throw ConfigError("output directory already exists: " + out);
    if (final_dir.has_parent_path()) fs::create_directories(final_dir.parent_path());
    const fs::path tmp = final_dir.string() + ".tmp-" + std::to_string(::getpid());
    fs::create_directories(tmp);
    try {
        body(tmp);
        fs::rename(tmp, final_dir);
    } catch (...) {
        fs::remove_all(tmp);
        throw;
    }
}

std::vector<double> range_grid(double lo, double hi, double step) {
    // index-based so accumulated fp error cannot push values off the grid
    const int count = static_cast<int>(std::round((hi - lo) / step)) + 1;
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) grid.push_back(lo + i * step);
    while (!grid.empty() && grid.back() > hi + 1e-9) grid.pop_back();
    return grid;
}

std::vector<double> parse_grid(const std::string& text) {
    // lo:hi:step
    double lo, hi, step;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 || hi < lo)
        throw ConfigError("grid must be lo:hi:step with step > 0, got: " + text);
    return range_grid(lo, hi, step);
}

std::vector<double> json_grid(const json& j, const char* what) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (const auto& v : j) grid.push_back(v.get<double>());
    } else if (j.is_object()) {
        const double lo = j.at("lo").get<double>();
        const double hi = j.at("hi").get<double>();
        const double step = j.at("step").get<double>();
        if (step <= 0.0 || hi < lo) throw ConfigError(std::string(what) + ": bad grid range");
        grid = range_grid(lo, hi, step);
    } else {
        throw ConfigError(std::string(what) + " must be an array or {lo,hi,step}");
    }
    return grid;
}

// --- subcommand bodies ---

int cmd_net_generate(const Overrides& ov, const std::string& topology, int rows, int cols,
                     double edge_len, int rings, int spokes, double ring_spacing, int nodes,
                     int edges, int rewires, const std::string& out) {
    Network net;
    if (ov.preset) {
        if (!is_preset(*ov.preset)) throw ConfigError("unknown preset: " + *ov.preset);
        net = preset_network(*ov.preset);
    } else if (topology == "grid") {
        net = build_grid(rows, cols, edge_len);
    } else if (topology == "spiderweb") {
        net = build_spiderweb(rings, spokes, ring_spacing);
    } else if (topology == "random") {
        net = build_random_rewire(build_grid(rows, cols, edge_len), rewires,
                                  ov.seed.value_or(fallback_seed()));
    } else if (topology == "scalefree") {
        net = build_scale_free(nodes, edges, ov.seed.value_or(fallback_seed()));
    } else if (topology.empty()) {
        throw ConfigError("net generate needs --preset or --topology");
    } else {
        throw ConfigError("unknown topology: " + topology);
    }
    save_network(net, out);
    std::cout << "wrote " << out << " (" << net.junction_count() << " junctions, "
              << net.road_count() / 2 << " edges)\n";
    return 0;
}

int cmd_net_stats(const Overrides& ov, const std::string& positional) {
    Network net;
    std::string label;
    if (ov.preset) {
        if (!is_preset(*ov.preset)) throw ConfigError("unknown preset: " + *ov.preset);
        net = preset_network(*ov.preset);
        label = *ov.preset;
    } else if (!positional.empty()) {
        if (!fs::exists(positional)) throw ConfigError("network file not found: " + positional);
        net = load_network(positional);
        label = positional;
    } else {
        throw ConfigError("net stats needs --preset or a network file argument");
    }
    const auto stats = network_stats(net);
    json out{{"network", label},
             {"nodes", stats.node_count},
             {"edges", stats.edge_count},
             {"mean_degree", stats.mean_degree},
             {"diameter", stats.diameter}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sim_run(const std::string& config_path, const Overrides& ov, const std::string& out) {
    const json cfg = config_path.empty() ? default_sim_json() : load_json_file(config_path);
    auto [net, label] = resolve_network(cfg, ov);
    const SimConfig sim = resolve_sim_config(cfg, ov);
    const std::string started = iso_timestamp();

    SimResult result = run_simulation(sim, net);

    atomic_out_dir(out, [&](const fs::path& dir) {
        write_trip_log(result, (dir / "trips.csv").string());
        write_manifest(dir, config_path, sim_config_to_json(sim, label), {"trips.csv"}, started);
    });

    // zero-spawn runs leave a valid (empty) trip log but no defined metrics
    const RunMetrics m = run_metrics(result);
    json summary{{"spawned", result.spawned},
                 {"completed", result.completed},
                 {"censored", result.censored},
                 {"deferred_spawns", result.deferred_spawns},
                 {"mean_travel_time", m.mean_travel_time},
                 {"mean_delay", m.mean_delay},
                 {"mean_delay_capped", m.mean_delay_capped},
                 {"completion_rate", m.completion_rate},
                 {"congested", m.congested},
                 {"trip_log", out + "/trips.csv"}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& spec_path, const Overrides& ov, const std::string& out) {
    const json spec_json = spec_path.empty() ? default_sweep_json() : load_json_file(spec_path);
    const json sim_json = spec_json.value("sim", default_sim_json());

    SweepSpec spec;
    auto [net, label] = resolve_network(spec_json, ov);
    spec.net = std::move(net);
    spec.topology = label;
    spec.alphas = json_grid(spec_json.value("alphas", default_sweep_json()["alphas"]), "alphas");
    spec.lambdas =
        json_grid(spec_json.value("lambdas", default_sweep_json()["lambdas"]), "lambdas");
    spec.replicates = ov.replicates ? *ov.replicates : spec_json.value("replicates", 3);
    spec.base = resolve_sim_config(sim_json, ov);
    if (spec_json.contains("seed")) spec.base.seed = spec_json.at("seed").get<std::uint64_t>();
    if (ov.seed) spec.base.seed = *ov.seed;
    spec.routers.clear();
    for (const auto& r : spec_json.value("routers", json{"coverage"})) {
        RouterKind router;
        try {
            router.type = router_type_from_name(r.get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        router.params = spec.base.router.params;
        spec.routers.push_back(router);
    }
    spec.jobs = ov.jobs ? *ov.jobs
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    const std::string started = iso_timestamp();
    const auto cells = run_sweep(spec);

    json resolved = spec_json;
    resolved["resolved_seed"] = spec.base.seed;
    resolved["resolved_jobs"] = spec.jobs;
    resolved["network_label"] = label;
    atomic_out_dir(out, [&](const fs::path& dir) {
        std::vector<std::string> outputs = {"cells.csv"};
        emit_csv(cells, (dir / "cells.csv").string());
        for (const auto& router : spec.routers) {
            std::vector<SweepCell> mine;
            for (const auto& c : cells)
                if (c.router.type == router.type) mine.push_back(c);
            const std::string name = "heatmap_" + router_name(router) + ".txt";
            emit_heatmap_grid(mine, (dir / name).string());
            outputs.push_back(name);
        }
        write_manifest(dir, spec_path, resolved, outputs, started);
    });
    std::cout << "sweep complete: " << cells.size() << " cells -> " << out << "\n";
    return 0;
}

int cmd_compare(const Overrides& ov, const std::string& grid_text, const std::string& out) {
    const json cfg = default_sim_json();
    auto [net, label] = resolve_network(cfg, ov);
    Overrides base_ov = ov;
    base_ov.lambda.reset();
    const SimConfig base = resolve_sim_config(cfg, base_ov);
    const double alpha_star = ov.alpha.value_or(0.85);
    const auto grid = parse_grid(grid_text);
    const int replicates = ov.replicates.value_or(3);
    const int jobs =
        ov.jobs ? *ov.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::string started = iso_timestamp();

    const auto comparisons = compare_routers(net, grid, alpha_star, replicates, base, jobs);

    // lambda_hat table with gain over the shortest-path baseline
    std::optional<double> sp_hat;
    for (const auto& c : comparisons)
        if (c.router.type == RouterType::ShortestPath && c.lambda_hat.found())
            sp_hat = *c.lambda_hat.lambda_hat;
    std::ostringstream table;
    table << "network: " << label << "  alpha*: " << alpha_star << "  replicates: " << replicates
          << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-16s %-10s\n", "router", "lambda_hat", "vs_sp");
    table << line;
    for (const auto& c : comparisons) {
        std::string hat = "limit_not_found";
        std::string gain = "-";
        char b[48];
        if (c.lambda_hat.found()) {
            std::snprintf(b, sizeof b, "%g", *c.lambda_hat.lambda_hat);
            hat = b;
            if (sp_hat && c.router.type != RouterType::ShortestPath) {
                std::snprintf(b, sizeof b, "%+.1f%%",
                              100.0 * (*c.lambda_hat.lambda_hat - *sp_hat) / *sp_hat);
                gain = b;
            }
        } else if (sp_hat && c.router.type != RouterType::ShortestPath) {
            std::snprintf(b, sizeof b, "> %+.1f%%", 100.0 * (grid.back() - *sp_hat) / *sp_hat);
            gain = b;
        }
        std::snprintf(line, sizeof line, "%-10s %-16s %-10s\n", router_name(c.router).c_str(),
                      hat.c_str(), gain.c_str());
        table << line;
    }
    std::cout << table.str();

    if (!out.empty()) {
        atomic_out_dir(out, [&](const fs::path& dir) {
            std::ofstream report(dir / "report.txt");
            report << table.str();
            std::vector<std::string> outputs = {"report.txt"};
            for (const auto& c : comparisons) {
                const std::string name = "curve_" + router_name(c.router) + ".csv";
                std::ofstream curve(dir / name);
                curve << "lambda,mean_delay_capped,mean_delay,completion_rate,congested\n";
                for (const auto& p : c.curve)
                    curve << p.lambda << ',' << p.metrics.mean_delay_capped << ','
                          << p.metrics.mean_delay << ',' << p.metrics.completion_rate << ','
                          << (p.metrics.congested ? 1 : 0) << "\n";
                outputs.push_back(name);
            }
            json resolved{{"network", label},
                          {"alpha_star", alpha_star},
                          {"lambda_grid", grid_text},
                          {"replicates", replicates},
                          {"seed", base.seed}};
            write_manifest(dir, "", resolved, outputs, started);
        });
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"traffic network simulator with congestion-aware coverage routing"};
    app.set_version_flag("--version", kVersion);
    bool print_defaults = false;
    app.add_flag("--print-defaults", print_defaults,
                 "print the built-in sim and sweep defaults as JSON and exit");

    Overrides ov;
    std::string config_path, spec_path, topology, grid_text = "0.2:5.0:0.2";
    std::string gen_out, sim_out = "sim_out", sweep_out = "sweep_out", compare_out;
    std::string positional_net;
    int rows = 5, cols = 5, rings = 5, spokes = 10, nodes = 48, edges = 58, rewires = 50;
    double edge_len = 100.0, ring_spacing = 100.0;

    auto add_net_flags = [&](CLI::App* cmd) {
        cmd->add_option(
            "--preset",
            [&ov](const CLI::results_t& r) {
                ov.preset = r[0];
                return true;
            },
            "named preset: grid5|grid10|random|spiderweb|scalefree");
        cmd->add_option(
            "--net",
            [&ov](const CLI::results_t& r) {
                ov.net_file = r[0];
                return true;
            },
            "network file path");
    };
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option(
            "--seed",
            [&ov](const CLI::results_t& r) {
                ov.seed = std::stoull(r[0]);
                return true;
            },
            "rng seed (default: config, then COVERAGE_ROUTER_SEED, then 1)");
    };
    auto add_sim_flags = [&](CLI::App* cmd) {
        add_net_flags(cmd);
        add_seed(cmd);
        cmd->add_option(
            "--router",
            [&ov](const CLI::results_t& r) {
                ov.router = r[0];
                return true;
            },
            "coverage|sp|msp");
        cmd->add_option(
            "--alpha",
            [&ov](const CLI::results_t& r) {
                ov.alpha = std::stod(r[0]);
                return true;
            },
            "coverage alpha in [0,1]");
        cmd->add_option(
            "--lambda",
            [&ov](const CLI::results_t& r) {
                ov.lambda = std::stod(r[0]);
                return true;
            },
            "car generation rate, vehicles per step");
        cmd->add_option(
            "--gen-mode",
            [&ov](const CLI::results_t& r) {
                ov.gen_mode = r[0];
                return true;
            },
            "poisson|constant");
        cmd->add_option(
            "--duration",
            [&ov](const CLI::results_t& r) {
                ov.duration = std::stod(r[0]);
                return true;
            },
            "simulated seconds");
        cmd->add_option(
            "--jobs",
            [&ov](const CLI::results_t& r) {
                ov.jobs = std::stoi(r[0]);
                return true;
            },
            "worker threads (default: cores)");
        cmd->add_option(
            "--replicates",
            [&ov](const CLI::results_t& r) {
                ov.replicates = std::stoi(r[0]);
                return true;
            },
            "replicate runs per point");
    };

    auto* net_cmd = app.add_subcommand("net", "generate networks and report their statistics");
    auto* gen = net_cmd->add_subcommand("generate", "build a network and write it to a file");
    add_net_flags(gen);
    add_seed(gen);
    gen->add_option("--topology", topology, "grid|spiderweb|random|scalefree");
    gen->add_option("--rows", rows, "grid rows (also the random topology's base)");
    gen->add_option("--cols", cols, "grid cols");
    gen->add_option("--edge-len", edge_len, "grid edge length, m");
    gen->add_option("--rings", rings, "spiderweb rings");
    gen->add_option("--spokes", spokes, "spiderweb spokes");
    gen->add_option("--ring-spacing", ring_spacing, "spiderweb ring spacing, m");
    gen->add_option("--nodes", nodes, "scale-free node count");
    gen->add_option("--edges", edges, "scale-free undirected edge count");
    gen->add_option("--rewires", rewires, "random-topology rewire count");
    gen->add_option("--out", gen_out, "output network file")->required();

    auto* stats = net_cmd->add_subcommand("stats", "print node/edge/degree/diameter statistics");
    add_net_flags(stats);
    stats->add_option("netfile", positional_net, "network file to analyze");

    auto* sim_cmd = app.add_subcommand("sim", "run one simulation");
    auto* run = sim_cmd->add_subcommand("run", "execute a config and write the trip log");
    add_sim_flags(run);
    run->add_option("--config", config_path, "sim config JSON (defaults apply when omitted)");
    run->add_option("--out", sim_out, "output directory (default sim_out)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run an alpha x lambda sweep");
    add_sim_flags(sweep_cmd);
    sweep_cmd->add_option("--spec", spec_path, "sweep spec JSON (defaults apply when omitted)");
    sweep_cmd->add_option("--out", sweep_out, "output directory (default sweep_out)");

    auto* compare_cmd =
        app.add_subcommand("compare", "lambda_hat per router at a fixed coverage alpha");
    add_sim_flags(compare_cmd);
    compare_cmd->add_option("--lambda-grid", grid_text, "lo:hi:step (default 0.2:5.0:0.2)");
    compare_cmd->add_option("--out", compare_out, "optional output directory for the report");

    app.require_subcommand(0, 2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (print_defaults) {
            json defaults{{"sim", default_sim_json()}, {"sweep", default_sweep_json()}};
            std::cout << defaults.dump(2) << "\n";
            return 0;
        }
        if (gen->parsed()) {
            return cmd_net_generate(ov, topology, rows, cols, edge_len, rings, spokes,
                                    ring_spacing, nodes, edges, rewires, gen_out);
        }
        if (stats->parsed()) return cmd_net_stats(ov, positional_net);
        if (run->parsed()) return cmd_sim_run(config_path, ov, sim_out);
        if (sweep_cmd->parsed()) return cmd_sweep(spec_path, ov, sweep_out);
        if (compare_cmd->parsed()) return cmd_compare(ov, grid_text, compare_out);
        std::cerr << app.help();
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
