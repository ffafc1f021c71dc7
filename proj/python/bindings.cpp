#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "covroute/engine.hpp"
#include "covroute/metrics.hpp"
#include "covroute/network.hpp"
#include "covroute/routing.hpp"
#include "covroute/sweep.hpp"

namespace py = pybind11;
using namespace covroute;

namespace {

RouterKind make_router(const std::string& name, double alpha, double eta_crit, double sigma) {
    RouterKind r;
    r.type = router_type_from_name(name);
    r.params = CoverageParams{alpha, eta_crit, sigma};
    return r;
}

SimConfig make_config(double duration, double dt, double lambda, const std::string& gen_mode,
                      const RouterKind& router, std::optional<std::pair<int, int>> fixed_od,
                      std::uint64_t seed, double v_max, double v_min) {
    SimConfig cfg;
    cfg.duration = duration;
    cfg.dt = dt;
    cfg.lambda = lambda;
    if (gen_mode == "poisson")
        cfg.gen_mode = GenMode::Poisson;
    else if (gen_mode == "constant")
        cfg.gen_mode = GenMode::Constant;
    else
        throw std::invalid_argument("gen_mode must be poisson or constant");
    cfg.router = router;
    if (fixed_od) cfg.fixed_od = FixedOd{fixed_od->first, fixed_od->second};
    cfg.seed = seed;
    cfg.v_max = v_max;
    cfg.v_min = v_min;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_covroute, m) {
    m.doc() = "traffic network simulator with congestion-aware coverage routing";

    py::class_<Junction>(m, "Junction")
        .def_readonly("id", &Junction::id)
        .def_readonly("x", &Junction::x)
        .def_readonly("y", &Junction::y);

    py::class_<Road>(m, "Road")
        .def_readonly("id", &Road::id)
        .def_readonly("from_junction", &Road::from)
        .def_readonly("to_junction", &Road::to)
        .def_readonly("length", &Road::length)
        .def_readonly("capacity", &Road::capacity)
        .def_readonly("load", &Road::load)
        .def_readonly("speed_limit", &Road::speed_limit)
        .def("occupancy", &Road::occupancy);

    py::class_<Network>(m, "Network")
        .def_property_readonly("junctions", [](const Network& n) { return n.junctions; })
        .def_property_readonly("roads", [](const Network& n) { return n.roads; })
        .def("junction_count", &Network::junction_count)
        .def("road_count", &Network::road_count)
        .def("is_connected", &Network::is_connected)
        .def("out_roads", &Network::out_roads, py::arg("junction"))
        .def("__repr__", [](const Network& n) {
            return "<Network " + std::to_string(n.junction_count()) + " junctions, " +
                   std::to_string(n.road_count() / 2) + " edges>";
        });

    py::class_<NetworkStats>(m, "NetworkStats")
        .def_readonly("node_count", &NetworkStats::node_count)
        .def_readonly("edge_count", &NetworkStats::edge_count)
        .def_readonly("mean_degree", &NetworkStats::mean_degree)
        .def_readonly("diameter", &NetworkStats::diameter);

    m.def("build_grid", &build_grid, py::arg("rows"), py::arg("cols"), py::arg("edge_len"));
    m.def("build_spiderweb", &build_spiderweb, py::arg("rings"), py::arg("spokes"),
          py::arg("ring_spacing"));
    m.def("build_random_rewire", &build_random_rewire, py::arg("base"), py::arg("rewires"),
          py::arg("seed"));
    m.def("build_scale_free", &build_scale_free, py::arg("nodes"), py::arg("target_edges"),
          py::arg("seed"));
    m.def("preset_network", &preset_network, py::arg("name"));
    m.def("preset_names", &preset_names);
    m.def("network_stats", &network_stats, py::arg("net"));
    m.def("shortest_distance_map", &shortest_distance_map, py::arg("net"), py::arg("dest"));
    m.def("derive_capacity", &derive_capacity, py::arg("length"),
          py::arg("effective_vehicle_length") = kEffectiveVehicleLength);
    m.def("save_network", &save_network, py::arg("net"), py::arg("path"));
    m.def("load_network", &load_network, py::arg("path"));

    py::class_<CoverageParams>(m, "CoverageParams")
        .def(py::init<double, double, double>(), py::arg("alpha") = 0.85,
             py::arg("eta_crit") = 0.2, py::arg("sigma") = 10.0)
        .def_readwrite("alpha", &CoverageParams::alpha)
        .def_readwrite("eta_crit", &CoverageParams::eta_crit)
        .def_readwrite("sigma", &CoverageParams::sigma);

    py::class_<RouterKind>(m, "RouterKind")
        .def_property_readonly("name", [](const RouterKind& r) { return router_name(r); })
        .def_property_readonly("alpha", [](const RouterKind& r) { return r.params.alpha; });
    m.def("router", &make_router, py::arg("name"), py::arg("alpha") = 0.85,
          py::arg("eta_crit") = 0.2, py::arg("sigma") = 10.0,
          "build a RouterKind from its name: coverage | sp | msp");

    m.def(
        "rho", [](double eta, const CoverageParams& p) { return rho(eta, p); }, py::arg("eta"),
        py::arg("params") = CoverageParams{});
    m.def("cost", &cost, py::arg("phi"), py::arg("rho"), py::arg("alpha"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init(&make_config), py::arg("duration") = 3600.0, py::arg("dt") = 1.0,
             py::arg("lam") = 1.0, py::arg("gen_mode") = "poisson",
             py::arg("router") = RouterKind::coverage(0.85),
             py::arg("fixed_od") = std::nullopt, py::arg("seed") = 1, py::arg("v_max") = 13.9,
             py::arg("v_min") = 1.0)
        .def_readwrite("duration", &SimConfig::duration)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("lam", &SimConfig::lambda)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("v_max", &SimConfig::v_max)
        .def_readwrite("v_min", &SimConfig::v_min);

    py::class_<TripRecord>(m, "TripRecord")
        .def_readonly("vehicle_id", &TripRecord::vehicle_id)
        .def_readonly("origin", &TripRecord::origin)
        .def_readonly("dest", &TripRecord::dest)
        .def_readonly("spawn_time", &TripRecord::spawn_time)
        .def_readonly("arrival_time", &TripRecord::arrival_time)
        .def_readonly("free_flow_time", &TripRecord::free_flow_time)
        .def("completed", &TripRecord::completed);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("trips", &SimResult::trips)
        .def_readonly("spawned", &SimResult::spawned)
        .def_readonly("completed", &SimResult::completed)
        .def_readonly("censored", &SimResult::censored)
        .def_readonly("deferred_spawns", &SimResult::deferred_spawns)
        .def_readonly("horizon_time", &SimResult::horizon_time)
        .def_readonly("occupancy_series", &SimResult::occupancy_series);

    m.def("run_simulation", &run_simulation, py::arg("config"), py::arg("net"),
          py::call_guard<py::gil_scoped_release>());
    m.def("write_trip_log", &write_trip_log, py::arg("result"), py::arg("path"));
    m.def("free_flow_time", &free_flow_time, py::arg("net"), py::arg("origin"), py::arg("dest"),
          py::arg("v_max"));

    py::class_<RunMetrics>(m, "RunMetrics")
        .def_readonly("mean_travel_time", &RunMetrics::mean_travel_time)
        .def_readonly("mean_delay", &RunMetrics::mean_delay)
        .def_readonly("mean_delay_capped", &RunMetrics::mean_delay_capped)
        .def_readonly("completion_rate", &RunMetrics::completion_rate)
        .def_readonly("congested", &RunMetrics::congested)
        .def_readonly("mean_delay_completed", &RunMetrics::mean_delay_completed)
        .def_readonly("mean_travel_time_completed", &RunMetrics::mean_travel_time_completed);

    m.def("run_metrics", &run_metrics, py::arg("result"), py::arg("cap") = kDelayCap);
    m.def("classify_congested", &classify_congested, py::arg("metrics"),
          py::arg("threshold") = kDelayCap);

    py::class_<LambdaHat>(m, "LambdaHat")
        .def_property_readonly("router", [](const LambdaHat& h) { return router_name(h.router); })
        .def_readonly("lambda_hat", &LambdaHat::lambda_hat)
        .def_readonly("grid_step", &LambdaHat::grid_step)
        .def("found", &LambdaHat::found);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("topology", &SweepCell::topology)
        .def_property_readonly("router", [](const SweepCell& c) { return router_name(c.router); })
        .def_readonly("alpha", &SweepCell::alpha)
        .def_readonly("lam", &SweepCell::lambda)
        .def_readonly("replicate", &SweepCell::replicate)
        .def_readonly("seed", &SweepCell::seed)
        .def_readonly("metrics", &SweepCell::metrics)
        .def_readonly("failed", &SweepCell::failed);

    m.def(
        "run_sweep",
        [](const std::string& topology, const Network& net, const std::vector<double>& alphas,
           const std::vector<double>& lambdas, int replicates, const SimConfig& base,
           const std::vector<std::string>& routers, int jobs) {
            SweepSpec spec;
            spec.topology = topology;
            spec.net = net;
            spec.alphas = alphas;
            spec.lambdas = lambdas;
            spec.replicates = replicates;
            spec.base = base;
            spec.routers.clear();
            for (const auto& r : routers) {
                RouterKind router;
                router.type = router_type_from_name(r);
                router.params = base.router.params;
                spec.routers.push_back(router);
            }
            spec.jobs = jobs;
            return run_sweep(spec);
        },
        py::arg("topology"), py::arg("net"), py::arg("alphas"), py::arg("lambdas"),
        py::arg("replicates"), py::arg("base"), py::arg("routers") = std::vector<std::string>{"coverage"},
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());

    m.def("emit_csv", &emit_csv, py::arg("cells"), py::arg("path"));
    m.def("parse_csv", &parse_csv, py::arg("path"));
    m.def("emit_heatmap_grid", &emit_heatmap_grid, py::arg("cells"), py::arg("path"));
    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("alpha_idx"),
          py::arg("lambda_idx"), py::arg("replicate_idx"));

    py::class_<AlphaRange>(m, "AlphaRange")
        .def_readonly("alphas", &AlphaRange::alphas)
        .def_readonly("lo", &AlphaRange::lo)
        .def_readonly("hi", &AlphaRange::hi)
        .def_readonly("contiguous", &AlphaRange::contiguous);
    m.def(
        "optimal_alpha",
        [](const std::vector<SweepCell>& cells) { return optimal_alpha(cells); },
        py::arg("cells"));
    m.def(
        "lambda_hat_from_cells",
        [](const std::vector<SweepCell>& cells, const std::string& router,
           std::optional<double> alpha) {
            RouterKind r;
            r.type = router_type_from_name(router);
            return lambda_hat_from_cells(cells, r, alpha);
        },
        py::arg("cells"), py::arg("router"), py::arg("alpha") = std::nullopt);

    m.attr("__version__") = "0.1.0";
}
