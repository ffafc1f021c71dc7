#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "covroute/sweep.hpp"

using namespace covroute;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.topology = "grid5";
    spec.net = preset_network("grid5");
    spec.alphas = {0.3, 0.9};
    spec.lambdas = {0.3, 0.6};
    spec.replicates = 2;
    spec.base.duration = 300.0;
    spec.base.seed = 42;
    spec.routers = {RouterKind::coverage(0.85)};
    spec.jobs = 1;
    return spec;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Synthetic cells with a chosen lambda_hat profile per alpha.
std::vector<SweepCell> cells_with_profile(const std::vector<double>& alphas,
                                          const std::vector<double>& lambdas,
                                          const std::vector<double>& hat_per_alpha) {
    std::vector<SweepCell> cells;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        for (double l : lambdas) {
            SweepCell c;
            c.topology = "synthetic";
            c.router = RouterKind::coverage(alphas[ai]);
            c.alpha = alphas[ai];
            c.lambda = l;
            c.replicate = 0;
            c.metrics.completion_rate = 1.0;
            c.metrics.mean_delay_capped = l <= hat_per_alpha[ai] ? 10.0 : 500.0;
            c.metrics.congested = c.metrics.mean_delay_capped >= 500.0;
            cells.push_back(c);
        }
    }
    return cells;
}

}  // namespace

TEST_CASE("seed derivation is deterministic and collision-free") {
    std::set<std::uint64_t> seen;
    for (std::size_t a = 0; a < 25; ++a)
        for (std::size_t l = 0; l < 30; ++l)
            for (std::size_t r = 0; r < 5; ++r) seen.insert(derive_seed(7, a, l, r));
    CHECK(seen.size() == 25u * 30u * 5u);
    CHECK(derive_seed(7, 1, 2, 3) == derive_seed(7, 1, 2, 3));
    CHECK(derive_seed(7, 1, 2, 3) != derive_seed(8, 1, 2, 3));
}

TEST_CASE("degenerate sweep equals a direct run with the derived seed") {
    SweepSpec spec = small_spec();
    spec.alphas = {0.9};
    spec.lambdas = {0.5};
    spec.replicates = 1;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 1);
    CHECK_FALSE(cells[0].failed);

    SimConfig cfg = spec.base;
    cfg.lambda = 0.5;
    cfg.router = RouterKind::coverage(0.9);
    cfg.seed = derive_seed(spec.base.seed, 0, 0, 0);
    const auto direct = run_metrics(run_simulation(cfg, spec.net));
    CHECK(cells[0].metrics.mean_delay == direct.mean_delay);
    CHECK(cells[0].metrics.mean_travel_time == direct.mean_travel_time);
    CHECK(cells[0].metrics.completion_rate == direct.completion_rate);
    CHECK(cells[0].seed == cfg.seed);
}

TEST_CASE("sweep output is canonical and deterministic across job counts") {
    SweepSpec spec = small_spec();
    spec.jobs = 1;
    const auto serial = run_sweep(spec);
    spec.jobs = 4;
    const auto parallel = run_sweep(spec);
    REQUIRE(serial.size() == parallel.size());
    REQUIRE(serial.size() == 8);  // 2 alpha x 2 lambda x 2 replicates x 1 router
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].alpha == parallel[i].alpha);
        CHECK(serial[i].lambda == parallel[i].lambda);
        CHECK(serial[i].replicate == parallel[i].replicate);
        CHECK(serial[i].seed == parallel[i].seed);
        CHECK(serial[i].metrics.mean_delay == parallel[i].metrics.mean_delay);
    }
    // canonical ordering: alpha ascending, then lambda, then replicate
    for (std::size_t i = 1; i < serial.size(); ++i) {
        const auto key = [](const SweepCell& c) {
            return std::make_tuple(c.alpha, c.lambda, c.replicate);
        };
        CHECK(key(serial[i - 1]) <= key(serial[i]));
    }
}

TEST_CASE("same spec twice produces byte-identical artifacts") {
    const SweepSpec spec = small_spec();
    const auto a = run_sweep(spec);
    const auto b = run_sweep(spec);
    emit_csv(a, "sweep_a.csv");
    emit_csv(b, "sweep_b.csv");
    emit_heatmap_grid(a, "heat_a.txt");
    emit_heatmap_grid(b, "heat_b.txt");
    CHECK(slurp("sweep_a.csv") == slurp("sweep_b.csv"));
    CHECK(slurp("heat_a.txt") == slurp("heat_b.txt"));
    for (const char* f : {"sweep_a.csv", "sweep_b.csv", "heat_a.txt", "heat_b.txt"})
        std::remove(f);
}

TEST_CASE("csv round-trips to full precision") {
    const auto cells = run_sweep(small_spec());
    emit_csv(cells, "roundtrip.csv");
    const auto back = parse_csv("roundtrip.csv");
    REQUIRE(back.size() == cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(back[i].topology == cells[i].topology);
        CHECK(router_name(back[i].router) == router_name(cells[i].router));
        CHECK(back[i].alpha == cells[i].alpha);    // bit-exact via to_chars
        CHECK(back[i].lambda == cells[i].lambda);
        CHECK(back[i].replicate == cells[i].replicate);
        CHECK(back[i].seed == cells[i].seed);
        CHECK(back[i].metrics.mean_delay == cells[i].metrics.mean_delay);
        CHECK(back[i].metrics.mean_delay_capped == cells[i].metrics.mean_delay_capped);
        CHECK(back[i].metrics.completion_rate == cells[i].metrics.completion_rate);
        CHECK(back[i].metrics.congested == cells[i].metrics.congested);
        CHECK(back[i].failed == cells[i].failed);
    }
    std::remove("roundtrip.csv");
}

TEST_CASE("emit rejects empty cell lists and leaves no file behind") {
    CHECK_THROWS(emit_csv({}, "never.csv"));
    CHECK_THROWS(emit_heatmap_grid({}, "never.txt"));
    CHECK_FALSE(std::ifstream("never.csv").good());
    CHECK_FALSE(std::ifstream("never.txt").good());
}

TEST_CASE("heatmap of a 2x2 sweep is a 3x3 text matrix") {
    const auto cells = run_sweep(small_spec());
    emit_heatmap_grid(cells, "heat.txt");
    std::ifstream in("heat.txt");
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::vector<std::string> fields;
        std::string f;
        while (ss >> f) fields.push_back(f);
        rows.push_back(fields);
    }
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(r.size() == 3);
    CHECK(rows[0][0] == "alpha_lambda");
    CHECK(rows[1][0] == "0.3");
    CHECK(rows[2][0] == "0.9");
    CHECK(rows[0][1] == "0.3");
    CHECK(rows[0][2] == "0.6");
    std::remove("heat.txt");
}

TEST_CASE("heatmap rejects mixed routers") {
    auto cells = run_sweep(small_spec());
    auto extra = cells.front();
    extra.router = RouterKind::shortest_path();
    cells.push_back(extra);
    CHECK_THROWS(emit_heatmap_grid(cells, "never.txt"));
}

TEST_CASE("optimal_alpha on synthetic profiles") {
    const std::vector<double> alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
    const std::vector<double> lambdas = {1.0, 2.0, 3.0, 4.0};

    SUBCASE("unique interior winner") {
        const auto cells = cells_with_profile(alphas, lambdas, {1.0, 2.0, 3.0, 2.0, 1.0});
        const auto range = optimal_alpha(cells);
        CHECK(range.alphas == std::vector<double>{0.5});
        CHECK(range.lo == 0.5);
        CHECK(range.hi == 0.5);
        CHECK(range.contiguous);
    }

    SUBCASE("flat profile returns the full grid") {
        const auto cells = cells_with_profile(alphas, lambdas, {2.0, 2.0, 2.0, 2.0, 2.0});
        const auto range = optimal_alpha(cells);
        CHECK(range.alphas == alphas);
        CHECK(range.contiguous);
    }

    SUBCASE("contiguous interior band") {
        const auto cells = cells_with_profile(alphas, lambdas, {1.0, 3.0, 3.0, 3.0, 1.0});
        const auto range = optimal_alpha(cells);
        CHECK(range.lo == 0.25);
        CHECK(range.hi == 0.75);
        CHECK(range.contiguous);
        CHECK(range.alphas.size() == 3);
    }

    SUBCASE("alpha congested on the whole grid is skipped, not fatal") {
        auto cells = cells_with_profile(alphas, lambdas, {-1.0, 2.0, 3.0, 2.0, -1.0});
        // hat -1 makes every lambda congested for that alpha
        const auto range = optimal_alpha(cells);
        CHECK(range.alphas == std::vector<double>{0.5});
    }

    SUBCASE("needs three alphas") {
        const auto cells = cells_with_profile({0.2, 0.8}, lambdas, {1.0, 2.0});
        CHECK_THROWS(optimal_alpha(cells));
    }
}

TEST_CASE("lambda_hat_from_cells averages replicates before classifying") {
    std::vector<SweepCell> cells;
    for (int rep = 0; rep < 2; ++rep) {
        for (double l : {1.0, 2.0}) {
            SweepCell c;
            c.router = RouterKind::shortest_path();
            c.alpha = 0.0;
            c.lambda = l;
            c.replicate = rep;
            c.metrics.completion_rate = 1.0;
            // at lambda 2 one replicate is congested, the other far from it;
            // the average stays non-congested
            c.metrics.mean_delay_capped = (l == 2.0 && rep == 0) ? 500.0 : 100.0;
            cells.push_back(c);
        }
    }
    const auto hat = lambda_hat_from_cells(cells, RouterKind::shortest_path());
    CHECK_FALSE(hat.found());  // avg at lambda 2 is 300 < 500: no crossing
}

TEST_CASE("failed cells are marked and kept") {
    SweepSpec spec = small_spec();
    spec.lambdas = {0.0, 0.4};  // lambda 0 spawns nothing: metrics error -> failed cell
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 8);
    int failed = 0;
    for (const auto& c : cells)
        if (c.failed) ++failed;
    CHECK(failed == 4);  // every lambda-0 cell
    emit_csv(cells, "failed.csv");
    const auto text = slurp("failed.csv");
    CHECK(text.find(",failed") != std::string::npos);
    const auto back = parse_csv("failed.csv");
    int back_failed = 0;
    for (const auto& c : back)
        if (c.failed) ++back_failed;
    CHECK(back_failed == failed);
    std::remove("failed.csv");
}

TEST_CASE("sweep surface shape: free band at low rates, boundary peaks at interior alpha") {
    SweepSpec spec;
    spec.topology = "grid5";
    spec.net = preset_network("grid5");
    spec.alphas = {0.0, 0.8, 1.0};
    spec.lambdas = {0.5, 2.0, 5.0, 7.0};
    spec.replicates = 2;
    spec.base.duration = 3600.0;
    spec.base.seed = 17;
    spec.routers = {RouterKind::coverage(0.8)};
    spec.jobs = 2;
    const auto cells = run_sweep(spec);

    auto congested_at = [&](double alpha, double lambda) {
        std::vector<RunMetrics> ms;
        for (const auto& c : cells)
            if (c.alpha == alpha && c.lambda == lambda && !c.failed) ms.push_back(c.metrics);
        REQUIRE(ms.size() == 2);
        return average_metrics(ms).congested;
    };

    // non-congested band at the lowest rate for every alpha
    for (double alpha : spec.alphas) CHECK_FALSE(congested_at(alpha, 0.5));
    // pure congestion avoidance collapses early, pure distance greed later,
    // and the interior alpha sustains rates that congest both extremes
    CHECK(congested_at(0.0, 2.0));
    CHECK(congested_at(1.0, 5.0));
    CHECK_FALSE(congested_at(0.8, 5.0));
    CHECK(congested_at(0.8, 7.0));
}

TEST_CASE("compare_routers: the same router listed twice gets the same lambda_hat") {
    const auto net = preset_network("grid5");
    SimConfig base;
    base.duration = 600.0;
    base.seed = 21;
    const std::vector<double> grid = {2.0, 4.0, 6.0, 8.0};
    const auto cmp = compare_routers(net, grid, 0.8, 1, base, 2,
                                     {RouterKind::coverage(0.8), RouterKind::coverage(0.8)});
    REQUIRE(cmp.size() == 2);
    CHECK(cmp[0].lambda_hat.found() == cmp[1].lambda_hat.found());
    if (cmp[0].lambda_hat.found())
        CHECK(*cmp[0].lambda_hat.lambda_hat == *cmp[1].lambda_hat.lambda_hat);
    REQUIRE(cmp[0].curve.size() == cmp[1].curve.size());
    for (std::size_t i = 0; i < cmp[0].curve.size(); ++i)
        CHECK(cmp[0].curve[i].metrics.mean_delay == cmp[1].curve[i].metrics.mean_delay);
}

TEST_CASE("run_sweep validates its spec") {
    SweepSpec spec = small_spec();
    spec.alphas = {};
    CHECK_THROWS(run_sweep(spec));
    spec = small_spec();
    spec.alphas = {0.9, 0.3};  // unsorted
    CHECK_THROWS(run_sweep(spec));
    spec = small_spec();
    spec.replicates = 0;
    CHECK_THROWS(run_sweep(spec));
}
