#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Integration tests that drive the covroute binary (path in COVROUTE_BIN).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* env = std::getenv("COVROUTE_BIN");
    REQUIRE(env != nullptr);
    return env;
}

struct CmdResult {
    int exit_code;
    std::string output;
};

CmdResult run_cmd(const std::string& args) {
    const std::string out_file = "cli_out.tmp";
    const std::string cmd = binary() + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_file.c_str());
    return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("covroute_cli_" + std::to_string(::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("net stats on the grid5 preset reports the published numbers") {
    const auto r = run_cmd("net stats --preset grid5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"nodes\": 25") != std::string::npos);
    CHECK(r.output.find("\"edges\": 40") != std::string::npos);
    CHECK(r.output.find("\"mean_degree\": 3.2") != std::string::npos);
    CHECK(r.output.find("\"diameter\": 800.0") != std::string::npos);
}

TEST_CASE("generate then stats round-trips the statistics") {
    TempDir tmp;
    const auto net_file = (tmp.path / "g10.json").string();
    const auto gen = run_cmd("net generate --preset grid10 --out " + net_file);
    CHECK(gen.exit_code == 0);
    const auto from_file = run_cmd("net stats " + net_file);
    const auto from_preset = run_cmd("net stats --preset grid10");
    CHECK(from_file.exit_code == 0);
    // identical stats apart from the network label line
    auto strip_label = [](std::string s) {
        const auto pos = s.find("\"network\"");
        if (pos != std::string::npos) s.erase(pos, s.find('\n', pos) - pos);
        return s;
    };
    CHECK(strip_label(from_file.output) == strip_label(from_preset.output));
}

TEST_CASE("missing preset name is a usage error with the documented exit code") {
    const auto r = run_cmd("net stats");
    CHECK(r.exit_code == 2);
    const auto bad = run_cmd("net stats --preset grid777");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("lambda zero surfaces the metrics error as a runtime exit") {
    TempDir tmp;
    const auto out = (tmp.path / "runz").string();
    const auto r = run_cmd("sim run --lambda 0 --duration 60 --out " + out);
    CHECK(r.exit_code == 3);
    // the zero-trip log is still written
    CHECK(fs::exists(fs::path(out) / "trips.csv"));
    const auto log = slurp(fs::path(out) / "trips.csv");
    CHECK(log == "vehicle_id,origin,dest,spawn_time,arrival_time,free_flow_time\n");
}

TEST_CASE("same config and seed produce identical trip logs") {
    TempDir tmp;
    const auto out1 = (tmp.path / "a").string();
    const auto out2 = (tmp.path / "b").string();
    const std::string flags = " --preset grid5 --lambda 1.2 --seed 99 --duration 400 --out ";
    CHECK(run_cmd("sim run" + flags + out1).exit_code == 0);
    CHECK(run_cmd("sim run" + flags + out2).exit_code == 0);
    CHECK(slurp(fs::path(out1) / "trips.csv") == slurp(fs::path(out2) / "trips.csv"));
}

TEST_CASE("flag overrides supersede the config file and land in the manifest") {
    TempDir tmp;
    const auto cfg_path = tmp.path / "cfg.json";
    std::ofstream(cfg_path) << R"({"network":{"preset":"grid5"},"alpha":0.5,"lambda":0.4,)"
                            << R"("duration":200,"seed":7})";
    const auto out = (tmp.path / "run").string();
    const auto r =
        run_cmd("sim run --config " + cfg_path.string() + " --alpha 0.9 --out " + out);
    CHECK(r.exit_code == 0);
    const auto manifest = slurp(fs::path(out) / "manifest.json");
    CHECK(manifest.find("\"alpha\": 0.9") != std::string::npos);
    CHECK(manifest.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("sweep emits csv, heatmaps and manifest atomically") {
    TempDir tmp;
    const auto spec_path = tmp.path / "spec.json";
    std::ofstream(spec_path)
        << R"({"network":{"preset":"grid5"},"alphas":[0.5,0.9],"lambdas":[0.5,1.0],)"
        << R"("replicates":1,"routers":["coverage"],"seed":3,"sim":{"duration":200}})";
    const auto out = (tmp.path / "sw").string();
    const auto r = run_cmd("sweep --spec " + spec_path.string() + " --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(fs::path(out) / "cells.csv"));
    CHECK(fs::exists(fs::path(out) / "heatmap_coverage.txt"));
    CHECK(fs::exists(fs::path(out) / "manifest.json"));
    // no temp directory left behind
    int entries = 0;
    for (const auto& e : fs::directory_iterator(tmp.path)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 2);  // spec.json and the final out dir

    // existing output directory is rejected up front
    const auto again = run_cmd("sweep --spec " + spec_path.string() + " --out " + out);
    CHECK(again.exit_code == 2);
}

TEST_CASE("sweep with a missing network file fails before simulating") {
    TempDir tmp;
    const auto spec_path = tmp.path / "spec.json";
    std::ofstream(spec_path) << R"({"network":{"file":"nope.json"},"alphas":[0.5],)"
                             << R"("lambdas":[0.5],"replicates":1})";
    const auto out = (tmp.path / "sw").string();
    const auto r = run_cmd("sweep --spec " + spec_path.string() + " --out " + out);
    CHECK(r.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("compare prints a lambda_hat table with a gain column") {
    const auto r = run_cmd(
        "compare --preset grid5 --alpha 0.8 --lambda-grid 3.0:6.0:1.5 --replicates 1 "
        "--duration 600 --seed 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("router") != std::string::npos);
    CHECK(r.output.find("lambda_hat") != std::string::npos);
    CHECK(r.output.find("vs_sp") != std::string::npos);
    CHECK(r.output.find("sp") != std::string::npos);
    CHECK(r.output.find("coverage") != std::string::npos);
}

TEST_CASE("print-defaults emits the embedded configuration") {
    const auto r = run_cmd("--print-defaults");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"eta_crit\": 0.2") != std::string::npos);
    CHECK(r.output.find("\"sigma\": 10.0") != std::string::npos);
    CHECK(r.output.find("\"replicates\": 3") != std::string::npos);
    CHECK(r.output.find("\"v_max\": 13.9") != std::string::npos);
}

TEST_CASE("COVERAGE_ROUTER_SEED is the last-resort seed default") {
    TempDir tmp;
    const auto cfg_path = tmp.path / "cfg.json";
    // config without a seed field
    std::ofstream(cfg_path) << R"({"network":{"preset":"grid5"},"lambda":0.5,"duration":100})";
    const auto out = (tmp.path / "run").string();
    const std::string cmd = "COVERAGE_ROUTER_SEED=4242 " + binary() + " sim run --config " +
                            cfg_path.string() + " --out " + out + " > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    const auto manifest = slurp(fs::path(out) / "manifest.json");
    CHECK(manifest.find("\"seed\": 4242") != std::string::npos);
}
