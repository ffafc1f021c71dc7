#include <stdexcept>

#include "covroute/network.hpp"

namespace covroute {

namespace {

// Fixed seeds so the named presets are the same network in every build.
constexpr std::uint64_t kRandomPresetSeed = 11;
constexpr std::uint64_t kScaleFreePresetSeed = 4;

}  // namespace

std::vector<std::string> preset_names() {
    return {"grid5", "grid10", "random", "spiderweb", "scalefree"};
}

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names())
        if (n == name) return true;
    return false;
}

Network preset_network(const std::string& name) {
    if (name == "grid5") return build_grid(5, 5, 100.0);
    if (name == "grid10") return build_grid(10, 10, 100.0);
    if (name == "random")
        return build_random_rewire(build_grid(10, 10, 100.0), 50, kRandomPresetSeed);
    if (name == "spiderweb") return build_spiderweb(5, 10, 100.0);
    if (name == "scalefree") return build_scale_free(48, 58, kScaleFreePresetSeed);
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace covroute
