#include <fstream>
#include <sstream>
#include <stdexcept>

#include "covroute/network.hpp"
#include "json.hpp"

namespace covroute {

using nlohmann::json;

std::string network_to_json(const Network& net) {
    json doc;
    doc["junctions"] = json::array();
    for (const auto& j : net.junctions)
        doc["junctions"].push_back({{"id", j.id}, {"x", j.x}, {"y", j.y}});
    doc["roads"] = json::array();
    for (const auto& r : net.roads)
        doc["roads"].push_back({{"id", r.id},
                                {"from", r.from},
                                {"to", r.to},
                                {"length", r.length},
                                {"capacity", r.capacity},
                                {"speed_limit", r.speed_limit}});
    return doc.dump(2) + "\n";
}

Network network_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.contains("junctions") || !doc.contains("roads"))
        throw std::runtime_error("network file needs 'junctions' and 'roads' arrays");

    Network net;
    for (const auto& j : doc.at("junctions")) {
        const int id = net.add_junction(j.at("x").get<double>(), j.at("y").get<double>());
        if (id != j.at("id").get<int>())
            throw std::runtime_error("junction ids must be contiguous from 0 in file order");
    }

    // Roads keep their file ids; the paired-reverse table is rebuilt from
    // endpoints and the structural invariants checked afterwards.
    for (const auto& r : doc.at("roads")) {
        Road road;
        road.id = r.at("id").get<int>();
        road.from = r.at("from").get<int>();
        road.to = r.at("to").get<int>();
        road.length = r.at("length").get<double>();
        road.capacity = r.at("capacity").get<int>();
        road.speed_limit = r.at("speed_limit").get<double>();
        road.load = 0;
        if (road.id != net.road_count())
            throw std::runtime_error("road ids must be contiguous from 0 in file order");
        if (road.from < 0 || road.from >= net.junction_count() || road.to < 0 ||
            road.to >= net.junction_count())
            throw std::runtime_error("road endpoint out of range in network file");
        net.roads.push_back(road);
        net.adjacency[static_cast<std::size_t>(road.from)].push_back(road.id);
    }
    net.reverse_id.assign(net.roads.size(), -1);
    for (const auto& r : net.roads) {
        if (net.reverse_id[static_cast<std::size_t>(r.id)] != -1) continue;
        int rev = -1;
        for (int rid : net.out_roads(r.to)) {
            if (net.roads[static_cast<std::size_t>(rid)].to == r.from) {
                rev = rid;
                break;
            }
        }
        if (rev < 0)
            throw std::runtime_error("road without a paired reverse in network file");
        net.reverse_id[static_cast<std::size_t>(r.id)] = rev;
        net.reverse_id[static_cast<std::size_t>(rev)] = r.id;
    }
    if (net.junction_count() < 2 || net.roads.empty())
        throw std::runtime_error("network file needs at least two junctions and one road");
    net.validate();
    if (!net.is_connected()) throw std::runtime_error("network file is disconnected");
    return net;
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write network file: " + path);
    out << network_to_json(net);
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read network file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

}  // namespace covroute
