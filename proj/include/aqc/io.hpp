#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aqc/device.hpp"
#include "aqc/embedding.hpp"
#include "aqc/error.hpp"
#include "aqc/graph.hpp"
#include "aqc/ising.hpp"
#include "aqc/measurement.hpp"
#include "aqc/schedule.hpp"

namespace aqc {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path);
    out << content;
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError("invalid JSON in " + what);
    return j;
}

// --- Graph ------------------------------------------------------------------

inline json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.vertex_count;
    j["edges"] = json::array();
    for (auto [u, v] : g.edges)
        j["edges"].push_back({u, v});
    if (!g.labels.empty()) {
        json labels = json::object();
        for (const auto& [v, name] : g.labels)
            labels[std::to_string(v)] = name;
        j["labels"] = labels;
    }
    return j;
}

inline Graph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw ParseError("graph JSON needs fields 'n' and 'edges'");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"])
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph g = Graph::make(j["n"].get<int>(), std::move(edges));
    if (j.contains("labels"))
        for (const auto& [k, v] : j["labels"].items())
            g.labels[std::stoi(k)] = v.get<std::string>();
    return g;
}

/// Loads a graph from a file, choosing the format by extension (.json for
/// the JSON mirror, edge-list text otherwise).
inline Graph load_graph(const std::string& path) {
    const std::string text = read_file(path);
    if (std::filesystem::path(path).extension() == ".json")
        return graph_from_json(parse_json(text, path));
    return parse_graph(text);
}

// --- Ising model --------------------------------------------------------------

inline json ising_to_json(const IsingModel& m) {
    json j;
    j["n"] = m.spin_count;
    j["penalty"] = m.penalty;
    j["fields"] = m.fields;
    j["couplings"] = json::array();
    for (auto [i, k, J] : m.couplings)
        j["couplings"].push_back({json(i), json(k), json(J)});
    j["convention"] = m.convention;
    return j;
}

inline IsingModel ising_from_json(const json& j) {
    IsingModel m;
    m.spin_count = j.at("n").get<int>();
    m.penalty = j.value("penalty", 0.0);
    m.fields = j.at("fields").get<std::vector<double>>();
    for (const auto& c : j.at("couplings"))
        m.couplings.emplace_back(c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<double>());
    m.convention = j.value("convention", "in_set=+1");
    return m;
}

// --- Embedding ----------------------------------------------------------------

inline json embedding_to_json(const Embedding& e) {
    json j;
    j["lattice"]["rows"] = e.lattice.rows;
    j["lattice"]["cols"] = e.lattice.cols;
    j["lattice"]["defects"] = json::array();
    for (const auto& s : e.lattice.defects)
        j["lattice"]["defects"].push_back({s.r, s.c});
    j["graph"] = graph_to_json(e.graph);
    j["roles"] = json::array();
    for (const auto& [s, role] : e.roles)
        j["roles"].push_back(
            {json(s.r), json(s.c), json(role == SiteRole::Computational ? "comp" : "dummy")});
    j["logical"] = json::array();
    for (const auto& [s, v] : e.logical_of)
        j["logical"].push_back({s.r, s.c, v});
    j["edges"] = json::array();
    for (const auto& [le, set] : e.edges)
        j["edges"].push_back({json(le.a.r), json(le.a.c), json(le.b.r), json(le.b.c),
                              json(to_string(set.state)), json(set.switchable)});
    j["paths"] = json::object();
    for (const auto& [ge, path] : e.edge_paths) {
        json arr = json::array();
        for (const auto& s : path)
            arr.push_back({s.r, s.c});
        j["paths"][std::to_string(ge.first) + "-" + std::to_string(ge.second)] = arr;
    }
    j["clusters"] = json::object();
    for (const auto& [v, cluster] : e.clusters) {
        json arr = json::array();
        for (const auto& s : cluster)
            arr.push_back({s.r, s.c});
        j["clusters"][std::to_string(v)] = arr;
    }
    return j;
}

inline Embedding embedding_from_json(const json& j) {
    Embedding e;
    e.lattice.rows = j.at("lattice").at("rows").get<int>();
    e.lattice.cols = j.at("lattice").at("cols").get<int>();
    for (const auto& d : j.at("lattice").value("defects", json::array()))
        e.lattice.defects.insert({d.at(0).get<int>(), d.at(1).get<int>()});
    e.graph = graph_from_json(j.at("graph"));
    for (const auto& r : j.at("roles")) {
        Site s{r.at(0).get<int>(), r.at(1).get<int>()};
        e.roles[s] = r.at(2).get<std::string>() == "comp" ? SiteRole::Computational
                                                          : SiteRole::Dummy;
    }
    for (const auto& r : j.at("logical")) {
        Site s{r.at(0).get<int>(), r.at(1).get<int>()};
        e.logical_of[s] = r.at(2).get<int>();
        if (e.roles.count(s) && e.roles.at(s) == SiteRole::Computational)
            e.comp_sites[e.logical_of[s]] = s;
    }
    for (const auto& r : j.at("edges")) {
        LatticeEdge le({r.at(0).get<int>(), r.at(1).get<int>()},
                       {r.at(2).get<int>(), r.at(3).get<int>()});
        const std::string st = r.at(4).get<std::string>();
        EdgeSetting set;
        set.state = st == "AF" ? CouplingState::AF
                               : (st == "FM" ? CouplingState::FM : CouplingState::Off);
        set.switchable = r.at(5).get<bool>();
        e.edges[le] = set;
    }
    for (const auto& [key, arr] : j.at("paths").items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos)
            throw ParseError("bad path key '" + key + "'");
        std::pair<int, int> ge{std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1))};
        std::vector<Site> path;
        for (const auto& s : arr)
            path.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        e.edge_paths[ge] = path;
    }
    for (const auto& [key, arr] : j.at("clusters").items()) {
        std::vector<Site> cluster;
        for (const auto& s : arr)
            cluster.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        e.clusters[std::stoi(key)] = cluster;
    }
    return e;
}

// --- Device parameters ----------------------------------------------------------

inline json device_params_to_json(const DeviceParams& p) {
    return json{{"E_J", p.E_J},     {"I_c", p.I_c},           {"M", p.M},
                {"EJ_over_EC", p.EJ_over_EC}, {"beta", p.beta}, {"gamma", p.gamma},
                {"f_base", p.f_base}};
}

inline DeviceParams device_params_from_json(const json& j) {
    DeviceParams p;
    p.E_J = j.value("E_J", p.E_J);
    p.I_c = j.value("I_c", p.I_c);
    p.M = j.value("M", p.M);
    p.EJ_over_EC = j.value("EJ_over_EC", p.EJ_over_EC);
    p.beta = j.value("beta", p.beta);
    p.gamma = j.value("gamma", p.gamma);
    p.f_base = j.value("f_base", p.f_base);
    p.check();
    return p;
}

// --- Schedule / state -----------------------------------------------------------

inline json schedule_to_json(const Schedule& s) {
    json j;
    j["model"] = s.model == ScheduleModel::IdealInterpolation ? "ideal" : "device";
    j["total_time"] = s.total_time;
    j["steps"] = s.steps;
    j["start_field"] = s.start_field;
    j["start_offset"] = {{"d_top", s.start_offset.d_top}, {"d_bot", s.start_offset.d_bot}};
    j["problem"] = s.problem == ProblemKind::Device ? "device" : "ideal-ising";
    if (s.problem == ProblemKind::IdealIsing)
        j["ideal"] = {{"penalty", s.ideal.penalty},
                      {"chain_strength", s.ideal.chain_strength},
                      {"axis_deg", s.ideal.axis_deg}};
    return j;
}

inline Schedule schedule_from_json(const json& j) {
    Schedule s;
    const std::string model = j.value("model", "ideal");
    s.model = model == "device" ? ScheduleModel::DevicePath : ScheduleModel::IdealInterpolation;
    s.total_time = j.value("total_time", s.total_time);
    s.steps = j.value("steps", s.steps);
    s.start_field = j.value("start_field", s.start_field);
    if (j.contains("start_offset")) {
        s.start_offset.d_top = j["start_offset"].value("d_top", s.start_offset.d_top);
        s.start_offset.d_bot = j["start_offset"].value("d_bot", s.start_offset.d_bot);
    }
    const std::string problem = j.value("problem", "device");
    s.problem = problem == "ideal-ising" ? ProblemKind::IdealIsing : ProblemKind::Device;
    if (j.contains("ideal")) {
        s.ideal.penalty = j["ideal"].value("penalty", s.ideal.penalty);
        s.ideal.chain_strength = j["ideal"].value("chain_strength", s.ideal.chain_strength);
        s.ideal.axis_deg = j["ideal"].value("axis_deg", s.ideal.axis_deg);
    }
    return s;
}

inline json state_to_json(const Eigen::VectorXcd& state) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        re.push_back(state[i].real());
        im.push_back(state[i].imag());
    }
    return json{{"re", re}, {"im", im}};
}

inline Eigen::VectorXcd state_from_json(const json& j) {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size())
        throw ShapeError("state re/im length mismatch");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = {re[i], im[i]};
    return v;
}

inline json ensemble_to_json(const SpinEnsemble& ens) {
    json arr = json::array();
    for (const auto& [mask, p] : ens.configs)
        arr.push_back({json(mask), json(p)});
    return json{{"configs", arr}};
}

inline SpinEnsemble ensemble_from_json(const json& j) {
    SpinEnsemble ens;
    for (const auto& c : j.at("configs"))
        ens.configs.emplace_back(c.at(0).get<std::uint64_t>(), c.at(1).get<double>());
    return ens;
}

inline json measure_stats_to_json(const MeasureStats& stats) {
    json agreement = json::object();
    for (const auto& [k, v] : stats.per_cluster_agreement)
        agreement[k] = v;
    return json{{"shots", stats.shots},
                {"fraction_valid", stats.fraction_valid},
                {"best_size", stats.best_size},
                {"logical_error_rate_observed", stats.logical_error_rate_observed},
                {"per_cluster_agreement", agreement}};
}

} // namespace aqc
