#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aqc/error.hpp"
#include "aqc/graph.hpp"
#include "aqc/ising.hpp"
#include "aqc/lattice.hpp"
#include "aqc/rng.hpp"

namespace aqc {

enum class SiteRole { Computational, Dummy };

struct EdgeSetting {
    CouplingState state = CouplingState::Off;
    bool switchable = true; // redundancy-cluster links are fixed FM
    auto operator<=>(const EdgeSetting&) const = default;
};

/// Embedding of a logical graph into the lattice. Each logical vertex owns
/// one computational site plus the chain dummies and redundancy sites that
/// are ferromagnetically tied to it; every graph edge is realized by a
/// lattice path carrying exactly one antiferromagnetic hop.
struct Embedding {
    Graph graph;
    TriangularLattice lattice;
    std::map<Site, SiteRole> roles;     // active sites only
    std::map<Site, int> logical_of;     // active site -> logical vertex
    std::map<int, Site> comp_sites;     // logical vertex -> computational site
    std::map<LatticeEdge, EdgeSetting> edges; // absent == off
    std::map<std::pair<int, int>, std::vector<Site>> edge_paths; // u<v -> comp(u)..comp(v)
    std::map<int, std::vector<Site>> clusters; // vertex -> cluster sites (incl. comp)

    std::vector<Site> active_sites() const {
        std::vector<Site> out;
        out.reserve(roles.size());
        for (const auto& [s, r] : roles)
            out.push_back(s);
        return out; // map order == sorted
    }

    int site_index(const Site& s) const {
        auto it = roles.find(s);
        if (it == roles.end())
            throw RangeError("site " + to_string(s) + " is not active");
        return static_cast<int>(std::distance(roles.begin(), it));
    }

    CouplingState edge_state(const LatticeEdge& e) const {
        auto it = edges.find(e);
        return it == edges.end() ? CouplingState::Off : it->second.state;
    }
};

struct EmbedOptions {
    std::uint64_t seed = 0;
    int retries = 50;
};

struct EmbeddingReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct DecodedConfig {
    std::map<int, int> logical_spins;     // +1 / -1 / 0 == inconsistent
    std::map<int, double> chain_agreement; // fraction agreeing with the majority
    bool all_consistent() const {
        for (const auto& [v, s] : logical_spins)
            if (s == 0)
                return false;
        return true;
    }
};

namespace detail {

// Deterministic union-find over sites.
struct SiteUnion {
    std::map<Site, Site> parent;
    Site find(Site s) {
        auto it = parent.find(s);
        if (it == parent.end()) {
            parent[s] = s;
            return s;
        }
        if (it->second == s)
            return s;
        Site root = find(it->second);
        parent[s] = root;
        return root;
    }
    void unite(Site a, Site b) {
        Site ra = find(a), rb = find(b);
        if (rb < ra)
            std::swap(ra, rb);
        if (!(ra == rb))
            parent[rb] = ra;
    }
};

inline std::map<Site, std::vector<Site>> fm_components(const Embedding& e) {
    SiteUnion uf;
    for (const auto& [s, r] : e.roles)
        uf.find(s);
    for (const auto& [le, set] : e.edges)
        if (set.state == CouplingState::FM)
            uf.unite(le.a, le.b);
    std::map<Site, std::vector<Site>> comps;
    for (const auto& [s, r] : e.roles)
        comps[uf.find(s)].push_back(s);
    return comps;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Placement + routing. The paper only asserts embeddability, so any complete
// heuristic with a validator suffices at desk scale: greedy placement in BFS
// order on a x2-scaled grid of target positions, then randomized shortest-path
// routing with rip-up-and-retry.

namespace detail {

inline std::vector<std::vector<int>> bfs_layers(const Graph& g, int root,
                                                const std::vector<bool>& taken) {
    auto adj = g.adjacency();
    std::vector<std::vector<int>> layers;
    std::vector<int> level(static_cast<std::size_t>(g.vertex_count), -1);
    std::deque<int> q{root};
    level[static_cast<std::size_t>(root)] = 0;
    layers.push_back({root});
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        auto nb = adj[static_cast<std::size_t>(v)];
        std::sort(nb.begin(), nb.end());
        for (int w : nb) {
            if (level[static_cast<std::size_t>(w)] >= 0 || taken[static_cast<std::size_t>(w)])
                continue;
            level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
            if (static_cast<int>(layers.size()) <= level[static_cast<std::size_t>(w)])
                layers.push_back({});
            layers[static_cast<std::size_t>(level[static_cast<std::size_t>(w)])].push_back(w);
            q.push_back(w);
        }
    }
    return layers;
}

// Nearest usable free site to the target; ties broken uniformly by rng.
inline std::optional<Site> nearest_free(const TriangularLattice& lat, Site target,
                                        const std::set<Site>& occupied,
                                        std::mt19937_64& rng) {
    std::optional<Site> best;
    int best_d = 0;
    std::vector<Site> ties;
    for (int r = 0; r < lat.rows; ++r)
        for (int c = 0; c < lat.cols; ++c) {
            Site s{r, c};
            if (!lat.usable(s) || occupied.count(s))
                continue;
            int d = TriangularLattice::distance(s, target);
            if (!best || d < best_d) {
                best = s;
                best_d = d;
                ties.assign(1, s);
            } else if (d == best_d) {
                ties.push_back(s);
            }
        }
    if (!best)
        return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    return ties[pick(rng)];
}

// BFS shortest path from src to dst over free usable sites (dst exempt from
// the occupancy check). Neighbor expansion order is shuffled so equal-length
// routes are chosen uniformly.
inline std::optional<std::vector<Site>> route_path(const TriangularLattice& lat, Site src,
                                                   Site dst, const std::set<Site>& occupied,
                                                   std::mt19937_64& rng) {
    std::map<Site, Site> parent;
    std::deque<Site> q{src};
    parent[src] = src;
    while (!q.empty()) {
        Site s = q.front();
        q.pop_front();
        if (s == dst)
            break;
        auto nb = lat.neighbors(s);
        std::shuffle(nb.begin(), nb.end(), rng);
        for (const Site& t : nb) {
            if (!lat.usable(t) || parent.count(t))
                continue;
            if (occupied.count(t) && !(t == dst))
                continue;
            parent[t] = s;
            q.push_back(t);
        }
    }
    if (!parent.count(dst))
        return std::nullopt;
    std::vector<Site> path{dst};
    while (!(path.back() == src))
        path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

inline EmbeddingReport validate_embedding(const Embedding& e);

inline Embedding embed_graph(const Graph& g, const TriangularLattice& lattice,
                             const EmbedOptions& opts = {}) {
    {
        auto rep = validate(g);
        if (!rep.is_degree3_ok)
            throw ParameterError("graph exceeds degree 3");
        if (rep.planarity != Planarity::Planar)
            throw ParameterError("graph is not planar");
    }

    for (int attempt = 0; attempt < std::max(1, opts.retries); ++attempt) {
        auto rng = make_rng(derive_seed(opts.seed, "embed", static_cast<std::uint64_t>(attempt)));

        // --- placement ---
        std::map<int, Site> place;
        std::set<Site> occupied;
        std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count), false);
        int col_offset = 0;
        bool placed_all = true;
        for (int root = 0; root < g.vertex_count && placed_all; ++root) {
            if (seen[static_cast<std::size_t>(root)])
                continue;
            auto layers = detail::bfs_layers(g, root, seen);
            int width = 0;
            for (std::size_t l = 0; l < layers.size(); ++l) {
                for (std::size_t k = 0; k < layers[l].size(); ++k) {
                    int v = layers[l][k];
                    seen[static_cast<std::size_t>(v)] = true;
                    Site target{static_cast<int>(2 * l),
                                col_offset + static_cast<int>(2 * k)};
                    auto s = detail::nearest_free(lattice, target, occupied, rng);
                    if (!s) {
                        placed_all = false;
                        break;
                    }
                    place[v] = *s;
                    occupied.insert(*s);
                    width = std::max(width, static_cast<int>(2 * k) + 2);
                }
                if (!placed_all)
                    break;
            }
            col_offset += width + 1;
        }
        if (!placed_all)
            continue;

        // --- routing with rip-up-and-retry ---
        std::deque<std::pair<int, int>> queue(g.edges.begin(), g.edges.end());
        std::shuffle(queue.begin(), queue.end(), rng);
        std::map<std::pair<int, int>, std::vector<Site>> paths;
        std::set<Site> used = occupied; // comp sites + path interiors
        int budget = 4 * static_cast<int>(g.edges.size()) + 8;
        bool routed_all = true;
        while (!queue.empty()) {
            auto [u, v] = queue.front();
            queue.pop_front();
            std::set<Site> blocked = used;
            blocked.erase(place[u]);
            auto path = detail::route_path(lattice, place[u], place[v], blocked, rng);
            if (path) {
                for (std::size_t i = 1; i + 1 < path->size(); ++i)
                    used.insert((*path)[i]);
                paths[{u, v}] = *path;
                continue;
            }
            if (paths.empty() || budget-- <= 0) {
                routed_all = false;
                break;
            }
            // rip up a random routed edge and requeue both
            std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
            auto it = std::next(paths.begin(), static_cast<long>(pick(rng)));
            for (std::size_t i = 1; i + 1 < it->second.size(); ++i)
                used.erase(it->second[i]);
            queue.push_back(it->first);
            queue.push_back({u, v});
            paths.erase(it);
        }
        if (!routed_all)
            continue;

        // --- build ---
        Embedding e;
        e.graph = g;
        e.lattice = lattice;
        for (auto& [v, s] : place) {
            e.roles[s] = SiteRole::Computational;
            e.logical_of[s] = v;
            e.comp_sites[v] = s;
            e.clusters[v] = {s};
        }
        for (auto& [ge, path] : paths) {
            for (std::size_t i = 1; i + 1 < path.size(); ++i) {
                e.roles[path[i]] = SiteRole::Dummy;
                e.logical_of[path[i]] = ge.first; // dummies belong to the lower endpoint
            }
            // single AF hop at the end incident to the higher endpoint
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                bool last = (i + 2 == path.size());
                e.edges[LatticeEdge(path[i], path[i + 1])] =
                    EdgeSetting{last ? CouplingState::AF : CouplingState::FM, true};
            }
            e.edge_paths[ge] = path;
        }
        if (validate_embedding(e).ok())
            return e;
    }
    throw CapacityError("embedding failed for " + std::to_string(g.vertex_count) +
                        " vertices on " + std::to_string(lattice.rows) + "x" +
                        std::to_string(lattice.cols) + " lattice after retry budget");
}

/// Grows every logical vertex's cluster to r ferromagnetically connected
/// sites (the computational site plus r-1 dummies). Cluster links are
/// non-switchable. r must be odd so majority vote is defined.
inline Embedding add_redundancy(const Embedding& e, int copies) {
    if (copies < 1 || copies % 2 == 0)
        throw ParameterError("redundancy count must be odd and >= 1, got " +
                             std::to_string(copies));
    if (copies == 1)
        return e;
    Embedding out = e;
    for (const auto& [v, comp] : e.comp_sites) {
        auto& cluster = out.clusters[v];
        std::set<Site> in_cluster(cluster.begin(), cluster.end());
        std::deque<Site> frontier(cluster.begin(), cluster.end());
        while (static_cast<int>(cluster.size()) < copies && !frontier.empty()) {
            Site s = frontier.front();
            frontier.pop_front();
            auto nb = out.lattice.neighbors(s); // sorted by construction order; sort anyway
            std::sort(nb.begin(), nb.end());
            for (const Site& t : nb) {
                if (static_cast<int>(cluster.size()) >= copies)
                    break;
                if (!out.lattice.usable(t) || out.roles.count(t) || in_cluster.count(t))
                    continue;
                out.roles[t] = SiteRole::Dummy;
                out.logical_of[t] = v;
                out.edges[LatticeEdge(s, t)] = EdgeSetting{CouplingState::FM, false};
                cluster.push_back(t);
                in_cluster.insert(t);
                frontier.push_back(t);
            }
        }
        if (static_cast<int>(cluster.size()) < copies)
            throw CapacityError("cannot grow redundancy cluster to " +
                                std::to_string(copies) + " sites at vertex " +
                                std::to_string(v));
    }
    return out;
}

inline EmbeddingReport validate_embedding(const Embedding& e) {
    EmbeddingReport rep;
    auto bad = [&](const std::string& msg) { rep.violations.push_back(msg); };

    // roles / logical map consistency
    std::map<int, int> comp_count;
    for (const auto& [s, role] : e.roles) {
        if (!e.lattice.in_bounds(s))
            bad("active site " + to_string(s) + " out of bounds");
        if (e.lattice.is_defect(s))
            bad("active site " + to_string(s) + " is a defect");
        auto it = e.logical_of.find(s);
        if (it == e.logical_of.end()) {
            bad("active site " + to_string(s) + " has no logical vertex");
            continue;
        }
        if (it->second < 0 || it->second >= e.graph.vertex_count)
            bad("site " + to_string(s) + " maps to invalid vertex");
        else if (role == SiteRole::Computational)
            ++comp_count[it->second];
    }
    for (int v = 0; v < e.graph.vertex_count; ++v) {
        auto it = comp_count.find(v);
        if (it == comp_count.end())
            bad("vertex " + std::to_string(v) + " has no computational site");
        else if (it->second != 1)
            bad("vertex " + std::to_string(v) + " has " + std::to_string(it->second) +
                " computational sites");
    }

    // couplings: adjacency, activity, no defects
    for (const auto& [le, set] : e.edges) {
        if (set.state == CouplingState::Off)
            continue;
        if (!e.lattice.adjacent(le.a, le.b))
            bad("coupling " + to_string(le.a) + "-" + to_string(le.b) +
                " joins non-neighbor sites");
        for (const Site& s : {le.a, le.b}) {
            if (e.lattice.is_defect(s))
                bad("coupling touches defect site " + to_string(s));
            else if (!e.roles.count(s))
                bad("coupling touches unused site " + to_string(s));
        }
    }

    // paths: one per graph edge, exactly one AF hop, right endpoints
    std::set<LatticeEdge> path_af;
    std::map<Site, std::pair<int, int>> interior_owner;
    for (auto [u, v] : e.graph.edges) {
        auto it = e.edge_paths.find({u, v});
        if (it == e.edge_paths.end()) {
            bad("graph edge " + std::to_string(u) + "-" + std::to_string(v) + " has no path");
            continue;
        }
        const auto& path = it->second;
        if (path.size() < 2) {
            bad("path for edge " + std::to_string(u) + "-" + std::to_string(v) + " too short");
            continue;
        }
        if (!(e.comp_sites.count(u) && path.front() == e.comp_sites.at(u)) ||
            !(e.comp_sites.count(v) && path.back() == e.comp_sites.at(v)))
            bad("path for edge " + std::to_string(u) + "-" + std::to_string(v) +
                " does not join the computational sites");
        int af = 0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            if (!e.lattice.adjacent(path[i], path[i + 1]))
                bad("path hop " + to_string(path[i]) + "-" + to_string(path[i + 1]) +
                    " not a lattice edge");
            auto st = e.edge_state(LatticeEdge(path[i], path[i + 1]));
            if (st == CouplingState::AF) {
                ++af;
                path_af.insert(LatticeEdge(path[i], path[i + 1]));
            } else if (st != CouplingState::FM) {
                bad("path hop " + to_string(path[i]) + "-" + to_string(path[i + 1]) +
                    " is switched off");
            }
        }
        if (af != 1)
            bad("path AF count != 1 for edge " + std::to_string(u) + "-" +
                std::to_string(v) + " (got " + std::to_string(af) + ")");
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            auto [io, ins] = interior_owner.insert({path[i], {u, v}});
            if (!ins)
                bad("chain site " + to_string(path[i]) + " shared by edges " +
                    std::to_string(io->second.first) + "-" + std::to_string(io->second.second) +
                    " and " + std::to_string(u) + "-" + std::to_string(v));
        }
    }
    for (const auto& [le, set] : e.edges)
        if (set.state == CouplingState::AF && !path_af.count(le))
            bad("stray AF coupling " + to_string(le.a) + "-" + to_string(le.b));

    // every FM-connected component maps to exactly one logical vertex
    for (const auto& [root, sites] : detail::fm_components(e)) {
        std::set<int> owners;
        for (const Site& s : sites) {
            auto it = e.logical_of.find(s);
            if (it != e.logical_of.end())
                owners.insert(it->second);
        }
        if (owners.size() > 1) {
            std::ostringstream msg;
            msg << "FM component of " << to_string(root) << " spans vertices";
            for (int v : owners)
                msg << " " << v;
            bad(msg.str());
        }
    }

    // clusters contain the computational site and stay FM-connected to it
    auto comps = detail::fm_components(e);
    std::map<Site, Site> comp_root;
    for (const auto& [root, sites] : comps)
        for (const Site& s : sites)
            comp_root[s] = root;
    for (const auto& [v, cluster] : e.clusters) {
        if (!e.comp_sites.count(v))
            continue;
        Site comp = e.comp_sites.at(v);
        if (std::find(cluster.begin(), cluster.end(), comp) == cluster.end())
            bad("cluster of vertex " + std::to_string(v) + " misses its computational site");
        for (const Site& s : cluster)
            if (!comp_root.count(s) || !(comp_root[s] == comp_root[comp]))
                bad("cluster site " + to_string(s) + " not FM-connected to vertex " +
                    std::to_string(v));
    }
    return rep;
}

/// Majority vote per logical vertex over the sites of its FM component
/// (restricted to sites actually owned by the vertex). Exact ties decode as
/// inconsistent rather than guessing.
inline DecodedConfig decode_config(const Embedding& e, const std::map<Site, int>& spins) {
    for (const auto& [s, role] : e.roles)
        if (!spins.count(s))
            throw ShapeError("missing spin value for site " + to_string(s));

    auto comps = detail::fm_components(e);
    std::map<Site, Site> root_of;
    for (const auto& [root, sites] : comps)
        for (const Site& s : sites)
            root_of[s] = root;

    DecodedConfig out;
    for (const auto& [v, comp] : e.comp_sites) {
        Site root = root_of.at(comp);
        int up = 0, down = 0;
        for (const Site& s : comps.at(root)) {
            auto lo = e.logical_of.find(s);
            if (lo == e.logical_of.end() || lo->second != v)
                continue;
            (spins.at(s) > 0 ? up : down)++;
        }
        const int total = up + down;
        if (up > down)
            out.logical_spins[v] = +1;
        else if (down > up)
            out.logical_spins[v] = -1;
        else
            out.logical_spins[v] = 0;
        out.chain_agreement[v] =
            total == 0 ? 0.0 : static_cast<double>(std::max(up, down)) / total;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ideal embedded model: the logical field placed once per vertex, graph
// couplings on the AF hops, and a strong ferromagnetic -K on every FM link.

struct EmbeddedModel {
    std::vector<Site> sites; // index order for the spin model
    std::vector<double> fields;
    std::vector<std::tuple<int, int, double>> couplings;
    double chain_strength = 0.0;
    int fm_edge_count = 0;
};

inline EmbeddedModel build_ideal_embedded(const Embedding& e, const IsingModel& logical,
                                          double chain_strength = 0.0) {
    if (logical.spin_count != e.graph.vertex_count)
        throw ShapeError("logical model does not match embedded graph");
    EmbeddedModel em;
    em.sites = e.active_sites();
    std::map<Site, int> idx;
    for (std::size_t i = 0; i < em.sites.size(); ++i)
        idx[em.sites[i]] = static_cast<int>(i);

    double max_h = 0.0, max_j = 0.0;
    for (double h : logical.fields)
        max_h = std::max(max_h, std::abs(h));
    for (auto [i, j, J] : logical.couplings)
        max_j = std::max(max_j, std::abs(J));
    em.chain_strength =
        chain_strength > 0.0 ? chain_strength : 4.0 * std::max(max_h, max_j);

    em.fields.assign(em.sites.size(), 0.0);
    for (const auto& [v, comp] : e.comp_sites)
        em.fields[static_cast<std::size_t>(idx.at(comp))] =
            logical.fields[static_cast<std::size_t>(v)];

    std::map<std::pair<int, int>, double> logical_j;
    for (auto [i, j, J] : logical.couplings)
        logical_j[{i, j}] = J;

    // AF hop of each path carries that edge's logical coupling
    std::set<LatticeEdge> af_assigned;
    for (const auto& [ge, path] : e.edge_paths) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            LatticeEdge le(path[i], path[i + 1]);
            if (e.edge_state(le) == CouplingState::AF) {
                em.couplings.emplace_back(std::min(idx.at(le.a), idx.at(le.b)),
                                          std::max(idx.at(le.a), idx.at(le.b)),
                                          logical_j.at(ge));
                af_assigned.insert(le);
            }
        }
    }
    for (const auto& [le, set] : e.edges) {
        if (set.state == CouplingState::FM) {
            em.couplings.emplace_back(std::min(idx.at(le.a), idx.at(le.b)),
                                      std::max(idx.at(le.a), idx.at(le.b)),
                                      -em.chain_strength);
            ++em.fm_edge_count;
        } else if (set.state == CouplingState::AF && !af_assigned.count(le)) {
            throw ContractError("AF coupling outside any edge path");
        }
    }
    std::sort(em.couplings.begin(), em.couplings.end());
    return em;
}

struct PreservationCheck {
    bool exact = false;
    bool broken_chains = false;
    double embedded_energy = 0.0;
    int embedded_degeneracy = 0;
    std::vector<std::vector<int>> decoded_configs; // unique, sorted
    std::vector<std::string> notes;
};

/// Exhaustively enumerates the embedded ideal model's ground manifold and
/// checks that it decodes exactly onto the logical ground manifold with no
/// broken chain in any ground state.
inline PreservationCheck check_ground_state_preservation(const Embedding& e,
                                                         const IsingModel& logical,
                                                         double chain_strength = 0.0,
                                                         int site_cap = 24) {
    auto em = build_ideal_embedded(e, logical, chain_strength);
    const int n = static_cast<int>(em.sites.size());
    if (n > site_cap)
        throw SizeLimitError("embedded scan limited to " + std::to_string(site_cap) +
                             " sites, got " + std::to_string(n));

    IsingModel site_model; // generic spin model reusing the exhaustive scanner
    site_model.spin_count = n;
    site_model.fields = em.fields;
    site_model.couplings = em.couplings;
    auto ground = ising_ground_states(site_model, site_cap);

    PreservationCheck out;
    out.embedded_energy = ground.energy;
    out.embedded_degeneracy = ground.degeneracy;

    std::set<std::vector<int>> decoded;
    for (const auto& cfg : ground.configs) {
        std::map<Site, int> spins;
        for (int i = 0; i < n; ++i)
            spins[em.sites[static_cast<std::size_t>(i)]] = cfg[static_cast<std::size_t>(i)];
        auto dec = decode_config(e, spins);
        for (const auto& [v, agree] : dec.chain_agreement)
            if (agree < 1.0)
                out.broken_chains = true;
        std::vector<int> logical_cfg(static_cast<std::size_t>(e.graph.vertex_count), 0);
        for (const auto& [v, s] : dec.logical_spins)
            logical_cfg[static_cast<std::size_t>(v)] = s;
        decoded.insert(logical_cfg);
    }
    out.decoded_configs.assign(decoded.begin(), decoded.end());

    auto logical_ground = ising_ground_states(logical);
    std::set<std::vector<int>> expected(logical_ground.configs.begin(),
                                        logical_ground.configs.end());
    out.exact = !out.broken_chains && decoded == expected;
    if (decoded != expected)
        out.notes.push_back("decoded manifold differs from logical manifold");
    if (out.broken_chains)
        out.notes.push_back("broken chain in a ground state");
    return out;
}

/// ASCII layout rendering for documentation: one character per site, odd
/// rows indented half a cell. Digits mark computational sites (vertex id mod
/// 10), 'o' cluster dummies, '+' chain dummies, 'X' defects.
inline std::string render_ascii(const Embedding& e) {
    std::set<Site> cluster_sites;
    for (const auto& [v, cluster] : e.clusters)
        for (const Site& s : cluster)
            if (!(e.roles.count(s) && e.roles.at(s) == SiteRole::Computational))
                cluster_sites.insert(s);
    std::ostringstream out;
    for (int r = 0; r < e.lattice.rows; ++r) {
        if (r & 1)
            out << ' ';
        for (int c = 0; c < e.lattice.cols; ++c) {
            Site s{r, c};
            char ch = '.';
            if (e.lattice.is_defect(s))
                ch = 'X';
            else if (auto it = e.roles.find(s); it != e.roles.end()) {
                if (it->second == SiteRole::Computational)
                    ch = static_cast<char>('0' + e.logical_of.at(s) % 10);
                else
                    ch = cluster_sites.count(s) ? 'o' : '+';
            }
            out << ch << ' ';
        }
        out << '\n';
    }
    int af = 0, fm = 0;
    for (const auto& [le, set] : e.edges) {
        if (set.state == CouplingState::AF)
            ++af;
        if (set.state == CouplingState::FM)
            ++fm;
    }
    out << "# " << e.graph.vertex_count << " vertices, " << e.graph.edges.size()
        << " edges; AF couplings " << af << ", FM couplings " << fm << "\n";
    return out.str();
}

} // namespace aqc
