#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "aqc/error.hpp"

namespace aqc {

/// Undirected simple graph on dense vertex ids 0..n-1. Immutable by
/// convention once built; labels are display-only.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // normalized u < v, sorted, unique
    std::map<int, std::string> labels;

    static Graph make(int n, std::vector<std::pair<int, int>> raw_edges) {
        Graph g;
        if (n < 0)
            throw ParameterError("vertex count must be non-negative");
        g.vertex_count = n;
        std::set<std::pair<int, int>> uniq;
        for (auto [u, v] : raw_edges) {
            if (u == v)
                throw ParameterError("self-loop on vertex " + std::to_string(u));
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw RangeError("edge endpoint out of range: " + std::to_string(u) +
                                 " " + std::to_string(v));
            uniq.insert({std::min(u, v), std::max(u, v)});
        }
        g.edges.assign(uniq.begin(), uniq.end());
        return g;
    }

    bool has_edge(int u, int v) const {
        auto e = std::make_pair(std::min(u, v), std::max(u, v));
        return std::binary_search(edges.begin(), edges.end(), e);
    }

    std::vector<int> degrees() const {
        std::vector<int> d(vertex_count, 0);
        for (auto [u, v] : edges) {
            ++d[u];
            ++d[v];
        }
        return d;
    }

    int degree(int v) const {
        if (v < 0 || v >= vertex_count)
            throw RangeError("vertex out of range: " + std::to_string(v));
        int d = 0;
        for (auto [a, b] : edges)
            if (a == v || b == v)
                ++d;
        return d;
    }

    int max_degree() const {
        auto d = degrees();
        return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertex_count);
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }
};

enum class Planarity { Planar, Nonplanar, NotChecked };

struct ValidationReport {
    int max_degree = 0;
    bool is_degree3_ok = true;
    Planarity planarity = Planarity::NotChecked;
    std::string planarity_method; // "euler-bound" or "boyer-myrvold"
    std::vector<std::string> messages;

    bool architecture_ok() const {
        return is_degree3_ok && planarity == Planarity::Planar;
    }
};

struct MisResult {
    int size = 0;
    std::vector<std::vector<int>> sets; // each sorted; list lexicographic
    std::uint64_t node_visits = 0;
    bool truncated = false; // set when the cross-product cap kicked in
};

struct MisOptions {
    int vertex_cap = 32;
    bool force_exhaustive = false; // verification flag: plain 2^n scan (< 20 vertices)
    std::size_t max_sets = 1000000;
};

// ---------------------------------------------------------------------------
// Edge-list text format: first non-comment line "p <n>", then "e <u> <v>";
// '#' starts a comment. A JSON mirror {n, edges} lives in io.hpp.

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue; // blank
        if (tag == "p") {
            if (n >= 0)
                throw ParseError("line " + std::to_string(lineno) + ": duplicate p line");
            if (!(ls >> n) || n < 0)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'p <vertex_count>'");
        } else if (tag == "e") {
            int u, v;
            if (!(ls >> u >> v))
                throw ParseError("line " + std::to_string(lineno) + ": expected 'e <u> <v>'");
            if (n < 0)
                throw ParseError("line " + std::to_string(lineno) + ": edge before p line");
            edges.emplace_back(u, v);
            edge_lines.push_back(lineno);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
        }
        std::string rest;
        if (ls >> rest)
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
    }
    if (n < 0)
        throw ParseError("missing p line");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw RangeError("line " + std::to_string(edge_lines[i]) +
                             ": endpoint out of range for " + std::to_string(n) + " vertices");
        if (u == v)
            throw ParseError("line " + std::to_string(edge_lines[i]) + ": self-loop");
    }
    return Graph::make(n, std::move(edges));
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count << "\n";
    for (auto [u, v] : g.edges)
        out << "e " << u << " " << v << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Validation gate for the architecture's problem class (degree <= 3, planar).
// Euler bound |E| <= 3|V|-6 runs first as a cheap rejection; otherwise a full
// Boyer-Myrvold test decides.

inline ValidationReport validate(const Graph& g) {
    ValidationReport rep;
    rep.max_degree = g.max_degree();
    rep.is_degree3_ok = rep.max_degree <= 3;
    if (!rep.is_degree3_ok)
        rep.messages.push_back("max degree " + std::to_string(rep.max_degree) + " exceeds 3");

    const long n = g.vertex_count;
    const long m = static_cast<long>(g.edges.size());
    if (n >= 3 && m > 3 * n - 6) {
        rep.planarity = Planarity::Nonplanar;
        rep.planarity_method = "euler-bound";
    } else {
        using BoostGraph =
            boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
        BoostGraph bg(static_cast<std::size_t>(std::max(n, 1L)));
        for (auto [u, v] : g.edges)
            boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
        rep.planarity = boost::boyer_myrvold_planarity_test(bg) ? Planarity::Planar
                                                                : Planarity::Nonplanar;
        rep.planarity_method = "boyer-myrvold";
    }
    if (rep.planarity == Planarity::Nonplanar)
        rep.messages.push_back("graph is nonplanar (" + rep.planarity_method + ")");
    return rep;
}

// ---------------------------------------------------------------------------
// Exact MIS oracle. Branch-and-bound over bitmasks with a greedy seed;
// optional plain exhaustive scan for verifying the oracle itself.

inline bool is_independent_set(const Graph& g, const std::vector<int>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (g.has_edge(set[i], set[j]))
                return false;
    return true;
}

namespace detail {

struct MisState {
    std::vector<std::uint64_t> adj; // closed-neighborhood-free adjacency masks
    int best = -1;
    std::vector<std::uint64_t> best_sets;
    std::uint64_t visits = 0;

    void record(std::uint64_t chosen) {
        int sz = std::popcount(chosen);
        if (sz > best) {
            best = sz;
            best_sets.clear();
        }
        if (sz == best)
            best_sets.push_back(chosen);
    }

    // Keep branches that can still tie the incumbent: prune only below best.
    void search(std::uint64_t remaining, std::uint64_t chosen) {
        ++visits;
        if (remaining == 0) {
            record(chosen);
            return;
        }
        if (std::popcount(chosen) + std::popcount(remaining) < best)
            return;
        // branch on a max-degree vertex within the remaining subgraph
        int pick = -1, pick_deg = -1;
        for (std::uint64_t r = remaining; r;) {
            int v = std::countr_zero(r);
            r &= r - 1;
            int d = std::popcount(adj[static_cast<std::size_t>(v)] & remaining);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        const std::uint64_t bit = 1ULL << pick;
        search(remaining & ~(adj[static_cast<std::size_t>(pick)] | bit), chosen | bit);
        search(remaining & ~bit, chosen);
    }
};

inline std::vector<std::vector<int>> components_of(const Graph& g) {
    std::vector<int> comp(g.vertex_count, -1);
    auto adj = g.adjacency();
    int nc = 0;
    for (int s = 0; s < g.vertex_count; ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int v = 0; v < g.vertex_count; ++v)
        out[comp[v]].push_back(v);
    return out;
}

} // namespace detail

inline MisResult max_independent_sets(const Graph& g, const MisOptions& opts = {}) {
    if (g.vertex_count > opts.vertex_cap)
        throw SizeLimitError("MIS oracle limited to " + std::to_string(opts.vertex_cap) +
                             " vertices, got " + std::to_string(g.vertex_count));
    if (opts.force_exhaustive && g.vertex_count >= 20)
        throw SizeLimitError("exhaustive verification scan limited to < 20 vertices");

    MisResult result;
    if (g.vertex_count == 0) {
        result.sets.push_back({});
        return result;
    }

    // MIS decomposes over connected components; solve each and cross-product.
    auto comps = detail::components_of(g);
    std::vector<std::vector<std::vector<int>>> comp_sets;
    for (const auto& verts : comps) {
        const int k = static_cast<int>(verts.size());
        std::vector<std::uint64_t> adj(static_cast<std::size_t>(k), 0);
        std::map<int, int> local;
        for (int i = 0; i < k; ++i)
            local[verts[static_cast<std::size_t>(i)]] = i;
        for (auto [u, v] : g.edges) {
            auto iu = local.find(u), iv = local.find(v);
            if (iu != local.end() && iv != local.end()) {
                adj[static_cast<std::size_t>(iu->second)] |= 1ULL << iv->second;
                adj[static_cast<std::size_t>(iv->second)] |= 1ULL << iu->second;
            }
        }

        int best = -1;
        std::vector<std::uint64_t> best_masks;
        std::uint64_t visits = 0;
        if (opts.force_exhaustive) {
            const std::uint64_t lim = 1ULL << k;
            for (std::uint64_t mask = 0; mask < lim; ++mask) {
                ++visits;
                bool ok = true;
                for (std::uint64_t r = mask; ok && r;) {
                    int v = std::countr_zero(r);
                    r &= r - 1;
                    if (adj[static_cast<std::size_t>(v)] & mask)
                        ok = false;
                }
                if (!ok)
                    continue;
                int sz = std::popcount(mask);
                if (sz > best) {
                    best = sz;
                    best_masks.clear();
                }
                if (sz == best)
                    best_masks.push_back(mask);
            }
        } else {
            detail::MisState st;
            st.adj = adj;
            // greedy seed: repeatedly take a min-degree vertex
            std::uint64_t rem = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
            std::uint64_t greedy = 0;
            while (rem) {
                int pick = -1, deg = k + 1;
                for (std::uint64_t r = rem; r;) {
                    int v = std::countr_zero(r);
                    r &= r - 1;
                    int d = std::popcount(adj[static_cast<std::size_t>(v)] & rem);
                    if (d < deg) {
                        deg = d;
                        pick = v;
                    }
                }
                greedy |= 1ULL << pick;
                rem &= ~(adj[static_cast<std::size_t>(pick)] | (1ULL << pick));
            }
            st.best = std::popcount(greedy);
            st.search((1ULL << k) - 1, 0);
            best = st.best;
            best_masks = std::move(st.best_sets);
            visits = st.visits;
        }
        result.node_visits += visits;
        result.size += best;

        std::vector<std::vector<int>> sets;
        sets.reserve(best_masks.size());
        for (std::uint64_t mask : best_masks) {
            std::vector<int> s;
            for (std::uint64_t r = mask; r;) {
                int v = std::countr_zero(r);
                r &= r - 1;
                s.push_back(verts[static_cast<std::size_t>(v)]);
            }
            std::sort(s.begin(), s.end());
            sets.push_back(std::move(s));
        }
        comp_sets.push_back(std::move(sets));
    }

    // Cross product of per-component solution sets, capped.
    std::vector<std::vector<int>> acc{{}};
    for (const auto& sets : comp_sets) {
        std::vector<std::vector<int>> next;
        next.reserve(std::min(acc.size() * sets.size(), opts.max_sets + 1));
        for (const auto& base : acc) {
            for (const auto& s : sets) {
                std::vector<int> merged = base;
                merged.insert(merged.end(), s.begin(), s.end());
                next.push_back(std::move(merged));
                if (next.size() > opts.max_sets) {
                    result.truncated = true;
                    break;
                }
            }
            if (result.truncated)
                break;
        }
        acc = std::move(next);
        if (result.truncated) {
            acc.resize(opts.max_sets);
            break;
        }
    }
    for (auto& s : acc)
        std::sort(s.begin(), s.end());
    std::sort(acc.begin(), acc.end());
    result.sets = std::move(acc);
    return result;
}

} // namespace aqc
