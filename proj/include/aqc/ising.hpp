#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "aqc/error.hpp"
#include "aqc/graph.hpp"

namespace aqc {

/// Ising model whose ground states encode the maximum independent sets of a
/// graph. Spin +1 means "in the set"; couplings exist only on graph edges and
/// are antiferromagnetic (positive).
struct IsingModel {
    int spin_count = 0;
    std::vector<double> fields;                       // h_i
    std::vector<std::tuple<int, int, double>> couplings; // (i < j, J_ij)
    double penalty = 0.0;                             // edge penalty A
    std::string convention = "in_set=+1";
};

/// Spin configurations are packed into masks: bit i set <=> spin_i == -1,
/// so mask 0 is the all-up (everything in-set) configuration. This matches
/// the measurement convention |0> == spin +1.
inline std::vector<int> config_from_mask(std::uint64_t mask, int n) {
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        s[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -1 : +1;
    return s;
}

inline std::uint64_t mask_from_config(const std::vector<int>& s) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < 0)
            m |= 1ULL << i;
    return m;
}

inline std::vector<int> in_set_vertices(const std::vector<int>& config) {
    std::vector<int> out;
    for (std::size_t i = 0; i < config.size(); ++i)
        if (config[i] > 0)
            out.push_back(static_cast<int>(i));
    return out;
}

struct GroundManifold {
    double energy = 0.0;
    std::vector<std::vector<int>> configs; // deterministic order (mask ascending)
    int degeneracy = 0;
};

struct EncodingReport {
    bool is_exact = false;
    std::vector<std::vector<int>> spurious_configs; // ground configs that are not MISs
    std::vector<std::vector<int>> missing_mis;      // MISs absent from the manifold
    std::string in_set_convention = "in_set=+1";
};

// ---------------------------------------------------------------------------
// QUBO-to-spin reduction of  minimize  -sum_i x_i + A sum_{(i,j) in E} x_i x_j
// with x = (1+s)/2:  J = A/4 on every edge, h_i = (A d_i - 2)/4.

inline IsingModel mis_to_ising(const Graph& g, double penalty = 2.0) {
    if (!(penalty > 0.0))
        throw ParameterError("penalty A must be positive");
    if (g.max_degree() > 3)
        throw ContractError("mis_to_ising expects a validated max-degree-3 graph");
    IsingModel m;
    m.spin_count = g.vertex_count;
    m.penalty = penalty;
    auto deg = g.degrees();
    m.fields.resize(static_cast<std::size_t>(g.vertex_count));
    for (int i = 0; i < g.vertex_count; ++i)
        m.fields[static_cast<std::size_t>(i)] = (penalty * deg[static_cast<std::size_t>(i)] - 2.0) / 4.0;
    for (auto [u, v] : g.edges)
        m.couplings.emplace_back(u, v, penalty / 4.0);
    return m;
}

inline double ising_energy(const IsingModel& m, const std::vector<int>& config) {
    if (static_cast<int>(config.size()) != m.spin_count)
        throw ShapeError("config length " + std::to_string(config.size()) +
                         " != spin count " + std::to_string(m.spin_count));
    double e = 0.0;
    for (int i = 0; i < m.spin_count; ++i)
        e += m.fields[static_cast<std::size_t>(i)] * config[static_cast<std::size_t>(i)];
    for (auto [i, j, J] : m.couplings)
        e += J * config[static_cast<std::size_t>(i)] * config[static_cast<std::size_t>(j)];
    return e;
}

inline double ising_energy_mask(const IsingModel& m, std::uint64_t mask) {
    double e = 0.0;
    for (int i = 0; i < m.spin_count; ++i)
        e += (mask >> i) & 1 ? -m.fields[static_cast<std::size_t>(i)]
                             : m.fields[static_cast<std::size_t>(i)];
    for (auto [i, j, J] : m.couplings) {
        int si = (mask >> i) & 1 ? -1 : 1;
        int sj = (mask >> j) & 1 ? -1 : 1;
        e += J * si * sj;
    }
    return e;
}

/// Exhaustive scan over all 2^n configurations. Ties are resolved with an
/// absolute tolerance of 1e-12: the coefficients are small rationals, so
/// exact ties are representable and the tolerance only guards rounding.
inline GroundManifold ising_ground_states(const IsingModel& m, int cap = 24) {
    if (m.spin_count > cap)
        throw SizeLimitError("ground-state scan limited to " + std::to_string(cap) +
                             " spins, got " + std::to_string(m.spin_count));
    constexpr double tie_tol = 1e-12;
    GroundManifold gm;
    const std::uint64_t lim = 1ULL << m.spin_count;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> masks;
    for (std::uint64_t mask = 0; mask < lim; ++mask) {
        double e = ising_energy_mask(m, mask);
        if (e < best - tie_tol) {
            best = e;
            masks.assign(1, mask);
        } else if (e <= best + tie_tol) {
            masks.push_back(mask);
        }
    }
    gm.energy = best;
    for (std::uint64_t mask : masks)
        gm.configs.push_back(config_from_mask(mask, m.spin_count));
    gm.degeneracy = static_cast<int>(gm.configs.size());
    return gm;
}

/// Compares the ground manifold (read through the in_set=+1 convention)
/// against the exact MIS oracle on the source graph.
inline EncodingReport verify_mis_encoding(const Graph& g, const IsingModel& m,
                                          const MisOptions& opts = {}) {
    if (m.spin_count != g.vertex_count)
        throw ShapeError("model/graph vertex count mismatch");
    auto mis = max_independent_sets(g, opts);
    auto gm = ising_ground_states(m);

    std::vector<std::vector<int>> ground_sets;
    for (const auto& cfg : gm.configs)
        ground_sets.push_back(in_set_vertices(cfg));

    EncodingReport rep;
    for (std::size_t k = 0; k < ground_sets.size(); ++k) {
        if (!std::binary_search(mis.sets.begin(), mis.sets.end(), ground_sets[k]))
            rep.spurious_configs.push_back(gm.configs[k]);
    }
    std::vector<std::vector<int>> sorted_ground = ground_sets;
    std::sort(sorted_ground.begin(), sorted_ground.end());
    for (const auto& s : mis.sets)
        if (!std::binary_search(sorted_ground.begin(), sorted_ground.end(), s))
            rep.missing_mis.push_back(s);
    rep.is_exact = rep.spurious_configs.empty() && rep.missing_mis.empty();
    return rep;
}

} // namespace aqc
