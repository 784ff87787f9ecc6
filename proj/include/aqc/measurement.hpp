#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aqc/embedding.hpp"
#include "aqc/error.hpp"
#include "aqc/graph.hpp"
#include "aqc/ising.hpp"
#include "aqc/rng.hpp"

namespace aqc {

/// Flux (z-basis) readout model: the basis mismatch acts as an independent
/// classical flip at rate sin^2(angle) on top of Born-rule samples, plus an
/// optional extra flip channel. The full rotated-basis POVM is a non-goal;
/// this reproduces exactly the paper-level error floor.
struct MeasurementModel {
    double mismatch_angle_deg = 19.0;
    double extra_flip_prob = 0.0; // in [0, 0.5]
    int shots = 1024;
    std::uint64_t seed = 0;
};

inline double error_floor(double angle_deg) {
    const double s = std::sin(angle_deg * std::numbers::pi / 180.0);
    return s * s;
}

/// Born-rule sampler over the z basis. Masks follow the global convention:
/// bit i set <=> spin of site i is -1, so |0...0> samples as all +1.
inline std::vector<std::uint64_t> sample_z(const Eigen::VectorXcd& state, int n_sites,
                                           int shots, std::uint64_t seed) {
    const std::int64_t dim = std::int64_t{1} << n_sites;
    if (state.size() != dim)
        throw ShapeError("state dimension does not match site count");
    const double nrm = state.norm();
    if (std::abs(nrm - 1.0) > 1e-6)
        throw ContractError("state is not normalized: |norm - 1| = " +
                            std::to_string(std::abs(nrm - 1.0)));
    std::vector<double> cdf(static_cast<std::size_t>(dim));
    double acc = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
        acc += std::norm(state[i]);
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    const double total = acc;
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (int shot = 0; shot < shots; ++shot) {
        auto rng = make_rng(derive_seed(seed, "shot", static_cast<std::uint64_t>(shot)));
        std::uniform_real_distribution<double> uni(0.0, total);
        const double u = uni(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t idx = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(std::distance(cdf.begin(), it), dim - 1));
        out.push_back(idx);
    }
    return out;
}

/// Independent spin flips with probability p, seeded per shot so parallel
/// generation and replays agree bit for bit.
inline std::vector<std::uint64_t> apply_flip_noise(const std::vector<std::uint64_t>& samples,
                                                   int n_sites, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 0.5))
        throw ParameterError("flip probability must lie in [0, 0.5]");
    std::vector<std::uint64_t> out;
    out.reserve(samples.size());
    for (std::size_t shot = 0; shot < samples.size(); ++shot) {
        auto rng = make_rng(derive_seed(seed, "flip", shot));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uint64_t mask = samples[shot];
        for (int b = 0; b < n_sites; ++b)
            if (uni(rng) < p)
                mask ^= 1ULL << b;
        out.push_back(mask);
    }
    return out;
}

/// Majority-vote failure probability of an r-bit repetition code at flip
/// rate p: the upper binomial tail from ceil(r/2).
inline double repetition_logical_error(double p, int r) {
    if (r < 1 || r % 2 == 0)
        throw ParameterError("repetition code length must be odd and >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw ParameterError("flip probability must lie in [0, 1]");
    double sum = 0.0;
    for (int k = (r + 1) / 2; k <= r; ++k) {
        double binom = 1.0;
        for (int i = 0; i < k; ++i)
            binom *= static_cast<double>(r - i) / (k - i);
        sum += binom * std::pow(p, k) * std::pow(1.0 - p, r - k);
    }
    return sum;
}

/// Classical distribution over z-basis configurations; how states supported
/// on a known (decoded) manifold enter the measurement pipeline when the
/// full 2^n vector would be too large.
struct SpinEnsemble {
    std::vector<std::pair<std::uint64_t, double>> configs; // (mask, probability)
};

inline std::vector<std::uint64_t> sample_ensemble(const SpinEnsemble& ens, int shots,
                                                  std::uint64_t seed) {
    if (ens.configs.empty())
        throw ParameterError("empty ensemble");
    double total = 0.0;
    for (const auto& [mask, p] : ens.configs) {
        if (p < 0.0)
            throw ParameterError("negative ensemble probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw ContractError("ensemble probabilities sum to " + std::to_string(total));
    std::vector<double> cdf;
    cdf.reserve(ens.configs.size());
    double acc = 0.0;
    for (const auto& [mask, p] : ens.configs) {
        acc += p;
        cdf.push_back(acc);
    }
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (int shot = 0; shot < shots; ++shot) {
        auto rng = make_rng(derive_seed(seed, "shot", static_cast<std::uint64_t>(shot)));
        std::uniform_real_distribution<double> uni(0.0, acc);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), uni(rng));
        std::size_t idx = std::min(static_cast<std::size_t>(std::distance(cdf.begin(), it)),
                                   ens.configs.size() - 1);
        out.push_back(ens.configs[idx].first);
    }
    return out;
}

struct ShotRecord {
    std::uint64_t raw = 0;   // Born-rule sample
    std::uint64_t noisy = 0; // after readout flips
    DecodedConfig decoded;
    bool valid = false; // all clusters consistent and decoded set independent
    int set_size = 0;   // decoded in-set size (when valid)
};

struct MeasureStats {
    int shots = 0;
    double fraction_valid = 0.0;
    int best_size = 0;
    double logical_error_rate_observed = 0.0; // per (shot, vertex)
    std::map<std::string, int> per_cluster_agreement; // agreement -> count
    std::vector<ShotRecord> records;
};

namespace detail {

inline MeasureStats decode_shots(const Embedding& e, const Graph& g,
                                 const std::vector<std::uint64_t>& raw,
                                 const MeasurementModel& model) {
    const int n_sites = static_cast<int>(e.roles.size());
    const double p_flip =
        std::min(0.5, error_floor(model.mismatch_angle_deg) + model.extra_flip_prob);
    auto noisy = apply_flip_noise(raw, n_sites, p_flip, derive_seed(model.seed, "readout"));
    auto sites = e.active_sites();

    MeasureStats stats;
    stats.shots = static_cast<int>(raw.size());
    int valid_count = 0;
    std::int64_t logical_errors = 0, logical_total = 0;
    for (std::size_t shot = 0; shot < raw.size(); ++shot) {
        ShotRecord rec;
        rec.raw = raw[shot];
        rec.noisy = noisy[shot];
        std::map<Site, int> spins, spins_raw;
        for (int i = 0; i < n_sites; ++i) {
            spins[sites[static_cast<std::size_t>(i)]] = (rec.noisy >> i) & 1 ? -1 : +1;
            spins_raw[sites[static_cast<std::size_t>(i)]] = (rec.raw >> i) & 1 ? -1 : +1;
        }
        rec.decoded = decode_config(e, spins);
        auto truth = decode_config(e, spins_raw);
        for (const auto& [v, s] : rec.decoded.logical_spins) {
            ++logical_total;
            if (s == 0 || s != truth.logical_spins.at(v))
                ++logical_errors;
        }
        for (const auto& [v, agree] : rec.decoded.chain_agreement) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%.4f", agree);
            ++stats.per_cluster_agreement[buf];
        }
        std::vector<int> in_set;
        if (rec.decoded.all_consistent()) {
            for (const auto& [v, s] : rec.decoded.logical_spins)
                if (s > 0)
                    in_set.push_back(v);
            rec.valid = is_independent_set(g, in_set);
            rec.set_size = static_cast<int>(in_set.size());
        }
        if (rec.valid) {
            ++valid_count;
            stats.best_size = std::max(stats.best_size, rec.set_size);
        }
        stats.records.push_back(std::move(rec));
    }
    stats.fraction_valid = raw.empty() ? 0.0 : static_cast<double>(valid_count) / raw.size();
    stats.logical_error_rate_observed =
        logical_total == 0 ? 0.0 : static_cast<double>(logical_errors) / logical_total;
    return stats;
}

} // namespace detail

inline MeasureStats measure_and_decode(const Embedding& e, const Eigen::VectorXcd& state,
                                       const MeasurementModel& model, const Graph& g) {
    auto raw = sample_z(state, static_cast<int>(e.roles.size()), model.shots,
                        derive_seed(model.seed, "born"));
    return detail::decode_shots(e, g, raw, model);
}

inline MeasureStats measure_and_decode(const Embedding& e, const SpinEnsemble& ensemble,
                                       const MeasurementModel& model, const Graph& g) {
    auto raw = sample_ensemble(ensemble, model.shots, derive_seed(model.seed, "born"));
    return detail::decode_shots(e, g, raw, model);
}

} // namespace aqc
