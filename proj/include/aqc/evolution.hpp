#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aqc/error.hpp"
#include "aqc/rng.hpp"
#include "aqc/schedule.hpp"
#include "aqc/spectrum.hpp"
#include "aqc/terms.hpp"

namespace aqc {

struct SpectrumTrace {
    std::vector<double> s_values;
    std::vector<std::vector<double>> levels; // ascending per s
    double min_gap = 0.0;
    double min_gap_location = 0.0;
    int ground_degeneracy_final = 1;
};

struct EvolutionResult {
    Eigen::VectorXcd final_state;
    std::vector<std::pair<double, double>> ground_overlap_trace; // (s, overlap)
    double norm_drift = 0.0;
    double success_probability = 0.0;
    double criterion_max = 0.0; // headline (matrix-element) form
};

struct CriterionReport {
    double headline = 0.0;   // max_n |<psi_n|dH/ds|psi_0>| / (T * gap_n0^2)
    double paper_form = 0.0; // |<psi_0| d(H^2)/dt |psi_0>| / gap^2, literal reading
    std::vector<double> s_values;
    std::vector<double> headline_per_s;
    std::vector<double> paper_form_per_s;
};

namespace detail {

// Degeneracy can exceed any fixed k (e.g. decoupled dummies at s = 0), so
// grow k until the tie is resolved or the space is exhausted.
inline std::vector<EigenPair> spectrum_resolving_degeneracy(const TermList& t, int k_min,
                                                            const SpectrumOptions& opts = {}) {
    const std::int64_t dim = std::int64_t{1} << t.site_count;
    int k = static_cast<int>(std::min<std::int64_t>(dim, std::max(k_min, 2)));
    while (true) {
        auto eigs = spectrum(t, k, opts);
        if (ground_degeneracy(eigs) < k || k == dim)
            return eigs;
        k = static_cast<int>(std::min<std::int64_t>(dim, 2 * k));
    }
}

inline double subspace_overlap(const std::vector<EigenPair>& eigs, int d,
                               const Eigen::VectorXcd& psi) {
    double p = 0.0;
    for (int i = 0; i < d; ++i) {
        std::complex<double> amp = 0.0;
        for (Eigen::Index j = 0; j < psi.size(); ++j)
            amp += eigs[static_cast<std::size_t>(i)].vector[j] * psi[j];
        p += std::norm(amp);
    }
    return p;
}

// exp(-i * tau * H) |psi> via Lanczos projection; exact (up to rounding) when
// the Krylov space closes, which it does for every dim <= krylov_dim state.
inline Eigen::VectorXcd krylov_exp(const TermList& t, double tau, const Eigen::VectorXcd& psi,
                                   int krylov_dim = 36) {
    const Eigen::Index dim = psi.size();
    const int m_cap = static_cast<int>(std::min<Eigen::Index>(dim, krylov_dim));
    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    const double nrm0 = psi.norm();
    if (nrm0 == 0.0)
        return psi;
    basis.push_back(psi / nrm0);
    for (int m = 0; m < m_cap; ++m) {
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim);
        apply_terms(t, basis.back(), w);
        alpha.push_back(basis.back().dot(w).real());
        w -= alpha.back() * basis.back();
        if (m > 0)
            w -= beta.back() * basis[basis.size() - 2];
        for (const auto& b : basis) // full reorthogonalization
            w -= b.dot(w) * b;
        const double b2 = w.norm();
        if (b2 < 1e-14)
            break;
        beta.push_back(b2);
        basis.push_back(w / b2);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        tri(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m)
            tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    Eigen::VectorXcd small = Eigen::VectorXcd::Zero(m);
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < m; ++i) {
        std::complex<double> phase = std::exp(-I * tau * es.eigenvalues()[i]);
        small += phase * es.eigenvectors()(0, i) * es.eigenvectors().col(i).cast<std::complex<double>>();
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < m; ++i)
        out += small[i] * basis[static_cast<std::size_t>(i)];
    return out * nrm0;
}

// Exponential midpoint step: psi <- exp(-i T dt H(s + dt/2)) psi.
inline Eigen::VectorXcd midpoint_step(const Embedding& e, const Schedule& sched, double s,
                                      double dt, const Eigen::VectorXcd& psi) {
    auto h = assemble_at(e, sched, std::min(s + 0.5 * dt, 1.0));
    return krylov_exp(h, sched.total_time * dt, psi);
}

} // namespace detail

/// Instantaneous low-lying spectrum over the schedule. The gap is measured
/// to the first level outside the final ground manifold: transitions within
/// the future ground space do not spoil the computation.
inline SpectrumTrace gap_trace(const Embedding& e, const Schedule& sched, int k,
                               const SpectrumOptions& opts = {}) {
    sched.check();
    auto final_eigs = spectrum(assemble_at(e, sched, 1.0), k, opts);
    const int d = ground_degeneracy(final_eigs);
    if (k < d + 1)
        throw ParameterError("gap_trace: k = " + std::to_string(k) +
                             " cannot see the gap above a ground manifold of dimension " +
                             std::to_string(d));
    SpectrumTrace tr;
    tr.ground_degeneracy_final = d;
    tr.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sched.steps; ++i) {
        const double s = static_cast<double>(i) / (sched.steps - 1);
        auto eigs = spectrum(assemble_at(e, sched, s), k, opts);
        std::vector<double> lv;
        lv.reserve(static_cast<std::size_t>(k));
        for (const auto& ep : eigs)
            lv.push_back(ep.value);
        const double gap = lv[static_cast<std::size_t>(d)] - lv[0];
        if (gap < tr.min_gap) {
            tr.min_gap = gap;
            tr.min_gap_location = s;
        }
        tr.s_values.push_back(s);
        tr.levels.push_back(std::move(lv));
    }
    return tr;
}

/// Integrates i d|psi>/ds = T H(s) |psi> from the exact ground state of
/// H(0) with adaptive step doubling (local target 1e-9) on top of unitary
/// exponential-midpoint steps.
inline EvolutionResult evolve(const Embedding& e, const Schedule& sched,
                              const SpectrumOptions& opts = {}) {
    sched.check();
    const int n = static_cast<int>(e.roles.size());
    if (n > 20)
        throw SizeLimitError("evolve limited to 20 sites, got " + std::to_string(n));
    const std::int64_t dim = std::int64_t{1} << n;

    auto final_eigs = detail::spectrum_resolving_degeneracy(assemble_at(e, sched, 1.0), 6, opts);
    const int d_final = ground_degeneracy(final_eigs);

    // Start state: lowest eigenstate of H(0); a degenerate start (decoupled
    // dummies) is lifted to first order through dH/ds(0).
    auto start_eigs = detail::spectrum_resolving_degeneracy(assemble_at(e, sched, 0.0), 2, opts);
    const int d0 = ground_degeneracy(start_eigs);
    Eigen::VectorXcd psi;
    if (d0 == 1) {
        psi = start_eigs[0].vector.cast<std::complex<double>>();
    } else {
        auto dh = assemble_at_derivative(e, sched, 0.0);
        Eigen::MatrixXd lift(d0, d0);
        std::vector<Eigen::VectorXd> hb(static_cast<std::size_t>(d0));
        for (int j = 0; j < d0; ++j) {
            hb[static_cast<std::size_t>(j)] = Eigen::VectorXd::Zero(dim);
            apply_terms(dh, start_eigs[static_cast<std::size_t>(j)].vector,
                        hb[static_cast<std::size_t>(j)]);
        }
        for (int i = 0; i < d0; ++i)
            for (int j = 0; j < d0; ++j)
                lift(i, j) = start_eigs[static_cast<std::size_t>(i)].vector.dot(
                    hb[static_cast<std::size_t>(j)]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (lift + lift.transpose()));
        Eigen::VectorXd mix = Eigen::VectorXd::Zero(dim);
        for (int j = 0; j < d0; ++j)
            mix += es.eigenvectors()(j, 0) * start_eigs[static_cast<std::size_t>(j)].vector;
        canonical_gauge(mix);
        psi = mix.cast<std::complex<double>>();
    }

    EvolutionResult res;
    res.criterion_max = 0.0;
    const double step_tol = 1e-9;
    const int k_trace =
        static_cast<int>(std::min<std::int64_t>(dim, d_final + 2));
    auto dgrid = [&](int i) { return static_cast<double>(i) / (sched.steps - 1); };

    double max_norm_dev = std::abs(psi.norm() - 1.0);
    for (int seg = 0; seg < sched.steps; ++seg) {
        const double s_here = dgrid(seg);
        // trace point diagnostics
        auto eigs = spectrum(assemble_at(e, sched, s_here), k_trace, opts);
        const int d_inst = ground_degeneracy(eigs);
        res.ground_overlap_trace.emplace_back(s_here,
                                              detail::subspace_overlap(eigs, d_inst, psi));
        if (k_trace > d_final) {
            auto dh = assemble_at_derivative(e, sched, s_here);
            Eigen::VectorXd hg = Eigen::VectorXd::Zero(dim);
            apply_terms(dh, eigs[0].vector, hg);
            for (int nlev = d_final; nlev < k_trace; ++nlev) {
                const double gap = eigs[static_cast<std::size_t>(nlev)].value - eigs[0].value;
                if (gap <= 0.0)
                    continue;
                const double me = std::abs(eigs[static_cast<std::size_t>(nlev)].vector.dot(hg));
                res.criterion_max =
                    std::max(res.criterion_max, me / (sched.total_time * gap * gap));
            }
        }
        if (seg + 1 == sched.steps)
            break;

        // integrate to the next trace point
        const double s_next = dgrid(seg + 1);
        double s = s_here;
        double dt = std::min(1e-3, s_next - s_here);
        while (s < s_next - 1e-15) {
            dt = std::min(dt, s_next - s);
            Eigen::VectorXcd full = detail::midpoint_step(e, sched, s, dt, psi);
            Eigen::VectorXcd half = detail::midpoint_step(e, sched, s, 0.5 * dt, psi);
            half = detail::midpoint_step(e, sched, s + 0.5 * dt, 0.5 * dt, half);
            const double err = (full - half).norm();
            if (err <= step_tol || dt <= 1e-12) {
                psi = half;
                s += dt;
                max_norm_dev = std::max(max_norm_dev, std::abs(psi.norm() - 1.0));
            }
            const double fac =
                0.9 * std::pow(step_tol / std::max(err, 1e-300), 1.0 / 3.0);
            dt *= std::clamp(fac, 0.25, 2.5);
        }
    }

    res.norm_drift = max_norm_dev;
    if (res.norm_drift > 1e-6)
        throw NumericalError("integrator failure: norm drift " +
                             std::to_string(res.norm_drift));
    res.final_state = psi;
    res.success_probability = detail::subspace_overlap(final_eigs, d_final, psi);
    return res;
}

/// Both adiabaticity diagnostics over the schedule grid. The headline number
/// is the standard matrix-element form; the literal expectation form (with
/// dH^2/dt read as d(H^2)/dt) collapses to 2 E_0 <psi_0|dH/ds|psi_0> / (T gap^2)
/// and is reported alongside, not silently corrected.
inline CriterionReport adiabatic_criterion(const Embedding& e, const Schedule& sched,
                                           int k = 0, const SpectrumOptions& opts = {}) {
    sched.check();
    const std::int64_t dim = std::int64_t{1} << e.roles.size();
    auto final_eigs = detail::spectrum_resolving_degeneracy(assemble_at(e, sched, 1.0), 6, opts);
    const int d = ground_degeneracy(final_eigs);
    if (k == 0)
        k = static_cast<int>(std::min<std::int64_t>(dim, d + 3));
    if (k < d + 1)
        throw ParameterError("criterion: k cannot see the gap");

    CriterionReport rep;
    for (int i = 0; i < sched.steps; ++i) {
        const double s = static_cast<double>(i) / (sched.steps - 1);
        auto eigs = spectrum(assemble_at(e, sched, s), k, opts);
        auto dh = assemble_at_derivative(e, sched, s);
        Eigen::VectorXd hg = Eigen::VectorXd::Zero(dim);
        apply_terms(dh, eigs[0].vector, hg);

        double headline = 0.0;
        for (int nlev = d; nlev < k; ++nlev) {
            const double gap = eigs[static_cast<std::size_t>(nlev)].value - eigs[0].value;
            if (gap <= 0.0)
                continue;
            headline = std::max(headline,
                                std::abs(eigs[static_cast<std::size_t>(nlev)].vector.dot(hg)) /
                                    (sched.total_time * gap * gap));
        }
        const double gap_d = eigs[static_cast<std::size_t>(d)].value - eigs[0].value;
        double paper = 0.0;
        if (gap_d > 0.0)
            paper = std::abs(2.0 * eigs[0].value * eigs[0].vector.dot(hg)) /
                    (sched.total_time * gap_d * gap_d);
        rep.s_values.push_back(s);
        rep.headline_per_s.push_back(headline);
        rep.paper_form_per_s.push_back(paper);
        rep.headline = std::max(rep.headline, headline);
        rep.paper_form = std::max(rep.paper_form, paper);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Manufacturing-imprecision harness: random Pauli-product perturbations of
// fixed magnitude; reports ground-space fidelity and ground-energy shift.

struct PerturbationTrial {
    double fidelity = 0.0;
    double energy_shift = 0.0;
};

struct PerturbationReport {
    std::vector<PerturbationTrial> trials;
    double mean_fidelity = 0.0;
    double min_fidelity = 0.0;
    double max_abs_shift = 0.0;
};

inline PerturbationReport perturb_and_refit(const TermList& t, double epsilon, int trials,
                                            std::uint64_t seed,
                                            const SpectrumOptions& opts = {}) {
    if (trials < 1)
        throw ParameterError("need at least one trial");
    auto base = detail::spectrum_resolving_degeneracy(t, 4, opts);
    const int d0 = ground_degeneracy(base);
    const double e0 = base[0].value;

    PerturbationReport rep;
    rep.min_fidelity = 1.0;
    double fid_sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        auto rng = make_rng(derive_seed(seed, "perturb", static_cast<std::uint64_t>(trial)));
        std::uniform_int_distribution<int> site_dist(0, t.site_count - 1);
        std::uniform_real_distribution<double> axis_dist(0.0, 360.0);
        const int nf = (t.site_count == 1) ? 1 : 1 + static_cast<int>(rng() & 1);
        std::vector<TermFactor> factors;
        while (static_cast<int>(factors.size()) < nf) {
            int s = site_dist(rng);
            bool dup = false;
            for (const auto& f : factors)
                dup |= f.site == s;
            if (!dup)
                factors.push_back({s, axis_dist(rng)});
        }
        const double sign = (rng() & 1) ? 1.0 : -1.0;
        TermList tp = t;
        tp.terms.push_back({sign * epsilon, factors});
        auto pert = detail::spectrum_resolving_degeneracy(canonicalize(tp), 4, opts);
        const int dp = ground_degeneracy(pert);

        // tr(P_new P_old) / d_new: 1 iff the new ground space sits inside the old
        double tr = 0.0;
        for (int i = 0; i < dp; ++i)
            for (int j = 0; j < d0; ++j) {
                const double ov = pert[static_cast<std::size_t>(i)].vector.dot(
                    base[static_cast<std::size_t>(j)].vector);
                tr += ov * ov;
            }
        PerturbationTrial out;
        out.fidelity = tr / dp;
        out.energy_shift = pert[0].value - e0;
        rep.min_fidelity = std::min(rep.min_fidelity, out.fidelity);
        rep.max_abs_shift = std::max(rep.max_abs_shift, std::abs(out.energy_shift));
        fid_sum += out.fidelity;
        rep.trials.push_back(out);
    }
    rep.mean_fidelity = fid_sum / trials;
    return rep;
}

} // namespace aqc
