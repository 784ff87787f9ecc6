#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "aqc/device.hpp"
#include "aqc/embedding.hpp"
#include "aqc/error.hpp"
#include "aqc/ising.hpp"
#include "aqc/terms.hpp"

namespace aqc {

enum class ScheduleModel { IdealInterpolation, DevicePath };

/// Which problem Hamiltonian the schedule targets: the device pair
/// Hamiltonians, or the ideal embedded Ising model (penalty A, chain -K)
/// along one axis. The ideal variant is what the ground-state-preservation
/// checks exercise.
enum class ProblemKind { Device, IdealIsing };

struct IdealProblemSpec {
    double penalty = 2.0;
    double chain_strength = 0.0; // 0 == auto: 4 * max(|h|, J)
    double axis_deg = 0.0;
};

struct Schedule {
    ScheduleModel model = ScheduleModel::IdealInterpolation;
    double total_time = 100.0; // units of hbar/E_J
    int steps = 101;           // uniform trace points in s
    double start_field = 0.145;               // h0 (IdealInterpolation), E_J units
    FrustrationOffset start_offset{0.035, 0.0}; // DevicePath start
    ProblemKind problem = ProblemKind::Device;
    IdealProblemSpec ideal;

    void check() const {
        if (!(total_time > 0.0))
            throw ParameterError("schedule total_time must be positive");
        if (steps < 2)
            throw ParameterError("schedule needs at least 2 steps");
        if (model == ScheduleModel::DevicePath) {
            if (!(start_offset.d_top + 0.5 * start_offset.d_bot >= 0.015))
                throw ParameterError(
                    "DevicePath start must satisfy d_top + d_bot/2 >= 0.015");
            if (problem != ProblemKind::Device)
                throw ParameterError("DevicePath drives the device problem only");
        }
    }
};

// ---------------------------------------------------------------------------
// Problem Hamiltonian assembly from an embedding, per the pair Hamiltonians:
// 0.029 sigma_c on each computational site (once per site), AF hops 0.029
// sigma_c sigma_c, FM comp-dummy hops -0.013 sigma_c sigma_e, FM dummy-dummy
// hops the two H_D couplings. Dummy sites carry no single-qubit term.

inline TermList assemble_problem(const Embedding& e) {
    {
        auto rep = validate_embedding(e);
        if (!rep.ok())
            throw ContractError("assemble_problem requires a valid embedding: " +
                                rep.violations.front());
    }
    auto sites = e.active_sites();
    std::map<Site, int> idx;
    for (std::size_t i = 0; i < sites.size(); ++i)
        idx[sites[i]] = static_cast<int>(i);

    TermList t;
    t.site_count = static_cast<int>(sites.size());
    for (const auto& [s, role] : e.roles)
        if (role == SiteRole::Computational)
            t.terms.push_back({kCompCoeff, {{idx.at(s), kCompAxisDeg}}});

    for (const auto& [le, set] : e.edges) {
        if (set.state == CouplingState::Off)
            continue;
        const int ia = idx.at(le.a), ib = idx.at(le.b);
        const bool a_comp = e.roles.at(le.a) == SiteRole::Computational;
        const bool b_comp = e.roles.at(le.b) == SiteRole::Computational;
        if (set.state == CouplingState::AF) {
            t.terms.push_back({kCompCoeff, {{ia, kCompAxisDeg}, {ib, kCompAxisDeg}}});
        } else if (a_comp && b_comp) {
            throw ContractError("FM coupling between two computational sites");
        } else if (a_comp || b_comp) {
            const int ic = a_comp ? ia : ib;
            const int id = a_comp ? ib : ia;
            t.terms.push_back({kCompDummyCoupling, {{ic, kCompAxisDeg}, {id, kCdAxisDeg}}});
        } else {
            t.terms.push_back({kDummyCoupling, {{ia, kDummyAxisDeg}, {ib, kDummyAxisDeg}}});
            t.terms.push_back({kDummyXXCoeff, {{ia, 90.0}, {ib, 90.0}}});
        }
    }
    return canonicalize(t);
}

/// Ideal embedded Ising model as a term list along a common axis.
inline TermList assemble_ideal(const Embedding& e, const IsingModel& logical,
                               double chain_strength = 0.0, double axis_deg = 0.0) {
    auto em = build_ideal_embedded(e, logical, chain_strength);
    TermList t;
    t.site_count = static_cast<int>(em.sites.size());
    for (std::size_t i = 0; i < em.fields.size(); ++i)
        if (em.fields[i] != 0.0)
            t.terms.push_back({em.fields[i], {{static_cast<int>(i), axis_deg}}});
    for (auto [i, j, J] : em.couplings)
        t.terms.push_back({J, {{i, axis_deg}, {j, axis_deg}}});
    return canonicalize(t);
}

inline TermList assemble_final(const Embedding& e, const Schedule& sched) {
    if (sched.problem == ProblemKind::Device)
        return assemble_problem(e);
    return assemble_ideal(e, mis_to_ising(e.graph, sched.ideal.penalty),
                          sched.ideal.chain_strength, sched.ideal.axis_deg);
}

namespace detail {

inline FrustrationOffset device_path_offset(const Schedule& sched, double s) {
    return {(1.0 - s) * sched.start_offset.d_top + s * computational_point.d_top,
            (1.0 - s) * sched.start_offset.d_bot + s * computational_point.d_bot};
}

// Per-site circulating-current factor, normalized to 1 at the operating
// point; dummies sit at their fixed point and contribute exactly 1.
inline double coupling_site_factor(bool comp, const Schedule& sched, double s) {
    if (!comp)
        return 1.0;
    return circulating_current(device_path_offset(sched, s).d_top) /
           circulating_current(computational_point.d_top);
}

} // namespace detail

/// Instantaneous Hamiltonian of the schedule at s in [0, 1].
///
/// IdealInterpolation: (1-s) h0 sigma_z on computational sites + s * final.
/// DevicePath: single-qubit terms follow the K_z/K_x formulas along the
/// linear delta path, calibrated so the endpoint equals the pair-Hamiltonian
/// value exactly (the formulas give |K| = 0.0277 at 19.07 deg where the
/// coupled calculation states 0.029 at 19 deg; the constant difference is
/// carried along the whole path). Couplings are scaled by the product of the
/// endpoint-normalized circulating-current factors.
inline TermList assemble_at(const Embedding& e, const Schedule& sched, double s) {
    sched.check();
    if (!(s >= 0.0 && s <= 1.0))
        throw ParameterError("schedule parameter s must be in [0, 1]");

    auto sites = e.active_sites();
    std::map<Site, int> idx;
    for (std::size_t i = 0; i < sites.size(); ++i)
        idx[sites[i]] = static_cast<int>(i);

    if (sched.model == ScheduleModel::IdealInterpolation) {
        TermList t;
        t.site_count = static_cast<int>(sites.size());
        for (const auto& [site, role] : e.roles)
            if (role == SiteRole::Computational)
                t.terms.push_back({(1.0 - s) * sched.start_field, {{idx.at(site), 0.0}}});
        for (Term term : assemble_final(e, sched).terms) {
            term.coeff *= s;
            t.terms.push_back(std::move(term));
        }
        return canonicalize(t);
    }

    // DevicePath
    TermList t;
    t.site_count = static_cast<int>(sites.size());
    const auto kc = qubit_coefficients(computational_point);
    const auto ks = qubit_coefficients(detail::device_path_offset(sched, s));
    for (const auto& [site, role] : e.roles) {
        if (role != SiteRole::Computational)
            continue;
        const int i = idx.at(site);
        t.terms.push_back({ks.K_z - kc.K_z, {{i, 0.0}}});
        t.terms.push_back({-(ks.K_x - kc.K_x), {{i, 90.0}}}); // axis 90 realizes -sx
        t.terms.push_back({kCompCoeff, {{i, kCompAxisDeg}}});
    }
    for (const auto& [le, set] : e.edges) {
        if (set.state == CouplingState::Off)
            continue;
        const int ia = idx.at(le.a), ib = idx.at(le.b);
        const bool a_comp = e.roles.at(le.a) == SiteRole::Computational;
        const bool b_comp = e.roles.at(le.b) == SiteRole::Computational;
        const double scale = detail::coupling_site_factor(a_comp, sched, s) *
                             detail::coupling_site_factor(b_comp, sched, s);
        if (set.state == CouplingState::AF) {
            t.terms.push_back(
                {kCompCoeff * scale, {{ia, kCompAxisDeg}, {ib, kCompAxisDeg}}});
        } else if (a_comp && b_comp) {
            throw ContractError("FM coupling between two computational sites");
        } else if (a_comp || b_comp) {
            const int ic = a_comp ? ia : ib;
            const int id = a_comp ? ib : ia;
            t.terms.push_back(
                {kCompDummyCoupling * scale, {{ic, kCompAxisDeg}, {id, kCdAxisDeg}}});
        } else {
            t.terms.push_back(
                {kDummyCoupling * scale, {{ia, kDummyAxisDeg}, {ib, kDummyAxisDeg}}});
            t.terms.push_back({kDummyXXCoeff * scale, {{ia, 90.0}, {ib, 90.0}}});
        }
    }
    return canonicalize(t);
}

/// Analytic dH/ds. All coefficient paths are closed forms, so this is exact;
/// the finite-difference cross-check lives in the tests.
inline TermList assemble_at_derivative(const Embedding& e, const Schedule& sched, double s) {
    sched.check();
    if (!(s >= 0.0 && s <= 1.0))
        throw ParameterError("schedule parameter s must be in [0, 1]");

    auto sites = e.active_sites();
    std::map<Site, int> idx;
    for (std::size_t i = 0; i < sites.size(); ++i)
        idx[sites[i]] = static_cast<int>(i);

    TermList t;
    t.site_count = static_cast<int>(sites.size());
    if (sched.model == ScheduleModel::IdealInterpolation) {
        for (const auto& [site, role] : e.roles)
            if (role == SiteRole::Computational)
                t.terms.push_back({-sched.start_field, {{idx.at(site), 0.0}}});
        for (const Term& term : assemble_final(e, sched).terms)
            t.terms.push_back(term);
        return canonicalize(t);
    }

    const double dt_ds = computational_point.d_top - sched.start_offset.d_top;
    const double db_ds = computational_point.d_bot - sched.start_offset.d_bot;
    const double dKz = 3.8 * db_ds + 2.0 * dt_ds;
    const double dKx = -1.2 * db_ds - 0.81 * dt_ds;
    for (const auto& [site, role] : e.roles) {
        if (role != SiteRole::Computational)
            continue;
        const int i = idx.at(site);
        t.terms.push_back({dKz, {{i, 0.0}}});
        t.terms.push_back({-dKx, {{i, 90.0}}});
    }

    const double c_ref = circulating_current(computational_point.d_top);
    const double top_s = detail::device_path_offset(sched, s).d_top;
    const double f = circulating_current(top_s) / c_ref;
    const double fp =
        -1.4 * std::numbers::pi * std::sin(std::numbers::pi * (0.330 + top_s)) * dt_ds / c_ref;
    for (const auto& [le, set] : e.edges) {
        if (set.state == CouplingState::Off)
            continue;
        const int ia = idx.at(le.a), ib = idx.at(le.b);
        const bool a_comp = e.roles.at(le.a) == SiteRole::Computational;
        const bool b_comp = e.roles.at(le.b) == SiteRole::Computational;
        double dscale = 0.0;
        if (a_comp && b_comp)
            dscale = 2.0 * f * fp;
        else if (a_comp || b_comp)
            dscale = fp;
        else
            continue; // dummy-dummy couplings do not vary along the path
        if (set.state == CouplingState::AF) {
            t.terms.push_back(
                {kCompCoeff * dscale, {{ia, kCompAxisDeg}, {ib, kCompAxisDeg}}});
        } else {
            const int ic = a_comp ? ia : ib;
            const int id = a_comp ? ib : ia;
            t.terms.push_back(
                {kCompDummyCoupling * dscale, {{ic, kCompAxisDeg}, {id, kCdAxisDeg}}});
        }
    }
    return canonicalize(t);
}

} // namespace aqc
