#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "aqc/error.hpp"

namespace aqc {

/// One Pauli-axis factor: the axis lies in the xz-plane, rotated axis_deg
/// clockwise from z, i.e. cos(a) sz - sin(a) sx.
struct TermFactor {
    int site = 0;
    double axis_deg = 0.0;
    auto operator<=>(const TermFactor&) const = default;
};

struct Term {
    double coeff = 0.0; // units of E_J
    std::vector<TermFactor> factors; // distinct sites, sorted by site
    auto operator<=>(const Term&) const = default;
};

/// Weighted sum of Pauli-axis products. The canonical form makes equality
/// syntactic: single-site contributions are split into their z (axis 0) and
/// x (axis 90, realizing -sx) components and merged per site; multi-site
/// terms with identical factor lists merge; zero coefficients drop; terms
/// sort by factor list.
struct TermList {
    int site_count = 0;
    std::vector<Term> terms;
    bool operator==(const TermList&) const = default;
};

inline double normalize_axis_deg(double a) {
    double r = std::fmod(a, 360.0);
    if (r < 0.0)
        r += 360.0;
    return r;
}

inline TermList canonicalize(const TermList& in) {
    TermList out;
    out.site_count = in.site_count;
    double constant = 0.0;
    std::map<int, std::pair<double, double>> singles;      // site -> (z, x90)
    std::map<std::vector<TermFactor>, double> multis;
    for (const Term& t : in.terms) {
        auto factors = t.factors;
        std::sort(factors.begin(), factors.end(),
                  [](const TermFactor& a, const TermFactor& b) { return a.site < b.site; });
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i].site < 0 || factors[i].site >= in.site_count)
                throw RangeError("term factor site out of range");
            if (i > 0 && factors[i].site == factors[i - 1].site)
                throw ParameterError("term has repeated site");
            factors[i].axis_deg = normalize_axis_deg(factors[i].axis_deg);
        }
        if (factors.empty()) {
            constant += t.coeff;
        } else if (factors.size() == 1) {
            const double rad = factors[0].axis_deg * std::numbers::pi / 180.0;
            auto& [z, x90] = singles[factors[0].site];
            z += t.coeff * std::cos(rad);
            x90 += t.coeff * std::sin(rad);
        } else {
            multis[factors] += t.coeff;
        }
    }
    if (constant != 0.0)
        out.terms.push_back({constant, {}});
    for (const auto& [site, zx] : singles) {
        if (zx.first != 0.0)
            out.terms.push_back({zx.first, {{site, 0.0}}});
        if (zx.second != 0.0)
            out.terms.push_back({zx.second, {{site, 90.0}}});
    }
    for (const auto& [factors, coeff] : multis)
        if (coeff != 0.0)
            out.terms.push_back({coeff, factors});
    std::sort(out.terms.begin(), out.terms.end(),
              [](const Term& a, const Term& b) { return a.factors < b.factors; });
    return out;
}

namespace detail {

// 2x2 entries of the axis operator: [[cos, -sin], [-sin, -cos]].
struct AxisEntries {
    double diag0, diag1, off;
};

inline AxisEntries axis_entries(double axis_deg) {
    const double rad = axis_deg * std::numbers::pi / 180.0;
    return {std::cos(rad), -std::cos(rad), -std::sin(rad)};
}

} // namespace detail

/// y += sum of terms applied to x, matrix-free. Works for real and complex
/// vectors; the Hamiltonian itself is real symmetric (all axes lie in xz).
template <typename Vec>
inline void apply_terms(const TermList& t, const Vec& x, Vec& y) {
    const std::int64_t dim = std::int64_t{1} << t.site_count;
    if (x.size() != dim)
        throw ShapeError("state dimension does not match term list");
    if (y.size() != dim)
        y = Vec::Zero(dim);
    for (const Term& term : t.terms) {
        const int f = static_cast<int>(term.factors.size());
        std::vector<detail::AxisEntries> ent;
        ent.reserve(term.factors.size());
        for (const auto& fac : term.factors)
            ent.push_back(detail::axis_entries(fac.axis_deg));
        for (std::int64_t j = 0; j < dim; ++j) {
            const auto amp = term.coeff * x[j];
            if (amp == decltype(amp){})
                continue;
            for (int pat = 0; pat < (1 << f); ++pat) {
                double w = 1.0;
                std::int64_t row = j;
                for (int k = 0; k < f; ++k) {
                    const int bit = (j >> term.factors[static_cast<std::size_t>(k)].site) & 1;
                    if ((pat >> k) & 1) {
                        w *= ent[static_cast<std::size_t>(k)].off;
                        row ^= std::int64_t{1} << term.factors[static_cast<std::size_t>(k)].site;
                    } else {
                        w *= bit ? ent[static_cast<std::size_t>(k)].diag1
                                 : ent[static_cast<std::size_t>(k)].diag0;
                    }
                }
                y[row] += w * amp;
            }
        }
    }
}

template <typename Vec>
inline Vec apply_terms(const TermList& t, const Vec& x) {
    Vec y = Vec::Zero(x.size());
    apply_terms(t, x, y);
    return y;
}

/// Concrete sparse realization: sum of coefficient x tensor products of axis
/// operators (identity elsewhere). Hermitian (real symmetric) by construction.
inline Eigen::SparseMatrix<double> realize(const TermList& t) {
    if (t.site_count > 24)
        throw SizeLimitError("realize limited to 24 sites, got " +
                             std::to_string(t.site_count));
    if (t.site_count < 0)
        throw ParameterError("negative site count");
    const std::int64_t dim = std::int64_t{1} << t.site_count;
    std::vector<Eigen::Triplet<double>> trip;
    for (const Term& term : t.terms) {
        const int f = static_cast<int>(term.factors.size());
        std::vector<detail::AxisEntries> ent;
        for (const auto& fac : term.factors)
            ent.push_back(detail::axis_entries(fac.axis_deg));
        for (std::int64_t j = 0; j < dim; ++j) {
            for (int pat = 0; pat < (1 << f); ++pat) {
                double w = term.coeff;
                std::int64_t row = j;
                for (int k = 0; k < f; ++k) {
                    const int bit = (j >> term.factors[static_cast<std::size_t>(k)].site) & 1;
                    if ((pat >> k) & 1) {
                        w *= ent[static_cast<std::size_t>(k)].off;
                        row ^= std::int64_t{1} << term.factors[static_cast<std::size_t>(k)].site;
                    } else {
                        w *= bit ? ent[static_cast<std::size_t>(k)].diag1
                                 : ent[static_cast<std::size_t>(k)].diag0;
                    }
                }
                if (w != 0.0)
                    trip.emplace_back(static_cast<int>(row), static_cast<int>(j), w);
            }
        }
    }
    Eigen::SparseMatrix<double> m(static_cast<int>(dim), static_cast<int>(dim));
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

inline Eigen::MatrixXd realize_dense(const TermList& t) {
    return Eigen::MatrixXd(realize(t));
}

} // namespace aqc
