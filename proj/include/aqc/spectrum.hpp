#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aqc/error.hpp"
#include "aqc/rng.hpp"
#include "aqc/terms.hpp"

namespace aqc {

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
};

struct SpectrumOptions {
    int dense_site_limit = 12;  // dense solver up to here, Krylov above
    double tol = 1e-10;
    int max_lanczos_dim = 300;
    int max_restarts = 6;
    std::uint64_t seed = 0x5eed;
};

/// Phase/gauge canonicalization: the largest-magnitude component is made
/// real positive so results are independent of solver internals.
inline void canonical_gauge(Eigen::VectorXd& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0)
        v = -v;
}

/// Number of levels tied with the lowest one at relative tolerance rel_tol.
inline int ground_degeneracy(const std::vector<EigenPair>& eigs, double rel_tol = 1e-9) {
    if (eigs.empty())
        return 0;
    const double e0 = eigs.front().value;
    int d = 1;
    for (std::size_t i = 1; i < eigs.size(); ++i) {
        const double scale = std::max({std::abs(e0), std::abs(eigs[i].value), 1e-12});
        if (std::abs(eigs[i].value - e0) <= rel_tol * scale)
            ++d;
        else
            break;
    }
    return d;
}

namespace detail {

using ApplyFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

// Lanczos with full reorthogonalization and sequential deflation: each
// accepted eigenvector is projected out of all later Krylov vectors, which
// is what lets the method walk through degenerate multiplets.
inline std::vector<EigenPair> lanczos_lowest(const ApplyFn& apply, std::int64_t dim, int k,
                                             const SpectrumOptions& opts) {
    std::vector<EigenPair> found;
    auto rng = make_rng(derive_seed(opts.seed, "lanczos"));
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto project_out = [&](Eigen::VectorXd& w) {
        for (const auto& ep : found)
            w -= ep.vector.dot(w) * ep.vector;
    };

    for (int target = 0; target < k; ++target) {
        Eigen::VectorXd start(dim);
        bool accepted = false;
        for (int restart = 0; restart <= opts.max_restarts && !accepted; ++restart) {
            if (restart == 0 || start.norm() < 1e-12) {
                for (std::int64_t i = 0; i < dim; ++i)
                    start[i] = gauss(rng);
            }
            project_out(start);
            double nrm = start.norm();
            if (nrm < 1e-12)
                continue; // retry with a fresh random vector
            start /= nrm;

            std::vector<Eigen::VectorXd> basis{start};
            std::vector<double> alpha, beta;
            Eigen::VectorXd w(dim);
            bool exhausted = false;
            const int mmax = static_cast<int>(
                std::min<std::int64_t>(dim - static_cast<std::int64_t>(found.size()),
                                       opts.max_lanczos_dim));
            for (int m = 0; m < mmax; ++m) {
                w.setZero();
                apply(basis.back(), w);
                alpha.push_back(basis.back().dot(w));
                w -= alpha.back() * basis.back();
                if (m > 0)
                    w -= beta.back() * basis[basis.size() - 2];
                // full reorthogonalization (twice) against basis and deflated vectors
                for (int pass = 0; pass < 2; ++pass) {
                    for (const auto& b : basis)
                        w -= b.dot(w) * b;
                    project_out(w);
                }
                const double b2 = w.norm();
                if (b2 < 1e-13) {
                    exhausted = true;
                    break;
                }
                beta.push_back(b2);
                basis.push_back(w / b2);
            }
            const int m = static_cast<int>(alpha.size());
            if (m == 0)
                continue;
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                tri(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < m)
                    tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
            Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < m; ++i)
                ritz += es.eigenvectors().col(0)[i] * basis[static_cast<std::size_t>(i)];
            project_out(ritz);
            const double rn = ritz.norm();
            if (rn < 1e-12)
                continue;
            ritz /= rn;
            Eigen::VectorXd hr = Eigen::VectorXd::Zero(dim);
            apply(ritz, hr);
            const double theta = ritz.dot(hr);
            const double resid = (hr - theta * ritz).norm();
            const double scale = std::max(1.0, std::abs(theta));
            if (resid <= 100.0 * opts.tol * scale || exhausted) {
                if (resid > 1e-8 * scale && !exhausted)
                    throw NumericalError("lanczos residual " + std::to_string(resid) +
                                         " above acceptance for eigenvalue " +
                                         std::to_string(theta));
                EigenPair ep{theta, ritz};
                canonical_gauge(ep.vector);
                found.push_back(std::move(ep));
                accepted = true;
            } else {
                start = ritz; // restart from the best Ritz vector
            }
        }
        if (!accepted)
            throw NumericalError("lanczos failed to converge for eigenpair " +
                                 std::to_string(target));
    }
    std::sort(found.begin(), found.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    return found;
}

} // namespace detail

inline std::vector<EigenPair> spectrum_dense(const Eigen::MatrixXd& h, int k) {
    if (k > h.rows())
        throw ParameterError("requested more eigenpairs than the dimension");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalError("dense eigensolver failed");
    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        EigenPair ep{es.eigenvalues()[i], es.eigenvectors().col(i)};
        canonical_gauge(ep.vector);
        out.push_back(std::move(ep));
    }
    return out;
}

/// k lowest eigenpairs of the realized term list, ascending, orthonormal.
/// Dense full diagonalization up to dense_site_limit sites, deflated Lanczos
/// (matrix-free) above.
inline std::vector<EigenPair> spectrum(const TermList& t, int k,
                                       const SpectrumOptions& opts = {}) {
    const std::int64_t dim = std::int64_t{1} << t.site_count;
    if (k < 1 || k > dim)
        throw ParameterError("spectrum: k must be in [1, dim]");
    if (t.site_count <= opts.dense_site_limit)
        return spectrum_dense(realize_dense(t), k);
    auto apply = [&t](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        apply_terms(t, x, y);
    };
    return detail::lanczos_lowest(apply, dim, k, opts);
}

inline std::vector<EigenPair> spectrum(const Eigen::SparseMatrix<double>& h, int k,
                                       const SpectrumOptions& opts = {}) {
    if (k > h.rows())
        throw ParameterError("requested more eigenpairs than the dimension");
    if (h.rows() <= (std::int64_t{1} << opts.dense_site_limit))
        return spectrum_dense(Eigen::MatrixXd(h), k);
    auto apply = [&h](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() += h * x; };
    return detail::lanczos_lowest(apply, h.rows(), k, opts);
}

} // namespace aqc
