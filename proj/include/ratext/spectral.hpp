#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "orthopoly.hpp"
#include "potentials.hpp"
#include "wavefunctions.hpp"
#include "xpoly.hpp"

namespace ratext {

/// Uniform grid x_min, x_min + h, ..., x_max (n points, h = (x_max - x_min)/(n - 1)), Dirichlet one step beyond.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 1000;

    double h() const { return (x_max - x_min) / (n - 1); }
    double x(int i) const { return x_min + i * h(); }
};

inline void validate(const GridSpec& g, const PotentialModel& m) {
    if (g.n < 100) throw UsageError("grid needs at least 100 points");
    if (!(g.x_min < g.x_max)) throw UsageError("grid needs x_min < x_max");
    if (!m.contains(g.x_min) || !m.contains(g.x_max)) throw DomainError("grid endpoints must lie inside the open domain");
}

/// Radial: [h, x_max] with h = x_max / n and omega x_max^2 / 4 >= E_k + 15. Scarf: [-pi/2 + h, pi/2 - h].
/**
 * True when the bound states vanish at least linearly at every finite endpoint (psi ~ d^s with s >= 1).
 * For 0 < s < 1 the potential has an attractive inverse-square endpoint term: the three-point scheme then
 * converges like h^(2s-1), and for s < 1/2 its Dirichlet limit is a different self-adjoint realization.
 */
inline bool fd_regular_endpoints(const PotentialModel& m) {
    const WavefunctionSpec g = eigenfunction(m, 0);
    constexpr double slack = 1e-12;
    if (m.is_radial()) return g.left_power >= 1 - slack;
    return 2 * g.left_power >= 1 - slack && 2 * g.right_power >= 1 - slack;
}

inline GridSpec default_grid(const PotentialModel& m, int n, int k = 4) {
    if (m.is_radial()) {
        double ek = analytic_spectrum(m, std::max(k, 1), EnergyOrigin::Bare).back();
        double xmax = 2.0 * std::sqrt((std::abs(ek) + 15.0) / m.omega);
        return {xmax / n, xmax, n};
    }
    double h = std::numbers::pi / (n + 1);
    return {-std::numbers::pi / 2 + h, std::numbers::pi / 2 - h, n};
}

struct SpectralReport {
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    GridSpec grid;
    EnergyOrigin origin = EnergyOrigin::Partner;
    std::optional<std::vector<double>> analytic_reference;
    std::optional<double> max_abs_error;
    std::optional<std::string> warning;
    std::vector<std::vector<double>> eigenvectors;  // filled on request, unit 2-norm times h^{-1/2}
};

namespace detail {

struct Tridiagonal {
    std::vector<double> d;  // diagonal
    double e = 0.0;         // constant off-diagonal
};

/// Number of eigenvalues strictly below lambda (Sturm count via LDL^T pivots).
inline int sturm_count(const Tridiagonal& t, double lambda) {
    int neg = 0;
    double q = 1.0;
    const double e2 = t.e * t.e;
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        q = t.d[i] - lambda - (i > 0 ? e2 / q : 0.0);
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(t.d[i]) + std::abs(t.e));
        if (q < 0) ++neg;
    }
    return neg;
}

/// k-th smallest eigenvalue (0-based) by bisection.
inline double bisect_eigenvalue(const Tridiagonal& t, int k, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > k)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

/// Eigenvector for a converged eigenvalue by two steps of inverse iteration (Thomas algorithm).
inline std::vector<double> inverse_iteration(const Tridiagonal& t, double lambda) {
    const std::size_t n = t.d.size();
    const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    std::vector<double> v(n, 1.0), c(n), y(n);
    for (int step = 0; step < 3; ++step) {
        // solve (T - shift) y = v
        double b0 = t.d[0] - shift;
        c[0] = t.e / b0;
        y[0] = v[0] / b0;
        for (std::size_t i = 1; i < n; ++i) {
            double den = t.d[i] - shift - t.e * c[i - 1];
            if (den == 0.0) den = 1e-300;
            c[i] = t.e / den;
            y[i] = (v[i] - t.e * y[i - 1]) / den;
        }
        for (std::size_t i = n - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
        double nrm = 0.0;
        for (double a : y) nrm += a * a;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0) || !std::isfinite(nrm)) throw NumericError("inverse iteration failed");
        for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / nrm;
    }
    return v;
}

inline double eigen_residual(const Tridiagonal& t, const std::vector<double>& v, double lambda) {
    const std::size_t n = v.size();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = (t.d[i] - lambda) * v[i];
        if (i > 0) a += t.e * v[i - 1];
        if (i + 1 < n) a += t.e * v[i + 1];
        r += a * a;
    }
    return std::sqrt(r);
}

}  // namespace detail

/**
 * Lowest k eigenvalues of the 3-point discretization of -d2/dx2 + V(x) (+ additive constant for the Partner
 * origin), Dirichlet one step outside the grid.
 */
inline SpectralReport fd_eigensolve(const PotentialModel& m, const GridSpec& grid, int k,
                                    EnergyOrigin origin = EnergyOrigin::Partner, bool keep_vectors = false) {
    if (k < 1) throw UsageError("fd_eigensolve needs k >= 1");
    validate(grid, m);
    const double h = grid.h();
    const double shift = origin == EnergyOrigin::Partner ? m.additive_constant : 0.0;
    detail::Tridiagonal t;
    t.d.resize(grid.n);
    t.e = -1.0 / (h * h);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < grid.n; ++i) {
        t.d[i] = 2.0 / (h * h) + evaluate(m, grid.x(i)) + shift;
        lo = std::min(lo, t.d[i] - 2 * std::abs(t.e));
        hi = std::max(hi, t.d[i] + 2 * std::abs(t.e));
    }
    SpectralReport rep;
    rep.grid = grid;
    rep.origin = origin;
    if (k > grid.n) throw UsageError("more levels requested than grid points");
    double prev_lo = lo;
    for (int j = 0; j < k; ++j) {
        double lam = detail::bisect_eigenvalue(t, j, prev_lo, hi);
        if (!std::isfinite(lam)) throw NumericError("eigenvalue bisection did not converge");
        rep.eigenvalues.push_back(lam);
        auto v = detail::inverse_iteration(t, lam);
        rep.residuals.push_back(detail::eigen_residual(t, v, lam));
        if (keep_vectors) {
            for (double& a : v) a /= std::sqrt(h);
            rep.eigenvectors.push_back(std::move(v));
        }
        prev_lo = lo;
    }
    for (std::size_t j = 1; j < rep.eigenvalues.size(); ++j)
        if (!(rep.eigenvalues[j] > rep.eigenvalues[j - 1]))
            throw NumericError("degenerate or unordered discrete eigenvalues");
    // fewer than ~8 points per local half-wavelength makes the top levels unreliable
    double kmax = std::sqrt(std::max(0.0, rep.eigenvalues.back() - *std::min_element(t.d.begin(), t.d.end()) +
                                              2.0 / (h * h)));
    if (kmax * h > std::numbers::pi / 8)
        rep.warning = "level " + std::to_string(k - 1) + " is under-resolved on this grid (k h = " +
                      detail::fmt(kmax * h) + ")";
    rep.analytic_reference = analytic_spectrum(m, k, origin);
    double err = 0.0;
    for (int j = 0; j < k; ++j) err = std::max(err, std::abs(rep.eigenvalues[j] - (*rep.analytic_reference)[j]));
    rep.max_abs_error = err;
    return rep;
}

/// Per-level Richardson error estimate |E(n/2) - E(n)| / 3 for the second-order scheme.
inline std::vector<double> fd_error_estimate(const PotentialModel& m, int n, int k,
                                             EnergyOrigin origin = EnergyOrigin::Partner) {
    auto fine = fd_eigensolve(m, default_grid(m, n, k), k, origin);
    auto coarse = fd_eigensolve(m, default_grid(m, n / 2, k), k, origin);
    std::vector<double> e(k);
    for (int j = 0; j < k; ++j) e[j] = std::abs(coarse.eigenvalues[j] - fine.eigenvalues[j]) / 3.0;
    return e;
}

struct ConvergenceReport {
    double order = 0.0;
    bool reliable = true;
    std::vector<double> eigenvalues;
};

/// Observed order of the level-`level` eigenvalue from successive differences on ratio-2 refined grids.
inline ConvergenceReport convergence_order(const PotentialModel& m, const std::vector<GridSpec>& grids,
                                           int level = 0) {
    if (grids.size() < 3) throw UsageError("convergence_order needs at least three grids");
    ConvergenceReport r;
    for (const auto& g : grids) r.eigenvalues.push_back(fd_eigensolve(m, g, level + 1).eigenvalues[level]);
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < r.eigenvalues.size(); ++i)
        diffs.push_back(r.eigenvalues[i] - r.eigenvalues[i + 1]);
    std::vector<double> orders;
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        if (diffs[i] * diffs[i + 1] <= 0 || std::abs(diffs[i + 1]) >= std::abs(diffs[i])) r.reliable = false;
        orders.push_back(std::log2(std::abs(diffs[i] / diffs[i + 1])));
    }
    r.order = orders.back();
    return r;
}

/// Gram matrix of the analytic eigenfunctions 0..m_max, by Gauss quadrature; symmetric by construction.
inline Eigen::MatrixXd orthogonality_matrix(const PotentialModel& m, int m_max) {
    if (m_max < 1) throw UsageError("orthogonality_matrix needs m >= 1");
    std::vector<WavefunctionSpec> wfs;
    for (int k = 0; k <= m_max; ++k) wfs.push_back(eigenfunction(m, k));
    Eigen::MatrixXd g(m_max + 1, m_max + 1);
    for (int i = 0; i <= m_max; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = overlap(wfs[i], wfs[j]);
            if (!std::isfinite(v)) throw NumericError("quadrature underflow/overflow in the Gram matrix");
            g(i, j) = g(j, i) = v;
        }
    return g;
}

/// Sample points for residual checks: the interior grid, kept 0.03 away from finite endpoints.
inline std::vector<double> residual_points(const PotentialModel& m, int n = 400) {
    std::vector<double> xs = interior_grid(m, n);
    if (!m.is_radial())
        std::erase_if(xs, [](double x) { return std::abs(x) > std::numbers::pi / 2 - 0.03; });
    return xs;
}

/// max |-psi'' + (V + const - E) psi| / max |psi| over the sample points, psi'' from the closed form.
inline double schrodinger_residual(const PotentialModel& m, const WavefunctionSpec& wf, double energy_offset = 0.0) {
    double worst = 0.0, psi_max = 0.0;
    for (double x : residual_points(m)) {
        Jet4 p = wavefunction_at(wf, Jet4::variable(x));
        double v = evaluate(m, x) + m.additive_constant;
        worst = std::max(worst, std::abs(-p.derivative(2) + (v - wf.energy - energy_offset) * p.value()));
        psi_max = std::max(psi_max, std::abs(p.value()));
    }
    return worst / psi_max;
}

/// Denominator of the extended-potential measure in z for an exceptional family.
inline DPoly exceptional_measure_denominator(const ExceptionalFamily<double>& f) {
    const double a = f.alpha, b = f.beta;
    switch (f.kind) {
        case ExceptionalKind::X1Laguerre: return DPoly{a, 1.0};
        case ExceptionalKind::L1: return DPoly{(a + 1) * (a + 1) - (a + 1), 2 * (a + 1), 1.0};
        case ExceptionalKind::L2: return DPoly{(a - 1) * (a - 1) + (a - 1), 2 * (a - 1), 1.0};
        case ExceptionalKind::X1Jacobi: return DPoly{b + a, -(b - a)};
        case ExceptionalKind::P1: {
            auto D = detail::jacobi_tilde1_d(a, b);
            return D.first;
        }
        default: throw UnsupportedError(std::string(to_string(f.kind)) + " has no positive-definite measure (not complete)");
    }
}

/**
 * Gram matrix of members 0..count-1 of an exceptional family under the weight of its extended potential:
 * z^alpha e^{-z} / Q(z)^2 on (0, inf) or (1-z)^alpha (1+z)^beta / Q(z)^2 on (-1, 1).
 */
inline Eigen::MatrixXd polynomial_gram(const ExceptionalFamily<double>& f, int count) {
    DPoly Q = exceptional_measure_denominator(f);
    int roots = f.is_laguerre_type() ? count_real_roots<double>(Q, 0.0, std::nullopt)
                                     : count_real_roots<double>(Q, -1.0, 1.0);
    bool endpoint_zero = f.is_laguerre_type() ? Q(0.0) == 0.0 : (Q(-1.0) == 0.0 || Q(1.0) == 0.0);
    if (roots > 0 || endpoint_zero)
        throw DomainError("the measure denominator vanishes on the orthogonality interval for these parameters");
    std::vector<DPoly> ps;
    for (int k = 0; k < count; ++k) ps.push_back(exceptional_polynomial(f, k));
    ClassicalFamily<double> w = f.is_laguerre_type() ? ClassicalFamily<double>::laguerre(f.alpha)
                                                     : ClassicalFamily<double>::jacobi(f.alpha, f.beta);
    int deg = ps.back().degree();
    Eigen::MatrixXd g(count, count);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j <= i; ++j) {
            auto integrand = [&](double z) {
                double q = Q(z);
                return ps[i](z) * ps[j](z) / (q * q);
            };
            g(i, j) = g(j, i) = detail::adaptive_gauss(w, 2 * deg + 16, integrand);
        }
    return g;
}

/// max_{i != j} |G_ij| / sqrt(G_ii G_jj)
inline double relative_leakage(const Eigen::MatrixXd& g) {
    double r = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (i != j) r = std::max(r, std::abs(g(i, j)) / std::sqrt(std::abs(g(i, i) * g(j, j))));
    return r;
}

}  // namespace ratext
