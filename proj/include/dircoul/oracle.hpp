#ifndef DIRCOUL_ORACLE_HPP
#define DIRCOUL_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dircoul/model.hpp"
#include "dircoul/specfun.hpp"
#include "dircoul/wavefunction.hpp"

namespace dircoul {
namespace oracle {

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Controls for the shooting solver. Radii are dimensionless (m rho); the
/// series start defaults to rho~ = 1e-4, i.e. rho_min = 1e-4/(2 lambda).
/// rho_ref is the matching radius past the classical turning point where the
/// solution is renormalized; the mismatch measures the growing-mode amplitude
/// referred back to it.
struct ShootingConfig {
    double rho_min = 0.0;           // 0: derive from rho_min_tilde per energy bracket
    double rho_max = 0.0;           // 0: derive from rho_max_tilde
    double rho_ref = 0.0;           // 0: 0.25 * rho_max
    double rho_min_tilde = 1e-4;
    double rho_max_tilde = 90.0;
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double e_lo = 0.0;
    double e_hi = 0.0;
    int max_bisections = 200;
    int grid_points = 400;
};

/// Shooting setup for (cfg, kbar) over a bracket, with the outer cutoff far
/// enough that the n_f <= nf_hint polynomial has fully handed over to the
/// decaying envelope, and the matching radius just beyond the turning point.
inline ShootingConfig make_shooting_config(const PotentialConfig& cfg, double kbar,
                                           double e_lo, double e_hi, int nf_hint = 5)
{
    const auto gamma = gamma_exponent(kbar, cfg);
    ShootingConfig sc;
    sc.e_lo = e_lo;
    sc.e_hi = e_hi;
    const double sq2 = 1.0 + cfg.bbar * cfg.bbar;
    const double lam_min2 = sq2 - std::max(e_lo * e_lo, e_hi * e_hi);
    const double lam_min = std::sqrt(std::max(lam_min2, 1e-12));
    const double lam_max = std::sqrt(sq2);
    sc.rho_max_tilde = std::max(70.0, 4.0 * (nf_hint + gamma.value()) + 50.0);
    sc.rho_min = sc.rho_min_tilde / (2.0 * lam_max);
    sc.rho_max = sc.rho_max_tilde / (2.0 * lam_min);
    const double ref_tilde = std::max(14.0, 4.0 * (nf_hint + gamma.value()) + 4.0);
    sc.rho_ref = std::min(ref_tilde / (2.0 * lam_min), 0.5 * sc.rho_max);
    return sc;
}

namespace detail {

/// One Dormand-Prince 5(4) step for the 2x2 radial system; returns the
/// embedded error estimate.
template <class RHS>
inline double dp54_step(const RHS& rhs, double x, const std::array<double, 2>& y, double h,
                        std::array<double, 2>& y5, std::array<double, 2>& k1_out,
                        const std::array<double, 2>& k1)
{
    // Dormand-Prince coefficients (RK45, FSAL).
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    std::array<double, 2> k2, k3, k4, k5, k6, k7, t;

    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(x + c2 * h, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(x + c3 * h, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(x + c4 * h, t);
    for (int i = 0; i < 2; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(x + c5 * h, t);
    for (int i = 0; i < 2; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(x + h, t);
    for (int i = 0; i < 2; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(x + h, y5);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        err = std::max(err, std::abs(ei));
    }
    k1_out = k7; // first-same-as-last
    return err;
}

} // namespace detail

/// Integrate the radial system outward from the Frobenius start and return
/// the decay mismatch: the projection of (g, f) at rho_max onto the left
/// eigenvector (1-E, bbar+lambda) of the growing asymptotic mode, referred
/// back to the matching radius rho_ref with the decay envelope. It vanishes
/// exactly when the outgoing solution is purely decaying, and its sign
/// changes bracket eigenvalues.
inline double integrate_radial(const PotentialConfig& cfg, double kbar, double E,
                               const ShootingConfig& shoot)
{
    const auto gamma_out = gamma_exponent(kbar, cfg);
    const double gamma = gamma_out.value();

    const double sq2 = 1.0 + cfg.bbar * cfg.bbar;
    const double lambda = std::sqrt(sq2 - E * E);

    const double x0 = shoot.rho_min > 0.0 ? shoot.rho_min
                                          : shoot.rho_min_tilde / (2.0 * std::sqrt(sq2));
    const double x1 = shoot.rho_max > 0.0 ? shoot.rho_max : shoot.rho_max_tilde / (2.0 * lambda);
    double xref = shoot.rho_ref > 0.0 ? shoot.rho_ref : 0.25 * x1;
    xref = std::min(std::max(xref, 2.0 * x0), 0.9 * x1);

    const auto rhs = [&](double x, const std::array<double, 2>& y) {
        return std::array<double, 2>{
            (kbar / x - cfg.bbar) * y[0] + (1.0 + E - cfg.alpha_delta / x) * y[1],
            (-kbar / x + cfg.bbar) * y[1] + (1.0 - E + cfg.alpha_sigma / x) * y[0]};
    };

    // Leading Frobenius direction (g, f) ~ rho^gamma (kbar+gamma, alpha_sigma);
    // when that degenerates (alpha_sigma = 0, kbar < 0) use (alpha_delta, kbar-gamma).
    std::array<double, 2> y{kbar + gamma, cfg.alpha_sigma};
    if (std::hypot(y[0], y[1]) < 1e-12)
        y = {cfg.alpha_delta, kbar - gamma};
    const double n0 = std::hypot(y[0], y[1]);
    y = {y[0] / n0, y[1] / n0};

    double x = x0;
    double h = x0 * 0.1;
    auto k1 = rhs(x, y);
    bool referenced = false;
    double log_scale = 0.0; // renormalizations folded out of y, in log space
    int accepted = 0;
    while (x < x1) {
        const double goal = referenced ? x1 : xref;
        h = std::min(h, goal - x);
        std::array<double, 2> y5, k_next;
        const double err = detail::dp54_step(rhs, x, y, h, y5, k_next, k1);
        const double scale = shoot.abs_tol +
                             shoot.rel_tol * std::max({std::abs(y[0]), std::abs(y[1]),
                                                       std::abs(y5[0]), std::abs(y5[1])});
        const double ratio = err / scale;
        if (ratio <= 1.0) {
            x += h;
            y = y5;
            k1 = k_next;
            if (!referenced && x >= goal) {
                // unit solution at the matching radius resets the scale
                const double n = std::hypot(y[0], y[1]);
                y = {y[0] / n, y[1] / n};
                k1 = rhs(x, y);
                log_scale = 0.0;
                referenced = true;
            } else if (++accepted % 32 == 0) {
                const double n = std::hypot(y[0], y[1]);
                if (n > 1e120 || (n < 1e-120 && n > 0.0)) {
                    y = {y[0] / n, y[1] / n};
                    k1 = rhs(x, y);
                    log_scale += std::log(n);
                }
            }
        }
        const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        if (h < 1e-14 * x)
            throw IntegrationError("integrate_radial: step size underflow");
    }

    // Deviation of (g, f) from the decaying eigendirection v- of the
    // asymptotic system, i.e. the growing-mode amplitude, referred back to
    // rho_ref. The two v- parametrizations are proportional; each one
    // degenerates at E = -+1 for one sign of bbar, so pick per sign to stay
    // smooth (and phantom-free) across the whole energy window.
    std::array<double, 2> vm;
    if (cfg.bbar < 0.0)
        vm = {1.0 + E, cfg.bbar - lambda};
    else
        vm = {lambda + cfg.bbar, E - 1.0};
    const double vn = std::hypot(vm[0], vm[1]);
    const double proj = (vm[0] * y[1] - vm[1] * y[0]) / vn;
    if (proj == 0.0)
        return 0.0;
    double lnm = std::log(std::abs(proj)) + log_scale - lambda * (x1 - xref);
    lnm = std::min(lnm, 300.0); // saturate far off an eigenvalue
    return std::copysign(std::exp(lnm), proj);
}

/// Scan the energy bracket on a uniform grid and bisect every sign change of
/// the mismatch, well past the guaranteed 1e-10 in E (down to the last
/// representable interval). Returns up to `count` eigenvalues ascending.
inline std::vector<double> find_eigenvalues(const PotentialConfig& cfg, double kbar,
                                            const ShootingConfig& shoot, int count)
{
    std::vector<double> out;
    if (!(shoot.e_hi > shoot.e_lo) || count <= 0)
        return out;

    const int n = std::max(shoot.grid_points, 2);
    std::vector<double> es(n), ms(n);
    for (int i = 0; i < n; ++i) {
        es[i] = shoot.e_lo + (shoot.e_hi - shoot.e_lo) * i / (n - 1.0);
        ms[i] = integrate_radial(cfg, kbar, es[i], shoot);
    }
    for (int i = 0; i + 1 < n && static_cast<int>(out.size()) < count; ++i) {
        if (ms[i] == 0.0) {
            out.push_back(es[i]);
            continue;
        }
        if ((ms[i] > 0.0) == (ms[i + 1] > 0.0))
            continue;
        double lo = es[i], hi = es[i + 1], mlo = ms[i];
        for (int it = 0; it < shoot.max_bisections; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi)
                break;
            const double mm = integrate_radial(cfg, kbar, mid, shoot);
            if ((mm > 0.0) == (mlo > 0.0)) {
                lo = mid;
                mlo = mm;
            } else {
                hi = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Default evaluation grid for residual checks: rho~ in [1e-3, 40 (n_f+gamma)],
/// log-spaced through the origin region and linear beyond.
inline std::vector<double> residual_grid(const BoundState& state, int npts = 200)
{
    std::vector<double> g;
    g.reserve(npts);
    const double hi = 40.0 * (state.q.nf + state.state.gamma);
    const int nlog = npts / 3;
    for (int i = 0; i < nlog; ++i)
        g.push_back(std::pow(10.0, -3.0 + 3.0 * i / (nlog - 1.0)));
    for (int i = 1; i <= npts - nlog; ++i)
        g.push_back(1.0 + (hi - 1.0) * i / (npts - nlog));
    return g;
}

/// Substitute the closed-form (g, f) into the scaled first-order system with
/// analytic Laguerre derivatives; returns the maximum residual relative to
/// the largest term magnitude at each point.
inline double residual_check(const BoundState& state, const std::vector<double>& grid)
{
    const auto& c = state.coeff;
    const auto& cfg = state.cfg;
    const double lam = c.lambda, E = c.E, kbar = c.kbar, bbar = c.bbar;

    double worst = 0.0;
    for (double rt : grid) {
        if (rt <= 0.0)
            continue;
        const double g = radial_g(rt, c);
        const double f = radial_f(rt, c);
        const auto [gp, fp] = radial_gf_prime(rt, c);

        const double t1 = (kbar / rt) * g;
        const double t2 = (bbar / (2.0 * lam)) * g;
        const double t3 = ((1.0 + E) / (2.0 * lam)) * f;
        const double t4 = (cfg.alpha_delta / rt) * f;
        const double r1 = gp - (t1 - t2 + t3 - t4);
        const double s1 = std::max({std::abs(gp), std::abs(t1), std::abs(t2), std::abs(t3),
                                    std::abs(t4)});

        const double u1 = (kbar / rt) * f;
        const double u2 = (bbar / (2.0 * lam)) * f;
        const double u3 = ((1.0 - E) / (2.0 * lam)) * g;
        const double u4 = (cfg.alpha_sigma / rt) * g;
        const double r2 = fp - (-u1 + u2 + u3 + u4);
        const double s2 = std::max({std::abs(fp), std::abs(u1), std::abs(u2), std::abs(u3),
                                    std::abs(u4)});

        if (s1 > 0.0)
            worst = std::max(worst, std::abs(r1) / s1);
        if (s2 > 0.0)
            worst = std::max(worst, std::abs(r2) / s2);
    }
    return worst;
}

/// Gauss-Laguerre quadrature of the normalization integral: g^2 + f^2 is
/// rho~^{2 gamma} e^{-rho~} times a polynomial, so the generalized rule with
/// weight x^{2 gamma} e^{-x} integrates it exactly. Expected value: 2 lambda.
inline double quadrature_norm(const BoundState& state)
{
    const auto& c = state.coeff;
    const double a2g = 2.0 * c.gamma;
    const int order = std::max(2 * c.nf + static_cast<int>(std::ceil(a2g)) + 20, c.nf + 8);
    const auto q = specfun::gauss_laguerre(order, a2g);

    double sum = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double x = q.nodes[i];
        const double ln   = specfun::laguerre(c.nf, a2g, x);
        const double lnm1 = specfun::laguerre(c.nf - 1, a2g, x);
        const double pg = c.amp_g * (c.coef_g * ln - (c.nf + a2g) * lnm1);
        const double pf = c.amp_f * (c.coef_f * ln - (c.nf + a2g) * lnm1);
        sum += q.weights[i] * (pg * pg + pf * pf);
    }
    return sum;
}

} // namespace oracle
} // namespace dircoul

#endif // DIRCOUL_ORACLE_HPP
