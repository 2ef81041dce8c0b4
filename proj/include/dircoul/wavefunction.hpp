#ifndef DIRCOUL_WAVEFUNCTION_HPP
#define DIRCOUL_WAVEFUNCTION_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "dircoul/model.hpp"
#include "dircoul/specfun.hpp"
#include "dircoul/spectrum.hpp"

namespace dircoul {

namespace detail {

constexpr double boundary_tol = 1e-12;
constexpr double strength_tol = 1e-15;

/// (lambda - bbar)/(1 - E), evaluated through whichever of the two algebraic
/// forms has the larger denominator ((lambda-b)(lambda+b) = (1-E)(1+E) makes
/// them equal). Safe everywhere both denominators do not vanish together.
inline double ratio_minus(double lambda, double bbar, double E)
{
    if (std::abs(1.0 - E) >= std::abs(lambda + bbar))
        return (lambda - bbar) / (1.0 - E);
    return (1.0 + E) / (lambda + bbar);
}

/// (lambda + bbar)/(1 + E), same scheme.
inline double ratio_plus(double lambda, double bbar, double E)
{
    if (std::abs(1.0 + E) >= std::abs(lambda - bbar))
        return (lambda + bbar) / (1.0 + E);
    return (1.0 - E) / (lambda - bbar);
}

} // namespace detail

/// A+- = -(1/2)[alpha_sigma (lambda-b)/(1-E) +- alpha_delta (lambda+b)/(1+E)].
/// At E = +-1 the surviving term is evaluated by its finite algebraic form;
/// requesting E = +-1 outside the allowed boundary conditions is a domain
/// error.
inline std::pair<double, double> a_plus_minus(const PotentialConfig& cfg,
                                              const ScaledState& s)
{
    const bool sig_zero = std::abs(cfg.alpha_sigma) < detail::strength_tol;
    const bool del_zero = std::abs(cfg.alpha_delta) < detail::strength_tol;
    if (std::abs(s.E - 1.0) <= detail::boundary_tol) {
        if (!(cfg.bbar > 0.0 && sig_zero && s.kbar > 0.5))
            throw std::domain_error("a_plus_minus: E = +1 outside its boundary conditions");
    } else if (std::abs(s.E + 1.0) <= detail::boundary_tol) {
        if (!(cfg.bbar < 0.0 && del_zero && s.kbar < -0.5))
            throw std::domain_error("a_plus_minus: E = -1 outside its boundary conditions");
    }
    const double ts = sig_zero ? 0.0 : cfg.alpha_sigma * detail::ratio_minus(s.lambda, s.bbar, s.E);
    const double td = del_zero ? 0.0 : cfg.alpha_delta * detail::ratio_plus(s.lambda, s.bbar, s.E);
    return {-0.5 * (ts + td), -0.5 * (ts - td)};
}

/// The decoupling ratio eta/mu = -(bbar + lambda)/(1 + E). Diverges at E = -1
/// unless bbar < 0 (where the equivalent form mu/eta = (bbar-lambda)/(1-E)
/// stays finite).
inline double decoupling_ratio(const ScaledState& s)
{
    if (std::abs(s.E + 1.0) <= detail::boundary_tol && s.bbar >= 0.0)
        throw std::domain_error("decoupling_ratio: diverges at E = -1 with bbar >= 0");
    return -detail::ratio_plus(s.lambda, s.bbar, s.E);
}

/// Everything needed to evaluate the closed-form radial functions
///   g = amp_g rho~^gamma e^{-rho~/2} [coef_g L_nf^{(2gamma)} - (nf+2gamma) L_{nf-1}^{(2gamma)}]
/// and the mirror f. Amplitudes are assembled in log space; mu_bar is chosen
/// real positive (the overall phase is free).
struct RadialCoefficients {
    double mu_bar  = 0.0;
    double eta_bar = 0.0;
    double a_plus  = 0.0;
    double a_minus = 0.0;
    double gamma   = 0.0;
    double lambda  = 0.0;
    double kbar    = 0.0;
    double bbar    = 0.0;
    double E       = 0.0;
    int    nf      = 0;
    double coef_g  = 0.0;  // n_f + gamma + kbar + A+ - A-
    double coef_f  = 0.0;  // n_f + gamma - kbar - A+ - A-
    double amp_g   = 0.0;
    double amp_f   = 0.0;
};

/// |mu_bar|^2 from the closed-form normalization integral (the integral of
/// g^2 + f^2 over rho~ equals 2 lambda).
inline double normalization(const RadialCoefficients& c)
{
    const double r = detail::ratio_plus(c.lambda, c.bbar, c.E);
    const double cross = static_cast<double>(c.nf) * (c.nf + 2.0 * c.gamma);
    const double brace = cross + c.coef_g * c.coef_g + r * r * (c.coef_f * c.coef_f + cross);
    const double kpa = c.kbar + c.a_plus;
    const double ln_mu2 = std::log(2.0 * c.lambda) + 2.0 * std::log(std::abs(kpa)) -
                          2.0 * std::lgamma(2.0 * c.gamma + 1.0) +
                          std::lgamma(c.nf + 2.0 * c.gamma + 1.0) - std::lgamma(c.nf + 1.0) -
                          std::log(brace);
    return std::exp(ln_mu2);
}

inline double radial_g(double rho_tilde, const RadialCoefficients& c)
{
    if (rho_tilde <= 0.0 || c.amp_g == 0.0)
        return 0.0;
    const double a2g = 2.0 * c.gamma;
    const double br = c.coef_g * specfun::laguerre(c.nf, a2g, rho_tilde) -
                      (c.nf + a2g) * specfun::laguerre(c.nf - 1, a2g, rho_tilde);
    return c.amp_g * std::exp(c.gamma * std::log(rho_tilde) - 0.5 * rho_tilde) * br;
}

inline double radial_f(double rho_tilde, const RadialCoefficients& c)
{
    if (rho_tilde <= 0.0 || c.amp_f == 0.0)
        return 0.0;
    const double a2g = 2.0 * c.gamma;
    const double br = c.coef_f * specfun::laguerre(c.nf, a2g, rho_tilde) -
                      (c.nf + a2g) * specfun::laguerre(c.nf - 1, a2g, rho_tilde);
    return c.amp_f * std::exp(c.gamma * std::log(rho_tilde) - 0.5 * rho_tilde) * br;
}

/// Analytic d/d(rho~) of (g, f), via d/dx L_n^{(a)} = -L_{n-1}^{(a+1)}.
inline std::pair<double, double> radial_gf_prime(double rho_tilde,
                                                 const RadialCoefficients& c)
{
    if (rho_tilde <= 0.0)
        return {0.0, 0.0};
    const double a2g = 2.0 * c.gamma;
    const double env = std::exp(c.gamma * std::log(rho_tilde) - 0.5 * rho_tilde);
    const double ln   = specfun::laguerre(c.nf, a2g, rho_tilde);
    const double lnm1 = specfun::laguerre(c.nf - 1, a2g, rho_tilde);
    const double dln   = specfun::laguerre_deriv(c.nf, a2g, rho_tilde);
    const double dlnm1 = specfun::laguerre_deriv(c.nf - 1, a2g, rho_tilde);
    const double pre = c.gamma / rho_tilde - 0.5;

    const double brg  = c.coef_g * ln - (c.nf + a2g) * lnm1;
    const double dbrg = c.coef_g * dln - (c.nf + a2g) * dlnm1;
    const double brf  = c.coef_f * ln - (c.nf + a2g) * lnm1;
    const double dbrf = c.coef_f * dln - (c.nf + a2g) * dlnm1;

    return {c.amp_g * env * (pre * brg + dbrg), c.amp_f * env * (pre * brf + dbrf)};
}

/// A fully validated eigenstate.
struct BoundState {
    PotentialConfig cfg;
    QuantumNumbers q;
    Sector sector = Sector::Particle;
    ScaledState state;
    RadialCoefficients coeff;
};

namespace detail {

/// The n_f = 0 boundary states of the quantization tower: E = +1 with
/// g = 2 mu rho~^kbar e^{-rho~/2}, f = 0 (alpha_sigma = 0, kbar > 1/2,
/// bbar > 0), and the charge-conjugate partner at E = -1.
inline BoundState make_boundary_state(const PotentialConfig& cfg, const QuantumNumbers& q,
                                      Sector sector, int sign)
{
    const double kbar = effective_kappa(q, cfg);
    const double gamma = std::abs(kbar);
    const double lambda = std::abs(cfg.bbar);
    const double E = sign > 0 ? 1.0 : -1.0;

    RadialCoefficients c;
    c.gamma  = gamma;
    c.lambda = lambda;
    c.kbar   = kbar;
    c.bbar   = cfg.bbar;
    c.E      = E;
    c.nf     = 0;

    const double amp = std::exp(0.5 * (std::log(2.0 * lambda) - std::lgamma(2.0 * gamma + 1.0)));
    if (sign > 0) {
        c.a_plus  = -0.5 * cfg.alpha_delta * cfg.bbar;
        c.a_minus = +0.5 * cfg.alpha_delta * cfg.bbar;
        c.amp_g = amp;
        c.coef_g = 1.0;
        c.mu_bar  = 0.5 * amp;
        c.eta_bar = -c.mu_bar * cfg.bbar;
    } else {
        c.a_plus  = 0.5 * cfg.alpha_sigma * cfg.bbar;
        c.a_minus = 0.5 * cfg.alpha_sigma * cfg.bbar;
        c.amp_f = amp;
        c.coef_f = 1.0;
        c.eta_bar = -0.5 * amp;
        c.mu_bar  = c.eta_bar * cfg.bbar; // positive: bbar < 0 here
    }
    return BoundState{cfg, q, sector,
                      ScaledState{kbar, gamma, gamma + q.nf, E, lambda, cfg.bbar}, c};
}

} // namespace detail

/// Full pipeline: gamma gate -> squared-equation roots -> spurious filter ->
/// A+- and the kbar + A+ != 0 exclusion -> normalization. Returns the first
/// rejection encountered, with its reason.
inline Outcome<BoundState> build_bound_state(const PotentialConfig& cfg,
                                             const QuantumNumbers& q, Sector sector)
{
    const auto cands = energy_candidates(cfg, q);
    if (!cands)
        return cands.reason();

    double E = 0.0;
    bool found = false;
    for (const auto& se : filter_spurious(cands.value(), cfg, q)) {
        if (se.sector == sector) {
            E = se.energy;
            found = true;
        }
    }
    if (!found)
        return RejectReason::NoBindingRegime;

    if (std::abs(std::abs(E) - 1.0) <= detail::boundary_tol) {
        const int sign = E > 0.0 ? +1 : -1;
        if (!boundary_state_allowed(cfg, q, sign))
            return RejectReason::BoundaryStateNotAllowed;
        return detail::make_boundary_state(cfg, q, sector, sign);
    }

    const double kbar = effective_kappa(q, cfg);
    const double gamma = gamma_exponent(kbar, cfg).value();
    const double xi = q.nf + gamma;
    // lambda through the quantization identity 2 xi lambda = R - D E: exact
    // for filter survivors and, unlike sqrt(1+b^2-E^2), free of cancellation
    // for weakly bound states
    const auto eq = detail::energy_eq(cfg, kbar, xi);
    const double lambda = (eq.R - eq.D * E) / (2.0 * xi);
    const ScaledState s{kbar, gamma, xi, E, lambda, cfg.bbar};
    const auto [ap, am] = a_plus_minus(cfg, s);
    const double kpa = s.kbar + ap;
    // The exclusion surface kbar + A+ = 0 (hit systematically by one branch
    // at n_f = 0) must be recognized through the rounding of A+, whose error
    // grows like the ratio terms near E = -+1; widen the cutoff accordingly.
    double cond = std::abs(s.kbar);
    constexpr double eps = 2.22e-16;
    if (std::abs(cfg.alpha_sigma) >= detail::strength_tol) {
        const double r1 = std::abs(detail::ratio_minus(s.lambda, s.bbar, E));
        cond += std::abs(cfg.alpha_sigma) * (std::abs(E) / s.lambda + r1) /
                std::max(std::abs(1.0 - E), eps);
    }
    if (std::abs(cfg.alpha_delta) >= detail::strength_tol) {
        const double r2 = std::abs(detail::ratio_plus(s.lambda, s.bbar, E));
        cond += std::abs(cfg.alpha_delta) * (std::abs(E) / s.lambda + r2) /
                std::max(std::abs(1.0 + E), eps);
    }
    if (std::abs(kpa) < std::max(1e-12, 256.0 * eps * cond))
        return RejectReason::KbarPlusAPlusZero;

    RadialCoefficients c;
    c.a_plus  = ap;
    c.a_minus = am;
    c.gamma   = s.gamma;
    c.lambda  = s.lambda;
    c.kbar    = s.kbar;
    c.bbar    = s.bbar;
    c.E       = E;
    c.nf      = q.nf;
    c.coef_g  = q.nf + s.gamma + s.kbar + ap - am;
    c.coef_f  = q.nf + s.gamma - s.kbar - ap - am;

    c.mu_bar  = std::sqrt(normalization(c));
    c.eta_bar = c.mu_bar * decoupling_ratio(s);

    const double r = detail::ratio_plus(s.lambda, s.bbar, E);
    const double cross = static_cast<double>(q.nf) * (q.nf + 2.0 * s.gamma);
    const double brace = cross + c.coef_g * c.coef_g + r * r * (c.coef_f * c.coef_f + cross);
    const double ln_amp = 0.5 * (std::log(2.0 * s.lambda) - std::log(brace) +
                                 std::lgamma(q.nf + 1.0) - std::lgamma(q.nf + 2.0 * s.gamma + 1.0));
    c.amp_g = std::copysign(std::exp(ln_amp), kpa);
    c.amp_f = c.amp_g * r;

    return BoundState{cfg, q, sector, s, c};
}

} // namespace dircoul

#endif // DIRCOUL_WAVEFUNCTION_HPP
