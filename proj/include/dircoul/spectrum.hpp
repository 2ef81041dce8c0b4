#ifndef DIRCOUL_SPECTRUM_HPP
#define DIRCOUL_SPECTRUM_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "dircoul/model.hpp"

namespace dircoul {

/// Roots of the squared energy equation. A root is absent when it falls
/// outside the open interval (-sqrt(1+bbar^2), sqrt(1+bbar^2)); roots that
/// coincide with the continuum edge to rounding are rejected, not kept.
struct EnergyCandidates {
    std::optional<double> e_plus;
    std::optional<double> e_minus;
    double discriminant = 0.0;
};

namespace detail {

/// Parameters of the energy equation
///   2 xi sqrt(1+bbar^2-E^2) = R - D E,
/// with D = alpha_delta + alpha_sigma and R = 2 kbar bbar + alpha_delta - alpha_sigma.
struct EnergyEq {
    double D, R, xi, sq; // sq = sqrt(1 + bbar^2)
};

inline EnergyEq energy_eq(const PotentialConfig& cfg, double kbar, double xi)
{
    return EnergyEq{cfg.alpha_delta + cfg.alpha_sigma,
                    2.0 * kbar * cfg.bbar + cfg.alpha_delta - cfg.alpha_sigma, xi,
                    std::sqrt(1.0 + cfg.bbar * cfg.bbar)};
}

/// Interior of the energy window, excluding the continuum edge to rounding.
inline bool interior(double E, double sq)
{
    return sq - std::abs(E) > 8.0 * 2.22e-16 * sq;
}

} // namespace detail

/// Both roots of the squared energy equation for (cfg, q). Rejects the
/// forbidden gamma band and negative discriminants; a tiny negative
/// discriminant from rounding at the critical point is clamped to the double
/// root.
inline Outcome<EnergyCandidates> energy_candidates(const PotentialConfig& cfg,
                                                   const QuantumNumbers& q)
{
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    if (!gamma)
        return gamma.reason();
    const auto eq = detail::energy_eq(cfg, kbar, q.nf + gamma.value());

    const double denom = eq.D * eq.D + 4.0 * eq.xi * eq.xi;
    double disc = denom * eq.sq * eq.sq - eq.R * eq.R;
    const double disc_scale = denom * eq.sq * eq.sq + eq.R * eq.R;
    if (disc < 0.0 && disc > -8.0 * 2.22e-16 * disc_scale)
        disc = 0.0;
    if (disc < 0.0)
        return RejectReason::NegativeDiscriminant;

    const double root = 2.0 * eq.xi * std::sqrt(disc);
    EnergyCandidates out;
    out.discriminant = disc;
    const double ep = (eq.D * eq.R + root) / denom;
    const double em = (eq.D * eq.R - root) / denom;
    if (detail::interior(ep, eq.sq))
        out.e_plus = ep;
    if (detail::interior(em, eq.sq))
        out.e_minus = em;
    return out;
}

struct SectorEnergy {
    Sector sector;
    double energy;
};

/// Keep a root only if it satisfies the original (unsquared) energy equation:
/// the right-hand side R - D E must be non-negative and the substitution
/// residual below 1e-9. The E+ branch tags Particle, E- Antiparticle. An
/// empty list is a valid outcome: no binding.
inline std::vector<SectorEnergy> filter_spurious(const EnergyCandidates& candidates,
                                                 const PotentialConfig& cfg,
                                                 const QuantumNumbers& q)
{
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    std::vector<SectorEnergy> out;
    if (!gamma)
        return out;
    const auto eq = detail::energy_eq(cfg, kbar, q.nf + gamma.value());

    const auto keep = [&](double E) {
        const double rhs = eq.R - eq.D * E;
        if (rhs < 0.0)
            return false;
        const double lhs = 2.0 * eq.xi * std::sqrt(eq.sq * eq.sq - E * E);
        return std::abs(lhs - rhs) <= 1e-9;
    };

    if (candidates.e_plus && keep(*candidates.e_plus))
        out.push_back({Sector::Particle, *candidates.e_plus});
    if (candidates.e_minus && keep(*candidates.e_minus))
        out.push_back({Sector::Antiparticle, *candidates.e_minus});
    return out;
}

enum class BoundSectors { Both, ParticleOnly, AntiparticleOnly, None };

inline const char* to_string(BoundSectors s)
{
    switch (s) {
        case BoundSectors::Both:             return "Both";
        case BoundSectors::ParticleOnly:     return "ParticleOnly";
        case BoundSectors::AntiparticleOnly: return "AntiparticleOnly";
        case BoundSectors::None:             return "None";
    }
    return "Unknown";
}

/// Which sectors bind, traced by the intercept I_E of the linear side of the
/// energy equation. intercept/critical are absent when alpha_delta +
/// alpha_sigma = 0 (vertical line: classification falls back to direct root
/// filtering). boundary_flag marks I_E = I_c, where E+ = E-.
struct RegimeReport {
    std::optional<double> intercept; // I_E
    std::optional<double> critical;  // I_c (carries the sign of D)
    BoundSectors sectors = BoundSectors::None;
    bool boundary_flag = false;
    bool fallback = false;
};

/// Sector classification per the binding diagrams. Filled interval endpoints
/// are inclusive and hollow ones exclusive, with equality tested to 1e-12.
inline RegimeReport classify_regime(const PotentialConfig& cfg, double kbar, double xi)
{
    const auto eq = detail::energy_eq(cfg, kbar, xi);
    RegimeReport rep;

    if (eq.D == 0.0) {
        rep.fallback = true;
        // Vertical line: both roots live or die together. R > 0 with the
        // radicand positive and the roots interior means symmetric binding.
        const double denom = 4.0 * xi * xi;
        double disc = denom * eq.sq * eq.sq - eq.R * eq.R;
        const double scale = denom * eq.sq * eq.sq + eq.R * eq.R;
        if (disc < 0.0 && disc > -8.0 * 2.22e-16 * scale)
            disc = 0.0;
        const double E = std::sqrt(std::max(disc, 0.0)) / (2.0 * xi);
        rep.sectors = (eq.R > 0.0 && disc >= 0.0 && detail::interior(E, eq.sq))
                          ? BoundSectors::Both
                          : BoundSectors::None;
        rep.boundary_flag = (eq.R > 0.0 && disc == 0.0);
        return rep;
    }

    const double ie = eq.R / eq.D;
    const double ic = std::sqrt((eq.D * eq.D + 4.0 * eq.xi * eq.xi)) * eq.sq / eq.D;
    rep.intercept = ie;
    rep.critical  = ic;

    constexpr double eq_tol = 1e-12;
    const auto eqd = [&](double x, double y) { return std::abs(x - y) < eq_tol; };

    if (eq.D > 0.0) {
        if (eqd(ie, ic) || (ie < ic && ie > eq.sq && !eqd(ie, eq.sq))) {
            rep.sectors = BoundSectors::Both;          // (sqrt(1+b^2), I_c]
        } else if ((eqd(ie, eq.sq) || ie < eq.sq) && ie > -eq.sq && !eqd(ie, -eq.sq)) {
            rep.sectors = BoundSectors::AntiparticleOnly; // (-sqrt(1+b^2), sqrt(1+b^2)]
        } else {
            rep.sectors = BoundSectors::None;
        }
    } else {
        if (eqd(ie, ic) || (ie > ic && ie < -eq.sq && !eqd(ie, -eq.sq))) {
            rep.sectors = BoundSectors::Both;          // [I_c, -sqrt(1+b^2))
        } else if ((eqd(ie, -eq.sq) || ie > -eq.sq) && ie < eq.sq && !eqd(ie, eq.sq)) {
            rep.sectors = BoundSectors::ParticleOnly;  // [-sqrt(1+b^2), sqrt(1+b^2))
        } else {
            rep.sectors = BoundSectors::None;
        }
    }
    rep.boundary_flag = eqd(ie, ic);
    return rep;
}

/// E = +1 exists only with bbar > 0, alpha_sigma = 0, kbar > 1/2 (f vanishes);
/// E = -1 only with bbar < 0, alpha_delta = 0, kbar < -1/2 (g vanishes).
inline bool boundary_state_allowed(const PotentialConfig& cfg, const QuantumNumbers& q,
                                   int sign)
{
    const double kbar = effective_kappa(q, cfg);
    if (sign > 0)
        return cfg.bbar > 0.0 && std::abs(cfg.alpha_sigma) < 1e-15 && kbar > 0.5;
    return cfg.bbar < 0.0 && std::abs(cfg.alpha_delta) < 1e-15 && kbar < -0.5;
}

/// Residual of the quantization condition,
///   gamma - kbar*bbar/lambda + [alpha_sigma (E+1) + alpha_delta (E-1)]/(2 lambda) + n_f,
/// zero (to tolerance) exactly at the eigenenergies of (cfg, q).
inline double quantization_residual(double E, const PotentialConfig& cfg,
                                    const QuantumNumbers& q)
{
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    const double lam = std::sqrt(1.0 + cfg.bbar * cfg.bbar - E * E);
    return gamma.value() - kbar * cfg.bbar / lam +
           (cfg.alpha_sigma * (E + 1.0) + cfg.alpha_delta * (E - 1.0)) / (2.0 * lam) +
           q.nf;
}

} // namespace dircoul

#endif // DIRCOUL_SPECTRUM_HPP
