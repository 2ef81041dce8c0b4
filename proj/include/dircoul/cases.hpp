#ifndef DIRCOUL_CASES_HPP
#define DIRCOUL_CASES_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

#include "dircoul/model.hpp"
#include "dircoul/spectrum.hpp"

namespace dircoul {
namespace cases {

/// The particular configurations of the problem. Classification is exact on
/// the input strengths (|strength| < 1e-15 counts as zero); the reducers
/// below also accept an explicit opt-in and validate it.
enum class CaseKind { ScalarVector, PureTensor, SpinBreaking, PseudospinBreaking, ScalarTensor };

inline const char* to_string(CaseKind k)
{
    switch (k) {
        case CaseKind::ScalarVector:       return "ScalarVector";
        case CaseKind::PureTensor:         return "PureTensor";
        case CaseKind::SpinBreaking:       return "SpinBreaking";
        case CaseKind::PseudospinBreaking: return "PseudospinBreaking";
        case CaseKind::ScalarTensor:       return "ScalarTensor";
    }
    return "Unknown";
}

inline std::optional<CaseKind> detect_case(const PotentialConfig& cfg)
{
    const auto zero = [](double x) { return std::abs(x) < 1e-15; };
    const bool sig0 = zero(cfg.alpha_sigma);
    const bool del0 = zero(cfg.alpha_delta);
    if (sig0 && del0)
        return CaseKind::PureTensor;
    if (zero(cfg.alpha_sigma + cfg.alpha_delta))
        return CaseKind::ScalarTensor;
    if (zero(cfg.a) && zero(cfg.bbar))
        return CaseKind::ScalarVector;
    if (del0)
        return CaseKind::SpinBreaking;
    if (sig0)
        return CaseKind::PseudospinBreaking;
    return std::nullopt;
}

namespace detail {

/// Interior marking shared with the general spectrum path, so the reducers
/// agree with it bit-for-bit on edge rejection.
inline EnergyCandidates mark_interior(double ep, double em, double disc, double sq)
{
    EnergyCandidates out;
    out.discriminant = disc;
    if (dircoul::detail::interior(ep, sq))
        out.e_plus = ep;
    if (dircoul::detail::interior(em, sq))
        out.e_minus = em;
    return out;
}

} // namespace detail

/// Scalar and vector Coulomb problem (U = 0):
///   E+- = [aD^2 - aS^2 +- 4 xi sqrt(aD aS + xi^2)] / [(aD+aS)^2 + 4 xi^2],
/// xi = n_f + gamma.
inline Outcome<EnergyCandidates> scalar_vector_spectrum(const PotentialConfig& cfg,
                                                        const QuantumNumbers& q)
{
    if (std::abs(cfg.a) >= 1e-15 || std::abs(cfg.bbar) >= 1e-15)
        throw std::invalid_argument("scalar_vector_spectrum: requires a = b = 0");
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    if (!gamma)
        return gamma.reason();
    const double xi = q.nf + gamma.value();
    const double rad = cfg.alpha_delta * cfg.alpha_sigma + xi * xi;
    if (rad < 0.0)
        return RejectReason::NegativeDiscriminant;
    const double denom =
        (cfg.alpha_delta + cfg.alpha_sigma) * (cfg.alpha_delta + cfg.alpha_sigma) +
        4.0 * xi * xi;
    const double num0 = cfg.alpha_delta * cfg.alpha_delta - cfg.alpha_sigma * cfg.alpha_sigma;
    const double root = 4.0 * xi * std::sqrt(rad);
    return detail::mark_interior((num0 + root) / denom, (num0 - root) / denom, 4.0 * rad, 1.0);
}

/// Pure tensor Coulomb-plus-constant problem (alpha_sigma = alpha_delta = 0):
///   E+- = +-sqrt(1 + bbar^2 [1 - (kbar/(n_f + |kbar|))^2]),
/// bound only when kbar*bbar > 0 (both sectors, symmetric about E = 0). The
/// radicand is evaluated in the same arithmetic as the general squared
/// equation so the two routes stay ulp-equal even for nearly unbound states.
inline Outcome<EnergyCandidates> pure_tensor_spectrum(const PotentialConfig& cfg,
                                                      const QuantumNumbers& q)
{
    if (std::abs(cfg.alpha_sigma) >= 1e-15 || std::abs(cfg.alpha_delta) >= 1e-15)
        throw std::invalid_argument("pure_tensor_spectrum: requires alpha_sigma = alpha_delta = 0");
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    if (!gamma)
        return gamma.reason();
    const double xi = q.nf + gamma.value(); // gamma = |kbar| here
    const double R = 2.0 * kbar * cfg.bbar;
    const double denom = 4.0 * xi * xi;
    const double sq = std::sqrt(1.0 + cfg.bbar * cfg.bbar);
    double disc = denom * sq * sq - R * R;
    if (disc < 0.0 && disc > -8.0 * 2.22e-16 * (denom * sq * sq + R * R))
        disc = 0.0;
    if (disc < 0.0)
        return RejectReason::NegativeDiscriminant;
    const double e = 2.0 * xi * std::sqrt(disc) / denom;
    return detail::mark_interior(e, -e, disc, sq);
}

/// Spin (alpha_delta = 0) or pseudospin (alpha_sigma = 0) symmetry broken by
/// the tensor potential; xi = n_f + |kbar| since gamma reduces to |kbar|.
inline Outcome<EnergyCandidates> symmetry_breaking_spectrum(const PotentialConfig& cfg,
                                                            const QuantumNumbers& q)
{
    const bool spin = std::abs(cfg.alpha_delta) < 1e-15;   // alpha_delta = 0
    const bool pseudo = std::abs(cfg.alpha_sigma) < 1e-15; // alpha_sigma = 0
    if (spin == pseudo)
        throw std::invalid_argument(
            "symmetry_breaking_spectrum: requires exactly one of alpha_sigma, alpha_delta zero");
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    if (!gamma)
        return gamma.reason();
    const double xi = q.nf + std::abs(kbar);
    const double alpha = spin ? cfg.alpha_sigma : cfg.alpha_delta;
    // Spin case: R = 2 kbar bbar - alpha_sigma; pseudospin: R = 2 kbar bbar + alpha_delta.
    const double R = 2.0 * kbar * cfg.bbar + (spin ? -alpha : alpha);
    const double denom = alpha * alpha + 4.0 * xi * xi;
    const double sq2 = 1.0 + cfg.bbar * cfg.bbar;
    double disc = denom * sq2 - R * R;
    if (disc < 0.0 && disc > -8.0 * 2.22e-16 * (denom * sq2 + R * R))
        disc = 0.0;
    if (disc < 0.0)
        return RejectReason::NegativeDiscriminant;
    const double root = 2.0 * xi * std::sqrt(disc);
    return detail::mark_interior((alpha * R + root) / denom, (alpha * R - root) / denom,
                                 disc, std::sqrt(sq2));
}

/// Scalar plus tensor problem (alpha_sigma = -alpha_delta = alpha_s):
///   E+- = +-sqrt(1 + bbar^2 - ((kbar bbar - alpha_s)/xi)^2),
/// bound iff kbar*bbar > alpha_s. xi = n_f + gamma with
/// gamma = sqrt(kbar^2 + alpha_s^2): the general quantization condition fixes
/// xi through gamma, which does not reduce to |kbar| here.
inline Outcome<EnergyCandidates> scalar_tensor_spectrum(const PotentialConfig& cfg,
                                                        const QuantumNumbers& q)
{
    if (std::abs(cfg.alpha_sigma + cfg.alpha_delta) >= 1e-15)
        throw std::invalid_argument("scalar_tensor_spectrum: requires alpha_sigma = -alpha_delta");
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    if (!gamma)
        return gamma.reason();
    const double xi = q.nf + gamma.value(); // gamma = sqrt(kbar^2 + alpha_s^2)
    const double R = 2.0 * kbar * cfg.bbar + cfg.alpha_delta - cfg.alpha_sigma;
    const double denom = 4.0 * xi * xi;
    const double sq = std::sqrt(1.0 + cfg.bbar * cfg.bbar);
    double disc = denom * sq * sq - R * R;
    if (disc < 0.0 && disc > -8.0 * 2.22e-16 * (denom * sq * sq + R * R))
        disc = 0.0;
    if (disc < 0.0)
        return RejectReason::NegativeDiscriminant;
    const double e = 2.0 * xi * std::sqrt(disc) / denom;
    return detail::mark_interior(e, -e, disc, sq);
}

} // namespace cases
} // namespace dircoul

#endif // DIRCOUL_CASES_HPP
