#ifndef DIRCOUL_MODEL_HPP
#define DIRCOUL_MODEL_HPP

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace dircoul {

/// Why a candidate state is not a bound state. These are data, not errors:
/// forbidden regions of parameter space are ordinary outcomes of the problem.
enum class RejectReason {
    GammaTooSmall,           // kbar^2 <= 1/4 + alpha_sigma*alpha_delta
    NegativeDiscriminant,    // squared energy equation has no real roots
    NoBindingRegime,         // no root survives the unsquared energy equation
    KbarPlusAPlusZero,       // kbar + A+ = 0: non-normalizable or trivial
    BoundaryStateNotAllowed, // E = +-1 outside its sign/strength conditions
};

inline const char* to_string(RejectReason r)
{
    switch (r) {
        case RejectReason::GammaTooSmall:           return "GammaTooSmall";
        case RejectReason::NegativeDiscriminant:    return "NegativeDiscriminant";
        case RejectReason::NoBindingRegime:         return "NoBindingRegime";
        case RejectReason::KbarPlusAPlusZero:       return "KbarPlusAPlusZero";
        case RejectReason::BoundaryStateNotAllowed: return "BoundaryStateNotAllowed";
    }
    return "Unknown";
}

/// Value-or-rejection result. Rejections carry a machine-readable reason for
/// the CLI and tests.
template <class T>
class Outcome {
public:
    Outcome(T value) : value_(std::move(value)), ok_(true) {}
    Outcome(RejectReason reason) : reason_(reason), ok_(false) {}

    bool ok() const { return ok_; }
    explicit operator bool() const { return ok_; }

    const T& value() const
    {
        if (!ok_)
            throw std::logic_error(std::string("Outcome: rejected state accessed (") +
                                   to_string(reason_) + ")");
        return value_;
    }
    RejectReason reason() const
    {
        if (ok_)
            throw std::logic_error("Outcome: no rejection reason, value is present");
        return reason_;
    }

private:
    T value_{};
    RejectReason reason_{RejectReason::NoBindingRegime};
    bool ok_;
};

/// Dimensionless potential strengths: V_Sigma = alpha_sigma/rho,
/// V_Delta = alpha_delta/rho, U = a/rho + b with bbar = b/m. All library
/// arithmetic is in units of the fermion mass (E = eps/m, radii as m*rho);
/// unit conversion is a display concern of the CLI.
struct PotentialConfig {
    double alpha_sigma = 0.0;
    double alpha_delta = 0.0;
    double a           = 0.0;
    double bbar        = 0.0;
};

/// (n_f, k, m_j) labels of a candidate state. k and m_j are half-integers in
/// circular symmetry, stored doubled so bookkeeping stays exact; the
/// spherical problem enters through spherical_quantum_numbers() below, which
/// stores the (integer) k_s as two_k = -2 k_s.
struct QuantumNumbers {
    int nf     = 0;
    int two_k  = 1;
    int two_mj = 1;
};

/// Particle states populate the E+ branch, antiparticles the E- branch.
enum class Sector { Particle, Antiparticle };

inline const char* to_string(Sector s)
{
    return s == Sector::Particle ? "particle" : "antiparticle";
}

/// Circular-symmetry validity: n_f >= 0, k and m_j half-integers with k = +-m_j.
inline bool valid_circular(const QuantumNumbers& q)
{
    return q.nf >= 0 && (q.two_k % 2 != 0) && (q.two_mj % 2 != 0) &&
           std::abs(q.two_k) == std::abs(q.two_mj);
}

/// Spherical entry point: k_s = +-1, +-2, ... maps onto the circular problem
/// via k -> -k_s; k_s = 0 is not a spin-orbit eigenvalue.
inline QuantumNumbers spherical_quantum_numbers(int nf, int ks, int two_mj)
{
    if (ks == 0)
        throw std::invalid_argument("spherical_quantum_numbers: k_s = 0 is not allowed");
    if (nf < 0 || two_mj % 2 == 0 || std::abs(two_mj) > 2 * std::abs(ks) - 1)
        throw std::invalid_argument("spherical_quantum_numbers: invalid (n_f, m_j)");
    return QuantumNumbers{nf, -2 * ks, two_mj};
}

/// kbar = k - a: the tensor Coulomb strength only shifts the spin-orbit
/// quantum number.
inline double effective_kappa(const QuantumNumbers& q, const PotentialConfig& cfg)
{
    return 0.5 * q.two_k - cfg.a;
}

/// gamma = sqrt(kbar^2 - alpha_sigma*alpha_delta), the near-origin power of
/// the radial functions. Must exceed 1/2 (finite expectation values), so the
/// band kbar^2 <= 1/4 + alpha_sigma*alpha_delta is forbidden, boundary
/// included.
inline Outcome<double> gamma_exponent(double kbar, const PotentialConfig& cfg)
{
    const double g2 = kbar * kbar - cfg.alpha_sigma * cfg.alpha_delta;
    if (!(g2 > 0.25))
        return RejectReason::GammaTooSmall;
    return std::sqrt(g2);
}

/// Derived quantities of one candidate state (all dimensionless).
struct ScaledState {
    double kbar   = 0.0;
    double gamma  = 0.0;
    double xi     = 0.0;  // n_f + gamma
    double E      = 0.0;  // eps/m
    double lambda = 0.0;  // sqrt(1 + bbar^2 - E^2)
    double bbar   = 0.0;
};

/// Assemble the scaled state for a candidate energy. Rejects the forbidden
/// gamma band; requires |E| < sqrt(1 + bbar^2).
inline Outcome<ScaledState> make_scaled_state(const PotentialConfig& cfg,
                                              const QuantumNumbers& q, double E)
{
    const double kbar = effective_kappa(q, cfg);
    const auto gamma = gamma_exponent(kbar, cfg);
    if (!gamma)
        return gamma.reason();
    const double lam2 = 1.0 + cfg.bbar * cfg.bbar - E * E;
    if (!(lam2 > 0.0))
        throw std::domain_error("make_scaled_state: |E| must be below sqrt(1 + bbar^2)");
    return ScaledState{kbar, gamma.value(), q.nf + gamma.value(), E, std::sqrt(lam2), cfg.bbar};
}

/// rho_tilde = 2 lambda (m rho).
inline double scale_radius(double rho, const ScaledState& s)
{
    return 2.0 * s.lambda * rho;
}

/// The charge-conjugate problem: k -> -k, U -> -U (a -> -a, b -> -b),
/// V_Delta -> -V_Sigma and V_Sigma -> -V_Delta; solutions map with
/// f <-> g and eps -> -eps.
inline std::pair<PotentialConfig, QuantumNumbers>
charge_conjugate(const PotentialConfig& cfg, const QuantumNumbers& q)
{
    PotentialConfig conj;
    conj.alpha_sigma = -cfg.alpha_delta;
    conj.alpha_delta = -cfg.alpha_sigma;
    conj.a           = -cfg.a;
    conj.bbar        = -cfg.bbar;
    return {conj, QuantumNumbers{q.nf, -q.two_k, q.two_mj}};
}

} // namespace dircoul

#endif // DIRCOUL_MODEL_HPP
