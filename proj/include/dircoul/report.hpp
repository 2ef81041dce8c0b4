#ifndef DIRCOUL_REPORT_HPP
#define DIRCOUL_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dircoul/model.hpp"
#include "dircoul/oracle.hpp"
#include "dircoul/spectrum.hpp"
#include "dircoul/wavefunction.hpp"

namespace dircoul {
namespace report {

enum class Symmetry { Circular, Spherical };

/// One parameter sweep: a potential configuration, the symmetry mode, the
/// spin-orbit list (stored doubled and already mapped to circular convention
/// in spherical mode), and the n_f range.
struct SweepSpec {
    PotentialConfig cfg;
    Symmetry mode = Symmetry::Circular;
    std::vector<int> two_k;
    int nf_max = 5;
};

inline QuantumNumbers make_numbers(int two_k, int nf)
{
    return QuantumNumbers{nf, two_k, two_k > 0 ? std::abs(two_k) : -std::abs(two_k)};
}

/// "3/2" / "-1/2" in circular mode; the integer k_s in spherical mode.
inline std::string k_label(int two_k, Symmetry mode)
{
    if (mode == Symmetry::Spherical)
        return std::to_string(-two_k / 2);
    return std::to_string(two_k) + "/2";
}

struct SpectrumRow {
    int two_k = 0;
    int nf = 0;
    std::optional<Sector> sector;
    std::optional<double> energy;
    std::optional<double> lambda;
    std::optional<double> gamma;
    std::optional<double> xi;
    std::string status = "ok";
};

/// The spectrum table: one row per validated state, and one row per rejection
/// (with its reason and no energy) so forbidden regions are visible. Rows are
/// ordered by (k, n_f, sector) regardless of evaluation order.
inline std::vector<SpectrumRow> spectrum_rows(const SweepSpec& spec)
{
    std::vector<SpectrumRow> rows;
    auto sorted_k = spec.two_k;
    std::sort(sorted_k.begin(), sorted_k.end());
    for (int two_k : sorted_k) {
        for (int nf = 0; nf <= spec.nf_max; ++nf) {
            const auto q = make_numbers(two_k, nf);
            const double kbar = effective_kappa(q, spec.cfg);
            const auto gamma = gamma_exponent(kbar, spec.cfg);

            SpectrumRow base;
            base.two_k = two_k;
            base.nf = nf;
            if (gamma) {
                base.gamma = gamma.value();
                base.xi = nf + gamma.value();
            }

            std::size_t emitted = rows.size();
            const auto cands = energy_candidates(spec.cfg, q);
            if (!cands) {
                base.status = to_string(cands.reason());
                rows.push_back(base);
                continue;
            }
            for (Sector sector : {Sector::Particle, Sector::Antiparticle}) {
                const auto built = build_bound_state(spec.cfg, q, sector);
                if (built) {
                    SpectrumRow r = base;
                    r.sector = sector;
                    r.energy = built.value().state.E;
                    r.lambda = built.value().state.lambda;
                    rows.push_back(r);
                } else if (built.reason() != RejectReason::NoBindingRegime) {
                    SpectrumRow r = base;
                    r.sector = sector;
                    r.status = to_string(built.reason());
                    rows.push_back(r);
                }
            }
            if (rows.size() == emitted) {
                base.status = to_string(RejectReason::NoBindingRegime);
                rows.push_back(base);
            }
        }
    }
    return rows;
}

struct RegimeRow {
    int two_k = 0;
    int nf = 0;
    std::optional<double> intercept;
    std::optional<double> critical;
    BoundSectors sectors = BoundSectors::None;
    bool boundary = false;
    bool fallback = false;
    std::string region = "none";
};

/// Regime classification per (k, n_f): intercept, critical value, sector set
/// and the diagram region label ("i" single sector, "ii" both, "none", or
/// "vertical" when the intercept is undefined).
inline std::vector<RegimeRow> regime_rows(const SweepSpec& spec)
{
    std::vector<RegimeRow> rows;
    auto sorted_k = spec.two_k;
    std::sort(sorted_k.begin(), sorted_k.end());
    for (int two_k : sorted_k) {
        for (int nf = 0; nf <= spec.nf_max; ++nf) {
            const auto q = make_numbers(two_k, nf);
            const double kbar = effective_kappa(q, spec.cfg);
            RegimeRow r;
            r.two_k = two_k;
            r.nf = nf;
            const auto gamma = gamma_exponent(kbar, spec.cfg);
            if (!gamma) {
                r.region = "forbidden";
                rows.push_back(r);
                continue;
            }
            const auto rep = classify_regime(spec.cfg, kbar, nf + gamma.value());
            r.intercept = rep.intercept;
            r.critical = rep.critical;
            r.sectors = rep.sectors;
            r.boundary = rep.boundary_flag;
            r.fallback = rep.fallback;
            if (rep.fallback)
                r.region = rep.sectors == BoundSectors::Both ? "vertical" : "none";
            else if (rep.sectors == BoundSectors::Both)
                r.region = "ii";
            else if (rep.sectors == BoundSectors::None)
                r.region = "none";
            else
                r.region = "i";
            rows.push_back(r);
        }
    }
    return rows;
}

struct WavefunctionSample {
    double rho = 0.0;
    double rho_tilde = 0.0;
    double g = 0.0;
    double f = 0.0;
    double density = 0.0;
};

inline std::vector<WavefunctionSample> sample_wavefunction(const BoundState& state,
                                                           double rho_lo, double rho_hi,
                                                           int count)
{
    std::vector<WavefunctionSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double rho = rho_lo + (rho_hi - rho_lo) * i / std::max(count - 1, 1);
        const double rt = scale_radius(rho, state.state);
        const double g = radial_g(rt, state.coeff);
        const double f = radial_f(rt, state.coeff);
        out.push_back({rho, rt, g, f, g * g + f * f});
    }
    return out;
}

// --- verification -----------------------------------------------------------

struct VerifyOptions {
    double corrupt_energy = 0.0;  // testing hook: shift every built energy
    bool shooting = true;
    double tol_quant = 1e-9;
    double tol_resid = 1e-8;
    double tol_norm = 1e-10;
    double tol_shoot = 1e-7;
};

struct StateCheck {
    int two_k = 0;
    int nf = 0;
    Sector sector = Sector::Particle;
    double energy = 0.0;
    double quant_resid = 0.0;
    double ode_resid = 0.0;
    double norm_err = 0.0;
    bool pass = true;
};

struct LadderCheck {
    int two_k = 0;
    int expected = 0;
    int found = 0;
    double worst_de = 0.0;
    bool pass = true;
};

struct VerifySummary {
    std::vector<StateCheck> states;
    std::vector<LadderCheck> ladders;
    double worst_quant = 0.0;
    double worst_resid = 0.0;
    double worst_norm = 0.0;
    double worst_de = 0.0;
    bool ok = true;
};

namespace detail {

inline std::vector<BoundState> validated_states(const PotentialConfig& cfg, int two_k,
                                                int nf_lo, int nf_hi)
{
    std::vector<BoundState> out;
    for (int nf = nf_lo; nf <= nf_hi; ++nf) {
        const auto q = make_numbers(two_k, nf);
        for (Sector s : {Sector::Particle, Sector::Antiparticle})
            if (auto b = build_bound_state(cfg, q, s))
                out.push_back(b.value());
    }
    return out;
}

/// Check one spin-orbit channel: per-state residual/normalization checks and
/// the shooting cross-check of the whole ladder.
inline std::pair<std::vector<StateCheck>, LadderCheck>
verify_channel(const PotentialConfig& cfg, int two_k, int nf_max, const VerifyOptions& opt)
{
    auto states = validated_states(cfg, two_k, 0, nf_max);
    for (auto& s : states) {
        s.state.E += opt.corrupt_energy;
        s.coeff.E += opt.corrupt_energy;
    }

    std::vector<StateCheck> checks;
    for (const auto& s : states) {
        StateCheck c;
        c.two_k = two_k;
        c.nf = s.q.nf;
        c.sector = s.sector;
        c.energy = s.state.E;
        // O(1)-scaled form of the quantization condition (times 2 lambda):
        // well conditioned arbitrarily close to the continuum
        c.quant_resid = std::abs(2.0 * s.state.lambda *
                                 quantization_residual(s.state.E, cfg, s.q));
        c.ode_resid = oracle::residual_check(s, oracle::residual_grid(s));
        c.norm_err = std::abs(oracle::quadrature_norm(s) - 2.0 * s.state.lambda);
        c.pass = c.quant_resid < opt.tol_quant && c.ode_resid < opt.tol_resid &&
                 c.norm_err < opt.tol_norm;
        checks.push_back(c);
    }

    LadderCheck ladder;
    ladder.two_k = two_k;
    ladder.expected = static_cast<int>(states.size());
    if (!opt.shooting || states.empty())
        return {checks, ladder};

    std::vector<double> expected;
    for (const auto& s : states)
        expected.push_back(s.state.E);
    std::sort(expected.begin(), expected.end());

    const double kbar = effective_kappa(make_numbers(two_k, 0), cfg);
    const double sq = std::sqrt(1.0 + cfg.bbar * cfg.bbar);
    double lo = -sq * (1.0 - 1e-3);
    double hi = sq * (1.0 - 1e-3);
    const auto next = validated_states(cfg, two_k, nf_max + 1, nf_max + 1);
    for (const auto& s : next) {
        if (s.state.E < expected.front())
            lo = 0.5 * (s.state.E + expected.front());
        if (s.state.E > expected.back())
            hi = 0.5 * (s.state.E + expected.back());
    }

    auto shoot = oracle::make_shooting_config(cfg, kbar, lo, hi, nf_max);
    const auto found =
        oracle::find_eigenvalues(cfg, kbar, shoot, static_cast<int>(expected.size()) + 3);
    ladder.found = static_cast<int>(found.size());
    ladder.pass = found.size() == expected.size();
    if (ladder.pass) {
        for (std::size_t i = 0; i < found.size(); ++i) {
            const double de = std::abs(found[i] - expected[i]);
            ladder.worst_de = std::max(ladder.worst_de, de);
            if (de > opt.tol_shoot)
                ladder.pass = false;
        }
    }
    return {checks, ladder};
}

} // namespace detail

/// Residual, normalization, quantization and shooting cross-checks for every
/// validated state of the sweep. Channels run in parallel; the summary is
/// assembled in (k, n_f, sector) order regardless.
inline VerifySummary run_verify(const SweepSpec& spec, const VerifyOptions& opt = {})
{
    auto sorted_k = spec.two_k;
    std::sort(sorted_k.begin(), sorted_k.end());

    std::vector<std::future<std::pair<std::vector<StateCheck>, LadderCheck>>> futs;
    for (int two_k : sorted_k)
        futs.push_back(std::async(std::launch::async, detail::verify_channel, spec.cfg,
                                  two_k, spec.nf_max, opt));

    VerifySummary sum;
    for (auto& f : futs) {
        auto [checks, ladder] = f.get();
        for (const auto& c : checks) {
            sum.worst_quant = std::max(sum.worst_quant, c.quant_resid);
            sum.worst_resid = std::max(sum.worst_resid, c.ode_resid);
            sum.worst_norm = std::max(sum.worst_norm, c.norm_err);
            sum.ok = sum.ok && c.pass;
            sum.states.push_back(c);
        }
        sum.worst_de = std::max(sum.worst_de, ladder.worst_de);
        sum.ok = sum.ok && ladder.pass;
        sum.ladders.push_back(ladder);
    }
    return sum;
}

// --- serialization -----------------------------------------------------------

namespace detail {

inline std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(const std::optional<double>& v)
{
    return v ? fmt(*v) : std::string{};
}

/// RFC 4180: quote a field when it contains a comma, quote or newline.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace detail

inline nlohmann::json config_json(const PotentialConfig& cfg)
{
    return {{"alpha_sigma", cfg.alpha_sigma},
            {"alpha_delta", cfg.alpha_delta},
            {"a", cfg.a},
            {"bbar", cfg.bbar}};
}

inline std::string spectrum_csv(const std::vector<SpectrumRow>& rows, Symmetry mode)
{
    std::ostringstream os;
    os << "k,nf,sector,E,lambda,gamma,xi,status\n";
    for (const auto& r : rows) {
        os << detail::csv_field(k_label(r.two_k, mode)) << ',' << r.nf << ','
           << (r.sector ? to_string(*r.sector) : "") << ',' << detail::fmt(r.energy) << ','
           << detail::fmt(r.lambda) << ',' << detail::fmt(r.gamma) << ','
           << detail::fmt(r.xi) << ',' << r.status << '\n';
    }
    return os.str();
}

inline nlohmann::json spectrum_json(const SweepSpec& spec, const std::vector<SpectrumRow>& rows)
{
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"k", k_label(r.two_k, spec.mode)},
                         {"nf", r.nf},
                         {"sector", r.sector ? to_string(*r.sector) : ""},
                         {"status", r.status == "ok" ? "ok" : "rejected"},
                         {"reason", r.status == "ok" ? "" : r.status}};
        j["E"] = r.energy ? nlohmann::json(*r.energy) : nlohmann::json();
        j["lambda"] = r.lambda ? nlohmann::json(*r.lambda) : nlohmann::json();
        j["gamma"] = r.gamma ? nlohmann::json(*r.gamma) : nlohmann::json();
        j["xi"] = r.xi ? nlohmann::json(*r.xi) : nlohmann::json();
        jrows.push_back(std::move(j));
    }
    return {{"config", config_json(spec.cfg)},
            {"mode", spec.mode == Symmetry::Circular ? "circular" : "spherical"},
            {"rows", std::move(jrows)}};
}

inline std::string regime_csv(const std::vector<RegimeRow>& rows, Symmetry mode)
{
    std::ostringstream os;
    os << "k,nf,intercept,critical,sectors,boundary,region\n";
    for (const auto& r : rows) {
        os << detail::csv_field(k_label(r.two_k, mode)) << ',' << r.nf << ','
           << detail::fmt(r.intercept) << ',' << detail::fmt(r.critical) << ','
           << to_string(r.sectors) << ',' << (r.boundary ? "true" : "false") << ','
           << r.region << '\n';
    }
    return os.str();
}

inline nlohmann::json regime_json(const SweepSpec& spec, const std::vector<RegimeRow>& rows)
{
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"k", k_label(r.two_k, spec.mode)},
                         {"nf", r.nf},
                         {"sectors", to_string(r.sectors)},
                         {"boundary", r.boundary},
                         {"region", r.region},
                         {"status", "ok"},
                         {"reason", r.region == "forbidden" ? "GammaTooSmall" : ""}};
        j["intercept"] = r.intercept ? nlohmann::json(*r.intercept) : nlohmann::json();
        j["critical"] = r.critical ? nlohmann::json(*r.critical) : nlohmann::json();
        jrows.push_back(std::move(j));
    }
    return {{"config", config_json(spec.cfg)},
            {"mode", spec.mode == Symmetry::Circular ? "circular" : "spherical"},
            {"rows", std::move(jrows)}};
}

inline std::string wavefunction_csv(const std::vector<WavefunctionSample>& rows)
{
    std::ostringstream os;
    os << "rho,rho_tilde,g,f,density\n";
    for (const auto& r : rows)
        os << detail::fmt(r.rho) << ',' << detail::fmt(r.rho_tilde) << ',' << detail::fmt(r.g)
           << ',' << detail::fmt(r.f) << ',' << detail::fmt(r.density) << '\n';
    return os.str();
}

inline nlohmann::json wavefunction_json(const SweepSpec& spec,
                                        const std::vector<WavefunctionSample>& rows)
{
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows)
        jrows.push_back({{"rho", r.rho},
                         {"rho_tilde", r.rho_tilde},
                         {"g", r.g},
                         {"f", r.f},
                         {"density", r.density},
                         {"status", "ok"},
                         {"reason", ""}});
    return {{"config", config_json(spec.cfg)},
            {"mode", spec.mode == Symmetry::Circular ? "circular" : "spherical"},
            {"rows", std::move(jrows)}};
}

} // namespace report
} // namespace dircoul

#endif // DIRCOUL_REPORT_HPP
