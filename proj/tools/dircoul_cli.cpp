// Command-line front-end: spectrum tables, regime reports, wavefunction
// sampling and verification sweeps for the generalized Coulomb problem.
//
// Exit codes: 0 success, 2 parse/config error, 3 verification failure,
// 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dircoul/dircoul.hpp"
#include "dircoul/report.hpp"

namespace {

using namespace dircoul;

struct Options {
    double alpha_sigma = 0.0;
    double alpha_delta = 0.0;
    double tensor_a = 0.0;
    double tensor_b = 0.0;
    double mass = 1.0;
    std::string mode = "circular";
    std::vector<std::string> k_list;
    std::vector<int> two_k_list;
    int nf_max = 5;
    std::string format = "csv";
    std::string out;
    std::string preset;
    // wavefunction
    int nf = 0;
    std::string sector = "particle";
    std::string grid;
    // verify
    double corrupt_energy = 0.0;
    bool no_shooting = false;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int parse_fraction_k(const std::string& s)
{
    // circular mode: "3/2", "-1/2", ... with an odd numerator
    const auto slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash + 1) != "2")
        throw ConfigError("circular-mode k must be an odd half-integer like 3/2 (got '" + s + "')");
    int num = 0;
    try {
        std::size_t used = 0;
        num = std::stoi(s.substr(0, slash), &used);
        if (used != slash)
            throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse k value '" + s + "'");
    }
    if (num % 2 == 0)
        throw ConfigError("circular-mode k must have an odd numerator (got '" + s + "')");
    return num;
}

report::SweepSpec build_spec(Options& opt, const CLI::App& sub)
{
    report::SweepSpec spec;
    if (!opt.preset.empty()) {
        if (opt.preset == "fig3a") {
            spec.cfg = PotentialConfig{0.6, 0.8, 0.0, 0.2};
        } else if (opt.preset == "fig3b") {
            spec.cfg = PotentialConfig{0.1, -0.8, 0.0, -0.2};
        } else {
            throw ConfigError("unknown preset '" + opt.preset + "' (fig3a|fig3b)");
        }
        if (sub.count("--nf-max") == 0)
            opt.nf_max = 8;
        if (opt.k_list.empty() && opt.two_k_list.empty())
            for (int n : {1, 3, 5, 7, 9}) {
                opt.two_k_list.push_back(n);
                opt.two_k_list.push_back(-n);
            }
    }
    if (sub.count("--alpha-sigma")) spec.cfg.alpha_sigma = opt.alpha_sigma;
    if (sub.count("--alpha-delta")) spec.cfg.alpha_delta = opt.alpha_delta;
    if (sub.count("--tensor-a")) spec.cfg.a = opt.tensor_a;
    if (sub.count("--tensor-b")) spec.cfg.bbar = opt.tensor_b;

    if (opt.mode == "circular") {
        spec.mode = report::Symmetry::Circular;
    } else if (opt.mode == "spherical") {
        spec.mode = report::Symmetry::Spherical;
    } else {
        throw ConfigError("mode must be circular or spherical");
    }

    for (const auto& s : opt.k_list) {
        if (spec.mode == report::Symmetry::Circular) {
            spec.two_k.push_back(parse_fraction_k(s));
        } else {
            int ks = 0;
            try {
                std::size_t used = 0;
                ks = std::stoi(s, &used);
                if (used != s.size())
                    throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw ConfigError("spherical-mode k must be a nonzero integer (got '" + s + "')");
            }
            spec.two_k.push_back(spherical_quantum_numbers(0, ks, 1).two_k);
        }
    }
    for (int tk : opt.two_k_list) {
        if (spec.mode == report::Symmetry::Circular) {
            if (tk % 2 == 0)
                throw ConfigError("circular-mode --two-k must be odd (got " + std::to_string(tk) + ")");
            spec.two_k.push_back(tk);
        } else {
            if (tk % 2 != 0 || tk == 0)
                throw ConfigError("spherical-mode --two-k must be a nonzero even 2*k_s (got " +
                                  std::to_string(tk) + ")");
            spec.two_k.push_back(spherical_quantum_numbers(0, tk / 2, 1).two_k);
        }
    }
    if (spec.two_k.empty())
        throw ConfigError("no spin-orbit quantum numbers given (use --k, --two-k or --preset)");
    if (opt.nf_max < 0)
        throw ConfigError("--nf-max must be >= 0");
    spec.nf_max = opt.nf_max;
    if (opt.format != "csv" && opt.format != "json")
        throw ConfigError("format must be csv or json");
    return spec;
}

int emit(const Options& opt, const std::string& text)
{
    if (opt.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(opt.out);
    if (!os) {
        std::cerr << "error: cannot open output file '" << opt.out << "'\n";
        return 4;
    }
    os << text;
    if (!os.good()) {
        std::cerr << "error: write to '" << opt.out << "' failed\n";
        return 4;
    }
    return 0;
}

void add_common(CLI::App* sub, Options& opt)
{
    sub->add_option("--alpha-sigma", opt.alpha_sigma, "strength of V_Sigma = alpha/rho");
    sub->add_option("--alpha-delta", opt.alpha_delta, "strength of V_Delta = alpha/rho");
    sub->add_option("--tensor-a", opt.tensor_a, "Coulomb part of the tensor potential U = a/rho + b");
    sub->add_option("--tensor-b", opt.tensor_b, "constant tensor term b/m (dimensionless)");
    sub->add_option("--mode", opt.mode, "circular|spherical (spherical maps k -> -k_s)");
    sub->add_option("--k", opt.k_list,
                    "spin-orbit numbers: odd half-integers like 3/2 (circular) or nonzero "
                    "integers k_s (spherical)")
        ->delimiter(',');
    sub->add_option("--two-k", opt.two_k_list,
                    "doubled spin-orbit numbers (odd in circular mode, even 2*k_s in spherical)")
        ->delimiter(',');
    sub->add_option("--nf-max", opt.nf_max, "largest principal quantum number n_f");
    sub->add_option("--format", opt.format, "csv|json");
    sub->add_option("--out", opt.out, "output file (default: stdout)");
    sub->add_option("--preset", opt.preset, "fig3a|fig3b parameter presets");
    sub->add_option("--mass", opt.mass, "fermion mass for display units (internally m = 1)");
}

void scale_for_display(std::vector<report::SpectrumRow>& rows, double mass)
{
    if (mass == 1.0)
        return;
    for (auto& r : rows) {
        if (r.energy) *r.energy *= mass;
        if (r.lambda) *r.lambda *= mass;
    }
}

int run_spectrum(Options& opt, const CLI::App& sub)
{
    auto spec = build_spec(opt, sub);
    auto rows = report::spectrum_rows(spec);
    scale_for_display(rows, opt.mass);
    if (opt.format == "csv")
        return emit(opt, report::spectrum_csv(rows, spec.mode));
    return emit(opt, report::spectrum_json(spec, rows).dump(2) + "\n");
}

int run_regime(Options& opt, const CLI::App& sub)
{
    auto spec = build_spec(opt, sub);
    auto rows = report::regime_rows(spec);
    if (opt.format == "csv")
        return emit(opt, report::regime_csv(rows, spec.mode));
    return emit(opt, report::regime_json(spec, rows).dump(2) + "\n");
}

int run_wavefunction(Options& opt, const CLI::App& sub)
{
    auto spec = build_spec(opt, sub);
    if (spec.two_k.size() != 1)
        throw ConfigError("wavefunction expects exactly one --k / --two-k value");
    Sector sector;
    if (opt.sector == "particle") {
        sector = Sector::Particle;
    } else if (opt.sector == "antiparticle") {
        sector = Sector::Antiparticle;
    } else {
        throw ConfigError("--sector must be particle or antiparticle");
    }
    const auto q = report::make_numbers(spec.two_k.front(), opt.nf);
    const auto built = build_bound_state(spec.cfg, q, sector);
    if (!built) {
        std::cerr << "state rejected: " << to_string(built.reason()) << "\n";
        return 2;
    }
    const auto& state = built.value();

    double lo = 0.0;
    double hi = 40.0 * (q.nf + state.state.gamma) / (2.0 * state.state.lambda);
    int count = 201;
    if (!opt.grid.empty()) {
        double a = 0, b = 0;
        int n = 0;
        if (std::sscanf(opt.grid.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 2 || b <= a)
            throw ConfigError("--grid expects min:max:count with max > min, count >= 2");
        lo = a;
        hi = b;
        count = n;
    }
    auto rows = report::sample_wavefunction(state, lo, hi, count);
    if (opt.mass != 1.0)
        for (auto& r : rows)
            r.rho /= opt.mass;
    if (opt.format == "csv")
        return emit(opt, report::wavefunction_csv(rows));
    return emit(opt, report::wavefunction_json(spec, rows).dump(2) + "\n");
}

int run_verify(Options& opt, const CLI::App& sub)
{
    auto spec = build_spec(opt, sub);
    report::VerifyOptions vopt;
    vopt.corrupt_energy = opt.corrupt_energy;
    vopt.shooting = !opt.no_shooting;
    const auto sum = report::run_verify(spec, vopt);

    std::ostringstream os;
    if (opt.format == "json") {
        nlohmann::json jstates = nlohmann::json::array();
        for (const auto& c : sum.states)
            jstates.push_back({{"k", report::k_label(c.two_k, spec.mode)},
                               {"nf", c.nf},
                               {"sector", to_string(c.sector)},
                               {"E", c.energy},
                               {"quantization_residual", c.quant_resid},
                               {"ode_residual", c.ode_resid},
                               {"normalization_error", c.norm_err},
                               {"pass", c.pass}});
        nlohmann::json jladders = nlohmann::json::array();
        for (const auto& l : sum.ladders)
            jladders.push_back({{"k", report::k_label(l.two_k, spec.mode)},
                                {"expected", l.expected},
                                {"found", l.found},
                                {"worst_delta_e", l.worst_de},
                                {"pass", l.pass}});
        nlohmann::json j{{"config", report::config_json(spec.cfg)},
                         {"states", std::move(jstates)},
                         {"ladders", std::move(jladders)},
                         {"worst_quantization_residual", sum.worst_quant},
                         {"worst_ode_residual", sum.worst_resid},
                         {"worst_normalization_error", sum.worst_norm},
                         {"worst_shooting_delta_e", sum.worst_de},
                         {"ok", sum.ok}};
        os << j.dump(2) << "\n";
    } else {
        if (sum.states.empty())
            os << "no states: nothing bound in the requested sweep\n";
        for (const auto& c : sum.states) {
            char line[256];
            std::snprintf(line, sizeof line,
                          "%-6s nf=%-3d %-12s E=%+.12f quant=%.2e ode=%.2e norm=%.2e %s\n",
                          report::k_label(c.two_k, spec.mode).c_str(), c.nf,
                          to_string(c.sector), c.energy, c.quant_resid, c.ode_resid,
                          c.norm_err, c.pass ? "ok" : "FAIL");
            os << line;
        }
        for (const auto& l : sum.ladders) {
            char line[256];
            std::snprintf(line, sizeof line,
                          "shooting %-6s expected=%d found=%d worst |dE|=%.2e %s\n",
                          report::k_label(l.two_k, spec.mode).c_str(), l.expected, l.found,
                          l.worst_de, l.pass ? "ok" : "FAIL");
            os << line;
        }
        char tail[256];
        std::snprintf(tail, sizeof tail,
                      "worst: quantization=%.2e ode=%.2e normalization=%.2e shooting=%.2e -> %s\n",
                      sum.worst_quant, sum.worst_resid, sum.worst_norm, sum.worst_de,
                      sum.ok ? "PASS" : "FAIL");
        os << tail;
    }
    const int io = emit(opt, os.str());
    if (io != 0)
        return io;
    return sum.ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bound states of a spin-1/2 fermion in generalized Coulomb potentials "
                 "(scalar, vector and tensor-plus-constant, circular or spherical symmetry)"};
    app.require_subcommand(1);

    Options opt;
    auto* spectrum = app.add_subcommand("spectrum", "closed-form energy table over (k, n_f)");
    add_common(spectrum, opt);
    auto* regime = app.add_subcommand("regime", "binding-regime report (intercept, sectors)");
    add_common(regime, opt);
    auto* wavefunction = app.add_subcommand("wavefunction", "sample normalized radial functions");
    add_common(wavefunction, opt);
    wavefunction->add_option("--nf", opt.nf, "principal quantum number of the state");
    wavefunction->add_option("--sector", opt.sector, "particle|antiparticle");
    wavefunction->add_option("--grid", opt.grid, "sampling grid min:max:count in m*rho units");
    auto* verify = app.add_subcommand("verify", "residual/normalization/shooting cross-checks");
    add_common(verify, opt);
    verify->add_option("--corrupt-energy", opt.corrupt_energy,
                       "testing hook: shift every energy before checking");
    verify->add_flag("--no-shooting", opt.no_shooting, "skip the shooting cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed())
            return run_spectrum(opt, *spectrum);
        if (regime->parsed())
            return run_regime(opt, *regime);
        if (wavefunction->parsed())
            return run_wavefunction(opt, *wavefunction);
        if (verify->parsed())
            return run_verify(opt, *verify);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
