#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coalesce/amplitude.hpp"
#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"
#include "coalesce/kinematics.hpp"
#include "coalesce/oracle.hpp"
#include "coalesce/scan.hpp"
#include "coalesce/variational.hpp"

namespace coalesce::cli
{
namespace
{
using Json = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
// Output
//---------------------------------------------------------------------------//

void write_json(std::ostream& os, const Json& j, int indent)
{
    std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type())
    {
        case Json::value_t::object:
        {
            if (j.empty())
            {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items())
            {
                if (!first)
                    os << ",\n";
                first = false;
                os << pad << Json(key).dump() << ": ";
                write_json(os, value, indent + 2);
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array:
        {
            if (j.empty())
            {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                if (i)
                    os << ",\n";
                os << pad;
                write_json(os, j[i], indent + 2);
            }
            os << "\n" << close << "]";
            return;
        }
        case Json::value_t::number_float:
        {
            double x = j.get<double>();
            os << (std::isfinite(x) ? format_number(x) : "null");
            return;
        }
        default:
            os << j.dump();
    }
}

std::string json_text(const Json& j)
{
    std::ostringstream os;
    write_json(os, j, 0);
    os << "\n";
    return os.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-")
    {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw ValidationError("cannot open output file '" + path + "'");
    file << text;
    if (!file)
        throw ValidationError("failed writing output file '" + path + "'");
}

Json optional_number(const std::optional<double>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

Json validity_json(const ValidityReport& r)
{
    auto window = [](const ValidityWindow& w) {
        return Json{{"ratio", w.ratio}, {"threshold", w.threshold}, {"pass", w.pass}};
    };
    return Json{{"xi_squared", window(r.xi_squared)},
                {"dipole_ratio", window(r.dipole_ratio)},
                {"relativity_ratio", window(r.relativity_ratio)},
                {"all_pass", r.all_pass()}};
}

Json kinematics_json(const Kinematics& k)
{
    Json j;
    j["beam_energy_mev_per_u"] = k.beam_energy;
    j["Z"] = k.Z;
    j["Z1"] = optional_number(k.Z1);
    j["epsilon_au"] = k.epsilon;
    j["p_au"] = k.p;
    j["eta_au"] = k.eta;
    j["xi"] = k.xi;
    j["binding_energy_au"] = k.binding_energy;
    j["binding_energy_source"] = k.binding_energy_is_default ? "hydrogenic default I = Z^2"
                                                             : "user supplied";
    j["omega_au"] = k.omega;
    j["k_photon_au"] = k.k_photon;
    return j;
}

Json wavefunction_json(const TrialWavefunction& wf)
{
    return Json::parse(wavefunction_to_json(wf));
}

Json amplitude_json(const AmplitudeBreakdown& a)
{
    Json j;
    j["Z"] = a.Z;
    j["p_au"] = a.p;
    j["ep"] = a.ep;
    j["N2"] = a.N2;
    j["J0"] = a.J0;
    j["J1"] = a.J1;
    j["J1_asymptotic_nominal"] = a.J1_asymptotic_nominal;
    j["J1_asymptotic_slope"] = a.J1_asymptotic_slope;
    j["F0_lin"] = a.F0_lin;
    j["F1N"] = a.F1N;
    j["F1e"] = a.F1e;
    j["Lambda"] = a.Lambda;
    j["F0_full"] = optional_number(a.F0_full);
    j["F0_error"] = optional_number(a.F0_error);
    j["F_total"] = a.F_total;
    j["cancellation_residual"] = a.cancellation_residual;
    j["f0_mode"] = std::string(to_string(a.f0_mode));
    j["quadrature_error"] = a.quadrature_error;
    j["warnings"] = a.warnings;
    return j;
}

Json fit_json(const PowerLawFit& f)
{
    return Json{{"exponent", f.exponent},
                {"exponent_stderr", f.exponent_stderr},
                {"amplitude", f.amplitude},
                {"residual_norm", f.residual_norm},
                {"x", f.x},
                {"y", f.y}};
}

Json oracle_json(const OracleResult& r)
{
    return Json{{"value", r.value},
                {"asymptotic", r.asymptotic},
                {"ratio", r.ratio},
                {"error_estimate", r.error_estimate},
                {"nodes_per_panel", r.nodes_per_panel}};
}

//---------------------------------------------------------------------------//
// Wave function selection
//---------------------------------------------------------------------------//

struct WavefunctionOptions
{
    std::string family{"product-hydrogenic"};
    std::string json_path;
    std::optional<double> b;
    std::optional<double> a;
    std::string basis{"0,0,0;0,0,1;0,2,0"};
    std::optional<double> N2;
    double envelope{default_envelope_radius};
    double q_r_sq{};
    double q_u_sq{};
    double q_log{};
    std::string provenance;
};

void add_wavefunction_options(CLI::App* cmd, WavefunctionOptions& w)
{
    cmd->add_option("--wf", w.family, "product-hydrogenic | hylleraas | local-fock")
        ->check(CLI::IsMember({"product-hydrogenic", "hylleraas", "local-fock"}));
    cmd->add_option("--wf-json", w.json_path, "wave function payload (overrides --wf)");
    cmd->add_option("--b", w.b, "product exponent (default Z)");
    cmd->add_option("--a", w.a, "Hylleraas exponent (default: optimized)");
    cmd->add_option("--basis", w.basis, "Hylleraas terms as l,m,n;l,m,n;...");
    cmd->add_option("--N2", w.N2, "local Fock value at the origin (default Z^3/pi)");
    cmd->add_option("--envelope", w.envelope, "local Fock envelope radius; 0 disables");
    cmd->add_option("--q-r-sq", w.q_r_sq, "local Fock r1^2 and r2^2 coefficient");
    cmd->add_option("--q-u-sq", w.q_u_sq, "local Fock u^2 coefficient");
    cmd->add_option("--q-log", w.q_log, "local Fock R^2 ln R coefficient");
    cmd->add_option("--provenance", w.provenance, "source of the second-order coefficients");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<BasisTerm> parse_basis(const std::string& text)
{
    std::vector<BasisTerm> terms;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';'))
    {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::stringstream one(item);
        BasisTerm t;
        char c1 = 0, c2 = 0;
        if (!(one >> t.l >> c1 >> t.m >> c2 >> t.n) || c1 != ',' || c2 != ',' || !(one >> std::ws).eof())
            throw ValidationError("basis term '" + item + "' is not l,m,n");
        validate_basis_term(t);
        terms.push_back(t);
    }
    if (terms.empty())
        throw ValidationError("basis is empty");
    return terms;
}

TrialWavefunction build_wavefunction(const WavefunctionOptions& w, double Z)
{
    if (!w.json_path.empty())
        return wavefunction_from_json(read_file(w.json_path));
    TrialWavefunction wf;
    if (w.family == "product-hydrogenic")
    {
        wf = ProductHydrogenic{w.b.value_or(Z)};
    }
    else if (w.family == "hylleraas")
    {
        auto basis = parse_basis(w.basis);
        if (w.a)
            wf = solve_variational(basis, *w.a, Z).wavefunction();
        else
            wf = optimize_exponent(basis, Z, 0.5 * Z, 1.5 * Z).wavefunction();
    }
    else
    {
        auto f = LocalFockForm::with_defaults(Z, w.N2.value_or(Z * Z * Z / constants::pi));
        if (w.envelope > 0)
            f.envelope_radius = w.envelope;
        else
            f.envelope_radius.reset();
        f.second_order.r1_sq = f.second_order.r2_sq = w.q_r_sq;
        f.second_order.u_sq = w.q_u_sq;
        f.second_order.R2_log_R = w.q_log;
        f.second_order.provenance = w.provenance;
        wf = f;
    }
    validate(wf);
    return wf;
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//

struct Common
{
    std::string out_path;
};

std::vector<double> default_radii()
{
    return {0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0};
}

std::string run_cusp_check(double Z,
                           const WavefunctionOptions& wopt,
                           const std::string& radii_text,
                           const LocalEnergySampling& sampling,
                           bool include_ee)
{
    auto wf = build_wavefunction(wopt, Z);
    auto radii = radii_text.empty() ? default_radii() : parse_range(radii_text);
    auto report = cusp_report(wf, Z, radii);

    Json samples = Json::array();
    for (const auto& s : report.samples)
        samples.push_back({{"r", s.r},
                           {"en_ratio", optional_number(s.en_ratio)},
                           {"ee_ratio", optional_number(s.ee_ratio)}});

    auto scan = local_energy_scan(wf, Z, include_ee, sampling);
    auto line_json = [](const LineScan& line) {
        Json rays = Json::array();
        for (const auto& r : line.rays)
            rays.push_back({{"r", r.r},
                            {"angle", r.angle},
                            {"coefficient", r.coefficient},
                            {"expected_coefficient", r.expected_coefficient},
                            {"constant", r.constant},
                            {"divergence_exponent", optional_number(r.divergence_exponent)},
                            {"samples", r.samples},
                            {"skipped", r.skipped}});
        return Json{{"mean_coefficient", line.mean_coefficient},
                    {"max_coefficient_error", line.max_coefficient_error},
                    {"rays", rays}};
    };

    Json j;
    j["wavefunction"] = wavefunction_json(wf);
    j["Z"] = Z;
    j["cusp"] = {{"en_target", report.en_target},
                 {"ee_target", report.ee_target},
                 {"max_en_deviation", report.max_en_deviation},
                 {"max_ee_deviation", report.max_ee_deviation},
                 {"flagged_radii", report.flagged_radii},
                 {"samples", samples}};
    j["local_energy"] = {{"include_ee", include_ee},
                         {"seed", sampling.seed},
                         {"rays_per_line", sampling.rays_per_line},
                         {"nucleus_line", line_json(scan.nucleus)},
                         {"electron_line", line_json(scan.electron)},
                         {"skipped", scan.skipped}};
    return json_text(j);
}

std::string run_solve(double Z,
                      const std::string& basis_text,
                      std::optional<double> a,
                      const std::string& bracket_text,
                      std::ostream& err)
{
    auto basis = parse_basis(basis_text);
    VariationalResult r;
    if (a)
    {
        r = solve_variational(basis, *a, Z);
    }
    else
    {
        double lo = 0.5 * Z, hi = 1.5 * Z;
        if (!bracket_text.empty())
        {
            auto br = parse_range(bracket_text);
            if (br.size() != 2)
                throw ValidationError("--bracket needs lo,hi");
            lo = br[0];
            hi = br[1];
        }
        r = optimize_exponent(basis, Z, lo, hi);
    }
    if (r.warning)
        err << "warning: " << *r.warning << "\n";

    Json terms = Json::array();
    for (const auto& t : r.terms)
        terms.push_back({{"l", t.l}, {"m", t.m}, {"n", t.n}, {"c", t.coefficient}});
    Json j;
    j["Z"] = Z;
    j["a"] = r.a;
    j["energy"] = r.energy;
    j["bisection_energy"] = r.bisection_energy;
    j["N2"] = r.N2;
    j["condition_number"] = r.condition_number;
    j["warning"] = r.warning ? Json(*r.warning) : Json(nullptr);
    j["terms"] = terms;
    j["wavefunction"] = wavefunction_json(r.wavefunction());
    return json_text(j);
}

Kinematics pick_kinematics(double Z,
                           std::optional<double> p,
                           std::optional<double> beam_energy,
                           std::optional<double> I)
{
    if (p && beam_energy)
        throw ValidationError("give either --p or --beam-energy, not both");
    if (beam_energy)
        return build_kinematics(*beam_energy, Z, I);
    if (p)
        return kinematics_from_momentum(*p, Z, I);
    throw ValidationError("one of --p or --beam-energy is required");
}

std::string run_amplitude(double Z,
                          const WavefunctionOptions& wopt,
                          const Kinematics& kin,
                          const PhotonCoupling& coupling,
                          F0Mode mode,
                          std::ostream& err)
{
    auto wf = build_wavefunction(wopt, Z);
    auto a = total_amplitude(wf, kin, coupling, mode);
    for (const auto& w : a.warnings)
        err << "warning: " << w << "\n";
    Json j;
    j["wavefunction"] = wavefunction_json(wf);
    j["kinematics"] = kinematics_json(kin);
    j["validity"] = validity_json(validity(kin));
    j["coupling"] = {{"ep", coupling.ep}, {"dipole", coupling.dipole}};
    j["amplitude"] = amplitude_json(a);
    return json_text(j);
}

std::string run_cancel(double Z, const WavefunctionOptions& wopt, double p)
{
    auto wf = build_wavefunction(wopt, Z);
    auto j = contact_fourier(wf, p);
    Json out;
    out["residual"] = cancellation_residual(j, Z);
    out["J0"] = j.J0;
    out["J1"] = j.J1;
    out["Z"] = Z;
    out["p_au"] = p;
    out["quadrature_error"] = j.error_estimate;
    return json_text(out);
}

std::string scan_csv(const ScanResult& r)
{
    std::string s = "Z,p_au,xi,J0,J1,F0lin,F1N,F1e,Lambda,F_total,residual\n";
    for (const auto& row : r.rows)
    {
        const auto& a = row.amplitude;
        for (double v : {row.Z, row.p, row.xi, a.J0, a.J1, a.F0_lin, a.F1N, a.F1e, a.Lambda,
                         a.F_total})
        {
            s += format_number(v);
            s += ',';
        }
        s += format_number(a.cancellation_residual);
        s += '\n';
    }
    return s;
}

std::string fit_path_for(const std::string& csv_path)
{
    const std::string ext = ".csv";
    if (csv_path.size() > ext.size()
        && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
        return csv_path.substr(0, csv_path.size() - ext.size()) + ".fit.json";
    return csv_path + ".fit.json";
}

Json scan_fit_json(const ScanResult& r,
                   WavefunctionFamily family,
                   const ScanOptions& options,
                   const ScanGrid& grid)
{
    Json fits = Json::array();
    for (const auto& f : r.fits)
    {
        Json one{{"quantity", f.quantity}, {"variable", f.variable}};
        one[f.variable == "Z" ? "fixed_p" : "fixed_Z"] = f.fixed_value;
        one.update(fit_json(f.fit));
        fits.push_back(one);
    }
    Json j;
    j["family"] = std::string(to_string(family));
    j["f0_mode"] = options.f0_mode ? Json(std::string(to_string(*options.f0_mode))) : Json("auto");
    j["ep"] = options.coupling.ep;
    j["grid"] = {{"Z", grid.Z}, {"p", grid.p}};
    j["fits"] = fits;
    return j;
}

std::string run_oracle(const std::string& kind, double b, double Z, double p, double ep, int nodes)
{
    Json j;
    j["kind"] = kind;
    j["grid"] = {{"nodes_per_panel", nodes}};
    if (kind == "ft")
    {
        j["b"] = b;
        j["p_au"] = p;
        j["value"] = ft_exponential(b, p);
    }
    else if (kind == "f1n")
    {
        j["b"] = b;
        j["Z"] = Z;
        j["p_au"] = p;
        j["ep"] = ep;
        j["result"] = oracle_json(f1n_bruteforce(b, Z, p, ep, nodes));
    }
    else if (kind == "f1e")
    {
        j["b"] = b;
        j["p_au"] = p;
        j["ep"] = ep;
        j["result"] = oracle_json(f1e_bruteforce(b, p, ep, nodes));
        j["reference"] = "-4 Lambda";
    }
    else if (kind == "f1e-exponent")
    {
        auto res = resolve_f1e_exponent(b);
        Json candidates;
        for (const auto& c : res.candidates)
            candidates[c.name] = c.exponent;
        j["b"] = b;
        j["fit"] = fit_json(res.fit);
        j["fitted_exponent"] = res.fit.exponent;
        j["nearest_integer"] = res.nearest_integer;
        j["integer_within_tolerance"] = res.integer_within_tolerance;
        j["inconclusive"] = res.inconclusive;
        j["candidates"] = candidates;
        j["matching_candidate"] = res.matching_candidate;
        j["inconsistency"] =
            "the single-term estimate of F1e falls as p^-7 while the Lambda structure of the "
            "total amplitude falls as p^-8; the fitted exponent is taken as ground truth";
        j["ratio_to_minus_4_lambda"] = res.ratio_to_reference;
        std::vector<double> charges{1, 2, 3, 4, 5};
        j["charge_scaling"] = fit_json(f1e_charge_scaling(charges, 1000.0));
    }
    else
    {
        throw ValidationError("unknown oracle kind '" + kind + "'");
    }
    return json_text(j);
}

std::string run_convert_units(double beam_energy, double Z, std::optional<double> I, std::optional<double> Z1)
{
    auto kin = build_kinematics(beam_energy, Z, I, Z1);
    Json j = kinematics_json(kin);
    j["validity"] = validity_json(validity(kin));
    return json_text(j);
}

//! Move "--config PATH" out of args and splice the file's entries in
//! right after the subcommand name so explicit flags still win.
std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        const auto& a = args[i];
        std::string path;
        if (a == "--config")
        {
            if (i + 1 >= args.size())
                throw ValidationError("--config needs a path");
            path = args[++i];
        }
        else if (a.rfind("--config=", 0) == 0)
        {
            path = a.substr(9);
        }
        else
        {
            rest.push_back(a);
            continue;
        }
        auto entries = parse_config(read_file(path));
        from_file.insert(from_file.end(), entries.begin(), entries.end());
    }
    if (from_file.empty())
        return rest;
    if (rest.empty())
        throw ValidationError("a subcommand is required before config entries apply");
    std::vector<std::string> out{rest.front()};
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"High-energy radiative double capture amplitudes from correlated two-electron "
                 "wave functions"};
    app.name("coalesce");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    app.add_option("--config", "flat key=value file applied to the subcommand");

    Common common;
    double Z = 2.0;
    WavefunctionOptions wopt;
    std::optional<double> p;
    std::optional<double> beam_energy;
    std::optional<double> I;
    std::optional<double> Z1;
    PhotonCoupling coupling;
    std::string f0_mode = "none";

    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", common.out_path, "output file (default stdout)");
    };
    auto add_charge = [&](CLI::App* cmd) {
        cmd->add_option("--Z", Z, "nuclear charge")->check(CLI::PositiveNumber);
    };

    // cusp-check
    auto* cusp = app.add_subcommand("cusp-check", "Cusp ratios and local-energy divergence");
    std::string radii;
    LocalEnergySampling sampling;
    bool no_ee = false;
    add_charge(cusp);
    add_wavefunction_options(cusp, wopt);
    cusp->add_option("--radii", radii, "cusp sample radii (grid syntax)");
    cusp->add_option("--seed", sampling.seed, "seed for ray placement");
    cusp->add_option("--rays", sampling.rays_per_line, "rays per coalescence line");
    cusp->add_flag("--no-ee", no_ee, "drop the electron-electron repulsion");
    add_out(cusp);

    // solve
    auto* solve = app.add_subcommand("solve", "Rayleigh-Ritz ground state in a Hylleraas basis");
    std::string basis = "0,0,0;0,0,1;0,2,0";
    std::optional<double> a;
    std::string bracket;
    add_charge(solve);
    solve->add_option("--basis", basis, "terms as l,m,n;l,m,n;...");
    solve->add_option("--a", a, "fixed exponent (skip optimization)");
    solve->add_option("--bracket", bracket, "exponent search bracket lo,hi");
    add_out(solve);

    // amplitude
    auto* amp = app.add_subcommand("amplitude", "Amplitude breakdown at one kinematic point");
    add_charge(amp);
    add_wavefunction_options(amp, wopt);
    amp->add_option("--p", p, "electron momentum (a.u.)");
    amp->add_option("--beam-energy", beam_energy, "beam energy (MeV/u)");
    amp->add_option("--I", I, "two-electron binding energy (a.u.)");
    amp->add_option("--ep", coupling.ep, "polarization contraction e.p");
    amp->add_option("--f0-mode", f0_mode, "none | bruteforce | closed-form | fock-series");
    add_out(amp);

    // cancel
    auto* cancel = app.add_subcommand("cancel", "Cusp cancellation residual of the contact integrals");
    double cancel_p = 10.0;
    add_charge(cancel);
    add_wavefunction_options(cancel, wopt);
    cancel->add_option("--p", cancel_p, "electron momentum (a.u.)")->check(CLI::PositiveNumber);
    add_out(cancel);

    // scan
    auto* scan = app.add_subcommand("scan", "Amplitude table over a (Z, p) grid with power-law fits");
    std::string z_grid = "10:40:5";
    std::string p_grid = "1000:10000:log8";
    std::string family = "product-hydrogenic";
    std::string scan_mode = "auto";
    unsigned threads = 0;
    ScanOptions scan_options;
    scan->add_option("--Z", z_grid, "charges (grid syntax)");
    scan->add_option("--p", p_grid, "momenta (grid syntax)");
    scan->add_option("--wf", family, "product-hydrogenic | hylleraas | local-fock")
        ->check(CLI::IsMember({"product-hydrogenic", "hylleraas", "local-fock"}));
    scan->add_option("--ep", scan_options.coupling.ep, "polarization contraction e.p");
    scan->add_option("--f0-mode", scan_mode, "auto | none | bruteforce | closed-form | fock-series");
    scan->add_option("--threads", threads, "worker count (default COALESCE_THREADS)");
    add_out(scan);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force references for product states");
    std::string kind = "f1e-exponent";
    double ob = 2.0;
    double op = 200.0;
    double oep = 1.0;
    int nodes = 16;
    oracle->add_option("--kind", kind, "ft | f1n | f1e | f1e-exponent");
    oracle->add_option("--b", ob, "product exponent")->check(CLI::PositiveNumber);
    oracle->add_option("--Z", Z, "nuclear charge")->check(CLI::PositiveNumber);
    oracle->add_option("--p", op, "electron momentum (a.u.)")->check(CLI::PositiveNumber);
    oracle->add_option("--ep", oep, "polarization contraction e.p");
    oracle->add_option("--nodes", nodes, "Gauss-Legendre nodes per panel")->check(CLI::Range(6, 64));
    add_out(oracle);

    // convert-units
    auto* convert = app.add_subcommand("convert-units", "Beam energy to electron-frame quantities");
    double convert_energy = 1.0;
    convert->add_option("--beam-energy", convert_energy, "beam energy (MeV/u)")->required();
    add_charge(convert);
    convert->add_option("--I", I, "two-electron binding energy (a.u.)");
    convert->add_option("--Z1", Z1, "projectile-atom charge");
    add_out(convert);

    try
    {
        auto args = expand_config(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        std::string text;
        if (cusp->parsed())
        {
            text = run_cusp_check(Z, wopt, radii, sampling, !no_ee);
        }
        else if (solve->parsed())
        {
            text = run_solve(Z, basis, a, bracket, err);
        }
        else if (amp->parsed())
        {
            auto kin = pick_kinematics(Z, p, beam_energy, I);
            text = run_amplitude(Z, wopt, kin, coupling, f0_mode_from_string(f0_mode), err);
        }
        else if (cancel->parsed())
        {
            text = run_cancel(Z, wopt, cancel_p);
        }
        else if (scan->parsed())
        {
            ScanGrid grid{parse_range(z_grid), parse_range(p_grid)};
            if (scan_mode != "auto")
                scan_options.f0_mode = f0_mode_from_string(scan_mode);
            scan_options.threads = threads;
            auto fam = family_from_string(family);
            auto result = parameter_scan(grid, fam, scan_options);
            // validate the fit file before writing anything
            auto fit_text = json_text(scan_fit_json(result, fam, scan_options, grid));
            emit(scan_csv(result), common.out_path, out);
            if (!common.out_path.empty() && common.out_path != "-")
                emit(fit_text, fit_path_for(common.out_path), out);
            return success;
        }
        else if (oracle->parsed())
        {
            text = run_oracle(kind, ob, Z, op, oep, nodes);
        }
        else if (convert->parsed())
        {
            text = run_convert_units(convert_energy, Z, I, Z1);
        }
        emit(text, common.out_path, out);
        return success;
    }
    catch (const CLI::ParseError& e)
    {
        // help requests exit 0 through the same path
        int code = app.exit(e, out, err);
        return code == 0 ? success : validation_error;
    }
    catch (const ValidationError& e)
    {
        err << "error: " << e.what() << "\n";
        return validation_error;
    }
    catch (const NumericalError& e)
    {
        err << "numerical error: " << e.what() << " (estimate " << format_number(e.estimate())
            << ")\n";
        return numerical_error;
    }
    catch (const std::exception& e)
    {
        err << "unexpected error: " << e.what() << "\n";
        return unexpected;
    }
}

}  // namespace coalesce::cli
