#include "coalesce/amplitude.hpp"

#include <algorithm>
#include <cmath>

#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"
#include "coalesce/oscillatory.hpp"

namespace coalesce
{
namespace
{
using constants::pi;

double relative(double err, double value)
{
    return value != 0.0 ? err / std::abs(value) : err;
}

double sinc(double x)
{
    return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

}  // namespace

ContactIntegrals contact_fourier(const TrialWavefunction& wf, double p)
{
    if (!(p > 0) || !std::isfinite(p))
        throw ValidationError("momentum must be positive and finite");
    ContactProfile profile(wf);
    double kappa = profile.decay_rate();
    if (!(kappa > 0))
        throw ValidationError("contact profile does not decay; Fourier integrals diverge");

    auto phi = sine_transform_contour([&](std::complex<double> r) { return profile.phi(r); },
                                      p, kappa);
    auto dr2 = sine_transform_contour(
        [&](std::complex<double> r) { return profile.dphi_dr2(r); }, p, kappa);

    ContactIntegrals out;
    out.J1 = 4.0 * pi / p * phi.value;
    out.J0 = 4.0 * pi / p * dr2.value;
    out.error_estimate = std::max(relative(phi.error_estimate, phi.value),
                                  relative(dr2.error_estimate, dr2.value));
    return out;
}

std::string_view to_string(F0Mode mode)
{
    switch (mode)
    {
        case F0Mode::none: return "none";
        case F0Mode::bruteforce: return "bruteforce";
        case F0Mode::closed_form: return "closed-form";
        case F0Mode::fock_series: return "fock-series";
    }
    return "none";
}

F0Mode f0_mode_from_string(std::string_view name)
{
    for (auto m : {F0Mode::none, F0Mode::bruteforce, F0Mode::closed_form, F0Mode::fock_series})
        if (to_string(m) == name)
            return m;
    throw ValidationError("unknown F0 mode '" + std::string(name)
                          + "' (none, bruteforce, closed-form, fock-series)");
}

double cancellation_residual(const ContactIntegrals& j, double Z)
{
    double denom = std::abs(j.J0) + Z * std::abs(j.J1);
    return denom > 0 ? std::abs(j.J0 + Z * j.J1) / denom : 0.0;
}

double cancellation_residual(const TrialWavefunction& wf, double Z, double p)
{
    if (!(Z > 0))
        throw ValidationError("nuclear charge must be positive");
    return cancellation_residual(contact_fourier(wf, p), Z);
}

AmplitudeBreakdown component_amplitudes(const TrialWavefunction& wf,
                                        const Kinematics& kin,
                                        const PhotonCoupling& coupling)
{
    const double Z = kin.Z;
    const double p = kin.p;
    const double ep = coupling.ep;
    if (!(Z > 0))
        throw ValidationError("nuclear charge must be positive");
    if (!std::isfinite(ep))
        throw ValidationError("photon coupling must be finite");

    auto j = contact_fourier(wf, p);
    ContactProfile profile(wf);

    AmplitudeBreakdown out;
    out.Z = Z;
    out.p = p;
    out.ep = ep;
    out.N2 = n_squared(wf);
    out.J0 = j.J0;
    out.J1 = j.J1;
    double p4 = std::pow(p, 4);
    out.J1_asymptotic_nominal = 8.0 * pi * Z * out.N2 / p4;
    out.J1_asymptotic_slope = 8.0 * pi * profile.origin_slope() / p4;
    out.F0_lin = -16.0 * pi * ep * j.J0 / p4;
    out.F1N = -16.0 * pi * Z * ep * j.J1 / p4;
    out.Lambda = 4.0 * pi * pi * Z * out.N2 * ep / (p4 * p4);
    out.F1e = -4.0 * out.Lambda;
    out.F_total = out.F0_lin + out.F1N + out.F1e;
    out.cancellation_residual = cancellation_residual(j, Z);
    out.quadrature_error = j.error_estimate;
    return out;
}

F0Result f0_bruteforce(const TrialWavefunction& wf,
                       double p,
                       double ep,
                       bool force_quadrature,
                       const F0Grid& grid)
{
    if (!(p > 0))
        throw ValidationError("momentum must be positive");
    validate(wf);
    if (const auto* w = std::get_if<ProductHydrogenic>(&wf); w && !force_quadrature)
    {
        double t = 8.0 * pi * w->b / std::pow(w->b * w->b + p * p, 2);
        return {2.0 * ep * w->b * w->b * w->b / pi * t * t, 0.0, "closed-form"};
    }

    double kappa = decay_rate(wf);
    if (!(kappa > 0))
        throw ValidationError("wave function is not square-integrable");
    if (ep == 0.0)
        return {0.0, 0.0, "quadrature"};

    TrialWavefunction normed = normalized(wf);
    auto run = [&](int nodes) {
        quadrature::ConfigurationGrid g;
        g.r_max = grid.range_in_decay_lengths / kappa;
        g.radial_width = std::min(grid.max_panel / kappa, pi / p);
        g.u_width = g.radial_width;
        g.nodes_per_panel = nodes;
        return quadrature::integrate_symmetric_configuration(
            [&](double r1, double r2, double u) {
                double q2 = std::max(0.0, 2.0 * r1 * r1 + 2.0 * r2 * r2 - u * u);
                return detail::evaluate_unchecked(normed, r1, r2, u) * sinc(p * std::sqrt(q2));
            },
            g);
    };
    double fine = 2.0 * ep * run(grid.nodes_per_panel);
    double coarse = 2.0 * ep * run(grid.nodes_per_panel - 2);
    F0Result out{fine, std::abs(fine - coarse), "quadrature"};
    if (out.error_estimate > 1e-2 * std::abs(fine))
        throw NumericalError("F0 quadrature missed its 1% target", fine);
    return out;
}

double f0_fock_series(const FockExpansion& f, double p, double ep)
{
    if (!(p > 0))
        throw ValidationError("momentum must be positive");
    double sum = 64.0 * pi * pi * f.q_r1r2 + 8.0 * pi * pi * f.q_ru + 48.0 * pi * pi * pi * f.q_log;
    return 2.0 * ep * sum / std::pow(p, 8);
}

AmplitudeBreakdown total_amplitude(const TrialWavefunction& wf,
                                   const Kinematics& kin,
                                   const PhotonCoupling& coupling,
                                   F0Mode mode)
{
    auto out = component_amplitudes(wf, kin, coupling);
    out.f0_mode = mode;
    switch (mode)
    {
        case F0Mode::none:
            return out;
        case F0Mode::closed_form:
            if (!std::holds_alternative<ProductHydrogenic>(wf))
                throw ValidationError("closed-form F0 is available for product-hydrogenic states only");
            [[fallthrough]];
        case F0Mode::bruteforce:
        {
            auto f0 = f0_bruteforce(wf, kin.p, coupling.ep);
            out.F0_full = f0.value;
            out.F0_error = f0.error_estimate;
            break;
        }
        case F0Mode::fock_series:
        {
            if (const auto* f = std::get_if<LocalFockForm>(&wf); f && !f->second_order.any())
                out.warnings.push_back(
                    "no second-order coefficients supplied: F_total holds only the cancelling "
                    "leading parts plus F1e");
            out.F0_full = f0_fock_series(fock_expansion(wf), kin.p, coupling.ep);
            out.F0_error = 0.0;
            break;
        }
    }
    out.F_total = *out.F0_full + out.F1N + out.F1e;
    return out;
}

}  // namespace coalesce
