#include "coalesce/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"
#include "coalesce/quadrature.hpp"

namespace coalesce
{
namespace
{
using constants::pi;

void check_product_inputs(double b, double p)
{
    if (!(b > 0))
        throw ValidationError("oracle exponent b must be positive");
    if (!(p > 0))
        throw ValidationError("oracle momentum must be positive");
}

double ratio_or_zero(double value, double reference)
{
    return reference != 0.0 ? value / reference : 0.0;
}

double integrate(const quadrature::Rule& rule, const std::function<double(double)>& f)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

//! Integral over [a, inf) via q = a / t.
double tail_integral(const std::function<double(double)>& f, double a, int nodes)
{
    auto rule = quadrature::composite_uniform(0.0, 1.0, 0.125, nodes);
    return integrate(rule, [&](double t) { return f(a / t) * a / (t * t); });
}

//! Panels doubling from `scale` up to `end`, starting at 0.
std::vector<double> geometric_breaks(double scale, double end)
{
    std::vector<double> out{0.0};
    for (double x = 0.25 * scale; x < end; x *= 2.0)
        out.push_back(x);
    out.push_back(end);
    return out;
}

double f1e_integral(double b, double p, int nodes)
{
    const double b2 = b * b;
    const double p2 = p * p;
    const double soft_norm = 2.0 / std::pow(b2 + p2, 4);
    auto integrand = [&](double k) {
        double alpha = b2 + p2 + k * k;
        double x = 2.0 * p * k / alpha;
        double D = (b2 + (p - k) * (p - k)) * (b2 + (p + k) * (p + k));
        double at = x > 1e-4 ? std::atanh(x) / x : 1.0 + x * x / 3.0 + std::pow(x, 4) / 5.0;
        double A = 1.0 / (alpha * alpha * D) + at / std::pow(alpha, 4);
        double S = p2 / (p2 + k * k);
        return (A - soft_norm * S * S) / (k * k);
    };

    // Structure: scale p everywhere, plus a peak of width b at k = p.
    double lo = std::max(0.0, p - 20.0 * b);
    double hi = p + 20.0 * b;
    std::vector<double> breaks{0.0};
    if (lo > 0)
    {
        int n = std::max(4, static_cast<int>(std::ceil(lo / std::min(p / 16.0, 4.0 * b))));
        for (int i = 1; i <= n; ++i)
            breaks.push_back(lo * i / n);
    }
    int n_peak = static_cast<int>(std::ceil((hi - lo) / (0.5 * b)));
    for (int i = 1; i <= n_peak; ++i)
        breaks.push_back(lo + (hi - lo) * i / n_peak);
    auto rule = quadrature::composite(breaks, nodes);
    return integrate(rule, integrand) + tail_integral(integrand, hi, nodes);
}

double f1e_value(double b, double p, double ep, int nodes)
{
    double N2 = b * b * b / pi;
    double prefactor = -2.0 * N2 * 4.0 * pi / std::pow(2.0 * pi, 3) * 2.0 * pi
                       * std::pow(8.0 * pi * b, 2) * ep;
    return prefactor * f1e_integral(b, p, nodes);
}

double lambda_of(double Z, double N2, double p, double ep)
{
    return 4.0 * pi * pi * Z * N2 * ep / std::pow(p, 8);
}

}  // namespace

double ft_exponential(double b, double p)
{
    if (!(b > 0) || !(p >= 0))
        throw ValidationError("ft_exponential needs b > 0 and p >= 0");
    double d = b * b + p * p;
    return 8.0 * pi * b / (d * d);
}

double principal_value(const std::function<double(double)>& g,
                       double p,
                       double scale,
                       int nodes_per_panel)
{
    if (!(p > 0) || !(scale > 0))
        throw ValidationError("principal value needs p > 0 and scale > 0");
    const double w = 0.5 * p;

    auto centre_rule = quadrature::composite_uniform(0.0, 1.0, 0.125, nodes_per_panel);
    double centre = integrate(centre_rule, [&](double y) {
        double x = w * y * y * y;
        return 3.0 * (g(p - x) - g(p + x)) / y;
    });

    auto left_breaks = geometric_breaks(scale, p - w);
    auto left_rule = quadrature::composite(left_breaks, nodes_per_panel);
    double left = integrate(left_rule, [&](double q) { return g(q) / (p - q); });

    double right = tail_integral([&](double q) { return g(q) / (p - q); }, p + w, nodes_per_panel);
    return centre + left + right;
}

OracleResult f1n_bruteforce(double b, double Z, double p, double ep, int nodes_per_panel)
{
    check_product_inputs(b, p);
    if (!(Z > 0))
        throw ValidationError("nuclear charge must be positive");

    double N2 = b * b * b / pi;
    auto g = [&](double q) {
        if (q == p)
            return 0.0;
        return q * ft_exponential(b, q) * std::log((p + q) / std::abs(p - q)) / (p + q);
    };
    auto value_at = [&](int nodes) {
        double pv = principal_value(g, p, b, nodes);
        return 2.0 * ep * N2 * ft_exponential(b, p) * (-2.0 * Z / (pi * p)) * pv;
    };

    OracleResult out;
    out.nodes_per_panel = nodes_per_panel;
    out.value = value_at(nodes_per_panel);
    out.error_estimate = std::abs(out.value - value_at(std::max(4, nodes_per_panel - 4)));
    double J1 = 8.0 * pi * b * N2 / std::pow(p, 4);
    out.asymptotic = -16.0 * pi * Z * ep * J1 / std::pow(p, 4);
    out.ratio = ratio_or_zero(out.value, out.asymptotic);
    if (out.error_estimate > 1e-2 * std::abs(out.value) && out.value != 0.0)
        throw NumericalError("F1N oracle missed its 1% target", out.value);
    return out;
}

OracleResult f1e_bruteforce(double b, double p, double ep, int nodes_per_panel)
{
    check_product_inputs(b, p);
    OracleResult out;
    out.nodes_per_panel = nodes_per_panel;
    out.value = f1e_value(b, p, ep, nodes_per_panel);
    out.error_estimate = std::abs(out.value - f1e_value(b, p, ep, std::max(4, nodes_per_panel - 4)));
    out.asymptotic = -4.0 * lambda_of(b, b * b * b / pi, p, ep);
    out.ratio = ratio_or_zero(out.value, out.asymptotic);
    if (out.error_estimate > 1e-2 * std::abs(out.value) && out.value != 0.0)
        throw NumericalError("F1e oracle missed its 1% target", out.value);
    return out;
}

//---------------------------------------------------------------------------//
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw ValidationError("power-law fit needs equally many abscissae and ordinates");
    if (x.size() < 3)
        throw ValidationError("power-law fit needs at least 3 points");
    double sx = 0, sy = 0;
    auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw ValidationError("power-law fit needs positive x and y");
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    double mx = sx / n;
    double my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (!(sxx > 0))
        throw ValidationError("power-law fit needs distinct abscissae");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    double log_a = my - fit.exponent * mx;
    fit.amplitude = std::exp(log_a);
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double r = std::log(y[i]) - (log_a + fit.exponent * std::log(x[i]));
        ssr += r * r;
    }
    fit.residual_norm = std::sqrt(ssr);
    fit.exponent_stderr = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
    fit.x.assign(x.begin(), x.end());
    fit.y.assign(y.begin(), y.end());
    return fit;
}

ExponentResolution resolve_f1e_exponent(double b, std::span<const double> momenta)
{
    std::vector<double> ps(momenta.begin(), momenta.end());
    if (ps.empty())
        ps = {100, 150, 200, 300, 500, 700, 1000};

    ExponentResolution out;
    std::vector<double> values;
    for (double p : ps)
    {
        auto r = f1e_bruteforce(b, p, 1.0);
        values.push_back(std::abs(r.value));
        out.ratio_to_reference.push_back(r.ratio);
    }
    out.fit = fit_power_law(ps, values);
    out.nearest_integer = static_cast<int>(std::lround(out.fit.exponent));
    out.integer_within_tolerance = std::abs(out.fit.exponent - out.nearest_integer) <= 0.1;
    out.inconclusive = out.fit.exponent_stderr > 0.1;
    out.candidates = {{"single_term", -7}, {"lambda_structure", -8}};
    if (out.integer_within_tolerance && !out.inconclusive)
        for (const auto& c : out.candidates)
            if (c.exponent == out.nearest_integer)
                out.matching_candidate = c.name;
    return out;
}

PowerLawFit f1e_charge_scaling(std::span<const double> charges, double p)
{
    std::vector<double> values;
    for (double Z : charges)
        values.push_back(std::abs(f1e_bruteforce(Z, p, 1.0).value));
    return fit_power_law(charges, values);
}

}  // namespace coalesce
