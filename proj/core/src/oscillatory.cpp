#include "coalesce/oscillatory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "coalesce/errors.hpp"
#include "coalesce/quadrature.hpp"

namespace coalesce
{
namespace
{
constexpr double contour_length = 60.0;  // x e^{-x} < 1e-24 beyond

void check_inputs(double p, double decay_scale)
{
    if (!(p > 0) || !std::isfinite(p))
        throw ValidationError("momentum must be positive and finite");
    if (!(decay_scale > 0))
        throw ValidationError("profile does not decay; sine transform diverges");
}

}  // namespace

std::pair<double, double> wynn_epsilon(const std::vector<double>& s)
{
    if (s.empty())
        return {0.0, std::numeric_limits<double>::infinity()};
    if (s.size() < 3)
        return {s.back(), s.size() == 2 ? std::abs(s[1] - s[0])
                                         : std::numeric_limits<double>::infinity()};

    // Rolling columns of the epsilon table; even columns are estimates.
    std::vector<double> prev(s.size(), 0.0);
    std::vector<double> cur = s;
    double best = s.back();
    double change = std::abs(s.back() - s[s.size() - 2]);
    for (std::size_t col = 1; cur.size() > 1; ++col)
    {
        std::vector<double> next(cur.size() - 1);
        bool broken = false;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i)
        {
            double diff = cur[i + 1] - cur[i];
            if (diff == 0.0)
            {
                broken = true;
                break;
            }
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        if (broken)
            break;
        if (col % 2 == 0 && next.size() >= 2)
        {
            best = next.back();
            change = std::abs(next.back() - next[next.size() - 2]);
        }
        prev = cur;
        cur = std::move(next);
    }
    return {best, change};
}

OscillatoryResult oscillatory_integral_1d(const std::function<double(double)>& g,
                                          double p,
                                          double decay_scale,
                                          const OscillatoryContract& contract)
{
    check_inputs(p, decay_scale);
    const double half_period = std::numbers::pi / p;
    const double panel = std::min(half_period, 0.5 / decay_scale);
    const int panels_per_lobe = std::max(1, static_cast<int>(std::ceil(half_period / panel)));
    const auto& rule = quadrature::gauss_legendre(contract.nodes_per_panel);

    auto lobe = [&](int k) {
        double a = k * half_period;
        double h = half_period / panels_per_lobe;
        double sum = 0.0;
        for (int j = 0; j < panels_per_lobe; ++j)
        {
            double lo = a + j * h;
            for (std::size_t i = 0; i < rule.size(); ++i)
            {
                double r = lo + 0.5 * h * (rule.nodes[i] + 1.0);
                sum += rule.weights[i] * 0.5 * h * r * std::sin(p * r) * g(r);
            }
        }
        return sum;
    };

    std::vector<double> partial;
    double sum = 0.0;
    const double tail_length = 40.0 / decay_scale;
    for (int k = 0; k < contract.max_lobes; ++k)
    {
        double term = lobe(k);
        sum += term;
        partial.push_back(sum);
        if (partial.size() > 24)
            partial.erase(partial.begin());

        double r_end = (k + 1) * half_period;
        bool negligible = std::abs(term) <= 1e-17 * std::max(std::abs(sum), 1e-300);
        if (r_end > tail_length && negligible)
            return {sum, std::abs(term), k + 1};
        if (partial.size() >= 12 && r_end > 1.0 / decay_scale)
        {
            auto [est, change] = wynn_epsilon(partial);
            if (change <= 0.01 * contract.rel_tol * std::abs(est) && r_end > tail_length)
                return {est, change, k + 1};
        }
    }
    auto [est, change] = wynn_epsilon(partial);
    if (change <= contract.rel_tol * std::abs(est))
        return {est, change, contract.max_lobes};
    throw NumericalError("oscillatory integral did not converge within the lobe limit", est);
}

OscillatoryResult sine_transform_contour(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    double p,
    double decay_scale,
    const OscillatoryContract& contract)
{
    check_inputs(p, decay_scale);
    const double width = std::min(0.5, 2.0 * p / decay_scale);

    auto run = [&](int nodes) {
        auto rule = quadrature::composite_uniform(0.0, contour_length, width, nodes);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
        {
            double x = rule.nodes[i];
            sum += rule.weights[i] * x * std::exp(-x) * g({0.0, x / p}).imag();
        }
        return -sum / (p * p);
    };

    double fine = run(contract.nodes_per_panel);
    double coarse = run(contract.nodes_per_panel - 4);
    double err = std::abs(fine - coarse);
    int panels = static_cast<int>(std::ceil(contour_length / width));
    if (err > contract.rel_tol * std::abs(fine) && err > 1e-300)
        throw NumericalError("contour sine transform missed its tolerance", fine);
    return {fine, err, panels};
}

}  // namespace coalesce
