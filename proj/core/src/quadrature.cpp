#include "coalesce/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <boost/math/special_functions/legendre.hpp>

namespace coalesce::quadrature
{
namespace
{
constexpr int max_cached_nodes = 256;

Rule build_gauss_legendre(int n)
{
    // Boost returns the non-negative zeros of P_n in increasing order.
    auto zeros = boost::math::legendre_p_zeros<double>(n);
    Rule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    auto weight = [n](double x) {
        double dp = boost::math::legendre_p_prime(n, x);
        return 2.0 / ((1.0 - x * x) * dp * dp);
    };
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
    {
        if (*it == 0.0)
            continue;
        rule.nodes.push_back(-*it);
        rule.weights.push_back(weight(*it));
    }
    for (double x : zeros)
    {
        rule.nodes.push_back(x);
        rule.weights.push_back(weight(x));
    }
    return rule;
}
}  // namespace

const Rule& gauss_legendre(int n)
{
    if (n < 1 || n > max_cached_nodes)
        throw std::invalid_argument("Gauss-Legendre node count out of range");
    static std::array<Rule, max_cached_nodes + 1> cache;
    static std::array<std::once_flag, max_cached_nodes + 1> flags;
    std::call_once(flags[n], [n] { cache[n] = build_gauss_legendre(n); });
    return cache[n];
}

Rule gauss_legendre(double a, double b, int n)
{
    const Rule& ref = gauss_legendre(n);
    Rule out;
    out.nodes.resize(ref.size());
    out.weights.resize(ref.size());
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < ref.size(); ++i)
    {
        out.nodes[i] = mid + half * ref.nodes[i];
        out.weights[i] = half * ref.weights[i];
    }
    return out;
}

Rule composite(std::span<const double> breakpoints, int nodes_per_panel)
{
    const Rule& ref = gauss_legendre(nodes_per_panel);
    Rule out;
    if (breakpoints.size() < 2)
        return out;
    out.nodes.reserve((breakpoints.size() - 1) * ref.size());
    out.weights.reserve(out.nodes.capacity());
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
    {
        double a = breakpoints[k];
        double b = breakpoints[k + 1];
        if (!(b > a))
            continue;
        double half = 0.5 * (b - a);
        double mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < ref.size(); ++i)
        {
            out.nodes.push_back(mid + half * ref.nodes[i]);
            out.weights.push_back(half * ref.weights[i]);
        }
    }
    return out;
}

Rule composite_uniform(double a, double b, double max_width, int nodes_per_panel)
{
    int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    std::vector<double> breaks(panels + 1);
    for (int i = 0; i <= panels; ++i)
        breaks[i] = a + (b - a) * i / panels;
    breaks.back() = b;
    return composite(breaks, nodes_per_panel);
}

}  // namespace coalesce::quadrature
