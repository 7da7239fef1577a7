#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace coalesce::quadrature
{
//! Nodes and weights of a 1D rule on a fixed interval.
struct Rule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template<class F>
    auto integrate(F&& f) const
    {
        decltype(f(0.0)) sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

//! Gauss-Legendre rule with n nodes on [-1, 1]. Rules are built once per n
//! and shared read-only; calling from several threads is safe.
const Rule& gauss_legendre(int n);

//! n-point Gauss-Legendre rule mapped to [a, b].
Rule gauss_legendre(double a, double b, int n);

//! Composite Gauss-Legendre rule over consecutive breakpoints.
Rule composite(std::span<const double> breakpoints, int nodes_per_panel);

//! Composite rule with equal panels no wider than max_width.
Rule composite_uniform(double a, double b, double max_width, int nodes_per_panel);

}  // namespace coalesce::quadrature

namespace coalesce::quadrature
{
//! Fixed tensor-product grid over the S-state configuration space.
struct ConfigurationGrid
{
    double r_max{20.0};
    double radial_width{0.5};
    double u_width{0.5};
    int nodes_per_panel{12};
};

/*!
 * 8 pi^2 * integral of r1 r2 u f(r1, r2, u) over r1, r2 in [0, r_max] and
 * |r1 - r2| <= u <= r1 + r2, for f symmetric under r1 <-> r2.
 *
 * Only the r2 <= r1 half is sampled so that every panel boundary follows
 * the kinks of the domain and Gauss-Legendre converges exponentially for
 * smooth f.
 */
template<class F>
double integrate_symmetric_configuration(F&& f, const ConfigurationGrid& grid)
{
    Rule outer = composite_uniform(0.0, grid.r_max, grid.radial_width, grid.nodes_per_panel);
    double total = 0.0;
    for (std::size_t i = 0; i < outer.size(); ++i)
    {
        double r1 = outer.nodes[i];
        Rule inner = composite_uniform(0.0, r1, grid.radial_width, grid.nodes_per_panel);
        double row = 0.0;
        for (std::size_t j = 0; j < inner.size(); ++j)
        {
            double r2 = inner.nodes[j];
            double lo = r1 - r2;
            double hi = r1 + r2;
            Rule ur = composite_uniform(lo, hi, grid.u_width, grid.nodes_per_panel);
            double cell = 0.0;
            for (std::size_t k = 0; k < ur.size(); ++k)
                cell += ur.weights[k] * ur.nodes[k] * f(r1, r2, ur.nodes[k]);
            row += inner.weights[j] * r2 * cell;
        }
        total += outer.weights[i] * r1 * row;
    }
    return 16.0 * std::numbers::pi * std::numbers::pi * total;
}

}  // namespace coalesce::quadrature
