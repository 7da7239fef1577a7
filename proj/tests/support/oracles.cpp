#include "oracles.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace coalesce::reference
{
namespace
{
using boost::math::quadrature::gauss_kronrod;

template<class F>
double gk(F&& f, double a, double b, double tol)
{
    if (b <= a)
        return 0.0;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 8, tol);
}

}  // namespace

double configuration_integral(const std::function<double(double, double, double)>& f,
                              double r_max,
                              double tol)
{
    auto over_u = [&](double r1, double r2) {
        return gk([&](double u) { return u * f(r1, r2, u); }, std::abs(r1 - r2), r1 + r2, tol);
    };
    auto over_r2 = [&](double r1) {
        auto g = [&](double r2) { return r2 * over_u(r1, r2); };
        // the lower u limit has a kink at r2 = r1
        return gk(g, 0.0, r1, tol) + gk(g, r1, r_max, tol);
    };
    double total = gk([&](double r1) { return r1 * over_r2(r1); }, 0.0, r_max, tol);
    return 8.0 * M_PI * M_PI * total;
}

double finite_difference_hamiltonian(const TrialWavefunction& wf,
                                     double r1,
                                     double r2,
                                     double u,
                                     double Z,
                                     bool include_ee,
                                     double h)
{
    double cg = (r1 * r1 + r2 * r2 - u * u) / (2.0 * r1 * r2);
    double sg = std::sqrt(std::max(0.0, 1.0 - cg * cg));
    std::array<double, 6> x{r1, 0.0, 0.0, r2 * cg, r2 * sg, 0.0};

    auto psi = [&](const std::array<double, 6>& y) {
        double a = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        double b = std::sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5]);
        double dx = y[0] - y[3], dy = y[1] - y[4], dz = y[2] - y[5];
        double c = std::sqrt(dx * dx + dy * dy + dz * dz);
        return detail::evaluate_unchecked(wf, a, b, c);
    };

    double centre = psi(x);
    double laplacian = 0.0;
    for (int k = 0; k < 6; ++k)
    {
        auto at = [&](double offset) {
            auto y = x;
            y[k] += offset;
            return psi(y);
        };
        laplacian += (-at(2 * h) + 16.0 * at(h) - 30.0 * centre + 16.0 * at(-h) - at(-2 * h))
                     / (12.0 * h * h);
    }
    double potential = -Z / r1 - Z / r2 + (include_ee ? 1.0 / u : 0.0);
    return -0.5 * laplacian + potential * centre;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h)
{
    auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    double d1 = central(h);
    double d2 = central(0.5 * h);
    return d2 + (d2 - d1) / 3.0;
}

}  // namespace coalesce::reference
