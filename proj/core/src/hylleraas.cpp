#include "coalesce/hylleraas.hpp"

#include <cmath>
#include <sstream>

#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"

namespace coalesce
{
namespace
{
double factorial(int n)
{
    return std::tgamma(static_cast<double>(n) + 1.0);
}
}  // namespace

HylleraasPoint::HylleraasPoint(double r1, double r2, double u) : r1_(r1), r2_(r2), u_(u)
{
    auto fail = [&](const char* what) {
        std::ostringstream os;
        os.precision(17);
        os << "invalid Hylleraas point (r1=" << r1 << ", r2=" << r2 << ", u=" << u
           << "): " << what;
        throw ValidationError(os.str());
    };
    if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(u))
        fail("coordinates must be finite");
    if (r1 < 0 || r2 < 0 || u < 0)
        fail("coordinates must be nonnegative");
    if (u > r1 + r2)
        fail("u <= r1 + r2 violated");
    if (u < std::abs(r1 - r2))
        fail("|r1 - r2| <= u violated");
}

HylleraasPoint validate_point(double r1, double r2, double u)
{
    return HylleraasPoint(r1, r2, u);
}

void validate_basis_term(const BasisTerm& term)
{
    if (term.l < 0 || term.m < 0 || term.n < 0)
        throw ValidationError("basis powers must be nonnegative");
    if (term.m % 2 != 0)
        throw ValidationError("power of t must be even for singlet symmetry");
    if (term.l > max_basis_power || term.m > max_basis_power || term.n > max_basis_power)
        throw ValidationError("basis power exceeds configured maximum");
}

double raw_integral(int l, int m, int n, double alpha)
{
    if (!(alpha > 0))
        throw ValidationError("exponent must be positive");
    if (m % 2 != 0)
        return 0.0;
    int total = l + m + n + 2;
    if (m < 0 || m + n + 2 <= 0 || total < 0)
        throw ValidationError("divergent Hylleraas integral");
    return 2.0 * constants::pi * constants::pi * factorial(total)
           / ((m + 1.0) * (m + n + 2.0) * std::pow(alpha, total + 1));
}

double basis_integral(int l, int m, int n, double a)
{
    if (!(a > 0))
        throw ValidationError("basis exponent must be positive");
    if (m % 2 != 0)
        throw ValidationError("odd power of t in basis integral");
    if (l < 0 || m < 0 || n < 0)
        throw ValidationError("basis powers must be nonnegative");
    double alpha = 2.0 * a;
    return raw_integral(l + 2, m, n + 1, alpha) - raw_integral(l, m + 2, n + 1, alpha);
}

//---------------------------------------------------------------------------//
StuPolynomial StuPolynomial::monomial(int l, int m, int n, double c)
{
    StuPolynomial p;
    p.add({l, m, n}, c);
    return p;
}

StuPolynomial StuPolynomial::from_terms(std::span<const BasisTerm> terms)
{
    StuPolynomial p;
    for (const auto& t : terms)
        p.add({t.l, t.m, t.n}, t.coefficient);
    return p;
}

StuPolynomial& StuPolynomial::add(const Powers& powers, double c)
{
    if (c == 0.0)
        return *this;
    auto [it, inserted] = terms_.try_emplace(powers, c);
    if (!inserted)
    {
        it->second += c;
        if (it->second == 0.0)
            terms_.erase(it);
    }
    return *this;
}

StuPolynomial StuPolynomial::operator+(const StuPolynomial& other) const
{
    StuPolynomial out = *this;
    for (const auto& [k, c] : other.terms_)
        out.add(k, c);
    return out;
}

StuPolynomial StuPolynomial::operator-(const StuPolynomial& other) const
{
    return *this + other * -1.0;
}

StuPolynomial StuPolynomial::operator*(const StuPolynomial& other) const
{
    StuPolynomial out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : other.terms_)
            out.add({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    return out;
}

StuPolynomial StuPolynomial::operator*(double c) const
{
    StuPolynomial out;
    for (const auto& [k, v] : terms_)
        out.add(k, v * c);
    return out;
}

StuPolynomial StuPolynomial::derivative(int axis) const
{
    StuPolynomial out;
    for (const auto& [k, c] : terms_)
    {
        if (k[axis] == 0)
            continue;
        Powers d = k;
        d[axis] -= 1;
        out.add(d, c * k[axis]);
    }
    return out;
}

double StuPolynomial::evaluate(double s, double t, double u) const
{
    double sum = 0;
    for (const auto& [k, c] : terms_)
        sum += c * std::pow(s, k[0]) * std::pow(t, k[1]) * std::pow(u, k[2]);
    return sum;
}

double StuPolynomial::integrate_exponential(double alpha) const
{
    double sum = 0;
    for (const auto& [k, c] : terms_)
        sum += c * raw_integral(k[0], k[1], k[2], alpha);
    return sum;
}

//---------------------------------------------------------------------------//
double apply_hamiltonian(const LocalDerivatives& d,
                         const HylleraasPoint& pt,
                         double Z,
                         bool include_ee)
{
    if (!pt.is_interior())
        throw ValidationError("Hamiltonian applied on a coalescence line; take the limit");
    double r1 = pt.r1();
    double r2 = pt.r2();
    double u = pt.u();

    double kinetic = -0.5 * (d.d_r1r1 + 2.0 / r1 * d.d_r1)
                     - 0.5 * (d.d_r2r2 + 2.0 / r2 * d.d_r2)
                     - (d.d_uu + 2.0 / u * d.d_u)
                     - (r1 * r1 - r2 * r2 + u * u) / (2.0 * r1 * u) * d.d_r1u
                     - (r2 * r2 - r1 * r1 + u * u) / (2.0 * r2 * u) * d.d_r2u;
    double potential = -Z / r1 - Z / r2 + (include_ee ? 1.0 / u : 0.0);
    return kinetic + potential * d.value;
}

}  // namespace coalesce
