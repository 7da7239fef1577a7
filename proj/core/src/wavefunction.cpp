#include "coalesce/wavefunction.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"
#include "coalesce/quadrature.hpp"

namespace coalesce
{
namespace
{
using constants::pi;

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

//---------------------------------------------------------------------------//
// Value, gradient and Hessian in (r1, r2, u), combined by the product rule.
struct Jet
{
    double v{};
    std::array<double, 3> g{};
    std::array<std::array<double, 3>, 3> h{};
};

Jet operator*(const Jet& a, const Jet& b)
{
    Jet out;
    out.v = a.v * b.v;
    for (int i = 0; i < 3; ++i)
    {
        out.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int j = 0; j < 3; ++j)
            out.h[i][j] = a.h[i][j] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[i][j];
    }
    return out;
}

LocalDerivatives to_local(const Jet& j)
{
    LocalDerivatives d;
    d.value = j.v;
    d.d_r1 = j.g[0];
    d.d_r2 = j.g[1];
    d.d_u = j.g[2];
    d.d_r1r1 = j.h[0][0];
    d.d_r2r2 = j.h[1][1];
    d.d_uu = j.h[2][2];
    d.d_r1u = j.h[0][2];
    d.d_r2u = j.h[1][2];
    return d;
}

//! log w(R) = -R^2 / (Rc (Rc + R)) and its first two R-derivatives.
struct EnvelopeLog
{
    double g, dg, d2g;
};

EnvelopeLog envelope_log(double R, double Rc)
{
    double den = Rc + R;
    return {-R * R / (Rc * den),
            -(R * R + 2.0 * R * Rc) / (Rc * den * den),
            -2.0 * Rc / (den * den * den)};
}

template<class T>
T envelope_value(T R, double Rc)
{
    return std::exp(-R * R / (Rc * (Rc + R)));
}

Jet fock_jet(const LocalFockForm& f, double r1, double r2, double u)
{
    Jet e;
    e.v = f.N2 * std::exp(f.c_r1 * r1 + f.c_r2 * r2 + f.c_u * u);
    std::array<double, 3> c{f.c_r1, f.c_r2, f.c_u};
    for (int i = 0; i < 3; ++i)
    {
        e.g[i] = c[i] * e.v;
        for (int j = 0; j < 3; ++j)
            e.h[i][j] = c[i] * c[j] * e.v;
    }

    const auto& q = f.second_order;
    double R2 = r1 * r1 + r2 * r2;
    double R = std::sqrt(R2);
    Jet b;
    b.v = 1.0 + q.r1_sq * r1 * r1 + q.r2_sq * r2 * r2 + q.u_sq * u * u;
    b.g = {2.0 * q.r1_sq * r1, 2.0 * q.r2_sq * r2, 2.0 * q.u_sq * u};
    b.h[0][0] = 2.0 * q.r1_sq;
    b.h[1][1] = 2.0 * q.r2_sq;
    b.h[2][2] = 2.0 * q.u_sq;
    if (q.R2_log_R != 0.0 && R > 0.0)
    {
        double lnR = std::log(R);
        double ql = q.R2_log_R;
        b.v += ql * R2 * lnR;
        b.g[0] += ql * r1 * (2.0 * lnR + 1.0);
        b.g[1] += ql * r2 * (2.0 * lnR + 1.0);
        b.h[0][0] += ql * (2.0 * lnR + 1.0 + 2.0 * r1 * r1 / R2);
        b.h[1][1] += ql * (2.0 * lnR + 1.0 + 2.0 * r2 * r2 / R2);
        b.h[0][1] += ql * 2.0 * r1 * r2 / R2;
        b.h[1][0] = b.h[0][1];
    }

    Jet out = e * b;
    if (f.envelope_radius)
    {
        double Rc = *f.envelope_radius;
        Jet w;
        auto [g, dg, d2g] = envelope_log(R, Rc);
        w.v = std::exp(g);
        double wR = dg * w.v;
        double wRR = (d2g + dg * dg) * w.v;
        // wR / R has the finite limit -2/Rc^2 at the origin
        double wR_over_R = R > 0 ? wR / R : -2.0 / (Rc * Rc);
        std::array<double, 2> x{r1, r2};
        for (int i = 0; i < 2; ++i)
        {
            w.g[i] = R > 0 ? wR * x[i] / R : 0.0;
            for (int j = 0; j < 2; ++j)
            {
                double xx = R > 0 ? x[i] * x[j] / R2 : (i == j ? 1.0 : 0.0);
                double delta = i == j ? 1.0 : 0.0;
                w.h[i][j] = wRR * xx + wR_over_R * (delta - xx);
            }
        }
        out = out * w;
    }
    return out;
}

double fock_value(const LocalFockForm& f, double r1, double r2, double u)
{
    const auto& q = f.second_order;
    double R2 = r1 * r1 + r2 * r2;
    double bracket = 1.0 + q.r1_sq * r1 * r1 + q.r2_sq * r2 * r2 + q.u_sq * u * u;
    if (q.R2_log_R != 0.0 && R2 > 0.0)
        bracket += 0.5 * q.R2_log_R * R2 * std::log(R2);
    double out = f.N2 * std::exp(f.c_r1 * r1 + f.c_r2 * r2 + f.c_u * u) * bracket;
    if (f.envelope_radius)
        out *= envelope_value(std::sqrt(R2), *f.envelope_radius);
    return out;
}

LocalDerivatives hylleraas_derivatives(const HylleraasExpansion& h, double r1, double r2, double u)
{
    StuPolynomial P = StuPolynomial::from_terms(h.terms);
    double s = r1 + r2;
    double t = r1 - r2;
    auto Ps = P.derivative(0);
    auto Pt = P.derivative(1);
    auto Pu = P.derivative(2);
    double p = P.evaluate(s, t, u);
    double ps = Ps.evaluate(s, t, u);
    double pt = Pt.evaluate(s, t, u);
    double pu = Pu.evaluate(s, t, u);
    double pss = Ps.derivative(0).evaluate(s, t, u);
    double pst = Ps.derivative(1).evaluate(s, t, u);
    double psu = Ps.derivative(2).evaluate(s, t, u);
    double ptt = Pt.derivative(1).evaluate(s, t, u);
    double ptu = Pt.derivative(2).evaluate(s, t, u);
    double puu = Pu.derivative(2).evaluate(s, t, u);

    double a = h.a;
    double E = std::exp(-a * s);
    double fs = (ps - a * p) * E;
    double ft = pt * E;
    double fu = pu * E;
    double fss = (pss - 2.0 * a * ps + a * a * p) * E;
    double fst = (pst - a * pt) * E;
    double fsu = (psu - a * pu) * E;
    double ftt = ptt * E;
    double ftu = ptu * E;
    double fuu = puu * E;

    LocalDerivatives d;
    d.value = p * E;
    d.d_r1 = fs + ft;
    d.d_r2 = fs - ft;
    d.d_u = fu;
    d.d_r1r1 = fss + 2.0 * fst + ftt;
    d.d_r2r2 = fss - 2.0 * fst + ftt;
    d.d_uu = fuu;
    d.d_r1u = fsu + ftu;
    d.d_r2u = fsu - ftu;
    return d;
}

double hylleraas_value(const HylleraasExpansion& h, double r1, double r2, double u)
{
    double s = r1 + r2;
    double t = r1 - r2;
    double sum = 0;
    for (const auto& term : h.terms)
        sum += term.coefficient * std::pow(s, term.l) * std::pow(t, term.m) * std::pow(u, term.n);
    return sum * std::exp(-h.a * s);
}

}  // namespace

//---------------------------------------------------------------------------//
LocalFockForm LocalFockForm::with_defaults(double Z, double N2, std::optional<double> envelope_radius)
{
    LocalFockForm f;
    f.Z = Z;
    f.N2 = N2;
    f.c_r1 = -Z;
    f.c_r2 = -Z;
    f.c_u = 0.5;
    f.envelope_radius = envelope_radius;
    return f;
}

std::string_view variant_name(const TrialWavefunction& wf)
{
    return std::visit(Overloaded{[](const ProductHydrogenic&) { return "product-hydrogenic"; },
                                 [](const HylleraasExpansion&) { return "hylleraas"; },
                                 [](const LocalFockForm&) { return "local-fock"; }},
                      wf);
}

void validate(const TrialWavefunction& wf)
{
    std::visit(Overloaded{
                   [](const ProductHydrogenic& w) {
                       if (!(w.b > 0))
                           throw ValidationError("product-hydrogenic exponent b must be positive");
                   },
                   [](const HylleraasExpansion& w) {
                       if (!(w.a > 0))
                           throw ValidationError("Hylleraas exponent a must be positive");
                       if (w.terms.empty())
                           throw ValidationError("Hylleraas expansion has no terms");
                       for (const auto& t : w.terms)
                           validate_basis_term(t);
                   },
                   [](const LocalFockForm& w) {
                       if (!(w.Z > 0))
                           throw ValidationError("local Fock form needs Z > 0");
                       if (!std::isfinite(w.N2))
                           throw ValidationError("local Fock form N2 must be finite");
                       if (w.c_r1 != w.c_r2 || w.second_order.r1_sq != w.second_order.r2_sq)
                           throw ValidationError(
                               "local Fock form must be symmetric in r1 <-> r2");
                       if (w.envelope_radius && !(*w.envelope_radius > 0))
                           throw ValidationError("envelope radius must be positive");
                   }},
               wf);
}

double decay_rate(const TrialWavefunction& wf)
{
    return std::visit(Overloaded{[](const ProductHydrogenic& w) { return w.b; },
                                 [](const HylleraasExpansion& w) { return w.a; },
                                 [](const LocalFockForm& w) {
                                     // u ranges up to r1 + r2, so a positive c_u
                                     // eats into the r1 + r2 decay
                                     double rate = -(w.c_r1 + std::max(w.c_u, 0.0));
                                     if (w.envelope_radius)
                                         rate += 1.0 / (std::sqrt(2.0) * *w.envelope_radius);
                                     return rate;
                                 }},
                      wf);
}

TrialWavefunction normalized(const TrialWavefunction& wf)
{
    if (const auto* h = std::get_if<HylleraasExpansion>(&wf))
    {
        if (h->normalized)
            return wf;
        double scale = 1.0 / std::sqrt(overlap_norm(wf));
        HylleraasExpansion out = *h;
        for (auto& t : out.terms)
            t.coefficient *= scale;
        out.normalized = true;
        return out;
    }
    return wf;
}

//---------------------------------------------------------------------------//
double detail::evaluate_unchecked(const TrialWavefunction& wf, double r1, double r2, double u)
{
    return std::visit(
        Overloaded{[&](const ProductHydrogenic& w) {
                       return w.b * w.b * w.b / pi * std::exp(-w.b * (r1 + r2));
                   },
                   [&](const HylleraasExpansion& w) { return hylleraas_value(w, r1, r2, u); },
                   [&](const LocalFockForm& w) { return fock_value(w, r1, r2, u); }},
        wf);
}

double evaluate(const TrialWavefunction& wf, const HylleraasPoint& pt)
{
    return detail::evaluate_unchecked(wf, pt.r1(), pt.r2(), pt.u());
}

LocalDerivatives derivatives(const TrialWavefunction& wf, const HylleraasPoint& pt)
{
    double r1 = pt.r1();
    double r2 = pt.r2();
    double u = pt.u();
    return std::visit(Overloaded{[&](const ProductHydrogenic& w) {
                                     LocalDerivatives d;
                                     double b = w.b;
                                     d.value = b * b * b / pi * std::exp(-b * (r1 + r2));
                                     d.d_r1 = d.d_r2 = -b * d.value;
                                     d.d_r1r1 = d.d_r2r2 = b * b * d.value;
                                     return d;
                                 },
                                 [&](const HylleraasExpansion& w) {
                                     return hylleraas_derivatives(w, r1, r2, u);
                                 },
                                 [&](const LocalFockForm& w) {
                                     return to_local(fock_jet(w, r1, r2, u));
                                 }},
                      wf);
}

double apply_hamiltonian(const TrialWavefunction& wf,
                         const HylleraasPoint& pt,
                         double Z,
                         bool include_ee)
{
    return apply_hamiltonian(derivatives(wf, pt), pt, Z, include_ee);
}

double local_energy(const TrialWavefunction& wf,
                    const HylleraasPoint& pt,
                    double Z,
                    bool include_ee)
{
    auto d = derivatives(wf, pt);
    if (d.value == 0.0)
        throw NumericalError("local energy undefined at a node of the wave function");
    return apply_hamiltonian(d, pt, Z, include_ee) / d.value;
}

//---------------------------------------------------------------------------//
template<class T>
T ContactProfile::Form::value(T r) const
{
    T bracket{};
    T power{1.0};
    for (double c : poly)
    {
        bracket += c * power;
        power *= r;
    }
    if (log_coefficient != 0.0 && r != T{0.0})
        bracket += log_coefficient * r * r * std::log(r);
    T out = std::exp(exponent * r) * bracket;
    if (envelope_radius)
        out *= envelope_value(r, *envelope_radius);
    return out;
}

double ContactProfile::Form::derivative(double r) const
{
    double bracket = 0.0;
    double dbracket = 0.0;
    double power = 1.0;
    for (std::size_t k = 0; k < poly.size(); ++k)
    {
        bracket += poly[k] * power;
        if (k + 1 < poly.size())
            dbracket += (k + 1.0) * poly[k + 1] * power;
        power *= r;
    }
    if (log_coefficient != 0.0 && r > 0.0)
    {
        double lnr = std::log(r);
        bracket += log_coefficient * r * r * lnr;
        dbracket += log_coefficient * (2.0 * r * lnr + r);
    }
    double E = std::exp(exponent * r);
    double w = 1.0;
    double dlogw = 0.0;
    if (envelope_radius)
    {
        auto env = envelope_log(r, *envelope_radius);
        w = std::exp(env.g);
        dlogw = env.dg;
    }
    return E * w * ((exponent + dlogw) * bracket + dbracket);
}

template double ContactProfile::Form::value<double>(double) const;
template std::complex<double> ContactProfile::Form::value<std::complex<double>>(
    std::complex<double>) const;

ContactProfile::ContactProfile(const TrialWavefunction& wf)
{
    validate(wf);
    std::visit(Overloaded{
                   [&](const ProductHydrogenic& w) {
                       double n2 = w.b * w.b * w.b / pi;
                       phi_.poly = {n2};
                       phi_.exponent = -w.b;
                       dr2_.poly = {-w.b * n2};
                       dr2_.exponent = -w.b;
                       decay_ = w.b;
                   },
                   [&](const HylleraasExpansion& w) {
                       int degree = 0;
                       for (const auto& t : w.terms)
                           degree = std::max(degree, t.l + t.m + t.n);
                       phi_.poly.assign(degree + 1, 0.0);
                       dr2_.poly.assign(degree + 1, 0.0);
                       // On (r, 0, r): s = t = u = r.  dPsi/dr2 = (d_s - d_t) Psi.
                       for (const auto& t : w.terms)
                       {
                           int k = t.l + t.m + t.n;
                           phi_.poly[k] += t.coefficient;
                           dr2_.poly[k] -= w.a * t.coefficient;
                           if (k > 0)
                               dr2_.poly[k - 1] += (t.l - t.m) * t.coefficient;
                       }
                       phi_.exponent = dr2_.exponent = -w.a;
                       decay_ = w.a;
                   },
                   [&](const LocalFockForm& w) {
                       const auto& q = w.second_order;
                       phi_.poly = {w.N2, 0.0, w.N2 * (q.r1_sq + q.u_sq)};
                       phi_.exponent = w.c_r1 + w.c_u;
                       phi_.log_coefficient = w.N2 * q.R2_log_R;
                       phi_.envelope_radius = w.envelope_radius;
                       // every factor except the exponential is flat in r2 at r2 = 0
                       dr2_ = phi_;
                       for (auto& c : dr2_.poly)
                           c *= w.c_r2;
                       dr2_.log_coefficient *= w.c_r2;
                       decay_ = -phi_.exponent
                                + (w.envelope_radius ? 1.0 / *w.envelope_radius : 0.0);
                   }},
               wf);
}

double ContactProfile::phi(double r) const
{
    return phi_.value(r);
}
double ContactProfile::dphi_dr2(double r) const
{
    return dr2_.value(r);
}
double ContactProfile::dphi_dr(double r) const
{
    return phi_.derivative(r);
}
std::complex<double> ContactProfile::phi(std::complex<double> r) const
{
    return phi_.value(r);
}
std::complex<double> ContactProfile::dphi_dr2(std::complex<double> r) const
{
    return dr2_.value(r);
}

ContactValues contact_profile(const TrialWavefunction& wf, double r)
{
    if (!(r >= 0))
        throw ValidationError("contact radius must be nonnegative");
    ContactProfile profile(wf);
    return {profile.phi(r), profile.dphi_dr2(r), profile.dphi_dr(r)};
}

//---------------------------------------------------------------------------//
double overlap_norm(const TrialWavefunction& wf)
{
    validate(wf);
    return std::visit(
        Overloaded{[](const ProductHydrogenic& w) {
                       double n = w.b * w.b * w.b / pi;
                       return n * n * basis_integral(0, 0, 0, w.b);
                   },
                   [](const HylleraasExpansion& w) {
                       double sum = 0;
                       for (const auto& ti : w.terms)
                           for (const auto& tj : w.terms)
                               sum += ti.coefficient * tj.coefficient
                                      * basis_integral(ti.l + tj.l, ti.m + tj.m, ti.n + tj.n, w.a);
                       return sum;
                   },
                   [&wf](const LocalFockForm& w) {
                       double kappa = decay_rate(wf);
                       if (!(kappa > 0))
                           throw ValidationError(
                               "local Fock form is not square-integrable without an envelope");
                       quadrature::ConfigurationGrid grid;
                       grid.r_max = 24.0 / kappa;
                       grid.radial_width = 0.75 / kappa;
                       grid.u_width = 0.75 / kappa;
                       grid.nodes_per_panel = 16;
                       return quadrature::integrate_symmetric_configuration(
                           [&w](double r1, double r2, double u) {
                               double v = fock_value(w, r1, r2, u);
                               return v * v;
                           },
                           grid);
                   }},
        wf);
}

double n_squared(const TrialWavefunction& wf)
{
    validate(wf);
    return std::visit(Overloaded{[](const ProductHydrogenic& w) { return w.b * w.b * w.b / pi; },
                                 [&wf](const HylleraasExpansion& w) {
                                     double origin = 0;
                                     for (const auto& t : w.terms)
                                         if (t.l == 0 && t.m == 0 && t.n == 0)
                                             origin += t.coefficient;
                                     if (w.normalized)
                                         return origin;
                                     double norm = overlap_norm(wf);
                                     if (!(norm > 0) || !std::isfinite(norm))
                                         throw ValidationError("wave function is not normalizable");
                                     return origin / std::sqrt(norm);
                                 },
                                 [](const LocalFockForm& w) { return w.N2; }},
                      wf);
}

CuspReport cusp_report(const TrialWavefunction& wf, double Z, const std::vector<double>& radii)
{
    validate(wf);
    CuspReport report;
    report.en_target = -Z;
    for (double r : radii)
    {
        if (!(r > 0))
            throw ValidationError("cusp radii must be positive");
        CuspSample sample;
        sample.r = r;
        auto en = derivatives(wf, HylleraasPoint(r, 0.0, r));
        auto ee = derivatives(wf, HylleraasPoint(r, r, 0.0));
        bool flagged = false;
        if (en.value != 0.0)
        {
            sample.en_ratio = en.d_r2 / en.value;
            report.max_en_deviation = std::max(report.max_en_deviation,
                                               std::abs(*sample.en_ratio - report.en_target));
        }
        else
        {
            flagged = true;
        }
        if (ee.value != 0.0)
        {
            sample.ee_ratio = ee.d_u / ee.value;
            report.max_ee_deviation = std::max(report.max_ee_deviation,
                                               std::abs(*sample.ee_ratio - report.ee_target));
        }
        else
        {
            flagged = true;
        }
        if (flagged)
            report.flagged_radii.push_back(r);
        report.samples.push_back(sample);
    }
    return report;
}

//---------------------------------------------------------------------------//
FockExpansion fock_expansion(const TrialWavefunction& wf)
{
    TrialWavefunction normed = normalized(wf);
    validate(normed);
    return std::visit(
        Overloaded{[](const ProductHydrogenic& w) {
                       double n = w.b * w.b * w.b / pi;
                       FockExpansion f;
                       f.c0 = n;
                       f.c_r = -w.b * n;
                       f.q_rr = 0.5 * w.b * w.b * n;
                       f.q_r1r2 = w.b * w.b * n;
                       return f;
                   },
                   [](const HylleraasExpansion& w) {
                       // Taylor coefficients in (s, t, u) up to total degree two
                       StuPolynomial P = StuPolynomial::from_terms(w.terms);
                       StuPolynomial E = StuPolynomial::monomial(0, 0, 0, 1.0)
                                         + StuPolynomial::monomial(1, 0, 0, -w.a)
                                         + StuPolynomial::monomial(2, 0, 0, 0.5 * w.a * w.a);
                       const StuPolynomial product = P * E;
                       std::map<StuPolynomial::Powers, double> c;
                       for (const auto& [k, v] : product.terms())
                           if (k[0] + k[1] + k[2] <= 2)
                               c[k] = v;
                       auto at = [&c](int l, int m, int n) {
                           auto it = c.find({l, m, n});
                           return it == c.end() ? 0.0 : it->second;
                       };
                       // s = r1 + r2, t = r1 - r2
                       FockExpansion f;
                       f.c0 = at(0, 0, 0);
                       f.c_r = at(1, 0, 0);
                       f.c_u = at(0, 0, 1);
                       f.q_rr = at(2, 0, 0) + at(0, 2, 0);
                       f.q_r1r2 = 2.0 * at(2, 0, 0) - 2.0 * at(0, 2, 0);
                       f.q_ru = at(1, 0, 1);
                       f.q_uu = at(0, 0, 2);
                       return f;
                   },
                   [](const LocalFockForm& w) {
                       const auto& q = w.second_order;
                       double inv_rc2 = w.envelope_radius
                                            ? 1.0 / (*w.envelope_radius * *w.envelope_radius)
                                            : 0.0;
                       FockExpansion f;
                       f.c0 = w.N2;
                       f.c_r = w.N2 * w.c_r1;
                       f.c_u = w.N2 * w.c_u;
                       f.q_rr = w.N2 * (0.5 * w.c_r1 * w.c_r1 + q.r1_sq - inv_rc2);
                       f.q_r1r2 = w.N2 * w.c_r1 * w.c_r1;
                       f.q_ru = w.N2 * w.c_r1 * w.c_u;
                       f.q_uu = w.N2 * (0.5 * w.c_u * w.c_u + q.u_sq);
                       f.q_log = w.N2 * q.R2_log_R;
                       return f;
                   }},
        normed);
}

}  // namespace coalesce
