#include "coalesce/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "coalesce/errors.hpp"

namespace coalesce
{
namespace
{
//! First pivot (in order) whose Schur complement collapses, or -1.
int first_dependent_index(const Eigen::MatrixXd& S)
{
    Eigen::Index n = S.rows();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        double d = S(k, k) - L.row(k).head(k).squaredNorm();
        if (!(d > 1e-12 * S(k, k)))
            return static_cast<int>(k);
        L(k, k) = std::sqrt(d);
        for (Eigen::Index i = k + 1; i < n; ++i)
            L(i, k) = (S(i, k) - L.row(i).head(k).dot(L.row(k).head(k))) / L(k, k);
    }
    return -1;
}

Eigen::VectorXd inverse_sqrt_diagonal(const Eigen::MatrixXd& S)
{
    return S.diagonal().cwiseSqrt().cwiseInverse();
}

}  // namespace

RitzMatrices assemble_matrices(std::span<const BasisTerm> basis, double a, double Z)
{
    if (basis.empty())
        throw ValidationError("basis must contain at least one term");
    if (!(a > 0))
        throw ValidationError("basis exponent must be positive");
    if (!(Z > 0))
        throw ValidationError("nuclear charge must be positive");
    for (const auto& t : basis)
        validate_basis_term(t);

    auto n = static_cast<Eigen::Index>(basis.size());
    std::vector<StuPolynomial> P, Ps, Pt, Pu;
    for (const auto& t : basis)
    {
        auto p = StuPolynomial::monomial(t.l, t.m, t.n);
        P.push_back(p);
        // derivative of e^{-a s} P with the exponential factored out
        Ps.push_back(p.derivative(0) - p * a);
        Pt.push_back(p.derivative(1));
        Pu.push_back(p.derivative(2));
    }

    const auto weight = StuPolynomial::monomial(2, 0, 1) - StuPolynomial::monomial(0, 2, 1);
    const auto su_weight = StuPolynomial::monomial(1, 0, 2) - StuPolynomial::monomial(1, 2, 0);
    const auto tu_weight = StuPolynomial::monomial(2, 1, 0) - StuPolynomial::monomial(0, 1, 2);
    const auto potential = StuPolynomial::monomial(1, 0, 1, -4.0 * Z)
                           + StuPolynomial::monomial(2, 0, 0)
                           - StuPolynomial::monomial(0, 2, 0);

    RitzMatrices out{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
    double alpha = 2.0 * a;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j <= i; ++j)
        {
            auto pp = P[i] * P[j];
            auto kinetic = weight * (Ps[i] * Ps[j] + Pt[i] * Pt[j] + Pu[i] * Pu[j])
                           + su_weight * (Ps[i] * Pu[j] + Pu[i] * Ps[j])
                           + tu_weight * (Pt[i] * Pu[j] + Pu[i] * Pt[j]);
            double h = (kinetic + potential * pp).integrate_exponential(alpha);
            double s = (weight * pp).integrate_exponential(alpha);
            out.H(i, j) = out.H(j, i) = h;
            out.S(i, j) = out.S(j, i) = s;
        }
    }

    Eigen::VectorXd d = inverse_sqrt_diagonal(out.S);
    int bad = first_dependent_index(d.asDiagonal() * out.S * d.asDiagonal());
    if (bad >= 0)
    {
        const auto& t = basis[bad];
        std::ostringstream os;
        os << "singular overlap matrix: basis term " << bad << " (s^" << t.l << " t^" << t.m
           << " u^" << t.n << ") is linearly dependent on earlier terms";
        throw ValidationError(os.str());
    }
    return out;
}

Eigenpair solve_ground_state(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S)
{
    if (H.rows() == 0 || H.rows() != H.cols() || S.rows() != H.rows() || S.cols() != H.cols())
        throw ValidationError("H and S must be square matrices of equal size");

    // Work with unit-diagonal S so the result does not depend on term scaling.
    Eigen::VectorXd d = inverse_sqrt_diagonal(S);
    Eigen::MatrixXd Hs = d.asDiagonal() * H * d.asDiagonal();
    Eigen::MatrixXd Ss = d.asDiagonal() * S * d.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> overlap(Ss, Eigen::EigenvaluesOnly);
    double smin = overlap.eigenvalues().minCoeff();
    double smax = overlap.eigenvalues().maxCoeff();
    if (!(smin > 0))
        throw ValidationError("overlap matrix is not positive definite");

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Hs, Ss);
    if (solver.info() != Eigen::Success)
        throw NumericalError("generalized eigensolver failed");

    Eigenpair out;
    out.energy = solver.eigenvalues()(0);
    out.coefficients = d.asDiagonal() * solver.eigenvectors().col(0);
    out.coefficients /= std::sqrt(out.coefficients.dot(S * out.coefficients));
    out.condition_number = smax / smin;
    if (out.condition_number > ill_conditioned_overlap)
    {
        std::ostringstream os;
        os.precision(3);
        os << "overlap matrix is ill-conditioned (condition number " << std::scientific
           << out.condition_number << ")";
        out.warning = os.str();
    }
    return out;
}

double bisect_ground_state(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S, double tol)
{
    Eigen::VectorXd d = inverse_sqrt_diagonal(S);
    Eigen::MatrixXd Hs = d.asDiagonal() * H * d.asDiagonal();
    Eigen::MatrixXd Ss = d.asDiagonal() * S * d.asDiagonal();
    auto below = [&](double E) {
        Eigen::LLT<Eigen::MatrixXd> llt(Hs - E * Ss);
        return llt.info() == Eigen::Success;
    };

    // Every diagonal Rayleigh quotient bounds the ground state from above.
    double hi = Hs.diagonal().minCoeff();
    double step = std::max(1.0, std::abs(hi));
    double lo = hi - step;
    while (!below(lo))
    {
        step *= 2.0;
        lo = hi - step;
        if (!std::isfinite(lo))
            throw NumericalError("bisection could not bracket the ground state");
    }
    while (hi - lo > tol * std::max(1.0, std::abs(hi)))
    {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        (below(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

VariationalResult solve_variational(std::span<const BasisTerm> basis, double a, double Z)
{
    auto m = assemble_matrices(basis, a, Z);
    auto eig = solve_ground_state(m.H, m.S);

    VariationalResult out;
    out.energy = eig.energy;
    out.a = a;
    out.Z = Z;
    out.condition_number = eig.condition_number;
    out.warning = eig.warning;
    out.bisection_energy = bisect_ground_state(m.H, m.S);

    double origin = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].l == 0 && basis[i].m == 0 && basis[i].n == 0)
            origin += eig.coefficients(static_cast<Eigen::Index>(i));
    double sign = origin < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
    {
        BasisTerm t = basis[i];
        t.coefficient = sign * eig.coefficients(static_cast<Eigen::Index>(i));
        out.terms.push_back(t);
    }
    out.N2 = sign * origin;
    return out;
}

VariationalResult optimize_exponent(std::span<const BasisTerm> basis,
                                    double Z,
                                    double lo,
                                    double hi,
                                    double tol)
{
    if (!(lo > 0) || !(hi > lo))
        throw ValidationError("exponent bracket must satisfy 0 < lo < hi");
    auto energy = [&](double a) {
        auto m = assemble_matrices(basis, a, Z);
        return solve_ground_state(m.H, m.S).energy;
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x0 = lo;
    double x3 = hi;
    double x1 = x3 - inv_phi * (x3 - x0);
    double x2 = x0 + inv_phi * (x3 - x0);
    double f1 = energy(x1);
    double f2 = energy(x2);
    while (x3 - x0 > tol)
    {
        if (f1 <= f2)
        {
            x3 = x2;
            x2 = x1;
            f2 = f1;
            x1 = x3 - inv_phi * (x3 - x0);
            f1 = energy(x1);
        }
        else
        {
            x0 = x1;
            x1 = x2;
            f1 = f2;
            x2 = x0 + inv_phi * (x3 - x0);
            f2 = energy(x2);
        }
    }
    double best = 0.5 * (x0 + x3);
    if (best - lo < 2.0 * tol || hi - best < 2.0 * tol)
    {
        std::ostringstream os;
        os.precision(10);
        os << "no interior minimum in exponent bracket [" << lo << ", " << hi << "]";
        throw ValidationError(os.str());
    }
    return solve_variational(basis, best, Z);
}

//---------------------------------------------------------------------------//
namespace
{
struct Fit4
{
    double C, A;
};

Fit4 fit_divergence(const std::vector<double>& delta, const std::vector<double>& e)
{
    auto n = static_cast<Eigen::Index>(delta.size());
    Eigen::MatrixXd X(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        double x = delta[i];
        X(i, 0) = 1.0 / x;
        X(i, 1) = 1.0;
        X(i, 2) = x;
        X(i, 3) = x * x;
        y(i) = e[i];
    }
    Eigen::VectorXd scale = X.colwise().norm().cwiseInverse();
    Eigen::VectorXd beta = (X * scale.asDiagonal()).colPivHouseholderQr().solve(y);
    beta = beta.cwiseProduct(scale);
    return {beta(0), beta(1)};
}

std::optional<double> log_slope(const std::vector<double>& delta,
                                const std::vector<double>& e,
                                double A)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        double dy = std::abs(e[i] - A);
        if (!(dy > 0))
            continue;
        double x = std::log(delta[i]);
        double y = std::log(dy);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3)
        return std::nullopt;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RayFit fit_ray(const std::vector<double>& deltas,
               const std::function<std::optional<double>(double)>& sample)
{
    RayFit fit;
    std::vector<double> d, e;
    for (double delta : deltas)
    {
        auto v = sample(delta);
        if (!v)
        {
            ++fit.skipped;
            continue;
        }
        d.push_back(delta);
        e.push_back(*v);
    }
    fit.samples = static_cast<int>(d.size());
    if (fit.samples < 5)
        throw NumericalError("too few nonzero samples on a local-energy ray");
    auto f = fit_divergence(d, e);
    fit.coefficient = f.C;
    fit.constant = f.A;
    if (std::abs(f.C) > 1e-6)
        fit.divergence_exponent = log_slope(d, e, f.A);
    return fit;
}

void summarize(LineScan& line)
{
    double sum = 0;
    for (const auto& r : line.rays)
    {
        sum += r.coefficient;
        line.max_coefficient_error = std::max(line.max_coefficient_error,
                                              std::abs(r.coefficient - r.expected_coefficient));
    }
    line.mean_coefficient = sum / static_cast<double>(line.rays.size());
}

}  // namespace

LocalEnergyScan local_energy_scan(const TrialWavefunction& wf,
                                  double Z,
                                  bool include_ee,
                                  const LocalEnergySampling& sampling)
{
    validate(wf);
    if (sampling.rays_per_line < 1)
        throw ValidationError("need at least one ray per line");
    if (!(sampling.r_min > 0) || !(sampling.r_max >= sampling.r_min))
        throw ValidationError("ray radii must satisfy 0 < r_min <= r_max");

    std::vector<double> deltas = sampling.deltas;
    if (deltas.empty())
        for (int k = 0; k <= 12; ++k)
            deltas.push_back(std::pow(10.0, -1.0 - 0.25 * k));
    for (double d : deltas)
        if (!(d > 0) || d > 0.5 * sampling.r_min)
            throw ValidationError("ray offsets must lie in (0, r_min / 2]");

    std::mt19937_64 rng(sampling.seed);
    std::uniform_real_distribution<double> radius(sampling.r_min, sampling.r_max);
    std::uniform_real_distribution<double> angle(0.2 * std::numbers::pi, 0.8 * std::numbers::pi);

    auto energy_at = [&](double r1, double r2, double u) -> std::optional<double> {
        HylleraasPoint pt(r1, r2, u);
        auto d = derivatives(wf, pt);
        if (d.value == 0.0)
            return std::nullopt;
        return apply_hamiltonian(d, pt, Z, include_ee) / d.value;
    };

    LocalEnergyScan out;
    ContactProfile profile(wf);
    for (int k = 0; k < sampling.rays_per_line; ++k)
    {
        double r = radius(rng);
        double theta = angle(rng);
        auto fit = fit_ray(deltas, [&](double delta) {
            double u = std::sqrt(r * r + delta * delta - 2.0 * r * delta * std::cos(theta));
            u = std::clamp(u, std::abs(r - delta), r + delta);
            return energy_at(r, delta, u);
        });
        fit.r = r;
        fit.angle = theta;
        fit.expected_coefficient = -(Z + profile.dphi_dr2(r) / profile.phi(r));
        out.skipped += fit.skipped;
        out.nucleus.rays.push_back(fit);
    }
    for (int k = 0; k < sampling.rays_per_line; ++k)
    {
        double r = radius(rng);
        auto fit = fit_ray(deltas, [&](double delta) { return energy_at(r, r, delta); });
        fit.r = r;
        auto at_line = derivatives(wf, HylleraasPoint(r, r, 0.0));
        fit.expected_coefficient = (include_ee ? 1.0 : 0.0) - 2.0 * at_line.d_u / at_line.value;
        out.skipped += fit.skipped;
        out.electron.rays.push_back(fit);
    }
    summarize(out.nucleus);
    summarize(out.electron);
    return out;
}

}  // namespace coalesce
