#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

namespace coalesce
{
//---------------------------------------------------------------------------//
/*!
 * Configuration of a two-electron S state in Hylleraas coordinates.
 *
 * r1 and r2 are the electron-nucleus distances and u = |r1 - r2| is the
 * interelectron distance.  Valid points satisfy |r1 - r2| <= u <= r1 + r2.
 * The symmetric set s = r1 + r2, t = r1 - r2 is available as a view.
 */
class HylleraasPoint
{
  public:
    //! Validating constructor; throws ValidationError naming the violated
    //! inequality.
    HylleraasPoint(double r1, double r2, double u);

    double r1() const { return r1_; }
    double r2() const { return r2_; }
    double u() const { return u_; }
    double s() const { return r1_ + r2_; }
    double t() const { return r1_ - r2_; }

    //! True if no coordinate sits on a coalescence line.
    bool is_interior() const { return r1_ > 0 && r2_ > 0 && u_ > 0; }

    //! The same configuration with the electron labels exchanged.
    HylleraasPoint exchanged() const { return HylleraasPoint(r2_, r1_, u_); }

  private:
    double r1_;
    double r2_;
    double u_;
};

HylleraasPoint validate_point(double r1, double r2, double u);

//! One term c * s^l t^m u^n of a singlet Hylleraas expansion (m even).
struct BasisTerm
{
    int l{};
    int m{};
    int n{};
    double coefficient{1.0};

    friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

//! Largest power accepted in any single coordinate.
inline constexpr int max_basis_power = 12;

void validate_basis_term(const BasisTerm& term);

/*!
 * Integral of e^{-2 a s} s^l t^m u^n over the full S-state configuration
 * space, i.e. with volume element 2 pi^2 u (s^2 - t^2) ds dt du on
 * 0 <= t <= u <= s.  Closed form in factorials.
 */
double basis_integral(int l, int m, int n, double a);

/*!
 * Unweighted companion: 2 pi^2 times the integral of s^l t^m u^n e^{-alpha s}
 * over 0 <= t <= u <= s.  The factor 2 accounts for t in [-u, u]; odd m
 * therefore integrates to zero.
 */
double raw_integral(int l, int m, int n, double alpha);

//---------------------------------------------------------------------------//
//! Sparse polynomial in (s, t, u) with real coefficients.
class StuPolynomial
{
  public:
    using Powers = std::array<int, 3>;

    StuPolynomial() = default;
    static StuPolynomial monomial(int l, int m, int n, double c = 1.0);
    static StuPolynomial from_terms(std::span<const BasisTerm> terms);

    StuPolynomial& add(const Powers& powers, double c);
    StuPolynomial operator+(const StuPolynomial& other) const;
    StuPolynomial operator-(const StuPolynomial& other) const;
    StuPolynomial operator*(const StuPolynomial& other) const;
    StuPolynomial operator*(double c) const;

    //! Partial derivative; axis 0 = s, 1 = t, 2 = u.
    StuPolynomial derivative(int axis) const;

    double evaluate(double s, double t, double u) const;

    //! 2 pi^2 * integral of P(s,t,u) e^{-alpha s} over 0 <= t <= u <= s.
    double integrate_exponential(double alpha) const;

    const std::map<Powers, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

  private:
    std::map<Powers, double> terms_;
};

//---------------------------------------------------------------------------//
//! Value and first/second partials of Psi(r1, r2, u) at a point.
struct LocalDerivatives
{
    double value{};
    double d_r1{};
    double d_r2{};
    double d_u{};
    double d_r1r1{};
    double d_r2r2{};
    double d_uu{};
    double d_r1u{};
    double d_r2u{};
};

/*!
 * Apply the S-state two-electron Hamiltonian in Hylleraas coordinates.
 *
 * H = -1/2 (d2/dr1^2 + 2/r1 d/dr1) - 1/2 (d2/dr2^2 + 2/r2 d/dr2)
 *     - (d2/du^2 + 2/u d/du)
 *     - (r1^2 - r2^2 + u^2)/(2 r1 u) d2/dr1du
 *     - (r2^2 - r1^2 + u^2)/(2 r2 u) d2/dr2du
 *     - Z/r1 - Z/r2 [+ 1/u]
 *
 * The point must be interior: the caller takes coalescence limits.
 */
double apply_hamiltonian(const LocalDerivatives& d,
                         const HylleraasPoint& pt,
                         double Z,
                         bool include_ee);

}  // namespace coalesce
