#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coalesce/hylleraas.hpp"

namespace coalesce
{
//---------------------------------------------------------------------------//
// Trial wave functions
//---------------------------------------------------------------------------//

//! Normalized product of hydrogenic 1s orbitals: (b^3/pi) e^{-b (r1 + r2)}.
struct ProductHydrogenic
{
    double b{};
};

//! e^{-a s} * sum_k c_k s^l t^m u^n.  When `normalized` is false the
//! coefficients are taken as given and normalization is computed on demand.
struct HylleraasExpansion
{
    double a{};
    std::vector<BasisTerm> terms;
    bool normalized{false};
};

//! User-supplied second-order coefficients of the expansion about the
//! triple coalescence point.  Defaults are zero; `provenance` records where
//! the numbers came from.
struct SecondOrderFock
{
    double r1_sq{};
    double r2_sq{};
    double u_sq{};
    double R2_log_R{};  //!< coefficient of R^2 ln R, R = sqrt(r1^2 + r2^2)
    std::string provenance;

    bool any() const { return r1_sq != 0 || r2_sq != 0 || u_sq != 0 || R2_log_R != 0; }
};

inline constexpr double default_envelope_radius = 4.0;

/*!
 * Near-origin model of the exact ground state.
 *
 *   Psi = N2 exp(c_r1 r1 + c_r2 r2 + c_u u)
 *            * (1 + q1 r1^2 + q2 r2^2 + qu u^2 + qlog R^2 ln R) * w(R)
 *
 * Expanded to first order this is N2 (1 + c_r1 r1 + c_r2 r2 + c_u u); the
 * defaults (-Z, -Z, 1/2) are the electron-nucleus and electron-electron
 * cusps.  Because the linear part sits in the exponent and every
 * second-order term has vanishing normal derivative on both coalescence
 * lines, the cusp ratios hold exactly along r2 = 0 and u = 0, not only at
 * the origin.
 *
 * w(R) = exp(-R^2 / (Rc (Rc + R))) is flat (1 - R^2/Rc^2) inside the cutoff
 * radius Rc and decays as e^{-R/Rc} beyond it.  It has no linear term, so
 * the leading high-momentum behavior is independent of Rc.
 */
struct LocalFockForm
{
    double Z{};
    double N2{};
    double c_r1{};
    double c_r2{};
    double c_u{};
    SecondOrderFock second_order;
    std::optional<double> envelope_radius;

    static LocalFockForm with_defaults(double Z,
                                       double N2,
                                       std::optional<double> envelope_radius
                                       = default_envelope_radius);

    //! N2 (1 + c_r1 r1 + c_r2 r2 + c_u u): the truncated linear expansion.
    double linear_expansion(double r1, double r2, double u) const
    {
        return N2 * (1.0 + c_r1 * r1 + c_r2 * r2 + c_u * u);
    }
};

using TrialWavefunction = std::variant<ProductHydrogenic, HylleraasExpansion, LocalFockForm>;

//! Variant name used in JSON payloads and CLI flags.
std::string_view variant_name(const TrialWavefunction& wf);

//! Throws ValidationError if the payload is inconsistent (nonpositive
//! exponents, asymmetric Fock coefficients, bad basis terms).
void validate(const TrialWavefunction& wf);

//! Asymptotic decay rate kappa with |Psi| <~ poly * e^{-kappa (r1 + r2)}.
//! Nonpositive means not square-integrable.
double decay_rate(const TrialWavefunction& wf);

//! Copy scaled to unit norm.  LocalFockForm is returned unchanged because
//! its N2 is a model input.
TrialWavefunction normalized(const TrialWavefunction& wf);

//---------------------------------------------------------------------------//
// Pointwise evaluation
//---------------------------------------------------------------------------//

double evaluate(const TrialWavefunction& wf, const HylleraasPoint& pt);

LocalDerivatives derivatives(const TrialWavefunction& wf, const HylleraasPoint& pt);

//! H Psi at an interior point (see coalesce::apply_hamiltonian).
double apply_hamiltonian(const TrialWavefunction& wf,
                         const HylleraasPoint& pt,
                         double Z,
                         bool include_ee);

//! H Psi / Psi.
double local_energy(const TrialWavefunction& wf,
                    const HylleraasPoint& pt,
                    double Z,
                    bool include_ee);

namespace detail
{
//! Analytic formula without domain checks; for finite-difference oracles.
double evaluate_unchecked(const TrialWavefunction& wf, double r1, double r2, double u);
}  // namespace detail

//---------------------------------------------------------------------------//
// Contact line r2 = 0, u = r1
//---------------------------------------------------------------------------//

struct ContactValues
{
    double phi{};       //!< Psi(r, 0, r)
    double dphi_dr2{};  //!< dPsi/dr2 at fixed r1, u, evaluated at (r, 0, r)
    double dphi_dr{};   //!< total derivative of phi along r
};

/*!
 * Closed-form contact profiles of a trial function.
 *
 * Every supported variant restricts on the contact line to
 *   E(r) w(r) [poly(r) + q_log r^2 ln r]
 * with E an exponential, which continues analytically into the first
 * quadrant of complex r.  The complex overloads feed the rotated-contour
 * sine transform.
 */
class ContactProfile
{
  public:
    explicit ContactProfile(const TrialWavefunction& wf);

    double phi(double r) const;
    double dphi_dr2(double r) const;
    double dphi_dr(double r) const;

    std::complex<double> phi(std::complex<double> r) const;
    std::complex<double> dphi_dr2(std::complex<double> r) const;

    //! Decay rate of the profile along r (for quadrature scaling).
    double decay_rate() const { return decay_; }

    //! -phi'(0): the slope entering the leading high-momentum law.
    double origin_slope() const { return -dphi_dr(0.0); }

    struct Form
    {
        std::vector<double> poly;  //!< coefficients of r^k
        double exponent{};         //!< E(r) = exp(exponent * r)
        double log_coefficient{};  //!< coefficient of r^2 ln r inside bracket
        std::optional<double> envelope_radius;

        template<class T>
        T value(T r) const;
        double derivative(double r) const;
    };

  private:
    Form phi_;
    Form dr2_;
    double decay_{};
};

ContactValues contact_profile(const TrialWavefunction& wf, double r);

//---------------------------------------------------------------------------//
// Normalization, N^2 and cusp diagnostics
//---------------------------------------------------------------------------//

//! <Psi|Psi>.  Closed form for product and Hylleraas variants; fixed-grid
//! quadrature for LocalFockForm.  Throws ValidationError for non-decaying
//! functions.
double overlap_norm(const TrialWavefunction& wf);

//! Psi(0,0,0) of the normalized wave function (LocalFockForm: stored N2).
double n_squared(const TrialWavefunction& wf);

struct CuspSample
{
    double r{};
    std::optional<double> en_ratio;  //!< dPsi/dr2 / Psi at (r, 0, r)
    std::optional<double> ee_ratio;  //!< dPsi/du / Psi at (r, r, 0)
};

struct CuspReport
{
    double en_target{};  //!< -Z
    double ee_target{0.5};
    std::vector<CuspSample> samples;
    double max_en_deviation{};
    double max_ee_deviation{};
    std::vector<double> flagged_radii;  //!< where Psi vanished
};

CuspReport cusp_report(const TrialWavefunction& wf, double Z, const std::vector<double>& radii);

//---------------------------------------------------------------------------//
// Expansion about the triple coalescence point
//---------------------------------------------------------------------------//

/*!
 * Second-order expansion of the normalized function about r1 = r2 = 0:
 *
 *   c0 + c_r (r1 + r2) + c_u u + q_rr (r1^2 + r2^2) + q_r1r2 r1 r2
 *      + q_ru (r1 + r2) u + q_uu u^2 + q_log R^2 ln R
 */
struct FockExpansion
{
    double c0{};
    double c_r{};
    double c_u{};
    double q_rr{};
    double q_r1r2{};
    double q_ru{};
    double q_uu{};
    double q_log{};
};

FockExpansion fock_expansion(const TrialWavefunction& wf);

//---------------------------------------------------------------------------//
// JSON payloads
//---------------------------------------------------------------------------//

//! Serialize with every real written as a 17-significant-digit string.
std::string wavefunction_to_json(const TrialWavefunction& wf);

//! Parse a payload; reals may be JSON numbers or decimal strings.
TrialWavefunction wavefunction_from_json(std::string_view text);

}  // namespace coalesce
