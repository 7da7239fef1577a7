#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace coalesce
{
//---------------------------------------------------------------------------//
// Brute-force references for product hydrogenic states (b^3/pi) e^{-b(r1+r2)}
//---------------------------------------------------------------------------//

//! int e^{i p.r - b r} d^3r = 8 pi b / (b^2 + p^2)^2.
double ft_exponential(double b, double p);

/*!
 * PV int_0^inf g(q) / (p - q) dq by symmetric pairing about the pole.
 *
 * The window |q - p| < p/2 is folded onto [g(p - x) - g(p + x)] / x and
 * mapped with x = (p/2) y^3, which also tames a logarithmic singularity of
 * g at q = p.  `scale` is the width of the features of g near q = 0.
 */
double principal_value(const std::function<double(double)>& g,
                       double p,
                       double scale,
                       int nodes_per_panel = 16);

struct OracleResult
{
    double value{};
    double asymptotic{};  //!< leading-order formula at the same inputs
    double ratio{};       //!< value / asymptotic (0 when both vanish)
    double error_estimate{};
    int nodes_per_panel{};
};

/*!
 * Electron-nucleus term from second-order perturbation theory in momentum
 * space.  The polar angle between p' and p is done in closed form, leaving
 * a principal-value integral over |p'| through the on-shell pole |p'| = p.
 * The asymptotic reference is -16 pi Z ep J1 / p^4 with J1 = 8 pi b N^2/p^4.
 */
OracleResult f1n_bruteforce(double b, double Z, double p, double ep, int nodes_per_panel = 16);

/*!
 * Electron-electron term: momentum transfer k between the electrons, no
 * pole.  The equal-momentum configuration makes the k -> 0 region infrared
 * divergent as 1/k^4; the soft part factorizes onto the zeroth-order
 * overlap and is subtracted, leaving the correlation piece.  The reference
 * is -4 Lambda with Lambda = 4 pi^2 b N^2 ep / p^8.
 */
OracleResult f1e_bruteforce(double b, double p, double ep, int nodes_per_panel = 16);

//---------------------------------------------------------------------------//
struct PowerLawFit
{
    double amplitude{};
    double exponent{};
    double exponent_stderr{};
    double residual_norm{};  //!< of ln y
    std::vector<double> x;
    std::vector<double> y;
};

//! Least squares on (ln x, ln y).  Needs at least 3 points with x, y > 0
//! and two distinct abscissae.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

struct ExponentCandidate
{
    std::string name;
    int exponent{};
};

struct ExponentResolution
{
    PowerLawFit fit;
    int nearest_integer{};
    bool integer_within_tolerance{};  //!< |k - round(k)| <= 0.1
    bool inconclusive{};              //!< exponent_stderr > 0.1
    std::vector<ExponentCandidate> candidates;
    std::string matching_candidate;  //!< empty when none matches
    std::vector<double> ratio_to_reference;  //!< f1e / (-4 Lambda) per point
};

//! Fit |F1e(p)| over the given momenta (default 100 ... 1000) for a product
//! state of exponent b and compare against the competing p-power laws.
ExponentResolution resolve_f1e_exponent(double b, std::span<const double> momenta = {});

//! Exponent of |F1e| against Z at fixed p, with b = Z and N^2 = Z^3/pi.
PowerLawFit f1e_charge_scaling(std::span<const double> charges, double p);

}  // namespace coalesce
