#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace coalesce
{
//---------------------------------------------------------------------------//
// Infinite-range sine transforms  I(p) = int_0^inf r sin(p r) g(r) dr
//---------------------------------------------------------------------------//

struct OscillatoryContract
{
    double rel_tol{1e-9};
    int max_lobes{200000};
    int nodes_per_panel{16};
};

struct OscillatoryResult
{
    double value{};
    double error_estimate{};
    int lobes{};  //!< half-periods summed (real-axis route) or panels (contour)
};

/*!
 * Real-axis route: integrate between consecutive zeros k pi / p of the
 * sine, subdividing each lobe on the scale 1/decay_scale of g, and
 * accelerate the alternating partial sums with Wynn's epsilon algorithm.
 *
 * Works for any decaying g but loses relative accuracy at large p, where
 * the lobes cancel to many digits.  Throws NumericalError when the
 * contract tolerance is not reached within max_lobes.
 */
OscillatoryResult oscillatory_integral_1d(const std::function<double(double)>& g,
                                          double p,
                                          double decay_scale,
                                          const OscillatoryContract& contract = {});

/*!
 * Rotated-contour route for g analytic and decaying in the closed first
 * quadrant:
 *
 *   I(p) = -(1/p^2) int_0^inf x e^{-x} Im g(i x / p) dx.
 *
 * The integrand no longer oscillates against a cancelling background, so
 * full relative accuracy holds for every p.  decay_scale bounds the
 * oscillation frequency of g along the imaginary axis.
 */
OscillatoryResult sine_transform_contour(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    double p,
    double decay_scale,
    const OscillatoryContract& contract = {});

//! Limit of the Wynn epsilon table for a sequence of partial sums.
//! Returns the last diagonal estimate and the change between the last two.
std::pair<double, double> wynn_epsilon(const std::vector<double>& partial_sums);

}  // namespace coalesce
