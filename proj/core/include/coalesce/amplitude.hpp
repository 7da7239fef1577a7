#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalesce/kinematics.hpp"
#include "coalesce/quadrature.hpp"
#include "coalesce/wavefunction.hpp"

namespace coalesce
{
//! Polarization contraction (e.p) of the dipole photon vertex.  Every
//! amplitude is linear in it; overall coupling constants are dropped.
struct PhotonCoupling
{
    double ep{1.0};
    bool dipole{true};
};

//---------------------------------------------------------------------------//
// Contact Fourier integrals
//---------------------------------------------------------------------------//

struct ContactIntegrals
{
    double J0{};  //!< transform of dPsi/dr2 on the contact line
    double J1{};  //!< transform of phi
    double error_estimate{};  //!< largest relative error of the two
};

/*!
 * J = (4 pi / p) int_0^inf r sin(p r) g(r) dr with g = dphi_dr2 (J0) and
 * g = phi (J1).  Every profile is analytic off the real axis, so the
 * transform is taken on the rotated contour, which keeps full relative
 * accuracy at any p.
 */
ContactIntegrals contact_fourier(const TrialWavefunction& wf, double p);

//---------------------------------------------------------------------------//
// Amplitude components
//---------------------------------------------------------------------------//

enum class F0Mode
{
    none,         //!< leading-order F0_lin only
    bruteforce,   //!< full six-dimensional overlap by quadrature
    closed_form,  //!< product hydrogenic only
    fock_series,  //!< term-by-term transform of the expansion at the origin
};

std::string_view to_string(F0Mode mode);
F0Mode f0_mode_from_string(std::string_view name);

struct AmplitudeBreakdown
{
    double Z{};
    double p{};
    double ep{};
    double N2{};
    double J0{};
    double J1{};
    //! 8 pi Z N^2 / p^4: the high-momentum J1 with slope Z
    double J1_asymptotic_nominal{};
    //! 8 pi (-phi'(0)) / p^4: the same law with the profile's own slope
    double J1_asymptotic_slope{};
    double F0_lin{};
    double F1N{};
    double F1e{};
    double Lambda{};
    std::optional<double> F0_full;
    std::optional<double> F0_error;
    double F_total{};
    double cancellation_residual{};
    F0Mode f0_mode{F0Mode::none};
    double quadrature_error{};
    std::vector<std::string> warnings;
};

//! |J0 + Z J1| / (|J0| + Z |J1|).
double cancellation_residual(const ContactIntegrals& j, double Z);
double cancellation_residual(const TrialWavefunction& wf, double Z, double p);

/*!
 * F0_lin = -16 pi ep J0 / p^4, F1N = -16 pi Z ep J1 / p^4,
 * Lambda = 4 pi^2 Z N^2 ep / p^8, F1e = -4 Lambda.
 * F_total = F0_lin + F1N + F1e (F0_full is left empty).
 */
AmplitudeBreakdown component_amplitudes(const TrialWavefunction& wf,
                                        const Kinematics& kin,
                                        const PhotonCoupling& coupling);

struct F0Result
{
    double value{};
    double error_estimate{};
    std::string method;
};

struct F0Grid
{
    double range_in_decay_lengths{18.0};
    double max_panel{0.5};  //!< in decay lengths
    int nodes_per_panel{14};
};

/*!
 * F0 = 2 ep int d^3r1 d^3r2 Psi e^{i p.(r1 + r2)}.
 *
 * Product states use the factorized closed form unless force_quadrature
 * is set.  Otherwise the two trivial angles are integrated exactly:
 *
 *   8 pi^2 int r1 r2 u Psi(r1, r2, u) j0(p Q) dr1 dr2 du,
 *   Q^2 = 2 r1^2 + 2 r2^2 - u^2,
 *
 * on a fixed Gauss-Legendre grid whose panels resolve both the decay and
 * the oscillation.  The error estimate compares two node counts; a result
 * worse than 1% throws NumericalError carrying the value.
 */
F0Result f0_bruteforce(const TrialWavefunction& wf,
                       double p,
                       double ep,
                       bool force_quadrature = false,
                       const F0Grid& grid = {});

/*!
 * Leading F0 from the expansion about the triple coalescence point.  Only
 * the terms that are non-analytic jointly in r1 and r2 survive the
 * transform at nonzero total momentum:
 *
 *   r1 r2           ->  64 pi^2 / p^8
 *   (r1 + r2) u     ->   8 pi^2 / p^8
 *   R^2 ln R        ->  48 pi^3 / p^8
 */
double f0_fock_series(const FockExpansion& f, double p, double ep);

AmplitudeBreakdown total_amplitude(const TrialWavefunction& wf,
                                   const Kinematics& kin,
                                   const PhotonCoupling& coupling,
                                   F0Mode mode);

}  // namespace coalesce
