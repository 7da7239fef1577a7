#pragma once

#include <functional>

#include "coalesce/wavefunction.hpp"

namespace coalesce::reference
{
/*!
 * 8 pi^2 int r1 r2 u f(r1, r2, u) over the S-state domain with r1, r2 <=
 * r_max, by nested adaptive Gauss-Kronrod.  Shares no code with the
 * library's fixed grids.
 */
double configuration_integral(const std::function<double(double, double, double)>& f,
                              double r_max,
                              double tol = 1e-11);

/*!
 * H Psi from a fourth-order central-difference Laplacian in the six
 * Cartesian electron coordinates.  The configuration is placed with r1 on
 * the x axis and r2 in the xy plane.
 */
double finite_difference_hamiltonian(const TrialWavefunction& wf,
                                     double r1,
                                     double r2,
                                     double u,
                                     double Z,
                                     bool include_ee,
                                     double h = 1e-3);

//! Richardson-extrapolated central difference of f at x with step h.
double richardson_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace coalesce::reference
