#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coalesce/hylleraas.hpp"
#include "coalesce/wavefunction.hpp"

namespace coalesce
{
//---------------------------------------------------------------------------//
// Rayleigh-Ritz in a Hylleraas basis e^{-a s} s^l t^m u^n
//---------------------------------------------------------------------------//

struct RitzMatrices
{
    Eigen::MatrixXd H;
    Eigen::MatrixXd S;
};

/*!
 * Hamiltonian and overlap matrices in closed form.  Kinetic elements use
 * the gradient-gradient form, so nothing is differentiated across the
 * coalescence lines.  Term coefficients are ignored (each term is a basis
 * function).  Throws ValidationError naming the first linearly dependent
 * term if S is singular.
 */
RitzMatrices assemble_matrices(std::span<const BasisTerm> basis, double a, double Z);

struct Eigenpair
{
    double energy{};
    Eigen::VectorXd coefficients;  //!< normalized so that c^T S c = 1
    double condition_number{};     //!< of the diagonally scaled overlap
    std::optional<std::string> warning;
};

//! Condition numbers above this produce a warning in Eigenpair.
inline constexpr double ill_conditioned_overlap = 1e12;

//! Lowest generalized eigenpair of H c = E S c.
Eigenpair solve_ground_state(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S);

/*!
 * Lowest eigenvalue located by bisection on the inertia of H - E S: the
 * matrix is positive definite exactly when E lies below the ground state,
 * which a Cholesky attempt decides.  Shares no code with the eigensolver.
 */
double bisect_ground_state(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S, double tol = 1e-13);

struct VariationalResult
{
    double energy{};
    double a{};
    double Z{};
    std::vector<BasisTerm> terms;  //!< coefficients of the normalized state
    double N2{};                   //!< Psi(0,0,0), sign fixed positive
    double bisection_energy{};
    double condition_number{};
    std::optional<std::string> warning;

    HylleraasExpansion wavefunction() const { return {a, terms, true}; }
};

VariationalResult solve_variational(std::span<const BasisTerm> basis, double a, double Z);

//! Golden-section minimization of the ground-state energy over a in
//! [lo, hi].  Throws ValidationError when the minimum sits on the bracket.
VariationalResult optimize_exponent(std::span<const BasisTerm> basis,
                                    double Z,
                                    double lo,
                                    double hi,
                                    double tol = 1e-8);

//---------------------------------------------------------------------------//
// Local energy near the coalescence lines
//---------------------------------------------------------------------------//

struct LocalEnergySampling
{
    std::vector<double> deltas;  //!< empty: 13 geometric points 1e-1 ... 1e-4
    int rays_per_line{4};
    double r_min{0.4};
    double r_max{1.2};
    std::uint64_t seed{20061u};
};

/*!
 * One ray toward a coalescence line, fitted to
 *   E_L(delta) = C / delta + A + B delta + D delta^2.
 */
struct RayFit
{
    double r{};      //!< r1 of the ray (both radii on the u -> 0 line)
    double angle{};  //!< angle between r1 and r2 on the r2 -> 0 line
    double coefficient{};
    double constant{};
    //! Coefficient implied by the wave function's slope at the line.
    double expected_coefficient{};
    //! Slope of ln|E_L - A| against ln delta; set when C is nonzero.
    std::optional<double> divergence_exponent;
    int samples{};
    int skipped{};
};

struct LineScan
{
    std::vector<RayFit> rays;
    double mean_coefficient{};
    double max_coefficient_error{};  //!< max |C - expected|
};

struct LocalEnergyScan
{
    LineScan nucleus;   //!< r2 -> 0 at fixed r1
    LineScan electron;  //!< u -> 0 with r1 = r2
    int skipped{};
};

LocalEnergyScan local_energy_scan(const TrialWavefunction& wf,
                                  double Z,
                                  bool include_ee,
                                  const LocalEnergySampling& sampling = {});

}  // namespace coalesce
