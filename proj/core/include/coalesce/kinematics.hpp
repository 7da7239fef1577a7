#pragma once

#include <optional>

namespace coalesce
{
//---------------------------------------------------------------------------//
/*!
 * Electron-frame kinematics of radiative double capture.
 *
 * Two continuum electrons with equal momenta p are captured into the ground
 * state of a nucleus of charge Z and a single photon of energy
 * omega = 2 epsilon + I carries away the energy.  All fields are in atomic
 * units except the beam energy (MeV per nucleon).
 */
struct Kinematics
{
    double beam_energy{};  //!< MeV/u
    double Z{};
    std::optional<double> Z1;  //!< projectile-atom charge, informational
    double epsilon{};          //!< electron kinetic energy, p^2/2
    double p{};                //!< electron momentum
    double eta{};              //!< bound-state momentum scale (= Z)
    double xi{};               //!< Z/p
    double binding_energy{};   //!< I, two-electron binding energy (> 0)
    bool binding_energy_is_default{};  //!< true when I = Z^2 was assumed
    double omega{};                    //!< photon energy 2 epsilon + I
    double k_photon{};                 //!< photon momentum alpha*omega

    //! |2p - k| for photon emission at angle acos(cos_theta) to p.
    double momentum_transfer(double cos_theta) const;

    //! Single-electron binding energy Z^2/2 of the hydrogenic 1s state.
    double single_electron_binding() const { return 0.5 * Z * Z; }
};

//! Beam energy (MeV/u) to electron kinetic energy (a.u.).
double epsilon_from_beam_energy(double beam_energy);
//! Inverse of epsilon_from_beam_energy.
double beam_energy_from_epsilon(double epsilon);

/*!
 * Build kinematics from the beam energy per nucleon.
 *
 * When no binding energy is supplied the noninteracting two-electron value
 * I = Z^2 is used and flagged in binding_energy_is_default.
 */
Kinematics build_kinematics(double beam_energy,
                            double Z,
                            std::optional<double> binding_energy = {},
                            std::optional<double> Z1 = {});

//! Build kinematics directly from the electron momentum (used by scans,
//! which treat p and Z as free parameters).
Kinematics kinematics_from_momentum(double p,
                                    double Z,
                                    std::optional<double> binding_energy = {});

struct ValidityThresholds
{
    double xi_squared = 0.1;
    double dipole_ratio = 0.3;
    double relativity_ratio = 0.1;
};

struct ValidityWindow
{
    double ratio{};
    double threshold{};
    bool pass{};
};

//! Advisory check of the high-energy, dipole and nonrelativistic windows.
struct ValidityReport
{
    ValidityWindow xi_squared;      //!< (Z/p)^2 << 1
    ValidityWindow dipole_ratio;    //!< k_photon / eta << 1
    ValidityWindow relativity_ratio;  //!< epsilon alpha^2 << 1/2

    bool all_pass() const
    {
        return xi_squared.pass && dipole_ratio.pass && relativity_ratio.pass;
    }
};

ValidityReport validity(const Kinematics& kin, const ValidityThresholds& thresholds = {});

}  // namespace coalesce
