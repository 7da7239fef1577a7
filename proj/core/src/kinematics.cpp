#include "coalesce/kinematics.hpp"

#include <cmath>
#include <string>

#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"

namespace coalesce
{
namespace
{
constexpr double ev_to_hartree = 1.0 / constants::hartree_ev;

Kinematics fill(double epsilon, double Z, std::optional<double> binding_energy)
{
    if (!(Z >= 1.0))
        throw ValidationError("nuclear charge Z must be >= 1, got " + std::to_string(Z));
    if (binding_energy && !(*binding_energy >= 0.0))
        throw ValidationError("binding energy I must be nonnegative");

    Kinematics kin;
    kin.Z = Z;
    kin.epsilon = epsilon;
    kin.p = std::sqrt(2.0 * epsilon);
    kin.eta = Z;
    kin.xi = Z / kin.p;
    kin.binding_energy_is_default = !binding_energy.has_value();
    kin.binding_energy = binding_energy.value_or(Z * Z);
    kin.omega = 2.0 * epsilon + kin.binding_energy;
    kin.k_photon = constants::fine_structure * kin.omega;
    kin.beam_energy = beam_energy_from_epsilon(epsilon);
    return kin;
}
}  // namespace

double epsilon_from_beam_energy(double beam_energy)
{
    return beam_energy * constants::ev_per_mev * constants::electron_to_nucleon_mass
           * ev_to_hartree;
}

double beam_energy_from_epsilon(double epsilon)
{
    return epsilon * constants::hartree_ev
           / (constants::ev_per_mev * constants::electron_to_nucleon_mass);
}

double Kinematics::momentum_transfer(double cos_theta) const
{
    double two_p = 2.0 * p;
    return std::sqrt(std::max(0.0,
                              two_p * two_p + k_photon * k_photon
                                  - 2.0 * two_p * k_photon * cos_theta));
}

Kinematics build_kinematics(double beam_energy,
                            double Z,
                            std::optional<double> binding_energy,
                            std::optional<double> Z1)
{
    if (!(beam_energy > 0.0))
        throw ValidationError("beam energy must be positive, got "
                              + std::to_string(beam_energy));
    Kinematics kin = fill(epsilon_from_beam_energy(beam_energy), Z, binding_energy);
    kin.beam_energy = beam_energy;
    kin.Z1 = Z1;
    return kin;
}

Kinematics kinematics_from_momentum(double p, double Z, std::optional<double> binding_energy)
{
    if (!(p > 0.0))
        throw ValidationError("electron momentum must be positive");
    return fill(0.5 * p * p, Z, binding_energy);
}

ValidityReport validity(const Kinematics& kin, const ValidityThresholds& thresholds)
{
    auto window = [](double ratio, double threshold) {
        return ValidityWindow{ratio, threshold, ratio < threshold};
    };
    double alpha = constants::fine_structure;
    ValidityReport report;
    report.xi_squared = window(kin.xi * kin.xi, thresholds.xi_squared);
    report.dipole_ratio = window(kin.eta > 0 ? kin.k_photon / kin.eta : 0.0,
                                 thresholds.dipole_ratio);
    report.relativity_ratio = window(kin.epsilon * alpha * alpha, thresholds.relativity_ratio);
    return report;
}

}  // namespace coalesce
