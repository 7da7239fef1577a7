#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalesce/amplitude.hpp"
#include "coalesce/oracle.hpp"

namespace coalesce
{
enum class WavefunctionFamily
{
    product_hydrogenic,  //!< b = Z
    hylleraas,           //!< {1, u, t^2} with the exponent optimized per Z
    local_fock,          //!< default cusps, N2 = Z^3 / pi
};

std::string_view to_string(WavefunctionFamily family);
WavefunctionFamily family_from_string(std::string_view name);

//! Member of a family at nuclear charge Z.
TrialWavefunction family_member(WavefunctionFamily family, double Z);

struct ScanGrid
{
    std::vector<double> Z;
    std::vector<double> p;
};

struct ScanOptions
{
    PhotonCoupling coupling;
    //! Closed form for product states and the Fock series otherwise.
    std::optional<F0Mode> f0_mode;
    //! Worker count; 0 reads COALESCE_THREADS, falling back to hardware.
    unsigned threads{0};
};

struct ScanRow
{
    double Z{};
    double p{};
    double xi{};
    AmplitudeBreakdown amplitude;
};

struct ScanFit
{
    std::string quantity;  //!< "F1N" or "F1e"
    std::string variable;  //!< "Z" or "p"
    double fixed_value{};  //!< p for Z fits, Z for p fits
    PowerLawFit fit;
};

struct ScanResult
{
    std::vector<ScanRow> rows;  //!< sorted by (Z, p)
    std::vector<ScanFit> fits;
};

unsigned worker_count(unsigned requested = 0);

/*!
 * Amplitude breakdown on every (Z, p) point plus log-log exponents of |F1N|
 * and |F1e| against Z at each fixed p and against p at each fixed Z (for
 * axes with at least three points).  Rows come out sorted by (Z, p) and do
 * not depend on the worker count.
 */
ScanResult parameter_scan(const ScanGrid& grid,
                          WavefunctionFamily family,
                          const ScanOptions& options = {});

}  // namespace coalesce
