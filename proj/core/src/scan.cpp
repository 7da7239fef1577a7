#include "coalesce/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "coalesce/constants.hpp"
#include "coalesce/errors.hpp"
#include "coalesce/variational.hpp"

namespace coalesce
{
std::string_view to_string(WavefunctionFamily family)
{
    switch (family)
    {
        case WavefunctionFamily::product_hydrogenic: return "product-hydrogenic";
        case WavefunctionFamily::hylleraas: return "hylleraas";
        case WavefunctionFamily::local_fock: return "local-fock";
    }
    return "product-hydrogenic";
}

WavefunctionFamily family_from_string(std::string_view name)
{
    for (auto f : {WavefunctionFamily::product_hydrogenic, WavefunctionFamily::hylleraas,
                   WavefunctionFamily::local_fock})
        if (to_string(f) == name)
            return f;
    throw ValidationError("unknown wave function family '" + std::string(name) + "'");
}

TrialWavefunction family_member(WavefunctionFamily family, double Z)
{
    if (!(Z > 0))
        throw ValidationError("nuclear charge must be positive");
    switch (family)
    {
        case WavefunctionFamily::product_hydrogenic:
            return ProductHydrogenic{Z};
        case WavefunctionFamily::hylleraas:
        {
            const std::vector<BasisTerm> basis{{0, 0, 0}, {0, 0, 1}, {0, 2, 0}};
            return optimize_exponent(basis, Z, 0.5 * Z, 1.5 * Z).wavefunction();
        }
        case WavefunctionFamily::local_fock:
            return LocalFockForm::with_defaults(Z, Z * Z * Z / constants::pi);
    }
    throw ValidationError("unknown wave function family");
}

unsigned worker_count(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("COALESCE_THREADS"))
    {
        unsigned n = 0;
        auto end = env + std::char_traits<char>::length(env);
        auto res = std::from_chars(env, end, n);
        if (res.ec == std::errc{} && res.ptr == end && n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{
template<class F>
void parallel_for(std::size_t n, unsigned threads, F&& body)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<double> sorted_unique(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

ScanResult parameter_scan(const ScanGrid& grid,
                          WavefunctionFamily family,
                          const ScanOptions& options)
{
    auto Zs = sorted_unique(grid.Z);
    auto ps = sorted_unique(grid.p);
    if (Zs.empty() || ps.empty())
        throw ValidationError("scan grid needs at least one Z and one p");
    if (Zs.size() < 3 && ps.size() < 3)
        throw ValidationError("scan grid needs at least 3 points along Z or p for a fit");

    F0Mode mode = options.f0_mode.value_or(family == WavefunctionFamily::product_hydrogenic
                                               ? F0Mode::closed_form
                                               : F0Mode::fock_series);
    unsigned threads = worker_count(options.threads);

    std::vector<TrialWavefunction> members(Zs.size());
    parallel_for(Zs.size(), threads, [&](std::size_t i) { members[i] = family_member(family, Zs[i]); });

    ScanResult out;
    out.rows.resize(Zs.size() * ps.size());
    parallel_for(out.rows.size(), threads, [&](std::size_t k) {
        std::size_t iz = k / ps.size();
        std::size_t ip = k % ps.size();
        auto kin = kinematics_from_momentum(ps[ip], Zs[iz]);
        auto& row = out.rows[k];
        row.Z = Zs[iz];
        row.p = ps[ip];
        row.xi = kin.xi;
        row.amplitude = total_amplitude(members[iz], kin, options.coupling, mode);
    });

    if (Zs.size() >= 3)
    {
        for (std::size_t ip = 0; ip < ps.size(); ++ip)
        {
            std::vector<double> f1n, f1e;
            for (std::size_t iz = 0; iz < Zs.size(); ++iz)
            {
                const auto& a = out.rows[iz * ps.size() + ip].amplitude;
                f1n.push_back(std::abs(a.F1N));
                f1e.push_back(std::abs(a.F1e));
            }
            if (options.coupling.ep == 0.0)
                continue;
            out.fits.push_back({"F1N", "Z", ps[ip], fit_power_law(Zs, f1n)});
            out.fits.push_back({"F1e", "Z", ps[ip], fit_power_law(Zs, f1e)});
        }
    }
    if (ps.size() >= 3)
    {
        for (std::size_t iz = 0; iz < Zs.size(); ++iz)
        {
            std::vector<double> f1n, f1e;
            for (std::size_t ip = 0; ip < ps.size(); ++ip)
            {
                const auto& a = out.rows[iz * ps.size() + ip].amplitude;
                f1n.push_back(std::abs(a.F1N));
                f1e.push_back(std::abs(a.F1e));
            }
            if (options.coupling.ep == 0.0)
                continue;
            out.fits.push_back({"F1N", "p", Zs[iz], fit_power_law(ps, f1n)});
            out.fits.push_back({"F1e", "p", Zs[iz], fit_power_law(ps, f1e)});
        }
    }
    return out;
}

}  // namespace coalesce
