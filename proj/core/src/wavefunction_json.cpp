#include <charconv>
#include <string>

#include <json.hpp>

#include "coalesce/errors.hpp"
#include "coalesce/wavefunction.hpp"

namespace coalesce
{
namespace
{
using nlohmann::ordered_json;

std::string exact(double x)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double read_real(const ordered_json& j, const char* key)
{
    if (!j.contains(key))
        throw ValidationError(std::string("wave function payload is missing '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
    {
        const auto& s = v.get_ref<const std::string&>();
        double out{};
        auto res = std::from_chars(s.data(), s.data() + s.size(), out);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ValidationError(std::string("'") + key + "' is not a decimal number: " + s);
        return out;
    }
    throw ValidationError(std::string("'") + key + "' must be a number or decimal string");
}

double read_real_or(const ordered_json& j, const char* key, double fallback)
{
    return j.contains(key) ? read_real(j, key) : fallback;
}

int read_int(const ordered_json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ValidationError(std::string("basis term needs integer '") + key + "'");
    return j.at(key).get<int>();
}

}  // namespace

std::string wavefunction_to_json(const TrialWavefunction& wf)
{
    ordered_json j;
    j["variant"] = std::string(variant_name(wf));
    if (const auto* w = std::get_if<ProductHydrogenic>(&wf))
    {
        j["b"] = exact(w->b);
    }
    else if (const auto* h = std::get_if<HylleraasExpansion>(&wf))
    {
        j["a"] = exact(h->a);
        j["normalized"] = h->normalized;
        auto& terms = j["terms"] = ordered_json::array();
        for (const auto& t : h->terms)
            terms.push_back({{"l", t.l}, {"m", t.m}, {"n", t.n}, {"c", exact(t.coefficient)}});
    }
    else
    {
        const auto& f = std::get<LocalFockForm>(wf);
        j["Z"] = exact(f.Z);
        j["N2"] = exact(f.N2);
        j["c_r1"] = exact(f.c_r1);
        j["c_r2"] = exact(f.c_r2);
        j["c_u"] = exact(f.c_u);
        const auto& q = f.second_order;
        j["second_order"] = {{"r1_sq", exact(q.r1_sq)},
                             {"r2_sq", exact(q.r2_sq)},
                             {"u_sq", exact(q.u_sq)},
                             {"R2_log_R", exact(q.R2_log_R)},
                             {"provenance", q.provenance}};
        if (f.envelope_radius)
            j["envelope_radius"] = exact(*f.envelope_radius);
        else
            j["envelope_radius"] = nullptr;
    }
    return j.dump(2);
}

TrialWavefunction wavefunction_from_json(std::string_view text)
{
    ordered_json j;
    try
    {
        j = ordered_json::parse(text);
    }
    catch (const ordered_json::parse_error& e)
    {
        throw ValidationError(std::string("malformed wave function JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
        throw ValidationError("wave function JSON needs a string 'variant'");

    auto variant = j["variant"].get<std::string>();
    TrialWavefunction wf;
    if (variant == "product-hydrogenic")
    {
        wf = ProductHydrogenic{read_real(j, "b")};
    }
    else if (variant == "hylleraas")
    {
        HylleraasExpansion h;
        h.a = read_real(j, "a");
        h.normalized = j.value("normalized", false);
        if (!j.contains("terms") || !j["terms"].is_array())
            throw ValidationError("Hylleraas payload needs a 'terms' array");
        for (const auto& t : j["terms"])
            h.terms.push_back({read_int(t, "l"), read_int(t, "m"), read_int(t, "n"),
                               read_real_or(t, "c", 1.0)});
        wf = std::move(h);
    }
    else if (variant == "local-fock")
    {
        double Z = read_real(j, "Z");
        auto f = LocalFockForm::with_defaults(Z, read_real_or(j, "N2", 1.0));
        f.c_r1 = read_real_or(j, "c_r1", f.c_r1);
        f.c_r2 = read_real_or(j, "c_r2", f.c_r2);
        f.c_u = read_real_or(j, "c_u", f.c_u);
        if (j.contains("second_order"))
        {
            const auto& q = j["second_order"];
            f.second_order.r1_sq = read_real_or(q, "r1_sq", 0.0);
            f.second_order.r2_sq = read_real_or(q, "r2_sq", 0.0);
            f.second_order.u_sq = read_real_or(q, "u_sq", 0.0);
            f.second_order.R2_log_R = read_real_or(q, "R2_log_R", 0.0);
            f.second_order.provenance = q.value("provenance", std::string{});
        }
        if (j.contains("envelope_radius"))
        {
            if (j["envelope_radius"].is_null())
                f.envelope_radius.reset();
            else
                f.envelope_radius = read_real(j, "envelope_radius");
        }
        wf = f;
    }
    else
    {
        throw ValidationError("unknown wave function variant '" + variant + "'");
    }
    validate(wf);
    return wf;
}

}  // namespace coalesce
