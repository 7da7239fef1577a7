#include <charconv>
#include <cmath>
#include <string>

#include "cli.hpp"
#include "coalesce/errors.hpp"

namespace coalesce::cli
{
namespace
{
std::string_view trim(std::string_view s)
{
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view s)
{
    s = trim(s);
    double out{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(out))
        throw ValidationError("not a number: '" + std::string(s) + "'");
    return out;
}

bool valid_key(std::string_view key)
{
    if (key.empty())
        return false;
    for (char c : key)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')
              || c == '-' || c == '_'))
            return false;
    return true;
}

}  // namespace

std::vector<double> parse_range(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw ValidationError("empty grid specification");

    std::vector<double> out;
    if (text.find(',') != std::string_view::npos)
    {
        std::size_t start = 0;
        while (start <= text.size())
        {
            auto end = text.find(',', start);
            if (end == std::string_view::npos)
                end = text.size();
            out.push_back(to_double(text.substr(start, end - start)));
            start = end + 1;
        }
        return out;
    }

    auto c1 = text.find(':');
    if (c1 == std::string_view::npos)
        return {to_double(text)};
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
        throw ValidationError("range needs lo:hi:step or lo:hi:logN, got '" + std::string(text) + "'");

    double lo = to_double(text.substr(0, c1));
    double hi = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    auto step = trim(text.substr(c2 + 1));
    if (!(hi >= lo))
        throw ValidationError("range upper end is below its lower end");

    if (step.substr(0, 3) == "log")
    {
        double n = to_double(step.substr(3));
        if (n < 2 || n != std::floor(n) || n > 100000)
            throw ValidationError("log range needs an integer point count of at least 2");
        if (!(lo > 0))
            throw ValidationError("log range needs a positive lower end");
        int count = static_cast<int>(n);
        double llo = std::log(lo);
        double lhi = std::log(hi);
        for (int k = 0; k < count; ++k)
            out.push_back(k == count - 1 ? hi : std::exp(llo + (lhi - llo) * k / (count - 1)));
        if (count > 0)
            out.front() = lo;
        return out;
    }

    double h = to_double(step);
    if (!(h > 0))
        throw ValidationError("range step must be positive");
    double span = (hi - lo) / h;
    if (span > 100000)
        throw ValidationError("range has too many points");
    auto count = static_cast<int>(std::floor(span + 1e-9)) + 1;
    for (int k = 0; k < count; ++k)
        out.push_back(lo + k * h);
    return out;
}

std::vector<std::string> parse_config(std::string_view text)
{
    std::vector<std::string> args;
    int line_no = 0;
    std::size_t start = 0;
    while (start < text.size())
    {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw ValidationError("config line " + std::to_string(line_no) + ": bad key '"
                                  + std::string(key) + "'");
        args.push_back("--" + std::string(key) + "=" + std::string(value));
    }
    return args;
}

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace coalesce::cli
