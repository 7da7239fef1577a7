#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "coalesce/errors.hpp"

using namespace coalesce;
namespace fs = std::filesystem;

namespace
{
struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("coalesce_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}
}  // namespace

TEST(Range, Syntax)
{
    EXPECT_EQ(cli::parse_range("2"), std::vector<double>{2.0});
    EXPECT_EQ(cli::parse_range("1, 2,5"), (std::vector<double>{1, 2, 5}));
    EXPECT_EQ(cli::parse_range("10:40:5"), (std::vector<double>{10, 15, 20, 25, 30, 35, 40}));
    auto lg = cli::parse_range("1000:10000:log8");
    ASSERT_EQ(lg.size(), 8u);
    EXPECT_EQ(lg.front(), 1000.0);
    EXPECT_EQ(lg.back(), 10000.0);
    EXPECT_NEAR(lg[1] / lg[0], std::pow(10.0, 1.0 / 7.0), 1e-12);
    EXPECT_THROW(cli::parse_range(""), ValidationError);
    EXPECT_THROW(cli::parse_range("5:1:1"), ValidationError);
    EXPECT_THROW(cli::parse_range("1:5"), ValidationError);
    EXPECT_THROW(cli::parse_range("1:5:0"), ValidationError);
    EXPECT_THROW(cli::parse_range("0:5:log3"), ValidationError);
    EXPECT_THROW(cli::parse_range("x"), ValidationError);
}

TEST(Config, FlatKeyValue)
{
    auto args = cli::parse_config("# comment\nZ = 2\n\np=1:3:1  # trailing\n");
    EXPECT_EQ(args, (std::vector<std::string>{"--Z=2", "--p=1:3:1"}));
    EXPECT_THROW(cli::parse_config("Z 2\n"), ValidationError);
    EXPECT_THROW(cli::parse_config("b@d=1\n"), ValidationError);
}

TEST(Format, SeventeenDigits)
{
    EXPECT_EQ(cli::format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(cli::format_number(2.0), "2");
}

TEST(ConvertUnits, HeliumAtOneMeV)
{
    auto r = run({"convert-units", "--beam-energy", "1.0", "--Z", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["epsilon_au"].get<double>(), 20.1607, 1e-4 * 20.1607);
    EXPECT_NEAR(j["p_au"].get<double>(), 6.3500, 1e-4 * 6.35);
    EXPECT_NEAR(j["xi"].get<double>(), 0.3150, 1e-3 * 0.315);
}

TEST(Cancel, ResidualOfDetunedProduct)
{
    auto r = run({"cancel", "--Z", "2", "--wf", "product-hydrogenic", "--b", "1.5", "--p", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["residual"].get<double>(), 0.5 / 3.5, 1e-6);
}

TEST(Amplitude, ClosedFormBreakdown)
{
    auto r = run({"amplitude", "--Z", "2", "--p", "10", "--f0-mode", "closed-form"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    auto a = j["amplitude"];
    EXPECT_NEAR(a["F1e"].get<double>(), -8.04248e-6, 1e-5 * 8.04248e-6);
    EXPECT_NEAR(a["F0_lin"].get<double>() + a["F1N"].get<double>(), 0.0, 1e-18);
    EXPECT_EQ(a["f0_mode"], "closed-form");
}

TEST(Solve, OneTermBasis)
{
    auto r = run({"solve", "--Z", "2", "--basis", "0,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["energy"].get<double>(), -2.84765625, 1e-8);
}

TEST(Scan, WritesCsvAndFits)
{
    auto dir = scratch_dir("scan");
    auto csv = dir / "scan.csv";
    auto r = run({"scan", "--Z", "10:40:5", "--p", "1000:10000:log8", "--wf", "product-hydrogenic",
                  "--out", csv.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto text = slurp(csv);
    EXPECT_EQ(text.substr(0, text.find('\n')), "Z,p_au,xi,J0,J1,F0lin,F1N,F1e,Lambda,F_total,residual");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 7 * 8);
    auto fits = nlohmann::json::parse(slurp(dir / "scan.fit.json"));
    EXPECT_FALSE(fits["fits"].empty());
}

TEST(Config, FileEntriesYieldToExplicitFlags)
{
    auto dir = scratch_dir("config");
    auto cfg = dir / "run.cfg";
    std::ofstream(cfg) << "Z = 3\nbeam-energy = 2.0\n";
    auto a = run({"convert-units", "--config", cfg.string()});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(nlohmann::json::parse(a.out)["Z"].get<double>(), 3.0);
    auto b = run({"convert-units", "--config", cfg.string(), "--Z", "5"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(nlohmann::json::parse(b.out)["Z"].get<double>(), 5.0);
}

TEST(ExitCodes, Errors)
{
    EXPECT_EQ(run({"bogus"}).code, cli::validation_error);
    EXPECT_EQ(run({"convert-units", "--beam-energy", "-1", "--Z", "2"}).code, cli::validation_error);
    EXPECT_EQ(run({"solve", "--Z", "2", "--basis", "0,0,0;0,0,0"}).code, cli::validation_error);
    EXPECT_EQ(run({"scan", "--Z", "2", "--p", "10,20"}).code, cli::validation_error);
    EXPECT_EQ(run({"convert-units", "--help"}).code, cli::success);
    auto missing = run({"amplitude", "--Z", "2", "--p", "10", "--wf-json", "/nonexistent/wf.json"});
    EXPECT_EQ(missing.code, cli::validation_error);
    EXPECT_FALSE(missing.err.empty());
}

TEST(Oracle, ExponentialTransform)
{
    auto r = run({"oracle", "--kind", "ft", "--b", "2", "--p", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 16.0 * std::acos(-1.0) / 10816.0, 1e-15);
}
