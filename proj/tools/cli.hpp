#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coalesce::cli
{
//! Exit codes of the command-line front end.
enum ExitCode : int
{
    success = 0,
    unexpected = 1,
    validation_error = 2,
    numerical_error = 3,
};

/*!
 * Run one subcommand.  `args` excludes the program name.  Artifacts go to
 * the paths given by --out (or `out` when absent); diagnostics go to `err`.
 */
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/*!
 * Grid syntax shared by --Z and --p:
 *   "2"              single value
 *   "1,2,5"          list
 *   "10:40:5"        lo to hi inclusive in steps of 5
 *   "1000:10000:log8"  8 logarithmically spaced points, both ends included
 */
std::vector<double> parse_range(std::string_view text);

/*!
 * Flat key=value configuration.  One entry per line; '#' starts a comment;
 * blank lines are ignored; keys are long option names without dashes.
 * Returns "--key=value" arguments in file order.
 */
std::vector<std::string> parse_config(std::string_view text);

//! Shortest form with 17 significant digits, '.' decimal point, no locale.
std::string format_number(double x);

}  // namespace coalesce::cli
