#ifndef CRITDAMP_CSV_HPP_
#define CRITDAMP_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace critdamp {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Decimal rendering of exp(log_value) - 1 for arguments whose value
/// overflows a double, e.g. "1.9700711140170469e+434".
std::string format_from_log1p(double log1p_value);

/// Parses a full-string floating-point field; throws std::invalid_argument.
double parse_double(std::string_view text);

/// Splits on commas; no quoting (all fields written here are numeric or
/// simple tokens).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace critdamp

#endif  // CRITDAMP_CSV_HPP_
