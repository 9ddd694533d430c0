#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace benford_kit {

/// Reads one value per non-blank line. The input is CSV with a header row
/// when `column` is given or when the first non-blank line contains a comma;
/// the column is matched by header name first, then as a 0-based index, and
/// defaults to the first column. Fields that do not parse as a decimal number
/// come back as NaN so the analysis tallies them as excluded.
/// Throws std::invalid_argument when the column cannot be resolved.
std::vector<double> read_dataset(std::istream& in, const std::optional<std::string>& column);

/// Splits a CSV record, honoring double quotes ("" inside quotes is a quote).
std::vector<std::string> split_csv(const std::string& line);

} // namespace benford_kit
