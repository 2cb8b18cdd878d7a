#pragma once

// Locale-independent number formatting and the three output dialects.

#include <ostream>
#include <string>
#include <vector>

namespace qdk::cli {

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& name);

/// Fixed notation with 6 decimals in the classic locale; values that would
/// print as -0.000000 print as 0.000000.
std::string fixed6(double v);

/// Rounded to 6 decimals, for JSON numbers.
double round6(double v);

/// Comma-separated row terminated by a single LF. Fields are written as
/// given; none of ours need quoting.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Two-column table: label left-aligned, value right-aligned.
void write_text_row(std::ostream& out, const std::string& label, const std::string& value);

}  // namespace qdk::cli
