#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the CSV, config and report code paths.
namespace fuzzsig::text {

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed notation with `digits` decimals.
std::string format_fixed(double value, int digits);

/// Strict: the whole field must be a finite decimal number.
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

/// Half-up rounding applied to the shortest decimal representation, so that
/// 0.35 rounds to 0.4 even though the nearest double is slightly below 0.35.
double round_half_up(double value, int digits);

std::string_view trim(std::string_view s);

/// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view field);

}  // namespace fuzzsig::text
