#include "fuzzsig/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace fuzzsig::text {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int digits) {
  std::array<char, 64> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
  std::string out(buf.data(), ptr);
  if (out.starts_with("-") && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value,
                                   std::chars_format::general);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::optional<long long> parse_int(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

double round_half_up(double value, int digits) {
  // Work on the exact shortest decimal digits rather than on value * 10^digits.
  std::array<char, 64> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), std::fabs(value), std::chars_format::fixed);
  std::string s(buf.data(), ptr);
  const auto dot = s.find('.');
  std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? std::string{} : s.substr(dot + 1);
  frac.resize(static_cast<std::size_t>(digits) + 1, '0');
  const bool round_up = frac.back() >= '5';
  frac.pop_back();
  std::string digits_str = whole + frac;
  if (round_up) {
    int i = static_cast<int>(digits_str.size()) - 1;
    while (i >= 0) {
      if (digits_str[i] == '9') {
        digits_str[i] = '0';
        --i;
      } else {
        ++digits_str[i];
        break;
      }
    }
    if (i < 0) digits_str.insert(digits_str.begin(), '1');
  }
  const auto split = digits_str.size() - static_cast<std::size_t>(digits);
  std::string rebuilt = digits_str.substr(0, split);
  if (digits > 0) rebuilt += "." + digits_str.substr(split);
  double out = *parse_double(rebuilt);
  return value < 0 ? -out : out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

}  // namespace fuzzsig::text
