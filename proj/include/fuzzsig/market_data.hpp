#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fuzzsig {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD. Returns nullopt for anything else, including invalid days.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

struct PriceBar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;

  friend bool operator==(const PriceBar&, const PriceBar&) = default;
};

struct PriceSeries {
  std::string symbol;
  std::vector<PriceBar> bars;

  std::size_t size() const noexcept { return bars.size(); }
  bool empty() const noexcept { return bars.empty(); }

  Eigen::VectorXd opens() const;
  Eigen::VectorXd highs() const;
  Eigen::VectorXd lows() const;
  Eigen::VectorXd closes() const;

  /// First `count` bars, same symbol.
  PriceSeries prefix(std::size_t count) const;

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

inline constexpr std::string_view kCsvHeader = "symbol,date,open,high,low,close,volume";

/// Reads the `symbol,date,open,high,low,close,volume` format. Series come out
/// in order of first appearance, bars sorted by date. Throws ParseError naming
/// the offending line for malformed rows, OHLC inconsistencies and duplicate
/// (symbol, date) pairs.
std::vector<PriceSeries> parse_csv(std::istream& in);
std::vector<PriceSeries> parse_csv_file(const std::string& path);

/// Inverse of parse_csv; prices use the shortest round-trip representation.
void write_csv(std::ostream& out, const std::vector<PriceSeries>& series);

/// Collapses consecutive chunks of `days_per_period` bars (open first, high max,
/// low min, close last, volume summed, date last). A trailing partial chunk is
/// dropped.
PriceSeries aggregate_periods(const PriceSeries& series, std::size_t days_per_period = 15);

enum class FindingKind {
  EmptySeries,
  NonPositivePrice,
  NegativeVolume,
  LowAboveBody,
  HighBelowBody,
  DateNotIncreasing,
};

std::string_view to_string(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::size_t index;  // offending bar (the later bar for date findings)
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const noexcept { return findings.empty(); }
};

ValidationReport validate(const PriceSeries& series);

/// Bar-level checks only (prices positive, volume >= 0, low/high bracket the body).
std::vector<FindingKind> check_bar(const PriceBar& bar);

}  // namespace fuzzsig
