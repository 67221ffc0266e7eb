#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzsig/pipeline.hpp"

namespace fuzzsig {

struct ReportRow {
  std::string symbol;
  std::optional<double> crisp;  // empty when the symbol failed
  double lower = 0.0;
  double upper = 0.0;
  std::optional<Signal> signal;
  std::string error;

  /// Crisp output rounded half-up to one decimal place.
  std::optional<double> fuzzy_output() const;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct PortfolioReport {
  std::vector<ReportRow> rows;
  std::string as_of;  // latest bar date in the input, YYYY-MM-DD
  std::string config_fingerprint;

  std::size_t failures() const;

  friend bool operator==(const PortfolioReport&, const PortfolioReport&) = default;
};

/// One row per series, in input order. A failing symbol gets an error row and
/// does not stop the batch. Throws Error("evaluate") for an empty list.
PortfolioReport run_portfolio(const std::vector<PriceSeries>& daily, const Engine& engine);

enum class ReportFormat { Csv, Json, PlotData };

std::optional<ReportFormat> parse_report_format(std::string_view name);

inline constexpr std::string_view kReportCsvHeader = "symbol,fuzzy_output,signal";

/// csv: `symbol,fuzzy_output,signal` at 1 dp (error rows carry "error: ..." in
/// the signal column); json: full precision plus metadata; plotdata:
/// whitespace-separated `index symbol crisp` lines for charting tools.
std::string emit_report(const PortfolioReport& report, ReportFormat format);

PortfolioReport parse_report_json(std::string_view json);

/// Reads back the csv form. Crisp values come back at their printed precision.
PortfolioReport parse_report_csv(std::string_view csv);

struct BacktestEntry {
  std::size_t period = 0;  // index into the aggregated series
  Date date;
  double crisp_output = 0.0;
  Signal signal = Signal::Hold;
  std::optional<double> next_return;  // close[t+1] / close[t] - 1

  friend bool operator==(const BacktestEntry&, const BacktestEntry&) = default;
};

struct BacktestStats {
  std::string symbol;
  std::vector<BacktestEntry> entries;
  std::size_t buy_signals = 0;  // Buy entries with a next return
  std::size_t buy_hits = 0;     // ... followed by a positive return
  std::size_t sell_signals = 0;
  std::size_t sell_hits = 0;

  double buy_hit_rate() const { return buy_signals ? double(buy_hits) / double(buy_signals) : 0.0; }
  double sell_hit_rate() const { return sell_signals ? double(sell_hits) / double(sell_signals) : 0.0; }
};

/// Rolling evaluation: every period with enough history gets the signal
/// computed from bars up to and including that period only.
BacktestStats backtest(const PriceSeries& daily, const Engine& engine);

std::string emit_backtest(const BacktestStats& stats, ReportFormat format);

}  // namespace fuzzsig
