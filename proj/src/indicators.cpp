#include "fuzzsig/indicators.hpp"

#include <array>
#include <utility>

#include "fuzzsig/market_data.hpp"

namespace fuzzsig {

namespace {

std::array<std::pair<const char*, std::size_t>, 4> requirements(const IndicatorParams& p) {
  return {{
      {"MACD", static_cast<std::size_t>(std::max(p.macd_fast, p.macd_slow) + p.macd_signal)},
      {"RSI", static_cast<std::size_t>(p.rsi_period + 1)},
      {"stochastic", static_cast<std::size_t>(p.stoch_k + p.stoch_d - 1)},
      {"Williams", static_cast<std::size_t>(p.williams_period)},
  }};
}

}  // namespace

std::size_t snapshot_min_length(const IndicatorParams& p) {
  std::size_t need = 0;
  for (const auto& [name, required] : requirements(p)) need = std::max(need, required);
  return need;
}

IndicatorSnapshot snapshot(const PriceSeries& series, const IndicatorParams& p) {
  // Report the indicator with the largest unmet requirement.
  const char* binding = nullptr;
  std::size_t binding_need = 0;
  for (const auto& [name, required] : requirements(p)) {
    if (series.size() < required && required > binding_need) {
      binding = name;
      binding_need = required;
    }
  }
  if (binding) throw InsufficientHistory(binding, binding_need, series.size());

  const Eigen::VectorXd highs = series.highs();
  const Eigen::VectorXd lows = series.lows();
  const Eigen::VectorXd closes = series.closes();

  IndicatorSnapshot snap;
  const auto m = macd(closes, p);
  snap.macd = m.macd_line[m.macd_line.size() - 1];
  snap.signal = m.signal_line[m.signal_line.size() - 1];
  snap.histogram = m.histogram[m.histogram.size() - 1];
  snap.rsi = rsi(closes, p.rsi_period);
  const auto so = stochastic(highs, lows, closes, p.stoch_k, p.stoch_d);
  snap.stochastic_k = so.percent_k[so.percent_k.size() - 1];
  snap.stochastic_d = so.percent_d[so.percent_d.size() - 1];
  snap.williams = williams(highs, lows, closes, p.williams_period);
  snap.close = closes[closes.size() - 1];
  return snap;
}

}  // namespace fuzzsig

namespace fuzzsig {

namespace {

// Writes an end-aligned series into the matching tail of the table.
template <typename Member>
void fill(std::vector<IndicatorRow>& rows, const Eigen::VectorXd& values, Member member) {
  const std::size_t offset = rows.size() - static_cast<std::size_t>(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) rows[offset + static_cast<std::size_t>(k)].*member = values[k];
}

}  // namespace

std::vector<IndicatorRow> indicator_table(const PriceSeries& periods, const IndicatorParams& p) {
  std::vector<IndicatorRow> rows;
  for (const auto& bar : periods.bars) rows.push_back({bar.date, bar.close, {}, {}, {}, {}, {}, {}, {}});
  const Eigen::VectorXd highs = periods.highs();
  const Eigen::VectorXd lows = periods.lows();
  const Eigen::VectorXd closes = periods.closes();
  const auto n = closes.size();

  if (n >= macd_min_length(p)) {
    const auto m = macd(closes, p);
    fill(rows, m.macd_line, &IndicatorRow::macd);
    fill(rows, m.signal_line, &IndicatorRow::signal);
    fill(rows, m.histogram, &IndicatorRow::histogram);
  }
  if (n >= p.rsi_period + 1) fill(rows, rsi_series(closes, p.rsi_period), &IndicatorRow::rsi);
  if (n >= p.stoch_k) {
    const Eigen::VectorXd k = range_position(highs, lows, closes, p.stoch_k, "stochastic");
    fill(rows, k, &IndicatorRow::stochastic_k);
    if (k.size() >= p.stoch_d) fill(rows, sma(k, p.stoch_d), &IndicatorRow::stochastic_d);
  }
  if (n >= p.williams_period)
    fill(rows, williams_series(highs, lows, closes, p.williams_period), &IndicatorRow::williams);
  return rows;
}

}  // namespace fuzzsig
