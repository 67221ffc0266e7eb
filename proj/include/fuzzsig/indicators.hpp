#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fuzzsig/error.hpp"
#include "fuzzsig/market_data.hpp"

// Technical indicator kernels over dense Eigen vectors.
//
// Every function returns a series aligned to the END of its input: element
// k of the result belongs to input index `input.size() - result.size() + k`.
// Functions that return a single value evaluate the latest period.
namespace fuzzsig {

template <typename Scalar>
using Series = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct IndicatorParams {
  int macd_fast = 12;
  int macd_slow = 26;
  int macd_signal = 9;
  int rsi_period = 21;
  int stoch_k = 10;
  int stoch_d = 3;
  int williams_period = 30;

  friend bool operator==(const IndicatorParams&, const IndicatorParams&) = default;
};

namespace detail {

inline void require_history(const char* indicator, Eigen::Index required, Eigen::Index available) {
  if (required < 1) throw Error("indicators", std::string(indicator) + ": window must be positive");
  if (available < required)
    throw InsufficientHistory(indicator, static_cast<std::size_t>(required),
                              static_cast<std::size_t>(available));
}

/// Left-to-right sum. Vectorised reductions group terms by memory alignment,
/// which would make a window's value depend on where the series starts.
template <typename Derived>
typename Derived::Scalar sequential_sum(const Eigen::DenseBase<Derived>& v) {
  typename Derived::Scalar acc(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += v.derived().coeff(i);
  return acc;
}

template <typename A, typename B>
void require_same_length(const A& a, const B& b) {
  if (a.size() != b.size()) throw Error("indicators", "high/low/close series differ in length");
}

}  // namespace detail

/// Simple moving average; result has closes.size() - n + 1 entries.
template <typename Derived>
Series<typename Derived::Scalar> sma(const Eigen::MatrixBase<Derived>& closes, Eigen::Index n) {
  detail::require_history("SMA", n, closes.size());
  Series<typename Derived::Scalar> out(closes.size() - n + 1);
  for (Eigen::Index j = 0; j < out.size(); ++j)
    out[j] = detail::sequential_sum(closes.segment(j, n)) / typename Derived::Scalar(n);
  return out;
}

/// Exponential moving average with alpha = 2/(n+1), seeded by the SMA of the
/// first n closes.
template <typename Derived>
Series<typename Derived::Scalar> ema(const Eigen::MatrixBase<Derived>& closes, Eigen::Index n) {
  using Scalar = typename Derived::Scalar;
  detail::require_history("EMA", n, closes.size());
  const Scalar alpha = Scalar(2) / Scalar(n + 1);
  Series<Scalar> out(closes.size() - n + 1);
  out[0] = detail::sequential_sum(closes.head(n)) / Scalar(n);
  for (Eigen::Index j = 1; j < out.size(); ++j)
    out[j] = alpha * closes[n - 1 + j] + (Scalar(1) - alpha) * out[j - 1];
  return out;
}

template <typename Scalar>
struct MacdTriple {
  Series<Scalar> macd_line;
  Series<Scalar> signal_line;
  Series<Scalar> histogram;
};

inline Eigen::Index macd_min_length(const IndicatorParams& p) {
  return std::max(p.macd_fast, p.macd_slow) + p.macd_signal - 1;
}

/// MACD line, signal line and histogram, all trimmed to the signal line's support.
template <typename Derived>
MacdTriple<typename Derived::Scalar> macd(const Eigen::MatrixBase<Derived>& closes,
                                          const IndicatorParams& p = {}) {
  using Scalar = typename Derived::Scalar;
  if (p.macd_fast < 1 || p.macd_slow < 1 || p.macd_signal < 1)
    throw Error("indicators", "MACD periods must be positive");
  detail::require_history("MACD", macd_min_length(p), closes.size());
  const Series<Scalar> fast = ema(closes, p.macd_fast);
  const Series<Scalar> slow = ema(closes, p.macd_slow);
  const Eigen::Index common = std::min(fast.size(), slow.size());
  const Series<Scalar> line = fast.tail(common) - slow.tail(common);

  MacdTriple<Scalar> out;
  out.signal_line = ema(line, p.macd_signal);
  out.macd_line = line.tail(out.signal_line.size());
  out.histogram = out.macd_line - out.signal_line;
  return out;
}

/// Per-window RSI with simple-mean gains and losses over the last n changes.
/// Flat window gives 50; no losses gives 100; no gains gives 0.
template <typename Derived>
Series<typename Derived::Scalar> rsi_series(const Eigen::MatrixBase<Derived>& closes,
                                            Eigen::Index n = 21) {
  using Scalar = typename Derived::Scalar;
  detail::require_history("RSI", n + 1, closes.size());
  const Eigen::Index changes = closes.size() - 1;
  const Series<Scalar> diff = closes.tail(changes) - closes.head(changes);
  Series<Scalar> out(changes - n + 1);
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const auto window = diff.segment(j, n).array();
    const Scalar gain = detail::sequential_sum(window.max(Scalar(0))) / Scalar(n);
    const Scalar loss = detail::sequential_sum((-window).max(Scalar(0))) / Scalar(n);
    if (gain == Scalar(0) && loss == Scalar(0)) out[j] = Scalar(50);
    else if (loss == Scalar(0)) out[j] = Scalar(100);
    else if (gain == Scalar(0)) out[j] = Scalar(0);
    else out[j] = Scalar(100) - Scalar(100) / (Scalar(1) + gain / loss);
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar rsi(const Eigen::MatrixBase<Derived>& closes, Eigen::Index n = 21) {
  detail::require_history("RSI", n + 1, closes.size());
  return rsi_series(closes.tail(n + 1), n)[0];
}

/// Position of the close inside the trailing `window`-bar high/low range, in
/// percent. A zero range maps to 50.
template <typename DH, typename DL, typename DC>
Series<typename DC::Scalar> range_position(const Eigen::MatrixBase<DH>& highs,
                                           const Eigen::MatrixBase<DL>& lows,
                                           const Eigen::MatrixBase<DC>& closes,
                                           Eigen::Index window, const char* indicator) {
  using Scalar = typename DC::Scalar;
  detail::require_same_length(highs, closes);
  detail::require_same_length(lows, closes);
  detail::require_history(indicator, window, closes.size());
  Series<Scalar> out(closes.size() - window + 1);
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const Scalar hh = highs.segment(j, window).maxCoeff();
    const Scalar ll = lows.segment(j, window).minCoeff();
    const Scalar close = closes[j + window - 1];
    out[j] = hh == ll ? Scalar(50) : (close - ll) / (hh - ll) * Scalar(100);
  }
  return out;
}

template <typename Scalar>
struct StochasticPair {
  Series<Scalar> percent_k;  // closes.size() - k + 1 entries
  Series<Scalar> percent_d;  // d-point SMA of percent_k
};

template <typename DH, typename DL, typename DC>
StochasticPair<typename DC::Scalar> stochastic(const Eigen::MatrixBase<DH>& highs,
                                               const Eigen::MatrixBase<DL>& lows,
                                               const Eigen::MatrixBase<DC>& closes,
                                               Eigen::Index k = 10, Eigen::Index d = 3) {
  if (k < 1 || d < 1) throw Error("indicators", "stochastic windows must be positive");
  detail::require_history("stochastic", k + d - 1, closes.size());
  StochasticPair<typename DC::Scalar> out;
  out.percent_k = range_position(highs, lows, closes, k, "stochastic");
  out.percent_d = sma(out.percent_k, d);
  return out;
}

/// Williams %R in [-100, 0]. Computed as -(100 - %K) over the same window, which
/// equals (HH - close) / (HH - LL) * -100 and keeps %K + |%R| == 100 exact.
template <typename DH, typename DL, typename DC>
Series<typename DC::Scalar> williams_series(const Eigen::MatrixBase<DH>& highs,
                                            const Eigen::MatrixBase<DL>& lows,
                                            const Eigen::MatrixBase<DC>& closes,
                                            Eigen::Index n = 30) {
  using Scalar = typename DC::Scalar;
  return -(Scalar(100) - range_position(highs, lows, closes, n, "Williams").array()).matrix();
}

template <typename DH, typename DL, typename DC>
typename DC::Scalar williams(const Eigen::MatrixBase<DH>& highs, const Eigen::MatrixBase<DL>& lows,
                             const Eigen::MatrixBase<DC>& closes, Eigen::Index n = 30) {
  detail::require_same_length(highs, closes);
  detail::require_same_length(lows, closes);
  detail::require_history("Williams", n, closes.size());
  return williams_series(highs.tail(n), lows.tail(n), closes.tail(n), n)[0];
}

struct IndicatorSnapshot {
  double macd = 0.0;
  double signal = 0.0;
  double histogram = 0.0;
  double rsi = 50.0;
  double stochastic_k = 50.0;
  double stochastic_d = 50.0;
  double williams = -50.0;
  double close = 0.0;

  friend bool operator==(const IndicatorSnapshot&, const IndicatorSnapshot&) = default;
};

/// Bars needed before `snapshot` succeeds. MACD needs slow + signal bars so the
/// signal line has at least one step past its SMA seed.
std::size_t snapshot_min_length(const IndicatorParams& p = {});

/// Latest value of every indicator for a (period-aggregated) series.
IndicatorSnapshot snapshot(const PriceSeries& series, const IndicatorParams& p = {});

/// Per-period indicator values; entries without enough history are empty.
struct IndicatorRow {
  Date date;
  double close = 0.0;
  std::optional<double> macd, signal, histogram, rsi, stochastic_k, stochastic_d, williams;
};

std::vector<IndicatorRow> indicator_table(const PriceSeries& periods, const IndicatorParams& p = {});

}  // namespace fuzzsig
