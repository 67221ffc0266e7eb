#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "fuzzsig/indicators.hpp"
#include "fuzzsig/inference.hpp"
#include "fuzzsig/membership.hpp"
#include "fuzzsig/tuning.hpp"

namespace fuzzsig {

/// Every tunable of the pipeline. Defaults reproduce the canonical tables.
///
/// Text form is one `section.key = value` per line, `#` starts a comment:
///
///     market.period_days = 15
///     indicators.rsi_period = 21
///     tuning.divisor = 89
///     tuning.levels = 0.236, 0.382, 0.618
///     fuzzy.delta = 0.05
///     fuzzy.rsi.high = right_shoulder 0.618 0.764
///     inference.buy_at = 2
struct ResolvedConfig {
  int period_days = 15;
  IndicatorParams indicators;
  TuningConfig tuning;
  double delta = 0.05;
  double macd_gain = 50.0;
  int grid_size = 1001;
  std::map<std::string, MembershipFunction> mf_overrides;  // "rsi.high" -> mf
  VoteConfig votes;
  std::string rules_file;  // empty: generated rule base

  /// Throws Error("config") for out-of-bounds values.
  void check() const;

  /// Canonical text: every key, fixed order, shortest round-trip numbers.
  std::string to_text() const;

  /// FNV-1a 64 of to_text(), as 16 hex digits.
  std::string fingerprint() const;

  VariableSet variables() const;
  FootprintOfUncertainty fou() const { return {delta}; }
  Normalization normalization() const { return {macd_gain, tuning}; }

  friend bool operator==(const ResolvedConfig&, const ResolvedConfig&) = default;
};

/// Applies one `key = value` assignment. Throws Error("config") on unknown keys
/// or bad values.
void set_config_value(ResolvedConfig& cfg, const std::string& key, const std::string& value);

/// Merges a config text over `cfg`. Errors name the line.
void merge_config(ResolvedConfig& cfg, std::istream& in);
void merge_config_file(ResolvedConfig& cfg, const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace fuzzsig
