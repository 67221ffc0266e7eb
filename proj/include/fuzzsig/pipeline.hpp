#pragma once

#include <string>

#include "fuzzsig/config.hpp"
#include "fuzzsig/fuzzy.hpp"
#include "fuzzsig/indicators.hpp"
#include "fuzzsig/inference.hpp"
#include "fuzzsig/market_data.hpp"

namespace fuzzsig {

struct Recommendation {
  std::string symbol;
  double crisp_output = 0.0;
  double lower = 0.0;  // type-reduced interval; equals crisp_output for type-1
  double upper = 0.0;
  Signal signal = Signal::Hold;
  IndicatorSnapshot snapshot;
};

/// Resolved variables, rule base and sampled consequents for one config.
/// Immutable once built; share it across evaluations.
class Engine {
 public:
  explicit Engine(ResolvedConfig config);
  Engine(ResolvedConfig config, RuleBase rules);

  const ResolvedConfig& config() const noexcept { return config_; }
  const VariableSet& variables() const noexcept { return variables_; }
  const RuleBase& rules() const noexcept { return rules_; }
  const ConsequentSet& consequents() const noexcept { return consequents_; }

  /// Fuzzify -> fire -> defuzzify -> classify for an indicator snapshot.
  Recommendation evaluate(const IndicatorSnapshot& snap, const std::string& symbol = {}) const;

  /// Aggregate daily bars into periods, then evaluate the latest period.
  Recommendation recommend(const PriceSeries& daily) const;

  /// Evaluate already-aggregated period bars.
  Recommendation recommend_periods(const PriceSeries& periods) const;

 private:
  ResolvedConfig config_;
  VariableSet variables_;
  RuleBase rules_;
  ConsequentSet consequents_;
};

Recommendation recommend(const PriceSeries& daily, const ResolvedConfig& config = {});

}  // namespace fuzzsig
