#include "fuzzsig/pipeline.hpp"

#include "fuzzsig/error.hpp"

namespace fuzzsig {

namespace {

RuleBase load_rules(const ResolvedConfig& config) {
  if (config.rules_file.empty()) return build_rule_base(config.votes);
  return read_rules_file(config.rules_file);
}

}  // namespace

Engine::Engine(ResolvedConfig config) : Engine(config, load_rules(config)) {}

Engine::Engine(ResolvedConfig config, RuleBase rules)
    : config_(std::move(config)), variables_(config_.variables()), rules_(std::move(rules)) {
  config_.check();
  for (const auto& var : variables_.all()) {
    if (coverage(var) < kMinCoverage)
      throw Error("fuzzy", "terms of '" + var.name + "' leave part of the domain uncovered");
  }
  check_rules(rules_, variables_);
  consequents_ = sample_consequents(variables_.output, config_.fou(), config_.grid_size);
}

Recommendation Engine::evaluate(const IndicatorSnapshot& snap, const std::string& symbol) const {
  const FuzzifiedInputs inputs = fuzzify(snap, variables_, config_.fou(), config_.normalization());
  const AggregatedOutput agg = fire_rules(inputs, rules_, consequents_);
  const Defuzzified out = defuzzify(agg);
  return {symbol, out.crisp, out.left, out.right, classify_signal(out.crisp), snap};
}

Recommendation Engine::recommend_periods(const PriceSeries& periods) const {
  return evaluate(snapshot(periods, config_.indicators), periods.symbol);
}

Recommendation Engine::recommend(const PriceSeries& daily) const {
  return recommend_periods(aggregate_periods(daily, static_cast<std::size_t>(config_.period_days)));
}

Recommendation recommend(const PriceSeries& daily, const ResolvedConfig& config) {
  return Engine(config).recommend(daily);
}

}  // namespace fuzzsig
