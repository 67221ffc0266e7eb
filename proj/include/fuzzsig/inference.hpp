#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fuzzsig/fuzzy.hpp"

namespace fuzzsig {

enum class Signal { Sell, Hold, Buy };

std::string_view to_string(Signal s);
std::optional<Signal> parse_signal(std::string_view text);

enum class Provenance { Generated, UserSupplied };

/// One Mamdani rule. `antecedent` holds a term label per input, ordered as `Input`.
struct Rule {
  std::array<std::string, kInputCount> antecedent;
  Signal consequent = Signal::Hold;
  Provenance provenance = Provenance::Generated;
  int score = 0;  // vote score for generated rules

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleBase {
  std::vector<Rule> rules;
};

/// Votes per term: MACD High +1 / Low -1; SO Low +1 / Medium 0 / High -1;
/// RSI High +1 / Medium 0 / Low -1; Williams High +1 / Low -1. MACD and SO are
/// primary (weighted by primary_weight), RSI and Williams secondary.
struct VoteConfig {
  int primary_weight = 2;
  int secondary_weight = 1;
  int buy_at = 2;
  int sell_at = -2;

  friend bool operator==(const VoteConfig&, const VoteConfig&) = default;
};

int vote_score(const std::array<std::string, kInputCount>& antecedent, const VoteConfig& votes = {});
Signal consequent_for(int score, const VoteConfig& votes = {});

/// All 2x3x3x2 antecedent combinations in MACD, RSI, SO, Williams order.
RuleBase build_rule_base(const VoteConfig& votes = {});

/// `macd,rsi,so,wa,consequent[,score]`; lines starting with '#' are skipped.
RuleBase read_rules_csv(std::istream& in);
RuleBase read_rules_file(const std::string& path);
void write_rules_csv(std::ostream& out, const RuleBase& rb, bool with_scores = false);

/// Throws Error("inference") when a rule names a term the variables do not have.
void check_rules(const RuleBase& rb, const VariableSet& vars);

/// Sampled output set with trapezoid quadrature weights. For type-1 sets
/// lower == upper.
struct AggregatedOutput {
  Eigen::ArrayXd x;
  Eigen::ArrayXd weights;
  Eigen::ArrayXd lower;
  Eigen::ArrayXd upper;
  bool interval = false;
};

/// Uniform grid on [lo, hi] with trapezoid weights.
AggregatedOutput make_grid(int samples, double lo = 0.0, double hi = 1.0);

/// Consequent membership sampled on the output grid, one entry per Signal.
struct ConsequentSet {
  AggregatedOutput grid;
  std::array<Eigen::ArrayXd, 3> lower;
  std::array<Eigen::ArrayXd, 3> upper;
  bool interval = false;
};

ConsequentSet sample_consequents(const LinguisticVariable& output, FootprintOfUncertainty fou,
                                 int samples = 1001);

/// Per-rule firing strength: min over antecedent grades (endpoint-wise for intervals).
Grade firing_strength(const Rule& rule, const FuzzifiedInputs& inputs);

/// Min-clip each consequent at its rule's strength, max-aggregate across rules.
AggregatedOutput fire_rules(const FuzzifiedInputs& inputs, const RuleBase& rb, const ConsequentSet& consequents);

struct CentroidInterval {
  double left = 0.0;
  double right = 0.0;
};

/// Karnik-Mendel switch-point iteration for the centroid interval of an
/// interval type-2 set. Throws Error("defuzzify") when every upper grade is 0.
CentroidInterval km_type_reduce(const AggregatedOutput& agg);

struct Defuzzified {
  double crisp = 0.0;
  double left = 0.0;  // equals crisp for type-1 sets
  double right = 0.0;
};

/// Weighted centroid for type-1 sets, KM midpoint for interval sets.
Defuzzified defuzzify(const AggregatedOutput& agg);

/// Sell on [0, 0.4), Hold on [0.4, 0.6), Buy on [0.6, 1].
Signal classify_signal(double crisp);

}  // namespace fuzzsig
