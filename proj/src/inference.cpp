#include "fuzzsig/inference.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "fuzzsig/error.hpp"
#include "fuzzsig/text.hpp"

namespace fuzzsig {

std::string_view to_string(Signal s) {
  switch (s) {
    case Signal::Sell: return "Sell";
    case Signal::Hold: return "Hold";
    case Signal::Buy: return "Buy";
  }
  return "?";
}

std::optional<Signal> parse_signal(std::string_view text) {
  text = text::trim(text);
  if (text == "Sell") return Signal::Sell;
  if (text == "Hold") return Signal::Hold;
  if (text == "Buy") return Signal::Buy;
  return std::nullopt;
}

namespace {

constexpr std::array<std::array<std::string_view, 3>, kInputCount> kTermLabels = {{
    {"Low", "High", ""},
    {"Low", "Medium", "High"},
    {"Low", "Medium", "High"},
    {"Low", "High", ""},
}};

int term_vote(Input input, std::string_view label) {
  const bool contrarian = input == Input::So;  // oversold stochastic is bullish
  int v = 0;
  if (label == "High") v = 1;
  else if (label == "Low") v = -1;
  return contrarian ? -v : v;
}

std::size_t signal_index(Signal s) { return static_cast<std::size_t>(s); }

}  // namespace

int vote_score(const std::array<std::string, kInputCount>& antecedent, const VoteConfig& votes) {
  int score = 0;
  for (std::size_t i = 0; i < kInputCount; ++i) {
    const auto input = static_cast<Input>(i);
    const bool primary = input == Input::Macd || input == Input::So;
    score += term_vote(input, antecedent[i]) * (primary ? votes.primary_weight : votes.secondary_weight);
  }
  return score;
}

Signal consequent_for(int score, const VoteConfig& votes) {
  if (score >= votes.buy_at) return Signal::Buy;
  if (score <= votes.sell_at) return Signal::Sell;
  return Signal::Hold;
}

RuleBase build_rule_base(const VoteConfig& votes) {
  if (votes.primary_weight <= 0 || votes.secondary_weight <= 0)
    throw Error("inference", "vote weights must be positive");
  if (!(votes.sell_at < votes.buy_at)) throw Error("inference", "sell_at must be below buy_at");

  RuleBase rb;
  std::array<std::string, kInputCount> antecedent;
  for (auto macd : kTermLabels[0]) {
    if (macd.empty()) continue;
    for (auto rsi : kTermLabels[1]) {
      for (auto so : kTermLabels[2]) {
        for (auto wa : kTermLabels[3]) {
          if (wa.empty()) continue;
          antecedent = {std::string(macd), std::string(rsi), std::string(so), std::string(wa)};
          const int score = vote_score(antecedent, votes);
          rb.rules.push_back({antecedent, consequent_for(score, votes), Provenance::Generated, score});
        }
      }
    }
  }
  return rb;
}

RuleBase read_rules_csv(std::istream& in) {
  RuleBase rb;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = text::split_csv(trimmed);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() >= 5 && fields[0] == "macd" && fields[1] == "rsi" && fields[2] == "so" &&
          fields[3] == "wa" && fields[4] == "consequent")
        continue;
      throw ParseError(line_no, "expected header 'macd,rsi,so,wa,consequent'");
    }
    if (fields.size() != 5 && fields.size() != 6)
      throw ParseError(line_no, "expected 5 or 6 fields, got " + std::to_string(fields.size()));
    Rule rule;
    for (std::size_t i = 0; i < kInputCount; ++i) rule.antecedent[i] = std::string(text::trim(fields[i]));
    const auto consequent = parse_signal(fields[4]);
    if (!consequent) throw ParseError(line_no, "unknown consequent '" + fields[4] + "'");
    rule.consequent = *consequent;
    rule.provenance = Provenance::UserSupplied;
    rule.score = vote_score(rule.antecedent);
    rb.rules.push_back(std::move(rule));
  }
  if (rb.rules.empty()) throw Error("inference", "rule file has no rules");
  return rb;
}

RuleBase read_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("inference", "cannot open rule file '" + path + "'");
  return read_rules_csv(in);
}

void write_rules_csv(std::ostream& out, const RuleBase& rb, bool with_scores) {
  out << "macd,rsi,so,wa,consequent" << (with_scores ? ",score" : "") << '\n';
  for (const auto& r : rb.rules) {
    for (const auto& term : r.antecedent) out << term << ',';
    out << to_string(r.consequent);
    if (with_scores) out << ',' << r.score;
    out << '\n';
  }
}

void check_rules(const RuleBase& rb, const VariableSet& vars) {
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    const Rule& rule = rb.rules[r];
    for (std::size_t i = 0; i < kInputCount; ++i) {
      if (!vars.inputs[i].index_of(rule.antecedent[i]))
        throw Error("inference", "rule " + std::to_string(r + 1) + " references unknown term '" +
                                     rule.antecedent[i] + "' of " + vars.inputs[i].name);
    }
    if (!vars.output.index_of(to_string(rule.consequent)))
      throw Error("inference", "output variable has no term '" + std::string(to_string(rule.consequent)) + "'");
  }
}

AggregatedOutput make_grid(int samples, double lo, double hi) {
  if (samples < 2) throw Error("inference", "output grid needs at least 2 samples");
  AggregatedOutput g;
  g.x.resize(samples);
  const int last = samples - 1;
  for (int i = 0; i <= last; ++i) g.x[i] = lo + (hi - lo) * (static_cast<double>(i) / last);
  g.weights = Eigen::ArrayXd::Constant(samples, (hi - lo) / last);
  g.weights[0] *= 0.5;
  g.weights[last] *= 0.5;
  g.lower = Eigen::ArrayXd::Zero(samples);
  g.upper = Eigen::ArrayXd::Zero(samples);
  return g;
}

ConsequentSet sample_consequents(const LinguisticVariable& output, FootprintOfUncertainty fou, int samples) {
  ConsequentSet set;
  set.grid = make_grid(samples, output.domain_lo, output.domain_hi);
  set.interval = fou.delta > 0.0;
  for (Signal s : {Signal::Sell, Signal::Hold, Signal::Buy}) {
    const auto idx = output.index_of(to_string(s));
    if (!idx) throw Error("inference", "output variable has no term '" + std::string(to_string(s)) + "'");
    const MembershipFunction& mf = output.terms[*idx].mf;
    Eigen::ArrayXd lo(samples), up(samples);
    for (int i = 0; i < samples; ++i) {
      const Grade g = eval_mf_interval(mf, fou, set.grid.x[i]);
      lo[i] = g.lower;
      up[i] = g.upper;
    }
    set.lower[signal_index(s)] = std::move(lo);
    set.upper[signal_index(s)] = std::move(up);
  }
  return set;
}

Grade firing_strength(const Rule& rule, const FuzzifiedInputs& inputs) {
  Grade strength{1.0, 1.0};
  for (std::size_t i = 0; i < kInputCount; ++i) {
    const auto g = inputs.inputs[i].grade(rule.antecedent[i]);
    if (!g)
      throw Error("inference", "rule references unknown term '" + rule.antecedent[i] + "' of " +
                                   inputs.inputs[i].variable);
    strength.lower = std::min(strength.lower, g->lower);
    strength.upper = std::min(strength.upper, g->upper);
  }
  return strength;
}

AggregatedOutput fire_rules(const FuzzifiedInputs& inputs, const RuleBase& rb, const ConsequentSet& consequents) {
  // max over rules of min(strength, mf) == min(max strength per consequent, mf)
  std::array<Grade, 3> best{};
  for (const Rule& rule : rb.rules) {
    const Grade s = firing_strength(rule, inputs);
    Grade& b = best[signal_index(rule.consequent)];
    b.lower = std::max(b.lower, s.lower);
    b.upper = std::max(b.upper, s.upper);
  }
  AggregatedOutput agg = consequents.grid;
  agg.interval = inputs.interval || consequents.interval;
  for (std::size_t c = 0; c < best.size(); ++c) {
    agg.lower = agg.lower.max(consequents.lower[c].min(best[c].lower));
    agg.upper = agg.upper.max(consequents.upper[c].min(best[c].upper));
  }
  return agg;
}

namespace {

// One KM endpoint. For the left endpoint the upper grades sit left of the
// switch point; for the right endpoint they sit right of it.
double km_endpoint(const AggregatedOutput& agg, bool left) {
  const Eigen::Index n = agg.x.size();
  const Eigen::ArrayXd lo = agg.weights * agg.lower;
  const Eigen::ArrayXd up = agg.weights * agg.upper;

  auto centroid_with_switch = [&](Eigen::Index k) {
    // indices [0, k] take the first set, (k, n) the second
    const Eigen::Index head = k + 1;
    const Eigen::Index tail = n - head;
    const auto& first = left ? up : lo;
    const auto& second = left ? lo : up;
    const double num = (agg.x.head(head) * first.head(head)).sum() + (agg.x.tail(tail) * second.tail(tail)).sum();
    const double den = first.head(head).sum() + second.tail(tail).sum();
    return num / den;
  };
  auto switch_index = [&](double y) {
    // left: last i with x_i <= y; right: last i with x_i < y
    const double* begin = agg.x.data();
    const double* end = begin + n;
    const double* it = left ? std::upper_bound(begin, end, y) : std::lower_bound(begin, end, y);
    return static_cast<Eigen::Index>(it - begin) - 1;
  };

  const Eigen::ArrayXd mid = 0.5 * (lo + up);
  double y = (agg.x * mid).sum() / mid.sum();
  Eigen::Index k = switch_index(y);
  for (Eigen::Index iter = 0; iter <= n; ++iter) {
    const double candidate = centroid_with_switch(k);
    if (!std::isfinite(candidate)) break;  // empty embedded set; keep the last centroid
    y = candidate;
    const Eigen::Index next = switch_index(y);
    if (next == k) break;
    k = next;
  }
  return y;
}

}  // namespace

CentroidInterval km_type_reduce(const AggregatedOutput& agg) {
  if (!(agg.upper.maxCoeff() > 0.0)) throw Error("defuzzify", "no rule fired (aggregate is identically zero)");
  return {km_endpoint(agg, true), km_endpoint(agg, false)};
}

Defuzzified defuzzify(const AggregatedOutput& agg) {
  if (agg.interval) {
    const CentroidInterval c = km_type_reduce(agg);
    return {0.5 * (c.left + c.right), c.left, c.right};
  }
  const double den = (agg.weights * agg.upper).sum();
  if (!(den > 0.0)) throw Error("defuzzify", "no rule fired (aggregate is identically zero)");
  const double crisp = (agg.weights * agg.x * agg.upper).sum() / den;
  return {crisp, crisp, crisp};
}

Signal classify_signal(double crisp) {
  if (!(crisp >= 0.0 && crisp <= 1.0))
    throw Error("inference", "crisp output " + text::format_double(crisp) + " outside [0, 1]");
  if (crisp < 0.4) return Signal::Sell;
  if (crisp < 0.6) return Signal::Hold;
  return Signal::Buy;
}

}  // namespace fuzzsig
