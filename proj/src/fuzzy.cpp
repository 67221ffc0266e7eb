#include "fuzzsig/fuzzy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fuzzsig/error.hpp"

namespace fuzzsig {

std::optional<std::size_t> LinguisticVariable::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].label == label) return i;
  return std::nullopt;
}

std::vector<LinguisticVariable> VariableSet::all() const {
  std::vector<LinguisticVariable> out(inputs.begin(), inputs.end());
  out.push_back(output);
  return out;
}

VariableSet default_variables(const TuningConfig& tuning) {
  const FibLevels& fib = tuning.levels;
  const double top = tuning.upper();
  VariableSet vars;
  vars.inputs[static_cast<std::size_t>(Input::Macd)] = {
      "macd", -1.0, 1.0, {{"Low", Gaussian{-0.5, 0.3}}, {"High", Gaussian{0.5, 0.3}}}};
  vars.inputs[static_cast<std::size_t>(Input::Rsi)] = {
      "rsi",
      0.0,
      top,
      {{"Low", LeftShoulder{fib.low_level, fib.mid_level}},
       {"Medium", Triangular{fib.low_level, 0.5, 1.0 - fib.low_level}},
       {"High", RightShoulder{fib.golden, 1.0 - fib.low_level}}}};
  vars.inputs[static_cast<std::size_t>(Input::So)] = {
      "so",
      0.0,
      1.0,
      {{"Low", LeftShoulder{0.2, 0.5}}, {"Medium", Triangular{0.2, 0.5, 0.8}}, {"High", RightShoulder{0.5, 0.8}}}};
  vars.inputs[static_cast<std::size_t>(Input::Wa)] = {
      "wa", 0.0, top, {{"Low", Gaussian{fib.low_level, 0.15}}, {"High", Gaussian{top - fib.low_level, 0.15}}}};
  vars.output = {"signal",
                 0.0,
                 1.0,
                 {{"Sell", LeftShoulder{0.3, 0.45}}, {"Hold", Triangular{0.35, 0.5, 0.65}}, {"Buy", RightShoulder{0.55, 0.7}}}};
  return vars;
}

void apply_overrides(VariableSet& vars, const std::map<std::string, MembershipFunction>& overrides) {
  for (const auto& [key, mf] : overrides) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw Error("fuzzy", "override key '" + key + "' needs variable.term");
    const std::string var_name = key.substr(0, dot);
    const std::string term_name = key.substr(dot + 1);
    LinguisticVariable* target = nullptr;
    for (auto& v : vars.inputs)
      if (v.name == var_name) target = &v;
    if (vars.output.name == var_name) target = &vars.output;
    if (!target) throw Error("fuzzy", "unknown variable '" + var_name + "'");
    auto found = std::find_if(target->terms.begin(), target->terms.end(), [&](const Term& t) {
      std::string lower = t.label;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      return lower == term_name;
    });
    if (found == target->terms.end())
      throw Error("fuzzy", "variable '" + var_name + "' has no term '" + term_name + "'");
    check(mf);
    found->mf = mf;
  }
}

double coverage(const LinguisticVariable& var, int samples) {
  const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(samples, var.domain_lo, var.domain_hi);
  Eigen::ArrayXd best = Eigen::ArrayXd::Zero(samples);
  for (const auto& term : var.terms) best = best.max(eval_mf(term.mf, xs));
  return best.minCoeff();
}

std::array<double, kInputCount> normalize(const IndicatorSnapshot& snap, const Normalization& norm) {
  std::array<double, kInputCount> out{};
  out[static_cast<std::size_t>(Input::Macd)] = std::tanh(norm.macd_gain * snap.histogram / snap.close);
  out[static_cast<std::size_t>(Input::Rsi)] = scale_secondary(SecondaryKind::Rsi, snap.rsi, norm.tuning).scaled;
  out[static_cast<std::size_t>(Input::So)] = snap.stochastic_k / 100.0;
  out[static_cast<std::size_t>(Input::Wa)] =
      scale_secondary(SecondaryKind::Williams, snap.williams, norm.tuning).scaled;
  return out;
}

std::optional<Grade> VariableGrades::grade(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return grades[i];
  return std::nullopt;
}

FuzzifiedInputs fuzzify(const std::array<double, kInputCount>& normalized, const VariableSet& vars,
                        FootprintOfUncertainty fou) {
  FuzzifiedInputs out;
  out.interval = fou.delta > 0.0;
  for (std::size_t v = 0; v < kInputCount; ++v) {
    const LinguisticVariable& var = vars.inputs[v];
    VariableGrades& g = out.inputs[v];
    g.variable = var.name;
    for (const auto& term : var.terms) {
      g.labels.push_back(term.label);
      g.grades.push_back(eval_mf_interval(term.mf, fou, normalized[v]));
    }
  }
  return out;
}

FuzzifiedInputs fuzzify(const IndicatorSnapshot& snap, const VariableSet& vars, FootprintOfUncertainty fou,
                        const Normalization& norm) {
  return fuzzify(normalize(snap, norm), vars, fou);
}

}  // namespace fuzzsig
