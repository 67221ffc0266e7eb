#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzsig/indicators.hpp"
#include "fuzzsig/membership.hpp"
#include "fuzzsig/tuning.hpp"

namespace fuzzsig {

enum class Input : std::size_t { Macd = 0, Rsi = 1, So = 2, Wa = 3 };
inline constexpr std::size_t kInputCount = 4;

struct Term {
  std::string label;
  MembershipFunction mf;
};

struct LinguisticVariable {
  std::string name;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  std::vector<Term> terms;

  std::optional<std::size_t> index_of(std::string_view label) const;
};

/// The four inputs (ordered as `Input`) plus the Sell/Hold/Buy output.
struct VariableSet {
  std::array<LinguisticVariable, kInputCount> inputs;
  LinguisticVariable output;

  const LinguisticVariable& input(Input which) const { return inputs[static_cast<std::size_t>(which)]; }
  std::vector<LinguisticVariable> all() const;
};

/// Canonical variable table. RSI and Williams live on the tuning-scaled domain
/// [0, 100/divisor]; Low/High terms there mirror each other about the neutral
/// reading 50/divisor.
VariableSet default_variables(const TuningConfig& tuning = {});

/// Replaces terms from "variable.term" -> MF entries, e.g. {"rsi.high", ...}.
/// Throws Error("fuzzy") on unknown variables or terms.
void apply_overrides(VariableSet& vars, const std::map<std::string, MembershipFunction>& overrides);

/// min over an even grid of max-over-terms membership. The table requires >= 0.05.
double coverage(const LinguisticVariable& var, int samples = 1001);
inline constexpr double kMinCoverage = 0.05;

struct Normalization {
  double macd_gain = 50.0;
  TuningConfig tuning;
};

/// Maps a snapshot onto each input's domain: MACD -> tanh(gain * hist / close),
/// RSI -> |RSI| / divisor, SO -> %K / 100, Williams -> |%R| / divisor.
std::array<double, kInputCount> normalize(const IndicatorSnapshot& snap, const Normalization& norm = {});

struct VariableGrades {
  std::string variable;
  std::vector<std::string> labels;
  std::vector<Grade> grades;  // aligned with labels

  std::optional<Grade> grade(std::string_view label) const;
};

struct FuzzifiedInputs {
  std::array<VariableGrades, kInputCount> inputs;
  bool interval = false;
};

FuzzifiedInputs fuzzify(const std::array<double, kInputCount>& normalized, const VariableSet& vars,
                        FootprintOfUncertainty fou);
FuzzifiedInputs fuzzify(const IndicatorSnapshot& snap, const VariableSet& vars,
                        FootprintOfUncertainty fou, const Normalization& norm = {});

}  // namespace fuzzsig
