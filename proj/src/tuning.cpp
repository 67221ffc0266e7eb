#include "fuzzsig/tuning.hpp"

#include <cmath>
#include <string>

#include "fuzzsig/error.hpp"

namespace fuzzsig {

double golden_ratio() { return (std::sqrt(5.0) - 1.0) / 2.0; }

ScaledSecondary scale_secondary(SecondaryKind kind, double raw, const TuningConfig& cfg) {
  const bool in_range = kind == SecondaryKind::Rsi ? (raw >= 0.0 && raw <= 100.0)
                                                   : (raw >= -100.0 && raw <= 0.0);
  if (!in_range)
    throw Error("tuning", std::string(kind == SecondaryKind::Rsi ? "RSI" : "Williams %R") +
                              " value " + std::to_string(raw) + " out of range");
  return {kind, raw, std::fabs(raw) / cfg.divisor};
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
  }
  return "?";
}

Level classify_level(const ScaledSecondary& s, const FibLevels& levels) {
  if (s.scaled > levels.golden) return Level::High;
  if (s.scaled >= levels.mid_level) return Level::Medium;
  return Level::Low;
}

}  // namespace fuzzsig
