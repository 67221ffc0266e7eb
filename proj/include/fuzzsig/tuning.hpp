#pragma once

#include <string_view>

namespace fuzzsig {

/// Inverse golden ratio, (sqrt(5) - 1) / 2 = 0.6180339887...
double golden_ratio();

/// Fibonacci retracement levels used as thresholds on scaled secondary indicators.
struct FibLevels {
  double low_level = 0.236;
  double mid_level = 0.382;
  double golden = 0.618;

  friend bool operator==(const FibLevels&, const FibLevels&) = default;
};

struct TuningConfig {
  double divisor = 89.0;  // a Fibonacci number
  FibLevels levels;

  /// Scaled value of a neutral secondary reading (RSI 50 / %R -50).
  double neutral() const { return 50.0 / divisor; }
  /// Upper end of the scaled domain (|raw| = 100).
  double upper() const { return 100.0 / divisor; }

  friend bool operator==(const TuningConfig&, const TuningConfig&) = default;
};

enum class SecondaryKind { Rsi, Williams };

struct ScaledSecondary {
  SecondaryKind kind;
  double raw;
  double scaled;  // |raw| / divisor
};

/// Throws Error("tuning") when raw lies outside [0,100] (RSI) or [-100,0] (Williams).
ScaledSecondary scale_secondary(SecondaryKind kind, double raw, const TuningConfig& cfg = {});

enum class Level { Low, Medium, High };

std::string_view to_string(Level level);

/// Crisp diagnostic label: High above the golden level, Medium from the mid
/// level up to golden (inclusive), Low below the mid level.
Level classify_level(const ScaledSecondary& s, const FibLevels& levels = {});

}  // namespace fuzzsig
