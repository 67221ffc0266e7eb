#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fuzzsig/market_data.hpp"

// Deterministic synthetic price data. The generator uses std::mt19937_64 for
// bits and does its own uniform/normal transforms, so the output is identical
// across standard libraries.
namespace fuzzsig {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();   // standard normal, Box-Muller

 private:
  std::mt19937_64 engine_;
};

struct FixtureOptions {
  std::uint64_t seed = 42;
  int symbols = 10;
  int periods = 52;
  int days_per_period = 15;
};

/// Random walks with drifting trend regimes; one series per symbol, weekday dates
/// starting 2017-01-03.
std::vector<PriceSeries> generate_fixtures(const FixtureOptions& options = {});

enum class Trend { Up, Down };

/// Strictly monotone period closes with accelerating moves. Up: closes grow
/// geometrically and each period overshoots upward by up to `swing` before
/// settling at the period close. Down: the up path reflected in price, so the
/// declines steepen and indicator readings mirror the uptrend.
PriceSeries trend_fixture(const std::string& symbol, Trend trend, double growth_per_period = 1.02,
                          double swing = 0.15, int periods = 52, int days_per_period = 15,
                          double start_price = 100.0);

PriceSeries flat_fixture(const std::string& symbol, double price = 100.0, int bars = 780);

/// Consecutive weekdays from `start`.
std::vector<Date> weekdays(Date start, std::size_t count);

}  // namespace fuzzsig
