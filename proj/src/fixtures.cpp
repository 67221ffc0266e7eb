#include "fuzzsig/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fuzzsig/error.hpp"

namespace fuzzsig {

namespace {

double cents(double x) { return std::round(x * 100.0) / 100.0; }

constexpr Date kStart{std::chrono::year{2017}, std::chrono::January, std::chrono::day{3}};

}  // namespace

// The engine's output sequence is fixed by the standard; distributions are not.
Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<Date> weekdays(Date start, std::size_t count) {
  std::vector<Date> out;
  out.reserve(count);
  std::chrono::sys_days day{start};
  while (out.size() < count) {
    const std::chrono::weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.emplace_back(day);
    day += std::chrono::days{1};
  }
  return out;
}

std::vector<PriceSeries> generate_fixtures(const FixtureOptions& options) {
  Rng rng(options.seed);
  const auto bars = static_cast<std::size_t>(options.periods) * static_cast<std::size_t>(options.days_per_period);
  const auto dates = weekdays(kStart, bars);
  std::vector<PriceSeries> out;
  for (int s = 0; s < options.symbols; ++s) {
    char name[16];
    std::snprintf(name, sizeof name, "SYM%02d", s + 1);
    PriceSeries series{name, {}};
    series.bars.reserve(bars);

    const double vol = 0.01 + 0.015 * rng.uniform();
    double price = cents(5.0 + 195.0 * rng.uniform());
    double drift = 0.0;
    int regime_left = 0;
    for (std::size_t i = 0; i < bars; ++i) {
      if (regime_left == 0) {
        regime_left = 60 + static_cast<int>(rng.uniform() * 140.0);
        drift = (rng.uniform() - 0.5) * 0.008;
      }
      --regime_left;
      const double open = cents(std::max(0.05, price * std::exp(0.3 * vol * rng.normal())));
      const double close = cents(std::max(0.05, open * std::exp(drift + vol * rng.normal())));
      const double high = cents(std::max(open, close) * std::exp(0.5 * vol * std::fabs(rng.normal())));
      const double low = cents(std::min(open, close) * std::exp(-0.5 * vol * std::fabs(rng.normal())));
      const double volume = std::round(100000.0 * std::exp(0.5 * rng.normal()));
      series.bars.push_back({dates[i], open, std::max({high, open, close}),
                             std::max(0.01, std::min({low, open, close})), close, volume});
      price = close;
    }
    out.push_back(std::move(series));
  }
  return out;
}

PriceSeries trend_fixture(const std::string& symbol, Trend trend, double growth_per_period, double swing,
                          int periods, int days_per_period, double start_price) {
  if (!(growth_per_period > 1.0) || !(swing >= 0.0 && swing < 1.0) || periods < 1 || days_per_period < 1 ||
      !(start_price > 0.0))
    throw Error("fixtures", "trend_fixture: invalid parameters");
  const auto bars = static_cast<std::size_t>(periods) * static_cast<std::size_t>(days_per_period);
  const auto dates = weekdays(kStart, bars);
  const double days = days_per_period;
  PriceSeries series{symbol, {}};
  double prev_close = start_price / std::pow(growth_per_period, 1.0 / days);
  for (std::size_t i = 0; i < bars; ++i) {
    const double t = static_cast<double>(i + 1) / days;  // periods elapsed at this close
    const double phase = static_cast<double>(i % static_cast<std::size_t>(days_per_period) + 1) / days;
    const double overshoot = 1.0 + swing * std::sin(std::numbers::pi * phase);
    const double close = start_price * std::pow(growth_per_period, t) * overshoot;
    const double open = prev_close;
    series.bars.push_back({dates[i], open, std::max(open, close) * 1.005, std::min(open, close) * 0.995, close,
                           100000.0});
    prev_close = close;
  }
  if (trend == Trend::Down) {
    // Reflect through the midpoint of the first and last period closes.
    const double pivot = start_price + series.bars.back().close;
    for (auto& bar : series.bars) {
      const double high = bar.high;
      bar.open = pivot - bar.open;
      bar.close = pivot - bar.close;
      bar.high = pivot - bar.low;
      bar.low = pivot - high;
    }
    if (std::any_of(series.bars.begin(), series.bars.end(), [](const PriceBar& b) { return !(b.low > 0.0); }))
      throw Error("fixtures", "trend_fixture: swing too large for a positive downtrend");
  }
  return series;
}

PriceSeries flat_fixture(const std::string& symbol, double price, int bars) {
  const auto dates = weekdays(kStart, static_cast<std::size_t>(bars));
  PriceSeries series{symbol, {}};
  for (const auto& d : dates) series.bars.push_back({d, price, price, price, price, 100000.0});
  return series;
}

}  // namespace fuzzsig
