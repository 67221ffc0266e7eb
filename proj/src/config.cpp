#include "fuzzsig/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "fuzzsig/error.hpp"
#include "fuzzsig/text.hpp"

namespace fuzzsig {

namespace {

int to_int(const std::string& key, const std::string& value) {
  const auto v = text::parse_int(value);
  if (!v || *v < -1000000 || *v > 1000000) throw Error("config", key + ": expected an integer, got '" + value + "'");
  return static_cast<int>(*v);
}

double to_double(const std::string& key, const std::string& value) {
  const auto v = text::parse_double(value);
  if (!v) throw Error("config", key + ": expected a number, got '" + value + "'");
  return *v;
}

// what() without the leading "stage: ".
std::string message_of(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = e.stage() + ": ";
  return what.starts_with(prefix) ? what.substr(prefix.size()) : what;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error("config", what);
}

const char* const kMfKeys[] = {"macd.low", "macd.high",   "rsi.low",   "rsi.medium", "rsi.high",
                               "so.low",   "so.medium",   "so.high",   "wa.low",     "wa.high",
                               "signal.sell", "signal.hold", "signal.buy"};

}  // namespace

void ResolvedConfig::check() const {
  require(period_days >= 1, "market.period_days must be >= 1");
  const auto& p = indicators;
  require(p.macd_fast >= 1 && p.macd_slow >= 1 && p.macd_signal >= 1, "MACD periods must be >= 1");
  require(p.macd_fast < p.macd_slow, "indicators.macd_fast must be below indicators.macd_slow");
  require(p.rsi_period >= 1 && p.stoch_k >= 1 && p.stoch_d >= 1 && p.williams_period >= 1,
          "indicator windows must be >= 1");
  require(tuning.divisor > 0.0, "tuning.divisor must be positive");
  const auto& lv = tuning.levels;
  require(0.0 < lv.low_level && lv.low_level < lv.mid_level && lv.mid_level < lv.golden && lv.golden < 1.0,
          "tuning.levels must be increasing inside (0, 1)");
  require(delta >= 0.0 && delta <= 0.5, "fuzzy.delta must lie in [0, 0.5]");
  require(macd_gain > 0.0, "fuzzy.macd_gain must be positive");
  require(grid_size >= 11 && grid_size <= 1000001, "fuzzy.grid_size must lie in [11, 1000001]");
  require(votes.primary_weight >= 1 && votes.secondary_weight >= 1, "inference weights must be >= 1");
  require(votes.sell_at < votes.buy_at, "inference.sell_at must be below inference.buy_at");
}

std::string ResolvedConfig::to_text() const {
  using text::format_double;
  std::ostringstream out;
  out << "market.period_days = " << period_days << '\n'
      << "indicators.macd_fast = " << indicators.macd_fast << '\n'
      << "indicators.macd_slow = " << indicators.macd_slow << '\n'
      << "indicators.macd_signal = " << indicators.macd_signal << '\n'
      << "indicators.rsi_period = " << indicators.rsi_period << '\n'
      << "indicators.stoch_k = " << indicators.stoch_k << '\n'
      << "indicators.stoch_d = " << indicators.stoch_d << '\n'
      << "indicators.williams_period = " << indicators.williams_period << '\n'
      << "tuning.divisor = " << format_double(tuning.divisor) << '\n'
      << "tuning.levels = " << format_double(tuning.levels.low_level) << ", "
      << format_double(tuning.levels.mid_level) << ", " << format_double(tuning.levels.golden) << '\n'
      << "fuzzy.delta = " << format_double(delta) << '\n'
      << "fuzzy.macd_gain = " << format_double(macd_gain) << '\n'
      << "fuzzy.grid_size = " << grid_size << '\n';
  const VariableSet vars = variables();
  for (const auto& var : vars.all()) {
    for (const auto& term : var.terms) {
      std::string label = term.label;
      for (auto& c : label) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out << "fuzzy." << var.name << '.' << label << " = " << describe(term.mf) << '\n';
    }
  }
  out << "inference.primary_weight = " << votes.primary_weight << '\n'
      << "inference.secondary_weight = " << votes.secondary_weight << '\n'
      << "inference.buy_at = " << votes.buy_at << '\n'
      << "inference.sell_at = " << votes.sell_at << '\n'
      << "inference.rules_file = " << rules_file << '\n';
  return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ResolvedConfig::fingerprint() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_text())));
  return buf;
}

VariableSet ResolvedConfig::variables() const {
  VariableSet vars = default_variables(tuning);
  apply_overrides(vars, mf_overrides);
  return vars;
}

void set_config_value(ResolvedConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value(text::trim(raw));
  auto& p = cfg.indicators;
  if (key == "market.period_days") cfg.period_days = to_int(key, value);
  else if (key == "indicators.macd_fast") p.macd_fast = to_int(key, value);
  else if (key == "indicators.macd_slow") p.macd_slow = to_int(key, value);
  else if (key == "indicators.macd_signal") p.macd_signal = to_int(key, value);
  else if (key == "indicators.rsi_period") p.rsi_period = to_int(key, value);
  else if (key == "indicators.stoch_k") p.stoch_k = to_int(key, value);
  else if (key == "indicators.stoch_d") p.stoch_d = to_int(key, value);
  else if (key == "indicators.williams_period") p.williams_period = to_int(key, value);
  else if (key == "tuning.divisor") cfg.tuning.divisor = to_double(key, value);
  else if (key == "tuning.levels") {
    std::vector<double> levels;
    std::stringstream in(value);
    for (std::string item; std::getline(in, item, ',');) levels.push_back(to_double(key, item));
    require(levels.size() == 3, "tuning.levels takes three comma-separated ratios");
    cfg.tuning.levels = {levels[0], levels[1], levels[2]};
  } else if (key == "fuzzy.delta") cfg.delta = to_double(key, value);
  else if (key == "fuzzy.macd_gain") cfg.macd_gain = to_double(key, value);
  else if (key == "fuzzy.grid_size") cfg.grid_size = to_int(key, value);
  else if (key == "inference.primary_weight") cfg.votes.primary_weight = to_int(key, value);
  else if (key == "inference.secondary_weight") cfg.votes.secondary_weight = to_int(key, value);
  else if (key == "inference.buy_at") cfg.votes.buy_at = to_int(key, value);
  else if (key == "inference.sell_at") cfg.votes.sell_at = to_int(key, value);
  else if (key == "inference.rules_file") cfg.rules_file = value;
  else if (key.starts_with("fuzzy.")) {
    const std::string mf_key = key.substr(6);
    bool known = false;
    for (const char* k : kMfKeys) known = known || mf_key == k;
    if (!known) throw Error("config", "unknown key '" + key + "'");
    try {
      cfg.mf_overrides[mf_key] = parse_mf(value);
    } catch (const Error& e) {
      throw Error("config", key + ": " + message_of(e));
    }
  } else {
    throw Error("config", "unknown key '" + key + "'");
  }
}

void merge_config(ResolvedConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos)
      throw Error("config", "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(text::trim(trimmed.substr(0, eq)));
    const std::string value(text::trim(trimmed.substr(eq + 1)));
    try {
      set_config_value(cfg, key, value);
    } catch (const Error& e) {
      throw Error("config", "line " + std::to_string(line_no) + ": " + message_of(e));
    }
  }
}

void merge_config_file(ResolvedConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open '" + path + "'");
  merge_config(cfg, in);
}

}  // namespace fuzzsig
