#include "fuzzsig/market_data.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "fuzzsig/error.hpp"
#include "fuzzsig/text.hpp"

namespace fuzzsig {

std::optional<Date> parse_date(std::string_view text) {
  text = text::trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (i != 4 && i != 7 && (text[i] < '0' || text[i] > '9')) return std::nullopt;
  const auto y = text::parse_int(text.substr(0, 4));
  const auto m = text::parse_int(text.substr(5, 2));
  const auto d = text::parse_int(text.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  const Date date{std::chrono::year{static_cast<int>(*y)},
                  std::chrono::month{static_cast<unsigned>(*m)},
                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

namespace {

template <typename Field>
Eigen::VectorXd column(const std::vector<PriceBar>& bars, Field field) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(bars.size()));
  for (std::size_t i = 0; i < bars.size(); ++i) out[static_cast<Eigen::Index>(i)] = bars[i].*field;
  return out;
}

}  // namespace

Eigen::VectorXd PriceSeries::opens() const { return column(bars, &PriceBar::open); }
Eigen::VectorXd PriceSeries::highs() const { return column(bars, &PriceBar::high); }
Eigen::VectorXd PriceSeries::lows() const { return column(bars, &PriceBar::low); }
Eigen::VectorXd PriceSeries::closes() const { return column(bars, &PriceBar::close); }

PriceSeries PriceSeries::prefix(std::size_t count) const {
  PriceSeries out{symbol, {}};
  out.bars.assign(bars.begin(), bars.begin() + static_cast<std::ptrdiff_t>(std::min(count, bars.size())));
  return out;
}

std::vector<FindingKind> check_bar(const PriceBar& bar) {
  std::vector<FindingKind> kinds;
  for (double price : {bar.open, bar.high, bar.low, bar.close})
    if (!(price > 0.0) || !std::isfinite(price)) kinds.push_back(FindingKind::NonPositivePrice);
  if (!(bar.volume >= 0.0) || !std::isfinite(bar.volume)) kinds.push_back(FindingKind::NegativeVolume);
  if (bar.low > std::min(bar.open, bar.close)) kinds.push_back(FindingKind::LowAboveBody);
  if (bar.high < std::max(bar.open, bar.close)) kinds.push_back(FindingKind::HighBelowBody);
  return kinds;
}

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::EmptySeries: return "empty series";
    case FindingKind::NonPositivePrice: return "non-positive price";
    case FindingKind::NegativeVolume: return "negative volume";
    case FindingKind::LowAboveBody: return "low above min(open, close)";
    case FindingKind::HighBelowBody: return "high below max(open, close)";
    case FindingKind::DateNotIncreasing: return "dates not strictly increasing";
  }
  return "unknown";
}

ValidationReport validate(const PriceSeries& series) {
  ValidationReport report;
  if (series.empty()) {
    report.findings.push_back({FindingKind::EmptySeries, 0, series.symbol + ": no bars"});
    return report;
  }
  for (std::size_t i = 0; i < series.bars.size(); ++i) {
    const PriceBar& bar = series.bars[i];
    const std::string where = series.symbol + " bar " + std::to_string(i) + " (" + format_date(bar.date) + ")";
    for (FindingKind kind : check_bar(bar))
      report.findings.push_back({kind, i, where + ": " + std::string(to_string(kind))});
    if (i > 0 && !(series.bars[i - 1].date < bar.date)) {
      report.findings.push_back({FindingKind::DateNotIncreasing, i,
                                 series.symbol + ": " + format_date(series.bars[i - 1].date) +
                                     " is not before " + format_date(bar.date) + " (bars " +
                                     std::to_string(i - 1) + ", " + std::to_string(i) + ")"});
    }
  }
  return report;
}

std::vector<PriceSeries> parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw ParseError(line_no, "expected header '" + std::string(kCsvHeader) + "'");

  std::vector<PriceSeries> out;
  std::map<std::string, std::size_t> index_of;
  std::map<std::pair<std::string, int>, std::size_t> seen;  // (symbol, day) -> line

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;

    const auto fields = text::split_csv(line);
    if (fields.size() != 7)
      throw ParseError(line_no, "expected 7 fields, got " + std::to_string(fields.size()));
    const std::string symbol(text::trim(fields[0]));
    if (symbol.empty()) throw ParseError(line_no, "empty symbol");
    const auto date = parse_date(fields[1]);
    if (!date) throw ParseError(line_no, "bad date '" + fields[1] + "' (want YYYY-MM-DD)");

    static constexpr const char* kNames[] = {"open", "high", "low", "close", "volume"};
    double values[5];
    for (int k = 0; k < 5; ++k) {
      const auto v = text::parse_double(fields[2 + k]);
      if (!v) throw ParseError(line_no, std::string("bad ") + kNames[k] + " '" + fields[2 + k] + "'");
      values[k] = *v;
    }
    const PriceBar bar{*date, values[0], values[1], values[2], values[3], values[4]};
    if (const auto problems = check_bar(bar); !problems.empty())
      throw ParseError(line_no, symbol + " " + format_date(bar.date) + ": " +
                                    std::string(to_string(problems.front())));

    const int day = std::chrono::sys_days{*date}.time_since_epoch().count();
    if (const auto [it, inserted] = seen.emplace(std::pair{symbol, day}, line_no); !inserted)
      throw ParseError(line_no, "duplicate " + symbol + " " + format_date(*date) +
                                    " (first seen on line " + std::to_string(it->second) + ")");

    auto [it, inserted] = index_of.emplace(symbol, out.size());
    if (inserted) out.push_back(PriceSeries{symbol, {}});
    out[it->second].bars.push_back(bar);
  }

  for (auto& series : out)
    std::stable_sort(series.bars.begin(), series.bars.end(),
                     [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; });
  return out;
}

std::vector<PriceSeries> parse_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("parse", "cannot open '" + path + "'");
  return parse_csv(in);
}

void write_csv(std::ostream& out, const std::vector<PriceSeries>& series) {
  out << kCsvHeader << '\n';
  for (const auto& s : series) {
    for (const auto& bar : s.bars) {
      out << text::csv_field(s.symbol) << ',' << format_date(bar.date) << ','
          << text::format_double(bar.open) << ',' << text::format_double(bar.high) << ','
          << text::format_double(bar.low) << ',' << text::format_double(bar.close) << ','
          << text::format_double(bar.volume) << '\n';
    }
  }
}

PriceSeries aggregate_periods(const PriceSeries& series, std::size_t days_per_period) {
  if (days_per_period == 0) throw Error("aggregate", "days_per_period must be at least 1");
  if (series.size() < days_per_period)
    throw Error("aggregate", series.symbol + ": " + std::to_string(series.size()) +
                                 " bars is shorter than one period of " +
                                 std::to_string(days_per_period));
  PriceSeries out{series.symbol, {}};
  const std::size_t periods = series.size() / days_per_period;
  out.bars.reserve(periods);
  for (std::size_t p = 0; p < periods; ++p) {
    const auto first = series.bars.begin() + static_cast<std::ptrdiff_t>(p * days_per_period);
    const auto last = first + static_cast<std::ptrdiff_t>(days_per_period);
    PriceBar agg = *first;
    agg.volume = 0.0;
    for (auto it = first; it != last; ++it) {
      agg.high = std::max(agg.high, it->high);
      agg.low = std::min(agg.low, it->low);
      agg.volume += it->volume;
    }
    agg.close = (last - 1)->close;
    agg.date = (last - 1)->date;
    out.bars.push_back(agg);
  }
  return out;
}

}  // namespace fuzzsig
