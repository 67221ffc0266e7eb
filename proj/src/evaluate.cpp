#include "fuzzsig/evaluate.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "fuzzsig/error.hpp"
#include "fuzzsig/text.hpp"

namespace fuzzsig {

using nlohmann::json;

std::optional<double> ReportRow::fuzzy_output() const {
  if (!crisp) return std::nullopt;
  return text::round_half_up(*crisp, 1);
}

std::size_t PortfolioReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.error.empty(); }));
}

PortfolioReport run_portfolio(const std::vector<PriceSeries>& daily, const Engine& engine) {
  if (daily.empty()) throw Error("evaluate", "no series to evaluate");
  PortfolioReport report;
  report.config_fingerprint = engine.config().fingerprint();
  std::optional<Date> latest;
  for (const auto& series : daily) {
    if (!series.empty() && (!latest || *latest < series.bars.back().date)) latest = series.bars.back().date;
    ReportRow row{series.symbol, std::nullopt, 0.0, 0.0, std::nullopt, {}};
    try {
      const Recommendation rec = engine.recommend(series);
      row.crisp = rec.crisp_output;
      row.lower = rec.lower;
      row.upper = rec.upper;
      row.signal = rec.signal;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  if (latest) report.as_of = format_date(*latest);
  return report;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "plotdata") return ReportFormat::PlotData;
  return std::nullopt;
}

std::string emit_report(const PortfolioReport& report, ReportFormat format) {
  if (report.rows.empty()) throw Error("evaluate", "report has no rows");
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Csv:
      out << kReportCsvHeader << '\n';
      for (const auto& row : report.rows) {
        out << text::csv_field(row.symbol) << ',';
        if (row.error.empty())
          out << text::format_fixed(*row.fuzzy_output(), 1) << ',' << to_string(*row.signal);
        else
          out << ',' << text::csv_field("error: " + row.error);
        out << '\n';
      }
      break;
    case ReportFormat::Json: {
      json rows = json::array();
      for (const auto& row : report.rows) {
        json r = {{"symbol", row.symbol}};
        if (row.error.empty()) {
          r["fuzzy_output"] = *row.fuzzy_output();
          r["crisp"] = *row.crisp;
          r["lower"] = row.lower;
          r["upper"] = row.upper;
          r["signal"] = std::string(to_string(*row.signal));
        } else {
          r["error"] = row.error;
        }
        rows.push_back(std::move(r));
      }
      const json doc = {{"as_of", report.as_of}, {"config_fingerprint", report.config_fingerprint}, {"rows", rows}};
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::PlotData:
      out << "# index symbol fuzzy_output\n";
      for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        if (!row.error.empty()) continue;
        out << i << ' ' << row.symbol << ' ' << text::format_double(*row.crisp) << '\n';
      }
      break;
  }
  return out.str();
}

PortfolioReport parse_report_json(std::string_view text_in) {
  PortfolioReport report;
  try {
    const json doc = json::parse(text_in);
    report.as_of = doc.at("as_of").get<std::string>();
    report.config_fingerprint = doc.at("config_fingerprint").get<std::string>();
    for (const auto& r : doc.at("rows")) {
      ReportRow row;
      row.symbol = r.at("symbol").get<std::string>();
      if (r.contains("error")) {
        row.error = r.at("error").get<std::string>();
      } else {
        row.crisp = r.at("crisp").get<double>();
        row.lower = r.at("lower").get<double>();
        row.upper = r.at("upper").get<double>();
        const auto sig = parse_signal(r.at("signal").get<std::string>());
        if (!sig) throw Error("evaluate", "bad signal in report row " + row.symbol);
        row.signal = sig;
      }
      report.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw Error("evaluate", std::string("malformed report json: ") + e.what());
  }
  return report;
}

PortfolioReport parse_report_csv(std::string_view csv) {
  PortfolioReport report;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || text::trim(line) != kReportCsvHeader)
    throw ParseError(1, "expected header '" + std::string(kReportCsvHeader) + "'");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split_csv(text::trim(line));
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
    ReportRow row;
    row.symbol = fields[0];
    if (fields[2].starts_with("error: ")) {
      row.error = fields[2].substr(7);
    } else {
      const auto value = text::parse_double(fields[1]);
      const auto sig = parse_signal(fields[2]);
      if (!value || !sig) throw ParseError(line_no, "bad row");
      row.crisp = *value;
      row.lower = row.upper = *value;
      row.signal = sig;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

BacktestStats backtest(const PriceSeries& daily, const Engine& engine) {
  const PriceSeries periods = aggregate_periods(daily, static_cast<std::size_t>(engine.config().period_days));
  const std::size_t first = snapshot_min_length(engine.config().indicators);
  if (periods.size() < first)
    throw InsufficientHistory("backtest", first, periods.size());

  BacktestStats stats;
  stats.symbol = daily.symbol;
  for (std::size_t t = first - 1; t < periods.size(); ++t) {
    const Recommendation rec = engine.recommend_periods(periods.prefix(t + 1));
    BacktestEntry entry{t, periods.bars[t].date, rec.crisp_output, rec.signal, std::nullopt};
    if (t + 1 < periods.size()) {
      entry.next_return = periods.bars[t + 1].close / periods.bars[t].close - 1.0;
      if (rec.signal == Signal::Buy) {
        ++stats.buy_signals;
        if (*entry.next_return > 0.0) ++stats.buy_hits;
      } else if (rec.signal == Signal::Sell) {
        ++stats.sell_signals;
        if (*entry.next_return < 0.0) ++stats.sell_hits;
      }
    }
    stats.entries.push_back(entry);
  }
  return stats;
}

std::string emit_backtest(const BacktestStats& stats, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Json) {
    json entries = json::array();
    for (const auto& e : stats.entries) {
      json j = {{"period", e.period},
                {"date", format_date(e.date)},
                {"crisp", e.crisp_output},
                {"signal", std::string(to_string(e.signal))}};
      j["next_return"] = e.next_return ? json(*e.next_return) : json(nullptr);
      entries.push_back(std::move(j));
    }
    const json doc = {{"symbol", stats.symbol},
                      {"entries", entries},
                      {"buy_signals", stats.buy_signals},
                      {"buy_hits", stats.buy_hits},
                      {"buy_hit_rate", stats.buy_hit_rate()},
                      {"sell_signals", stats.sell_signals},
                      {"sell_hits", stats.sell_hits},
                      {"sell_hit_rate", stats.sell_hit_rate()}};
    out << doc.dump(2) << '\n';
    return out.str();
  }
  out << "period,date,fuzzy_output,signal,next_return\n";
  for (const auto& e : stats.entries) {
    out << e.period << ',' << format_date(e.date) << ',' << text::format_fixed(text::round_half_up(e.crisp_output, 1), 1)
        << ',' << to_string(e.signal) << ',' << (e.next_return ? text::format_double(*e.next_return) : "") << '\n';
  }
  out << "# buy_hit_rate=" << text::format_double(stats.buy_hit_rate()) << " (" << stats.buy_hits << '/'
      << stats.buy_signals << ")\n"
      << "# sell_hit_rate=" << text::format_double(stats.sell_hit_rate()) << " (" << stats.sell_hits << '/'
      << stats.sell_signals << ")\n";
  return out.str();
}

}  // namespace fuzzsig
