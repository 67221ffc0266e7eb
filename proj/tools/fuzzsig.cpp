// fuzzsig: command-line front end for the fuzzy trading-signal pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fuzzsig/config.hpp"
#include "fuzzsig/error.hpp"
#include "fuzzsig/evaluate.hpp"
#include "fuzzsig/fixtures.hpp"
#include "fuzzsig/pipeline.hpp"
#include "fuzzsig/text.hpp"

namespace {

using namespace fuzzsig;

struct Options {
  std::string config_path;
  std::optional<double> delta;
  std::optional<int> period_days;
  std::string format;
  std::string rules_path;
  std::string csv_path;
  std::string symbol;
  std::uint64_t seed = 42;
  FixtureOptions fixtures;
  std::string output_path;
};

ResolvedConfig resolve(const Options& opt) {
  ResolvedConfig cfg;
  std::string path = opt.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("FUZZSIG_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) merge_config_file(cfg, path);
  if (opt.delta) cfg.delta = *opt.delta;
  if (opt.period_days) cfg.period_days = *opt.period_days;
  if (!opt.rules_path.empty()) cfg.rules_file = opt.rules_path;
  cfg.check();
  return cfg;
}

ReportFormat format_or(const Options& opt, ReportFormat fallback) {
  if (opt.format.empty()) return fallback;
  return *parse_report_format(opt.format);
}

const PriceSeries& find_symbol(const std::vector<PriceSeries>& all, const std::string& symbol) {
  for (const auto& s : all)
    if (s.symbol == symbol) return s;
  throw Error("parse", "symbol '" + symbol + "' not found in input");
}

std::string opt_field(const std::optional<double>& v) { return v ? text::format_double(*v) : std::string{}; }

int cmd_indicators(const Options& opt) {
  const ResolvedConfig cfg = resolve(opt);
  const auto all = parse_csv_file(opt.csv_path);
  const bool json_out = format_or(opt, ReportFormat::Csv) == ReportFormat::Json;
  nlohmann::json doc = nlohmann::json::array();
  if (!json_out) std::cout << "symbol,date,close,macd,signal,histogram,rsi,stoch_k,stoch_d,williams\n";
  for (const auto& series : all) {
    if (!opt.symbol.empty() && series.symbol != opt.symbol) continue;
    const PriceSeries periods = aggregate_periods(series, static_cast<std::size_t>(cfg.period_days));
    for (const auto& row : indicator_table(periods, cfg.indicators)) {
      if (json_out) {
        auto value = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
        doc.push_back({{"symbol", series.symbol},
                       {"date", format_date(row.date)},
                       {"close", row.close},
                       {"macd", value(row.macd)},
                       {"signal", value(row.signal)},
                       {"histogram", value(row.histogram)},
                       {"rsi", value(row.rsi)},
                       {"stoch_k", value(row.stochastic_k)},
                       {"stoch_d", value(row.stochastic_d)},
                       {"williams", value(row.williams)}});
      } else {
        std::cout << text::csv_field(series.symbol) << ',' << format_date(row.date) << ','
                  << text::format_double(row.close) << ',' << opt_field(row.macd) << ',' << opt_field(row.signal)
                  << ',' << opt_field(row.histogram) << ',' << opt_field(row.rsi) << ','
                  << opt_field(row.stochastic_k) << ',' << opt_field(row.stochastic_d) << ','
                  << opt_field(row.williams) << '\n';
      }
    }
  }
  if (json_out) std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_signal(const Options& opt) {
  const Engine engine(resolve(opt));
  const auto all = parse_csv_file(opt.csv_path);
  const PortfolioReport report = run_portfolio({find_symbol(all, opt.symbol)}, engine);
  if (report.failures() > 0) {
    std::cerr << "error: " << report.rows.front().error << '\n';
    return 1;
  }
  std::cout << emit_report(report, format_or(opt, ReportFormat::Csv));
  return 0;
}

int cmd_portfolio(const Options& opt) {
  const Engine engine(resolve(opt));
  const PortfolioReport report = run_portfolio(parse_csv_file(opt.csv_path), engine);
  std::cout << emit_report(report, format_or(opt, ReportFormat::Csv));
  for (const auto& row : report.rows)
    if (!row.error.empty()) std::cerr << "warning: " << row.symbol << ": " << row.error << '\n';
  return report.failures() == report.rows.size() ? 1 : 0;
}

int cmd_backtest(const Options& opt) {
  const Engine engine(resolve(opt));
  const auto all = parse_csv_file(opt.csv_path);
  std::cout << emit_backtest(backtest(find_symbol(all, opt.symbol), engine), format_or(opt, ReportFormat::Csv));
  return 0;
}

int cmd_rules_dump(const Options& opt) {
  const Engine engine(resolve(opt));
  std::cout << "# membership functions\n";
  for (const auto& var : engine.variables().all()) {
    for (const auto& term : var.terms)
      std::cout << "# " << var.name << '.' << term.label << " = " << describe(term.mf) << '\n';
  }
  std::cout << "# fuzzy.delta = " << text::format_double(engine.config().delta) << '\n';
  std::ostringstream rules;
  write_rules_csv(rules, engine.rules(), true);
  std::cout << rules.str();
  return 0;
}

int cmd_fixtures(const Options& opt) {
  FixtureOptions f = opt.fixtures;
  f.seed = opt.seed;
  const auto series = generate_fixtures(f);
  if (opt.output_path.empty()) {
    write_csv(std::cout, series);
  } else {
    std::ofstream out(opt.output_path, std::ios::binary);
    if (!out) throw Error("fixtures", "cannot write '" + opt.output_path + "'");
    write_csv(out, series);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy-inference buy/hold/sell signals from OHLCV price history", "fuzzsig"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "Config file (key = value lines); defaults to $FUZZSIG_CONFIG")
      ->check(CLI::ExistingFile);
  app.add_option("--delta", opt.delta, "Interval type-2 blur; 0 gives the type-1 system")
      ->check(CLI::Range(0.0, 0.5));
  app.add_option("--period-days", opt.period_days, "Trading rows per aggregated period")->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Output format: csv, json or plotdata")
      ->check(CLI::IsMember({"csv", "json", "plotdata"}));
  app.add_option("--rules", opt.rules_path, "Rule base CSV (macd,rsi,so,wa,consequent) replacing the generated rules")
      ->check(CLI::ExistingFile);

  auto* indicators = app.add_subcommand("indicators", "Per-period indicator table");
  indicators->add_option("csv", opt.csv_path, "Price CSV")->required()->check(CLI::ExistingFile);
  indicators->add_option("--symbol", opt.symbol, "Only this symbol");

  auto* signal = app.add_subcommand("signal", "Recommendation for one symbol");
  signal->add_option("csv", opt.csv_path, "Price CSV")->required()->check(CLI::ExistingFile);
  signal->add_option("--symbol", opt.symbol, "Symbol to evaluate")->required();

  auto* portfolio = app.add_subcommand("portfolio", "Recommendation for every symbol in the file");
  portfolio->add_option("csv", opt.csv_path, "Price CSV")->required()->check(CLI::ExistingFile);

  auto* backtest_cmd = app.add_subcommand("backtest", "Rolling signals paired with next-period returns");
  backtest_cmd->add_option("csv", opt.csv_path, "Price CSV")->required()->check(CLI::ExistingFile);
  backtest_cmd->add_option("--symbol", opt.symbol, "Symbol to evaluate")->required();

  auto* rules = app.add_subcommand("rules", "Rule base inspection");
  rules->require_subcommand(1);
  auto* dump = rules->add_subcommand("dump", "Print membership functions and rules with vote scores");

  auto* fixtures = app.add_subcommand("fixtures", "Synthetic price data");
  fixtures->require_subcommand(1);
  auto* generate = fixtures->add_subcommand("generate", "Write seeded random-walk price CSV");
  generate->add_option("--seed", opt.seed, "Random seed")->required();
  generate->add_option("--symbols", opt.fixtures.symbols, "Number of symbols")->check(CLI::PositiveNumber);
  generate->add_option("--periods", opt.fixtures.periods, "Periods per symbol")->check(CLI::PositiveNumber);
  generate->add_option("--days", opt.fixtures.days_per_period, "Trading days per period")
      ->check(CLI::PositiveNumber);
  generate->add_option("-o,--output", opt.output_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*indicators) return cmd_indicators(opt);
    if (*signal) return cmd_signal(opt);
    if (*portfolio) return cmd_portfolio(opt);
    if (*backtest_cmd) return cmd_backtest(opt);
    if (*dump) return cmd_rules_dump(opt);
    if (*generate) return cmd_fixtures(opt);
  } catch (const std::exception& e) {  // fuzzsig::Error text already leads with its stage
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
