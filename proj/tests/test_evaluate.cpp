#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fuzzsig/error.hpp"
#include "fuzzsig/evaluate.hpp"
#include "fuzzsig/fixtures.hpp"
#include "oracles.hpp"

using namespace fuzzsig;

namespace {

const std::vector<PriceSeries>& fixtures() {
  static const auto all = generate_fixtures({});
  return all;
}

const Engine& engine() {
  static const Engine e{ResolvedConfig{}};
  return e;
}

ReportRow row(const std::string& symbol, double crisp) {
  return {symbol, crisp, crisp, crisp, classify_signal(crisp), {}};
}

}  // namespace

TEST_CASE("run_portfolio on the synthetic fixture") {
  const auto report = run_portfolio(fixtures(), engine());
  REQUIRE(report.rows.size() == 10);
  CHECK(report.failures() == 0);
  CHECK(report.as_of == format_date(fixtures()[0].bars.back().date));
  CHECK(report.config_fingerprint == ResolvedConfig{}.fingerprint());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    CHECK(r.symbol == fixtures()[i].symbol);
    REQUIRE(r.crisp.has_value());
    CHECK(*r.signal == classify_signal(*r.crisp));
    CHECK(r.lower <= *r.crisp);
    CHECK(*r.crisp <= r.upper);
    CHECK(*r.crisp == engine().recommend(fixtures()[i]).crisp_output);
  }
  // The fixture is meant to exercise all three signals.
  std::set<Signal> seen;
  for (const auto& r : report.rows) seen.insert(*r.signal);
  CHECK(seen.size() == 3);
}

TEST_CASE("run_portfolio isolates failing symbols") {
  auto input = fixtures();
  input.insert(input.begin() + 2, input[5].prefix(5 * 15));
  input[2].symbol = "SHORT";
  const auto report = run_portfolio(input, engine());
  REQUIRE(report.rows.size() == 11);
  CHECK(report.failures() == 1);
  CHECK_FALSE(report.rows[2].crisp.has_value());
  CHECK(report.rows[2].error.find("insufficient history") != std::string::npos);
  CHECK(report.rows[3].error.empty());

  const std::string csv = emit_report(report, ReportFormat::Csv);
  CHECK(csv.find("\nSHORT,,\"error: indicators: insufficient history for MACD: need 35 periods, have 5\"\n") !=
        std::string::npos);

  CHECK_THROWS_AS(run_portfolio({}, engine()), Error);
}

TEST_CASE("run_portfolio is order-independent up to row order") {
  auto shuffled = fixtures();
  std::mt19937_64 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto a = run_portfolio(fixtures(), engine());
  const auto b = run_portfolio(shuffled, engine());
  for (const auto& r : b.rows) {
    const auto it = std::find_if(a.rows.begin(), a.rows.end(), [&](const ReportRow& x) { return x.symbol == r.symbol; });
    REQUIRE(it != a.rows.end());
    CHECK(*it == r);
  }
}

TEST_CASE("report rounding is half-up at one decimal") {
  CHECK(*row("A", 0.25).fuzzy_output() == 0.3);
  CHECK(*row("A", 0.35).fuzzy_output() == 0.4);
  CHECK(*row("A", 0.45).fuzzy_output() == 0.5);
  CHECK(*row("A", 0.6499999).fuzzy_output() == 0.6);
  CHECK(*row("A", 0.05).fuzzy_output() == 0.1);
  CHECK(*row("A", 0.04999).fuzzy_output() == 0.0);
  CHECK(*row("A", 1.0).fuzzy_output() == 1.0);
}

TEST_CASE("report emission") {
  // Rows shaped like a published results table.
  PortfolioReport report;
  report.as_of = "2020-03-23";
  report.config_fingerprint = "0123456789abcdef";
  const std::pair<const char*, double> table[] = {{"CHAMS", 0.3},    {"DANGCEM", 0.7}, {"FLOURMILL", 0.4},
                                                  {"ACCESS", 0.7},   {"FO", 0.3},      {"GUARANTY", 0.7},
                                                  {"JBERGER", 0.4},  {"AGLEVENT", 0.3}, {"GUINNESS", 0.4},
                                                  {"NB", 0.7}};
  for (const auto& [sym, v] : table) report.rows.push_back(row(sym, v));

  SUBCASE("csv") {
    CHECK(emit_report(report, ReportFormat::Csv) ==
          "symbol,fuzzy_output,signal\n"
          "CHAMS,0.3,Sell\n"
          "DANGCEM,0.7,Buy\n"
          "FLOURMILL,0.4,Hold\n"
          "ACCESS,0.7,Buy\n"
          "FO,0.3,Sell\n"
          "GUARANTY,0.7,Buy\n"
          "JBERGER,0.4,Hold\n"
          "AGLEVENT,0.3,Sell\n"
          "GUINNESS,0.4,Hold\n"
          "NB,0.7,Buy\n");
    const auto back = parse_report_csv(emit_report(report, ReportFormat::Csv));
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) CHECK(back.rows[i] == report.rows[i]);
  }

  SUBCASE("json round trip keeps full precision") {
    auto full = run_portfolio(fixtures(), engine());
    full.rows.push_back({"BROKEN", std::nullopt, 0.0, 0.0, std::nullopt, "parse: nope"});
    CHECK(parse_report_json(emit_report(full, ReportFormat::Json)) == full);
    CHECK(parse_report_json(emit_report(report, ReportFormat::Json)) == report);
    CHECK_THROWS_AS(parse_report_json("{\"rows\": 3}"), Error);
  }

  SUBCASE("plotdata keeps input order") {
    const std::string plot = emit_report(report, ReportFormat::PlotData);
    std::istringstream in(plot);
    std::string line;
    std::getline(in, line);
    CHECK(line.front() == '#');
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      REQUIRE(std::getline(in, line));
      std::istringstream fields(line);
      std::size_t index;
      std::string symbol;
      double value;
      fields >> index >> symbol >> value;
      CHECK(index == i);
      CHECK(symbol == report.rows[i].symbol);
      CHECK(value == *report.rows[i].crisp);
    }
  }

  SUBCASE("format names and empty reports") {
    CHECK(parse_report_format("csv") == ReportFormat::Csv);
    CHECK(parse_report_format("json") == ReportFormat::Json);
    CHECK(parse_report_format("plotdata") == ReportFormat::PlotData);
    CHECK_FALSE(parse_report_format("xml").has_value());
    CHECK_THROWS_AS(emit_report(PortfolioReport{}, ReportFormat::Csv), Error);
  }
}

TEST_CASE("backtest") {
  SUBCASE("monotone rising series pairs every signal with a positive return") {
    const auto stats = backtest(trend_fixture("UP", Trend::Up), engine());
    CHECK(stats.entries.size() == 52 - 35 + 1);
    for (const auto& e : stats.entries) {
      if (e.next_return) CHECK(*e.next_return > 0.0);
    }
    CHECK_FALSE(stats.entries.back().next_return.has_value());
    CHECK(stats.buy_hit_rate() == (stats.buy_signals ? 1.0 : 0.0));
    CHECK(stats.sell_hits == 0);
  }

  SUBCASE("random walk matches a naive prefix loop") {
    const PriceSeries& daily = fixtures()[3];
    const auto stats = backtest(daily, engine());
    // Pass 1: signals from truncated daily prefixes.
    std::vector<Recommendation> recs;
    const std::size_t periods = daily.size() / 15;
    for (std::size_t t = 34; t < periods; ++t) recs.push_back(engine().recommend(daily.prefix((t + 1) * 15)));
    REQUIRE(stats.entries.size() == recs.size());
    // Pass 2: tally against next-period closes.
    std::size_t buys = 0, buy_hits = 0, sells = 0, sell_hits = 0;
    for (std::size_t j = 0; j < recs.size(); ++j) {
      const std::size_t t = 34 + j;
      const auto& e = stats.entries[j];
      CHECK(e.period == t);
      CHECK(e.crisp_output == recs[j].crisp_output);
      CHECK(e.signal == recs[j].signal);
      if (t + 1 >= periods) {
        CHECK_FALSE(e.next_return.has_value());
        continue;
      }
      const double r = daily.bars[(t + 2) * 15 - 1].close / daily.bars[(t + 1) * 15 - 1].close - 1.0;
      REQUIRE(e.next_return.has_value());
      CHECK(*e.next_return == doctest::Approx(r).epsilon(1e-14));
      if (recs[j].signal == Signal::Buy) {
        ++buys;
        buy_hits += r > 0.0;
      }
      if (recs[j].signal == Signal::Sell) {
        ++sells;
        sell_hits += r < 0.0;
      }
    }
    CHECK(stats.buy_signals == buys);
    CHECK(stats.buy_hits == buy_hits);
    CHECK(stats.sell_signals == sells);
    CHECK(stats.sell_hits == sell_hits);
    CHECK(stats.buy_hit_rate() >= 0.0);
    CHECK(stats.buy_hit_rate() <= 1.0);
  }

  SUBCASE("insufficient history") {
    CHECK_THROWS_AS(backtest(fixtures()[0].prefix(34 * 15), engine()), InsufficientHistory);
  }

  SUBCASE("emission") {
    const auto stats = backtest(fixtures()[1], engine());
    const std::string csv = emit_backtest(stats, ReportFormat::Csv);
    CHECK(csv.starts_with("period,date,fuzzy_output,signal,next_return\n"));
    CHECK(csv.find("# buy_hit_rate=") != std::string::npos);
    const auto doc = emit_backtest(stats, ReportFormat::Json);
    CHECK(doc.find("\"sell_hit_rate\"") != std::string::npos);
  }
}

TEST_CASE("pipeline end to end") {
  for (double delta : {0.0, 0.05}) {
    ResolvedConfig cfg;
    cfg.delta = delta;
    const Engine e(cfg);
    const auto flat = e.recommend(flat_fixture("FLAT"));
    CHECK(std::abs(flat.crisp_output - 0.5) <= 1e-6);
    CHECK(flat.signal == Signal::Hold);
    CHECK(e.recommend(trend_fixture("UP", Trend::Up)).signal == Signal::Buy);
    CHECK(e.recommend(trend_fixture("DOWN", Trend::Down)).signal == Signal::Sell);
  }
  // Deterministic: a second engine gives bit-identical output.
  const Engine again{ResolvedConfig{}};
  for (const auto& s : fixtures()) CHECK(again.recommend(s).crisp_output == engine().recommend(s).crisp_output);

  CHECK_THROWS_WITH_AS(engine().recommend(fixtures()[0].prefix(10)), doctest::Contains("aggregate"), Error);
  CHECK_THROWS_WITH_AS(engine().recommend(fixtures()[0].prefix(20)), doctest::Contains("MACD"), InsufficientHistory);
}

TEST_CASE("engine rejects bad configuration") {
  ResolvedConfig uncovered;
  uncovered.mf_overrides["so.low"] = LeftShoulder{0.1, 0.2};
  uncovered.mf_overrides["so.medium"] = Triangular{0.45, 0.5, 0.55};
  uncovered.mf_overrides["so.high"] = RightShoulder{0.8, 0.9};
  CHECK_THROWS_WITH_AS(Engine{uncovered}, doctest::Contains("so"), Error);

  ResolvedConfig bad_delta;
  bad_delta.delta = -1.0;
  CHECK_THROWS_AS(Engine{bad_delta}, Error);

  RuleBase rules = build_rule_base();
  rules.rules[4].antecedent[0] = "Medium";
  CHECK_THROWS_AS((Engine{ResolvedConfig{}, rules}), Error);
}
