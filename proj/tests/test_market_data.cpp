#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "fuzzsig/error.hpp"
#include "fuzzsig/fixtures.hpp"
#include "fuzzsig/market_data.hpp"
#include "oracles.hpp"

using namespace fuzzsig;

namespace {

std::vector<PriceSeries> parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const std::string kHeader = "symbol,date,open,high,low,close,volume\n";

}  // namespace

TEST_CASE("parse_csv reads a single bar") {
  const auto series = parse_text(kHeader + "DANGCEM,2019-03-04,250,255.5,248,252,12000\n");
  REQUIRE(series.size() == 1);
  CHECK(series[0].symbol == "DANGCEM");
  REQUIRE(series[0].size() == 1);
  const PriceBar& bar = series[0].bars[0];
  CHECK(format_date(bar.date) == "2019-03-04");
  CHECK(bar.open == 250.0);
  CHECK(bar.high == 255.5);
  CHECK(bar.low == 248.0);
  CHECK(bar.close == 252.0);
  CHECK(bar.volume == 12000.0);
}

TEST_CASE("parse_csv rejects bad rows and names the line") {
  CHECK(parse_error_line(kHeader + "A,2019-03-04,10,11,9,10,5\nA,2019-03-05,10,9,11,10,5\n") == 3);
  CHECK(parse_error_line(kHeader + "A,2019-03-04,10,11,9,10\n") == 2);
  CHECK(parse_error_line(kHeader + "A,2019/03/04,10,11,9,10,5\n") == 2);
  CHECK(parse_error_line(kHeader + "A,2019-02-30,10,11,9,10,5\n") == 2);
  CHECK(parse_error_line(kHeader + "A,2019-03-04,ten,11,9,10,5\n") == 2);
  CHECK(parse_error_line(kHeader + "A,2019-03-04,10,11,9,10,-5\n") == 2);
  CHECK(parse_error_line(kHeader + "A,2019-03-04,0,11,9,10,5\n") == 2);
  CHECK(parse_error_line("sym,date,open,high,low,close,volume\n") == 1);
  CHECK(parse_error_line("") == 1);
}

TEST_CASE("parse_csv rejects duplicate symbol/date pairs") {
  const std::string text = kHeader + "A,2019-03-04,10,11,9,10,5\nB,2019-03-04,10,11,9,10,5\nA,2019-03-04,10,11,9,10,5\n";
  CHECK(parse_error_line(text) == 4);
  CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("parse_csv groups by first appearance, sorts by date, accepts CRLF and BOM") {
  const std::string text = "\xEF\xBB\xBF" + std::string("symbol,date,open,high,low,close,volume\r\n") +
                           "B,2019-03-05,10,11,9,10,5\r\n"
                           "A,2019-03-05,20,21,19,20,5\r\n"
                           "B,2019-03-04,12,13,11,12,5\r\n"
                           "\r\n";
  const auto series = parse_text(text);
  REQUIRE(series.size() == 2);
  CHECK(series[0].symbol == "B");
  CHECK(series[1].symbol == "A");
  REQUIRE(series[0].size() == 2);
  CHECK(format_date(series[0].bars[0].date) == "2019-03-04");
  CHECK(series[0].bars[0].close == 12.0);
  CHECK(validate(series[0]).ok());
}

TEST_CASE("parse_csv on 10 x 780 rows matches a line-by-line re-parse") {
  const auto generated = generate_fixtures({});
  std::ostringstream out;
  write_csv(out, generated);
  const std::string text = out.str();
  const auto parsed = parse_text(text);
  REQUIRE(parsed.size() == 10);

  // Oracle: split every data line by hand and look the bar up.
  std::map<std::string, std::vector<std::vector<std::string>>> rows;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
      fields.push_back(line.substr(start, pos - start));
    fields.push_back(line.substr(start));
    rows[fields[0]].push_back(fields);
  }
  for (const auto& s : parsed) {
    REQUIRE(s.size() == 780);
    const auto& expect = rows.at(s.symbol);
    REQUIRE(expect.size() == 780);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& f = expect[i];
      const auto& b = s.bars[i];
      CHECK(format_date(b.date) == f[1]);
      CHECK(b.open == std::stod(f[2]));
      CHECK(b.high == std::stod(f[3]));
      CHECK(b.low == std::stod(f[4]));
      CHECK(b.close == std::stod(f[5]));
      CHECK(b.volume == std::stod(f[6]));
    }
  }
}

TEST_CASE("parse, write, parse is a fixed point") {
  std::mt19937_64 rng(7);
  std::vector<PriceSeries> series;
  for (int s = 0; s < 4; ++s)
    series.push_back(oracle::to_series("S" + std::to_string(s), oracle::random_ohlc(rng, 50 + 13 * s)));
  std::ostringstream first;
  write_csv(first, series);
  const auto once = parse_text(first.str());
  CHECK(once == series);
  std::ostringstream second;
  write_csv(second, once);
  CHECK(second.str() == first.str());
}

TEST_CASE("aggregate_periods") {
  std::mt19937_64 rng(11);

  SUBCASE("one day per period is the identity") {
    const auto s = oracle::to_series("X", oracle::random_ohlc(rng, 40));
    CHECK(aggregate_periods(s, 1) == s);
  }

  SUBCASE("780 daily bars make 52 periods of 15") {
    const auto s = trend_fixture("UP", Trend::Up);
    REQUIRE(s.size() == 780);
    CHECK(aggregate_periods(s, 15).size() == 52);
  }

  SUBCASE("chunk fold matches a hand-rolled oracle") {
    for (std::size_t n : {30u, 31u, 44u, 45u, 200u}) {
      const auto s = oracle::to_series("X", oracle::random_ohlc(rng, n));
      for (std::size_t days : {1u, 2u, 7u, 15u}) {
        if (n < days) continue;
        const auto agg = aggregate_periods(s, days);
        REQUIRE(agg.size() == n / days);
        for (std::size_t p = 0; p < agg.size(); ++p) {
          double hi = 0.0, lo = 1e300, vol = 0.0;
          for (std::size_t i = p * days; i < (p + 1) * days; ++i) {
            hi = std::max(hi, s.bars[i].high);
            lo = std::min(lo, s.bars[i].low);
            vol += s.bars[i].volume;
          }
          CHECK(agg.bars[p].open == s.bars[p * days].open);
          CHECK(agg.bars[p].close == s.bars[(p + 1) * days - 1].close);
          CHECK(agg.bars[p].date == s.bars[(p + 1) * days - 1].date);
          CHECK(agg.bars[p].high == hi);
          CHECK(agg.bars[p].low == lo);
          CHECK(agg.bars[p].volume == doctest::Approx(vol));
        }
      }
    }
  }

  SUBCASE("errors") {
    const auto s = oracle::to_series("X", oracle::random_ohlc(rng, 10));
    CHECK_THROWS_AS(aggregate_periods(s, 0), Error);
    CHECK_THROWS_WITH(aggregate_periods(s, 15), doctest::Contains("aggregate"));
  }
}

TEST_CASE("validate") {
  std::mt19937_64 rng(3);
  const auto valid = oracle::to_series("V", oracle::random_ohlc(rng, 60));
  CHECK(validate(valid).ok());
  CHECK(validate(PriceSeries{"E", {}}).findings.at(0).kind == FindingKind::EmptySeries);

  SUBCASE("unsorted dates give one finding citing both dates") {
    auto s = valid;
    std::swap(s.bars[10].date, s.bars[11].date);
    const auto report = validate(s);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].kind == FindingKind::DateNotIncreasing);
    CHECK(report.findings[0].index == 11);
    CHECK(report.findings[0].message.find(format_date(s.bars[10].date)) != std::string::npos);
    CHECK(report.findings[0].message.find(format_date(s.bars[11].date)) != std::string::npos);
  }

  SUBCASE("random corruption matches an exhaustive invariant scan") {
    std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
    std::uniform_int_distribution<int> what(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
      auto s = valid;
      const int corruptions = 1 + trial % 5;
      for (int c = 0; c < corruptions; ++c) {
        PriceBar& b = s.bars[pick(rng)];
        switch (what(rng)) {
          case 0: b.open = -b.open; break;
          case 1: b.low = b.high * 1.1; break;
          case 2: b.high = b.low * 0.9; break;
          case 3: b.volume = -1.0; break;
          case 4: b.close = 0.0; break;
          case 5: std::swap(s.bars[pick(rng)].date, b.date); break;
          default: b.date = s.bars.front().date; break;
        }
      }
      const auto report = validate(s);
      const auto expect = oracle::scan_findings(s);
      REQUIRE(report.findings.size() == expect.size());
      for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(report.findings[i].kind == expect[i].first);
        CHECK(report.findings[i].index == expect[i].second);
      }
      CHECK(report.ok() == expect.empty());
    }
  }
}
