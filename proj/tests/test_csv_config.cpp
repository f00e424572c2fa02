#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "notional/config.hpp"
#include "notional/csv.hpp"
#include "notional/errors.hpp"
#include "notional/normalization.hpp"

#include "helpers.hpp"

using namespace notional;

namespace {

io::Table parse(const std::string& text, const std::string& name = "test.csv") {
    std::istringstream in(text);
    return io::parse_table(in, name);
}

std::string error_of(const std::string& text) {
    std::istringstream in(text);
    try {
        io::parse_table(in, "test.csv");
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

AnalysisConfig config_of(const std::string& text, const std::string& name = "test.cfg") {
    std::istringstream in(text);
    return parse_config(in, name);
}

std::string config_error(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_config(in, "test.cfg");
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("tables parse metadata, header, and dated rows") {
    io::Table t = parse(
        "# kind: compound\n"
        "# note: two words\n"
        "date,AAA,BBB\n"
        "2010-01-04,1.5,-2.25\n"
        "2010-01-05,0,10\n");
    CHECK(t.metadata.size() == 2);
    CHECK(*t.metadata_value("kind") == "compound");
    CHECK(*t.metadata_value("note") == "two words");
    CHECK(t.metadata_value("missing") == nullptr);
    CHECK(t.tickers == std::vector<std::string>{"AAA", "BBB"});
    CHECK(t.dates.size() == 2);
    CHECK(t.dates[1] == Date::parse("2010-01-05"));
    CHECK(t.values(0, 1) == -2.25);
    CHECK(t.values(1, 0) == 0.0);
    CHECK(t.row_lines == std::vector<std::size_t>{4, 5});
}

TEST_CASE("table errors carry the file name and line number") {
    CHECK(error_of("date,A\n# kind: x\n2010-01-04,1\n").find("test.csv:2") == 0);
    CHECK(error_of("# kind x\ndate,A\n2010-01-04,1\n").find("test.csv:1") == 0);
    CHECK(error_of("price,A\n2010-01-04,1\n") != "");
    CHECK(error_of("date\n2010-01-04\n") != "");
    CHECK(error_of("date,A,A\n2010-01-04,1,2\n").find("duplicate") != std::string::npos);
    CHECK(error_of("date,A,\n2010-01-04,1,2\n") != "");
    CHECK(error_of("date,A,B\n2010-01-04,1\n").find("test.csv:2") == 0);
    CHECK(error_of("date,A\n2010-01-04,1\n2010-01-04,2\n").find("test.csv:3") == 0);
    CHECK(error_of("date,A\n2010-01-05,1\n2010-01-04,2\n") != "");
    CHECK(error_of("date,A\n2010-01-04,abc\n").find("test.csv:2") == 0);
    CHECK(error_of("date,A\n2010-01-04,1e999\n") != "");
    CHECK(error_of("date,A\nbad-date,1\n") != "");
    CHECK(error_of("").find("no header") != std::string::npos);
    CHECK(error_of("date,A\n").find("no data rows") != std::string::npos);
}

TEST_CASE("formatting a parsed table round-trips byte for byte") {
    std::string text =
        "# kind: linear\n"
        "# denominator: as-given\n"
        "# level: 100\n"
        "date,IEF,PORTF\n"
        "2010-04-09,0.011,2.922\n"
        "2010-04-16,-0.493,0.120\n";
    io::Table t = parse(text);
    std::ostringstream out;
    io::format_table(out, t, 3);
    CHECK(out.str() == text);
}

TEST_CASE("formatting precision is bounded and applied") {
    io::Table t = parse("date,A\n2010-01-04,1.23456789\n");
    std::ostringstream wide;
    io::format_table(wide, t, 6);
    CHECK(wide.str().find("1.234568") != std::string::npos);
    std::ostringstream zero;
    io::format_table(zero, t, 0);
    CHECK(zero.str().find("2010-01-04,1\n") != std::string::npos);
    CHECK_THROWS_AS(io::format_table(zero, t, -1), ValidationError);
    CHECK_THROWS_AS(io::format_table(zero, t, 18), ValidationError);
}

TEST_CASE("price views demand positive entries") {
    io::Table good = parse("date,A,B\n2010-01-04,1.5,2\n2010-01-05,1.6,2.1\n");
    io::PriceData prices = io::as_prices(good, "test.csv");
    CHECK(prices.calendar->size() == 2);
    CHECK(prices.tickers.size() == 2);
    CHECK(prices.values(1, 1) == 2.1);

    io::Table bad = parse("date,A\n2010-01-04,1\n2010-01-05,0\n");
    try {
        io::as_prices(bad, "test.csv");
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("test.csv:3") == 0);
        CHECK(std::string(e.what()).find("positive") != std::string::npos);
    }
}

TEST_CASE("returns views read kind metadata and rescale percent") {
    io::Table plain = parse("date,A\n2010-01-04,1\n");
    CHECK(!io::is_returns_table(plain));
    CHECK_THROWS_AS(io::as_returns(plain, "test.csv"), ValidationError);

    io::Table compound = parse("# kind: compound\ndate,A\n2010-01-08,2.5\n");
    CHECK(io::is_returns_table(compound));
    io::ReturnsData data = io::as_returns(compound, "test.csv");
    CHECK(data.kind == ReturnKind::Compound);
    CHECK(data.fractions(0, 0) == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(data.level == 100.0);
    CHECK(data.denominator.empty());

    io::Table linear = parse(
        "# kind: linear\n# denominator: as-given\n# level: 50\ndate,A\n2010-01-08,1\n");
    io::ReturnsData lin = io::as_returns(linear, "test.csv");
    CHECK(lin.kind == ReturnKind::Linear);
    CHECK(lin.denominator == "as-given");
    CHECK(lin.level == 50.0);

    CHECK_THROWS_AS(
        io::as_returns(parse("# kind: linear\ndate,A\n2010-01-08,1\n"), "test.csv"),
        ValidationError);
    CHECK_THROWS_AS(
        io::as_returns(parse("# kind: linear\n# denominator: as-given\n# level: 0\n"
                             "date,A\n2010-01-08,1\n"),
                       "test.csv"),
        ValidationError);
    CHECK_THROWS_AS(
        io::as_returns(parse("# kind: hourly\ndate,A\n2010-01-08,1\n"), "test.csv"),
        ValidationError);
}

TEST_CASE("return matrices serialize with their metadata") {
    CalendarPtr cal = testutil::weekday_calendar(6);
    std::mt19937 rng(4040);
    AdjustedPriceSeries x = testutil::random_series(cal, rng, "ONLY");
    PeriodSampler daily = sample_periodic(cal, EveryDay{});
    std::vector<Date> two{(*cal)[0], (*cal)[3]};
    AveragingVector alpha = uniform_over(cal, two);

    ReturnMatrix linear = return_matrix(std::span<const AdjustedPriceSeries>{}, x, daily,
                                        ReturnKind::Linear, LinearDenominator{alpha, 100.0});
    io::Table t = io::to_table(linear);
    CHECK(*t.metadata_value("kind") == "linear");
    CHECK(*t.metadata_value("denominator") == alpha.description());
    CHECK(*t.metadata_value("level") == "100");
    CHECK(t.tickers == std::vector<std::string>{"ONLY"});
    CHECK(t.dates == linear.period_end_dates());
    CHECK(t.values(0, 0) == doctest::Approx(100.0 * linear.values()(0, 0)).epsilon(1e-15));

    ReturnMatrix compound =
        return_matrix(std::span<const AdjustedPriceSeries>{}, x, daily, ReturnKind::Compound);
    io::Table tc = io::to_table(compound);
    CHECK(*tc.metadata_value("kind") == "compound");
    CHECK(tc.metadata_value("denominator") == nullptr);

    // Percent round trip through the parser.
    std::ostringstream out;
    io::format_table(out, tc, 12);
    std::istringstream in(out.str());
    io::ReturnsData back = io::as_returns(io::parse_table(in, "round.csv"), "round.csv");
    CHECK(testutil::max_abs(back.fractions - compound.values()) < 1e-12);
}

TEST_CASE("normalization specs parse and print canonically") {
    NormalizationSpec as_given = NormalizationSpec::parse("as-given");
    CHECK(as_given.kind == NormalizationSpec::Kind::AsGiven);
    CHECK(as_given.to_string() == "as-given");

    NormalizationSpec point = NormalizationSpec::parse("point-mass 2010-06-04");
    CHECK(point.kind == NormalizationSpec::Kind::PointMass);
    CHECK(point.dates == std::vector<Date>{Date::parse("2010-06-04")});
    CHECK(point.to_string() == "point-mass 2010-06-04");

    NormalizationSpec uniform = NormalizationSpec::parse("uniform-over 2010-06-04 2010-06-11");
    CHECK(uniform.kind == NormalizationSpec::Kind::UniformOver);
    CHECK(uniform.dates.size() == 2);
    CHECK(uniform.to_string() == "uniform-over 2010-06-04 2010-06-11");
    CHECK(NormalizationSpec::parse(uniform.to_string()).to_string() == uniform.to_string());

    CHECK_THROWS_AS(NormalizationSpec::parse("point-mass"), ValidationError);
    CHECK_THROWS_AS(NormalizationSpec::parse("point-mass 2010-06-04 2010-06-11"),
                    ValidationError);
    CHECK_THROWS_AS(NormalizationSpec::parse("uniform-over"), ValidationError);
    CHECK_THROWS_AS(NormalizationSpec::parse("as-given 2010-06-04"), ValidationError);
    CHECK_THROWS_AS(NormalizationSpec::parse("average"), ValidationError);
}

TEST_CASE("normalization specs resolve against a calendar") {
    CalendarPtr cal = testutil::weekday_calendar(10);
    NormalizationSpec as_given;
    CHECK(!as_given.resolve(cal).has_value());
    LinearDenominator d = as_given.denominator(cal, 75.0);
    CHECK(!d.alpha.has_value());
    CHECK(d.level == 75.0);
    CHECK(d.describe() == "as-given");

    NormalizationSpec point = NormalizationSpec::parse("point-mass " + (*cal)[4].to_string());
    std::optional<AveragingVector> alpha = point.resolve(cal);
    REQUIRE(alpha.has_value());
    CHECK(alpha->weights()[4] == 1.0);
    CHECK(alpha->description() == point.to_string());

    NormalizationSpec missing = NormalizationSpec::parse("point-mass 2035-01-06");
    CHECK_THROWS_AS(missing.resolve(cal), ValidationError);
}

TEST_CASE("analysis configs parse every setting") {
    AnalysisConfig cfg = config_of(
        "# weekly setup\n"
        "portfolio = IEF:0.35 IWB:0.40 IWM:0 EFA:0.25 EEM:0\n"
        "normalization = as-given   # primary\n"
        "normalization = uniform-over 2010-10-08 2010-10-15\n"
        "period = week-ending\n"
        "level = 100\n"
        "weights = uniform\n"
        "annualization = 52\n");
    REQUIRE(cfg.portfolio.size() == 5);
    CHECK(cfg.portfolio[0] == std::pair<std::string, double>{"IEF", 0.35});
    CHECK(cfg.portfolio[2].second == 0.0);
    REQUIRE(cfg.normalizations.size() == 2);
    CHECK(cfg.primary_normalization().kind == NormalizationSpec::Kind::AsGiven);
    CHECK(cfg.normalizations[1].kind == NormalizationSpec::Kind::UniformOver);
    CHECK(std::holds_alternative<WeekEnding>(cfg.period));
    CHECK(cfg.level == 100.0);
    CHECK(!cfg.weights.has_value());
    CHECK(cfg.annualization == 52.0);
}

TEST_CASE("analysis configs have usable defaults") {
    AnalysisConfig cfg = config_of("level = 50\n");
    CHECK(cfg.portfolio.empty());
    REQUIRE(cfg.normalizations.size() == 1);
    CHECK(cfg.primary_normalization().kind == NormalizationSpec::Kind::AsGiven);
    CHECK(std::holds_alternative<EveryDay>(cfg.period));
    CHECK(cfg.level == 50.0);
    CHECK(cfg.annualization == 52.0);

    AnalysisConfig blank = config_of("# nothing but comments\n\n");
    CHECK(blank.portfolio.empty());
    CHECK(blank.level == 100.0);
}

TEST_CASE("the shipped weekly config parses as expected") {
    std::ifstream in(testutil::fixture("weekly.cfg"));
    REQUIRE(in.good());
    AnalysisConfig cfg = parse_config(in, "weekly.cfg");
    REQUIRE(cfg.portfolio.size() == 5);
    CHECK(cfg.portfolio[1] == std::pair<std::string, double>{"IWB", 0.40});
    REQUIRE(cfg.normalizations.size() == 2);
    CHECK(cfg.normalizations[0].kind == NormalizationSpec::Kind::AsGiven);
    CHECK(cfg.normalizations[1].dates.size() == 13);
    CHECK(cfg.normalizations[1].dates == testutil::alpha13_dates());
    CHECK(std::holds_alternative<WeekEnding>(cfg.period));
    CHECK(cfg.annualization == 52.0);
}

TEST_CASE("config errors name the offending line") {
    CHECK(config_error("portfolio = \n").find("test.cfg:1") == 0);
    CHECK(config_error("level = 100\nlevel = 50\n").find("test.cfg:2") == 0);
    CHECK(config_error("oops = 1\n").find("unknown") != std::string::npos);
    CHECK(config_error("portfolio = IEF\n") != "");
    CHECK(config_error("portfolio = :0.35\n") != "");
    CHECK(config_error("portfolio = IEF:\n") != "");
    CHECK(config_error("portfolio = IEF:-1\n") != "");
    CHECK(config_error("portfolio = IEF:0.5 IEF:0.5\n").find("duplicate") != std::string::npos);
    CHECK(config_error("portfolio = IEF:0 IWB:0\n") != "");
    CHECK(config_error("period = monthly\n") != "");
    CHECK(config_error("level = 0\n") != "");
    CHECK(config_error("level = -5\n") != "");
    CHECK(config_error("weights = 0.5 -0.5 1\n") != "");
    CHECK(config_error("annualization = 0\n") != "");
    CHECK(config_error("normalization = weekly\n") != "");
    CHECK(config_error("nonsense\n") != "");
}

TEST_CASE("period and weight settings cover their variants") {
    AnalysisConfig daily = config_of("period = every-day\n");
    CHECK(std::holds_alternative<EveryDay>(daily.period));

    AnalysisConfig dated = config_of("period = dates 2010-01-04 2010-01-08 2010-01-15\n");
    REQUIRE(std::holds_alternative<ExplicitDates>(dated.period));
    CHECK(std::get<ExplicitDates>(dated.period).dates.size() == 3);

    AnalysisConfig weighted = config_of("weights = 0.5 0.25 0.25\n");
    REQUIRE(weighted.weights.has_value());
    CHECK(weighted.weights->size() == 3);
    CHECK((*weighted.weights)[0] == 0.5);

    AnalysisConfig zeros = config_of("weights = 1 0 1\n");
    REQUIRE(zeros.weights.has_value());
    CHECK((*zeros.weights)[1] == 0.0);
}
