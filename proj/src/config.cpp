#include "notional/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "notional/errors.hpp"

namespace notional {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::istringstream stream{std::string(text)};
    std::string word;
    while (stream >> word) words.push_back(word);
    return words;
}

double parse_double(std::string_view text, const std::string& what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        throw ValidationError(what + ": '" + std::string(text) + "' is not a finite number");
    return value;
}

std::vector<Date> parse_dates(const std::vector<std::string>& words, std::size_t from,
                              const std::string& what) {
    if (from >= words.size()) throw ValidationError(what + ": expected at least one date");
    std::vector<Date> dates;
    dates.reserve(words.size() - from);
    for (std::size_t i = from; i < words.size(); ++i) dates.push_back(Date::parse(words[i]));
    return dates;
}

}  // namespace

NormalizationSpec NormalizationSpec::parse(std::string_view text) {
    auto words = split_words(text);
    if (words.empty()) throw ValidationError("empty normalization spec");
    NormalizationSpec spec;
    if (words[0] == "as-given") {
        if (words.size() != 1) throw ValidationError("'as-given' takes no arguments");
        spec.kind = Kind::AsGiven;
    } else if (words[0] == "point-mass") {
        if (words.size() != 2) throw ValidationError("'point-mass' takes exactly one date");
        spec.kind = Kind::PointMass;
        spec.dates.push_back(Date::parse(words[1]));
    } else if (words[0] == "uniform-over") {
        spec.kind = Kind::UniformOver;
        spec.dates = parse_dates(words, 1, "uniform-over");
    } else {
        throw ValidationError("unknown normalization '" + words[0] +
                              "' (expected as-given, point-mass, or uniform-over)");
    }
    return spec;
}

std::string NormalizationSpec::to_string() const {
    switch (kind) {
        case Kind::AsGiven: return "as-given";
        case Kind::PointMass: return "point-mass " + dates.front().to_string();
        case Kind::UniformOver: {
            std::string out = "uniform-over";
            for (const Date& d : dates) out += " " + d.to_string();
            return out;
        }
    }
    return "";
}

std::optional<AveragingVector> NormalizationSpec::resolve(const CalendarPtr& calendar) const {
    switch (kind) {
        case Kind::AsGiven: return std::nullopt;
        case Kind::PointMass: return point_mass(calendar, dates.front());
        case Kind::UniformOver: return uniform_over(calendar, dates);
    }
    return std::nullopt;
}

LinearDenominator NormalizationSpec::denominator(const CalendarPtr& calendar, double level) const {
    return LinearDenominator{resolve(calendar), level};
}

AnalysisConfig parse_config(std::istream& in, const std::string& name) {
    AnalysisConfig config;
    bool saw_normalization = false;
    std::set<std::string> seen_single;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text{line};
        if (std::size_t hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;

        auto where = [&] { return name + ":" + std::to_string(line_no); };
        std::size_t eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError(where() + ": expected 'key = value'");
        std::string key{trim(text.substr(0, eq))};
        std::string_view value = trim(text.substr(eq + 1));
        if (value.empty()) throw ValidationError(where() + ": empty value for '" + key + "'");

        if (key != "normalization" && !seen_single.insert(key).second)
            throw ValidationError(where() + ": duplicate key '" + key + "'");

        try {
            if (key == "portfolio") {
                double total = 0.0;
                std::set<std::string> tickers;
                for (const auto& entry : split_words(value)) {
                    std::size_t colon = entry.find(':');
                    if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size())
                        throw ValidationError("portfolio entries look like TICKER:SHARES, got '" +
                                              entry + "'");
                    std::string ticker = entry.substr(0, colon);
                    double shares = parse_double(entry.substr(colon + 1), "shares for " + ticker);
                    if (shares < 0.0)
                        throw ValidationError("shares for " + ticker + " must be nonnegative");
                    if (!tickers.insert(ticker).second)
                        throw ValidationError("duplicate portfolio ticker " + ticker);
                    config.portfolio.emplace_back(std::move(ticker), shares);
                    total += shares;
                }
                if (config.portfolio.empty())
                    throw ValidationError("portfolio must list at least one TICKER:SHARES entry");
                if (!(total > 0.0))
                    throw ValidationError("at least one portfolio share must be positive");
            } else if (key == "normalization") {
                if (!saw_normalization) {
                    config.normalizations.clear();
                    saw_normalization = true;
                }
                config.normalizations.push_back(NormalizationSpec::parse(value));
            } else if (key == "period") {
                auto words = split_words(value);
                if (words.size() == 1 && words[0] == "every-day")
                    config.period = EveryDay{};
                else if (words.size() == 1 && words[0] == "week-ending")
                    config.period = WeekEnding{};
                else if (!words.empty() && words[0] == "dates")
                    config.period = ExplicitDates{parse_dates(words, 1, "period dates")};
                else
                    throw ValidationError(
                        "period must be every-day, week-ending, or 'dates <date>...'");
            } else if (key == "level") {
                config.level = parse_double(value, "level");
                if (!(config.level > 0.0)) throw ValidationError("level must be positive");
            } else if (key == "weights") {
                if (value == "uniform") {
                    config.weights.reset();
                } else {
                    std::vector<double> weights;
                    for (const auto& word : split_words(value)) {
                        double w = parse_double(word, "weight");
                        if (w < 0.0) throw ValidationError("weights must be nonnegative");
                        weights.push_back(w);
                    }
                    config.weights = std::move(weights);
                }
            } else if (key == "annualization") {
                config.annualization = parse_double(value, "annualization");
                if (!(config.annualization > 0.0))
                    throw ValidationError("annualization must be positive");
            } else {
                throw ValidationError("unknown key '" + key + "'");
            }
        } catch (const ValidationError& e) {
            throw ValidationError(where() + ": " + e.what());
        }
    }
    return config;
}

AnalysisConfig read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    return parse_config(in, path.filename().string());
}

}  // namespace notional
