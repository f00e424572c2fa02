#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "notional/calendar.hpp"
#include "notional/normalization.hpp"
#include "notional/returns.hpp"

namespace notional {

// How to pick the averaging vector: one day, a uniform set of days, or none
// at all ("as-given": prices are taken as already normalized at the level).
struct NormalizationSpec {
    enum class Kind { AsGiven, PointMass, UniformOver };
    Kind kind = Kind::AsGiven;
    std::vector<Date> dates;

    static NormalizationSpec parse(std::string_view text);
    std::string to_string() const;

    // nullopt for as-given; otherwise the averaging vector on `calendar`.
    std::optional<AveragingVector> resolve(const CalendarPtr& calendar) const;
    LinearDenominator denominator(const CalendarPtr& calendar, double level) const;
};

// Declarative analysis settings. `portfolio` holds notional shares per
// ticker; `normalizations` is ordered with the first entry primary.
struct AnalysisConfig {
    std::vector<std::pair<std::string, double>> portfolio;
    std::vector<NormalizationSpec> normalizations{NormalizationSpec{}};
    PeriodRule period = EveryDay{};
    double level = 100.0;
    std::optional<std::vector<double>> weights;  // nullopt: uniform
    double annualization = 52.0;

    const NormalizationSpec& primary_normalization() const { return normalizations.front(); }
};

AnalysisConfig parse_config(std::istream& in, const std::string& name);
AnalysisConfig read_config(const std::filesystem::path& path);

}  // namespace notional
