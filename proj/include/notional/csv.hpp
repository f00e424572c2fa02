#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "notional/calendar.hpp"
#include "notional/returns.hpp"

namespace notional::io {

// A dated table: optional leading "# key: value" metadata lines, a
// "date,<label>,..." header, then one row per date in increasing order.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> tickers;
    std::vector<Date> dates;
    std::vector<std::size_t> row_lines;  // 1-based source line of each data row
    Eigen::MatrixXd values;

    const std::string* metadata_value(std::string_view key) const;
};

Table parse_table(std::istream& in, const std::string& name);
Table read_table(const std::filesystem::path& path);

void format_table(std::ostream& out, const Table& table, int precision = 3);
void write_table(const std::filesystem::path& path, const Table& table, int precision = 3);

// Price-table view: all values strictly positive, dates become the calendar.
struct PriceData {
    CalendarPtr calendar;
    std::vector<std::string> tickers;
    Eigen::MatrixXd values;
};
PriceData as_prices(const Table& table, const std::string& name);

// True when the table carries return metadata ("# kind: ...").
bool is_returns_table(const Table& table);

// Returns-table view: percent cells scaled back to fractions.
struct ReturnsData {
    ReturnKind kind = ReturnKind::Compound;
    std::string denominator;  // canonical normalization spec, linear kind only
    double level = 100.0;
    std::vector<std::string> tickers;
    std::vector<Date> dates;
    Eigen::MatrixXd fractions;
};
ReturnsData as_returns(const Table& table, const std::string& name);

// Percent-valued table with kind/denominator/level metadata.
Table to_table(const ReturnMatrix& matrix);

// Plain price table (no metadata).
Table to_table(const CalendarPtr& calendar, const std::vector<std::string>& tickers,
               const Eigen::MatrixXd& values);

}  // namespace notional::io
