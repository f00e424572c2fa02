#include "notional/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "notional/errors.hpp"

namespace notional::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(trim(line.substr(start)));
            break;
        }
        cells.emplace_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

double parse_number(std::string_view cell, const std::string& name, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
        throw ValidationError(name + ":" + std::to_string(line) + ": '" + std::string(cell) +
                              "' is not a finite number");
    return value;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& message) {
    throw ValidationError(name + ":" + std::to_string(line) + ": " + message);
}

}  // namespace

const std::string* Table::metadata_value(std::string_view key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

Table parse_table(std::istream& in, const std::string& name) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::vector<double>> rows;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (have_header)
                fail(name, line_no, "metadata lines must precede the header");
            text.remove_prefix(1);
            std::size_t colon = text.find(':');
            if (colon == std::string_view::npos)
                fail(name, line_no, "metadata line must look like '# key: value'");
            table.metadata.emplace_back(std::string(trim(text.substr(0, colon))),
                                        std::string(trim(text.substr(colon + 1))));
            continue;
        }
        auto cells = split_csv(text);
        if (!have_header) {
            if (cells.size() < 2 || cells[0] != "date")
                fail(name, line_no, "header must be 'date,<label>,...'");
            table.tickers.assign(cells.begin() + 1, cells.end());
            for (std::size_t j = 0; j < table.tickers.size(); ++j) {
                if (table.tickers[j].empty()) fail(name, line_no, "empty column label");
                for (std::size_t k = 0; k < j; ++k)
                    if (table.tickers[k] == table.tickers[j])
                        fail(name, line_no, "duplicate column label " + table.tickers[j]);
            }
            have_header = true;
            continue;
        }
        if (cells.size() != table.tickers.size() + 1)
            fail(name, line_no,
                 "expected " + std::to_string(table.tickers.size() + 1) + " cells, got " +
                     std::to_string(cells.size()));
        Date d = Date::parse(cells[0]);
        if (!table.dates.empty() && !(table.dates.back() < d))
            fail(name, line_no, "dates must be strictly increasing (" + cells[0] + " after " +
                                    table.dates.back().to_string() + ")");
        table.dates.push_back(d);
        table.row_lines.push_back(line_no);
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t j = 1; j < cells.size(); ++j) {
            if (cells[j].empty()) fail(name, line_no, "missing cell in column " + table.tickers[j - 1]);
            row.push_back(parse_number(cells[j], name, line_no));
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) throw ValidationError(name + ": no header row found");
    if (rows.empty()) throw ValidationError(name + ": no data rows");

    table.values.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(table.tickers.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return table;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    return parse_table(in, path.filename().string());
}

void format_table(std::ostream& out, const Table& table, int precision) {
    if (precision < 0 || precision > 17) throw ValidationError("precision must be in 0..17");
    for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << "\n";
    out << "date";
    for (const auto& t : table.tickers) out << ',' << t;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < table.dates.size(); ++i) {
        out << table.dates[i].to_string();
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.*f", precision,
                          table.values(static_cast<Eigen::Index>(i), j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

void write_table(const std::filesystem::path& path, const Table& table, int precision) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    format_table(out, table, precision);
    if (!out) throw ValidationError("failed writing " + path.string());
}

PriceData as_prices(const Table& table, const std::string& name) {
    if (static_cast<std::size_t>(table.values.rows()) != table.dates.size())
        throw ValidationError(name + ": malformed table");
    for (std::size_t i = 0; i < table.dates.size(); ++i)
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            double v = table.values(static_cast<Eigen::Index>(i), j);
            if (v <= 0.0)
                fail(name, table.row_lines[i],
                     "price for " + table.tickers[static_cast<std::size_t>(j)] +
                         " must be positive, got " + std::to_string(v));
        }
    PriceData data;
    data.calendar = make_calendar(table.dates);
    data.tickers = table.tickers;
    data.values = table.values;
    return data;
}

bool is_returns_table(const Table& table) { return table.metadata_value("kind") != nullptr; }

ReturnsData as_returns(const Table& table, const std::string& name) {
    ReturnsData data;
    const std::string* kind = table.metadata_value("kind");
    if (!kind) throw ValidationError(name + ": missing '# kind:' metadata for a returns table");
    data.kind = parse_return_kind(*kind);
    if (const std::string* denom = table.metadata_value("denominator")) data.denominator = *denom;
    if (const std::string* level = table.metadata_value("level")) {
        data.level = parse_number(*level, name, 1);
        if (data.level <= 0.0) throw ValidationError(name + ": level must be positive");
    }
    if (data.kind == ReturnKind::Linear && data.denominator.empty())
        throw ValidationError(name + ": linear returns table lacks '# denominator:' metadata");
    data.tickers = table.tickers;
    data.dates = table.dates;
    data.fractions = table.values / 100.0;
    return data;
}

Table to_table(const ReturnMatrix& matrix) {
    Table table;
    table.metadata.emplace_back("kind", to_string(matrix.kind()));
    if (matrix.kind() == ReturnKind::Linear) {
        table.metadata.emplace_back("denominator", matrix.denominator()->describe());
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", matrix.denominator()->level);
        table.metadata.emplace_back("level", buf);
    }
    table.tickers = matrix.tickers();
    table.dates = matrix.period_end_dates();
    table.values = matrix.values() * 100.0;
    table.row_lines.assign(table.dates.size(), 0);
    return table;
}

Table to_table(const CalendarPtr& calendar, const std::vector<std::string>& tickers,
               const Eigen::MatrixXd& values) {
    Table table;
    table.tickers = tickers;
    table.dates.assign(calendar->days().begin(), calendar->days().end());
    table.values = values;
    table.row_lines.assign(table.dates.size(), 0);
    return table;
}

}  // namespace notional::io
