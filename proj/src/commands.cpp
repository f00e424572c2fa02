#include "notional/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "notional/csv.hpp"
#include "notional/errors.hpp"
#include "notional/portfolio.hpp"
#include "notional/returns.hpp"

namespace notional::commands {

namespace {

constexpr const char* kPortfolioLabel = "PORTF";

struct Loaded {
    CalendarPtr calendar;
    std::vector<AdjustedPriceSeries> securities;
    std::optional<AdjustedPriceSeries> portfolio;
};

Loaded load_prices(const io::Table& table, const AnalysisConfig& config,
                   const std::string& name) {
    io::PriceData prices = io::as_prices(table, name);
    Loaded out;
    out.calendar = prices.calendar;

    std::optional<Eigen::Index> portfolio_col;
    for (std::size_t j = 0; j < prices.tickers.size(); ++j) {
        if (prices.tickers[j] == kPortfolioLabel) {
            portfolio_col = static_cast<Eigen::Index>(j);
            continue;
        }
        out.securities.emplace_back(prices.calendar,
                                    prices.values.col(static_cast<Eigen::Index>(j)),
                                    prices.tickers[j]);
    }

    if (portfolio_col) {
        out.portfolio.emplace(prices.calendar, prices.values.col(*portfolio_col),
                              kPortfolioLabel);
    } else if (!config.portfolio.empty()) {
        if (out.securities.empty())
            throw ValidationError(name + ": no security columns to build the portfolio from");
        std::map<std::string, double> shares(config.portfolio.begin(), config.portfolio.end());
        Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out.securities.size()));
        std::vector<std::string> tickers;
        tickers.reserve(out.securities.size());
        for (std::size_t j = 0; j < out.securities.size(); ++j) {
            tickers.push_back(out.securities[j].label());
            if (auto it = shares.find(tickers.back()); it != shares.end()) {
                s[static_cast<Eigen::Index>(j)] = it->second;
                shares.erase(it);
            }
        }
        if (!shares.empty())
            throw ValidationError("portfolio ticker " + shares.begin()->first +
                                  " does not appear in " + name);
        PriceMatrix X(out.securities);
        out.portfolio = synthesize(X, NotionalShares(std::move(s), std::move(tickers)));
    }
    return out;
}

WeightSystem make_weights(const AnalysisConfig& config, std::size_t periods) {
    if (!config.weights) return WeightSystem::uniform(periods);
    if (config.weights->size() != periods)
        throw ValidationError("config gives " + std::to_string(config.weights->size()) +
                              " weights for " + std::to_string(periods) + " return periods");
    Eigen::VectorXd w(static_cast<Eigen::Index>(periods));
    for (std::size_t i = 0; i < periods; ++i) w[static_cast<Eigen::Index>(i)] = (*config.weights)[i];
    double total = w.sum();
    if (!(total > 0.0)) throw ValidationError("config weights must not all be zero");
    return WeightSystem(w / total);
}

AdjustedPriceSeries maybe_normalize(const AdjustedPriceSeries& series,
                                    const std::optional<AveragingVector>& alpha, double level) {
    return alpha ? alpha_normalize(series, *alpha, level) : series;
}

std::string format_number(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    // Negative values that round to zero would print as "-0.00"; resnap them.
    if (buf[0] == '-') {
        std::string_view rest{buf + 1};
        if (rest.find_first_not_of("0.") == std::string_view::npos)
            return std::string(rest);
    }
    return buf;
}

// Relative residual as percent: one decimal at table scale, scientific
// when it underflows that display.
std::string format_error_percent(double fraction) {
    double pct = fraction * 100.0;
    if (pct >= 0.05) return format_number("%.1f%%", pct);
    return format_number("%.3e%%", pct);
}

Eigen::MatrixXd return_columns(const std::vector<AdjustedPriceSeries>& columns,
                               const PeriodSampler& sampler, ReturnKind kind,
                               const std::optional<LinearDenominator>& denominator) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(sampler.periods()),
                        static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        Eigen::VectorXd col;
        switch (kind) {
            case ReturnKind::Compound: col = compound_returns(columns[j], sampler); break;
            case ReturnKind::Continuous: col = continuous_returns(columns[j], sampler); break;
            case ReturnKind::Linear:
                col = denominator->alpha
                          ? linear_returns(columns[j], sampler, *denominator->alpha,
                                           denominator->level)
                          : linear_returns_prenormalized(columns[j], sampler,
                                                         denominator->level);
                break;
        }
        out.col(static_cast<Eigen::Index>(j)) = col;
    }
    return out;
}

}  // namespace

void normalize(const std::filesystem::path& input, const AnalysisConfig& config,
               std::ostream& out, int precision) {
    io::Table table = io::read_table(input);
    Loaded loaded = load_prices(table, config, input.filename().string());
    const NormalizationSpec& spec = config.primary_normalization();
    std::optional<AveragingVector> alpha = spec.resolve(loaded.calendar);

    std::vector<AdjustedPriceSeries> columns = loaded.securities;
    if (loaded.portfolio) columns.push_back(*loaded.portfolio);
    if (columns.empty()) throw ValidationError("nothing to normalize");

    io::Table result;
    result.metadata.emplace_back("normalization", spec.to_string());
    result.metadata.emplace_back("level", format_number("%g", config.level));
    result.dates.assign(loaded.calendar->days().begin(), loaded.calendar->days().end());
    result.values.resize(static_cast<Eigen::Index>(result.dates.size()),
                         static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        result.tickers.push_back(columns[j].label());
        result.values.col(static_cast<Eigen::Index>(j)) =
            maybe_normalize(columns[j], alpha, config.level).prices();
    }
    io::format_table(out, result, precision);
}

void returns(const std::filesystem::path& input, const AnalysisConfig& config, ReturnKind kind,
             std::ostream& out, int precision) {
    io::Table table = io::read_table(input);
    Loaded loaded = load_prices(table, config, input.filename().string());
    if (!loaded.portfolio)
        throw ValidationError(
            "returns need a portfolio: the input has no PORTF column and the config defines no "
            "portfolio");
    PeriodSampler sampler = sample_periodic(loaded.calendar, config.period);
    std::optional<LinearDenominator> denominator;
    if (kind == ReturnKind::Linear)
        denominator = config.primary_normalization().denominator(loaded.calendar, config.level);
    ReturnMatrix matrix = return_matrix(loaded.securities, *loaded.portfolio, sampler, kind,
                                        denominator);
    io::format_table(out, io::to_table(matrix), precision);
}

SolveReport solve(const std::filesystem::path& returns_csv) {
    io::Table table = io::read_table(returns_csv);
    io::ReturnsData data = io::as_returns(table, returns_csv.filename().string());
    if (data.tickers.size() < 2)
        throw ValidationError(
            "solve needs at least one security column plus the trailing portfolio column");

    const Eigen::Index n = data.fractions.cols() - 1;
    SolveReport report;
    report.kind = to_string(data.kind);
    report.securities.assign(data.tickers.begin(), data.tickers.end() - 1);
    report.portfolio = data.tickers.back();
    report.solution = solve_proportions(data.fractions.leftCols(n), data.fractions.col(n));
    return report;
}

void render_text(std::ostream& out, const SolveReport& report) {
    out << "kind: " << report.kind << "\n";
    out << "portfolio: " << report.portfolio << "\n";
    out << "securities:";
    for (const auto& t : report.securities) out << ' ' << t;
    out << "\nproportions (%):";
    for (Eigen::Index j = 0; j < report.solution.proportions.size(); ++j)
        out << ' ' << format_number("%.2f", report.solution.proportions[j] * 100.0);
    out << "\nerror: " << format_error_percent(report.solution.residual_rel)
        << " of the portfolio-return norm\n";
    out << "residuals: relative " << format_number("%.6e", report.solution.residual_rel)
        << ", absolute " << format_number("%.6e", report.solution.residual_abs) << "\n";
}

std::string to_json(const SolveReport& report) {
    nlohmann::ordered_json j;
    j["kind"] = report.kind;
    j["securities"] = report.securities;
    j["portfolio"] = report.portfolio;
    std::vector<double> p(report.solution.proportions.data(),
                          report.solution.proportions.data() + report.solution.proportions.size());
    j["proportions"] = p;
    j["residual_rel"] = report.solution.residual_rel;
    j["residual_abs"] = report.solution.residual_abs;
    return j.dump(2) + "\n";
}

namespace {

StatsBlock make_block(std::string title, const Eigen::MatrixXd& fractions,
                      std::vector<std::string> tickers, const WeightSystem& omega,
                      double annualization, bool fit_proportions,
                      std::optional<Eigen::Index> portfolio_col) {
    StatsBlock block;
    block.title = std::move(title);
    block.report = annualize(stats_report(fractions, std::move(tickers), omega), annualization);
    if (fit_proportions && portfolio_col && fractions.cols() >= 2) {
        Eigen::MatrixXd securities(fractions.rows(), fractions.cols() - 1);
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < fractions.cols(); ++j)
            if (j != *portfolio_col) securities.col(k++) = fractions.col(j);
        block.proportions =
            solve_proportions(securities, fractions.col(*portfolio_col)).proportions;
    }
    return block;
}

std::optional<Eigen::Index> find_portfolio(const std::vector<std::string>& tickers) {
    for (std::size_t j = 0; j < tickers.size(); ++j)
        if (tickers[j] == kPortfolioLabel) return static_cast<Eigen::Index>(j);
    return std::nullopt;
}

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& m, Eigen::Index col) {
    Eigen::MatrixXd out(m.rows(), m.cols() - 1);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (j != col) out.col(k++) = m.col(j);
    return out;
}

}  // namespace

StatsOutput stats(const std::filesystem::path& input, const AnalysisConfig& config) {
    io::Table table = io::read_table(input);
    const std::string name = input.filename().string();
    StatsOutput output;
    output.annualization = config.annualization;

    if (io::is_returns_table(table)) {
        io::ReturnsData data = io::as_returns(table, name);
        WeightSystem omega = make_weights(config, static_cast<std::size_t>(data.fractions.rows()));
        std::optional<Eigen::Index> portfolio_col = find_portfolio(data.tickers);
        std::string title = to_string(data.kind);
        if (!data.denominator.empty()) title += " " + data.denominator;
        output.blocks.push_back(make_block(std::move(title), data.fractions, data.tickers, omega,
                                           config.annualization,
                                           data.kind == ReturnKind::Linear, portfolio_col));
        Eigen::MatrixXd securities = portfolio_col ? drop_column(data.fractions, *portfolio_col)
                                                   : data.fractions;
        std::vector<std::string> sec_tickers;
        for (const auto& t : data.tickers)
            if (t != kPortfolioLabel) sec_tickers.push_back(t);
        if (securities.cols() > 0) {
            output.correlation = covariance(securities, omega).correlation;
            output.correlation_tickers = std::move(sec_tickers);
        }
        return output;
    }

    Loaded loaded = load_prices(table, config, name);
    std::vector<AdjustedPriceSeries> columns = loaded.securities;
    std::optional<Eigen::Index> portfolio_col;
    if (loaded.portfolio) {
        portfolio_col = static_cast<Eigen::Index>(columns.size());
        columns.push_back(*loaded.portfolio);
    }
    if (columns.empty()) throw ValidationError(name + ": no columns to analyze");
    std::vector<std::string> tickers;
    for (const auto& c : columns) tickers.push_back(c.label());

    PeriodSampler sampler = sample_periodic(loaded.calendar, config.period);
    WeightSystem omega = make_weights(config, sampler.periods());

    output.blocks.push_back(make_block("compound",
                                       return_columns(columns, sampler, ReturnKind::Compound, {}),
                                       tickers, omega, config.annualization, false,
                                       portfolio_col));
    output.blocks.push_back(
        make_block("continuous", return_columns(columns, sampler, ReturnKind::Continuous, {}),
                   tickers, omega, config.annualization, false, portfolio_col));

    bool have_correlation = false;
    for (const NormalizationSpec& spec : config.normalizations) {
        LinearDenominator denominator = spec.denominator(loaded.calendar, config.level);
        Eigen::MatrixXd fractions =
            return_columns(columns, sampler, ReturnKind::Linear, denominator);
        output.blocks.push_back(make_block("linear " + spec.to_string(), fractions, tickers,
                                           omega, config.annualization, true, portfolio_col));
        if (!have_correlation && !loaded.securities.empty()) {
            Eigen::MatrixXd securities =
                portfolio_col ? drop_column(fractions, *portfolio_col) : fractions;
            output.correlation = covariance(securities, omega).correlation;
            output.correlation_tickers.assign(tickers.begin(),
                                              tickers.begin() +
                                                  static_cast<std::ptrdiff_t>(securities.cols()));
            have_correlation = true;
        }
    }
    return output;
}

namespace {

void render_cell(std::ostream& out, const std::string& text, int width = 9) {
    out << ' ';
    for (int pad = width - static_cast<int>(text.size()); pad > 0; --pad) out << ' ';
    out << text;
}

std::string stat_cell(double value, const char* fmt) {
    if (std::isnan(value)) return "undef";
    return format_number(fmt, value);
}

}  // namespace

void render_text(std::ostream& out, const StatsOutput& output) {
    for (const StatsBlock& block : output.blocks) {
        out << "== " << block.title << " ==  (annualized, P = "
            << format_number("%g", output.annualization) << ")\n";
        out << "         ";
        for (const auto& t : block.report.tickers) render_cell(out, t);
        out << "\ne (%)    ";
        for (Eigen::Index j = 0; j < block.report.expected.size(); ++j)
            render_cell(out, stat_cell(block.report.expected[j] * 100.0, "%.2f"));
        out << "\nsigma (%)";
        for (Eigen::Index j = 0; j < block.report.sigma.size(); ++j)
            render_cell(out, stat_cell(block.report.sigma[j] * 100.0, "%.2f"));
        out << "\ne/sigma  ";
        for (Eigen::Index j = 0; j < block.report.ratio.size(); ++j)
            render_cell(out, stat_cell(block.report.ratio[j], "%.3f"));
        out << "\np (%)    ";
        if (block.proportions) {
            for (Eigen::Index j = 0; j < block.proportions->size(); ++j)
                render_cell(out, format_number("%.2f", (*block.proportions)[j] * 100.0));
        } else {
            for (std::size_t j = 0; j < block.report.tickers.size(); ++j)
                if (block.report.tickers[j] != kPortfolioLabel) render_cell(out, "?");
        }
        out << "\n\n";
    }
    if (output.correlation.size() > 0) {
        out << "== correlation (linear returns) ==\n         ";
        for (const auto& t : output.correlation_tickers) render_cell(out, t);
        out << "\n";
        for (Eigen::Index i = 0; i < output.correlation.rows(); ++i) {
            std::string label = output.correlation_tickers[static_cast<std::size_t>(i)];
            out << label;
            for (int pad = 9 - static_cast<int>(label.size()); pad > 0; --pad) out << ' ';
            for (Eigen::Index j = 0; j < output.correlation.cols(); ++j)
                render_cell(out, stat_cell(output.correlation(i, j), "%.3f"));
            out << "\n";
        }
    }
}

std::vector<std::filesystem::path> plotdata(const std::filesystem::path& input,
                                            const AnalysisConfig& config,
                                            const std::filesystem::path& out_dir,
                                            const std::vector<std::string>& exclude,
                                            int precision) {
    io::Table table = io::read_table(input);
    Loaded loaded = load_prices(table, config, input.filename().string());
    const NormalizationSpec& spec = config.primary_normalization();
    std::optional<AveragingVector> alpha = spec.resolve(loaded.calendar);

    std::vector<AdjustedPriceSeries> columns = loaded.securities;
    if (loaded.portfolio) columns.push_back(*loaded.portfolio);
    std::set<std::string> skip(exclude.begin(), exclude.end());

    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const AdjustedPriceSeries& column : columns) {
        if (skip.contains(column.label())) continue;
        if (column.label().find('/') != std::string::npos ||
            column.label().find('\\') != std::string::npos)
            throw ValidationError("ticker '" + column.label() + "' cannot name a file");
        io::Table single;
        single.metadata.emplace_back("normalization", spec.to_string());
        single.metadata.emplace_back("level", format_number("%g", config.level));
        single.tickers = {column.label()};
        single.dates.assign(loaded.calendar->days().begin(), loaded.calendar->days().end());
        single.values = maybe_normalize(column, alpha, config.level).prices();
        std::filesystem::path path = out_dir / (column.label() + ".csv");
        io::write_table(path, single, precision);
        written.push_back(path);
    }
    return written;
}

}  // namespace notional::commands
