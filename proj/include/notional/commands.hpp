#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "notional/config.hpp"
#include "notional/solver.hpp"
#include "notional/statistics.hpp"

namespace notional::commands {

// Emits the input prices normalized by the config's primary normalization
// (as-given passes them through), appending a synthesized PORTF column when
// the config defines a portfolio and the input has none.
void normalize(const std::filesystem::path& input, const AnalysisConfig& config,
               std::ostream& out, int precision = 3);

// Emits the periodic return table of the given kind, securities first and
// the portfolio column (from the input or synthesized) last, in percent.
void returns(const std::filesystem::path& input, const AnalysisConfig& config, ReturnKind kind,
             std::ostream& out, int precision = 3);

struct SolveReport {
    std::string kind;
    std::vector<std::string> securities;
    std::string portfolio;
    ProportionSolution solution;
};

// Fits proportions to a returns CSV whose last column is the portfolio.
SolveReport solve(const std::filesystem::path& returns_csv);
void render_text(std::ostream& out, const SolveReport& report);
std::string to_json(const SolveReport& report);

struct StatsBlock {
    std::string title;
    StatsReport report;  // annualized per the config
    // Fitted proportions over the securities; engaged for linear blocks when
    // a portfolio column exists.
    std::optional<Eigen::VectorXd> proportions;
};

struct StatsOutput {
    double annualization = 1.0;
    std::vector<StatsBlock> blocks;
    std::vector<std::string> correlation_tickers;
    Eigen::MatrixXd correlation;  // empty when no security columns exist
};

// On a price CSV: compound, continuous, and one linear block per configured
// normalization. On a returns CSV: a single block of its stated kind.
// Correlations come from the first linear block's security columns (they do
// not depend on the normalization choice).
StatsOutput stats(const std::filesystem::path& input, const AnalysisConfig& config);
void render_text(std::ostream& out, const StatsOutput& output);

// Writes one <ticker>.csv per kept column (normalized like `normalize`) into
// out_dir; returns the paths written, in column order.
std::vector<std::filesystem::path> plotdata(const std::filesystem::path& input,
                                            const AnalysisConfig& config,
                                            const std::filesystem::path& out_dir,
                                            const std::vector<std::string>& exclude,
                                            int precision = 3);

}  // namespace notional::commands
