#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "notional/commands.hpp"
#include "notional/errors.hpp"

namespace {

namespace fs = std::filesystem;
using notional::AnalysisConfig;

AnalysisConfig load_config(const std::optional<fs::path>& path) {
    return path ? notional::read_config(*path) : AnalysisConfig{};
}

// Runs `body` against --out (or stdout when absent).
template <typename Body>
void with_output(const std::optional<fs::path>& out, Body&& body) {
    if (!out) {
        body(std::cout);
        return;
    }
    std::ofstream file(*out);
    if (!file) throw notional::ValidationError("cannot write " + out->string());
    body(file);
    if (!file) throw notional::ValidationError("failed writing " + out->string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Portfolio price normalization, returns, and statistics"};
    app.require_subcommand(1);

    fs::path input;
    std::optional<fs::path> config_path;
    std::optional<fs::path> out_path;
    std::string kind_name = "compound";
    int precision = 3;
    std::vector<std::string> exclude;

    auto add_common = [&](CLI::App* cmd, bool with_config = true) {
        cmd->add_option("input", input, "input CSV file")->required();
        if (with_config) cmd->add_option("--config", config_path, "analysis config file");
        cmd->add_option("--out", out_path, "output path (default: stdout)");
    };

    CLI::App* normalize = app.add_subcommand("normalize", "normalize price columns");
    add_common(normalize);
    normalize->add_option("--precision", precision, "output decimals (default 3)");

    CLI::App* returns = app.add_subcommand("returns", "compute periodic returns");
    add_common(returns);
    returns->add_option("--kind", kind_name, "compound | continuous | linear")->required();
    returns->add_option("--precision", precision, "output decimals (default 3)");

    CLI::App* solve = app.add_subcommand("solve", "fit proportions to a returns table");
    solve->add_option("input", input, "returns CSV (portfolio column last)")->required();
    solve->add_option("--out", out_path, "write a JSON report here as well");

    CLI::App* stats = app.add_subcommand("stats", "return statistics and correlations");
    add_common(stats);

    CLI::App* plotdata = app.add_subcommand("plotdata", "per-ticker normalized price files");
    plotdata->add_option("input", input, "input CSV file")->required();
    plotdata->add_option("--config", config_path, "analysis config file");
    plotdata->add_option("--out", out_path, "output directory")->required();
    plotdata->add_option("--exclude", exclude, "tickers to skip")->delimiter(',');
    plotdata->add_option("--precision", precision, "output decimals (default 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*normalize) {
            AnalysisConfig config = load_config(config_path);
            with_output(out_path,
                        [&](std::ostream& out) { notional::commands::normalize(input, config, out, precision); });
        } else if (*returns) {
            AnalysisConfig config = load_config(config_path);
            notional::ReturnKind kind = notional::parse_return_kind(kind_name);
            with_output(out_path, [&](std::ostream& out) {
                notional::commands::returns(input, config, kind, out, precision);
            });
        } else if (*solve) {
            notional::commands::SolveReport report = notional::commands::solve(input);
            notional::commands::render_text(std::cout, report);
            if (out_path) {
                std::ofstream file(*out_path);
                if (!file) throw notional::ValidationError("cannot write " + out_path->string());
                file << notional::commands::to_json(report);
            }
        } else if (*stats) {
            AnalysisConfig config = load_config(config_path);
            notional::commands::StatsOutput output = notional::commands::stats(input, config);
            with_output(out_path,
                        [&](std::ostream& out) { notional::commands::render_text(out, output); });
        } else if (*plotdata) {
            AnalysisConfig config = load_config(config_path);
            auto written =
                notional::commands::plotdata(input, config, *out_path, exclude, precision);
            for (const auto& path : written) std::cout << path.string() << "\n";
        }
    } catch (const notional::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const notional::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
