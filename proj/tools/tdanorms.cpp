// Command-line front end: compute persistence-norm series from daily index
// prices and relate them to monthly uncertainty indexes.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "tdanorms/error.hpp"
#include "tdanorms/pipeline.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Overrides {
    std::string config_file;
    std::map<std::string, std::string> values;
};

// Registers the shared pipeline flags on a subcommand. Each flag maps onto a
// config-file key so that command-line values override the file.
void add_pipeline_options(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_file, "key = value configuration file")->check(CLI::ExistingFile);
    auto key = [&](const char* flag, const char* name, const char* help) {
        cmd.add_option_function<std::string>(
            flag, [&o, name](const std::string& v) { o.values[name] = v; }, help);
    };
    key("--prices", "prices", "comma-separated LABEL=PATH price CSVs");
    key("--uncertainty", "uncertainty", "monthly uncertainty CSV");
    key("--windows", "windows", "window lengths in months, e.g. 1,3,6,12");
    key("--norm-dim", "norm_dim", "homology dimension of the norms (0 or 1)");
    key("--vol-mean", "vol_mean", "geometric|arithmetic");
    key("--nw-lag", "nw_lag", "auto|N Newey-West lag");
    key("--hac-df-correction", "hac_df_correction", "true|false n/(n-k) scaling of the HAC covariance");
    key("--padding", "padding", "lookback|burnin");
    key("--sample-start", "sample_start", "first anchor month YYYY-MM");
    key("--sample-end", "sample_end", "last anchor month YYYY-MM");
    key("--split", "split", "median|none");
    key("--format", "format", "csv|json");
    key("--out", "out", "output directory");
    key("--date-column", "date_column", "date column of the price CSVs");
    key("--price-column", "price_column", "price column of the price CSVs");
    key("--uncertainty-columns", "uncertainty_columns", "uncertainty columns used in regressions");
    key("--correlation-columns", "correlation_columns", "uncertainty columns shown in correlation tables");
}

tdanorms::PipelineConfig build_config(const Overrides& o) {
    tdanorms::PipelineConfig config;
    if (!o.config_file.empty()) {
        for (const auto& [k, v] : tdanorms::read_config_file(o.config_file)) tdanorms::apply_config_value(config, k, v);
    }
    for (const auto& [k, v] : o.values) tdanorms::apply_config_value(config, k, v);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence norms of index-return point clouds and their relation to uncertainty indexes"};
    app.require_subcommand(1);

    Overrides overrides;
    tdanorms::Command command = tdanorms::Command::report;
    struct Sub {
        const char* name;
        const char* help;
        tdanorms::Command command;
    };
    const Sub subs[] = {
        {"compute", "monthly L1/L2 persistence norms and volatility per window length", tdanorms::Command::compute},
        {"correlate", "norm series plus correlation tables", tdanorms::Command::correlate},
        {"regress", "norm series plus the regression battery", tdanorms::Command::regress},
        {"report", "everything, including standardized plot data", tdanorms::Command::report},
    };
    for (const auto& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_pipeline_options(*cmd, overrides);
        cmd->callback([&command, c = s.command] { command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        tdanorms::PipelineConfig config = build_config(overrides);
        tdanorms::Manifest manifest = tdanorms::run_pipeline(config, command);
        for (const auto& f : manifest.files) std::cout << f.file << "  " << f.sha256 << "\n";
        if (command == tdanorms::Command::report) std::cout << tdanorms::kVintageCaveat << "\n";
        return 0;
    } catch (const tdanorms::Error& e) {
        std::cerr << "error";
        if (!e.stage().empty()) std::cerr << " [" << e.stage() << "]";
        std::cerr << ": " << e.what() << "\n";
        return tdanorms::is_input_error(e.code()) ? kExitInput : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
