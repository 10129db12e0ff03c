#include "tdanorms/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <limits>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>

#include "csv.hpp"
#include "tdanorms/error.hpp"

namespace tdanorms {

const char* const kVintageCaveat =
    "note: reference values for these tables were estimated on one vintage of adjusted closes; data "
    "providers revise adjusted closes over time, so coefficient magnitudes and t-statistics can drift and "
    "only the signs of the slopes should be expected to agree on a different vintage.";

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t end = value.find(',', start);
        if (end == std::string::npos) end = value.size();
        std::string item = trim(value.substr(start, end - start));
        if (!item.empty()) out.push_back(item);
        start = end + 1;
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::InvalidConfig, key + ": expected an integer, got '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw Error(ErrorCode::InvalidConfig, key + ": expected true or false, got '" + value + "'");
}

Month parse_month(const std::string& key, const std::string& value) {
    auto m = Month::parse(value);
    if (!m) throw Error(ErrorCode::InvalidConfig, key + ": expected YYYY-MM, got '" + value + "'");
    return *m;
}

[[noreturn]] void bad_choice(const std::string& key, const std::string& value, const std::string& choices) {
    throw Error(ErrorCode::InvalidConfig, key + ": '" + value + "' is not one of " + choices);
}

template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (!e.stage().empty()) throw;
        throw e.with_stage(stage);
    }
}

std::string norm_label(int dim, int p) { return "L" + std::to_string(dim) + std::to_string(p); }

std::string window_label(int months) { return std::to_string(months) + "m"; }

}  // namespace

NormConfig PipelineConfig::norm_config() const {
    NormConfig c;
    c.norm_dim = norm_dim;
    c.vol_mean = vol_mean;
    c.sample = SamplePolicy{padding, sample_start, sample_end};
    return c;
}

BatteryOptions PipelineConfig::battery_options() const {
    BatteryOptions b;
    b.uncertainty_columns = uncertainty_columns;
    b.split = median_split;
    b.ols = OlsOptions{nw_lag, hac_small_sample};
    return b;
}

void apply_config_value(PipelineConfig& config, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "prices") {
        config.prices.clear();
        for (const auto& item : split_list(value)) {
            auto eq = item.find('=');
            if (eq == std::string::npos) {
                std::filesystem::path p(item);
                config.prices.push_back({p.stem().string(), p});
            } else {
                config.prices.push_back({trim(item.substr(0, eq)), trim(item.substr(eq + 1))});
            }
        }
    } else if (key == "uncertainty") {
        config.uncertainty = value;
    } else if (key == "date_column") {
        config.price_schema.date_column = value;
    } else if (key == "price_column") {
        config.price_schema.price_column = value;
    } else if (key == "windows") {
        config.windows.clear();
        for (const auto& item : split_list(value)) config.windows.push_back(parse_int(key, item));
    } else if (key == "norm_dim") {
        config.norm_dim = parse_int(key, value);
    } else if (key == "vol_mean") {
        if (value == "geometric") config.vol_mean = VolatilityMean::geometric;
        else if (value == "arithmetic") config.vol_mean = VolatilityMean::arithmetic;
        else bad_choice(key, value, "geometric|arithmetic");
    } else if (key == "nw_lag") {
        if (value == "auto") config.nw_lag.reset();
        else config.nw_lag = parse_int(key, value);
    } else if (key == "hac_df_correction") {
        config.hac_small_sample = parse_bool(key, value);
    } else if (key == "padding") {
        if (value == "lookback") config.padding = Padding::lookback;
        else if (value == "burnin") config.padding = Padding::burnin;
        else bad_choice(key, value, "lookback|burnin");
    } else if (key == "sample_start") {
        config.sample_start = parse_month(key, value);
    } else if (key == "sample_end") {
        config.sample_end = parse_month(key, value);
    } else if (key == "split") {
        if (value == "median") config.median_split = true;
        else if (value == "none") config.median_split = false;
        else bad_choice(key, value, "median|none");
    } else if (key == "format") {
        if (value == "csv") config.format = TableFormat::csv;
        else if (value == "json") config.format = TableFormat::json;
        else bad_choice(key, value, "csv|json");
    } else if (key == "out") {
        config.out_dir = value;
    } else if (key == "uncertainty_columns") {
        config.uncertainty_columns = split_list(value);
    } else if (key == "correlation_columns") {
        config.correlation_columns = split_list(value);
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown configuration key '" + key + "'");
    }
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::InvalidConfig, "config line " + std::to_string(line_no) + ": expected key = value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    return parse_config_text(detail::read_file(path.string()));
}

void validate(const PipelineConfig& config, bool needs_uncertainty) {
    if (config.prices.size() < 2) throw Error(ErrorCode::InvalidConfig, "at least two price series are required");
    std::set<std::string> labels;
    for (const auto& p : config.prices) {
        if (p.label.empty() || !labels.insert(p.label).second) {
            throw Error(ErrorCode::InvalidConfig, "price labels must be unique and non-empty");
        }
    }
    if (config.windows.empty()) throw Error(ErrorCode::InvalidConfig, "no window lengths given");
    std::set<int> seen;
    for (int w : config.windows) {
        if (w < 1 || w > 24) throw Error(ErrorCode::InvalidConfig, "window lengths must lie in 1..24 months");
        if (!seen.insert(w).second) throw Error(ErrorCode::InvalidConfig, "window length listed twice");
    }
    if (config.norm_dim != 0 && config.norm_dim != 1) throw Error(ErrorCode::InvalidConfig, "norm_dim must be 0 or 1");
    if (config.nw_lag && *config.nw_lag < 0) throw Error(ErrorCode::InvalidConfig, "nw_lag must be nonnegative");
    if (config.sample_start && config.sample_end && *config.sample_end < *config.sample_start) {
        throw Error(ErrorCode::InvalidConfig, "sample_end precedes sample_start");
    }
    if (needs_uncertainty && config.uncertainty.empty()) {
        throw Error(ErrorCode::InvalidConfig, "an uncertainty file is required for this command");
    }
    if (needs_uncertainty && config.uncertainty_columns.empty()) {
        throw Error(ErrorCode::InvalidConfig, "no uncertainty columns selected");
    }
    if (config.out_dir.empty()) throw Error(ErrorCode::InvalidConfig, "no output directory");
}

PipelineResults compute_norms(const PipelineConfig& config, bool load_uncertainty) {
    PipelineResults results;
    in_stage("ingest", [&] {
        std::vector<PriceSeries> series;
        for (const auto& input : config.prices) {
            PriceSeries s = load_price_csv(input.path, config.price_schema);
            s.index_id = input.label;
            series.push_back(std::move(s));
        }
        results.panel = align_panel(series);
        if (load_uncertainty) results.uncertainty = load_uncertainty_csv(config.uncertainty);
    });
    in_stage("norms", [&] {
        const NormConfig norm_config = config.norm_config();
        for (int w : config.windows) results.norms.push_back(build_norm_series(results.panel.returns, w, norm_config));
    });
    return results;
}

Table norm_series_table(const NormSeries& series) {
    Table t;
    t.columns = {"month", "window", norm_label(series.norm_dim, 1), norm_label(series.norm_dim, 2), "sigma_bar"};
    for (const auto& r : series.records) {
        t.add_row({r.month.to_string(), static_cast<long long>(series.window_length_months), r.l1, r.l2, r.sigma_bar});
    }
    return t;
}

Table correlation_matrix_table(const CorrelationMatrix& matrix) {
    Table t;
    t.columns.push_back("variable");
    for (const auto& name : matrix.names) t.columns.push_back(name);
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        std::vector<Cell> row{matrix.names[i]};
        for (std::size_t j = 0; j < matrix.size(); ++j) row.emplace_back(matrix(i, j));
        t.add_row(std::move(row));
    }
    return t;
}

Table regression_table(const std::vector<BatteryRow>& rows) {
    // Regressor columns in first-seen order, constant first.
    std::vector<std::string> regressors{"const"};
    for (const auto& row : rows) {
        for (const auto& name : row.result.names) {
            if (std::find(regressors.begin(), regressors.end(), name) == regressors.end()) regressors.push_back(name);
        }
    }
    Table t;
    t.columns = {"model", "dependent", "uncertainty", "norm", "window", "sample"};
    for (const auto& name : regressors) {
        t.columns.push_back("coef_" + name);
        t.columns.push_back("t_" + name);
    }
    for (const char* c : {"adj_r2", "n", "nw_lag"}) t.columns.emplace_back(c);

    for (const auto& row : rows) {
        std::vector<Cell> cells{row.model, row.dependent, row.uncertainty, row.norm,
                                window_label(row.window_length_months), std::string(to_string(row.sample))};
        for (const auto& name : regressors) {
            auto it = std::find(row.result.names.begin(), row.result.names.end(), name);
            if (it == row.result.names.end()) {
                cells.emplace_back(std::monostate{});
                cells.emplace_back(std::monostate{});
            } else {
                auto j = static_cast<std::size_t>(it - row.result.names.begin());
                cells.emplace_back(row.result.coefficients[j]);
                cells.emplace_back(row.result.t_stats[j]);
            }
        }
        cells.emplace_back(row.result.adjusted_r2);
        cells.emplace_back(static_cast<long long>(row.result.n));
        cells.emplace_back(static_cast<long long>(row.result.nw_lag));
        t.add_row(std::move(cells));
    }
    return t;
}

std::string sha256_hex(const std::string& content) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::IoError, "SHA-256 digest failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

namespace {

class OutputWriter {
public:
    OutputWriter(std::filesystem::path dir, TableFormat format) : dir_(std::move(dir)), format_(format) {}

    void write(const std::string& stem, const Table& table) {
        const std::string name = stem + (format_ == TableFormat::csv ? ".csv" : ".json");
        const std::string content = render_table(table, format_);
        std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw Error(ErrorCode::IoError, "cannot write '" + (dir_ / name).string() + "'");
        manifest_.files.push_back({name, content.size(), sha256_hex(content)});
    }

    Manifest finish() {
        Table t;
        t.columns = {"file", "bytes", "sha256"};
        for (const auto& f : manifest_.files) t.add_row({f.file, static_cast<long long>(f.bytes), f.sha256});
        emit_table(t, format_, dir_ / (format_ == TableFormat::csv ? "manifest.csv" : "manifest.json"));
        return manifest_;
    }

private:
    std::filesystem::path dir_;
    TableFormat format_;
    Manifest manifest_;
};

std::vector<std::string> present_columns(const UncertaintySeries& unc, const std::vector<std::string>& wanted) {
    std::vector<std::string> out;
    for (const auto& c : wanted) {
        if (std::find(unc.column_names.begin(), unc.column_names.end(), c) != unc.column_names.end()) out.push_back(c);
    }
    return out;
}

void write_correlations(OutputWriter& writer, const PipelineConfig& config, const PipelineResults& results) {
    const UncertaintySeries& unc = *results.uncertainty;
    const auto table1_columns = present_columns(unc, config.correlation_columns);

    for (const auto& series : results.norms) {
        const auto months = series.months();
        std::vector<NamedSeries> vars;
        for (const auto& c : table1_columns) vars.push_back({c, aligned_column(unc, c, months)});
        vars.push_back({"sigma_bar", series.sigma_bar()});
        vars.push_back({norm_label(series.norm_dim, 1), series.l1()});
        vars.push_back({norm_label(series.norm_dim, 2), series.l2()});
        writer.write("correlations_" + window_label(series.window_length_months), correlation_matrix_table(correlation_table(vars)));
    }

    // All uncertainty columns over the sample months, pairwise complete.
    {
        const auto months = results.norms.front().months();
        std::vector<NamedSeries> vars;
        for (const auto& name : unc.column_names) {
            std::vector<double> values;
            const auto& column = unc.column(name);
            for (const Month& m : months) {
                auto it = std::lower_bound(unc.months.begin(), unc.months.end(), m);
                bool present = it != unc.months.end() && *it == m;
                values.push_back(present ? column[static_cast<std::size_t>(it - unc.months.begin())]
                                         : std::numeric_limits<double>::quiet_NaN());
            }
            vars.push_back({name, std::move(values)});
        }
        writer.write("correlations_uncertainty", correlation_matrix_table(correlation_table(vars)));
    }

    // Each cloud measure across window lengths, on the months all windows share.
    if (results.norms.size() >= 2) {
        std::vector<Month> common = results.norms.front().months();
        for (const auto& s : results.norms) {
            auto months = s.months();
            std::vector<Month> next;
            std::set_intersection(common.begin(), common.end(), months.begin(), months.end(), std::back_inserter(next));
            common = std::move(next);
        }
        const int dim = results.norms.front().norm_dim;
        const std::vector<std::pair<std::string, std::function<double(const NormRecord&)>>> measures{
            {"sigma_bar", [](const NormRecord& r) { return r.sigma_bar; }},
            {norm_label(dim, 1), [](const NormRecord& r) { return r.l1; }},
            {norm_label(dim, 2), [](const NormRecord& r) { return r.l2; }},
        };
        for (const auto& [measure, get] : measures) {
            std::vector<NamedSeries> vars;
            for (const auto& s : results.norms) {
                std::vector<double> values;
                for (const auto& r : s.records) {
                    if (std::binary_search(common.begin(), common.end(), r.month)) values.push_back(get(r));
                }
                vars.push_back({window_label(s.window_length_months), std::move(values)});
            }
            writer.write("correlations_cross_window_" + measure, correlation_matrix_table(correlation_table(vars)));
        }
    }
}

void write_plot_data(OutputWriter& writer, const PipelineConfig& config, const PipelineResults& results) {
    const UncertaintySeries& unc = *results.uncertainty;
    for (const auto& column : config.uncertainty_columns) {
        for (const auto& series : results.norms) {
            const auto months = series.months();
            const auto u = standardize(aligned_column(unc, column, months));
            const auto sigma = standardize(series.sigma_bar());
            const auto l1 = standardize(series.l1());
            const auto l2 = standardize(series.l2());
            Table t;
            t.columns = {"month", column, "sigma_bar", norm_label(series.norm_dim, 1), norm_label(series.norm_dim, 2)};
            for (std::size_t i = 0; i < months.size(); ++i) {
                t.add_row({months[i].to_string(), u[i], sigma[i], l1[i], l2[i]});
            }
            writer.write("plot_" + column + "_" + window_label(series.window_length_months), t);
        }
    }
}

}  // namespace

Manifest run_pipeline(const PipelineConfig& config, Command command) {
    const bool needs_uncertainty = command != Command::compute;
    in_stage("config", [&] {
        validate(config, needs_uncertainty);
        std::error_code ec;
        std::filesystem::create_directories(config.out_dir, ec);
        if (ec || !std::filesystem::is_directory(config.out_dir)) {
            throw Error(ErrorCode::IoError, "cannot create output directory '" + config.out_dir.string() + "'");
        }
    });

    PipelineResults results = compute_norms(config, needs_uncertainty);
    OutputWriter writer(config.out_dir, config.format);

    return in_stage("output", [&] {
        Table alignment;
        alignment.columns = {"index", "aligned_days", "dropped_days", "first_date", "last_date"};
        for (std::size_t s = 0; s < config.prices.size(); ++s) {
            alignment.add_row({config.prices[s].label, static_cast<long long>(results.panel.price_dates.size()),
                               static_cast<long long>(results.panel.dropped_days[s]),
                               results.panel.price_dates.front().to_string(),
                               results.panel.price_dates.back().to_string()});
        }
        writer.write("alignment", alignment);
        for (const auto& series : results.norms) {
            writer.write("norm_series_" + window_label(series.window_length_months), norm_series_table(series));
        }

        if (command == Command::correlate || command == Command::report) {
            in_stage("econ", [&] { write_correlations(writer, config, results); });
        }
        if (command == Command::regress || command == Command::report) {
            in_stage("econ", [&] {
                writer.write("regressions", regression_table(model_battery(results.norms, *results.uncertainty,
                                                                           config.battery_options())));
            });
        }
        if (command == Command::report) {
            in_stage("norms", [&] { write_plot_data(writer, config, results); });
        }
        return writer.finish();
    });
}

}  // namespace tdanorms
