#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdanorms/cloud.hpp"
#include "tdanorms/econ.hpp"
#include "tdanorms/ingest.hpp"
#include "tdanorms/norms.hpp"
#include "tdanorms/table.hpp"

namespace tdanorms {

struct PriceInput {
    std::string label;
    std::filesystem::path path;
};

struct PipelineConfig {
    std::vector<PriceInput> prices;
    std::filesystem::path uncertainty;
    PriceCsvSchema price_schema;
    std::vector<int> windows{1, 3, 6, 12};
    int norm_dim = 1;
    VolatilityMean vol_mean = VolatilityMean::geometric;
    std::optional<int> nw_lag;  // automatic when unset
    bool hac_small_sample = false;
    Padding padding = Padding::lookback;
    std::optional<Month> sample_start;
    std::optional<Month> sample_end;
    bool median_split = true;
    TableFormat format = TableFormat::csv;
    std::filesystem::path out_dir = "out";
    // Uncertainty columns entering regressions and plot data.
    std::vector<std::string> uncertainty_columns{"FIN1", "MAC1"};
    // Uncertainty columns shown in the per-window correlation tables
    // (those absent from the file are skipped).
    std::vector<std::string> correlation_columns{"FIN1", "MAC1", "REA1"};

    NormConfig norm_config() const;
    BatteryOptions battery_options() const;
};

// Sets one configuration key from its text value. Keys match the config file
// (`windows`, `vol_mean`, `nw_lag`, ...); throws InvalidConfig.
void apply_config_value(PipelineConfig& config, const std::string& key, const std::string& value);

// Reads `key = value` lines; `#` starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// Throws InvalidConfig when the configuration cannot run.
void validate(const PipelineConfig& config, bool needs_uncertainty);

enum class Command { compute, correlate, regress, report };

struct ManifestEntry {
    std::string file;  // relative to the output directory
    std::size_t bytes = 0;
    std::string sha256;
};

struct Manifest {
    std::vector<ManifestEntry> files;
};

// Runs the stages needed by `command` and writes their tables into
// config.out_dir, finishing with manifest.csv. Errors carry the failing stage.
Manifest run_pipeline(const PipelineConfig& config, Command command);

// In-memory results, for callers that do not want files.
struct PipelineResults {
    AlignedPanel panel;
    std::vector<NormSeries> norms;
    std::optional<UncertaintySeries> uncertainty;
};

PipelineResults compute_norms(const PipelineConfig& config, bool load_uncertainty);

Table norm_series_table(const NormSeries& series);
Table correlation_matrix_table(const CorrelationMatrix& matrix);
Table regression_table(const std::vector<BatteryRow>& rows);

std::string sha256_hex(const std::string& content);

// Printed by `report`: published reference values depend on the data vintage.
extern const char* const kVintageCaveat;

}  // namespace tdanorms
