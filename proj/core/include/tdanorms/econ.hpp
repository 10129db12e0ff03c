#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdanorms/ingest.hpp"
#include "tdanorms/norms.hpp"

namespace tdanorms {

struct NamedSeries {
    std::string name;
    std::vector<double> values;
};

// Lower triangle Pearson, upper triangle Spearman, unit diagonal.
struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<double> values;

    std::size_t size() const { return names.size(); }
    double operator()(std::size_t row, std::size_t col) const { return values[row * names.size() + col]; }
};

double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

// 1-based ranks; tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

// Pairs where either value is NaN are dropped per cell.
CorrelationMatrix correlation_table(const std::vector<NamedSeries>& vars);

// Standard plug-in lag floor(4 (n/100)^(2/9)).
int auto_newey_west_lag(std::size_t n);

struct OlsOptions {
    std::optional<int> nw_lag;  // automatic when unset
    // Scale the HAC covariance by n / (n - k).
    bool small_sample_correction = false;
};

struct RegressionResult {
    std::vector<std::string> names;  // "const" first
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    int nw_lag = 0;
    double r2 = 0.0;
    double adjusted_r2 = 0.0;
    std::size_t n = 0;
    // Residuals vanished; standard errors are reported as 0 and t-stats as NaN.
    bool perfect_fit = false;

    double coefficient(const std::string& name) const;
    double t_stat(const std::string& name) const;
};

// OLS of y on a constant plus the regressors, with Newey-West (Bartlett
// kernel) standard errors.
RegressionResult ols_newey_west(std::span<const double> y, const std::vector<NamedSeries>& regressors,
                                const OlsOptions& options = {});

struct MedianSplit {
    std::vector<std::size_t> high;
    std::vector<std::size_t> low;
};

// Rank split into floor(n/2) low and ceil(n/2) high observations; among
// tied values earlier observations go low.
MedianSplit median_split(std::span<const double> series);

enum class SampleKind { full, high, low };
std::string_view to_string(SampleKind kind);

struct BatteryOptions {
    std::vector<std::string> uncertainty_columns{"FIN1", "MAC1"};
    bool split = true;
    OlsOptions ols;
};

struct BatteryRow {
    std::string model;  // "1".."6" for the L1 norm, "12".."62" for L2
    std::string dependent;
    std::string uncertainty;
    std::string norm;
    int window_length_months = 0;
    SampleKind sample = SampleKind::full;
    RegressionResult result;
};

// Models 1-3 regress a norm on uncertainty and/or volatility; models 4-6
// regress uncertainty on a norm and/or volatility. Every model runs for both
// norms, each uncertainty column and each window length; with `split`,
// models 4-6 also run on the high and low median halves of the uncertainty
// column.
std::vector<BatteryRow> model_battery(std::span<const NormSeries> norms, const UncertaintySeries& unc,
                                      const BatteryOptions& options = {});

// Values of `column` for each month, throwing MisalignedMonths when a month
// is absent or its value missing.
std::vector<double> aligned_column(const UncertaintySeries& unc, const std::string& column,
                                   std::span<const Month> months);

}  // namespace tdanorms
