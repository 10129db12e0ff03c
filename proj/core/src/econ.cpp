#include "tdanorms/econ.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tdanorms/error.hpp"

namespace tdanorms {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "series lengths differ (" + std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) throw Error(ErrorCode::TooShort, "correlation needs at least 2 observations");
}

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::ZeroVariance, "correlation of a constant series");
    return clamp_unit(sxy / std::sqrt(sxx * syy));
}

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
        double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    return pearson(average_ranks(x), average_ranks(y));
}

CorrelationMatrix correlation_table(const std::vector<NamedSeries>& vars) {
    CorrelationMatrix out;
    const std::size_t m = vars.size();
    for (const auto& v : vars) {
        if (v.values.size() != vars.front().values.size()) {
            throw Error(ErrorCode::LengthMismatch, "variable " + v.name + " has a different length");
        }
        out.names.push_back(v.name);
    }
    out.values.assign(m * m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<double> x, y;
            for (std::size_t t = 0; t < vars[i].values.size(); ++t) {
                if (std::isnan(vars[i].values[t]) || std::isnan(vars[j].values[t])) continue;
                x.push_back(vars[i].values[t]);
                y.push_back(vars[j].values[t]);
            }
            out.values[i * m + j] = pearson(x, y);
            out.values[j * m + i] = spearman(x, y);
        }
    }
    return out;
}

int auto_newey_west_lag(std::size_t n) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

double RegressionResult::coefficient(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::MissingColumn, "no regressor named " + name);
    return coefficients[static_cast<std::size_t>(it - names.begin())];
}

double RegressionResult::t_stat(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::MissingColumn, "no regressor named " + name);
    return t_stats[static_cast<std::size_t>(it - names.begin())];
}

RegressionResult ols_newey_west(std::span<const double> y, const std::vector<NamedSeries>& regressors,
                                const OlsOptions& options) {
    const std::size_t n = y.size();
    const std::size_t k = regressors.size() + 1;
    RegressionResult result;
    result.names.push_back("const");
    for (const auto& r : regressors) {
        if (std::find(result.names.begin(), result.names.end(), r.name) != result.names.end()) {
            throw Error(ErrorCode::RankDeficient, "regressor " + r.name + " listed twice");
        }
        if (r.values.size() != n) {
            throw Error(ErrorCode::LengthMismatch, "regressor " + r.name + " does not match the dependent length");
        }
        result.names.push_back(r.name);
    }
    if (n < k + 2) {
        throw Error(ErrorCode::TooFewObservations,
                    std::to_string(n) + " observations for " + std::to_string(k) + " coefficients");
    }

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd Y(n);
    for (std::size_t t = 0; t < n; ++t) {
        X(t, 0) = 1.0;
        for (std::size_t j = 1; j < k; ++j) X(t, j) = regressors[j - 1].values[t];
        Y(t) = y[t];
    }
    if (!X.allFinite() || !Y.allFinite()) throw Error(ErrorCode::MalformedRow, "non-finite regression data");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < static_cast<Eigen::Index>(k)) {
        throw Error(ErrorCode::RankDeficient, "regressors are collinear with each other or the constant");
    }
    Eigen::VectorXd beta = qr.solve(Y);
    Eigen::VectorXd u = Y - X * beta;

    const double ssr = u.squaredNorm();
    const double sst = (Y.array() - Y.mean()).matrix().squaredNorm();
    result.n = n;
    result.r2 = sst == 0.0 ? 1.0 : 1.0 - ssr / sst;
    const double p = static_cast<double>(k - 1);
    result.adjusted_r2 = 1.0 - (1.0 - result.r2) * (static_cast<double>(n) - 1.0) / (static_cast<double>(n) - p - 1.0);

    int lag = options.nw_lag.value_or(auto_newey_west_lag(n));
    if (lag < 0) throw Error(ErrorCode::InvalidConfig, "Newey-West lag must be nonnegative");
    lag = std::min<int>(lag, static_cast<int>(n) - 1);
    result.nw_lag = lag;

    const double scale = std::max(sst, Y.squaredNorm());
    result.perfect_fit = ssr <= 1e-24 * scale;

    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t t = 0; t < n; ++t) meat.noalias() += u(t) * u(t) * X.row(t).transpose() * X.row(t);
    for (int l = 1; l <= lag; ++l) {
        const double w = 1.0 - static_cast<double>(l) / static_cast<double>(lag + 1);
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(k, k);
        for (std::size_t t = static_cast<std::size_t>(l); t < n; ++t) {
            gamma.noalias() += u(t) * u(t - l) * X.row(t).transpose() * X.row(t - l);
        }
        meat += w * (gamma + gamma.transpose());
    }
    Eigen::MatrixXd cov = bread * meat * bread;
    if (options.small_sample_correction) cov *= static_cast<double>(n) / static_cast<double>(n - k);

    for (std::size_t j = 0; j < k; ++j) {
        result.coefficients.push_back(beta(j));
        if (result.perfect_fit) {
            result.std_errors.push_back(0.0);
            result.t_stats.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            double se = std::sqrt(std::max(cov(j, j), 0.0));
            result.std_errors.push_back(se);
            result.t_stats.push_back(beta(j) / se);
        }
    }
    return result;
}

MedianSplit median_split(std::span<const double> series) {
    if (series.size() < 2) throw Error(ErrorCode::TooShort, "median split needs at least 2 observations");
    std::vector<std::size_t> order(series.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });
    const std::size_t n_low = series.size() / 2;
    MedianSplit split;
    split.low.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_low));
    split.high.assign(order.begin() + static_cast<std::ptrdiff_t>(n_low), order.end());
    std::sort(split.low.begin(), split.low.end());
    std::sort(split.high.begin(), split.high.end());
    return split;
}

std::string_view to_string(SampleKind kind) {
    switch (kind) {
        case SampleKind::full: return "full";
        case SampleKind::high: return "high";
        case SampleKind::low: return "low";
    }
    return "full";
}

std::vector<double> aligned_column(const UncertaintySeries& unc, const std::string& column,
                                   std::span<const Month> months) {
    const auto& values = unc.column(column);
    std::vector<double> out;
    out.reserve(months.size());
    for (const Month& m : months) {
        auto it = std::lower_bound(unc.months.begin(), unc.months.end(), m);
        if (it == unc.months.end() || *it != m) {
            throw Error(ErrorCode::MisalignedMonths, column + " has no value for " + m.to_string());
        }
        double v = values[static_cast<std::size_t>(it - unc.months.begin())];
        if (std::isnan(v)) throw Error(ErrorCode::MisalignedMonths, column + " is missing for " + m.to_string());
        out.push_back(v);
    }
    return out;
}

namespace {

std::vector<double> subset(const std::vector<double>& values, const std::vector<std::size_t>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r : rows) out.push_back(values[r]);
    return out;
}

struct ModelSpec {
    int base;  // 1..6
    bool norm_dependent;
    bool uses_uncertainty_or_norm;
    bool uses_sigma;
};

constexpr ModelSpec kModels[] = {
    {1, true, true, false}, {2, true, false, true}, {3, true, true, true},
    {4, false, true, false}, {5, false, false, true}, {6, false, true, true},
};

}  // namespace

std::vector<BatteryRow> model_battery(std::span<const NormSeries> norms, const UncertaintySeries& unc,
                                      const BatteryOptions& options) {
    std::vector<BatteryRow> rows;
    for (const std::string& column : options.uncertainty_columns) {
        unc.column_index(column);
        for (const NormSeries& series : norms) {
            const auto months = series.months();
            const std::vector<double> u = aligned_column(unc, column, months);
            const std::vector<double> sigma = series.sigma_bar();
            const std::string dim = std::to_string(series.norm_dim);
            const std::vector<std::pair<std::string, std::vector<double>>> norm_variants{
                {"L" + dim + "1", series.l1()}, {"L" + dim + "2", series.l2()}};

            std::vector<std::pair<SampleKind, std::vector<std::size_t>>> samples;
            std::vector<std::size_t> all(u.size());
            std::iota(all.begin(), all.end(), 0);
            samples.emplace_back(SampleKind::full, all);
            if (options.split) {
                MedianSplit split = median_split(u);
                samples.emplace_back(SampleKind::high, split.high);
                samples.emplace_back(SampleKind::low, split.low);
            }

            for (std::size_t v = 0; v < norm_variants.size(); ++v) {
                const auto& [norm_name, norm_values] = norm_variants[v];
                for (const auto& [kind, rows_in_sample] : samples) {
                    for (const ModelSpec& model : kModels) {
                        if (kind != SampleKind::full && model.norm_dependent) continue;
                        std::vector<double> y = subset(model.norm_dependent ? norm_values : u, rows_in_sample);
                        std::vector<NamedSeries> x;
                        if (model.uses_uncertainty_or_norm) {
                            if (model.norm_dependent) {
                                x.push_back({column, subset(u, rows_in_sample)});
                            } else {
                                x.push_back({norm_name, subset(norm_values, rows_in_sample)});
                            }
                        }
                        if (model.uses_sigma) x.push_back({"sigma_bar", subset(sigma, rows_in_sample)});

                        BatteryRow row;
                        row.model = std::to_string(model.base) + (v == 0 ? "" : "2");
                        row.dependent = model.norm_dependent ? norm_name : column;
                        row.uncertainty = column;
                        row.norm = norm_name;
                        row.window_length_months = series.window_length_months;
                        row.sample = kind;
                        row.result = ols_newey_west(y, x, options.ols);
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return rows;
}

}  // namespace tdanorms
