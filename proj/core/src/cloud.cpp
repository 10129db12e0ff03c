#include "tdanorms/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tdanorms/error.hpp"

namespace tdanorms {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, WindowSpec window, std::vector<Date> dates)
    : dim_(dim), coords_(std::move(coords)), window_(window), dates_(std::move(dates)) {
    if (dim_ == 0 || coords_.size() % dim_ != 0) {
        throw Error(ErrorCode::LengthMismatch, "point coordinates do not divide into the point dimension");
    }
    if (!dates_.empty() && dates_.size() != size()) {
        throw Error(ErrorCode::LengthMismatch, "one date per point expected");
    }
    for (double x : coords_) {
        if (!std::isfinite(x)) throw Error(ErrorCode::MalformedRow, "non-finite point coordinate");
    }
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) {
        throw Error(ErrorCode::InvalidDistanceMatrix, "expected " + std::to_string(n_ * n_) + " entries");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) throw Error(ErrorCode::InvalidDistanceMatrix, "nonzero diagonal entry");
        for (std::size_t j = i + 1; j < n_; ++j) {
            double d = (*this)(i, j);
            if (d != (*this)(j, i)) throw Error(ErrorCode::InvalidDistanceMatrix, "matrix is not symmetric");
            if (!std::isfinite(d) || d < 0.0) {
                throw Error(ErrorCode::InvalidDistanceMatrix, "distances must be finite and nonnegative");
            }
        }
    }
}

DistanceMatrix DistanceMatrix::scaled(double c) const {
    std::vector<double> out(entries_);
    for (double& d : out) d *= c;
    return DistanceMatrix(n_, std::move(out));
}

std::vector<WindowSlice> window_slices(const ReturnMatrix& panel, int length_months, const SamplePolicy& policy) {
    if (panel.n_days() == 0) throw Error(ErrorCode::NoFullWindow, "empty return panel");
    if (length_months < 1) throw Error(ErrorCode::InvalidConfig, "window length must be at least one month");

    const auto& dates = panel.dates();
    const Month panel_first(dates.front());
    const Month panel_last(dates.back());
    const Month sample_start = policy.sample_start.value_or(panel_first);
    const Month sample_end = std::min(policy.sample_end.value_or(panel_last), panel_last);
    const Month earliest_window_start =
        policy.padding == Padding::burnin ? std::max(sample_start, panel_first) : panel_first;

    auto first_row_in = [&](Month m) {
        Date first_day(m.year(), m.month(), 1);
        return static_cast<std::size_t>(std::lower_bound(dates.begin(), dates.end(), first_day) - dates.begin());
    };

    std::vector<WindowSlice> slices;
    for (Month anchor = sample_start; anchor <= sample_end; anchor = anchor.plus(1)) {
        WindowSpec window{length_months, anchor};
        if (window.first_month() < earliest_window_start) continue;
        WindowSlice slice{window, first_row_in(window.first_month()), first_row_in(anchor.plus(1))};
        if (slice.size() == 0) continue;
        slices.push_back(slice);
    }
    if (slices.empty()) {
        throw Error(ErrorCode::NoFullWindow,
                    "no " + std::to_string(length_months) + "-month window fits inside the data");
    }
    return slices;
}

PointCloud point_cloud(const ReturnMatrix& panel, const WindowSlice& slice) {
    if (slice.size() == 0 || slice.end > panel.n_days()) {
        throw Error(ErrorCode::EmptySlice, "window " + slice.window.anchor.to_string() + " has no trading days");
    }
    const std::size_t k = panel.n_indices();
    auto data = panel.data();
    std::vector<double> coords(data.begin() + slice.begin * k, data.begin() + slice.end * k);
    std::vector<Date> dates(panel.dates().begin() + slice.begin, panel.dates().begin() + slice.end);
    return PointCloud(k, std::move(coords), slice.window, std::move(dates));
}

DistanceMatrix distance_matrix(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = cloud.point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            auto q = cloud.point(j);
            double sum = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) {
                double diff = p[c] - q[c];
                sum += diff * diff;
            }
            double d = std::sqrt(sum);
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    return DistanceMatrix(n, std::move(entries));
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) throw Error(ErrorCode::TooShort, "standard deviation needs at least 2 values");
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

Volatility window_volatility(const ReturnMatrix& panel, const WindowSlice& slice, VolatilityMean mean_kind) {
    if (slice.size() < 2 || slice.end > panel.n_days()) {
        throw Error(ErrorCode::TooShort, "window " + slice.window.anchor.to_string() + " has fewer than 2 returns");
    }
    const std::size_t k = panel.n_indices();
    std::vector<double> column(slice.size());
    std::vector<double> stds(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t t = slice.begin; t < slice.end; ++t) column[t - slice.begin] = panel(t, j);
        stds[j] = sample_std(column);
    }

    Volatility vol;
    if (mean_kind == VolatilityMean::arithmetic) {
        vol.value = std::accumulate(stds.begin(), stds.end(), 0.0) / static_cast<double>(k);
        return vol;
    }
    if (std::any_of(stds.begin(), stds.end(), [](double s) { return s == 0.0; })) {
        vol.geometric_undefined = true;
        return vol;
    }
    double log_sum = 0.0;
    for (double s : stds) log_sum += std::log(s);
    vol.value = std::exp(log_sum / static_cast<double>(k));
    return vol;
}

}  // namespace tdanorms
