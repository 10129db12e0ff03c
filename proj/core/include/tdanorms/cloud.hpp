#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tdanorms/calendar.hpp"
#include "tdanorms/ingest.hpp"

namespace tdanorms {

// Calendar-month window ending at (and including) `anchor`.
struct WindowSpec {
    int length_months = 1;
    Month anchor;

    Month first_month() const { return anchor.plus(1 - length_months); }
};

// How anchors near the start of the sample are handled.
//  - lookback: windows may reach back before `sample_start` into earlier
//    panel data, so every anchor in the sample gets a window when enough
//    history is loaded.
//  - burnin: windows must lie entirely inside the sample, so the first
//    length-1 months of the sample produce no window.
enum class Padding { lookback, burnin };

struct SamplePolicy {
    Padding padding = Padding::lookback;
    std::optional<Month> sample_start;  // defaults to the first month of the panel
    std::optional<Month> sample_end;    // defaults to the last month of the panel
};

// Half-open row range [begin, end) of a ReturnMatrix.
struct WindowSlice {
    WindowSpec window;
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
};

// n points in R^k stored row-major, one per trading day.
class PointCloud {
public:
    PointCloud(std::size_t dim, std::vector<double> coords, WindowSpec window = {}, std::vector<Date> dates = {});

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    std::span<const double> coords() const { return coords_; }
    const WindowSpec& window() const { return window_; }
    const std::vector<Date>& dates() const { return dates_; }

private:
    std::size_t dim_;
    std::vector<double> coords_;
    WindowSpec window_;
    std::vector<Date> dates_;
};

// Symmetric n x n matrix of pairwise distances with a zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    // Takes a full row-major n x n matrix; symmetry and a zero diagonal are checked.
    DistanceMatrix(std::size_t n, std::vector<double> entries);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

    DistanceMatrix scaled(double c) const;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

enum class VolatilityMean { geometric, arithmetic };

struct Volatility {
    double value = 0.0;
    // Set when some index had zero dispersion and the geometric mean was
    // reported as 0 by convention.
    bool geometric_undefined = false;
};

std::vector<WindowSlice> window_slices(const ReturnMatrix& panel, int length_months, const SamplePolicy& policy = {});

PointCloud point_cloud(const ReturnMatrix& panel, const WindowSlice& slice);

DistanceMatrix distance_matrix(const PointCloud& cloud);

Volatility window_volatility(const ReturnMatrix& panel, const WindowSlice& slice,
                             VolatilityMean mean_kind = VolatilityMean::geometric);

// Sample standard deviation with the n-1 denominator.
double sample_std(std::span<const double> values);

}  // namespace tdanorms
