#include "tdanorms/norms.hpp"

#include <cmath>
#include <numeric>

#include "tdanorms/error.hpp"

namespace tdanorms {

double persistence_norm(const PersistenceDiagram& diagram, int dim, int p) {
    if (dim < 0 || dim > PersistenceDiagram::max_homology_dim) {
        throw Error(ErrorCode::InvalidConfig, "norm dimension must be 0 or 1");
    }
    if (p != 1 && p != 2) throw Error(ErrorCode::InvalidConfig, "only L1 and L2 norms are supported");
    double sum = 0.0;
    for (const auto& pair : diagram[dim].finite) {
        double life = pair.lifetime();
        sum += p == 1 ? life : life * life;
    }
    return p == 1 ? sum : std::sqrt(sum);
}

std::vector<Month> NormSeries::months() const {
    std::vector<Month> out;
    for (const auto& r : records) out.push_back(r.month);
    return out;
}

std::vector<double> NormSeries::l1() const {
    std::vector<double> out;
    for (const auto& r : records) out.push_back(r.l1);
    return out;
}

std::vector<double> NormSeries::l2() const {
    std::vector<double> out;
    for (const auto& r : records) out.push_back(r.l2);
    return out;
}

std::vector<double> NormSeries::sigma_bar() const {
    std::vector<double> out;
    for (const auto& r : records) out.push_back(r.sigma_bar);
    return out;
}

NormRecord window_norms(const ReturnMatrix& panel, const WindowSlice& slice, const NormConfig& config) {
    PointCloud cloud = point_cloud(panel, slice);
    if (cloud.size() < 2) {
        throw Error(ErrorCode::TooShort, "window " + slice.window.anchor.to_string() + " has a single point");
    }
    PersistenceDiagram diagram = rips_persistence(distance_matrix(cloud), RipsOptions{config.threshold});
    Volatility vol = window_volatility(panel, slice, config.vol_mean);

    NormRecord record;
    record.month = slice.window.anchor;
    record.l1 = persistence_norm(diagram, config.norm_dim, 1);
    record.l2 = persistence_norm(diagram, config.norm_dim, 2);
    record.sigma_bar = vol.value;
    record.sigma_flagged = vol.geometric_undefined;
    record.n_points = cloud.size();
    return record;
}

NormSeries build_norm_series(const ReturnMatrix& panel, int length_months, const NormConfig& config) {
    NormSeries series;
    series.window_length_months = length_months;
    series.norm_dim = config.norm_dim;
    for (const auto& slice : window_slices(panel, length_months, config.sample)) {
        series.records.push_back(window_norms(panel, slice, config));
    }
    return series;
}

std::vector<double> standardize(std::span<const double> series) {
    if (series.size() < 2) throw Error(ErrorCode::TooShort, "standardize needs at least 2 values");
    double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    double std = sample_std(series);
    if (std == 0.0) throw Error(ErrorCode::ZeroVariance, "cannot standardize a constant series");
    std::vector<double> out;
    out.reserve(series.size());
    for (double x : series) out.push_back((x - mean) / std);
    return out;
}

}  // namespace tdanorms
