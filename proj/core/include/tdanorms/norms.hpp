#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdanorms/cloud.hpp"
#include "tdanorms/ingest.hpp"
#include "tdanorms/persistence.hpp"

namespace tdanorms {

// Sum (p = 1) or root sum of squares (p = 2) of the finite lifetimes in one
// homology dimension.
double persistence_norm(const PersistenceDiagram& diagram, int dim, int p);

struct NormConfig {
    int norm_dim = 1;
    VolatilityMean vol_mean = VolatilityMean::geometric;
    SamplePolicy sample;
    // Rips threshold; the enclosing radius of each window when unset.
    std::optional<double> threshold;
};

struct NormRecord {
    Month month;
    double l1 = 0.0;
    double l2 = 0.0;
    double sigma_bar = 0.0;
    std::size_t n_points = 0;
    bool sigma_flagged = false;
};

// One record per anchor month for a fixed window length.
struct NormSeries {
    int window_length_months = 0;
    int norm_dim = 1;
    std::vector<NormRecord> records;

    std::size_t size() const { return records.size(); }
    std::vector<Month> months() const;
    std::vector<double> l1() const;
    std::vector<double> l2() const;
    std::vector<double> sigma_bar() const;
};

NormRecord window_norms(const ReturnMatrix& panel, const WindowSlice& slice, const NormConfig& config);

NormSeries build_norm_series(const ReturnMatrix& panel, int length_months, const NormConfig& config = {});

// (x - mean) / sample std.
std::vector<double> standardize(std::span<const double> series);

}  // namespace tdanorms
