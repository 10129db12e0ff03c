#pragma once

// Deterministic synthetic data for tests: point clouds, weekday price paths
// and monthly uncertainty series.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tdanorms/cloud.hpp"
#include "tdanorms/ingest.hpp"

namespace testsupport {

inline tdanorms::PointCloud gaussian_cloud(std::size_t n, std::size_t k, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<double> coords(n * k);
    for (double& x : coords) x = normal(rng);
    return tdanorms::PointCloud(k, std::move(coords));
}

// Small integer coordinates: many equal pairwise distances.
inline tdanorms::PointCloud lattice_cloud(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coord(0, 2);
    std::vector<double> coords(n * k);
    for (double& x : coords) x = coord(rng);
    return tdanorms::PointCloud(k, std::move(coords));
}

inline tdanorms::PointCloud unit_square() {
    return tdanorms::PointCloud(4, {0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0});
}

inline tdanorms::PointCloud equilateral_triangle() {
    return tdanorms::PointCloud(2, {0.0, 0.0, 1.0, 0.0, 0.5, std::sqrt(3.0) / 2.0});
}

inline std::vector<tdanorms::Date> weekdays(tdanorms::Date from, tdanorms::Date to) {
    using namespace std::chrono;
    std::vector<tdanorms::Date> out;
    for (sys_days d{from.ymd()}; d <= sys_days{to.ymd()}; d += days{1}) {
        weekday wd{d};
        if (wd == Saturday || wd == Sunday) continue;
        out.emplace_back(year_month_day{d});
    }
    return out;
}

// k correlated geometric random walks with volatility clustering across months.
inline std::vector<tdanorms::PriceSeries> synthetic_prices(const std::vector<std::string>& labels, tdanorms::Date from,
                                                           tdanorms::Date to, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto dates = weekdays(from, to);
    const std::size_t k = labels.size();
    std::vector<std::vector<double>> prices(k, std::vector<double>(dates.size()));
    std::vector<double> level(k, 100.0);
    double log_vol = std::log(0.01);
    unsigned current_month = 0;
    for (std::size_t t = 0; t < dates.size(); ++t) {
        if (dates[t].month() != current_month) {
            current_month = dates[t].month();
            log_vol = 0.8 * log_vol + 0.2 * std::log(0.01) + 0.3 * normal(rng);
        }
        const double vol = std::exp(log_vol);
        const double common = normal(rng);
        for (std::size_t j = 0; j < k; ++j) {
            const double r = vol * (0.8 * common + 0.6 * normal(rng));
            if (t > 0) level[j] *= std::exp(r);
            prices[j][t] = level[j];
        }
    }
    std::vector<tdanorms::PriceSeries> out;
    for (std::size_t j = 0; j < k; ++j) out.push_back(tdanorms::make_price_series(labels[j], dates, prices[j]));
    return out;
}

inline std::string price_csv(const tdanorms::PriceSeries& s) {
    std::string out = "date,adj_close\n";
    char buf[64];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof(buf), ",%.10f\n", s.adj_close[i]);
        out += s.dates[i].to_string() + buf;
    }
    return out;
}

// FIN1/MAC1/REA1 as persistent positive AR(1) processes.
inline std::string synthetic_uncertainty_csv(tdanorms::Month from, tdanorms::Month to, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::string out = "month,FIN1,MAC1,REA1\n";
    double f = 0.0, m = 0.0, r = 0.0;
    char buf[128];
    for (tdanorms::Month mo = from; mo <= to; mo = mo.plus(1)) {
        f = 0.9 * f + 0.3 * normal(rng);
        m = 0.9 * m + 0.2 * normal(rng) + 0.1 * f;
        r = 0.9 * r + 0.2 * normal(rng) + 0.1 * m;
        std::snprintf(buf, sizeof(buf), ",%.8f,%.8f,%.8f\n", 0.9 + 0.1 * f, 0.6 + 0.05 * m, 0.5 + 0.05 * r);
        out += mo.to_string() + buf;
    }
    return out;
}

class TempDir {
public:
    explicit TempDir(const std::string& name) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / (name + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p;
    }

private:
    std::filesystem::path path_;
};

}  // namespace testsupport
