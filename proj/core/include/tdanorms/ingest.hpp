#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tdanorms/calendar.hpp"

namespace tdanorms {

// Column names used to read a price CSV. Yahoo-style exports name the
// columns `Date` and `Adj Close`; the default matches a normalized export.
struct PriceCsvSchema {
    std::string date_column = "date";
    std::string price_column = "adj_close";
};

// Daily adjusted closes of one index. Dates strictly increasing, prices
// finite and positive.
struct PriceSeries {
    std::string index_id;
    std::vector<Date> dates;
    std::vector<double> adj_close;

    std::size_t size() const { return dates.size(); }
};

// Builds a PriceSeries, enforcing its invariants.
PriceSeries make_price_series(std::string index_id, std::vector<Date> dates, std::vector<double> adj_close);

struct DatedReturns {
    std::vector<Date> dates;
    std::vector<double> values;
};

// Daily log returns of k aligned indices, stored row-major (one row per day).
class ReturnMatrix {
public:
    ReturnMatrix() = default;
    ReturnMatrix(std::vector<std::string> index_ids, std::vector<Date> dates, std::vector<double> returns);

    std::size_t n_days() const { return dates_.size(); }
    std::size_t n_indices() const { return index_ids_.size(); }

    const std::vector<std::string>& index_ids() const { return index_ids_; }
    const std::vector<Date>& dates() const { return dates_; }

    double operator()(std::size_t day, std::size_t index) const { return returns_[day * n_indices() + index]; }
    std::span<const double> row(std::size_t day) const {
        return {returns_.data() + day * n_indices(), n_indices()};
    }
    std::span<const double> data() const { return returns_; }

private:
    std::vector<std::string> index_ids_;
    std::vector<Date> dates_;
    std::vector<double> returns_;
};

struct AlignedPanel {
    ReturnMatrix returns;
    // Aligned closing prices (n_days + 1 rows, row-major, one column per index).
    std::vector<Date> price_dates;
    std::vector<double> prices;
    // Number of days of each input series discarded by the intersection.
    std::vector<std::size_t> dropped_days;
};

// Monthly uncertainty indexes. Missing cells are stored as NaN; present
// cells are finite.
struct UncertaintySeries {
    std::vector<Month> months;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;

    std::size_t size() const { return months.size(); }
    // Index of the named column; throws MissingColumn.
    std::size_t column_index(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const { return columns[column_index(name)]; }
};

PriceSeries load_price_csv(const std::filesystem::path& path, const PriceCsvSchema& schema = {});
PriceSeries parse_price_csv(const std::string& content, const std::string& index_id,
                            const PriceCsvSchema& schema = {});

DatedReturns log_returns(const PriceSeries& series);

AlignedPanel align_panel(std::span<const PriceSeries> series);

UncertaintySeries load_uncertainty_csv(const std::filesystem::path& path);
UncertaintySeries parse_uncertainty_csv(const std::string& content);

}  // namespace tdanorms
