#include "tdanorms/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csv.hpp"
#include "tdanorms/error.hpp"

namespace tdanorms {

namespace {

std::size_t find_column(const std::vector<std::string>& header, const std::string& name, const std::string& what) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw Error(ErrorCode::MissingColumn, what + ": no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::string row_context(const std::string& what, std::size_t line) {
    return what + " line " + std::to_string(line + 1);
}

}  // namespace

PriceSeries make_price_series(std::string index_id, std::vector<Date> dates, std::vector<double> adj_close) {
    if (dates.size() != adj_close.size()) {
        throw Error(ErrorCode::LengthMismatch, index_id + ": dates and prices differ in length");
    }
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!std::isfinite(adj_close[i]) || adj_close[i] <= 0.0) {
            throw Error(ErrorCode::NonPositivePrice, index_id + ": price on " + dates[i].to_string() +
                                                         " is not a positive finite number");
        }
        if (i > 0 && dates[i] == dates[i - 1]) {
            throw Error(ErrorCode::DuplicateDate, index_id + ": duplicated date " + dates[i].to_string());
        }
        if (i > 0 && dates[i] < dates[i - 1]) {
            throw Error(ErrorCode::MalformedRow, index_id + ": date " + dates[i].to_string() + " out of order");
        }
    }
    return PriceSeries{std::move(index_id), std::move(dates), std::move(adj_close)};
}

ReturnMatrix::ReturnMatrix(std::vector<std::string> index_ids, std::vector<Date> dates, std::vector<double> returns)
    : index_ids_(std::move(index_ids)), dates_(std::move(dates)), returns_(std::move(returns)) {
    if (returns_.size() != dates_.size() * index_ids_.size()) {
        throw Error(ErrorCode::LengthMismatch, "return matrix shape does not match dates x indices");
    }
    for (double r : returns_) {
        if (!std::isfinite(r)) throw Error(ErrorCode::MalformedRow, "non-finite log return");
    }
}

std::size_t UncertaintySeries::column_index(const std::string& name) const {
    return find_column(column_names, name, "uncertainty series");
}

PriceSeries parse_price_csv(const std::string& content, const std::string& index_id, const PriceCsvSchema& schema) {
    auto lines = detail::csv_lines(content);
    if (lines.size() < 2) throw Error(ErrorCode::EmptyFile, index_id + ": no data rows");

    auto header = detail::split_csv_line(lines[0]);
    std::size_t date_col = find_column(header, schema.date_column, index_id);
    std::size_t price_col = find_column(header, schema.price_column, index_id);

    std::vector<Date> dates;
    std::vector<double> prices;
    dates.reserve(lines.size() - 1);
    prices.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = detail::split_csv_line(lines[i]);
        if (fields.size() <= std::max(date_col, price_col)) {
            throw Error(ErrorCode::MalformedRow, row_context(index_id, i) + ": too few fields");
        }
        auto date = Date::parse(fields[date_col]);
        if (!date) {
            throw Error(ErrorCode::MalformedRow, row_context(index_id, i) + ": bad date '" + fields[date_col] + "'");
        }
        double price = 0.0;
        if (!detail::parse_double(fields[price_col], price)) {
            throw Error(ErrorCode::MalformedRow,
                        row_context(index_id, i) + ": bad price '" + fields[price_col] + "'");
        }
        dates.push_back(*date);
        prices.push_back(price);
    }
    return make_price_series(index_id, std::move(dates), std::move(prices));
}

PriceSeries load_price_csv(const std::filesystem::path& path, const PriceCsvSchema& schema) {
    return parse_price_csv(detail::read_file(path.string()), path.stem().string(), schema);
}

DatedReturns log_returns(const PriceSeries& series) {
    if (series.size() < 2) {
        throw Error(ErrorCode::TooShort, series.index_id + ": need at least 2 prices for a return");
    }
    DatedReturns out;
    out.dates.assign(series.dates.begin() + 1, series.dates.end());
    out.values.reserve(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) {
        out.values.push_back(std::log(series.adj_close[t]) - std::log(series.adj_close[t - 1]));
    }
    return out;
}

AlignedPanel align_panel(std::span<const PriceSeries> series) {
    if (series.empty()) throw Error(ErrorCode::TooShort, "no price series to align");

    std::vector<Date> common = series[0].dates;
    for (std::size_t s = 1; s < series.size(); ++s) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), series[s].dates.begin(), series[s].dates.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.empty()) throw Error(ErrorCode::EmptyIntersection, "input series share no dates");
    if (common.size() < 2) throw Error(ErrorCode::TooShort, "input series share only one date");

    const std::size_t k = series.size();
    const std::size_t n = common.size();
    AlignedPanel panel;
    panel.prices.resize(n * k);
    panel.dropped_days.resize(k);
    std::vector<std::string> ids;
    for (std::size_t s = 0; s < k; ++s) {
        const auto& src = series[s];
        ids.push_back(src.index_id);
        panel.dropped_days[s] = src.size() - n;
        std::size_t j = 0;
        for (std::size_t t = 0; t < n; ++t) {
            while (src.dates[j] != common[t]) ++j;
            panel.prices[t * k + s] = src.adj_close[j];
        }
    }

    std::vector<double> returns((n - 1) * k);
    for (std::size_t t = 1; t < n; ++t) {
        for (std::size_t s = 0; s < k; ++s) {
            returns[(t - 1) * k + s] = std::log(panel.prices[t * k + s]) - std::log(panel.prices[(t - 1) * k + s]);
        }
    }
    panel.returns = ReturnMatrix(std::move(ids), std::vector<Date>(common.begin() + 1, common.end()),
                                 std::move(returns));
    panel.price_dates = std::move(common);
    return panel;
}

UncertaintySeries parse_uncertainty_csv(const std::string& content) {
    auto lines = detail::csv_lines(content);
    if (lines.size() < 2) throw Error(ErrorCode::EmptyFile, "uncertainty file has no data rows");

    auto header = detail::split_csv_line(lines[0]);
    std::size_t month_col = find_column(header, "month", "uncertainty file");
    if (header.size() < 2) throw Error(ErrorCode::MalformedRow, "uncertainty file has no value columns");

    UncertaintySeries out;
    std::vector<std::size_t> value_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == month_col) continue;
        value_cols.push_back(c);
        out.column_names.push_back(header[c]);
    }
    out.columns.resize(value_cols.size());

    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = detail::split_csv_line(lines[i]);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::MalformedRow, row_context("uncertainty file", i) + ": expected " +
                                                     std::to_string(header.size()) + " fields");
        }
        auto month = Month::parse(fields[month_col]);
        if (!month) {
            throw Error(ErrorCode::MalformedRow,
                        row_context("uncertainty file", i) + ": bad month '" + fields[month_col] + "'");
        }
        if (!out.months.empty() && *month <= out.months.back()) {
            throw Error(ErrorCode::MalformedRow,
                        row_context("uncertainty file", i) + ": months must be strictly increasing");
        }
        out.months.push_back(*month);
        for (std::size_t v = 0; v < value_cols.size(); ++v) {
            const std::string& cell = fields[value_cols[v]];
            double value = std::numeric_limits<double>::quiet_NaN();
            if (!cell.empty() && (!detail::parse_double(cell, value) || !std::isfinite(value))) {
                throw Error(ErrorCode::MalformedRow, row_context("uncertainty file", i) + ": bad value '" + cell +
                                                         "' in column " + out.column_names[v]);
            }
            out.columns[v].push_back(value);
        }
    }
    return out;
}

UncertaintySeries load_uncertainty_csv(const std::filesystem::path& path) {
    return parse_uncertainty_csv(detail::read_file(path.string()));
}

}  // namespace tdanorms
