#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sentimarket/errors.hpp"
#include "sentimarket/filter.hpp"
#include "sentimarket/simulate.hpp"

namespace sentimarket {

struct PriceSeries {
    std::vector<std::string> dates;  // ISO-8601 calendar dates, strictly increasing
    std::vector<double> prices;      // strictly positive

    std::size_t size() const noexcept { return prices.size(); }
};

// Reads a `date,price` CSV (header required). Every problem is reported as
// InputError carrying the file path and the 1-based line number: unparsable
// dates, invalid calendar days, non-positive or non-numeric prices, dates out
// of order, rows with the wrong number of fields, fewer than two rows.
PriceSeries load_prices(const std::filesystem::path& file);

// Simple returns P(t)/P(t-1) - 1, one fewer entry than the series.
std::vector<double> prices_to_returns(const PriceSeries& series);

// Numeric CSV with a header row, parsed column-major.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
    const std::vector<double>* column(const std::string& name) const;
};

CsvTable load_csv_table(const std::filesystem::path& file);

// 17 significant digits, enough to reconstruct the exact double on read-back.
std::string format_double(double v);

// Header t,B,RB,sigma,eta,r,P with one row per step, t starting at 1.
void write_path_csv(std::ostream& out, const SimulatedPath& path);

// Header t,r,B_hat,RB,sigma_hat,loglik_term; `returns` are the observations
// the filter was run on.
void write_filter_csv(std::ostream& out, std::span<const double> returns,
                      const FilterOutput& filtered);

}  // namespace sentimarket
