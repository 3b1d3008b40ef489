#include "sentimarket/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace sentimarket {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !s.empty();
}

bool is_leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int year = std::stoi(s.substr(0, 4));
    int month = std::stoi(s.substr(5, 2));
    int day = std::stoi(s.substr(8, 2));
    if (month < 1 || month > 12 || day < 1) return false;
    static constexpr int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int limit = days[month - 1];
    if (month == 2 && is_leap_year(year)) limit = 29;
    return day <= limit;
}

// Reads a line and drops a trailing CR so CRLF files parse the same way.
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void strip_bom(std::string& line) {
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
        line.erase(0, 3);
}

}  // namespace

PriceSeries load_prices(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open file", file.string());

    std::string line;
    std::size_t line_no = 0;
    if (!read_line(in, line)) throw InputError("file is empty", file.string());
    ++line_no;
    strip_bom(line);

    std::vector<std::string> header = split_fields(line);
    if (header.size() != 2 || header[0] != "date" || header[1] != "price")
        throw InputError("expected header 'date,price', got '" + line + "'", file.string(),
                         line_no);

    PriceSeries series;
    while (read_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 2)
            throw InputError("expected 2 fields, got " + std::to_string(fields.size()),
                             file.string(), line_no);
        if (!is_iso_date(fields[0]))
            throw InputError("'" + fields[0] + "' is not a valid ISO-8601 calendar date",
                             file.string(), line_no);
        double price;
        if (!parse_double(fields[1], price))
            throw InputError("'" + fields[1] + "' is not a number", file.string(), line_no);
        if (!(price > 0.0) || !std::isfinite(price))
            throw InputError("price must be positive and finite", file.string(), line_no);
        if (!series.dates.empty() && fields[0] <= series.dates.back())
            throw InputError("date '" + fields[0] + "' is not after '" + series.dates.back() + "'",
                             file.string(), line_no);
        series.dates.push_back(std::move(fields[0]));
        series.prices.push_back(price);
    }
    if (series.size() < 2)
        throw InputError("need at least two price rows, got " + std::to_string(series.size()),
                         file.string(), line_no);
    return series;
}

std::vector<double> prices_to_returns(const PriceSeries& series) {
    if (series.size() < 2) throw std::invalid_argument("need at least two prices");
    std::vector<double> r(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t)
        r[t - 1] = series.prices[t] / series.prices[t - 1] - 1.0;
    return r;
}

const std::vector<double>* CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return nullptr;
    return &columns[static_cast<std::size_t>(it - header.begin())];
}

CsvTable load_csv_table(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open file", file.string());

    std::string line;
    std::size_t line_no = 0;
    if (!read_line(in, line)) throw InputError("file is empty", file.string());
    ++line_no;
    strip_bom(line);

    CsvTable table;
    table.header = split_fields(line);
    if (table.header.empty() || table.header.front().empty())
        throw InputError("missing header row", file.string(), line_no);
    table.columns.assign(table.header.size(), {});

    while (read_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != table.header.size())
            throw InputError("expected " + std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             file.string(), line_no);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v;
            if (!parse_double(fields[c], v))
                throw InputError("'" + fields[c] + "' in column '" + table.header[c] +
                                     "' is not a number",
                                 file.string(), line_no);
            table.columns[c].push_back(v);
        }
    }
    return table;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_path_csv(std::ostream& out, const SimulatedPath& path) {
    out << "t,B,RB,sigma,eta,r,P\n";
    for (std::size_t t = 0; t < path.size(); ++t) {
        out << (t + 1) << ',' << format_double(path.bullishness[t]) << ','
            << format_double(path.sentiment_return[t]) << ','
            << format_double(path.volatility[t]) << ',' << format_double(path.news[t]) << ','
            << format_double(path.returns[t]) << ',' << format_double(path.price[t]) << '\n';
    }
}

void write_filter_csv(std::ostream& out, std::span<const double> returns,
                      const FilterOutput& filtered) {
    out << "t,r,B_hat,RB,sigma_hat,loglik_term\n";
    for (std::size_t t = 0; t < filtered.bullishness.size(); ++t) {
        out << (t + 1) << ',' << format_double(returns[t]) << ','
            << format_double(filtered.bullishness[t]) << ','
            << format_double(filtered.sentiment_return[t]) << ','
            << format_double(filtered.volatility[t]) << ','
            << format_double(filtered.loglik_terms[t]) << '\n';
    }
}

}  // namespace sentimarket
