#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace circ {

// A set of n points in R^d, stored row-major.
struct PointCloud {
    std::vector<double> data;
    std::size_t n = 0;
    std::size_t d = 0;

    PointCloud() = default;
    PointCloud(std::size_t n_, std::size_t d_) : data(n_ * d_, 0.0), n(n_), d(d_) {}

    double& at(std::size_t i, std::size_t j) { return data[i * d + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * d + j]; }
    const double* row(std::size_t i) const { return data.data() + i * d; }

    void validate() const {
        if (n < 1 || d < 1) throw std::invalid_argument("point cloud must have n >= 1, d >= 1");
        for (double x : data)
            if (!std::isfinite(x)) throw std::invalid_argument("point cloud contains non-finite entries");
    }
};

// Quadrant-aware angle of (x1, x2), normalized to [0, 2*pi).
inline double angle_of(double x1, double x2) {
    if (x1 == 0.0 && x2 == 0.0) throw std::domain_error("angle undefined at the origin");
    double a = std::atan2(x2, x1);
    const double two_pi = 6.283185307179586476925286766559;
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
    return a;
}

inline double angle_of(const PointCloud& cloud, std::size_t i) {
    return angle_of(cloud.at(i, 0), cloud.at(i, 1));
}

struct LoadOptions {
    std::size_t drop_first_columns = 0;
    std::map<std::string, double> value_map; // symbolic token -> numeric value
};

namespace detail {

inline bool parse_number(const std::string& tok, double& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size();
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& t : out) {
        std::size_t a = t.find_first_not_of(" \t");
        std::size_t b = t.find_last_not_of(" \t");
        t = (a == std::string::npos) ? std::string() : t.substr(a, b - a + 1);
    }
    return out;
}

} // namespace detail

// Loads a rectangular numeric CSV as a point cloud / data matrix. A single
// leading header row is auto-detected (a row where no cell parses as a
// number and no cell is covered by the value map). drop_first_columns
// removes leading columns before use; value_map remaps symbolic tokens.
inline PointCloud load_matrix(const std::string& path, const LoadOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto toks = detail::split_csv_row(line);
        std::vector<double> vals;
        vals.reserve(toks.size());
        bool all_bad = true;
        for (const auto& t : toks) {
            double x;
            if (detail::parse_number(t, x)) {
                vals.push_back(x);
                all_bad = false;
            } else if (auto it = opts.value_map.find(t); it != opts.value_map.end()) {
                vals.push_back(it->second);
                all_bad = false;
            } else {
                vals.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        if (first && all_bad) {
            first = false; // header row
            continue;
        }
        for (std::size_t j = 0; j < toks.size(); ++j)
            if (std::isnan(vals[j]))
                throw std::runtime_error("non-numeric cell '" + toks[j] + "' in " + path +
                                         " (no value-map entry)");
        if (rows.empty())
            width = vals.size();
        else if (vals.size() != width)
            throw std::runtime_error("ragged CSV row in " + path);
        rows.push_back(std::move(vals));
        first = false;
    }
    if (rows.empty()) throw std::runtime_error("empty CSV: " + path);
    if (opts.drop_first_columns >= width)
        throw std::invalid_argument("drop_first_columns >= column count");

    PointCloud cloud(rows.size(), width - opts.drop_first_columns);
    for (std::size_t i = 0; i < cloud.n; ++i)
        for (std::size_t j = 0; j < cloud.d; ++j)
            cloud.at(i, j) = rows[i][j + opts.drop_first_columns];
    cloud.validate();
    return cloud;
}

// One point per row, comma-separated, 17 significant digits, no header.
inline void save_matrix(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    char buf[64];
    for (std::size_t i = 0; i < cloud.n; ++i) {
        for (std::size_t j = 0; j < cloud.d; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", cloud.at(i, j));
            out << buf << (j + 1 < cloud.d ? "," : "\n");
        }
    }
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace circ
