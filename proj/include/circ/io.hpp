#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coords.hpp"
#include "evaluate.hpp"
#include "lift.hpp"
#include "persistence.hpp"
#include "point_cloud.hpp"
#include "rips.hpp"

namespace circ {

namespace io {

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// dim,birth,death,cocycle_id with "inf" for essential classes.
inline std::string barcode_csv(const Barcode& bc) {
    std::ostringstream os;
    os << "dim,birth,death,cocycle_id\n";
    for (const auto& p : bc.pairs)
        os << p.dim << "," << format_double(p.birth) << ","
           << (p.death == kInf ? std::string("inf") : format_double(p.death)) << ","
           << p.cocycle_id << "\n";
    return os.str();
}

inline std::vector<PersistencePair> read_barcode_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<PersistencePair> pairs;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string dim, birth, death, id;
        std::getline(ls, dim, ',');
        std::getline(ls, birth, ',');
        std::getline(ls, death, ',');
        std::getline(ls, id, ',');
        PersistencePair p;
        p.dim = std::stoi(dim);
        p.birth = std::stod(birth);
        p.death = death == "inf" ? kInf : std::stod(death);
        p.cocycle_id = id.empty() ? -1 : std::stoi(id);
        pairs.push_back(p);
    }
    return pairs;
}

inline nlohmann::json cocycle_json(int id, const Cocycle& c) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : c.entries)
        entries.push_back({{"u", e.u}, {"v", e.v}, {"coeff", e.coeff}, {"value", e.value}});
    return {{"id", id}, {"scale", c.scale}, {"entries", entries}};
}

inline nlohmann::json cocycles_json(const Barcode& bc) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < bc.cocycles.size(); ++i)
        arr.push_back(cocycle_json(static_cast<int>(i), bc.cocycles[i]));
    return {{"p", bc.p}, {"max_scale", bc.max_scale}, {"cocycles", arr}};
}

// point_index, theta_1..theta_k, combined
inline std::string coordinates_csv(const CircularCoordinates& cc,
                                   const std::vector<double>& combined) {
    std::ostringstream os;
    os << "point_index";
    for (std::size_t j = 0; j < cc.k(); ++j) os << ",theta_" << (j + 1);
    os << ",combined\n";
    for (std::size_t i = 0; i < cc.n(); ++i) {
        os << i;
        for (std::size_t j = 0; j < cc.k(); ++j) os << "," << format_double(cc.columns[j][i]);
        os << "," << format_double(combined[i]) << "\n";
    }
    return os.str();
}

// u, v, value, alpha_bar, constant_flag
inline std::string edges_csv(const std::vector<Edge>& edges, const EdgeClassification& cls) {
    std::ostringstream os;
    os << "u,v,value,alpha_bar,constant_flag\n";
    for (std::size_t e = 0; e < edges.size(); ++e)
        os << edges[e].u << "," << edges[e].v << "," << format_double(edges[e].value) << ","
           << format_double(cls.alpha_bar[e]) << "," << static_cast<int>(cls.constant_flag[e])
           << "\n";
    return os.str();
}

inline std::string trace_csv(const std::vector<double>& trace) {
    std::ostringstream os;
    os << "step,objective\n";
    for (std::size_t s = 0; s < trace.size(); ++s)
        os << s << "," << format_double(trace[s]) << "\n";
    return os.str();
}

inline nlohmann::json smoothing_json(double lambda, const std::vector<double>& f,
                                     const std::vector<double>& alpha_bar,
                                     double objective_final) {
    return {{"lambda", lambda},
            {"f", f},
            {"alpha_bar", alpha_bar},
            {"objective_final", objective_final}};
}

// Reads the coordinates CSV back: k theta columns plus the combined column.
inline std::pair<CircularCoordinates, std::vector<double>> read_coordinates_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty coordinates file: " + path);
    std::size_t cols = 1;
    for (char c : line)
        if (c == ',') ++cols;
    if (cols < 3) throw std::runtime_error("coordinates file needs point_index, theta, combined");
    const std::size_t k = cols - 2;

    CircularCoordinates cc;
    cc.columns.assign(k, {});
    std::vector<double> combined;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ','); // point_index
        for (std::size_t j = 0; j < k; ++j) {
            std::getline(ls, tok, ',');
            cc.columns[j].push_back(std::stod(tok));
        }
        std::getline(ls, tok, ',');
        combined.push_back(std::stod(tok));
    }
    return {cc, combined};
}

inline std::pair<std::vector<Edge>, EdgeClassification> read_edges_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<Edge> edges;
    EdgeClassification cls;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string u, v, value, alpha, flag;
        std::getline(ls, u, ',');
        std::getline(ls, v, ',');
        std::getline(ls, value, ',');
        std::getline(ls, alpha, ',');
        std::getline(ls, flag, ',');
        edges.push_back({std::stoi(u), std::stoi(v), std::stod(value)});
        cls.alpha_bar.push_back(std::stod(alpha));
        cls.constant_flag.push_back(flag == "1");
        if (flag == "1") ++cls.constant_count;
    }
    return {edges, cls};
}

inline std::string coranking_csv(const CorankingMatrix& Q) {
    std::ostringstream os;
    for (std::size_t i = 0; i < Q.n - 1; ++i) {
        for (std::size_t j = 0; j < Q.n - 1; ++j) {
            if (j) os << ",";
            os << Q.at(i, j);
        }
        os << "\n";
    }
    return os.str();
}

} // namespace io

} // namespace circ
