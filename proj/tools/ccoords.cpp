#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "circ/coords.hpp"
#include "circ/datasets.hpp"
#include "circ/distance.hpp"
#include "circ/evaluate.hpp"
#include "circ/io.hpp"
#include "circ/persistence.hpp"
#include "circ/pipeline.hpp"
#include "circ/point_cloud.hpp"
#include "circ/rips.hpp"
#include "circ/viz.hpp"

namespace {

namespace fs = std::filesystem;

std::string default_outdir() {
    const char* env = std::getenv("CCOORDS_OUTDIR");
    return env && *env ? env : ".";
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

struct Args {
    // generate
    std::string dataset;
    double R = 1.5, w = 1.5, r = 2.0;
    std::size_t n = 300;
    std::uint64_t seed = 7;
    std::string scheme = "parameter";
    std::string out;
    // persistence / coords
    std::string input;
    std::string distance_file;
    int p = 23;
    double max_scale = -1.0;
    double tau = 1.0;
    std::size_t top_k = 0;
    std::vector<double> lambdas{0.0, 0.5, 1.0};
    double learning_rate = 1e-4;
    int steps = 1000;
    std::string init = "zeros";
    double sigma = 0.1;
    double edge_eps = 1e-4;
    std::string outdir = default_outdir();
    // plot
    std::string kind;
    std::string points_file, coords_file, edges_file, barcode_file;
    std::size_t coords_column = 1;
    std::string svg_out, csv_out;
    // corank
    std::string high_file, low_file, labels_file;
    // pipeline
    std::string config_file;
    std::vector<std::string> overrides;
};

circ::PointCloud load_points(const std::string& path) {
    return circ::load_matrix(path);
}

int cmd_generate(const Args& a) {
    circ::PointCloud cloud;
    const auto scheme = circ::parse_scheme(a.scheme);
    if (a.dataset == "ring") cloud = circ::generate_ring(a.R, a.w, a.n, scheme, a.seed);
    else if (a.dataset == "double_ring")
        cloud = circ::generate_double_ring(a.R, a.w, a.n, scheme, a.seed);
    else if (a.dataset == "dupin") cloud = circ::generate_dupin(a.r, a.R, a.n, scheme, a.seed);
    else if (a.dataset == "figure8") cloud = circ::generate_figure8_2d(a.n);
    else if (a.dataset == "two_circles") cloud = circ::generate_two_circles_3d(a.n);
    else
        throw std::invalid_argument("unknown dataset: " + a.dataset +
                                    " (valid: ring, double_ring, dupin, figure8, two_circles)");
    const std::string out = a.out.empty() ? join(a.outdir, a.dataset + ".csv") : a.out;
    circ::save_matrix(cloud, out);
    std::cout << "wrote " << cloud.n << " rows x " << cloud.d << " columns to " << out << "\n";
    return 0;
}

int cmd_persistence(const Args& a) {
    circ::DistanceMatrix dm;
    if (!a.distance_file.empty()) dm = circ::distance_matrix_from_csv(a.distance_file);
    else dm = circ::distance_matrix(load_points(a.input));
    const double ms = a.max_scale > 0.0 ? a.max_scale : circ::enclosing_radius(dm);
    const circ::Filtration filt = circ::build_rips(dm, ms, 2);
    const circ::Barcode bc = circ::persistent_cohomology(filt, a.p);
    fs::create_directories(a.outdir);
    circ::io::write_text(join(a.outdir, "barcode.csv"), circ::io::barcode_csv(bc));
    circ::io::write_text(join(a.outdir, "cocycles.json"),
                         circ::io::cocycles_json(bc).dump(2) + "\n");
    std::cout << "wrote barcode.csv and cocycles.json to " << a.outdir << " (max_scale " << ms
              << ", " << bc.pairs.size() << " pairs)\n";
    return 0;
}

circ::PipelineConfig config_from_args(const Args& a) {
    circ::PipelineConfig cfg;
    cfg.input_file = a.input;
    cfg.p = a.p;
    cfg.max_scale = a.max_scale;
    cfg.tau = a.tau;
    cfg.top_k = a.top_k;
    cfg.lambdas = a.lambdas;
    cfg.opt.learning_rate = a.learning_rate;
    cfg.opt.steps = a.steps;
    cfg.opt.init = a.init == "gaussian" ? circ::InitScheme::gaussian : circ::InitScheme::zeros;
    cfg.opt.sigma = a.sigma;
    cfg.edge_eps = a.edge_eps;
    cfg.seed = a.seed;
    cfg.outdir = a.outdir;
    return cfg;
}

int cmd_coords(const Args& a) {
    circ::PipelineConfig cfg = config_from_args(a);
    cfg.emit_plots = false;
    circ::run_pipeline(cfg);
    std::cout << "wrote coordinate, edge, and trace files to " << cfg.outdir << "\n";
    return 0;
}

int cmd_plot(const Args& a) {
    fs::create_directories(a.outdir);
    const std::string svg = a.svg_out.empty() ? join(a.outdir, a.kind + ".svg") : a.svg_out;
    const std::string csv = a.csv_out.empty() ? join(a.outdir, a.kind + ".csv") : a.csv_out;

    if (a.kind == "colored_scatter") {
        circ::PointCloud cloud = load_points(a.points_file);
        auto [cc, combined] = circ::io::read_coordinates_csv(a.coords_file);
        if (a.coords_column < 1 || a.coords_column > cc.k())
            throw std::invalid_argument("coords column out of range");
        auto [edges, cls] = circ::io::read_edges_csv(a.edges_file);
        circ::emit_colored_scatter(cloud, cc.columns[a.coords_column - 1], edges,
                                   cls.constant_flag, svg, csv);
    } else if (a.kind == "correlation") {
        circ::PointCloud cloud = load_points(a.points_file);
        auto [cc, combined] = circ::io::read_coordinates_csv(a.coords_file);
        if (a.coords_column < 1 || a.coords_column > cc.k())
            throw std::invalid_argument("coords column out of range");
        std::vector<double> angles;
        for (std::size_t i = 0; i < cloud.n; ++i) angles.push_back(circ::angle_of(cloud, i));
        circ::emit_correlation(angles, cc.columns[a.coords_column - 1], svg, csv);
    } else if (a.kind == "coordinate_plot") {
        auto [cc, combined] = circ::io::read_coordinates_csv(a.coords_file);
        if (cc.k() < 2) throw std::invalid_argument("coordinate_plot needs at least 2 columns");
        circ::emit_coordinate_plot(cc.columns[0], cc.columns[1], svg, csv);
    } else if (a.kind == "barcode") {
        auto pairs = circ::io::read_barcode_csv(a.barcode_file);
        circ::emit_barcode(pairs, a.max_scale, svg, csv);
    } else if (a.kind == "density") {
        auto [cc, combined] = circ::io::read_coordinates_csv(a.coords_file);
        circ::emit_density(cc.columns, combined, svg, csv);
    } else {
        throw std::invalid_argument("invalid plot kind: " + a.kind +
                                    " (valid: colored_scatter, correlation, coordinate_plot, "
                                    "barcode, density)");
    }
    std::cout << "wrote " << svg << " and " << csv << "\n";
    return 0;
}

int cmd_corank(const Args& a) {
    circ::PointCloud high = load_points(a.high_file);
    circ::PointCloud low = load_points(a.low_file);
    const circ::CorankingMatrix Q = circ::coranking(high, low);
    fs::create_directories(a.outdir);
    circ::io::write_text(join(a.outdir, "coranking.csv"), circ::io::coranking_csv(Q));

    nlohmann::json report = {{"n", Q.n}};
    if (!a.labels_file.empty()) {
        circ::PointCloud lm = load_points(a.labels_file);
        std::vector<int> labels;
        for (std::size_t i = 0; i < lm.n; ++i) labels.push_back(static_cast<int>(lm.at(i, 0)));
        report["block_sharpness"] = circ::block_sharpness(Q, labels);
    }
    circ::io::write_text(join(a.outdir, "coranking_report.json"), report.dump(2) + "\n");
    std::cout << "wrote coranking.csv and coranking_report.json to " << a.outdir << "\n";
    return 0;
}

int cmd_pipeline(const Args& a) {
    circ::PipelineConfig cfg = circ::load_config(a.config_file);
    std::string extra;
    for (const auto& kv : a.overrides) extra += kv + "\n";
    if (!extra.empty()) {
        // re-parse with overrides layered on top of the file values
        std::string merged = circ::io::read_text(a.config_file) + "\n" + extra;
        cfg = circ::parse_config(merged);
    }
    if (a.outdir != default_outdir() || cfg.outdir == ".") cfg.outdir = a.outdir;
    circ::run_pipeline(cfg);
    std::cout << "pipeline complete; manifest at " << join(cfg.outdir, "manifest.json") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circular coordinates for point-cloud data"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json", json_errors, "print errors as JSON on stderr");

    Args a;

    auto* gen = app.add_subcommand("generate", "sample a synthetic dataset to CSV");
    gen->add_option("dataset", a.dataset, "ring | double_ring | dupin | figure8 | two_circles")
        ->required();
    gen->add_option("--R", a.R, "major radius");
    gen->add_option("--w", a.w, "ring width");
    gen->add_option("--r", a.r, "cyclide shape parameter");
    gen->add_option("--n", a.n, "number of points");
    gen->add_option("--seed", a.seed, "random seed");
    gen->add_option("--scheme", a.scheme, "parameter | volume");
    gen->add_option("--out", a.out, "output CSV path");
    gen->add_option("--outdir", a.outdir, "output directory");

    auto* per = app.add_subcommand("persistence", "compute barcode and representative cocycles");
    per->add_option("--input", a.input, "point cloud CSV");
    per->add_option("--distance-matrix", a.distance_file, "precomputed distance matrix CSV");
    per->add_option("--p", a.p, "coefficient prime");
    per->add_option("--max-scale", a.max_scale, "filtration cutoff (default: enclosing radius)");
    per->add_option("--outdir", a.outdir, "output directory");

    auto* crd = app.add_subcommand("coords", "compute circular coordinates per (cocycle, lambda)");
    crd->add_option("--input", a.input, "point cloud CSV")->required();
    crd->add_option("--p", a.p, "coefficient prime");
    crd->add_option("--max-scale", a.max_scale, "filtration cutoff");
    crd->add_option("--tau", a.tau, "persistence threshold");
    crd->add_option("--top-k", a.top_k, "keep only the k most persistent classes");
    crd->add_option("--lambda", a.lambdas, "penalty mix values in [0,1]");
    crd->add_option("--learning-rate", a.learning_rate, "optimizer step size");
    crd->add_option("--steps", a.steps, "optimizer iterations");
    crd->add_option("--init", a.init, "zeros | gaussian");
    crd->add_option("--sigma", a.sigma, "gaussian init scale");
    crd->add_option("--edge-eps", a.edge_eps, "constant-edge threshold");
    crd->add_option("--seed", a.seed, "root seed");
    crd->add_option("--outdir", a.outdir, "output directory");

    auto* plt = app.add_subcommand("plot", "render an SVG figure with its CSV twin");
    plt->add_option("kind", a.kind,
                    "colored_scatter | correlation | coordinate_plot | barcode | density")
        ->required();
    plt->add_option("--points", a.points_file, "point cloud CSV");
    plt->add_option("--coords", a.coords_file, "coordinates CSV");
    plt->add_option("--coords-column", a.coords_column, "1-based theta column");
    plt->add_option("--edges", a.edges_file, "edges CSV");
    plt->add_option("--barcode", a.barcode_file, "barcode CSV");
    plt->add_option("--max-scale", a.max_scale, "barcode axis extent");
    plt->add_option("--svg", a.svg_out, "SVG output path");
    plt->add_option("--csv", a.csv_out, "CSV output path");
    plt->add_option("--outdir", a.outdir, "output directory");

    auto* cor = app.add_subcommand("corank", "coranking matrix between two embeddings");
    cor->add_option("--high", a.high_file, "high-dimensional CSV")->required();
    cor->add_option("--low", a.low_file, "low-dimensional CSV")->required();
    cor->add_option("--labels", a.labels_file, "single-column label CSV");
    cor->add_option("--outdir", a.outdir, "output directory");

    auto* pip = app.add_subcommand("pipeline", "run the full pipeline from a config file");
    pip->add_option("config", a.config_file, "flat key = value config file")->required();
    pip->add_option("--set", a.overrides, "override config entries, key=value");
    pip->add_option("--outdir", a.outdir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(a);
        if (per->parsed()) {
            if (a.input.empty() && a.distance_file.empty())
                throw std::invalid_argument("persistence needs --input or --distance-matrix");
            if (!circ::is_prime(a.p)) throw std::invalid_argument("p must be prime");
            return cmd_persistence(a);
        }
        if (crd->parsed()) return cmd_coords(a);
        if (plt->parsed()) return cmd_plot(a);
        if (cor->parsed()) return cmd_corank(a);
        if (pip->parsed()) return cmd_pipeline(a);
    } catch (const std::exception& e) {
        if (json_errors) {
            nlohmann::json err = {{"error", e.what()}};
            std::cerr << err.dump() << "\n";
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return 1;
    }
    return 1;
}
