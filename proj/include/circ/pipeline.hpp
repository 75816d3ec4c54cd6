#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coords.hpp"
#include "datasets.hpp"
#include "distance.hpp"
#include "io.hpp"
#include "lift.hpp"
#include "persistence.hpp"
#include "point_cloud.hpp"
#include "rips.hpp"
#include "rng.hpp"
#include "smooth.hpp"
#include "viz.hpp"

namespace circ {

struct PipelineConfig {
    // input: either a named generator or a CSV file
    std::string dataset;    // ring | double_ring | dupin | figure8 | two_circles
    std::string input_file; // used when dataset is empty
    LoadOptions load_opts;

    // generator parameters
    double R = 1.5;
    double w = 1.5;
    double r = 2.0;
    std::size_t n = 300;
    std::string scheme = "parameter"; // parameter | volume
    std::uint64_t seed = 7;

    // persistence
    int p = 23;
    double max_scale = -1.0;      // < 0: enclosing radius of the input
    double tau = 1.0;
    std::size_t top_k = 0;        // 0: keep all above tau
    double scale_fraction = -1.0; // < 0: per-cocycle death minus epsilon

    // smoothing
    std::vector<double> lambdas{0.0, 0.5, 1.0};
    OptimizerConfig opt;
    double edge_eps = 1e-4;

    bool emit_plots = true;
    std::string outdir = ".";

    void validate() const {
        if (dataset.empty() && input_file.empty())
            throw std::invalid_argument("config needs a dataset or an input_file");
        for (double l : lambdas)
            if (l < 0.0 || l > 1.0) throw std::invalid_argument("lambda must lie in [0, 1]");
        if (lambdas.empty()) throw std::invalid_argument("lambda list must be non-empty");
        if (!(edge_eps > 0.0)) throw std::invalid_argument("edge_eps must be positive");
        opt.validate();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

} // namespace detail

// Flat key = value lines; '#' starts a comment. Unknown keys are an error so
// typos do not silently fall back to defaults.
inline PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));

        if (key == "dataset") cfg.dataset = val;
        else if (key == "input_file") cfg.input_file = val;
        else if (key == "drop_first_columns") cfg.load_opts.drop_first_columns = std::stoul(val);
        else if (key == "R") cfg.R = std::stod(val);
        else if (key == "w") cfg.w = std::stod(val);
        else if (key == "r") cfg.r = std::stod(val);
        else if (key == "n") cfg.n = std::stoul(val);
        else if (key == "scheme") cfg.scheme = val;
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "p") cfg.p = std::stoi(val);
        else if (key == "max_scale") cfg.max_scale = std::stod(val);
        else if (key == "tau") cfg.tau = val == "inf" ? kInf : std::stod(val);
        else if (key == "top_k") cfg.top_k = std::stoul(val);
        else if (key == "scale_fraction") cfg.scale_fraction = std::stod(val);
        else if (key == "lambdas") cfg.lambdas = detail::parse_double_list(val);
        else if (key == "learning_rate") cfg.opt.learning_rate = std::stod(val);
        else if (key == "steps") cfg.opt.steps = std::stoi(val);
        else if (key == "init") {
            if (val == "zeros") cfg.opt.init = InitScheme::zeros;
            else if (val == "gaussian") cfg.opt.init = InitScheme::gaussian;
            else throw std::invalid_argument("init must be zeros or gaussian");
        } else if (key == "sigma") cfg.opt.sigma = std::stod(val);
        else if (key == "edge_eps") cfg.edge_eps = std::stod(val);
        else if (key == "emit_plots") cfg.emit_plots = val == "1" || val == "true";
        else if (key == "outdir") cfg.outdir = val;
        else throw std::invalid_argument("unknown config key: " + key);
    }
    return cfg;
}

inline PipelineConfig load_config(const std::string& path) {
    return parse_config(io::read_text(path));
}

inline PointCloud generate_dataset(const PipelineConfig& cfg, std::uint64_t stage_seed) {
    const SamplingScheme scheme = parse_scheme(cfg.scheme);
    if (cfg.dataset == "ring") return generate_ring(cfg.R, cfg.w, cfg.n, scheme, stage_seed);
    if (cfg.dataset == "double_ring")
        return generate_double_ring(cfg.R, cfg.w, cfg.n, scheme, stage_seed);
    if (cfg.dataset == "dupin") return generate_dupin(cfg.r, cfg.R, cfg.n, scheme, stage_seed);
    if (cfg.dataset == "figure8") return generate_figure8_2d(cfg.n);
    if (cfg.dataset == "two_circles") return generate_two_circles_3d(cfg.n);
    throw std::invalid_argument("unknown dataset: " + cfg.dataset +
                                " (valid: ring, double_ring, dupin, figure8, two_circles)");
}

struct PipelineResult {
    nlohmann::json manifest;
    Barcode barcode;
    std::vector<PersistencePair> selected;
    // coordinates[lambda index] for all selected cocycles
    std::vector<CircularCoordinates> coordinates;
};

namespace detail {

inline std::string lambda_tag(double lambda) {
    std::ostringstream os;
    os << lambda;
    std::string s = os.str();
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

} // namespace detail

// Runs generate/load, persistence, cocycle selection, lifting, smoothing per
// lambda, coordinates, and plots; writes everything plus a manifest with
// content hashes under cfg.outdir.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    fs::create_directories(cfg.outdir);
    const auto path = [&](const std::string& name) {
        return (fs::path(cfg.outdir) / name).string();
    };

    nlohmann::json manifest;
    manifest["config"] = {{"dataset", cfg.dataset}, {"input_file", cfg.input_file},
                          {"R", cfg.R}, {"w", cfg.w}, {"r", cfg.r}, {"n", cfg.n},
                          {"scheme", cfg.scheme}, {"seed", cfg.seed}, {"p", cfg.p},
                          {"max_scale", cfg.max_scale}, {"tau", cfg.tau},
                          {"top_k", cfg.top_k}, {"scale_fraction", cfg.scale_fraction},
                          {"lambdas", cfg.lambdas},
                          {"learning_rate", cfg.opt.learning_rate}, {"steps", cfg.opt.steps},
                          {"init", cfg.opt.init == InitScheme::zeros ? "zeros" : "gaussian"},
                          {"sigma", cfg.opt.sigma}, {"edge_eps", cfg.edge_eps},
                          {"emit_plots", cfg.emit_plots}};
    std::vector<std::string> outputs;
    const auto emit = [&](const std::string& name, const std::string& content) {
        io::write_text(path(name), content);
        outputs.push_back(name);
    };

    // stage: input
    const std::uint64_t gen_seed = derive_seed(cfg.seed, "generate");
    manifest["seeds"]["generate"] = gen_seed;
    PointCloud cloud = cfg.dataset.empty() ? load_matrix(cfg.input_file, cfg.load_opts)
                                           : generate_dataset(cfg, gen_seed);
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < cloud.n; ++i) {
            for (std::size_t j = 0; j < cloud.d; ++j) {
                if (j) os << ",";
                os << format_double(cloud.at(i, j));
            }
            os << "\n";
        }
        emit("points.csv", os.str());
    }

    // stage: persistence
    const DistanceMatrix dm = distance_matrix(cloud);
    const double max_scale = cfg.max_scale > 0.0 ? cfg.max_scale : enclosing_radius(dm);
    manifest["resolved"]["max_scale"] = max_scale;
    const Filtration filt = build_rips(dm, max_scale, 2);
    Barcode barcode = persistent_cohomology(filt, cfg.p);
    emit("barcode.csv", io::barcode_csv(barcode));
    emit("cocycles.json", io::cocycles_json(barcode).dump(2) + "\n");

    // stage: selection
    std::vector<PersistencePair> selected = significant_cocycles(barcode, cfg.tau, cfg.top_k);
    if (selected.empty())
        throw std::runtime_error(
            "no significant 1-cocycle above tau = " + std::to_string(cfg.tau) +
            ": a trivial first cohomology group obstructs circular coordinates");

    PipelineResult result;
    result.barcode = barcode;
    result.selected = selected;

    const double eps_scale = 1e-9 * max_scale;
    // correlation plots need a well-defined data angle for every point;
    // skip them when a point sits at the origin (e.g. figure-8 tangency)
    std::vector<double> data_angles;
    bool have_angles = cloud.d >= 2;
    if (have_angles) {
        try {
            for (std::size_t i = 0; i < cloud.n; ++i) data_angles.push_back(angle_of(cloud, i));
        } catch (const std::domain_error&) {
            have_angles = false;
            data_angles.clear();
        }
    }

    for (double lambda : cfg.lambdas) {
        const std::string ltag = detail::lambda_tag(lambda);
        CircularCoordinates cc;
        for (std::size_t k = 0; k < selected.size(); ++k) {
            const auto& pair = selected[k];
            double scale = pair.death == kInf ? max_scale : pair.death - eps_scale;
            if (cfg.scale_fraction >= 0.0) scale = cfg.scale_fraction * max_scale;
            const ComplexSlice slice = restrict_to_scale(filt, scale);
            const Cocycle rep = restrict_cocycle(barcode.cocycles[pair.cocycle_id], scale);
            const IntegerCocycle ic = lift(rep, cfg.p);
            const VerifyResult vr = verify_integer_cocycle(ic, slice);
            if (!vr.ok) throw std::runtime_error(vr.message());
            const std::vector<double> alpha = alpha_vector(slice, ic);

            const std::string tag = "c" + std::to_string(k) + "_lambda" + ltag;
            std::vector<double> f;
            std::vector<double> trace;
            PenaltyConfig pc;
            pc.lambda = lambda;
            if (lambda == 1.0) {
                // closed-form harmonic representative; same minimizer as Adam
                // on the pure squared-L2 objective, but exact
                f = smooth_l2_exact(alpha, slice);
                trace.push_back(objective(alpha, f, slice.edges, pc));
            } else {
                OptimizerConfig oc = cfg.opt;
                oc.seed = derive_seed(cfg.seed, "smooth:" + tag);
                manifest["seeds"]["smooth:" + tag] = oc.seed;
                SmoothResult sr = smooth_generalized(alpha, slice, pc, oc);
                f = std::move(sr.f);
                trace = std::move(sr.trace);
            }
            const std::vector<double> alpha_bar = smoothed_cocycle(alpha, f, slice.edges);
            const EdgeClassification cls = classify_edges(slice, alpha_bar, cfg.edge_eps);
            cc.columns.push_back(extract_coords(f));
            cc.cocycle_ids.push_back(pair.cocycle_id);

            emit("edges_" + tag + ".csv", io::edges_csv(slice.edges, cls));
            emit("trace_" + tag + ".csv", io::trace_csv(trace));
            emit("smoothing_" + tag + ".json",
                 io::smoothing_json(lambda, f, alpha_bar, trace.back()).dump(2) + "\n");
            manifest["constant_edges"][tag] = cls.constant_count;

            if (cfg.emit_plots && cloud.d >= 2) {
                emit_colored_scatter(cloud, cc.columns.back(), slice.edges, cls.constant_flag,
                                     path("scatter_" + tag + ".svg"),
                                     path("scatter_" + tag + ".csv"));
                outputs.push_back("scatter_" + tag + ".svg");
                outputs.push_back("scatter_" + tag + ".csv");
                if (have_angles) {
                    emit_correlation(data_angles, cc.columns.back(),
                                     path("correlation_" + tag + ".svg"),
                                     path("correlation_" + tag + ".csv"));
                    outputs.push_back("correlation_" + tag + ".svg");
                    outputs.push_back("correlation_" + tag + ".csv");
                }
            }
        }
        const std::vector<double> combined = combine_coords(cc);
        emit("coords_lambda" + ltag + ".csv", io::coordinates_csv(cc, combined));
        if (cfg.emit_plots) {
            emit_density(cc.columns, combined, path("density_lambda" + ltag + ".svg"),
                         path("density_lambda" + ltag + ".csv"));
            outputs.push_back("density_lambda" + ltag + ".svg");
            outputs.push_back("density_lambda" + ltag + ".csv");
        }
        if (cfg.emit_plots && cc.k() >= 2) {
            emit_coordinate_plot(cc.columns[0], cc.columns[1],
                                 path("coordinate_plot_lambda" + ltag + ".svg"),
                                 path("coordinate_plot_lambda" + ltag + ".csv"));
            outputs.push_back("coordinate_plot_lambda" + ltag + ".svg");
            outputs.push_back("coordinate_plot_lambda" + ltag + ".csv");
        }
        result.coordinates.push_back(std::move(cc));
    }

    if (cfg.emit_plots) {
        emit_barcode(barcode.pairs, max_scale, path("barcode.svg"), path("barcode_plot.csv"));
        outputs.push_back("barcode.svg");
        outputs.push_back("barcode_plot.csv");
    }

    std::sort(outputs.begin(), outputs.end());
    for (const auto& name : outputs) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(io::read_text(path(name)))));
        manifest["hashes"][name] = buf;
    }
    io::write_text(path("manifest.json"), manifest.dump(2) + "\n");
    result.manifest = manifest;
    return result;
}

} // namespace circ
