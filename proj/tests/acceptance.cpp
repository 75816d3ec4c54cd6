// End-to-end acceptance checks. Each criterion prints one pass/fail line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "circ/coords.hpp"
#include "circ/datasets.hpp"
#include "circ/distance.hpp"
#include "circ/evaluate.hpp"
#include "circ/lift.hpp"
#include "circ/persistence.hpp"
#include "circ/pipeline.hpp"
#include "circ/rips.hpp"
#include "circ/smooth.hpp"

using namespace circ;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  (%s)\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

void run(int id, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(id, ok, detail);
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

PointCloud square4() {
    PointCloud cloud(4, 2);
    const double pts[4][2] = {{-1.0, 0.5}, {1.0, 0.5}, {1.0, -0.5}, {-1.0, -0.5}};
    for (int i = 0; i < 4; ++i) {
        cloud.at(i, 0) = pts[i][0];
        cloud.at(i, 1) = pts[i][1];
    }
    return cloud;
}

struct SquareRun {
    Filtration filt;
    ComplexSlice slice;
    std::vector<double> alpha; // lifted representative on the slice edges
};

SquareRun square_run() {
    SquareRun sr;
    sr.filt = build_rips(distance_matrix(square4()), 2.0, 2);
    const Barcode bc = persistent_cohomology(sr.filt, 23);
    int id = -1;
    int count = 0;
    for (const auto& pr : bc.pairs)
        if (pr.dim == 1) {
            id = pr.cocycle_id;
            ++count;
        }
    if (count != 1) throw std::runtime_error("expected exactly one 1-class, got " +
                                             std::to_string(count));
    sr.slice = restrict_to_scale(sr.filt, 2.0);
    sr.alpha = alpha_vector(sr.slice, lift(restrict_cocycle(bc.cocycles[id], 2.0), 23));
    return sr;
}

// oriented sum around the 4-cycle 0 -> 1 -> 2 -> 3 -> 0; slice edges are
// sorted (0,1), (0,3), (1,2), (2,3)
double square_winding(const std::vector<double>& edge_values) {
    return edge_values[0] + edge_values[2] + edge_values[3] - edge_values[1];
}

struct SmoothedRun {
    ComplexSlice slice;
    std::vector<double> alpha;
    std::vector<double> alpha_bar;
    std::vector<double> theta;
    double objective_final = 0.0;
};

// slice at the class's death (or max_scale), lift, smooth at the given lambda
SmoothedRun smooth_class(const Filtration& filt, const Barcode& bc, const PersistencePair& pair,
                         double lambda, int steps = 1000) {
    SmoothedRun out;
    const double eps = 1e-9 * filt.max_scale;
    const double t = pair.death == kInf ? filt.max_scale : pair.death - eps;
    out.slice = restrict_to_scale(filt, t);
    const IntegerCocycle ic = lift(restrict_cocycle(bc.cocycles[pair.cocycle_id], t), 23);
    const VerifyResult vr = verify_integer_cocycle(ic, out.slice);
    if (!vr.ok) throw std::runtime_error(vr.message());
    out.alpha = alpha_vector(out.slice, ic);

    PenaltyConfig pc;
    pc.lambda = lambda;
    std::vector<double> f;
    if (lambda == 1.0) {
        f = smooth_l2_exact(out.alpha, out.slice);
        out.objective_final = objective(out.alpha, f, out.slice.edges, pc);
    } else {
        OptimizerConfig oc;
        oc.steps = steps;
        const SmoothResult sr = smooth_generalized(out.alpha, out.slice, pc, oc);
        f = sr.f;
        out.objective_final = sr.trace.back();
    }
    out.alpha_bar = smoothed_cocycle(out.alpha, f, out.slice.edges);
    out.theta = extract_coords(f);
    return out;
}

// effective persistence with essential classes measured to the cutoff
std::vector<double> dim1_persistences(const Barcode& bc, double max_scale) {
    std::vector<double> out;
    for (const auto& pr : bc.pairs)
        if (pr.dim == 1) out.push_back((pr.death == kInf ? max_scale : pr.death) - pr.birth);
    std::sort(out.rbegin(), out.rend());
    return out;
}

// both top classes must dominate the third largest and clear a floor (half
// the smaller of the original dataset's two leading persistences)
bool two_dominant(const std::vector<double>& pers, double floor_pers) {
    if (pers.size() < 2) return false;
    const double third = pers.size() > 2 ? pers[2] : 0.0;
    return pers[0] > 2.0 * third && pers[1] > 2.0 * third && pers[1] > floor_pers;
}

} // namespace

int main() {
    // 1. the 4-point rectangle has one 1-class whose lifted representative
    //    winds once around the loop
    run(1, [] {
        const SquareRun sr = square_run();
        const double w = square_winding(sr.alpha);
        std::ostringstream os;
        os << "one dim-1 class, winding " << w;
        return std::make_pair(std::abs(std::abs(w) - 1.0) < 1e-12, os.str());
    });

    // 2. exact L2 smoothing spreads the representative to +-1/4 per edge
    run(2, [] {
        const SquareRun sr = square_run();
        const std::vector<double> f = smooth_l2_exact(sr.alpha, sr.slice);
        const std::vector<double> bar = smoothed_cocycle(sr.alpha, f, sr.slice.edges);
        bool ok = std::abs(std::abs(square_winding(bar)) - 1.0) < 1e-9;
        double worst = 0.0;
        for (double v : bar) worst = std::max(worst, std::abs(std::abs(v) - 0.25));
        ok = ok && worst < 1e-9;
        std::ostringstream os;
        os << "max |.|-deviation from 1/4: " << worst;
        return std::make_pair(ok, os.str());
    });

    // shared ring run for criteria 3 and 5
    const PointCloud ring = generate_ring(1.5, 1.5, 300, SamplingScheme::parameter_uniform, 7);
    const DistanceMatrix ring_dm = distance_matrix(ring);
    const Filtration ring_filt = build_rips(ring_dm, enclosing_radius(ring_dm), 2);
    const Barcode ring_bc = persistent_cohomology(ring_filt, 23);
    const auto ring_sel = significant_cocycles(ring_bc, 1.0, 1);

    // 3. Adam at lambda=1 reaches the exact harmonic objective within 5%
    run(3, [&] {
        if (ring_sel.empty()) return std::make_pair(false, std::string("no class above tau=1"));
        const SmoothedRun exact = smooth_class(ring_filt, ring_bc, ring_sel[0], 1.0);
        double adam_obj = 0.0;
        PenaltyConfig pc;
        pc.lambda = 1.0;
        for (int steps : {1000, 5000, 20000}) {
            OptimizerConfig oc;
            oc.steps = steps;
            const SmoothResult sr = smooth_generalized(exact.alpha, exact.slice, pc, oc);
            adam_obj = sr.trace.back();
            if (adam_obj <= 1.05 * exact.objective_final) break;
        }
        std::ostringstream os;
        os << "adam " << adam_obj << " vs exact " << exact.objective_final;
        return std::make_pair(adam_obj <= 1.05 * exact.objective_final, os.str());
    });

    // 4. L1 optimum on the rectangle equals the winding-number lower bound
    run(4, [] {
        const SquareRun sr = square_run();
        PenaltyConfig pc;
        pc.lambda = 0.0;
        OptimizerConfig oc;
        const SmoothResult res = smooth_generalized(sr.alpha, sr.slice, pc, oc);
        std::ostringstream os;
        os << "final objective " << res.trace.back();
        return std::make_pair(std::abs(res.trace.back() - 1.0) <= 0.02, os.str());
    });

    // 5. constant-edge counts are ordered in lambda on the ring
    run(5, [&] {
        if (ring_sel.empty()) return std::make_pair(false, std::string("no class above tau=1"));
        std::vector<std::size_t> counts;
        for (double lambda : {0.0, 0.5, 1.0}) {
            const SmoothedRun sr = smooth_class(ring_filt, ring_bc, ring_sel[0], lambda);
            counts.push_back(classify_edges(sr.alpha_bar, 1e-4).constant_count);
        }
        std::ostringstream os;
        os << "counts " << counts[0] << " >= " << counts[1] << " >= " << counts[2];
        const bool ok = counts[0] >= counts[1] && counts[1] >= counts[2] &&
                        counts[0] > 10 * counts[2];
        return std::make_pair(ok, os.str());
    });

    // 6. the torus embedding of two orthogonal circles keeps both 1-classes;
    //    a 2-component PCA projection does not
    run(6, [] {
        const PointCloud cloud = generate_two_circles_3d(150);
        const DistanceMatrix dm = distance_matrix(cloud);
        const Filtration filt = build_rips(dm, enclosing_radius(dm), 2);
        const Barcode bc = persistent_cohomology(filt, 23);
        const auto sel = significant_cocycles(bc, 0.0, 2);
        if (sel.size() != 2) return std::make_pair(false, std::string("expected 2 classes"));
        const double floor_pers =
            0.5 * std::min(sel[0].death == kInf ? filt.max_scale - sel[0].birth
                                                : sel[0].persistence(),
                           sel[1].death == kInf ? filt.max_scale - sel[1].birth
                                                : sel[1].persistence());

        CircularCoordinates cc;
        for (const auto& pr : sel)
            cc.columns.push_back(smooth_class(filt, bc, pr, 1.0).theta);
        const PointCloud torus = torus_embed(cc);
        const DistanceMatrix tdm = distance_matrix(torus);
        const double tms = enclosing_radius(tdm);
        const Barcode tbc = persistent_cohomology(build_rips(tdm, tms, 2), 23);
        const bool torus_ok = two_dominant(dim1_persistences(tbc, tms), floor_pers);

        const PointCloud proj = pca(cloud, 2).projection;
        const DistanceMatrix pdm = distance_matrix(proj);
        const double pms = enclosing_radius(pdm);
        const Barcode pbc = persistent_cohomology(build_rips(pdm, pms, 2), 23);
        const bool pca_ok = two_dominant(dim1_persistences(pbc, pms), floor_pers);

        std::ostringstream os;
        os << "torus embedding dominant-pair test " << (torus_ok ? "holds" : "fails")
           << "; pca " << (pca_ok ? "holds" : "fails");
        return std::make_pair(torus_ok && !pca_ok, os.str());
    });

    // 7. on the double ring, each coordinate's non-constant edges localize
    //    on a single ring
    run(7, [] {
        const PointCloud cloud =
            generate_double_ring(1.5, 0.5, 100, SamplingScheme::parameter_uniform, 7);
        const DistanceMatrix dm = distance_matrix(cloud);
        const Filtration filt = build_rips(dm, enclosing_radius(dm), 2);
        const Barcode bc = persistent_cohomology(filt, 23);
        const auto sel = significant_cocycles(bc, 0.0, 2);
        if (sel.size() != 2) return std::make_pair(false, std::string("expected 2 classes"));

        auto nearer_left = [&](int v) {
            const double dl = std::hypot(cloud.at(v, 0) + 2.0, cloud.at(v, 1));
            const double dr = std::hypot(cloud.at(v, 0) - 2.0, cloud.at(v, 1));
            return dl < dr;
        };

        std::vector<int> homes;
        bool ok = true;
        std::ostringstream os;
        for (const auto& pr : sel) {
            const SmoothedRun sr = smooth_class(filt, bc, pr, 0.0, 20000);
            std::size_t left = 0, right = 0, total = 0;
            for (std::size_t e = 0; e < sr.alpha_bar.size(); ++e) {
                if (std::abs(sr.alpha_bar[e]) < 1e-4) continue;
                ++total;
                const bool ul = nearer_left(sr.slice.edges[e].u);
                const bool vl = nearer_left(sr.slice.edges[e].v);
                if (ul && vl) ++left;
                if (!ul && !vl) ++right;
            }
            if (total == 0) {
                ok = false;
                continue;
            }
            const double frac =
                static_cast<double>(std::max(left, right)) / static_cast<double>(total);
            homes.push_back(left >= right ? 0 : 1);
            os << "fraction " << frac << " on ring " << homes.back() << "; ";
            ok = ok && frac >= 0.8;
        }
        ok = ok && homes.size() == 2 && homes[0] != homes[1];
        return std::make_pair(ok, os.str());
    });

    // 8. barcode Betti counts equal the brute-force oracle
    run(8, [] {
        Rng rng(2024);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t n = 4 + (rng.next_u64() % 5);
            PointCloud cloud(n, 2);
            for (double& v : cloud.data) v = rng.uniform(-1.0, 1.0);
            const DistanceMatrix dm = distance_matrix(cloud);
            double full = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) full = std::max(full, dm.at(i, j));
            const Filtration filt = build_rips(dm, full + 0.1, 2);
            const Barcode bc = persistent_cohomology(filt, 23);
            for (int s = 0; s < 10; ++s) {
                const double t = rng.uniform(0.0, full + 0.1);
                if (betti_from_barcode(bc, t) != betti_oracle(filt, t, 23)) {
                    std::ostringstream os;
                    os << "mismatch at trial " << trial << " scale " << t;
                    return std::make_pair(false, os.str());
                }
            }
        }
        return std::make_pair(true, std::string("25 clouds x 10 scales agree"));
    });

    // 9. invariant suite
    run(9, [] {
        const SquareRun sq = square_run();
        std::vector<std::string> failed;

        { // gauge invariance
            PenaltyConfig pc;
            pc.lambda = 0.5;
            std::vector<double> f{0.3, -0.2, 0.8, 0.1}, g = f;
            for (double& v : g) v += 42.0;
            if (std::abs(objective(sq.alpha, f, sq.slice.edges, pc) -
                         objective(sq.alpha, g, sq.slice.edges, pc)) > 1e-12)
                failed.push_back("gauge");
        }
        { // class preservation (bitwise) and winding invariance
            std::vector<double> f{0.7, -1.3, 0.4, 2.2};
            const std::vector<double> bar = smoothed_cocycle(sq.alpha, f, sq.slice.edges);
            const std::vector<double> df = coboundary_apply(f, sq.slice.edges);
            for (std::size_t e = 0; e < bar.size(); ++e)
                if (bar[e] != sq.alpha[e] + df[e]) failed.push_back("class");
            if (std::abs(std::abs(square_winding(bar)) - 1.0) > 1e-12)
                failed.push_back("winding");
        }
        { // mod-1 idempotence
            const std::vector<double> f{3.25, -0.5, 17.0, 0.999};
            if (extract_coords(extract_coords(f)) != extract_coords(f))
                failed.push_back("mod1");
        }
        { // coranking sums and monotone invariance
            Rng rng(50);
            PointCloud high(12, 3), low(12, 2);
            for (double& v : high.data) v = rng.uniform(-1.0, 1.0);
            for (double& v : low.data) v = rng.uniform(-1.0, 1.0);
            DistanceMatrix dh = distance_matrix(high), dl = distance_matrix(low);
            const CorankingMatrix Q = coranking(dh, dl);
            for (std::size_t i = 0; i < Q.n - 1; ++i) {
                std::size_t row = 0, col = 0;
                for (std::size_t j = 0; j < Q.n - 1; ++j) {
                    row += Q.at(i, j);
                    col += Q.at(j, i);
                }
                if (row != Q.n || col != Q.n) failed.push_back("coranking-sums");
            }
            for (double& v : dh.data) v = v * v * v;
            for (double& v : dl.data) v = v * v * v;
            if (coranking(dh, dl).data != Q.data) failed.push_back("coranking-monotone");
        }
        { // gradient vs finite differences at lambda=1
            PenaltyConfig pc;
            pc.lambda = 1.0;
            Rng rng(51);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> f(4);
                for (double& v : f) v = rng.uniform(-1.0, 1.0);
                const auto g = objective_gradient(sq.alpha, f, sq.slice.edges, 4, pc);
                const double h = 1e-6;
                for (int i = 0; i < 4; ++i) {
                    std::vector<double> fp = f, fm = f;
                    fp[i] += h;
                    fm[i] -= h;
                    const double fd = (objective(sq.alpha, fp, sq.slice.edges, pc) -
                                       objective(sq.alpha, fm, sq.slice.edges, pc)) /
                                      (2.0 * h);
                    if (std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])) > 1e-5)
                        failed.push_back("gradient");
                }
            }
        }
        { // pca orthonormality
            Rng rng(52);
            PointCloud cloud(20, 5);
            for (double& v : cloud.data) v = rng.uniform(-1.0, 1.0);
            const PcaResult res = pca(cloud, 3);
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b) {
                    double dot = 0.0;
                    for (std::size_t j = 0; j < 5; ++j)
                        dot += res.components[a][j] * res.components[b][j];
                    if (std::abs(dot - (a == b ? 1.0 : 0.0)) > 1e-10)
                        failed.push_back("pca-orthonormal");
                }
        }
        std::sort(failed.begin(), failed.end());
        failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
        std::string detail = failed.empty() ? "all invariants hold" : "failed:";
        for (const auto& f : failed) detail += " " + f;
        return std::make_pair(failed.empty(), detail);
    });

    // 10. volume-uniform sampling: disc radial law and concentration at the
    //     pinch of the cyclide
    run(10, [] {
        const Rectangle dom{0.0, 1.0, 0.0, kTwoPi};
        auto map = [](double r, double t) {
            return std::vector<double>{r * std::cos(t), r * std::sin(t)};
        };
        auto area = [](double r, double) { return r; };
        const PointCloud disc = rejection_sample(dom, map, area, 1.0, 50000, 7);
        std::vector<double> radii;
        for (std::size_t i = 0; i < disc.n; ++i)
            radii.push_back(std::hypot(disc.at(i, 0), disc.at(i, 1)));
        std::sort(radii.begin(), radii.end());
        double ks = 0.0;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double model = radii[i] * radii[i];
            const double lo = static_cast<double>(i) / radii.size();
            const double hi = static_cast<double>(i + 1) / radii.size();
            ks = std::max({ks, std::abs(model - lo), std::abs(model - hi)});
        }
        if (ks >= 0.02) {
            std::ostringstream os;
            os << "disc KS " << ks;
            return std::make_pair(false, os.str());
        }

        const PointCloud dupin =
            generate_dupin(2.0, 1.5, 300, SamplingScheme::volume_uniform, 7);
        const DistanceMatrix dm = distance_matrix(dupin);
        const Filtration filt = build_rips(dm, enclosing_radius(dm), 2);
        const Barcode bc = persistent_cohomology(filt, 23);
        const auto sel = significant_cocycles(bc, 0.0, 1);
        if (sel.empty()) return std::make_pair(false, std::string("no 1-class on the cyclide"));
        const SmoothedRun sr = smooth_class(filt, bc, sel[0], 0.0);
        std::size_t near_pinch = 0, nonconstant = 0;
        for (std::size_t e = 0; e < sr.alpha_bar.size(); ++e) {
            if (std::abs(sr.alpha_bar[e]) < 1e-4) continue;
            ++nonconstant;
            const int u = sr.slice.edges[e].u, v = sr.slice.edges[e].v;
            double mid[3];
            for (int j = 0; j < 3; ++j) mid[j] = 0.5 * (dupin.at(u, j) + dupin.at(v, j));
            const double d = std::sqrt((mid[0] - 3.0) * (mid[0] - 3.0) + mid[1] * mid[1] +
                                       mid[2] * mid[2]);
            if (d < 0.5) ++near_pinch;
        }
        std::ostringstream os;
        os << "disc KS " << ks << "; " << near_pinch << " of " << nonconstant
           << " non-constant edges near the pinch";
        return std::make_pair(near_pinch > 0, os.str());
    });

    // 11. pipeline re-execution is hash-identical
    run(11, [] {
        namespace fs = std::filesystem;
        PipelineConfig cfg;
        cfg.dataset = "figure8";
        cfg.n = 50;
        cfg.tau = 0.5;
        cfg.lambdas = {0.0, 1.0};
        cfg.outdir = "acceptance_run_a";
        const auto a = run_pipeline(cfg);
        cfg.outdir = "acceptance_run_b";
        const auto b = run_pipeline(cfg);
        fs::remove_all("acceptance_run_a");
        fs::remove_all("acceptance_run_b");
        const bool ok = a.manifest["hashes"] == b.manifest["hashes"];
        return std::make_pair(ok, std::string(ok ? "identical output hashes"
                                                 : "hash mismatch between runs"));
    });

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all 11 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
