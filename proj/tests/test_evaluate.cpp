#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "circ/evaluate.hpp"
#include "helpers.hpp"

using namespace circ;

namespace {

PointCloud line_cloud(const std::vector<double>& xs) {
    PointCloud c(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) c.at(i, 0) = xs[i];
    return c;
}

} // namespace

TEST_CASE("identity embedding gives a diagonal coranking matrix") {
    const PointCloud cloud = helpers::random_cloud(12, 3, 1);
    const CorankingMatrix Q = coranking(cloud, cloud);
    for (std::size_t i = 0; i < Q.n - 1; ++i)
        for (std::size_t j = 0; j < Q.n - 1; ++j)
            REQUIRE(Q.at(i, j) == (i == j ? Q.n : 0));

    PointCloud scaled = cloud;
    for (double& v : scaled.data) v *= 2.0;
    const CorankingMatrix Qs = coranking(cloud, scaled);
    REQUIRE(Qs.data == Q.data);
}

TEST_CASE("hand-enumerated coranking of four collinear points") {
    const PointCloud high = line_cloud({0.0, 1.0, 2.0, 4.0});
    const PointCloud low = line_cloud({4.0, 2.0, 1.0, 0.0});
    const CorankingMatrix Q = coranking(high, low);
    const std::vector<std::size_t> expected{3, 1, 0, 1, 2, 1, 0, 1, 3};
    REQUIRE(Q.data == expected);
}

TEST_CASE("coranking rows and columns sum to n") {
    const PointCloud high = helpers::random_cloud(20, 4, 2);
    const PointCloud low = helpers::random_cloud(20, 2, 3);
    const CorankingMatrix Q = coranking(high, low);
    for (std::size_t i = 0; i < Q.n - 1; ++i) {
        std::size_t row = 0, col = 0;
        for (std::size_t j = 0; j < Q.n - 1; ++j) {
            row += Q.at(i, j);
            col += Q.at(j, i);
        }
        REQUIRE(row == Q.n);
        REQUIRE(col == Q.n);
    }
    REQUIRE_THROWS_AS(coranking(high, helpers::random_cloud(19, 2, 3)), std::invalid_argument);
}

TEST_CASE("coranking is invariant under monotone distance transforms") {
    const PointCloud high = helpers::random_cloud(15, 3, 4);
    const PointCloud low = helpers::random_cloud(15, 2, 5);
    DistanceMatrix dh = distance_matrix(high);
    DistanceMatrix dl = distance_matrix(low);
    const CorankingMatrix Q = coranking(dh, dl);
    for (double& v : dh.data) v = v * v * v;
    for (double& v : dl.data) v = v * v * v;
    REQUIRE(coranking(dh, dl).data == Q.data);
}

TEST_CASE("pca recovers an axis-aligned subspace exactly") {
    PointCloud cloud(30, 4);
    Rng rng(7);
    for (std::size_t i = 0; i < 30; ++i) {
        cloud.at(i, 0) = rng.uniform(-1.0, 1.0);
        cloud.at(i, 2) = rng.uniform(-1.0, 1.0);
    }
    const PcaResult res = pca(cloud, 2);
    REQUIRE_FALSE(res.rank_deficient);
    // projection preserves all pairwise distances
    const DistanceMatrix before = distance_matrix(cloud);
    const DistanceMatrix after = distance_matrix(res.projection);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 30; ++j)
            REQUIRE(after.at(i, j) == Catch::Approx(before.at(i, j)).margin(1e-10));
}

TEST_CASE("pca components are orthonormal with the sign convention") {
    const PointCloud cloud = helpers::random_cloud(25, 5, 9);
    const PcaResult res = pca(cloud, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        double maxmag = 0.0, at_max = 0.0;
        for (std::size_t b = 0; b < 3; ++b) {
            double dot = 0.0;
            for (std::size_t j = 0; j < 5; ++j) dot += res.components[a][j] * res.components[b][j];
            REQUIRE(dot == Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-10));
        }
        for (double v : res.components[a])
            if (std::abs(v) > maxmag) {
                maxmag = std::abs(v);
                at_max = v;
            }
        REQUIRE(at_max > 0.0);
        REQUIRE(res.explained_variance[a] >= (a + 1 < 3 ? res.explained_variance[a + 1] : 0.0));
    }
}

TEST_CASE("gram trick handles more dimensions than points") {
    const PointCloud cloud = helpers::random_cloud(6, 20, 10);
    const PcaResult res = pca(cloud, 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            double dot = 0.0;
            for (std::size_t j = 0; j < 20; ++j) dot += res.components[a][j] * res.components[b][j];
            REQUIRE(dot == Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-10));
        }
}

TEST_CASE("rank-deficient requests are zero-padded and flagged") {
    PointCloud cloud(5, 3);
    for (std::size_t i = 0; i < 5; ++i) cloud.at(i, 0) = static_cast<double>(i);
    const PcaResult res = pca(cloud, 2);
    REQUIRE(res.rank_deficient);
    for (double v : res.components[1]) REQUIRE(v == 0.0);
    for (std::size_t i = 0; i < 5; ++i) REQUIRE(res.projection.at(i, 1) == 0.0);
    REQUIRE_THROWS_AS(pca(cloud, 4), std::invalid_argument);
}

TEST_CASE("isotropic gaussian has near-equal explained variances") {
    PointCloud cloud(5000, 3);
    Rng rng(77);
    for (double& v : cloud.data) v = rng.normal();
    const PcaResult res = pca(cloud, 3);
    REQUIRE(res.explained_variance[0] <= 1.2 * res.explained_variance[2]);
}

TEST_CASE("block sharpness scores cluster-preserving embeddings") {
    const PointCloud cloud = helpers::random_cloud(16, 2, 13);
    const CorankingMatrix Q = coranking(cloud, cloud);
    std::vector<int> labels(16, 0);
    for (int i = 8; i < 16; ++i) labels[i] = 1;
    REQUIRE(block_sharpness(Q, labels) == 1.0);
    REQUIRE_THROWS_AS(block_sharpness(Q, std::vector<int>(3, 0)), std::invalid_argument);

    // two well-separated clusters, embedded faithfully: score beats the
    // block-area fraction a random rank assignment would get
    PointCloud clustered(16, 2);
    Rng rng(21);
    for (int i = 0; i < 16; ++i) {
        clustered.at(i, 0) = rng.uniform(0.0, 1.0) + (i < 8 ? 0.0 : 50.0);
        clustered.at(i, 1) = rng.uniform(0.0, 1.0);
    }
    PointCloud low(16, 1);
    for (int i = 0; i < 16; ++i) low.at(i, 0) = clustered.at(i, 0);
    const CorankingMatrix Qc = coranking(clustered, low);
    const double score = block_sharpness(Qc, labels);
    const double block_area = (7.0 * 7.0 + 8.0 * 8.0) / (15.0 * 15.0);
    REQUIRE(score > block_area);
    REQUIRE(score <= 1.0);
}
