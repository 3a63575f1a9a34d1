#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "paracone/json_io.hpp"
#include "paracone/ordered_space.hpp"

using namespace paracone;
using Catch::Approx;

namespace {

ConeDescriptor wedge(double slope) {
    // {(u, v) : v >= slope |u|}
    return ConeDescriptor(2, {Vec{-slope, 1.0}, Vec{slope, 1.0}});
}

ConeDescriptor half_plane() {
    return ConeDescriptor(2, {Vec{0.0, 1.0}}, std::vector<Vec>{Vec{1.0, 0.0}, Vec{-1.0, 0.0}, Vec{0.0, 1.0}});
}

ConeDescriptor half_line() {
    // span+{(1, 0)} written as u >= 0, v >= 0, -v >= 0.
    return ConeDescriptor(2, {Vec{1.0, 0.0}, Vec{0.0, 1.0}, Vec{0.0, -1.0}}, std::vector<Vec>{Vec{1.0, 0.0}});
}

// Dense-grid oracle for the normality constant of a 2-D cone with generators
// g1, g2: sup ||x|| / ||x + z|| over x, z on a polar grid of cone members.
// z = 0 is feasible, so the value is at least 1.
double normality_oracle(const Vec& g1, const Vec& g2, NormChoice kind) {
    const int n = 100;
    double best = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        const Vec x = (1.0 - s) * g1 + s * g2;
        for (int j = 0; j <= n; ++j) {
            const double r = static_cast<double>(j) / n;
            const Vec zdir = (1.0 - r) * g1 + r * g2;
            for (int k = 0; k <= 300; ++k) {
                const Vec y = x + (k / 100.0) * zdir;
                best = std::max(best, norm(x, kind) / norm(y, kind));
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("membership on the orthant", "[ordered_space]") {
    const auto k = ConeDescriptor::orthant(2);
    CHECK(member(Vec{1.0, 2.0}, k).member);
    const auto out = member(Vec{1.0, -1.0}, k);
    CHECK_FALSE(out.member);
    CHECK(out.slack == -1.0);
    const auto apex = member(Vec{0.0, 0.0}, k);
    CHECK(apex.member);
    CHECK(apex.slack == 0.0);
    CHECK(member(Vec{0.0, 0.0}, wedge(2.0)).member);
}

TEST_CASE("membership tolerance is relative to the vector size", "[ordered_space]") {
    const auto k = ConeDescriptor::orthant(1);
    CHECK(k.contains(Vec{-5e-10}));
    CHECK_FALSE(k.contains(Vec{-2e-9}));
    CHECK(ConeDescriptor::orthant(2).contains(Vec{1e6, -1e-4}));
}

TEST_CASE("leq examples", "[ordered_space]") {
    const auto k = ConeDescriptor::orthant(2);
    CHECK(leq(Vec{0.0, 0.0}, Vec{1.0, 2.0}, k));
    CHECK(leq(Vec{0.3, -4.0}, Vec{0.3, -4.0}, k));
    CHECK_FALSE(leq(Vec{2.0, 0.0}, Vec{1.0, 0.0}, k));
    CHECK_THROWS_AS(leq(Vec{1.0}, Vec{1.0, 2.0}, k), InputError);
}

TEST_CASE("descriptor validation", "[ordered_space]") {
    CHECK_THROWS_AS(ConeDescriptor(0, {}), InputError);
    CHECK_THROWS_AS(ConeDescriptor(2, {Vec{1.0}}), InputError);
    CHECK_THROWS_AS(ConeDescriptor(1, {Vec{std::numeric_limits<double>::infinity()}}), InputError);
    CHECK_THROWS_AS(ConeDescriptor(1, {Vec{1.0}}, std::vector<Vec>{Vec{-1.0}}), InputError);
    CHECK_THROWS_AS(ConeDescriptor(1, {Vec{1.0}}, std::nullopt, -1.0), InputError);
    CHECK_THROWS_AS(ConeDescriptor::orthant(2).slack(Vec{1.0}), InputError);
}

TEST_CASE("derived generators of simplicial cones", "[ordered_space]") {
    const auto gens = wedge(1.0).generators();
    REQUIRE(gens);
    REQUIRE(gens->size() == 2);
    for (const Vec& g : *gens) {
        CHECK(wedge(1.0).contains(g));
        // Each generator lies on exactly one boundary ray.
        CHECK(std::abs(g[1]) == Approx(std::abs(g[0])));
    }
    const ConeDescriptor whole(2, {});
    REQUIRE(whole.generators());
    CHECK(whole.generators()->size() == 4);
    CHECK_FALSE(ConeDescriptor(2, {Vec{0.0, 1.0}}).generators());
    CHECK_THROWS_AS(ConeDescriptor(2, {Vec{0.0, 1.0}}).require_generators("test"), UnsupportedRepresentation);
}

TEST_CASE("dual cone examples", "[ordered_space]") {
    const auto d = dual_cone(ConeDescriptor::orthant(2));
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec y = gen::vec(rng, 2);
        CHECK(d.contains(y) == ConeDescriptor::orthant(2).contains(y));
    }

    // The ice-cream wedge v >= |u| is self-dual.
    const auto w = wedge(1.0);
    const auto wd = dual_cone(w);
    for (int i = 0; i < 200; ++i) {
        const Vec y = gen::vec(rng, 2);
        CHECK(wd.contains(y) == w.contains(y));
    }

    // Dual of the half-line span+{(1, 0)} is the half-plane u >= 0.
    const auto hd = dual_cone(half_line());
    CHECK(hd.contains(Vec{0.5, -7.0}));
    CHECK(hd.contains(Vec{0.0, 3.0}));
    CHECK_FALSE(hd.contains(Vec{-0.1, 0.0}));

    CHECK_THROWS_AS(dual_cone(ConeDescriptor(3, {Vec{1.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}})), UnsupportedRepresentation);
}

TEST_CASE("dual cone agrees with a sampled definition", "[ordered_space][property]") {
    // y* in K*  iff  y* . k >= 0 for every sampled k in K.
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = gen::simplicial_cone(rng, 2 + trial % 2);
        const auto d = dual_cone(k);
        const auto gens = *k.generators();
        const auto dual_gens = *d.generators();
        for (const Vec& g : gens)
            for (const Vec& a : dual_gens) CHECK(dot(g, a) >= -1e-9 * (1.0 + norm(g) * norm(a)));
        for (int i = 0; i < 50; ++i) {
            const Vec ys = gen::vec(rng, k.dim());
            bool sampled = true;
            for (int s = 0; s < 200 && sampled; ++s) {
                const Vec m = gen::member(rng, gens, k.dim());
                sampled = dot(ys, m) >= -1e-9 * (1.0 + norm(m));
            }
            // Sampling can only miss a violation, never invent one.
            if (d.contains(ys)) CHECK(sampled);
        }
    }
}

TEST_CASE("pointedness", "[ordered_space]") {
    CHECK(is_pointed(ConeDescriptor::orthant(2)));
    CHECK_FALSE(is_pointed(ConeDescriptor(2, {})));
    CHECK_FALSE(is_pointed(half_plane()));
    CHECK(half_plane().contains(Vec{1.0, 0.0}));
    CHECK(half_plane().contains(Vec{-1.0, 0.0}));
    CHECK(is_pointed(half_line()));
    CHECK(is_pointed(wedge(2.0)));
}

TEST_CASE("normality constant of the orthant", "[ordered_space]") {
    const auto k = ConeDescriptor::orthant(2);
    CHECK(estimate_normality_constant(k, NormChoice::sup, 20000, 1) == Approx(1.0).margin(1e-12));
    const double e = estimate_normality_constant(k, NormChoice::euclidean, 20000, 1);
    CHECK(e <= 1.0);
    CHECK(e >= 0.99);
    CHECK(normality_oracle(Vec{1.0, 0.0}, Vec{0.0, 1.0}, NormChoice::euclidean) == Approx(1.0).margin(1e-12));
}

TEST_CASE("normality constant against a polar-grid oracle", "[ordered_space]") {
    // v >= 2|u|: generators at an acute angle, oracle value 1.
    const auto w = wedge(2.0);
    const auto gens = *w.generators();
    const double oracle_w = normality_oracle(gens[0], gens[1], NormChoice::euclidean);
    CHECK(oracle_w == Approx(1.0).margin(1e-12));
    const double est_w = estimate_normality_constant(w, NormChoice::euclidean, 20000, 5);
    CHECK(est_w <= oracle_w + 1e-12);
    CHECK(est_w >= 0.99);

    // Generators (1, 0.5), (-1, 0.5) meet at an obtuse angle (cos = -0.6):
    // the supremum is 1 / sin(theta) = 1.25.
    const ConeDescriptor obtuse(2, {Vec{0.5, 1.0}, Vec{-0.5, 1.0}}, std::vector<Vec>{Vec{1.0, 0.5}, Vec{-1.0, 0.5}});
    const double oracle_o = normality_oracle(Vec{1.0, 0.5}, Vec{-1.0, 0.5}, NormChoice::euclidean);
    CHECK(oracle_o == Approx(1.25).margin(2e-3));
    const double est_o = estimate_normality_constant(obtuse, NormChoice::euclidean, 100000, 5);
    CHECK(est_o <= 1.25 + 1e-12);
    CHECK(est_o >= 1.15);
}

TEST_CASE("normality constant is a running maximum", "[ordered_space][property]") {
    const auto k = ConeDescriptor::orthant(3);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        double prev = 0.0;
        for (std::size_t n = 1; n <= 4096; n *= 2) {
            const double v = estimate_normality_constant(k, NormChoice::euclidean, n, seed);
            CHECK(v >= prev);
            prev = v;
        }
        CHECK(estimate_normality_constant(k, NormChoice::euclidean, 500, seed) ==
              estimate_normality_constant(k, NormChoice::euclidean, 500, seed));
    }
}

TEST_CASE("normality constant errors", "[ordered_space]") {
    CHECK_THROWS_AS(estimate_normality_constant(half_plane(), NormChoice::euclidean, 10, 1), ParameterError);
    CHECK_THROWS_AS(estimate_normality_constant(ConeDescriptor::orthant(2), NormChoice::euclidean, 0, 1), ParameterError);
}

TEST_CASE("well-based witness examples", "[ordered_space]") {
    const auto w = well_based_witness(ConeDescriptor::orthant(2), NormChoice::sup);
    REQUIRE(w);
    CHECK(dot(*w, Vec{1.0, 0.0}) >= 1.0);
    CHECK(dot(*w, Vec{0.0, 1.0}) >= 1.0);
    CHECK_FALSE(well_based_witness(half_plane(), NormChoice::euclidean));

    const ConeDescriptor ray(2, {Vec{1.0, -1.0}, Vec{-1.0, 1.0}, Vec{1.0, 1.0}}, std::vector<Vec>{Vec{1.0, 1.0}});
    const auto rw = well_based_witness(ray, NormChoice::euclidean);
    REQUIRE(rw);
    CHECK(dot(*rw, Vec{1.0, 1.0}) >= std::sqrt(2.0));
}

TEST_CASE("well-based witness dominates the norm on random members", "[ordered_space][property]") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = gen::simplicial_cone(rng, 2 + trial % 2);
        for (NormChoice kind : {NormChoice::euclidean, NormChoice::sup}) {
            const auto w = well_based_witness(k, kind);
            REQUIRE(w);
            const auto gens = *k.generators();
            for (int i = 0; i < 1000; ++i) {
                const Vec m = gen::member(rng, gens, k.dim());
                CHECK(dot(*w, m) >= norm(m, kind) - 1e-9 * (1.0 + norm(m, kind)));
            }
        }
    }
}

TEST_CASE("membership is positively homogeneous", "[ordered_space][property]") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const auto k = gen::simplicial_cone(rng, 2 + trial % 2);
        for (int i = 0; i < 50; ++i) {
            const Vec y = gen::vec(rng, k.dim());
            if (!k.contains(y)) continue;
            for (double s : {0.0, 1e-3, 0.5, 7.0, 1e4}) CHECK(k.contains(s * y));
        }
    }
}

TEST_CASE("leq is a partial order on pointed cones", "[ordered_space][property]") {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = gen::simplicial_cone(rng, 2 + trial % 2);
        const auto gens = *k.generators();
        for (int i = 0; i < 50; ++i) {
            const Vec x = gen::vec(rng, k.dim());
            CHECK(leq(x, x, k));
            const Vec y = x + gen::member(rng, gens, k.dim());
            const Vec z = y + gen::member(rng, gens, k.dim());
            REQUIRE(leq(x, y, k));
            REQUIRE(leq(y, z, k));
            CHECK(leq(x, z, k));
            if (leq(y, x, k)) CHECK(norm(x - y) <= 1e-6);
        }
    }
}

TEST_CASE("bipolar: the dual of the dual has the original members", "[ordered_space][property]") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = gen::simplicial_cone(rng, 2 + trial % 2);
        const auto kk = dual_cone(dual_cone(k));
        for (int i = 0; i < 200; ++i) {
            const Vec y = gen::vec(rng, k.dim());
            if (std::abs(k.slack(y)) < 1e-6) continue;
            CHECK(kk.contains(y) == k.contains(y));
        }
    }
}

TEST_CASE("cone JSON round trip", "[ordered_space][json]") {
    const auto w = wedge(2.0);
    const auto back = cone_from_json(to_json(w));
    CHECK(back.dim() == 2);
    CHECK(back.facet_normals() == w.facet_normals());
    const json doc = json::parse(R"({"dim": 2, "facet_normals": [[1, 0], [0, 1]], "generators": [[1, 0], [0, 1]], "membership_tol": 1e-6})");
    const auto k = cone_from_json(doc);
    CHECK(k.membership_tol() == 1e-6);
    CHECK(k.stored_generators());
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"facet_normals": []})")), InputError);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"dim": 2, "facet_normals": [[1, "a"]]})")), InputError);
    CHECK_THROWS_AS(load_cone("/nonexistent/cone.json"), LookupError);
}
