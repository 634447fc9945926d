#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hecke/classifier.hpp"
#include "oracles.hpp"

#include <fstream>
#include <random>

using namespace hecke;

TEST_CASE("rectangle weight conditions") {
    auto v1 = rectangle_obstruction({1, 0, 0, 0});
    CHECK(!v1.holds_first);
    CHECK(!v1.holds_second);
    auto v2 = rectangle_obstruction({0, 1, 1, 0});
    CHECK(v2.holds_first);
    CHECK(!v2.holds_second);
    auto v3 = rectangle_obstruction({1, 1, 0, 0});
    CHECK(!v3.holds_first);
    CHECK(!v3.holds_second);
    auto v4 = rectangle_obstruction({2, 0, 0, 1});
    CHECK(!v4.holds_first);
    CHECK(v4.holds_second); // (0+0-2-1)/2 <= -1 with m0, m3 >= 1
    auto v5 = rectangle_obstruction({1, 0, 0, 1});
    CHECK(v5.holds_second);
    CHECK_THROWS_AS(rectangle_obstruction({-1, 0, 0, 0}), domain_inconsistency);
}

TEST_CASE("hexagonal torus: one non-even family, no even family, every k") {
    for (int k = 1; k <= 3; ++k) {
        auto rep = classify_torus(std::exp(iu * pi / 3.0), k, NumericConfig{}, Exec::Serial);
        CHECK(rep.noneven.exists);
        CHECK(torus_dist(rep.noneven.witness_r, rep.noneven.witness_s, 1.0 / 3.0, 1.0 / 3.0) < 1e-7);
        CHECK(!rep.even.exists);
        CHECK(!rep.inconclusive());
    }
}

TEST_CASE("rectangle tori: nothing for k = 1, 2; the k = 3 window in b") {
    NumericConfig cfg;
    for (double b : {0.7, 1.0, 1.8}) {
        for (int k = 1; k <= 2; ++k) {
            auto rep = classify_torus(cplx(0.0, b), k, cfg, Exec::Serial);
            CHECK(!rep.even.exists);
            CHECK(!rep.noneven.exists);
            CHECK(!rep.inconclusive());
        }
        auto rep3 = classify_torus(cplx(0.0, b), 3, cfg, Exec::Serial);
        CHECK(!rep3.noneven.exists);
    }
    const double b0 = compute_b0(cfg);
    // Existence window (0, 1/b0) union (b0, infinity) for the even family.
    CHECK(classify_torus(cplx(0.0, b0 + 0.05), 3, cfg, Exec::Serial).even.exists);
    CHECK(!classify_torus(cplx(0.0, b0 - 0.05), 3, cfg, Exec::Serial).even.exists);
    CHECK(classify_torus(cplx(0.0, 1.0 / b0 - 0.03), 3, cfg, Exec::Serial).even.exists);
    CHECK(!classify_torus(cplx(0.0, 1.0 / b0 + 0.03), 3, cfg, Exec::Serial).even.exists);
}

TEST_CASE("even verdict consistency: k = 1 at tau matches k = 2 at 4 tau") {
    // Both reduce to membership of the same modulus 2 tau.
    std::mt19937 rng(101);
    NumericConfig cfg;
    for (int i = 0; i < 20; ++i) {
        const cplx tau = oracle::random_tau(rng, 0.3, 1.2);
        auto r1 = classify_torus(tau, 1, cfg, Exec::Serial);
        auto r2 = classify_torus(4.0 * tau, 2, cfg, Exec::Serial);
        if (r1.even.inconclusive || r2.even.inconclusive || r1.even.boundary || r2.even.boundary)
            continue;
        CHECK(r1.even.exists == r2.even.exists);
    }
}

TEST_CASE("witness transport lands on a zero in the original frame") {
    NumericConfig cfg;
    // The image of the hexagonal point under (1, 0; -2, 1): far outside F0,
    // so the classifier must reduce and carry the witness back.
    const cplx rho = std::exp(iu * pi / 3.0);
    const cplx tau = rho / (-2.0 * rho + 1.0);
    REQUIRE(tau.imag() > 0.0);
    auto rep = classify_torus(tau, 1, cfg, Exec::Serial);
    REQUIRE(rep.noneven.exists);
    LatticeContext ctx{Tau(tau), cfg};
    CHECK(std::abs(hecke_Z(rep.noneven.original_r, rep.noneven.original_s, ctx)) < 1e-7);
    CHECK(!rep.noneven.inconclusive);

    // An off-lattice modulus outside F0 with no nontrivial zeros.
    auto none = classify_torus(cplx(2.31, 0.44), 2, cfg, Exec::Serial);
    CHECK(!none.noneven.exists);
    CHECK(!none.noneven.inconclusive);
}

TEST_CASE("pipeline: full verification chain on solvable data") {
    std::mt19937 rng(102);
    NumericConfig cfg;
    int done = 0;
    while (done < 2) {
        const double r = oracle::uniform(rng, 0.02, 0.98), s = oracle::uniform(rng, 0.02, 0.98);
        if (half_integer_pair(r, s, 2e-2)) continue;
        const int k = 1 + int(rng() % 3);
        PipelineRecord rec = full_pipeline(r, s, k, cfg);
        REQUIRE(rec.ok);
        if (!rec.zero_exists) {
            CHECK(rec.none_grid_min > 1e-3);
            continue;
        }
        CHECK(!rec.even_branch); // impossible for real pairs: no common zero
        CHECK(rec.shifted_residual < 1e-9);
        CHECK(rec.companion_abs > 1e-5);
        CHECK(rec.rs_roundtrip < 1e-8);
        CHECK(rec.kappa_residual < 1e-9);
        CHECK(rec.a_sum_residual < 1e-8);
        CHECK(rec.constraint_residual < 1e-8);
        CHECK(rec.trace_residual < 1e-6);
        CHECK(rec.commutator < 1e-6);
        CHECK(rec.unitary);
        ++done;
    }
}

TEST_CASE("pipeline: determinate no-zero outcome") {
    PipelineRecord rec = full_pipeline(0.2, 0.1, 1, NumericConfig{});
    CHECK(rec.ok);
    CHECK(!rec.zero_exists);
    CHECK(rec.none_grid_min > 1e-3);
    CHECK_THROWS_AS(full_pipeline(0.5, 0.0, 1, NumericConfig{}), domain_inconsistency);
}

TEST_CASE("classify rejects a modulus in the lower half plane") {
    CHECK_THROWS_AS(classify_torus(cplx(0.3, -1.0), 1, NumericConfig{}), domain_inconsistency);
}

TEST_CASE("tolerance file round trip") {
    const std::string path = "/tmp/heckeatlas_test_config.txt";
    {
        std::ofstream out(path);
        out << "# tolerances\n";
        out << "series_tol = 1e-16\n";
        out << "newton_tol = 1e-11\n";
        out << "ode_rtol = 1e-9   # integrator\n";
        out << "zero_tol = 1e-7\n";
        out << "pole_floor = 1e-6\n";
    }
    NumericConfig cfg = load_config(path);
    CHECK(cfg.series_tol == 1e-16);
    CHECK(cfg.newton_tol == 1e-11);
    CHECK(cfg.ode_rtol == 1e-9);
    CHECK(cfg.zero_tol == 1e-7);
    CHECK(cfg.pole_floor == 1e-6);
    {
        std::ofstream out(path);
        out << "no_such_key = 1\n";
    }
    CHECK_THROWS(load_config(path));
}
