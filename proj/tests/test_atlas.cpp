#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hecke/zero_atlas.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace hecke;

namespace {
bool has(const std::vector<Region>& v, Region r) {
    return std::find(v.begin(), v.end(), r) != v.end();
}
}

TEST_CASE("region labels for the torsion square") {
    CHECK(has(region_of(0.3, 0.3), Region::Delta0));
    CHECK(has(region_of(0.1, 0.1), Region::Delta3));
    CHECK(has(region_of(0.8, 0.3), Region::Delta1));
    CHECK(has(region_of(0.8, 0.15), Region::Delta2));
    CHECK(has(region_of(0.5, 0.0), Region::HalfLatticePoint));
    CHECK(has(region_of(1.5, 2.0), Region::HalfLatticePoint));
    CHECK(has(region_of(0.45, 0.4), Region::BoxM1));
    CHECK(!has(region_of(0.3, 0.3), Region::BoxM1));
    CHECK(has(region_of(0.3, 0.45), Region::BoxM2));
    CHECK(has(region_of(0.2, 0.3), Region::BoxM3));
    CHECK(has(region_of(0.3, 0.3), Region::Box));
    CHECK(!has(region_of(0.8, 0.3), Region::Box));
}

TEST_CASE("box representative respects the sign of Z") {
    std::mt19937 rng(61);
    LatticeContext ctx{Tau(cplx(0.2, 1.2))};
    for (int i = 0; i < 20; ++i) {
        const double r = oracle::uniform(rng, -2.0, 2.0), s = oracle::uniform(rng, -2.0, 2.0);
        if (half_integer_pair(mod1(r), mod1(s), 1e-3)) continue;
        double r0, s0;
        int sgn;
        box_representative(r, s, &r0, &s0, &sgn);
        CHECK(r0 <= 0.5 + 1e-12);
        const cplx a = hecke_Z(r, s, ctx);
        const cplx b = double(sgn) * hecke_Z(r0, s0, ctx);
        CHECK(std::abs(a - b) < 1e-11 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("the unique zero for (1/3, 1/3) is the hexagonal point") {
    auto res = find_tau_zero(1.0 / 3.0, 1.0 / 3.0);
    REQUIRE(res.zero.has_value());
    CHECK(std::abs(res.zero->tau_star - std::exp(iu * pi / 3.0)) < 1e-8);
    CHECK(res.zero->residual < 1e-10);
    CHECK(std::abs(res.zero->derivative_at_zero) > 1e-3); // simple zero
}

TEST_CASE("zero geometry on the three symmetry lines") {
    // 2r + s = 1 maps onto Re tau = 1/2.
    auto a = find_tau_zero(0.35, 0.30);
    REQUIRE(a.zero.has_value());
    CHECK(std::abs(a.zero->tau_star.real() - 0.5) < 1e-8);
    // r + 2s = 1 maps onto |tau - 1| = 1.
    auto b = find_tau_zero(0.30, 0.35);
    REQUIRE(b.zero.has_value());
    CHECK(std::abs(std::abs(b.zero->tau_star - 1.0) - 1.0) < 1e-8);
    // r = s maps onto |tau| = 1.
    auto c = find_tau_zero(0.35, 0.35);
    REQUIRE(c.zero.has_value());
    CHECK(std::abs(std::abs(c.zero->tau_star) - 1.0) < 1e-8);
}

TEST_CASE("outside the zero triangle the grid certifies absence") {
    auto res = find_tau_zero(0.1, 0.1);
    CHECK(!res.zero.has_value());
    CHECK(res.none.grid_min > 1e-3);
    CHECK(!res.none.inconclusive);
    CHECK_THROWS_AS(find_tau_zero(0.5, 0.0), domain_inconsistency);
}

TEST_CASE("zero map is injective on samples") {
    std::mt19937 rng(62);
    std::vector<cplx> zeros;
    while (zeros.size() < 30) {
        const double r = oracle::uniform(rng, 0.05, 0.45), s = oracle::uniform(rng, 0.05, 0.45);
        if (r + s < 0.55) continue;
        auto res = find_tau_zero(r, s);
        REQUIRE(res.zero.has_value());
        zeros.push_back(res.zero->tau_star);
    }
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t j = i + 1; j < zeros.size(); ++j)
            CHECK(std::abs(zeros[i] - zeros[j]) > 1e-6);
}

TEST_CASE("companion zeros: factor-wise search over the companion boxes") {
    NumericConfig cfg;
    // (0.45, 0.4) lies in the k=1 companion box; exactly one of the two
    // Hecke factors has its pair in the zero triangle, so exactly one zero
    // exists in (1/2) F0 (the other factor's pair reduces into Delta2).
    auto z1 = tau_zero_premodular(0.45, 0.4, KIndex(1), cfg);
    REQUIRE(z1.size() >= 1);
    for (const auto& pz : z1) {
        CHECK(pz.companion_residual < 1e-9);
        CHECK(in_F0(2.0 * pz.zero.tau_star, 1e-9)); // lambda_1 F0 - beta_1
        CHECK(pz.zero.residual < 1e-10);
    }
    for (size_t i = 0; i < z1.size(); ++i)
        for (size_t j = i + 1; j < z1.size(); ++j)
            CHECK(std::abs(z1[i].zero.tau_star - z1[j].zero.tau_star) > 1e-6);

    // Outside the companion box: no zeros.
    CHECK(tau_zero_premodular(0.3, 0.3, KIndex(1), cfg).empty());

    // k = 2 and k = 3 variants land in their rescaled domains.
    auto z2 = tau_zero_premodular(0.3, 0.45, KIndex(2), cfg);
    REQUIRE(z2.size() >= 1);
    for (const auto& pz : z2) {
        CHECK(pz.companion_residual < 1e-9);
        CHECK(in_F0(0.5 * pz.zero.tau_star, 1e-9));
    }
    auto z3 = tau_zero_premodular(0.2, 0.3, KIndex(3), cfg);
    REQUIRE(z3.size() >= 1);
    for (const auto& pz : z3) {
        CHECK(pz.companion_residual < 1e-9);
        CHECK(in_F0(0.5 * (1.0 + pz.zero.tau_star), 1e-9));
    }
}

TEST_CASE("cusp limits along the triangle edges") {
    CHECK(asymptotic_check(0.3, 0.5, Delta0Edge::SHalf) == Cusp::Infinity);
    CHECK(asymptotic_check(0.5, 0.3, Delta0Edge::RHalf) == Cusp::Zero);
    CHECK(asymptotic_check(0.2, 0.3, Delta0Edge::Diagonal) == Cusp::One);
}

TEST_CASE("no common zero of the shifted form and the companion form (samples)") {
    std::mt19937 rng(63);
    NumericConfig cfg;
    int found = 0;
    while (found < 30) {
        const double r = oracle::uniform(rng, 0.02, 0.98), s = oracle::uniform(rng, 0.02, 0.98);
        if (half_integer_pair(r, s, 1e-2)) continue;
        const int k = 1 + int(rng() % 3);
        double rk, sk;
        KIndex(k).shift(r, s, &rk, &sk);
        double r0, s0;
        int sgn;
        box_representative(rk, sk, &r0, &s0, &sgn);
        if (!in_region(r0, s0, Region::Delta0)) continue;
        auto res = find_tau_zero(r0, s0, cfg);
        REQUIRE(res.zero.has_value());
        LatticeContext ctx{Tau(res.zero->tau_star), cfg};
        CHECK(std::abs(premodular_Zmk(cplx(r), cplx(s), ctx, KIndex(k))) > 1e-5);
        ++found;
    }
}

TEST_CASE("separation survives modular transport of the zero") {
    std::mt19937 rng(64);
    NumericConfig cfg;
    int found = 0;
    while (found < 12) {
        const double r = oracle::uniform(rng, 0.02, 0.98), s = oracle::uniform(rng, 0.02, 0.98);
        if (half_integer_pair(r, s, 1e-2)) continue;
        const int k = 1 + int(rng() % 3);
        double rk, sk;
        KIndex(k).shift(r, s, &rk, &sk);
        // Send the shifted pair through a random gamma, find the zero of the
        // transformed pair in F0, and pull the zero back: a zero of
        // Z(r_k, s_k, .) outside F0.
        GammaMatrix g(0, -1, 1, 0);
        if (rng() % 2) g = GammaMatrix(1, 1, 0, 1) * g;
        const ModularImage fwd = modular_transform(cplx(rk), cplx(sk), Tau(cplx(0.0, 1.0)), g);
        double r0, s0;
        int sgn;
        box_representative(fwd.r.real(), fwd.s.real(), &r0, &s0, &sgn);
        if (half_integer_pair(r0, s0, 1e-2) || !in_region(r0, s0, Region::Delta0)) continue;
        auto res = find_tau_zero(r0, s0, cfg);
        REQUIRE(res.zero.has_value());
        const cplx tau_back = g.inverse().apply(res.zero->tau_star);
        LatticeContext ctx{Tau(tau_back), cfg};
        CHECK(std::abs(hecke_Z(rk, sk, ctx)) < 1e-7);
        CHECK(std::abs(premodular_Zmk(cplx(r), cplx(s), ctx, KIndex(k))) > 1e-5);
        ++found;
    }
}

TEST_CASE("b0 is bracketed by 1 and sqrt(3)") {
    const double b0 = compute_b0(NumericConfig{}, 1e-8);
    CHECK(b0 > 1.0);
    CHECK(b0 < std::sqrt(3.0));
}

TEST_CASE("degeneracy curves: symmetry and cusp endpoints") {
    NumericConfig cfg;
    std::vector<std::string> excluded;
    auto c1 = trace_degenerate_curve(1, 41, cfg, &excluded, Exec::Serial);
    REQUIRE(c1.size() >= 35);
    // Mirror symmetry about Re tau = 1/2: compare x and 1-x samples.
    for (const auto& t : c1) {
        const double xm = 1.0 - t.real();
        for (const auto& u : c1)
            if (std::abs(u.real() - xm) < 1e-9) CHECK(std::abs(u.imag() - t.imag()) < 1e-6);
    }
    // C_1 joins the cusps 0 and 1: heights fall off at both ends.
    CHECK(c1.front().imag() < 0.35);
    CHECK(c1.back().imag() < 0.35);

    // The omega_2/2 locus runs between the cusps 1 and infinity (it hugs
    // Re = 1/2 from the right at large heights); the omega_3/2 locus is its
    // mirror and runs between 0 and infinity.
    auto c2 = trace_degenerate_curve(2, 25, cfg, nullptr, Exec::Serial);
    REQUIRE(c2.size() >= 18);
    CHECK(std::abs(c2.front() - 1.0) < std::abs(c2[c2.size() / 2] - 1.0)); // trends to cusp 1
    CHECK(c2.front().imag() < 0.25);
    CHECK(c2.back().imag() > 2.0);
    CHECK(std::abs(c2.back().real() - 0.5) < 0.05);

    auto c3 = trace_degenerate_curve(3, 25, cfg, nullptr, Exec::Serial);
    REQUIRE(c3.size() >= 18);
    CHECK(std::abs(c3.front()) < std::abs(c3[c3.size() / 2])); // trends to cusp 0
    CHECK(c3.front().imag() < 0.25);
    CHECK(c3.back().imag() > 2.0);
    CHECK(std::abs(c3.back().real() - 0.5) < 0.05);
}

TEST_CASE("membership: hexagonal inside with the known witness, boundary excluded") {
    NumericConfig cfg;
    auto m = lambda_membership(std::exp(iu * pi / 3.0), cfg, Exec::Serial);
    CHECK(m.inside);
    CHECK(torus_dist(m.witness_r, m.witness_s, 1.0 / 3.0, 1.0 / 3.0) < 1e-8);
    CHECK(m.residual < 1e-10);

    for (double b : {0.7, 1.0, 1.9}) {
        auto mb = lambda_membership(cplx(0.0, b), cfg, Exec::Serial);
        CHECK(!mb.inside);
    }
    auto edge = lambda_membership(cplx(0.0, 1.33), cfg, Exec::Serial);
    CHECK(edge.boundary);
}

TEST_CASE("uniqueness of the Newton basin (sampled lightly)") {
    std::mt19937 rng(65);
    NumericConfig cfg;
    for (int i = 0; i < 4; ++i) {
        double r = oracle::uniform(rng, 0.1, 0.45), s = oracle::uniform(rng, 0.1, 0.45);
        if (r + s < 0.55) { --i; continue; }
        auto res = find_tau_zero(r, s, cfg);
        REQUIRE(res.zero.has_value());
        // Newton from a scattering of F0 seeds only ever lands on one zero.
        std::vector<cplx> hits;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                const cplx seed(0.08 + 0.14 * a, 0.25 + 0.45 * b);
                if (std::abs(seed - 0.5) < 0.5) continue;
                auto z = newton_tau_zero(r, s, seed, cfg);
                if (z && in_F0(z->tau_star, 1e-7)) hits.push_back(z->tau_star);
            }
        REQUIRE(!hits.empty());
        for (const cplx& h : hits) CHECK(std::abs(h - res.zero->tau_star) < 1e-7);
    }
}

TEST_CASE("atlas sampling writes consistent rows") {
    NumericConfig cfg;
    auto samples = sample_lambda_grid(6, cfg, Exec::Serial);
    size_t ok = 0;
    for (const auto& a : samples) {
        if (!a.ok) continue;
        ++ok;
        CHECK(a.residual < 1e-9);
        CHECK(in_F0(a.tau, 1e-7));
    }
    CHECK(ok == samples.size()); // every Delta0 node has its zero
}

TEST_CASE("companion zeros also exist above s = 1/2, outside the displayed boxes") {
    // The box predicates stop at s = 1/2, but for s in (1/2, 1) the second
    // factor's class can reach the zero triangle; the form genuinely
    // vanishes there and the factor-wise search must report it.
    NumericConfig cfg;
    const double r = 0.036, s = 0.8819;
    CHECK(!in_region(r, s, Region::BoxM2));
    auto zs = tau_zero_premodular(r, s, KIndex(2), cfg);
    REQUIRE(zs.size() == 1);
    CHECK(zs.front().factor == 2);
    CHECK(zs.front().companion_residual < 1e-9);
}
