#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hecke/ode_oracle.hpp"
#include "hecke/zero_atlas.hpp"
#include "oracles.hpp"

#include <random>

using namespace hecke;

TEST_CASE("frobenius obstruction: apparent cases vanish, generic ratio is constant") {
    LatticeContext ctx{Tau(cplx(0.18, 1.31))};
    std::mt19937 rng(91);
    for (int k = 1; k <= 3; ++k) {
        const KIndex ki(k);
        // T = 0 is apparent for any E.
        for (int i = 0; i < 3; ++i) {
            const LameParams p{ki, 0.0, cplx(oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2)), false};
            auto reps = frobenius_apparent(p, ctx);
            CHECK(std::abs(reps[0].obstruction) < 1e-12);
            CHECK(std::abs(reps[1].obstruction) < 1e-12);
            CHECK(reps[0].coefficients[0] == cplx(1.0));
        }
        // Constrained E: apparent for any T.
        for (int i = 0; i < 3; ++i) {
            const cplx T(oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2));
            auto reps = frobenius_apparent(LameParams::constrain(ki, T, ctx), ctx);
            CHECK(std::abs(reps[0].obstruction) < 1e-10 * (1.0 + std::pow(std::abs(T), 3)));
        }
        // Generic (T, E): the obstruction is a fixed multiple of the cubic.
        cplx ratio0 = 0.0, ratio1 = 0.0;
        for (int i = 0; i < 10; ++i) {
            const LameParams p{ki, cplx(oracle::uniform(rng, -2, 2), oracle::uniform(rng, -1, 1)),
                               cplx(oracle::uniform(rng, -2, 2), oracle::uniform(rng, -1, 1)), false};
            const cplx alg = apparent_obstruction(p, ctx);
            if (std::abs(alg) < 1e-3) continue;
            auto reps = frobenius_apparent(p, ctx);
            const cplx r0 = reps[0].obstruction / alg, r1 = reps[1].obstruction / alg;
            if (ratio0 == cplx(0.0)) { ratio0 = r0; ratio1 = r1; }
            CHECK(std::abs(r0 - ratio0) < 1e-9);
            CHECK(std::abs(r1 - ratio1) < 1e-9);
        }
        CHECK(std::abs(ratio0 + ratio1) < 1e-9); // opposite signs at the two points
    }
}

namespace {

struct Site {
    double r, s;
    int k;
    cplx tau_star;
    cplx T;
};

Site locate_site(std::mt19937& rng, const NumericConfig& cfg) {
    for (;;) {
        const double r = oracle::uniform(rng, 0.02, 0.98), s = oracle::uniform(rng, 0.02, 0.98);
        if (half_integer_pair(r, s, 2e-2)) continue;
        const int k = 1 + int(rng() % 3);
        double rk, sk;
        KIndex(k).shift(r, s, &rk, &sk);
        double r0, s0;
        int sgn;
        box_representative(rk, sk, &r0, &s0, &sgn);
        if (!in_region(r0, s0, Region::Delta0)) continue;
        auto res = find_tau_zero(r0, s0, cfg);
        if (!res.zero) continue;
        LatticeContext ctx{Tau(res.zero->tau_star), cfg};
        auto T = solve_T_from_rs(cplx(r), cplx(s), ctx, KIndex(k), nullptr);
        if (!T) continue;
        return Site{r, s, k, res.zero->tau_star, *T};
    }
}

} // namespace

TEST_CASE("cycle monodromy at a solvable site: abelian, unimodular, predicted traces") {
    std::mt19937 rng(92);
    NumericConfig cfg;
    for (int i = 0; i < 3; ++i) {
        const Site site = locate_site(rng, cfg);
        LatticeContext ctx{Tau(site.tau_star), cfg};
        const LameParams p = LameParams::constrain(KIndex(site.k), site.T, ctx);
        CycleMonodromy m = integrate_monodromy(p, ctx);
        CHECK(m.commutator_norm < 1e-7);
        CHECK(m.det_error < 1e-9);
        CHECK(std::abs(m.t1 - 2.0 * std::cos(2.0 * pi * site.s)) < 1e-6);
        CHECK(std::abs(m.t2 - 2.0 * std::cos(2.0 * pi * site.r)) < 1e-6);
        CHECK(std::abs(m.t1.imag()) < 1e-6);
        CHECK(std::abs(m.t2.imag()) < 1e-6);
        CHECK(std::abs(m.t1.real()) <= 2.0 + 1e-6);
        CycleMonodromy out;
        CHECK(verify_unitary(p, ctx, &out));
    }
}

TEST_CASE("generic constrained parameters are not unitary") {
    NumericConfig cfg;
    LatticeContext ctx{Tau(cplx(0.18, 1.31)), cfg};
    const LameParams p = LameParams::constrain(KIndex(1), cplx(0.9, 0.7), ctx);
    CycleMonodromy m;
    CHECK(!verify_unitary(p, ctx, &m));
    CHECK(m.commutator_norm < 1e-7); // still abelian
}

TEST_CASE("non-apparent parameters are rejected") {
    LatticeContext ctx{Tau(cplx(0.18, 1.31))};
    const LameParams p{KIndex(1), cplx(0.9, 0.0), cplx(0.3, 0.2), false};
    CHECK_THROWS_AS(verify_unitary(p, ctx), domain_inconsistency);
}

TEST_CASE("the branch-point parameter reports non-reducible and fails unitarity") {
    NumericConfig cfg;
    LatticeContext ctx{Tau(cplx(0.18, 1.31)), cfg};
    const KIndex k(1);
    const cplx T = std::sqrt(12.0 * ctx.e1);
    MonodromyClass mc = classify_point(SpectralPoint{T, 0.0}, ctx, k);
    CHECK(mc.tag == MonodromyClass::NotCompletelyReducible);
    const LameParams p = LameParams::constrain(k, T, ctx);
    CHECK(!verify_unitary(p, ctx));
}

TEST_CASE("path independence and basis independence of the traces") {
    std::mt19937 rng(93);
    NumericConfig cfg;
    const Site site = locate_site(rng, cfg);
    LatticeContext ctx{Tau(site.tau_star), cfg};
    const LameParams p = LameParams::constrain(KIndex(site.k), site.T, ctx);
    const cplx z0 = 0.31 + 0.43 * ctx.tau;

    // Same cycle, different detour radii (homotopic paths).
    Mat2 Ua = integrate_transfer(plan_path(z0, z0 + 1.0, p, ctx, 0.08, 0.05), p, ctx);
    Mat2 Ub = integrate_transfer(plan_path(z0, z0 + 1.0, p, ctx, 0.10, 0.065), p, ctx);
    CHECK(std::abs(Ua.trace() - Ub.trace()) < 1e-8);

    // A dogleg through an intermediate point.
    const cplx mid = z0 + 0.5 + 0.11 * iu;
    std::vector<PathSegment> dog = plan_path(z0, mid, p, ctx);
    for (const auto& seg : plan_path(mid, z0 + 1.0, p, ctx)) dog.push_back(seg);
    Mat2 Uc = integrate_transfer(dog, p, ctx);
    CHECK(std::abs(Ua.trace() - Uc.trace()) < 1e-8);

    // Conjugated initial basis leaves the trace alone.
    const Mat2 B{cplx(1.1, 0.2), cplx(0.3, -0.4), cplx(-0.2, 0.5), cplx(0.9, 0.1)};
    Mat2 V = integrate_transfer(plan_path(z0, z0 + 1.0, p, ctx), p, ctx, B);
    Mat2 MB = (B.inverse() * V).transpose();
    CHECK(std::abs(MB.trace() - Ua.trace()) < 1e-8);
}

TEST_CASE("apparent singularities have trivial local monodromy") {
    std::mt19937 rng(94);
    NumericConfig cfg;
    const Site site = locate_site(rng, cfg);
    LatticeContext ctx{Tau(site.tau_star), cfg};
    const LameParams p = LameParams::constrain(KIndex(site.k), site.T, ctx);
    const double rad = 0.12 * std::min(1.0, std::abs(ctx.tau));
    const cplx w4 = 0.5 * ctx.half_period(site.k);
    for (const cplx center : {w4, -w4}) {
        Mat2 L = integrate_loop(p, ctx, center, rad);
        CHECK((L - Mat2{1, 0, 0, 1}).norm() < 1e-6);
    }
}
