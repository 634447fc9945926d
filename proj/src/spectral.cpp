#include "hecke/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hecke {

namespace {

cplx quarter_point(const LatticeContext& ctx, const KIndex& k) {
    return 0.5 * ctx.half_period(k.k);
}

// 12 e_k^2 - g2 = 4 (e_k - e_i)(e_k - e_i'), never zero.
cplx gap_constant(const LatticeContext& ctx, int k) {
    return 12.0 * sq(ctx.ek(k)) - ctx.g2;
}

void other_indices(int k, int* i, int* ip) {
    *i = k % 3 + 1;
    *ip = (k + 1) % 3 + 1;
}

} // namespace

cplx apparent_obstruction(const LameParams& p, const LatticeContext& ctx) {
    const cplx T = p.T;
    return T * (T * T - 2.0 * ctx.etak(p.k.k) * T + 4.0 * p.E - 4.0 * ctx.ek(p.k.k));
}

PotentialCoeffs potential_coeffs(const LameParams& p, const LatticeContext& ctx) {
    const QuarterTuple& u = ctx.quarter_tuple(p.k.k);
    PotentialCoeffs c;
    c.am2 = 2.0 * sq(u.dp);
    c.am1 = 2.0 * u.d2p - u.dp * p.T;
    c.a0 = -p.E + 2.0 * u.zeta * p.T + 4.0 * u.p;
    return c;
}

cplx potential_q(cplx z, const LameParams& p, const LatticeContext& ctx) {
    const cplx w4 = quarter_point(ctx, p.k);
    const WeierstrassEval a = ctx.eval(z + w4);
    const WeierstrassEval b = ctx.eval(z - w4);
    return 2.0 * (a.p + b.p) + p.T * (a.zeta - b.zeta) - p.E;
}

cplx potential_q_prime(cplx z, const LameParams& p, const LatticeContext& ctx) {
    const cplx w4 = quarter_point(ctx, p.k);
    const WeierstrassEval a = ctx.eval(z + w4);
    const WeierstrassEval b = ctx.eval(z - w4);
    return 2.0 * (a.dp + b.dp) + p.T * (-a.p + b.p);
}

PhiCoeffs phi_even_coeffs(const LameParams& p, const LatticeContext& ctx) {
    const QuarterTuple& u = ctx.quarter_tuple(p.k.k);
    const cplx dp2 = sq(u.dp);
    PhiCoeffs c;
    c.d2 = sq(dp2);
    c.d1 = dp2 * (u.dp * p.T + u.d2p);
    // General-E form; with the constrained E it collapses to
    // (2 wp'^2 T^2 + 2 wp' wp'' T + 4(8 wp + e_k) wp'^2 - 3 wp''^2)/4.
    c.d0 = 0.25 * (4.0 * dp2 * p.E + 3.0 * dp2 * sq(p.T) - 8.0 * u.zeta * dp2 * p.T +
                   32.0 * u.p * dp2 - 3.0 * sq(u.d2p));
    return c;
}

PhiEval phi_even_eval(cplx z, const LameParams& p, const LatticeContext& ctx) {
    const QuarterTuple& u = ctx.quarter_tuple(p.k.k);
    const PhiCoeffs c = phi_even_coeffs(p, ctx);
    const WeierstrassEval w = ctx.eval(z);
    const cplx x = w.p - u.p;
    if (std::abs(x) < ctx.config().pole_floor * (1.0 + std::abs(w.p)))
        throw pole_error("phi_even_eval: z at a pole of Phi_e");
    const cplx x2 = x * x;
    const cplx f = c.d2 / x2 + c.d1 / x + c.d0;
    const cplx fx = -2.0 * c.d2 / (x2 * x) - c.d1 / x2;
    const cplx fxx = 6.0 * c.d2 / (x2 * x2) + 2.0 * c.d1 / (x2 * x);
    const cplx fxxx = -24.0 * c.d2 / (x2 * x2 * x) - 6.0 * c.d1 / (x2 * x2);
    const cplx dp3 = 12.0 * w.p * w.dp; // wp'''
    PhiEval out;
    out.value = f;
    out.dz = fx * w.dp;
    out.dz2 = fxx * sq(w.dp) + fx * w.d2p;
    out.dz3 = fxxx * sq(w.dp) * w.dp + 3.0 * fxx * w.dp * w.d2p + fx * dp3;
    return out;
}

cplx spectral_Q_combination(cplx T, const LatticeContext& ctx, const KIndex& k) {
    const LameParams p = LameParams::constrain(k, T, ctx);
    const PhiCoeffs c = phi_even_coeffs(p, ctx);
    const PotentialCoeffs a = potential_coeffs(p, ctx);
    return c.d0 * c.d1 - a.a0 * sq(c.d0);
}

cplx spectral_Q_closed(cplx T, const LatticeContext& ctx, const KIndex& k) {
    int i, ip;
    other_indices(k.k, &i, &ip);
    const cplx ek = ctx.ek(k.k);
    const cplx T2 = T * T;
    const cplx dp4 = sq(sq(ctx.quarter_tuple(k.k).dp));
    return -(dp4 / 16.0) * (T2 - 12.0 * ek) * (T2 - 4.0 * ek + 4.0 * ctx.ek(i)) *
           (T2 - 4.0 * ek + 4.0 * ctx.ek(ip));
}

cplx spectral_Q_definition(cplx z, cplx T, const LatticeContext& ctx, const KIndex& k) {
    const LameParams p = LameParams::constrain(k, T, ctx);
    const PhiEval f = phi_even_eval(z, p, ctx);
    const cplx q = potential_q(z, p, ctx);
    return 0.5 * f.value * f.dz2 - 0.25 * sq(f.dz) - q * sq(f.value);
}

SpectralPoint spectral_point(cplx T, const LatticeContext& ctx, const KIndex& k) {
    return SpectralPoint{T, std::sqrt(spectral_Q_closed(T, ctx, k))};
}

cplx wp_invert(const LatticeContext& ctx, cplx w, cplx dp_target) {
    // Seed candidates: a grid over half the fundamental cell plus the
    // two-term Laurent seed 1/sqrt(w) for large |w|, sorted by |wp - w|.
    std::vector<std::pair<double, cplx>> seeds;
    for (int i = 0; i < 13; ++i)
        for (int j = 0; j < 12; ++j) {
            const cplx z = (0.04 + 0.92 * i / 12.0) + (0.03 + 0.45 * j / 11.0) * ctx.tau;
            try {
                seeds.emplace_back(std::abs(ctx.wp(z) - w), z);
            } catch (const pole_error&) {}
        }
    if (std::abs(w) > 50.0) {
        const cplx z = 1.0 / std::sqrt(w);
        try {
            seeds.emplace_back(std::abs(ctx.wp(z) - w), z);
        } catch (const pole_error&) {}
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    const double tol = 1e-12;
    auto try_newton = [&](cplx z) -> std::optional<cplx> {
        double fmag = 1e300;
        for (int it = 0; it < 60; ++it) {
            WeierstrassEval e;
            try {
                e = ctx.eval(z);
            } catch (const pole_error&) { return std::nullopt; }
            const cplx f = e.p - w;
            if (std::abs(f) < tol * (1.0 + std::abs(w))) return z;
            if (std::abs(e.dp) == 0.0) return std::nullopt;
            cplx step = f / e.dp;
            const double cap = 0.2 * std::min(1.0, ctx.tau.imag());
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            // Damped update: shrink while the residual grows.
            cplx zn = z - step;
            for (int half = 0; half < 8; ++half) {
                try {
                    if (std::abs(ctx.wp(zn) - w) <= std::abs(f)) break;
                } catch (const pole_error&) {}
                step *= 0.5;
                zn = z - step;
            }
            if (std::abs(f) >= fmag * (1.0 - 1e-12) && it > 20) return std::nullopt;
            fmag = std::abs(f);
            z = zn;
        }
        return std::nullopt;
    };

    std::optional<cplx> found;
    int tried = 0;
    for (const auto& [d, z0] : seeds) {
        if (++tried > 16) break;
        found = try_newton(z0);
        if (found) break;
    }
    if (!found)
        throw convergence_error("wp_invert: Newton failed from all seeds",
                                seeds.empty() ? cplx(0) : seeds.front().second);
    cplx z = *found;
    const cplx dp = ctx.wp_prime(z);
    if (std::abs(dp - dp_target) > std::abs(dp + dp_target)) z = -z;
    // Center the representative.
    double a, b;
    ctx.lattice_coords(z, &a, &b);
    return (a - std::round(a)) + (b - std::round(b)) * ctx.tau;
}

MonodromyData monodromy_data_from_point(const SpectralPoint& P, const LatticeContext& ctx,
                                        const KIndex& k) {
    const cplx ek = ctx.ek(k.k);
    const cplx gap = gap_constant(ctx, k.k);
    const cplx den = P.T * P.T - 12.0 * ek;
    const cplx dp2 = sq(ctx.quarter_tuple(k.k).dp);
    if (std::abs(den) < ctx.config().zero_tol * (1.0 + std::abs(12.0 * ek)))
        throw domain_inconsistency(
            "monodromy_data: T^2 = 12 e_k is the non-reducible corner (sigma = 0)");
    const cplx smq = P.sqrt_minus_Q();

    MonodromyData out;
    out.p_sigma = ek + gap / den;
    out.dp_sigma = -4.0 * gap * smq / (dp2 * sq(den));
    out.kappa = 2.0 * smq / (dp2 * den);
    out.sigma = wp_invert(ctx, out.p_sigma, out.dp_sigma);
    // Split sigma = r + s tau against kappa = zeta(sigma) - r eta1 - s eta2
    // using the Legendre relation.
    const cplx zs = ctx.zeta_w(out.sigma);
    out.s = (out.sigma * ctx.eta1 - (zs - out.kappa)) / (2.0 * pi * iu);
    out.r = out.sigma - out.s * ctx.tau;
    return out;
}

MonodromyData monodromy_data_from_T(cplx T, const LatticeContext& ctx, const KIndex& k) {
    return monodromy_data_from_point(spectral_point(T, ctx, k), ctx, k);
}

std::optional<cplx> solve_T_from_rs(cplx r, cplx s, const LatticeContext& ctx, const KIndex& k,
                                    SolveDiagnostics* diag) {
    cplx rk, sk;
    k.shift(r, s, &rk, &sk);
    const cplx sigma = r + s * ctx.tau;
    if (ctx.lattice_distance(sigma) < ctx.config().pole_floor)
        throw pole_error("solve_T_from_rs: sigma on the lattice");
    if (ctx.lattice_distance(sigma - ctx.half_period(k.k)) < ctx.config().pole_floor)
        throw pole_error("solve_T_from_rs: sigma at omega_k/2 (shifted pair has a pole)");

    const cplx shifted = hecke_Z(rk, sk, ctx);
    if (diag) diag->shifted_Z_abs = std::abs(shifted);
    const bool solvable = std::abs(shifted) < ctx.config().zero_tol;
    if (diag) diag->solvable = solvable;
    if (!solvable) return std::nullopt;

    const cplx ek = ctx.ek(k.k);
    const cplx T2 = 12.0 * ek + gap_constant(ctx, k.k) / (ctx.wp(sigma) - ek);
    cplx T = std::sqrt(T2);
    if (T.real() < 0.0 || (T.real() == 0.0 && T.imag() < 0.0)) T = -T;
    return T;
}

BakerAkhiezerData zeros_a1a2(const SpectralPoint& P, const LatticeContext& ctx,
                             const KIndex& k) {
    const QuarterTuple& u = ctx.quarter_tuple(k.k);
    const LameParams p = LameParams::constrain(k, P.T, ctx);
    const PhiCoeffs c = phi_even_coeffs(p, ctx);
    if (std::abs(c.d0) < ctx.config().zero_tol * (1.0 + std::abs(c.d1)))
        throw domain_inconsistency("zeros_a1a2: d0(T) = 0, quotient form degenerates");

    // wp(a1), wp(a2) from the symmetric functions
    //   wp(a1)+wp(a2) = (2 wp d0 - d1)/d0, wp(a1) wp(a2) = (wp^2 d0 - wp d1 + d2)/d0.
    const cplx sum = (2.0 * u.p * c.d0 - c.d1) / c.d0;
    const cplx prod = (sq(u.p) * c.d0 - u.p * c.d1 + c.d2) / c.d0;
    cplx disc = std::sqrt(sq(sum) - 4.0 * prod);
    cplx w1 = 0.5 * (sum + disc), w2 = 0.5 * (sum - disc);
    if (std::abs(w1 - w2) < ctx.config().zero_tol * (1.0 + std::abs(w1)) &&
        std::abs(P.C) > ctx.config().zero_tol)
        throw domain_inconsistency("zeros_a1a2: wp(a1) = wp(a2) off the branch locus");

    const cplx smq = P.sqrt_minus_Q();
    const cplx dp1 = -2.0 * smq * sq(u.p - w1) / (c.d0 * (w1 - w2));
    const cplx dp2 = 2.0 * smq * sq(u.p - w2) / (c.d0 * (w1 - w2));

    BakerAkhiezerData out;
    out.P = P;
    out.k = k.k;
    out.a1 = wp_invert(ctx, w1, dp1);
    out.a2 = wp_invert(ctx, w2, dp2);

    // Tie the representatives to sigma(P) = a1 + a2 exactly.
    const MonodromyData md = monodromy_data_from_point(P, ctx, k);
    double da, db;
    ctx.lattice_coords(md.sigma - out.a1 - out.a2, &da, &db);
    const double ra = std::round(da), rb = std::round(db);
    if (std::abs(da - ra) > 1e-6 || std::abs(db - rb) > 1e-6)
        throw domain_inconsistency("zeros_a1a2: a1 + a2 is not congruent to sigma(P)");
    out.a2 += ra + rb * ctx.tau;

    const cplx w4 = quarter_point(ctx, k);
    out.c = 0.5 * P.T + 0.5 * ctx.etak(k.k) + ctx.zeta_w(out.a1 - w4) + ctx.zeta_w(out.a2 - w4);
    out.r = md.r;
    out.s = md.s;
    out.lambda1 = std::exp(-2.0 * pi * iu * out.s);
    out.lambda2 = std::exp(2.0 * pi * iu * out.r);
    return out;
}

cplx baker_akhiezer_eval(const BakerAkhiezerData& data, cplx z, const LatticeContext& ctx) {
    const cplx w4 = 0.5 * ctx.half_period(data.k);
    if (ctx.lattice_distance(z - w4) < ctx.config().pole_floor ||
        ctx.lattice_distance(z + w4) < ctx.config().pole_floor)
        throw pole_error("baker_akhiezer_eval: z at a pole (+-omega_k/4)");
    return std::exp(data.c * z) * ctx.sigma_w(z - data.a1) * ctx.sigma_w(z - data.a2) /
           (ctx.sigma_w(z - w4) * ctx.sigma_w(z + w4));
}

cplx a1a2_constraint_residual(const BakerAkhiezerData& data, const LatticeContext& ctx) {
    const cplx w4 = 0.5 * ctx.half_period(data.k);
    const cplx lhs = 0.5 * (ctx.zeta_w(data.a2 + w4) + ctx.zeta_w(data.a2 - w4));
    const cplx rhs = 0.5 * (ctx.zeta_w(data.a1 + w4) + ctx.zeta_w(data.a1 - w4)) -
                     ctx.zeta_w(data.a1 - data.a2);
    return lhs - rhs;
}

cplx phi_log_derivative(const SpectralPoint& P, cplx z, const LatticeContext& ctx,
                        const KIndex& k, cplx* dphi) {
    const LameParams p = LameParams::constrain(k, P.T, ctx);
    const PhiEval f = phi_even_eval(z, p, ctx);
    const cplx num = iu * P.C + 0.5 * f.dz;
    const cplx phi = num / f.value;
    if (dphi) *dphi = (0.5 * f.dz2 * f.value - num * f.dz) / sq(f.value);
    return phi;
}

cplx spectral_Q_scale(cplx T, const LatticeContext& ctx, const KIndex& k) {
    int i, ip;
    other_indices(k.k, &i, &ip);
    const cplx ek = ctx.ek(k.k);
    const double T2 = sq(std::abs(T));
    const double dp4 = std::abs(sq(sq(ctx.quarter_tuple(k.k).dp)));
    return dp4 / 16.0 * (T2 + 12.0 * std::abs(ek)) *
           (T2 + 4.0 * std::abs(ek - ctx.ek(i))) * (T2 + 4.0 * std::abs(ek - ctx.ek(ip)));
}

MonodromyClass classify_point(const SpectralPoint& P, const LatticeContext& ctx,
                              const KIndex& k) {
    const cplx Q = spectral_Q_closed(P.T, ctx, k);
    const double scale = std::abs(spectral_Q_scale(P.T, ctx, k));
    // Exact roots of Q sit at the roundoff floor (~1e-16 * scale); anything
    // above 1e-11 * scale is a genuine nonzero value.
    if (std::abs(Q) > 1e-11 * (1.0 + scale)) {
        const MonodromyData md = monodromy_data_from_point(P, ctx, k);
        return MonodromyClass{MonodromyClass::CompletelyReducible, md.r, md.s};
    }
    const cplx T2 = P.T * P.T;
    const cplx ek = ctx.ek(k.k);
    // Which root family of Q: sigma = 0 or sigma = omega_j/2, j != k.
    double best = std::abs(T2 - 12.0 * ek);
    int which = 0;
    int i, ip;
    other_indices(k.k, &i, &ip);
    if (std::abs(T2 - 4.0 * ek + 4.0 * ctx.ek(i)) < best) {
        best = std::abs(T2 - 4.0 * ek + 4.0 * ctx.ek(i));
        which = i;
    }
    if (std::abs(T2 - 4.0 * ek + 4.0 * ctx.ek(ip)) < best) which = ip;
    MonodromyClass out{MonodromyClass::NotCompletelyReducible, 0.0, 0.0};
    switch (which) {
    case 0: out.r = 0.0; out.s = 0.0; break;          // sigma = 0
    case 1: out.r = 0.5; out.s = 0.0; break;          // sigma = 1/2
    case 2: out.r = 0.0; out.s = 0.5; break;          // sigma = tau/2
    default: out.r = 0.5; out.s = 0.5; break;         // sigma = (1+tau)/2
    }
    return out;
}

} // namespace hecke
