#include "hecke/hecke_form.hpp"

#include <cmath>

namespace hecke {

cplx hecke_Z_zeta(cplx r, cplx s, const LatticeContext& ctx) {
    const cplx z = r + s * ctx.tau;
    if (ctx.lattice_distance(z) < ctx.config().pole_floor)
        throw pole_error("hecke_Z: (r,s) is congruent to a lattice point");
    return ctx.zeta_w(z) - r * ctx.eta1 - s * ctx.eta2;
}

cplx hecke_Z_qseries(double r, double s, const LatticeContext& ctx) {
    // q-expansion, valid for real r and s in [0,1):
    //   Z = 2 pi i s - pi i (1+u)/(1-u)
    //       - 2 pi i sum_{n>=1} [ u q^n/(1-u q^n) - q^n/u / (1 - q^n/u) ]
    // with u = e^{2 pi i z}; follows from the theta product for zeta.
    r = mod1(r);
    s = mod1(s);
    if (integer_pair(r, s, ctx.config().pole_floor))
        throw pole_error("hecke_Z: (r,s) is congruent to a lattice point");
    const cplx q = ctx.q;
    const cplx u = std::exp(2.0 * pi * iu * (r + s * ctx.tau));
    cplx z = 2.0 * pi * iu * s - pi * iu * (1.0 + u) / (1.0 - u);
    cplx uq = u, qu = 1.0 / u; // u q^n and q^n / u
    const double tol = ctx.config().series_tol;
    for (int n = 1; n < 1000000; ++n) {
        uq *= q;
        qu *= q;
        const cplx term = uq / (1.0 - uq) - qu / (1.0 - qu);
        z -= 2.0 * pi * iu * term;
        if (std::abs(uq) < tol && std::abs(qu) < tol) return z;
    }
    throw convergence_error("hecke_Z: q-expansion did not converge", z);
}

cplx hecke_Z(double r, double s, const LatticeContext& ctx) {
    return hecke_Z_qseries(r, s, ctx);
}

cplx hecke_Z_fast(double r, double s, cplx tau, double series_tol) {
    r = mod1(r);
    s = mod1(s);
    if (integer_pair(r, s))
        throw pole_error("hecke_Z_fast: (r,s) is congruent to a lattice point");
    const cplx q = std::exp(2.0 * pi * iu * tau);
    const cplx u = std::exp(2.0 * pi * iu * (r + s * tau));
    cplx z = 2.0 * pi * iu * s - pi * iu * (1.0 + u) / (1.0 - u);
    cplx uq = u, qu = 1.0 / u;
    for (int n = 1; n < 1000000; ++n) {
        uq *= q;
        qu *= q;
        z -= 2.0 * pi * iu * (uq / (1.0 - uq) - qu / (1.0 - qu));
        if (std::abs(uq) < series_tol && std::abs(qu) < series_tol) return z;
    }
    throw convergence_error("hecke_Z_fast: q-expansion did not converge", z);
}

cplx hecke_Z(cplx r, cplx s, const LatticeContext& ctx) {
    if (r.imag() == 0.0 && s.imag() == 0.0)
        return hecke_Z_qseries(r.real(), s.real(), ctx);
    return hecke_Z_zeta(r, s, ctx);
}

cplx hecke_Z_dtau(double r, double s, cplx tau, const NumericConfig& cfg) {
    // Five-point difference quotient; Z is holomorphic in tau with simple
    // zeros, so this is far more accuracy than Newton needs.
    double h = 1e-5 * (1.0 + std::abs(tau));
    h = std::min(h, 0.2 * tau.imag());
    auto Z = [&](cplx t) { return hecke_Z_fast(r, s, t, cfg.series_tol); };
    const cplx f1 = Z(tau - 2.0 * h), f2 = Z(tau - h), f3 = Z(tau + h), f4 = Z(tau + 2.0 * h);
    return (f1 - 8.0 * f2 + 8.0 * f3 - f4) / (12.0 * h);
}

ModularImage modular_transform(cplx r, cplx s, const Tau& tau, const GammaMatrix& g) {
    ModularImage out;
    out.r = double(g.a) * r - double(g.b) * s;
    out.s = double(g.d) * s - double(g.c) * r;
    out.tau = g.apply(tau.value);
    out.factor = g.factor(tau.value);
    return out;
}

int half_period_pullback(const GammaMatrix& g, int k_prime) {
    long x, y;
    switch (k_prime) {
    case 1: x = g.c; y = g.d; break;
    case 2: x = g.a; y = g.b; break;
    case 3: x = g.a + g.c; y = g.b + g.d; break;
    default: throw domain_inconsistency("half_period_pullback: k' must be 1, 2 or 3");
    }
    const bool xo = (x % 2) != 0, yo = (y % 2) != 0;
    if (!xo && yo) return 1;
    if (xo && !yo) return 2;
    if (xo && yo) return 3;
    throw domain_inconsistency("half_period_pullback: even/even pair cannot occur");
}

cplx premodular_Zmk(cplx r, cplx s, const LatticeContext& ctx, const KIndex& k) {
    const cplx z = r + s * ctx.tau;
    const cplx Z = hecke_Z(r, s, ctx);
    return Z * Z - ctx.wp(z) + ctx.ek(k.k);
}

cplx premodular_Zn000(cplx r, cplx s, const LatticeContext& ctx, int n) {
    const cplx Z = hecke_Z(r, s, ctx);
    if (n == 1) return Z;
    const cplx z = r + s * ctx.tau;
    const WeierstrassEval w = ctx.eval(z);
    const cplx p = w.p, dp = w.dp;
    if (n == 2) return Z * Z * Z - 3.0 * p * Z - dp;
    if (n == 3) {
        const cplx Z2 = Z * Z, Z3 = Z2 * Z;
        return Z3 * Z3 - 15.0 * p * Z2 * Z2 - 20.0 * dp * Z3 +
               (6.75 * ctx.g2 - 45.0 * p * p) * Z2 - 12.0 * p * dp * Z - 1.25 * dp * dp;
    }
    throw domain_inconsistency("premodular_Zn000: n must be 1, 2 or 3");
}

cplx translation_residual(cplx r, cplx s, const LatticeContext& ctx, HalfShift dir) {
    const cplx z = r + s * ctx.tau;
    const WeierstrassEval w = ctx.eval(z);
    const cplx e = (dir == HalfShift::SShift) ? ctx.e2 : ctx.e1;
    const cplx denom = w.p - e;
    if (std::abs(denom) < ctx.config().pole_floor * (1.0 + std::abs(w.p)))
        throw pole_error("translation_residual: z at the excluded half period");
    const cplx shifted = (dir == HalfShift::SShift) ? hecke_Z(r, s + 0.5, ctx)
                                                    : hecke_Z(r + 0.5, s, ctx);
    return shifted - hecke_Z(r, s, ctx) - w.dp / (2.0 * denom);
}

cplx green_gradient(cplx z, const LatticeContext& ctx) {
    double s = z.imag() / ctx.tau.imag();
    double r = z.real() - s * ctx.tau.real();
    return hecke_Z(r, s, ctx);
}

double green_hessian_degeneracy(int i, const LatticeContext& ctx) {
    const double y = pi / ctx.tau.imag();
    return y * y - std::norm(ctx.ek(i) + ctx.eta1 - y);
}

} // namespace hecke
