#include "hecke/lattice.hpp"

#include "hecke/theta.hpp"

#include <cmath>

namespace hecke {

GammaMatrix reduce_to_fundamental(cplx tau, cplx* reduced) {
    GammaMatrix g;
    cplx t = tau;
    for (int iter = 0; iter < 512; ++iter) {
        long n = std::lround(t.real());
        if (n != 0) {
            t -= double(n);
            g = GammaMatrix(1, -n, 0, 1) * g;
        }
        if (std::abs(t) < 1.0 - 1e-15) {
            t = -1.0 / t;
            g = GammaMatrix(0, -1, 1, 0) * g;
        } else {
            if (reduced) *reduced = t;
            return g;
        }
    }
    throw convergence_error("reduce_to_fundamental: did not terminate", t);
}

LatticeContext::LatticeContext(Tau tau_in, NumericConfig cfg)
    : tau(tau_in.value),
      q(std::exp(2.0 * pi * iu * tau_in.value)),
      cfg_(cfg) {
    precision_warning = tau.imag() < 1e-4;

    gamma_ = reduce_to_fundamental(tau, &tau_red_);
    scale_ = gamma_.factor(tau);
    p_red_ = std::exp(pi * iu * tau_red_);

    // eta_1 at the reduced modulus from theta derivatives at the origin,
    // eta_2 from the Legendre relation tau eta_1 - eta_2 = 2 pi i.
    ThetaDerivs at0 = theta1_scaled_derivs(cplx(0.0), p_red_, cfg_.series_tol);
    eta1_red_ = -pi * pi * at0.d3 / (3.0 * at0.d1);
    eta2_red_ = tau_red_ * eta1_red_ - 2.0 * pi * iu;
    sigma_norm_red_ = 1.0 / (pi * at0.d1);

    // Transport eta back through (eta2', eta1')^t = (c tau + d) gamma (eta2, eta1)^t.
    const GammaMatrix gi = gamma_.inverse();
    eta2 = (double(gi.a) * eta2_red_ + double(gi.b) * eta1_red_) / scale_;
    eta1 = (double(gi.c) * eta2_red_ + double(gi.d) * eta1_red_) / scale_;
    // Re-impose Legendre exactly; the transport agrees to roundoff.
    eta2 = tau * eta1 - 2.0 * pi * iu;
    eta3 = eta1 + eta2;

    e1 = eval(0.5).p;
    e2 = eval(0.5 * tau).p;
    e3 = eval(0.5 * (1.0 + tau)).p;
    g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3);
    g3 = 4.0 * e1 * e2 * e3;

    for (int k = 1; k <= 3; ++k) {
        WeierstrassEval w = eval(0.5 * half_period(k));
        quarter[size_t(k - 1)] = QuarterTuple{w.zeta, w.p, w.dp, w.d2p};
    }
}

cplx LatticeContext::ek(int k) const {
    switch (k) {
    case 1: return e1;
    case 2: return e2;
    case 3: return e3;
    default: throw domain_inconsistency("ek: k must be 1, 2 or 3");
    }
}

cplx LatticeContext::etak(int k) const {
    switch (k) {
    case 1: return eta1;
    case 2: return eta2;
    case 3: return eta3;
    default: throw domain_inconsistency("etak: k must be 1, 2 or 3");
    }
}

cplx LatticeContext::half_period(int k) const {
    switch (k) {
    case 1: return cplx(0.5);
    case 2: return 0.5 * tau;
    case 3: return 0.5 * (1.0 + tau);
    default: throw domain_inconsistency("half_period: k must be 1, 2 or 3");
    }
}

void LatticeContext::lattice_coords(cplx z, double* alpha, double* beta) const {
    *beta = z.imag() / tau.imag();
    *alpha = z.real() - *beta * tau.real();
}

double LatticeContext::lattice_distance(cplx z) const {
    double a, b;
    lattice_coords(z, &a, &b);
    double a0 = a - std::round(a), b0 = b - std::round(b);
    return std::abs(a0 + b0 * tau);
}

LatticeContext::Reduction LatticeContext::reduce_point(cplx z, cplx t) const {
    double b = z.imag() / t.imag();
    double a = z.real() - b * t.real();
    long m = std::lround(a), n = std::lround(b);
    return Reduction{z - double(m) - double(n) * t, m, n};
}

// Everything below runs at the reduced modulus: sigma via theta_1 with the
// standard exponential prefactor, zeta = sigma'/sigma, wp = -zeta', and two
// more v-derivatives for wp' and wp''.
WeierstrassEval LatticeContext::eval_reduced_frame(cplx w) const {
    const cplx v = pi * w;
    cplx L, L1, L2, L3, th0;
    if (std::abs(v.imag()) > 300.0) {
        // Tall reduced torus near mid-cell: only the n = 0 term of the
        // series survives, but sin/cos overflow. Work with cot through the
        // bounded exponential E = e^{2 i s v}.
        const double sgn = v.imag() > 0.0 ? 1.0 : -1.0;
        const cplx E = std::exp(2.0 * iu * sgn * v);
        L = -iu * sgn * (1.0 + E) / (1.0 - E);
        L1 = -(1.0 + L * L);
        L2 = 2.0 * L * (1.0 + L * L);
        L3 = -2.0 * (1.0 + L * L) * (1.0 + 3.0 * L * L);
        th0 = std::sin(v); // may overflow; sigma is genuinely that large
    } else {
        ThetaDerivs th = theta1_scaled_derivs(v, p_red_, cfg_.series_tol);
        L = th.d1 / th.d0;
        const cplx r2 = th.d2 / th.d0;
        const cplx r3 = th.d3 / th.d0;
        const cplx r4 = th.d4 / th.d0;
        L1 = r2 - L * L;
        L2 = r3 - 3.0 * r2 * L + 2.0 * L * L * L;
        L3 = r4 - 4.0 * r3 * L - 3.0 * r2 * r2 + 12.0 * r2 * L * L - 6.0 * L * L * L * L;
        th0 = th.d0;
    }

    WeierstrassEval out;
    out.zeta = eta1_red_ * w + pi * L;
    out.p = -eta1_red_ - pi * pi * L1;
    out.dp = -pi * pi * pi * L2;
    out.d2p = -pi * pi * pi * pi * L3;
    out.sigma = std::exp(0.5 * eta1_red_ * w * w) * th0 * sigma_norm_red_;
    return out;
}

WeierstrassEval LatticeContext::eval(cplx z) const {
    const Reduction red = reduce_point(z, tau);
    if (std::abs(red.z0) < cfg_.pole_floor)
        throw pole_error("weierstrass: z within pole_floor of the lattice");

    // Map into the reduced frame; re-reduce there in case of cell mismatch.
    cplx w = red.z0 / scale_;
    const Reduction red2 = reduce_point(w, tau_red_);
    WeierstrassEval v = eval_reduced_frame(red2.z0);

    // Undo the inner reduction (lattice of tau_red_).
    if (red2.m != 0 || red2.n != 0) {
        const cplx etaw = double(red2.m) * eta1_red_ + double(red2.n) * eta2_red_;
        const cplx omega = double(red2.m) + double(red2.n) * tau_red_;
        double sgn = ((red2.m + red2.n + red2.m * red2.n) % 2 == 0) ? 1.0 : -1.0;
        v.zeta += etaw;
        v.sigma *= sgn * std::exp(etaw * (red2.z0 + 0.5 * omega));
    }

    // Weight factors back to the requested modulus.
    WeierstrassEval out;
    const cplx s = scale_;
    out.p = v.p / (s * s);
    out.dp = v.dp / (s * s * s);
    out.d2p = v.d2p / (s * s * s * s);
    out.zeta = v.zeta / s;
    out.sigma = v.sigma * s;

    // Undo the outer reduction (lattice of tau).
    if (red.m != 0 || red.n != 0) {
        const cplx etaw = double(red.m) * eta1 + double(red.n) * eta2;
        const cplx omega = double(red.m) + double(red.n) * tau;
        double sgn = ((red.m + red.n + red.m * red.n) % 2 == 0) ? 1.0 : -1.0;
        out.zeta += etaw;
        out.sigma *= sgn * std::exp(etaw * (red.z0 + 0.5 * omega));
    }
    return out;
}

cplx LatticeContext::sigma_w(cplx z) const {
    const Reduction red = reduce_point(z, tau);
    cplx w = red.z0 / scale_;
    const Reduction red2 = reduce_point(w, tau_red_);
    WeierstrassEval v = eval_reduced_frame(red2.z0);

    cplx sig = v.sigma;
    if (red2.m != 0 || red2.n != 0) {
        const cplx etaw = double(red2.m) * eta1_red_ + double(red2.n) * eta2_red_;
        const cplx omega = double(red2.m) + double(red2.n) * tau_red_;
        double sgn = ((red2.m + red2.n + red2.m * red2.n) % 2 == 0) ? 1.0 : -1.0;
        sig *= sgn * std::exp(etaw * (red2.z0 + 0.5 * omega));
    }
    sig *= scale_;
    if (red.m != 0 || red.n != 0) {
        const cplx etaw = double(red.m) * eta1 + double(red.n) * eta2;
        const cplx omega = double(red.m) + double(red.n) * tau;
        double sgn = ((red.m + red.n + red.m * red.n) % 2 == 0) ? 1.0 : -1.0;
        sig *= sgn * std::exp(etaw * (red.z0 + 0.5 * omega));
    }
    return sig;
}

} // namespace hecke
