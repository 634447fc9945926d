#include "hecke/ode_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace hecke {

std::array<FrobeniusReport, 2> frobenius_apparent(const LameParams& p,
                                                  const LatticeContext& ctx) {
    const int k = p.k.k;
    const cplx ek = ctx.ek(k), etak = ctx.etak(k);
    const cplx c2k = 6.0 * sq(ek) - 0.5 * ctx.g2; // wp''(omega_k/2)
    const cplx w4 = 0.5 * ctx.half_period(k);

    std::array<FrobeniusReport, 2> out;
    for (int sidx = 0; sidx < 2; ++sidx) {
        // Laurent data of q at xi = z -+ omega_k/4; odd coefficients flip
        // between the two singularities (q is even).
        const double sgn = (sidx == 0) ? 1.0 : -1.0;
        const cplx q_[7] = {
            2.0,                                  // xi^-2
            sgn * p.T,                            // xi^-1
            2.0 * ek + 0.5 * p.T * etak - p.E,    // xi^0
            sgn * p.T * ek,                       // xi^1
            ctx.g2 / 10.0 + c2k,                  // xi^2
            sgn * p.T * (c2k / 6.0 - ctx.g2 / 60.0), // xi^3
            ctx.g3 / 14.0 + ek * c2k,             // xi^4
        };
        FrobeniusReport rep;
        rep.singularity = (sidx == 0) ? -w4 : w4;
        rep.coefficients.assign(7, cplx(0.0));
        rep.coefficients[0] = 1.0;
        for (int m = 1; m <= 6; ++m) {
            cplx rhs = 0.0;
            for (int l = 1; l <= m && l <= 6; ++l)
                rhs += q_[l] * rep.coefficients[size_t(m - l)];
            if (m == 3) {
                rep.obstruction = rhs;
                rep.coefficients[3] = 0.0; // free coefficient; standard choice
            } else {
                rep.coefficients[size_t(m)] = rhs / (double(m) * (m - 3.0));
            }
        }
        out[size_t(sidx)] = rep;
    }
    return out;
}

namespace {

cplx path_point(const PathSegment& s, double t) {
    if (!s.is_arc) return s.z0 + t * (s.z1 - s.z0);
    return s.center + s.radius * std::exp(iu * (s.theta0 + t * s.dtheta));
}

cplx path_velocity(const PathSegment& s, double t) {
    if (!s.is_arc) return s.z1 - s.z0;
    return iu * s.radius * s.dtheta * std::exp(iu * (s.theta0 + t * s.dtheta));
}

// Singular translates of -+ omega_k/4 near the box spanned by za, zb.
std::vector<cplx> singular_translates(cplx za, cplx zb, const LameParams& p,
                                      const LatticeContext& ctx) {
    const cplx w4 = 0.5 * ctx.half_period(p.k.k);
    std::vector<cplx> sing;
    double a0, b0, a1, b1;
    ctx.lattice_coords(za, &a0, &b0);
    ctx.lattice_coords(zb, &a1, &b1);
    const long mlo = long(std::floor(std::min(a0, a1))) - 2, mhi = long(std::ceil(std::max(a0, a1))) + 2;
    const long nlo = long(std::floor(std::min(b0, b1))) - 2, nhi = long(std::ceil(std::max(b0, b1))) + 2;
    for (long m = mlo; m <= mhi; ++m)
        for (long n = nlo; n <= nhi; ++n) {
            const cplx w = double(m) + double(n) * ctx.tau;
            sing.push_back(w4 + w);
            sing.push_back(-w4 + w);
        }
    return sing;
}

} // namespace

std::vector<PathSegment> plan_path(cplx za, cplx zb, const LameParams& p,
                                   const LatticeContext& ctx, double clearance_scale,
                                   double detour_scale) {
    const double su = std::min(1.0, std::abs(ctx.tau));
    const double clear = clearance_scale * su;
    const double rho = detour_scale * su;
    const cplx dirv = zb - za;
    const double len = std::abs(dirv);
    const cplx dir = dirv / len;

    struct Detour {
        double t;     // foot parameter along the leg
        cplx s;       // singularity
        double d;     // perpendicular distance
    };
    std::vector<Detour> detours;
    for (const cplx& s : singular_translates(za, zb, p, ctx)) {
        const cplx rel = (s - za) / dir;
        const double t = rel.real() / len;
        const double d = std::abs(rel.imag());
        if (t > 1e-9 && t < 1.0 - 1e-9 && d < clear) detours.push_back({t, s, d});
    }
    std::sort(detours.begin(), detours.end(),
              [](const Detour& x, const Detour& y) { return x.t < y.t; });

    std::vector<PathSegment> path;
    cplx cur = za;
    for (const Detour& de : detours) {
        const double r = std::max(rho, 1.25 * de.d);
        const double half = std::sqrt(std::max(r * r - de.d * de.d, 0.0));
        const cplx foot = za + de.t * len * dir;
        const cplx entry = foot - half * dir;
        const cplx exit = foot + half * dir;
        double th0 = std::arg(entry - de.s), th1 = std::arg(exit - de.s);
        double dth = th1 - th0;
        while (dth <= -pi) dth += 2.0 * pi;
        while (dth > pi) dth -= 2.0 * pi;
        if (std::abs(std::abs(dth) - pi) < 1e-9) dth = pi; // singularity on the leg
        PathSegment line;
        line.z0 = cur;
        line.z1 = entry;
        if (std::abs(line.z1 - line.z0) > 1e-14) path.push_back(line);
        PathSegment arc;
        arc.is_arc = true;
        arc.center = de.s;
        arc.radius = r;
        arc.theta0 = th0;
        arc.dtheta = dth;
        path.push_back(arc);
        cur = exit;
    }
    PathSegment tail;
    tail.z0 = cur;
    tail.z1 = zb;
    if (std::abs(tail.z1 - tail.z0) > 1e-14) path.push_back(tail);
    return path;
}

namespace {

using State = std::array<cplx, 4>; // y1, y1', y2, y2'

State rhs(const PathSegment& seg, double t, const State& y, const LameParams& p,
          const LatticeContext& ctx) {
    const cplx z = path_point(seg, t);
    const cplx v = path_velocity(seg, t);
    const cplx q = potential_q(z, p, ctx);
    return State{v * y[1], v * (q * y[0]), v * y[3], v * (q * y[2])};
}

// Dormand-Prince 5(4) over one segment parameterized on [0, 1].
void dp54_segment(const PathSegment& seg, State& y, const LameParams& p,
                  const LatticeContext& ctx, double rtol) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    double t = 0.0, h = 0.05;
    const double atol = 1e-13;
    int steps = 0;
    while (t < 1.0) {
        if (++steps > 2000000)
            throw convergence_error("dp54: step budget exhausted", path_point(seg, t));
        h = std::min(h, 1.0 - t);
        if (h < 1e-13)
            throw convergence_error("dp54: step size underflow near a singularity",
                                    path_point(seg, t));
        const State k1 = rhs(seg, t, y, p, ctx);
        State w;
        for (int i = 0; i < 4; ++i) w[i] = y[i] + h * a21 * k1[i];
        const State k2 = rhs(seg, t + c2 * h, w, p, ctx);
        for (int i = 0; i < 4; ++i) w[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const State k3 = rhs(seg, t + c3 * h, w, p, ctx);
        for (int i = 0; i < 4; ++i) w[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State k4 = rhs(seg, t + c4 * h, w, p, ctx);
        for (int i = 0; i < 4; ++i)
            w[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const State k5 = rhs(seg, t + c5 * h, w, p, ctx);
        for (int i = 0; i < 4; ++i)
            w[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const State k6 = rhs(seg, t + h, w, p, ctx);
        State y5;
        for (int i = 0; i < 4; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const State k7 = rhs(seg, t + h, y5, p, ctx);

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (err <= 1.0) {
            t += h;
            y = y5;
        }
        const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
    }
}

} // namespace

Mat2 integrate_transfer(const std::vector<PathSegment>& path, const LameParams& p,
                        const LatticeContext& ctx, Mat2 initial) {
    State y{initial.m00, initial.m10, initial.m01, initial.m11};
    for (const PathSegment& seg : path)
        dp54_segment(seg, y, p, ctx, ctx.config().ode_rtol);
    return Mat2{y[0], y[2], y[1], y[3]};
}

CycleMonodromy integrate_monodromy(const LameParams& p, const LatticeContext& ctx,
                                   std::optional<cplx> base) {
    const cplx z0 = base.value_or(0.31 + 0.43 * ctx.tau);
    CycleMonodromy out;
    Mat2 U1 = integrate_transfer(plan_path(z0, z0 + 1.0, p, ctx), p, ctx);
    Mat2 U2 = integrate_transfer(plan_path(z0, z0 + ctx.tau, p, ctx), p, ctx);
    // Row convention: the translated solutions expand as Y(z + omega_j) = M_j Y(z).
    out.M1 = U1.transpose();
    out.M2 = U2.transpose();
    out.t1 = out.M1.trace();
    out.t2 = out.M2.trace();
    out.commutator_norm = (out.M1 * out.M2 - out.M2 * out.M1).norm();
    out.commutator_rel = out.commutator_norm / (out.M1.norm() * out.M2.norm());
    out.det_error = std::max(std::abs(out.M1.det() - 1.0), std::abs(out.M2.det() - 1.0));
    return out;
}

Mat2 integrate_loop(const LameParams& p, const LatticeContext& ctx, cplx center,
                    double radius) {
    PathSegment arc;
    arc.is_arc = true;
    arc.center = center;
    arc.radius = radius;
    arc.theta0 = 0.0;
    arc.dtheta = 2.0 * pi;
    Mat2 U = integrate_transfer({arc}, p, ctx);
    return U.transpose();
}

bool verify_unitary(const LameParams& p, const LatticeContext& ctx, CycleMonodromy* out,
                    double tol) {
    const cplx obstruction = apparent_obstruction(p, ctx);
    const double scale = 1.0 + std::pow(std::abs(p.T) + std::abs(p.E), 1.5);
    if (std::abs(obstruction) > ctx.config().zero_tol * scale)
        throw domain_inconsistency("verify_unitary: parameters are not apparent");
    // On the constrained branch a vanishing spectral polynomial means the
    // cycle matrices are simultaneously triangular but not diagonalizable;
    // traces alone cannot see that, so rule it out first.
    if (p.constrained) {
        const cplx Q = spectral_Q_closed(p.T, ctx, p.k);
        const double qscale = std::abs(spectral_Q_scale(p.T, ctx, p.k));
        if (std::abs(Q) < 1e-11 * (1.0 + qscale)) {
            if (out) *out = integrate_monodromy(p, ctx);
            return false;
        }
    }
    CycleMonodromy m = integrate_monodromy(p, ctx);
    if (out) *out = m;
    auto trace_ok = [&](cplx t) {
        return std::abs(t.imag()) < tol && std::abs(t.real()) <= 2.0 + tol;
    };
    return trace_ok(m.t1) && trace_ok(m.t2) && m.commutator_rel < tol;
}

} // namespace hecke
