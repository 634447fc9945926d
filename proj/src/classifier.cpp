#include "hecke/classifier.hpp"

#include <cmath>

namespace hecke {

ObstructionVerdict rectangle_obstruction(const std::array<long, 4>& m) {
    for (long v : m)
        if (v < 0) throw domain_inconsistency("rectangle_obstruction: weights must be >= 0");
    ObstructionVerdict out;
    out.m = m;
    const long diff = m[1] + m[2] - m[0] - m[3];
    out.holds_first = diff >= 2 && m[1] >= 1 && m[2] >= 1;
    out.holds_second = diff <= -2 && m[0] >= 1 && m[3] >= 1;
    return out;
}

namespace {

// Witnesses this close to the half lattice are Newton artifacts of the
// trivial pairs (Z vanishes identically there), not nontrivial zeros.
constexpr double kCornerMargin = 1e-7;

bool near_half_lattice(double r, double s) {
    for (double cr : {0.0, 0.5})
        for (double cs : {0.0, 0.5})
            if (torus_dist(r, s, cr, cs) < kCornerMargin) return true;
    return false;
}

FamilyVerdict family_at(cplx tau_domain, const NumericConfig& cfg, Exec exec) {
    FamilyVerdict out;
    out.tau_domain = tau_domain;
    MembershipResult m = lambda_membership(tau_domain, cfg, exec);
    out.tau_reduced = m.reduced_tau;
    out.boundary = m.boundary;
    out.min_abs = m.min_abs;
    if (m.boundary) return out;
    if (m.inside && !near_half_lattice(m.witness_r, m.witness_s)) {
        out.exists = true;
        out.witness_r = m.witness_r;
        out.witness_s = m.witness_s;
        out.residual = m.residual;
        // Transport the witness from the reduced frame back to tau_domain:
        // (r', s') = (a r - b s, d s - c r) inverts to r = d r' + b s',
        // s = c r' + a s'.
        const GammaMatrix& g = m.reduction;
        out.original_r = mod1(double(g.d) * m.witness_r + double(g.b) * m.witness_s);
        out.original_s = mod1(double(g.c) * m.witness_r + double(g.a) * m.witness_s);
        return out;
    }
    out.inconclusive = m.inside ? true : m.inconclusive;
    return out;
}

} // namespace

ClassificationReport classify_torus(cplx tau, int k, const NumericConfig& cfg, Exec exec) {
    if (!(tau.imag() > 0.0)) throw domain_inconsistency("classify_torus: Im tau must be > 0");
    KIndex ki(k);
    ClassificationReport rep;
    rep.tau = tau;
    rep.k = k;
    cplx tau_k;
    switch (k) {
    case 1: tau_k = 2.0 * tau; break;
    case 2: tau_k = 0.5 * tau; break;
    default: tau_k = 0.5 * (1.0 + tau); break;
    }
    rep.even = family_at(tau_k, cfg, exec);
    rep.noneven = family_at(tau, cfg, exec);
    if (rep.even.boundary || rep.noneven.boundary)
        rep.note = "reduced modulus on the F0 boundary: no nontrivial zeros there";
    return rep;
}

PipelineRecord full_pipeline(double r, double s, int k, const NumericConfig& cfg,
                             std::optional<cplx> tau_seed) {
    PipelineRecord rec;
    rec.r = r;
    rec.s = s;
    rec.k = k;
    KIndex ki(k);
    if (half_integer_pair(r, s))
        throw domain_inconsistency("full_pipeline: (r,s) on the half lattice");

    try {
        // Stage 1: zero of the shifted Hecke form.
        double rk, sk;
        ki.shift(r, s, &rk, &sk);
        int sgn;
        box_representative(rk, sk, &rec.shifted_r, &rec.shifted_s, &sgn);
        TauZeroSearch search = find_tau_zero(rec.shifted_r, rec.shifted_s, cfg, tau_seed);
        if (!search.zero) {
            rec.zero_exists = false;
            rec.none_grid_min = search.none.grid_min;
            rec.ok = true; // a determinate "no zero" outcome
            return rec;
        }
        rec.zero_exists = true;
        rec.tau_star = search.zero->tau_star;
        rec.shifted_residual = search.zero->residual;

        const LatticeContext ctx{Tau(rec.tau_star), cfg};

        // Stage 2: exclude the even branch.
        rec.companion_abs = std::abs(premodular_Zmk(cplx(r), cplx(s), ctx, ki));
        if (rec.companion_abs < cfg.zero_tol) {
            rec.even_branch = true;
            rec.ok = true;
            return rec;
        }

        // Stage 3: spectral parameter.
        SolveDiagnostics diag;
        auto T = solve_T_from_rs(cplx(r), cplx(s), ctx, ki, &diag);
        if (!T) {
            rec.failed_stage = "solve_T_from_rs";
            return rec;
        }
        rec.T = *T;

        // Stage 4: spectral point, branch matched to (r,s); data recovery.
        SpectralPoint P = spectral_point(*T, ctx, ki);
        MonodromyData md = monodromy_data_from_point(P, ctx, ki);
        double d0 = torus_dist(md.r.real(), md.s.real(), r, s) + std::abs(md.r.imag()) +
                    std::abs(md.s.imag());
        MonodromyData md2 = monodromy_data_from_point(P.dual(), ctx, ki);
        double d1 = torus_dist(md2.r.real(), md2.s.real(), r, s) + std::abs(md2.r.imag()) +
                    std::abs(md2.s.imag());
        if (d1 < d0) {
            P = P.dual();
            md = md2;
            std::swap(d0, d1);
        }
        rec.rs_roundtrip = d0;
        rec.kappa_residual = std::abs(md.kappa - hecke_Z(md.r, md.s, ctx));

        // Stage 5: second-kind representation.
        BakerAkhiezerData ba = zeros_a1a2(P, ctx, ki);
        rec.a_sum_residual = std::abs(ba.a1 + ba.a2 - md.sigma);
        rec.constraint_residual = std::abs(a1a2_constraint_residual(ba, ctx));

        // Stage 6: direct monodromy.
        LameParams params = LameParams::constrain(ki, *T, ctx);
        CycleMonodromy cm;
        rec.unitary = verify_unitary(params, ctx, &cm);
        rec.t1 = cm.t1;
        rec.t2 = cm.t2;
        rec.commutator = cm.commutator_rel;
        rec.trace_residual = std::max(std::abs(cm.t1 - 2.0 * std::cos(2.0 * pi * s)),
                                      std::abs(cm.t2 - 2.0 * std::cos(2.0 * pi * r)));
        rec.ok = true;
        return rec;
    } catch (const std::exception& e) {
        if (rec.failed_stage.empty())
            rec.failed_stage = std::string("exception: ") + e.what();
        return rec;
    }
}

} // namespace hecke
