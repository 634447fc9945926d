#ifndef HECKE_SPECTRAL_HPP
#define HECKE_SPECTRAL_HPP

#include "hecke/hecke_form.hpp"

#include <optional>

namespace hecke {

// Parameters of the shifted two-pole operator y'' = q(z; T, E) y with
//   q = 2(wp(z + w4) + wp(z - w4)) + T (zeta(z + w4) - zeta(z - w4)) - E,
// w4 = omega_k/4. "Constrained" pins E = -T^2/4 + (eta_k/2) T + e_k, the
// branch on which both finite singularities stay apparent for every T.
struct LameParams {
    KIndex k;
    cplx T;
    cplx E;
    bool constrained = false;

    static LameParams constrain(const KIndex& k, cplx T, const LatticeContext& ctx) {
        LameParams p{k, T, -0.25 * T * T + 0.5 * ctx.etak(k.k) * T + ctx.ek(k.k), true};
        return p;
    }
};

// T (T^2 - 2 eta_k T + 4E - 4 e_k); zero exactly when both singularities
// are apparent.
cplx apparent_obstruction(const LameParams& p, const LatticeContext& ctx);

// q as a Laurent polynomial in x = wp(z) - wp(omega_k/4):
// a_{-2} = 2 wp'^2, a_{-1} = 2 wp'' - wp' T, a_0 = -E + 2 zeta T + 4 wp
// (all constants at the quarter period).
struct PotentialCoeffs {
    cplx am2, am1, a0;
};
PotentialCoeffs potential_coeffs(const LameParams& p, const LatticeContext& ctx);

// Direct evaluation of q and q' at a point (pole guard at +-omega_k/4).
cplx potential_q(cplx z, const LameParams& p, const LatticeContext& ctx);
cplx potential_q_prime(cplx z, const LameParams& p, const LatticeContext& ctx);

// The even elliptic solution Phi_e = d2/x^2 + d1/x + d0 of the second
// symmetric-power equation Phi''' - 4 q Phi' - 2 q' Phi = 0.
struct PhiCoeffs {
    cplx d2, d1, d0;
};
PhiCoeffs phi_even_coeffs(const LameParams& p, const LatticeContext& ctx);

struct PhiEval {
    cplx value, dz, dz2, dz3;
};
PhiEval phi_even_eval(cplx z, const LameParams& p, const LatticeContext& ctx);

// Spectral polynomial, two independent routes:
//   combination:  Q = d0 d1 - a0 d0^2
//   closed form:  Q = -(wp'^4/16)(T^2 - 12 e_k)(T^2 - 4 e_k + 4 e_i)(T^2 - 4 e_k + 4 e_i')
// plus the defining z-independent combination for refereeing.
cplx spectral_Q_combination(cplx T, const LatticeContext& ctx, const KIndex& k);
cplx spectral_Q_closed(cplx T, const LatticeContext& ctx, const KIndex& k);
cplx spectral_Q_definition(cplx z, cplx T, const LatticeContext& ctx, const KIndex& k);
// Magnitude of the factored form with every root pushed off: the natural
// scale against which |Q(T)| counts as zero.
cplx spectral_Q_scale(cplx T, const LatticeContext& ctx, const KIndex& k);

// Point on the spectral curve C^2 = Q(T).
struct SpectralPoint {
    cplx T, C;
    SpectralPoint dual() const { return SpectralPoint{T, -C}; }
    // The square root of -Q(T) used by every branch-dependent formula.
    // The sign -iC ties the zeros a_1, a_2 to the residue-(+1) poles of
    // phi(P; z), so psi(P; z) = exp int phi(P) vanishes exactly at them.
    cplx sqrt_minus_Q() const { return -iu * C; }
};
SpectralPoint spectral_point(cplx T, const LatticeContext& ctx, const KIndex& k);

// Monodromy data attached to a spectral point:
//   wp(sigma) = e_k + (12 e_k^2 - g2)/(T^2 - 12 e_k)
//   wp'(sigma) = -4 (12 e_k^2 - g2) sqrt(-Q) / (wp'^2 (T^2 - 12 e_k)^2)
//   kappa = Z(r,s,tau) = 2 sqrt(-Q) / (wp'^2 (T^2 - 12 e_k))
// with sigma = r + s tau recovered by inverting wp and splitting via the
// Legendre relation.
struct MonodromyData {
    cplx p_sigma, dp_sigma, kappa;
    cplx sigma;
    cplx r, s;
};
MonodromyData monodromy_data_from_point(const SpectralPoint& P, const LatticeContext& ctx,
                                        const KIndex& k);
MonodromyData monodromy_data_from_T(cplx T, const LatticeContext& ctx, const KIndex& k);

// Inverse problem: T with the prescribed completely-reducible data (r,s).
// Solvable iff Z(r_k, s_k, tau) = 0; returns T with Re T >= 0 (the pair
// (T, -T) carries the same data). nullopt when the solvability test fails.
struct SolveDiagnostics {
    double shifted_Z_abs = 0.0; // |Z(r_k, s_k, tau)|
    bool solvable = false;
};
std::optional<cplx> solve_T_from_rs(cplx r, cplx s, const LatticeContext& ctx, const KIndex& k,
                                    SolveDiagnostics* diag = nullptr);

// Invert wp on the torus; the sign of sigma is fixed by matching dp_target.
cplx wp_invert(const LatticeContext& ctx, cplx w, cplx dp_target);

// Zeros a1, a2 and exponential rate c of the second-kind representation
//   psi(P; z) = e^{c z} sigma(z - a1) sigma(z - a2) /
//               (sigma(z - w4) sigma(z + w4)),
// with the cycle multipliers lambda_1 = e^{-2 pi i s}, lambda_2 = e^{2 pi i r}.
struct BakerAkhiezerData {
    cplx a1, a2;
    cplx c;
    cplx lambda1, lambda2;
    cplx r, s;
    SpectralPoint P;
    int k = 1;
};
BakerAkhiezerData zeros_a1a2(const SpectralPoint& P, const LatticeContext& ctx, const KIndex& k);

cplx baker_akhiezer_eval(const BakerAkhiezerData& data, cplx z, const LatticeContext& ctx);

// Residual of the zero-locus constraint tying a1 and a2:
//   (zeta(a2+w4)+zeta(a2-w4))/2 - (zeta(a1+w4)+zeta(a1-w4))/2 + zeta(a1-a2).
cplx a1a2_constraint_residual(const BakerAkhiezerData& data, const LatticeContext& ctx);

// Logarithmic derivative phi(P; z) = (iC + Phi_e'/2) / Phi_e and its
// z-derivative (for the Riccati identity phi' + phi^2 = q).
cplx phi_log_derivative(const SpectralPoint& P, cplx z, const LatticeContext& ctx,
                        const KIndex& k, cplx* dphi = nullptr);

// Complete reducibility of the attached operator.
struct MonodromyClass {
    enum Tag { CompletelyReducible, NotCompletelyReducible } tag;
    cplx r, s; // data for the reducible case; the half-integer class otherwise
};
MonodromyClass classify_point(const SpectralPoint& P, const LatticeContext& ctx, const KIndex& k);

} // namespace hecke

#endif
