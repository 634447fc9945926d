#ifndef HECKE_HECKE_FORM_HPP
#define HECKE_HECKE_FORM_HPP

#include "hecke/lattice.hpp"

#include <optional>

namespace hecke {

// Index k in {1,2,3} selecting the half period omega_k/2. Carries the
// derived torsion shift (r,s) -> (r_k, s_k) and the (lambda_k, beta_k)
// rescaling of the zero domain.
struct KIndex {
    int k;
    explicit KIndex(int k_) : k(k_) {
        if (k < 1 || k > 3) throw domain_inconsistency("KIndex: k must be 1, 2 or 3");
    }
    void shift(double r, double s, double* rk, double* sk) const {
        *rk = (k == 1 || k == 3) ? r + 0.5 : r;
        *sk = (k == 2 || k == 3) ? s + 0.5 : s;
    }
    void shift(cplx r, cplx s, cplx* rk, cplx* sk) const {
        *rk = (k == 1 || k == 3) ? r + 0.5 : r;
        *sk = (k == 2 || k == 3) ? s + 0.5 : s;
    }
    double lambda() const { return k == 1 ? 0.5 : 2.0; }
    double beta() const { return k == 3 ? 1.0 : 0.0; }
};

// Z(r,s,tau) = zeta(r + s tau) - r eta_1 - s eta_2.
//
// Real pairs reduce mod Z^2 (Z is exactly Z^2-periodic in (r,s)) and go
// through the q-expansion; complex pairs use the zeta definition. Both
// paths are exposed for cross-checking.
cplx hecke_Z(cplx r, cplx s, const LatticeContext& ctx);
cplx hecke_Z(double r, double s, const LatticeContext& ctx);
cplx hecke_Z_zeta(cplx r, cplx s, const LatticeContext& ctx);
cplx hecke_Z_qseries(double r, double s, const LatticeContext& ctx);

// Context-free q-expansion evaluation for real pairs; the workhorse of the
// Newton-in-tau loops (no lattice constants are needed).
cplx hecke_Z_fast(double r, double s, cplx tau, double series_tol = 1e-18);

// d/dtau of Z(r,s,.) at fixed real (r,s), by high-order difference quotients.
cplx hecke_Z_dtau(double r, double s, cplx tau, const NumericConfig& cfg);

// Action of gamma on (r, s, tau): tau' = (a tau + b)/(c tau + d),
// (r', s') = (a r - b s, d s - c r), and Z(r',s',tau') = (c tau + d) Z(r,s,tau).
struct ModularImage {
    cplx r, s, tau, factor;
};
ModularImage modular_transform(cplx r, cplx s, const Tau& tau, const GammaMatrix& gamma);

// Index k with e_{k'}(gamma tau) = (c tau + d)^2 e_k(tau); a parity lookup
// on the entries of gamma.
int half_period_pullback(const GammaMatrix& gamma, int k_prime);

// Quadratic companion form Z^2 - wp(r + s tau) + e_k.
cplx premodular_Zmk(cplx r, cplx s, const LatticeContext& ctx, const KIndex& k);

// Z-polynomials of the one-singularity family: n = 1 -> Z,
// n = 2 -> Z^3 - 3 wp Z - wp', n = 3 -> the degree-six polynomial.
cplx premodular_Zn000(cplx r, cplx s, const LatticeContext& ctx, int n);

// Half-shift identities: residual of
//   Z(r, s+1/2) - Z(r, s) - wp'(z) / (2 (wp(z) - e_2))     (SShift)
//   Z(r+1/2, s) - Z(r, s) - wp'(z) / (2 (wp(z) - e_1))     (RShift)
// with z = r + s tau. Exact zero in exact arithmetic.
enum class HalfShift { SShift, RShift };
cplx translation_residual(cplx r, cplx s, const LatticeContext& ctx, HalfShift dir);

// -4 pi dG/dz at z = r + s tau (r, s recovered from z); equals Z(r,s,tau).
cplx green_gradient(cplx z, const LatticeContext& ctx);

// det D^2 G(omega_i/2 | tau) up to a positive factor:
//   (pi / Im tau)^2 - |e_i + eta_1 - pi / Im tau|^2.
// Obtained by differentiating Z(z, zbar) in z and zbar; vanishes exactly on
// the Green-function degeneracy locus of the half period omega_i/2.
double green_hessian_degeneracy(int i, const LatticeContext& ctx);

} // namespace hecke

#endif
