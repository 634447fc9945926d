#ifndef HECKE_TESTS_ORACLES_HPP
#define HECKE_TESTS_ORACLES_HPP

// Test-only reference implementations, kept independent of the q-series
// evaluation paths in the library: direct lattice sums (symmetric pairing,
// Richardson-extrapolated in the cutoff), brute-force theta partial sums,
// difference quotients, and the torus Green function.

#include "hecke/lattice.hpp"

#include <functional>
#include <random>

namespace hecke::oracle {

// Symmetric grouped lattice sums over |m|,|n| <= R, extrapolated R, 2R.
cplx wp_sum(cplx z, cplx tau, int R = 400);
cplx zeta_sum(cplx z, cplx tau, int R = 400);
cplx g2_sum(cplx tau, int R = 400);
cplx g3_sum(cplx tau, int R = 200);
cplx eta1_sum(cplx tau, int R = 400);

// Plain partial sum of the theta series, no convergence control.
cplx theta1_partial(cplx v, cplx q, int terms);

// Difference quotients for holomorphic functions (4th order, real step).
cplx diff1(const std::function<cplx(cplx)>& f, cplx z, double h);
cplx diff2(const std::function<cplx(cplx)>& f, cplx z, double h);

// Derivative of a holomorphic function by the trapezoid rule on a circle
// (spectrally accurate, no subtractive cancellation).
cplx cauchy_deriv(const std::function<cplx(cplx)>& f, cplx z, int order, double radius,
                  int nodes = 48);

// Torus Green function G(z|tau) (up to an additive constant) and its
// first derivative in z and real Hessian entries by finite differences.
double green_G(cplx z, const LatticeContext& ctx);
cplx green_G_dz(cplx z, const LatticeContext& ctx, double h = 1e-5);
void green_G_hessian(cplx z, const LatticeContext& ctx, double* gxx, double* gyy, double* gxy,
                     double h = 1e-4);

// Deterministic sample helpers.
inline double uniform(std::mt19937& rng, double a, double b) {
    return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}
cplx random_tau(std::mt19937& rng, double im_lo = 0.5, double im_hi = 2.2);
cplx random_cell_point(std::mt19937& rng, cplx tau, double margin = 0.08);

} // namespace hecke::oracle

#endif
