#ifndef HECKE_THETA_HPP
#define HECKE_THETA_HPP

#include "hecke/numeric.hpp"

namespace hecke {

// Value of theta_1 and its v-derivatives through order 4 at one point:
//
//   theta_1(v, q) = 2 * sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) v).
//
// The series is cut once the remaining terms fall below tol relative to the
// running magnitude (DLMF 20.2.1 convention, argument v plain).
struct ThetaDerivs {
    cplx d0, d1, d2, d3, d4;
};

// q4 must equal q^{1/4}; the lattice layer computes it exactly from tau,
// the public wrapper uses the principal branch.
ThetaDerivs theta1_derivs_q4(cplx v, cplx q, cplx q4, double tol, int max_terms = 4000);

// theta_1 / (2 q^{1/4}) and derivatives: the prefactor cancels in every
// ratio the lattice layer forms, which keeps tiny nomes (very tall tori)
// clear of underflow.
ThetaDerivs theta1_scaled_derivs(cplx v, cplx q, double tol, int max_terms = 4000);

// Public entry points. |q| >= 1 throws domain_inconsistency.
ThetaDerivs theta1_derivs(cplx v, cplx q, double tol = 1e-18);
cplx theta1(cplx v, cplx q, double tol = 1e-18);

// Derivatives at v = 0 of orders 1..3 (even orders vanish by oddness).
struct ThetaOrigin {
    cplx d1, d2, d3;
};
ThetaOrigin theta1_at_zero(cplx q, double tol = 1e-18);

} // namespace hecke

#endif
