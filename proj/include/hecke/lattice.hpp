#ifndef HECKE_LATTICE_HPP
#define HECKE_LATTICE_HPP

#include "hecke/config.hpp"
#include "hecke/numeric.hpp"

#include <array>

namespace hecke {

// Modulus of the torus C / (Z + tau Z). Im tau > 0 enforced at construction.
struct Tau {
    cplx value;
    explicit Tau(cplx v) : value(v) {
        if (!(v.imag() > 0.0))
            throw domain_inconsistency("Tau: Im tau must be positive");
    }
};

// Integer matrix (a b; c d) with det = 1 acting on the upper half plane.
struct GammaMatrix {
    long a = 1, b = 0, c = 0, d = 1;
    GammaMatrix() = default;
    GammaMatrix(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1)
            throw domain_inconsistency("GammaMatrix: determinant must be 1");
    }
    GammaMatrix inverse() const { return GammaMatrix(d, -b, -c, a); }
    cplx apply(cplx tau) const {
        return (cplx(double(a)) * tau + double(b)) / (cplx(double(c)) * tau + double(d));
    }
    cplx factor(cplx tau) const { return cplx(double(c)) * tau + double(d); }
    friend GammaMatrix operator*(const GammaMatrix& x, const GammaMatrix& y) {
        return GammaMatrix(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                           x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }
};

// Reduce tau into the standard fundamental domain |Re| <= 1/2, |tau| >= 1.
// Returns gamma with gamma(tau) reduced.
GammaMatrix reduce_to_fundamental(cplx tau, cplx* reduced);

// Weierstrass data at one point, all orders produced in a single series pass.
struct WeierstrassEval {
    cplx p;      // wp
    cplx dp;     // wp'
    cplx d2p;    // wp''
    cplx zeta;
    cplx sigma;
};

// Quarter-period constants zeta, wp, wp', wp'' at omega_k/4 (k = 1, 2, 3).
struct QuarterTuple {
    cplx zeta, p, dp, d2p;
};

// Immutable evaluation environment for one torus. Construction reduces tau
// modularly so every series below runs at |q| <= e^{-pi sqrt(3)}; values are
// transported back to the requested tau by the weight factors of wp, zeta,
// sigma and the eta transformation law.
class LatticeContext {
public:
    explicit LatticeContext(Tau tau, NumericConfig cfg = {});

    const cplx tau;      // requested modulus
    const cplx q;        // nome e^{2 pi i tau}
    cplx eta1, eta2, eta3;
    cplx e1, e2, e3;
    cplx g2, g3;
    std::array<QuarterTuple, 3> quarter; // index k-1
    bool precision_warning = false;      // set when Im tau is extremely small

    const NumericConfig& config() const { return cfg_; }

    cplx ek(int k) const;                 // k in {1,2,3}
    cplx etak(int k) const;               // eta_1, eta_2, eta_3
    cplx half_period(int k) const;        // omega_k / 2
    const QuarterTuple& quarter_tuple(int k) const { return quarter[size_t(k - 1)]; }

    // Point evaluations on the original lattice Z + tau Z.
    // wp/wp'/wp''/zeta refuse points within pole_floor of the lattice.
    WeierstrassEval eval(cplx z) const;
    cplx wp(cplx z) const { return eval(z).p; }
    cplx wp_prime(cplx z) const { return eval(z).dp; }
    cplx wp_second(cplx z) const { return eval(z).d2p; }
    cplx zeta_w(cplx z) const { return eval(z).zeta; }
    cplx sigma_w(cplx z) const;           // entire; no pole guard

    // z = alpha + beta tau with alpha, beta real.
    void lattice_coords(cplx z, double* alpha, double* beta) const;
    // Distance to the nearest lattice point (in the lattice frame metric).
    double lattice_distance(cplx z) const;

    // Reduced frame internals, exposed for the Hecke layer.
    cplx reduced_tau() const { return tau_red_; }
    const GammaMatrix& reduction() const { return gamma_; }

private:
    NumericConfig cfg_;
    cplx tau_red_;       // gamma(tau), in the fundamental domain
    GammaMatrix gamma_;
    cplx scale_;         // c tau + d of the reduction
    cplx p_red_;         // half nome e^{pi i tau_red}
    cplx eta1_red_, eta2_red_;
    cplx sigma_norm_red_; // 1 / (pi * theta_1'(0)) at the reduced modulus

    // sign * exp(expo) * f(z0) corrections of one argument reduction.
    struct Reduction {
        cplx z0;
        long m, n;
    };
    Reduction reduce_point(cplx z, cplx tau) const;
    WeierstrassEval eval_reduced_frame(cplx w) const; // w already mod-reduced for tau_red_
};

} // namespace hecke

#endif
