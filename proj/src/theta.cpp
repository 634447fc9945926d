#include "hecke/theta.hpp"

#include <cmath>

namespace hecke {

namespace {

// Shared series core; `prefactor` multiplies every term (either 2 q^{1/4}
// for the genuine theta or 1 for the scaled variant).
ThetaDerivs theta1_series(cplx v, cplx q, cplx prefactor, double tol, int max_terms) {
    if (std::abs(q) >= 1.0)
        throw domain_inconsistency("theta1: series requires |q| < 1");

    // q^{(n+1/2)^2} / q^{1/4} = q^{n(n+1)}, built multiplicatively.
    cplx qpow = prefactor; // current term weight
    cplx qstep = q * q;    // running q^{2n+2} factor: q^{n(n+1)} -> q^{(n+1)(n+2)}
    cplx q2n2 = qstep;     // q^{2(n+1)} for the next update

    // sin/cos((2n+1)v) by angle-addition with step 2v.
    cplx s = std::sin(v), c = std::cos(v);
    const cplx s2 = std::sin(2.0 * v), c2 = std::cos(2.0 * v);

    ThetaDerivs acc{0.0, 0.0, 0.0, 0.0, 0.0};
    double scale = 0.0;
    int quiet = 0;
    double sign = 1.0;

    for (int n = 0; n < max_terms; ++n) {
        const double m = 2.0 * n + 1.0;
        const cplx a = sign * qpow;
        // d^j/dv^j sin(mv) cycles sin -> cos -> -sin -> -cos with factor m^j.
        const cplx t0 = a * s;
        const cplx t1 = a * m * c;
        const cplx t2 = -a * m * m * s;
        const cplx t3 = -a * m * m * m * c;
        const cplx t4 = a * m * m * m * m * s;
        acc.d0 += t0;
        acc.d1 += t1;
        acc.d2 += t2;
        acc.d3 += t3;
        acc.d4 += t4;

        double tmag = std::max({std::abs(t0), std::abs(t1), std::abs(t2),
                                std::abs(t3), std::abs(t4)});
        scale = std::max(scale, tmag);
        if (tmag < tol * scale && scale > 0.0) {
            if (++quiet >= 2) return acc;
        } else {
            quiet = 0;
        }

        if (scale == 0.0 && n >= 3) return acc; // underflowed prefactor: limit is 0

        qpow *= q2n2;
        q2n2 *= qstep;
        sign = -sign;
        const cplx sn = s * c2 + c * s2;
        const cplx cn = c * c2 - s * s2;
        s = sn;
        c = cn;
        if (!std::isfinite(std::abs(qpow)))
            throw domain_inconsistency("theta1: series terms overflowed");
    }
    throw domain_inconsistency("theta1: series did not converge within term budget");
}

} // namespace

ThetaDerivs theta1_derivs_q4(cplx v, cplx q, cplx q4, double tol, int max_terms) {
    return theta1_series(v, q, 2.0 * q4, tol, max_terms);
}

ThetaDerivs theta1_scaled_derivs(cplx v, cplx q, double tol, int max_terms) {
    return theta1_series(v, q, cplx(1.0), tol, max_terms);
}

ThetaDerivs theta1_derivs(cplx v, cplx q, double tol) {
    return theta1_derivs_q4(v, q, std::pow(q, 0.25), tol);
}

cplx theta1(cplx v, cplx q, double tol) {
    return theta1_derivs(v, q, tol).d0;
}

ThetaOrigin theta1_at_zero(cplx q, double tol) {
    ThetaDerivs d = theta1_derivs(cplx(0.0, 0.0), q, tol);
    return ThetaOrigin{d.d1, d.d2, d.d3};
}

} // namespace hecke
