#ifndef HECKE_NUMERIC_HPP
#define HECKE_NUMERIC_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace hecke {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const cplx iu{0.0, 1.0};

// Evaluation requested too close to a lattice pole.
class pole_error : public std::domain_error {
public:
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

// Input outside the convergence / validity domain of an operation.
class domain_inconsistency : public std::domain_error {
public:
    explicit domain_inconsistency(const std::string& what) : std::domain_error(what) {}
};

// Iteration failed to converge; carries the last iterate for diagnostics.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, cplx last)
        : std::runtime_error(what), last_iterate(last) {}
    cplx last_iterate;
};

inline double sq(double x) { return x * x; }
inline cplx sq(cplx x) { return x * x; }

// Distance of x to the nearest integer.
inline double frac_dist(double x) {
    double r = x - std::round(x);
    return std::abs(r);
}

// Reduce x into [0, 1).
inline double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0; // floor roundoff at negative near-integers
    return r;
}

// True when (r, s) is congruent to a half-integer pair mod Z^2.
inline bool half_integer_pair(double r, double s, double tol = 1e-12) {
    return frac_dist(2.0 * r) < 2.0 * tol && frac_dist(2.0 * s) < 2.0 * tol;
}

inline bool integer_pair(double r, double s, double tol = 1e-12) {
    return frac_dist(r) < tol && frac_dist(s) < tol;
}

// Distance between (r1,s1) and (r2,s2) on the torus (R/Z)^2.
inline double torus_dist(double r1, double s1, double r2, double s2) {
    double dr = frac_dist(r1 - r2);
    double ds = frac_dist(s1 - s2);
    return std::hypot(dr, ds);
}

} // namespace hecke

#endif
