#ifndef HECKE_ODE_ORACLE_HPP
#define HECKE_ODE_ORACLE_HPP

#include "hecke/spectral.hpp"

#include <array>
#include <vector>

namespace hecke {

// Frobenius data of y'' = q y at one finite singularity (local exponents
// -1 and 2). The exponent -1 series y = sum c_m xi^{m-1}, c_0 = 1, extends
// past m = 3 exactly when the obstruction vanishes; c_3 is then set to 0.
struct FrobeniusReport {
    cplx singularity;          // -omega_k/4 or +omega_k/4 (shifted frame)
    cplx obstruction;          // proportional to T(T^2 - 2 eta_k T + 4E - 4 e_k)
    std::vector<cplx> coefficients; // c_0 .. c_6
};

std::array<FrobeniusReport, 2> frobenius_apparent(const LameParams& p,
                                                  const LatticeContext& ctx);

struct Mat2 {
    cplx m00, m01, m10, m11;
    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    double norm() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                    a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return Mat2{a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
    }
    Mat2 inverse() const {
        const cplx d = det();
        return Mat2{m11 / d, -m01 / d, -m10 / d, m00 / d};
    }
    Mat2 transpose() const { return Mat2{m00, m10, m01, m11}; }
};

// A path in the z plane: straight legs with circular detours inserted
// around any singularity closer than the clearance.
struct PathSegment {
    bool is_arc = false;
    cplx z0, z1;          // line endpoints
    cplx center;          // arc data
    double radius = 0.0, theta0 = 0.0, dtheta = 0.0;
};
std::vector<PathSegment> plan_path(cplx za, cplx zb, const LameParams& p,
                                   const LatticeContext& ctx, double clearance_scale = 0.08,
                                   double detour_scale = 0.05);

// Transport of the fundamental matrix (columns (y, y')) along a path by an
// adaptive embedded Runge-Kutta pair of order 5(4).
Mat2 integrate_transfer(const std::vector<PathSegment>& path, const LameParams& p,
                        const LatticeContext& ctx, Mat2 initial = Mat2{1, 0, 0, 1});

// Monodromy along the two fundamental cycles from the base point
// z0 = 0.31 + 0.43 tau (generic w.r.t. all singular translates).
struct CycleMonodromy {
    Mat2 M1, M2;          // in the base-point solution basis
    cplx t1, t2;          // traces (conjugation invariant)
    double commutator_norm = 0.0;
    double commutator_rel = 0.0; // normalized by ||M1|| ||M2||
    double det_error = 0.0;
};
CycleMonodromy integrate_monodromy(const LameParams& p, const LatticeContext& ctx,
                                   std::optional<cplx> base = std::nullopt);

// Monodromy of a small loop around one singular point.
Mat2 integrate_loop(const LameParams& p, const LatticeContext& ctx, cplx center,
                    double radius);

// Numerically decidable unitarity surrogate: both traces real in [-2, 2]
// and commuting cycle matrices, all within tol.
bool verify_unitary(const LameParams& p, const LatticeContext& ctx,
                    CycleMonodromy* out = nullptr, double tol = 1e-6);

} // namespace hecke

#endif
