#ifndef HECKE_ZERO_ATLAS_HPP
#define HECKE_ZERO_ATLAS_HPP

#include "hecke/hecke_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hecke {

// Parallel/serial switch for the grid sweeps. Parallel uses OpenMP when the
// build has it and is bit-identical to Serial (independent iterations).
enum class Exec { Serial, Parallel };

// ---------------------------------------------------------------------------
// Regions of the torsion square.
// ---------------------------------------------------------------------------

enum class Region {
    Box,         // [0,1/2] x [0,1] minus half-integer pairs
    Delta0,      // 0 < r,s < 1/2, r+s > 1/2
    Delta1,      // 1/2 < r < 1, 0 < s < 1/2, r+s > 1
    Delta2,      // 1/2 < r < 1, 0 < s < 1/2, r+s < 1
    Delta3,      // 0 < r,s < 1/2, r+s < 1/2
    BoxM1,       // 0 < s <= 1/2, (1-s)/2 < r < 1/2 or 1/2 < r < (2-s)/2
    BoxM2,       // 0 < r < 1, 0 < s < 1/2, r + 2s > 1
    BoxM3,       // 0 < r,s < 1/2 with r < s, or Delta1
    HalfLatticePoint,
};

// All labels matched by the representative of (r,s) in [0,1)^2.
std::vector<Region> region_of(double r, double s);
bool in_region(double r, double s, Region reg);

// Reduce (r,s) mod +-(r,s)+Z^2 into the box r <= 1/2. Returns the sign
// (+1/-1) relating Z at the representative to Z at the input.
void box_representative(double r, double s, double* r0, double* s0, int* sign);

// Fundamental domains of the tau half plane.
bool in_F0(cplx tau, double tol = 1e-12);        // 0<=Re<=1, |tau-1/2|>=1/2
bool on_F0_boundary(cplx tau, double tol = 1e-9);
// Land tau in F = {0 <= Re < 1, |tau| >= 1, |tau-1| >= 1} (a subset of F0);
// returns gamma with gamma(tau) the representative.
GammaMatrix reduce_to_F0(cplx tau, cplx* reduced);

// ---------------------------------------------------------------------------
// tau-zeros of Z(r,s,.) in F0.
// ---------------------------------------------------------------------------

struct TauZero {
    cplx tau_star;
    double residual = 0.0;
    int newton_iterations = 0;
    cplx derivative_at_zero;
};

struct NoZeroCertificate {
    double grid_min = 0.0;      // min |Z| over the truncated-F0 scan
    bool inconclusive = false;  // grid_min inside the ambiguous band
};

struct TauZeroSearch {
    std::optional<TauZero> zero;
    NoZeroCertificate none; // populated when zero is absent
};

// Unique zero of Z(r,s,.) in F0 when the box representative lies in Delta0;
// otherwise a quantitative no-zero certificate from a truncated grid scan.
TauZeroSearch find_tau_zero(double r, double s, const NumericConfig& cfg = {},
                            std::optional<cplx> seed = std::nullopt);

// Newton in tau from an explicit seed; no domain policing.
std::optional<TauZero> newton_tau_zero(double r, double s, cplx seed,
                                       const NumericConfig& cfg);

// Zeros of the companion form Z^2 - wp + e_k in lambda_k F0 - beta_k,
// factor by factor. Each entry reports which factor produced it.
struct PremodularZero {
    TauZero zero;
    int factor = 0;             // 1 or 2
    double companion_residual = 0.0; // |Z^(m_k)| at the zero
};
std::vector<PremodularZero> tau_zero_premodular(double r, double s, const KIndex& k,
                                                const NumericConfig& cfg = {});

// ---------------------------------------------------------------------------
// Boundary asymptotics, degeneracy curves, membership.
// ---------------------------------------------------------------------------

enum class Cusp { Zero, One, Infinity };

enum class Delta0Edge { SHalf, RHalf, Diagonal }; // s=1/2, r=1/2, r+s=1/2

// Cusp reached by the zero as (r,s) in Delta0 approaches the given boundary
// point; verified by tracking the Newton zero along a short inward path.
Cusp asymptotic_check(double r0, double s0, Delta0Edge edge, const NumericConfig& cfg = {});

// Polyline of the Green-Hessian degeneracy curve C_i, traced by sign-change
// bisection of green_hessian_degeneracy over scan lines in F0. Scan lines
// with no sign change are skipped and reported in *excluded.
std::vector<cplx> trace_degenerate_curve(int i, int samples, const NumericConfig& cfg = {},
                                         std::vector<std::string>* excluded = nullptr,
                                         Exec exec = Exec::Parallel);

// Height b0 with 1/2 + i b0/2 on C_1: bisection of the i=1 functional along
// Re tau = 1/2, resolved to db accuracy.
double compute_b0(const NumericConfig& cfg = {}, double db = 1e-8);

// Is tau a modulus with a nontrivial Green critical point? Grid-seeded
// two-real-unknown Newton for Z(r,s,tau) = 0 over Delta0.
struct MembershipResult {
    bool inside = false;
    bool boundary = false;       // reduced tau sits on the F0 boundary
    bool inconclusive = false;   // grid min in the ambiguous band
    double min_abs = 0.0;        // smallest |Z| seen
    double witness_r = 0.0, witness_s = 0.0;
    double residual = 0.0;
    cplx reduced_tau;
    GammaMatrix reduction;
};
MembershipResult lambda_membership(cplx tau, const NumericConfig& cfg = {},
                                   Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// Atlas sampling (the data behind the picture of the zero region).
// ---------------------------------------------------------------------------

struct AtlasSample {
    double r = 0.0, s = 0.0;
    cplx tau;
    double residual = 0.0;
    bool ok = false;
};

// One sample per Delta0 grid node (n x n, interior offsets).
std::vector<AtlasSample> sample_lambda_grid(int n, const NumericConfig& cfg = {},
                                            Exec exec = Exec::Parallel);

void write_atlas_csv(const std::vector<AtlasSample>& samples, const std::string& path);
void write_atlas_svg(const std::vector<AtlasSample>& samples,
                     const std::vector<std::vector<cplx>>& curves, const std::string& path);

} // namespace hecke

#endif
