#ifndef HECKE_CLASSIFIER_HPP
#define HECKE_CLASSIFIER_HPP

#include "hecke/ode_oracle.hpp"
#include "hecke/zero_atlas.hpp"

#include <array>
#include <string>

namespace hecke {

// Sharp rectangle conditions on the four corner weights:
//   first:  (m1 + m2 - m0 - m3)/2 >= 1, m1 >= 1, m2 >= 1
//   second: (m1 + m2 - m0 - m3)/2 <= -1, m0 >= 1, m3 >= 1
struct ObstructionVerdict {
    std::array<long, 4> m{};
    bool holds_first = false;
    bool holds_second = false;
};
ObstructionVerdict rectangle_obstruction(const std::array<long, 4>& m);

// Verdict for one solution family at a torus.
struct FamilyVerdict {
    bool exists = false;
    bool inconclusive = false;
    bool boundary = false;       // reduced modulus on the F0 boundary
    cplx tau_domain;             // modulus at which the witness equation lives
    cplx tau_reduced;            // its F0 representative
    double witness_r = 0.0, witness_s = 0.0;   // in the reduced frame
    double original_r = 0.0, original_s = 0.0; // transported to tau_domain
    double residual = 0.0;       // |Z(witness)| in the reduced frame
    double min_abs = 0.0;        // grid minimum when no witness was found
};

struct ClassificationReport {
    cplx tau;
    int k = 1;
    FamilyVerdict even, noneven;
    std::string note;
    bool inconclusive() const { return even.inconclusive || noneven.inconclusive; }
};

// Six-way classification of the torus: an even family exists iff the zero
// region is hit at tau_k in {2 tau, tau/2, (1+tau)/2}; a non-even family
// exists iff it is hit at tau itself.
ClassificationReport classify_torus(cplx tau, int k, const NumericConfig& cfg = {},
                                    Exec exec = Exec::Parallel);

// End-to-end verification record for one torsion pair:
// locate the zero of the shifted Hecke form, exclude the even branch,
// solve the spectral curve, recover the data, and integrate the monodromy.
struct PipelineRecord {
    bool ok = false;
    std::string failed_stage;

    double r = 0.0, s = 0.0;
    int k = 1;
    double shifted_r = 0.0, shifted_s = 0.0; // box representative of (r_k, s_k)
    bool zero_exists = false;
    double none_grid_min = 0.0;

    cplx tau_star;
    double shifted_residual = 0.0;  // |Z(r_k, s_k, tau*)|
    double companion_abs = 0.0;     // |Z^(m_k)(r, s, tau*)|
    bool even_branch = false;       // companion vanished: the T = 0 configuration

    cplx T;
    double rs_roundtrip = 0.0;      // torus distance of recovered (r,s)
    double kappa_residual = 0.0;    // |kappa - Z(r,s,tau*)|
    double a_sum_residual = 0.0;    // |a1 + a2 - sigma|
    double constraint_residual = 0.0;

    cplx t1, t2;
    double trace_residual = 0.0;    // vs 2cos(2 pi s), 2cos(2 pi r)
    double commutator = 0.0;
    bool unitary = false;
};

PipelineRecord full_pipeline(double r, double s, int k, const NumericConfig& cfg = {},
                             std::optional<cplx> tau_seed = std::nullopt);

} // namespace hecke

#endif
