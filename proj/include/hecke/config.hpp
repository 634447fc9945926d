#ifndef HECKE_CONFIG_HPP
#define HECKE_CONFIG_HPP

#include <string>

namespace hecke {

// Numeric knobs shared by every module. Loaded once (optionally from a
// "key = value" text file) and passed by const reference.
struct NumericConfig {
    // Relative truncation threshold for all q-series.
    double series_tol = 1e-18;
    // Newton stopping threshold on |f| (relative to scale).
    double newton_tol = 1e-12;
    // Relative tolerance of the adaptive ODE integrator.
    double ode_rtol = 1e-11;
    // |value| < zero_tol * (1 + scale) counts as zero.
    double zero_tol = 1e-8;
    // Lattice distance below which pole-adjacent evaluations are refused.
    double pole_floor = 1e-8;
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys throw.
NumericConfig load_config(const std::string& path);

} // namespace hecke

#endif
