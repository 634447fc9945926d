#include "hecke/zero_atlas.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hecke {

namespace {

constexpr double kGridTopIm = 6.0;     // truncation height of F0 scans
constexpr double kGridBotIm = 0.05;
constexpr double kNoneBand = 1e-3;     // grid min above this: definite none
constexpr double kInconclusiveBand = 1e-6;

bool in_open_unit(double x) { return x > 0.0 && x < 0.5; }

} // namespace

bool in_region(double r, double s, Region reg) {
    r = mod1(r);
    s = mod1(s);
    switch (reg) {
    case Region::Box:
        return r <= 0.5 && !half_integer_pair(r, s);
    case Region::Delta0:
        return in_open_unit(r) && in_open_unit(s) && r + s > 0.5;
    case Region::Delta1:
        return r > 0.5 && r < 1.0 && in_open_unit(s) && r + s > 1.0;
    case Region::Delta2:
        return r > 0.5 && r < 1.0 && in_open_unit(s) && r + s < 1.0;
    case Region::Delta3:
        return in_open_unit(r) && in_open_unit(s) && r + s < 0.5;
    case Region::BoxM1:
        return s > 0.0 && s <= 0.5 &&
               ((r > 0.5 * (1.0 - s) && r < 0.5) || (r > 0.5 && r < 0.5 * (2.0 - s)));
    case Region::BoxM2:
        return r > 0.0 && r < 1.0 && in_open_unit(s) && r + 2.0 * s > 1.0;
    case Region::BoxM3:
        return (in_open_unit(r) && in_open_unit(s) && r < s) || in_region(r, s, Region::Delta1);
    case Region::HalfLatticePoint:
        return half_integer_pair(r, s);
    }
    return false;
}

std::vector<Region> region_of(double r, double s) {
    std::vector<Region> out;
    for (Region reg : {Region::HalfLatticePoint, Region::Box, Region::Delta0, Region::Delta1,
                       Region::Delta2, Region::Delta3, Region::BoxM1, Region::BoxM2,
                       Region::BoxM3})
        if (in_region(r, s, reg)) out.push_back(reg);
    return out;
}

void box_representative(double r, double s, double* r0, double* s0, int* sign) {
    double ra = mod1(r), sa = mod1(s);
    if (ra <= 0.5 + 1e-15) {
        *r0 = ra;
        *s0 = sa;
        *sign = 1;
    } else {
        *r0 = mod1(-ra);
        *s0 = mod1(-sa);
        *sign = -1;
    }
}

bool in_F0(cplx tau, double tol) {
    return tau.imag() > 0.0 && tau.real() >= -tol && tau.real() <= 1.0 + tol &&
           std::abs(tau - 0.5) >= 0.5 - tol;
}

bool on_F0_boundary(cplx tau, double tol) {
    if (!in_F0(tau, tol)) return false;
    return std::abs(tau.real()) < tol || std::abs(tau.real() - 1.0) < tol ||
           std::abs(std::abs(tau - 0.5) - 0.5) < tol;
}

GammaMatrix reduce_to_F0(cplx tau, cplx* reduced) {
    cplx t;
    GammaMatrix g = reduce_to_fundamental(tau, &t);
    if (t.real() < 0.0) {
        t += 1.0;
        g = GammaMatrix(1, 1, 0, 1) * g;
    }
    if (reduced) *reduced = t;
    return g;
}

std::optional<TauZero> newton_tau_zero(double r, double s, cplx seed, const NumericConfig& cfg) {
    cplx t = seed;
    for (int it = 1; it <= 60; ++it) {
        if (!(t.imag() > 1e-4)) return std::nullopt;
        cplx f;
        try {
            f = hecke_Z_fast(r, s, t, cfg.series_tol);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        const cplx df = hecke_Z_dtau(r, s, t, cfg);
        if (std::abs(df) == 0.0) return std::nullopt;
        const cplx step = f / df;
        t -= step;
        if (std::abs(step) < cfg.newton_tol * (1.0 + std::abs(t)) || std::abs(f) < 1e-14) {
            if (!(t.imag() > 0.0) || t.imag() > 60.0) return std::nullopt;
            TauZero out;
            out.tau_star = t;
            out.residual = std::abs(hecke_Z_fast(r, s, t, cfg.series_tol));
            out.newton_iterations = it;
            out.derivative_at_zero = hecke_Z_dtau(r, s, t, cfg);
            if (out.residual > 1e-9) return std::nullopt;
            // Simple-zero certificate: Z decays without vanishing along the
            // cusps, and there residual and derivative shrink together; at a
            // genuine zero the derivative dominates by many orders.
            if (std::abs(out.derivative_at_zero) < std::max(1e3 * out.residual, 1e-12))
                return std::nullopt;
            return out;
        }
    }
    return std::nullopt;
}

namespace {

// Geometric ladder of scan heights covering the cusp neighbourhoods.
std::vector<double> im_ladder(double lo, double hi, int count) {
    std::vector<double> v(static_cast<size_t>(count), 0.0);
    const double ratio = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) v[size_t(i)] = lo * std::exp(ratio * i);
    return v;
}

struct GridScan {
    double min_abs = 1e300;
    std::vector<std::pair<double, cplx>> best; // |Z|, tau; ascending
};

GridScan scan_F0(double r, double s, int nx, int ny, double lo = kGridBotIm,
                 double hi = kGridTopIm) {
    GridScan out;
    const std::vector<double> ys = im_ladder(lo, hi, ny);
    for (int i = 0; i < nx; ++i) {
        const double x = (i + 0.5) / nx;
        for (double y : ys) {
            const cplx t(x, y);
            if (std::abs(t - 0.5) < 0.5) continue;
            double a;
            try {
                a = std::abs(hecke_Z_fast(r, s, t, 1e-14));
            } catch (const std::exception&) {
                continue;
            }
            out.min_abs = std::min(out.min_abs, a);
            out.best.emplace_back(a, t);
        }
    }
    std::sort(out.best.begin(), out.best.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    if (out.best.size() > 48) out.best.resize(48);
    return out;
}

} // namespace

TauZeroSearch find_tau_zero(double r, double s, const NumericConfig& cfg,
                            std::optional<cplx> seed) {
    double r0, s0;
    int sgn;
    box_representative(r, s, &r0, &s0, &sgn);
    if (half_integer_pair(r0, s0))
        throw domain_inconsistency("find_tau_zero: (r,s) lies on the excluded half lattice");

    TauZeroSearch out;
    if (seed) {
        out.zero = newton_tau_zero(r0, s0, *seed, cfg);
        if (out.zero) return out;
    }

    if (in_region(r0, s0, Region::Delta0)) {
        GridScan scan = scan_F0(r0, s0, 24, 24, 0.1, kGridTopIm);
        int tried = 0;
        for (const auto& [a, t] : scan.best) {
            if (++tried > 40) break;
            auto z = newton_tau_zero(r0, s0, t, cfg);
            if (z && in_F0(z->tau_star, 1e-7)) {
                out.zero = z;
                return out;
            }
        }
        throw convergence_error("find_tau_zero: Newton failed from every seed cell",
                                scan.best.empty() ? cplx(0) : scan.best.front().second);
    }

    // Outside Delta0 the zero set misses F0; certify quantitatively.
    GridScan scan = scan_F0(r0, s0, 60, 60);
    out.none.grid_min = scan.min_abs;
    if (scan.min_abs <= kInconclusiveBand) {
        // A tiny grid value contradicts the region prediction; polish and
        // report it as a zero rather than hide it.
        auto z = newton_tau_zero(r0, s0, scan.best.front().second, cfg);
        if (z && in_F0(z->tau_star, 1e-7)) out.zero = z;
    }
    // For pairs on the triangle boundary the infimum of |Z| over F0 is 0
    // without being attained (the zero escapes to a cusp); anything below
    // the certification band stays inconclusive unless a zero was confirmed.
    out.none.inconclusive = !out.zero && scan.min_abs < kNoneBand;
    return out;
}

std::vector<PremodularZero> tau_zero_premodular(double r, double s, const KIndex& k,
                                                const NumericConfig& cfg) {
    r = mod1(r);
    s = mod1(s);
    std::vector<PremodularZero> out;

    // Factor pairs and the modulus map tau -> tau_hat of each factorization.
    double fr[2], fs[2];
    switch (k.k) {
    case 1: fr[0] = r; fs[0] = 0.5 * s; fr[1] = r; fs[1] = 0.5 * (s + 1.0); break;
    case 2: fr[0] = 0.5 * r; fs[0] = s; fr[1] = 0.5 * (r + 1.0); fs[1] = s; break;
    default: fr[0] = 0.5 * (r - s); fs[0] = s; fr[1] = 0.5 * (r - s + 1.0); fs[1] = s; break;
    }
    auto tau_from_hat = [&](cplx th) {
        switch (k.k) {
        case 1: return 0.5 * th;
        case 2: return 2.0 * th;
        default: return 2.0 * th - 1.0;
        }
    };

    for (int j = 0; j < 2; ++j) {
        double rr, ss;
        int sgn;
        box_representative(fr[j], fs[j], &rr, &ss, &sgn);
        if (half_integer_pair(rr, ss) || !in_region(rr, ss, Region::Delta0)) continue;
        TauZeroSearch res = find_tau_zero(rr, ss, cfg);
        if (!res.zero) continue;
        PremodularZero pz;
        pz.zero = *res.zero;
        pz.zero.tau_star = tau_from_hat(res.zero->tau_star);
        pz.factor = j + 1;
        LatticeContext ctx(Tau(pz.zero.tau_star), cfg);
        pz.companion_residual = std::abs(premodular_Zmk(cplx(r), cplx(s), ctx, k));
        out.push_back(pz);
    }
    return out;
}

Cusp asymptotic_check(double r0, double s0, Delta0Edge edge, const NumericConfig& cfg) {
    auto inward = [&](double t) -> std::pair<double, double> {
        switch (edge) {
        case Delta0Edge::SHalf: return {r0, 0.5 - t};
        case Delta0Edge::RHalf: return {0.5 - t, s0};
        default: return {r0 + 0.5 * t, s0 + 0.5 * t};
        }
    };
    std::optional<cplx> seed;
    cplx last;
    for (double t : {0.12, 0.08, 0.05, 0.03, 0.02}) {
        auto [rr, ss] = inward(t);
        TauZeroSearch res = find_tau_zero(rr, ss, cfg, seed);
        if (!res.zero)
            throw convergence_error("asymptotic_check: lost the zero along the path", last);
        last = res.zero->tau_star;
        seed = last;
    }
    const double d_inf = 1.0 / last.imag();
    const double d_zero = std::abs(last);
    const double d_one = std::abs(last - 1.0);
    if (d_inf <= d_zero && d_inf <= d_one) return Cusp::Infinity;
    return d_zero <= d_one ? Cusp::Zero : Cusp::One;
}

namespace {

// First sign change of f over the bracket ladder, bisected to xtol.
template <typename F>
std::optional<double> first_sign_change(F&& f, const std::vector<double>& xs, double xtol) {
    double fprev = f(xs.front());
    for (size_t i = 1; i < xs.size(); ++i) {
        double fx = f(xs[i]);
        if (fprev == 0.0) return xs[i - 1];
        if ((fprev < 0.0) != (fx < 0.0)) {
            double a = xs[i - 1], b = xs[i], fa = fprev;
            while (b - a > xtol) {
                double m = 0.5 * (a + b), fm = f(m);
                if (fm == 0.0) return m;
                if ((fa < 0.0) != (fm < 0.0)) b = m;
                else { a = m; fa = fm; }
            }
            return 0.5 * (a + b);
        }
        fprev = fx;
    }
    return std::nullopt;
}

double hessian_at(int i, cplx tau, const NumericConfig& cfg) {
    return green_hessian_degeneracy(i, LatticeContext(Tau(tau), cfg));
}

} // namespace

std::vector<cplx> trace_degenerate_curve(int i, int samples, const NumericConfig& cfg,
                                         std::vector<std::string>* excluded, Exec exec) {
    if (i < 1 || i > 3) throw domain_inconsistency("trace_degenerate_curve: i must be 1, 2 or 3");
    if (samples < 2) throw domain_inconsistency("trace_degenerate_curve: samples must be >= 2");

    std::vector<cplx> pts(size_t(samples), cplx(0, -1)); // Im<0 marks failure
    const double xtol = 1e-10;

    auto run_line = [&](int idx) {
        if (i == 1) {
            // C_1 joins the cusps 0 and 1: one crossing per vertical line.
            const double x = 0.03 + (0.97 - 0.03) * idx / double(samples - 1);
            const double circ = std::sqrt(std::max(0.0, 0.25 - sq(x - 0.5)));
            auto f = [&](double y) { return hessian_at(1, cplx(x, y), cfg); };
            auto ys = im_ladder(circ + 2e-3, 2.5, 40);
            if (auto y = first_sign_change(f, ys, xtol)) pts[size_t(idx)] = cplx(x, *y);
        } else {
            // The omega_2/2 locus runs from the cusp 1 up the right flank,
            // approaching Re = 1/2 from the right at large heights; the
            // omega_3/2 locus is its mirror (cusp 0 to infinity). One
            // crossing per horizontal line.
            const double y = 0.2 * std::pow(3.0 / 0.2, idx / double(samples - 1));
            auto f = [&](double x) {
                return hessian_at(i, cplx(i == 2 ? x : 1.0 - x, y), cfg);
            };
            std::vector<double> xs;
            xs.push_back(0.5 + 1e-6);
            for (int j = 1; j <= 60; ++j) xs.push_back(0.5 + (0.5 - 1e-4) * j / 60.0);
            if (auto x = first_sign_change(f, xs, xtol))
                pts[size_t(idx)] = cplx(i == 2 ? *x : 1.0 - *x, y);
        }
    };
    auto run = [&](int idx) noexcept {
        try {
            run_line(idx);
        } catch (const std::exception&) {
            // failure marker stays; the line is reported as excluded
        }
    };

    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int idx = 0; idx < samples; ++idx) run(idx);
    } else {
        for (int idx = 0; idx < samples; ++idx) run(idx);
    }

    std::vector<cplx> out;
    for (int idx = 0; idx < samples; ++idx) {
        if (pts[size_t(idx)].imag() > 0.0) out.push_back(pts[size_t(idx)]);
        else if (excluded)
            excluded->push_back("scan line " + std::to_string(idx) + ": no sign change");
    }
    return out;
}

double compute_b0(const NumericConfig& cfg, double db) {
    auto f = [&](double b) { return hessian_at(1, cplx(0.5, 0.5 * b), cfg); };
    double a = 1.0 + 1e-6, b = std::sqrt(3.0) - 1e-6;
    double fa = f(a), fb = f(b);
    if ((fa < 0.0) == (fb < 0.0))
        throw convergence_error("compute_b0: no sign change on (1, sqrt 3)", cplx(a, b));
    while (b - a > db) {
        double m = 0.5 * (a + b), fm = f(m);
        if ((fa < 0.0) != (fm < 0.0)) b = m;
        else { a = m; fa = fm; }
    }
    return 0.5 * (a + b);
}

MembershipResult lambda_membership(cplx tau, const NumericConfig& cfg, Exec exec) {
    MembershipResult out;
    cplx t = tau;
    GammaMatrix g;
    if (!in_F0(tau)) g = reduce_to_F0(tau, &t);
    out.reduced_tau = t;
    out.reduction = g;
    if (on_F0_boundary(t)) {
        out.boundary = true;
        out.min_abs = 1e300;
        return out;
    }

    const LatticeContext ctx{Tau(t), cfg};
    const int n = 48;
    struct Cell { double a, r, s; };
    std::vector<Cell> cells;
    cells.reserve(size_t(n) * n / 2);
    std::vector<double> mins;

    auto abs_Z = [&](double r, double s) { return std::abs(hecke_Z(r, s, ctx)); };

    std::vector<Cell> grid;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double r = 0.5 * (i + 0.5) / n, s = 0.5 * (j + 0.5) / n;
            if (r + s > 0.5) grid.push_back(Cell{0.0, r, s});
        }
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long idx = 0; idx < long(grid.size()); ++idx)
            grid[size_t(idx)].a = abs_Z(grid[size_t(idx)].r, grid[size_t(idx)].s);
    } else {
        for (auto& c : grid) c.a = abs_Z(c.r, c.s);
    }
    std::sort(grid.begin(), grid.end(), [](const Cell& x, const Cell& y) { return x.a < y.a; });
    out.min_abs = grid.empty() ? 1e300 : grid.front().a;

    // Two-real-unknown Newton on Z(r,s,t) = 0 from the best cells; the
    // Jacobian is exact: dZ/dr = -wp(z) - eta1, dZ/ds = -tau wp(z) - eta2.
    const int tries = std::min<size_t>(10, grid.size());
    for (int c = 0; c < tries; ++c) {
        double r = grid[size_t(c)].r, s = grid[size_t(c)].s;
        bool ok = false;
        for (int it = 0; it < 30; ++it) {
            cplx Z;
            try {
                Z = hecke_Z(r, s, ctx);
            } catch (const std::exception&) { break; }
            if (std::abs(Z) < 10.0 * cfg.newton_tol) { ok = true; break; }
            cplx p;
            try {
                p = ctx.wp(cplx(r) + cplx(s) * t);
            } catch (const std::exception&) { break; }
            const cplx Jr = -p - ctx.eta1, Js = -t * p - ctx.eta2;
            const double det = Jr.real() * Js.imag() - Js.real() * Jr.imag();
            if (det == 0.0) break;
            const double dr = (Z.real() * Js.imag() - Js.real() * Z.imag()) / det;
            const double ds = (Jr.real() * Z.imag() - Z.real() * Jr.imag()) / det;
            r -= dr;
            s -= ds;
            if (!(std::isfinite(r) && std::isfinite(s))) break;
            if (std::abs(dr) + std::abs(ds) > 2.0) break;
        }
        if (!ok) continue;
        double rr, ss;
        int sgn;
        box_representative(r, s, &rr, &ss, &sgn);
        if (!in_region(rr, ss, Region::Delta0)) continue;
        // Z vanishes identically at the trivial half-lattice pairs; Newton
        // runs that collapse onto them are artifacts, not witnesses.
        bool trivial = false;
        for (double cr : {0.0, 0.5})
            for (double cs : {0.0, 0.5})
                if (torus_dist(rr, ss, cr, cs) < 1e-7) trivial = true;
        if (trivial) continue;
        out.inside = true;
        out.witness_r = rr;
        out.witness_s = ss;
        out.residual = std::abs(hecke_Z(rr, ss, ctx));
        out.min_abs = std::min(out.min_abs, out.residual);
        return out;
    }
    out.inconclusive = out.min_abs < kNoneBand;
    return out;
}

std::vector<AtlasSample> sample_lambda_grid(int n, const NumericConfig& cfg, Exec exec) {
    std::vector<AtlasSample> samples;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            AtlasSample a;
            a.r = 0.5 * (i + 0.5) / n;
            a.s = 0.5 * (j + 0.5) / n;
            if (a.r + a.s > 0.5) samples.push_back(a);
        }
    auto run = [&](AtlasSample& a) {
        try {
            TauZeroSearch res = find_tau_zero(a.r, a.s, cfg);
            if (res.zero) {
                a.tau = res.zero->tau_star;
                a.residual = res.zero->residual;
                a.ok = true;
            }
        } catch (const std::exception&) {
            a.ok = false;
        }
    };
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long idx = 0; idx < long(samples.size()); ++idx) run(samples[size_t(idx)]);
    } else {
        for (auto& a : samples) run(a);
    }
    return samples;
}

void write_atlas_csv(const std::vector<AtlasSample>& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_atlas_csv: cannot open " + path);
    out << "r,s,tau_re,tau_im,residual\n";
    out.precision(15);
    for (const auto& a : samples) {
        if (!a.ok) continue;
        out << a.r << ',' << a.s << ',' << a.tau.real() << ',' << a.tau.imag() << ','
            << a.residual << '\n';
    }
}

void write_atlas_svg(const std::vector<AtlasSample>& samples,
                     const std::vector<std::vector<cplx>>& curves, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_atlas_svg: cannot open " + path);
    const double W = 640, H = 900, x0 = -0.15, x1 = 1.15, y0 = 0.0, y1 = 2.4;
    auto X = [&](double x) { return (x - x0) / (x1 - x0) * W; };
    auto Y = [&](double y) { return H - (y - y0) / (y1 - y0) * H; };
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    // F0 walls and the two boundary half circles.
    out << "<line x1='" << X(0) << "' y1='" << Y(0) << "' x2='" << X(0) << "' y2='" << Y(y1)
        << "' stroke='black' stroke-width='1'/>\n";
    out << "<line x1='" << X(1) << "' y1='" << Y(0) << "' x2='" << X(1) << "' y2='" << Y(y1)
        << "' stroke='black' stroke-width='1'/>\n";
    out << "<path d='M " << X(0) << ' ' << Y(0) << " A " << X(0.5) - X(0) << ' '
        << (Y(0) - Y(0.5)) << " 0 0 1 " << X(1) << ' ' << Y(0)
        << "' fill='none' stroke='black' stroke-width='1'/>\n";
    for (const auto& a : samples)
        if (a.ok)
            out << "<circle cx='" << X(a.tau.real()) << "' cy='" << Y(a.tau.imag())
                << "' r='1.4' fill='steelblue'/>\n";
    const char* colors[] = {"crimson", "darkgreen", "darkorange"};
    int ci = 0;
    for (const auto& curve : curves) {
        out << "<polyline fill='none' stroke='" << colors[ci % 3] << "' stroke-width='1.5' points='";
        for (const auto& t : curve) out << X(t.real()) << ',' << Y(t.imag()) << ' ';
        out << "'/>\n";
        ++ci;
    }
    out << "</svg>\n";
}

} // namespace hecke
