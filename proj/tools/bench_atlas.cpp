// Timing comparison of the serial reference sweeps against the OpenMP
// versions: atlas grid sampling, membership scans, curve tracing.

#include "hecke/classifier.hpp"
#include "hecke/zero_atlas.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hecke;

namespace {

template <typename F>
double time_s(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int grid = argc > 1 ? std::atoi(argv[1]) : 20;
    NumericConfig cfg;
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not built in (parallel path falls back to serial)\n");
#endif

    std::vector<AtlasSample> a, b;
    const double t_serial = time_s([&] { a = sample_lambda_grid(grid, cfg, Exec::Serial); });
    const double t_par = time_s([&] { b = sample_lambda_grid(grid, cfg, Exec::Parallel); });
    bool same = a.size() == b.size();
    for (size_t i = 0; same && i < a.size(); ++i)
        same = a[i].ok == b[i].ok && (!a[i].ok || a[i].tau == b[i].tau);
    std::printf("atlas grid %dx%d (%zu zeros): serial %.3f s, parallel %.3f s, speedup %.2fx, identical %s\n",
                grid, grid, a.size(), t_serial, t_par, t_serial / t_par, same ? "yes" : "NO");

    const cplx tau(0.41, 1.27);
    MembershipResult ms, mp;
    const double m_serial = time_s([&] {
        for (int i = 0; i < 8; ++i) ms = lambda_membership(tau, cfg, Exec::Serial);
    });
    const double m_par = time_s([&] {
        for (int i = 0; i < 8; ++i) mp = lambda_membership(tau, cfg, Exec::Parallel);
    });
    std::printf("membership x8: serial %.3f s, parallel %.3f s, speedup %.2fx, identical %s\n",
                m_serial, m_par, m_serial / m_par,
                (ms.inside == mp.inside && ms.min_abs == mp.min_abs) ? "yes" : "NO");

    std::vector<cplx> cs, cp;
    const double c_serial =
        time_s([&] { cs = trace_degenerate_curve(1, 80, cfg, nullptr, Exec::Serial); });
    const double c_par =
        time_s([&] { cp = trace_degenerate_curve(1, 80, cfg, nullptr, Exec::Parallel); });
    std::printf("curve trace (80 lines): serial %.3f s, parallel %.3f s, speedup %.2fx, identical %s\n",
                c_serial, c_par, c_serial / c_par, cs == cp ? "yes" : "NO");
    return 0;
}
