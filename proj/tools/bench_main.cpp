// Timing comparison of the OpenMP production kernels against the serial
// reference implementations. Run manually:
//   ./bench [threads]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "logdiff/backlund.hpp"
#include "logdiff/grid.hpp"
#include "logdiff/inequalities.hpp"
#include "logdiff/parallel.hpp"
#include "logdiff/reference_kernels.hpp"
#include "logdiff/riesz.hpp"
#include "logdiff/spectral.hpp"

using namespace logdiff;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up (plans, caches)
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const std::string& name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-34s %10.3f %10.3f %8.2fx   %.3e\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, diff);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) par::set_threads(std::atoi(argv[1]));
    std::printf("threads: %d\n", par::max_threads());
    std::printf("%-34s %10s %10s %9s   %s\n", "kernel", "ref/ms", "prod/ms", "ratio",
                "max |diff|");

    for (int n : {512, 1024, 2048}) {
        Grid1D g = Grid1D::make(n, 30.0);
        Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
        Field a, b;
        double ts = time_ms([&] { a = ref::frac_laplacian_riesz(f, 1.0); }, 3);
        double tp = time_ms([&] { b = frac_laplacian_riesz(f, 1.0); }, 3);
        row("riesz_halflaplacian n=" + std::to_string(n), ts, tp, sup_diff(a, b));
    }

    {
        Grid1D g = Grid1D::make(2048, 30.0);
        Field f = Field::sample(g, [](double x) { return std::exp(-x * x) * std::sin(x); });
        Field a, b;
        double ts = time_ms([&] { a = ref::hilbert_pv(f); }, 3);
        double tp = time_ms([&] { b = hilbert_transform(f); }, 50);
        row("hilbert (cot-kernel vs fft)", ts, tp, sup_diff(a, b));
    }

    {
        Grid1D g = Grid1D::make(1024, 30.0);
        Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
        Field a, b;
        double ts = time_ms([&] { a = ref::frac_laplacian_dft(f, 1.0); }, 3);
        double tp = time_ms([&] { b = frac_laplacian_spectral(f, 1.0); }, 50);
        row("half-laplacian (dft vs fft)", ts, tp, sup_diff(a, b));
    }

    {
        Grid1D g = Grid1D::make(256, 30.0);
        Field u = Field::sample(g, [](double x) { return std::exp(-x * x); });
        TransportField tf = to_transport(u, 0.0);
        std::vector<double> out;
        double tp = time_ms([&] { out = modified_hilbert_direct(tf); }, 3);
        std::printf("%-34s %10s %10.3f\n", "modified_hilbert_direct n=256", "-", tp);
    }

    {
        std::vector<double> ag(1000), xg(1000);
        for (int i = 0; i < 1000; ++i) {
            ag[static_cast<size_t>(i)] = 30.0 * i / 999.0;
            xg[static_cast<size_t>(i)] = 10.0 * i / 999.0;
        }
        double m = 0.0;
        double tp = time_ms([&] { m = lemma_b1_worst_margin(ag, xg); }, 3);
        std::printf("%-34s %10s %10.3f %9s   margin %.3e\n", "lemma_b1 grid 1e6", "-", tp, "",
                    m);
    }
    return 0;
}
