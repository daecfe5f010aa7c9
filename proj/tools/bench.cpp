// Benchmark: serial reference implementations against the OpenMP kernels.
// Also reports the max relative deviation between the two, since the refs
// are the correctness baseline.

#include <chrono>
#include <cstdio>
#include <string>

#include "tfq/operators.hpp"
#include "tfq/parallel.hpp"
#include "tfq/ref.hpp"
#include "tfq/verify.hpp"

using namespace tfq;

namespace {

double now_ms() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clk::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(F&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

double tf_dev(const TFFunction& a, const TFFunction& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        num = std::max(num, std::abs(a.v[i] - b.v[i]));
        den = std::max(den, std::abs(a.v[i]));
    }
    return num / std::max(den, 1e-300);
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 64;
    int threads = configure_threads();
    std::printf("grid n=%d, threads=%d\n", n, threads);
    std::printf("%-22s %12s %12s %9s %12s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup", "max rel dev");

    Grid g = make_grid(n, 8.0 / n);
    verify::Rng rng(verify::kSeed);
    Signal f = verify::random_mixture(g, rng);
    Signal h = verify::random_mixture(g, rng);
    TFFunction sym = verify::random_symbol(g, rng, true);

    {
        TFFunction ref_out, par_out;
        double ts = time_ms([&] { ref_out = ref::gabor(f, h); }, 2);
        double tp = time_ms([&] { par_out = gabor(f, h); }, 5);
        std::printf("%-22s %12.2f %12.2f %8.1fx %12.2e\n", "gabor", ts, tp, ts / tp, tf_dev(ref_out, par_out));
    }
    {
        TFFunction ref_out, par_out;
        double ts = time_ms([&] { ref_out = ref::wigner(f, h); }, 2);
        double tp = time_ms([&] { par_out = wigner(f, h); }, 5);
        std::printf("%-22s %12.2f %12.2f %8.1fx %12.2e\n", "wigner", ts, tp, ts / tp, tf_dev(ref_out, par_out));
    }
    {
        TFFunction wigff = wigner(f, f);
        TFFunction ref_out, par_out;
        double ts = time_ms([&] { ref_out = ref::convolve_tf(sym, wigff); }, 1);
        double tp = time_ms([&] { par_out = convolve_tf(sym, wigff); }, 5);
        std::printf("%-22s %12.2f %12.2f %8.1fx %12.2e\n", "tf convolution", ts, tp, ts / tp,
                    tf_dev(ref_out, par_out));
    }
    {
        std::vector<cd> ref_m;
        OperatorMatrix par_m;
        double ts = time_ms([&] { ref_m = ref::weyl_matrix_entries(sym); }, 1);
        double tp = time_ms([&] { par_m = weyl_matrix(sym); }, 5);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ref_m.size(); ++i) {
            num = std::max(num, std::abs(ref_m[i] - par_m.m[i]));
            den = std::max(den, std::abs(ref_m[i]));
        }
        std::printf("%-22s %12.2f %12.2f %8.1fx %12.2e\n", "weyl matrix", ts, tp, ts / tp, num / den);
    }
    if (n <= 128) {
        TFFunction a = verify::random_symbol(g, rng, true);
        std::vector<cd> ref_m;
        OperatorMatrix par_m;
        double ts = time_ms([&] { ref_m = ref::localization_entries(a, f, h); }, 1);
        double tp = time_ms([&] { par_m = localization_matrix(a, f, h, LocPath::direct); }, 3);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ref_m.size(); ++i) {
            num = std::max(num, std::abs(ref_m[i] - par_m.m[i]));
            den = std::max(den, std::abs(ref_m[i]));
        }
        std::printf("%-22s %12.2f %12.2f %8.1fx %12.2e\n", "localization (direct)", ts, tp, ts / tp,
                    num / den);
    }
    return 0;
}
