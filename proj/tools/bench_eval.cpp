// Times the blocked OpenMP objective kernels against the serial reference
// on synthetic data and reports the largest deviation between the two paths.

#include <chrono>
#include <cstdio>
#include <memory>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "deam/objectives.hpp"

using namespace deam;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn, int iters) {
    fn(); // warm up
    const auto start = Clock::now();
    for (int i = 0; i < iters; ++i) fn();
    const std::chrono::duration<double, std::milli> ms = Clock::now() - start;
    return ms.count() / iters;
}

double max_abs_diff(const EvalResult& a, const EvalResult& b) {
    double worst = std::abs(a.loss - b.loss);
    for (std::size_t i = 0; i < a.grad.size(); ++i) {
        worst = std::max(worst, std::abs(a.grad[i] - b.grad[i]));
    }
    return worst;
}

void bench(const char* name, const Objective& obj, const ParamVector& w,
           const std::vector<std::size_t>& batch, int iters) {
    EvalResult parallel_result, serial_result;
    const double par_ms = time_ms([&] { parallel_result = obj.eval(w, batch); }, iters);
    const double ser_ms = time_ms([&] { serial_result = obj.eval_serial(w, batch); }, iters);
    std::printf("%-10s n=%-6zu dim=%-6zu serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx"
                "  max|diff| %.3e\n",
                name, batch.size(), w.size(), ser_ms, par_ms, ser_ms / par_ms,
                max_abs_diff(parallel_result, serial_result));
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled\n");
#endif

    const auto data = std::make_shared<const Dataset>(gen_blobs(20000, 50, 10, 8.0, 17));
    std::vector<std::size_t> full(data->n);
    std::iota(full.begin(), full.end(), std::size_t{0});
    Rng rng(99);

    LogisticRegressionObjective logreg(data);
    bench("logreg", logreg, logreg.sample_test_point(rng), full, 5);

    MlpObjective mlp(data, 64);
    bench("mlp", mlp, mlp.initial_point(7), full, 3);
    return 0;
}
