// Times catalog verification with the serial reference path against the
// OpenMP row fan-out and reports the speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "crf/catalog.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double run(const crf::Catalog& cat, int samples, bool parallel, int reps, int* failures) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock::now();
        crf::CatalogReport rep = crf::verify_all(cat, samples, parallel);
        auto t1 = clock::now();
        *failures = rep.failures;
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int samples = argc > 1 ? std::atoi(argv[1]) : 20;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    const crf::Catalog& cat = crf::Catalog::builtin();

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("samples per family: %d, repetitions: %d (best time kept)\n", samples, reps);

    int fail_serial = 0, fail_parallel = 0;
    double ts = run(cat, samples, false, reps, &fail_serial);
    double tp = run(cat, samples, true, reps, &fail_parallel);
    std::printf("serial   : %8.3f ms  (%d failures)\n", 1e3 * ts, fail_serial);
    std::printf("parallel : %8.3f ms  (%d failures)\n", 1e3 * tp, fail_parallel);
    std::printf("speedup  : %.2fx\n", ts / tp);
    if (fail_serial != fail_parallel) {
        std::printf("mismatch between serial and parallel failure counts\n");
        return 1;
    }
    return 0;
}
