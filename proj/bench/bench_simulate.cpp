// bench_simulate - serial reference vs OpenMP kernels for simulation and
// tallying. Usage: bench_simulate [trials] [shards] [repeats]
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "kolmo/simulate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
    const std::uint64_t shards = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 8;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

    kolmo::SimulationConfig cfg;
    cfg.angles = kolmo::AngleQuad::tsirelson();
    cfg.trials = trials;
    cfg.shards = shards;
    cfg.seed = 42;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "trials=" << trials << " shards=" << shards << " threads=" << threads << "\n";

    std::vector<kolmo::EventRecord> serial, parallel;
    const double t_ser = best_of(repeats, [&] { serial = kolmo::simulate_serial(cfg); });
    const double t_par = best_of(repeats, [&] { parallel = kolmo::simulate(cfg); });
    std::cout << "simulate  serial " << t_ser << " s   omp " << t_par << " s   speedup " << t_ser / t_par
              << (serial == parallel ? "   (streams identical)" : "   STREAMS DIFFER") << "\n";

    kolmo::CellTally a, b;
    const double c_ser = best_of(repeats, [&] { a = kolmo::tally_serial(serial); });
    const double c_par = best_of(repeats, [&] { b = kolmo::tally(serial); });
    std::cout << "tally     serial " << c_ser << " s   omp " << c_par << " s   speedup " << c_ser / c_par
              << (a == b ? "   (tallies identical)" : "   TALLIES DIFFER") << "\n";

    const auto rep = kolmo::estimate_from_tally(b, cfg.settings);
    std::cout << "SC_hat = " << *rep.schat << " +/- " << *rep.schat_stderr << "\n";
    return serial == parallel && a == b ? 0 : 1;
}
