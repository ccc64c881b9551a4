// Serial vs OpenMP batch membership over a large synthetic log.
//
//   bench_membership [trace_count] [max_len] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "arm/emergence.hpp"
#include "arm/rng.hpp"
#include "arm/scenario_gen.hpp"

int main(int argc, char** argv) {
    const std::size_t count = argc > 1 ? std::stoul(argv[1]) : 200'000;
    const std::size_t max_len = argc > 2 ? std::stoul(argv[2]) : 16;
    const int repeats = argc > 3 ? std::stoi(argv[3]) : 5;

    arm::ScenarioConfig cfg;
    cfg.seed = 7;
    cfg.alphabet_size = 5;
    cfg.states_per_model = 8;
    const arm::ModelChain chain = arm::gen_chain(cfg);

    arm::Rng rng(11);
    std::vector<arm::Trace> traces(count);
    for (auto& t : traces) {
        const auto len = rng.below(max_len + 1);
        for (std::size_t i = 0; i < len; ++i) t.push_back(static_cast<arm::Symbol>(rng.below(cfg.alphabet_size)));
    }

    using clock = std::chrono::steady_clock;
    auto time = [&](auto&& kernel) {
        double best = 1e300;
        std::vector<arm::MembershipVector> result;
        for (int r = 0; r < repeats; ++r) {
            const auto t0 = clock::now();
            result = kernel(traces, chain);
            best = std::min(best, std::chrono::duration<double, std::milli>(clock::now() - t0).count());
        }
        return std::pair{best, result};
    };

    const auto [serial_ms, serial] = time(arm::membership_vectors_serial);
    const auto [parallel_ms, parallel] = time(arm::membership_vectors_parallel);

    std::cout << "traces " << count << ", max_len " << max_len << ", threads " << omp_get_max_threads() << '\n'
              << "serial   " << serial_ms << " ms\n"
              << "parallel " << parallel_ms << " ms\n"
              << "speedup  " << serial_ms / parallel_ms << '\n'
              << "outputs  " << (serial == parallel ? "identical" : "DIFFER") << '\n';
    return serial == parallel ? EXIT_SUCCESS : EXIT_FAILURE;
}
