// Batch membership of observed traces against the three phase models.
// The serial loop is the reference the OpenMP loop is tested against.

#include <cstdint>

#include "arm/emergence.hpp"

namespace arm {

namespace {

void require_alphabet(std::span<const Trace> traces, const ModelChain& chain) {
    const auto k = chain.alphabet().size();
    for (const auto& t : traces)
        for (Symbol s : t.events())
            if (s >= k) throw ForeignSymbolError("#" + std::to_string(s), "trace symbol index out of range");
}

}  // namespace

std::vector<MembershipVector> membership_vectors_serial(std::span<const Trace> traces, const ModelChain& chain) {
    std::vector<MembershipVector> out;
    out.reserve(traces.size());
    for (const auto& t : traces) out.push_back(membership_vector(t, chain));
    return out;
}

std::vector<MembershipVector> membership_vectors_parallel(std::span<const Trace> traces, const ModelChain& chain) {
    // Validate up front: nothing may throw out of the parallel region.
    require_alphabet(traces, chain);
    std::vector<MembershipVector> out(traces.size());
    const auto n = static_cast<std::int64_t>(traces.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) out[i] = membership_vector(traces[i], chain);
    return out;
}

}  // namespace arm
