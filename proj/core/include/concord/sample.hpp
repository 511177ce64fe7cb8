#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "concord/convert.hpp"

namespace concord {

// Counter-based splitmix64 stream: output i is a bijective mix of
// key + i * golden. Shot s of a run uses an independent substream derived
// from (seed, s), so shots can be reproduced individually.
struct CounterRng {
    std::uint64_t key = 0;
    std::uint64_t ctr = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    explicit CounterRng(std::uint64_t seed) : key(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}
    CounterRng(std::uint64_t seed, std::uint64_t shot)
        : key(mix(mix(seed ^ 0x9e3779b97f4a7c15ull) + (shot + 1) * 0x9e3779b97f4a7c15ull)) {}

    std::uint64_t next() { return mix(key + (++ctr) * 0x9e3779b97f4a7c15ull); }

    // 53-bit uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1p-53; }
};

// Outcome distribution keyed by bitstring over the measured qubits
// (ascending qubit index, leftmost character = smallest index).
using Dist = std::map<std::string, double>;

// Draws a label vector from the canonical initial distribution. Exact: the
// per-qubit Bernoulli comparison u < p * 2^64 is done in integer arithmetic.
// One draw per qubit, ascending.
BitVec sample_initial(const ProductState& rho, CounterRng& rng);

// One complete shot: draw i, permute j = P(i), then measure each requested
// qubit in its local basis (one draw per measured qubit, ascending).
// Returns the outcome bits packed ascending over `measured`.
std::string run_shot(const ConvertedProgram& prog, const ProductState& rho,
                     const std::vector<std::size_t>& measured, CounterRng& rng);

// Exact output distribution by label enumeration (2^n terms, then a local
// measurement channel per measured qubit). Throws std::invalid_argument when
// n exceeds enum_limit.
Dist exact_output_distribution(const ConvertedProgram& prog, const ProductState& rho,
                               const std::vector<std::size_t>& measured,
                               std::size_t enum_limit = 20);

}
