#pragma once

#include <cstdint>
#include <vector>

#include "concord/affine.hpp"
#include "concord/circuit.hpp"
#include "concord/sample.hpp"

namespace concord {

struct GenSpec {
    std::size_t n = 4;
    std::size_t depth = 16;
    std::uint64_t seed = 1;

    enum class Init {
        kGeneric,    // all 2^n joint probabilities distinct (prime ratios)
        kWithTies,   // mix of 1/2 qubits, shared ratios and generic qubits
        kMixedPure,  // some qubits pinned to |0>
    };
    enum class Gates {
        kPermutationOnly,  // two-qubit label permutations only
        kLocalOnly,        // one-qubit unitaries only
        kMixed,            // random product-basis changes + label permutations
    };
    Init init = Init::kGeneric;
    Gates gates = Gates::kMixed;
};

// Concordant circuit with its construction ground truth. The circuit is
// concordant at every step by construction: each two-qubit gate is a label
// permutation conjugated into the current product frame. For
// kPermutationOnly with a canonical init, `perm` and `basis` match the
// converter output exactly; in general they agree up to per-label phase and
// degeneracy freedom, so tests compare through the output distribution.
struct ConcordantSample {
    Circuit circuit;
    AffineMap perm;
    std::vector<Mat2> basis;
};
ConcordantSample gen_concordant(const GenSpec& spec);

// Degeneracy class patterns on a qubit pair, by class-size multiset.
enum class DegPattern {
    kSingletons = 0,  // {1,1,1,1}
    kPairAndTwo,      // {2,1,1}
    kTwoPairs,        // {2,2}
    kTripleAndOne,    // {3,1}
    kAllFour,         // {4}
};

// Concordant circuit whose first two-qubit gate (on qubits 0, 1) meets the
// requested degeneracy pattern; requires n >= 2.
Circuit gen_degenerate(const GenSpec& spec, DegPattern pattern);

// Discordant circuit certified by the dense oracle: `first_discord` is the
// index of the first gate after which the state has nonzero discord.
// Requires 2 <= n <= kDenseMaxQubits; throws std::runtime_error if 100
// randomized attempts fail to certify.
struct DiscordantSample {
    Circuit circuit;
    std::size_t first_discord;
};
DiscordantSample gen_discordant(const GenSpec& spec);

// Uniform-ish random unitaries used by the generators (deterministic in rng).
Mat2 random_unitary2(CounterRng& rng);
Perm4 random_perm4(CounterRng& rng);

}
