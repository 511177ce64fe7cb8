#pragma once

#include <cstddef>
#include <vector>

#include "concord/bitvec.hpp"
#include "concord/rational.hpp"

namespace concord {

struct QubitProb {
    Rat p0, p1;
};

// Diagonal product state held in canonical orientation: p_k(0) >= p_k(1) for
// every qubit. `flips` records which qubits were relabelled (0 <-> 1) to get
// there. Only constructible through canonicalize(), so code taking a
// ProductState may assume canonical form.
class ProductState {
public:
    // Validates (entries nonnegative, each pair sums to 1) and flips qubits
    // with p1 > p0. Throws std::invalid_argument on a bad distribution.
    static ProductState canonicalize(const std::vector<QubitProb>& raw);

    std::size_t num_qubits() const { return probs_.size(); }
    const Rat& p0(std::size_t k) const { return probs_[k].p0; }
    const Rat& p1(std::size_t k) const { return probs_[k].p1; }
    bool is_pure(std::size_t k) const { return zero_.get(k); }

    const BitVec& flips() const { return flips_; }
    // Qubits with p0 == p1 == 1/2.
    const BitVec& half_mask() const { return half_; }
    // Qubits with p1 == 0.
    const BitVec& zero_mask() const { return zero_; }

    // e_k = p_k(1)/p_k(0), in [0, 1] by canonicality.
    const Rat& ratio(std::size_t k) const { return ratio_[k]; }

    // Joint probability of the label vector v under the canonical state.
    Rat joint_probability(const BitVec& v) const;

private:
    std::vector<QubitProb> probs_;
    std::vector<Rat> ratio_;
    BitVec flips_, half_, zero_;
};

}
