#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

#include "concord/bitvec.hpp"
#include "concord/product_state.hpp"

namespace concord {

// Permutation of the four two-bit labels of a qubit pair (k, l). Labels are
// encoded as 2*x_k + x_l. Every permutation of four labels is affine over
// GF(2)^2 (images XOR to zero and the two difference columns are linearly
// independent), so each one decomposes as y = M x + c.
struct Perm4 {
    std::array<std::uint8_t, 4> map{0, 1, 2, 3};

    static Perm4 identity() { return Perm4{}; }
    static Perm4 transposition(unsigned a, unsigned b);

    // The six transpositions in the fixed order used by degeneracy diagnosis.
    static const std::array<std::pair<unsigned, unsigned>, 6>& transposition_pairs();

    bool is_permutation() const;
    bool is_involution() const;
    unsigned apply(unsigned label) const { return map[label]; }

    struct Affine2 {
        // y_k = m00 x_k + m01 x_l + ck,  y_l = m10 x_k + m11 x_l + cl
        bool m00, m01, m10, m11, ck, cl;
    };
    Affine2 affine() const;

    bool operator==(const Perm4&) const = default;
};

// a ∘ b: apply b first, then a.
Perm4 perm_compose(const Perm4& a, const Perm4& b);

// Invertible affine map P(x) = A x + b on GF(2)^n, built up by composing
// two-qubit label permutations on the left (P <- R ∘ P). Maintains A, b and
// the inverse A^{-1} (stored column-wise), b_inv = A^{-1} b incrementally;
// each fold touches two rows of A and two columns of A^{-1}, O(n/64) words.
class AffineMap {
public:
    static AffineMap identity(std::size_t n);

    std::size_t size() const { return rows_.size(); }

    // P <- R ∘ P with R the local permutation r on qubits (k, l), k != l.
    void fold_local_perm(const Perm4& r, std::size_t k, std::size_t l);

    BitVec apply(const BitVec& v) const;
    BitVec apply_inverse(const BitVec& v) const;

    const BitVec& row(std::size_t i) const { return rows_[i]; }
    const BitVec& inv_col(std::size_t j) const { return inv_cols_[j]; }
    const BitVec& offset() const { return b_; }
    const BitVec& inv_offset() const { return b_inv_; }

    bool is_identity() const;

    bool operator==(const AffineMap&) const = default;

private:
    std::vector<BitVec> rows_;      // rows of A
    std::vector<BitVec> inv_cols_;  // columns of A^{-1}
    BitVec b_, b_inv_;
};

// Affine involution S(x) = x + delta * (<r, x> + c0), with <r, delta> = 0.
// Conjugating a two-bit label involution through an affine map always yields
// this rank-one form: M = I + delta r^T, c = c0 * delta.
class AffineInvolution {
public:
    AffineInvolution(BitVec delta, BitVec r, bool c0);

    std::size_t size() const { return delta_.size(); }
    const BitVec& delta() const { return delta_; }
    const BitVec& direction() const { return r_; }
    bool c0() const { return c0_; }

    BitVec apply(const BitVec& v) const {
        bool moved = r_.parity_and(v) ^ c0_;
        return moved ? v ^ delta_ : v;
    }
    bool moves(const BitVec& v) const { return r_.parity_and(v) ^ c0_; }

    BitVec matrix_row(std::size_t i) const;  // row i of M = I + delta r^T
    BitVec matrix_offset() const;            // c = c0 * delta

private:
    BitVec delta_, r_;
    bool c0_;
};

// S = P^{-1} ∘ Q ∘ P where Q is the label involution q on qubits (k, l).
// q must be an involution (identity, one of the 6 transpositions, or one of
// the 3 double transpositions).
AffineInvolution conjugated_involution(const AffineMap& P, const Perm4& q,
                                       std::size_t k, std::size_t l);

// Exact test of [S, rho] = 0 for a canonical diagonal product state: the
// state commutes with the involution iff p(v) = p(S(v)) for the all-zero
// vector and the n unit vectors. Equality of the rational products is decided
// without forming them in full: a moved vector v and S(v) differ only inside
// delta, so after cancelling the guaranteed-nonzero common factors the check
// reduces to membership of delta in the equal-probability mask plus, per
// moved unit vector m, the single identity e_m^2 = prod_{j in T} e_j over
// T = delta minus the tied qubits. Runs in O(n/64) words per call on the
// failing paths; the rare passing full products use integer arithmetic with
// a bit-length early exit.
bool commutes_with_product_state(const AffineInvolution& S, const ProductState& rho);

// Literal check of p(v) = p(S(v)) over all 2^n labels. Test oracle; requires
// n <= 20.
bool brute_force_commutes(const AffineInvolution& S, const ProductState& rho);

}
