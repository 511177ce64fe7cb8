#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "concord/affine.hpp"
#include "concord/circuit.hpp"
#include "concord/smallmat.hpp"

namespace concord {

struct Tolerances {
    double unitary = 1e-9;     // unitarity defect bound
    double rank = 1e-8;        // |det| bound for product factorization
    double degeneracy = 1e-7;  // eigenvalue grouping width
    double edge = 1e-9;        // |amplitude|^2 threshold in the overlap graph
    double diag = 1e-8;        // off-diagonal bound when verifying a solve
    double parallel = 1e-8;    // 1 - |overlap| bound for parallel local factors
};

enum class DiscordReason {
    kNoProductEigenvector,      // a nondegenerate conditional eigenvector is entangled
    kNoProductPairInSubspace,   // a degenerate eigenspace admits no usable product pair
    kComponentCountMismatch,    // overlap graph component has unequal old/new counts
};
const char* to_string(DiscordReason r);

// Raised when a gate cannot be realized as permutation + product basis
// change, i.e. the computation leaves the concordant regime at that gate.
class DiscordError : public std::runtime_error {
public:
    DiscordError(DiscordReason reason, std::string detail, std::ptrdiff_t gate = -1);

    DiscordReason reason() const { return reason_; }
    const std::string& detail() const { return detail_; }
    std::ptrdiff_t gate() const { return gate_; }  // circuit gate index, -1 if unknown

private:
    DiscordReason reason_;
    std::string detail_;
    std::ptrdiff_t gate_;
};

// Partition of the four two-bit labels of a pair by equality of their
// conditional operators. Classes are ordered by smallest member.
class DegeneracyClasses {
public:
    // bits follow Perm4::transposition_pairs() order; must be an equivalence
    // relation (throws std::logic_error otherwise — the exact diagnosis can
    // not produce an intransitive relation unless the implementation is wrong)
    static DegeneracyClasses from_pairs(const std::array<bool, 6>& equal);
    static DegeneracyClasses all_singletons();
    static DegeneracyClasses all_equal();

    const std::vector<std::vector<unsigned>>& classes() const { return classes_; }
    int class_of(unsigned label) const { return of_[label]; }
    bool same(unsigned a, unsigned b) const { return of_[a] == of_[b]; }
    std::vector<std::size_t> sizes() const;

    bool operator==(const DegeneracyClasses&) const = default;

private:
    std::vector<std::vector<unsigned>> classes_;
    std::array<int, 4> of_{0, 1, 2, 3};
};

// Degeneracy diagnosis: for each transposition Q of the four labels of
// (k, l), the pair of conditional operators is equal iff the initial state
// commutes with P^{-1} Q P.
DegeneracyClasses diagnose_degeneracy(const AffineMap& P, const ProductState& rho,
                                      std::size_t k, std::size_t l);

struct LocalBasisPair {
    Mat2 vk, vl;
};

// Finds one-qubit unitaries V_k, V_l making (V_k ⊗ V_l)^dag H (V_k ⊗ V_l)
// diagonal, where H = sum_c (1 + c) W Pi_c W^dag encodes the conditional
// eigenstructure of the gate in the current frame. Throws DiscordError
// (gate = -1) when no such product basis exists.
LocalBasisPair solve_new_basis(const Mat4& w, const DegeneracyClasses& classes,
                               const Tolerances& tol = {});

// Matches old and new basis labels through the overlap graph
// O_ji = |<j|(V_k ⊗ V_l)^dag W|i>|^2: connected components must pair off old
// and new labels one-to-one (ascending within a component) and stay inside a
// single degeneracy class. Throws DiscordError (component-count-mismatch)
// otherwise.
Perm4 extract_permutation(const Mat4& w, const LocalBasisPair& basis,
                          const DegeneracyClasses& classes,
                          const Tolerances& tol = {});

struct AuditRecord {
    std::size_t gate;  // index into circuit.gates
    std::size_t k, l;
    DegeneracyClasses classes;
    Perm4 perm;
    Mat2 vk, vl;
};

struct ConvertedProgram {
    std::size_t n = 0;
    AffineMap perm;            // P, acting on canonical labels
    std::vector<Mat2> basis;   // final U_k (canonicalization flips folded in)
    BitVec flips;
    std::vector<AuditRecord> audit;  // one record per two-qubit gate
};

// Runs the conversion loop over the whole circuit. Throws DiscordError with
// the offending gate index when the circuit is not concordant, CircuitError
// on an invalid initial state.
ConvertedProgram convert(const Circuit& c, const Tolerances& tol = {});

// Deterministic JSON rendering of a converted program (used for audit
// byte-comparison and by the CLI).
std::string serialize_converted(const ConvertedProgram& prog);

}
