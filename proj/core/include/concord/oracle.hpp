#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "concord/circuit.hpp"
#include "concord/sample.hpp"
#include "concord/smallmat.hpp"

namespace concord {

// Size guard for the dense reference path.
inline constexpr std::size_t kDenseMaxQubits = 10;

class BoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Full density matrix, 2^n x 2^n row-major. Basis index: qubit 0 is the most
// significant bit, so |q0 q1 ...> reads left to right.
struct DenseState {
    std::size_t n = 0;
    std::vector<cplx> rho;

    static DenseState product_diag(const std::vector<Rat>& p0);

    cplx& at(std::size_t r, std::size_t c) { return rho[(r << n) | c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return rho[(r << n) | c]; }

    void apply_1q(const Mat2& g, std::size_t k);
    // matrix indexed 2*bit_k + bit_l for the pair as passed (any order, k != l)
    void apply_2q(const Mat4& g, std::size_t k, std::size_t l);

    double trace_real() const;
};

// Final state of the brute-force simulation.
DenseState dense_simulate(const Circuit& c);

// Visits the state after applying t gates, t = 0 (initial state) through
// gates.size(). Streaming variant so long circuits do not hold every state.
void dense_simulate_visit(const Circuit& c,
                          const std::function<void(const DenseState&, std::size_t)>& fn);

// All intermediate states [rho^0, rho^1, ...]; convenience for small circuits.
std::vector<DenseState> dense_simulate_states(const Circuit& c);

// Marginal distribution of a computational-basis measurement of `measured`.
Dist measurement_distribution(const DenseState& st, const std::vector<std::size_t>& measured);

struct ConcordanceReport {
    bool concordant = true;
    std::size_t worst_qubit = 0;
    double margin = 0;  // largest commutator-norm witness seen
};

// A state is concordant iff for every qubit the family of conditional
// operators (coefficient blocks of rho in any orthonormal basis of the rest)
// is pairwise commuting, i.e. all single-qubit Bloch vectors are parallel.
// Pairwise check when the family is small, largest-vector reference check
// otherwise.
ConcordanceReport concordance_report(const DenseState& st, double tol = 1e-8);
bool is_concordant(const DenseState& st, double tol = 1e-8);

// Index of the first gate after which the simulated state stops being
// concordant; nullopt when every prefix stays concordant.
std::optional<std::size_t> first_discord_step(const Circuit& c, double tol = 1e-8);

// Total variation distance between two outcome distributions over the same
// outcome space (keys of equal width; missing keys count as zero).
double tvd(const Dist& a, const Dist& b);

}
