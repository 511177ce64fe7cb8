#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "concord/product_state.hpp"
#include "concord/rational.hpp"
#include "concord/smallmat.hpp"

namespace concord {

// Default gate-unitarity acceptance bound (max entry of U^dag U - I).
inline constexpr double kTolUnitary = 1e-9;

class CircuitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Gate {
    bool two = false;
    std::size_t k = 0, l = 0;  // l only for two-qubit gates; k < l always
    Mat2 m2;                   // valid when !two
    Mat4 m4;                   // valid when two, indexed 2*bit_k + bit_l
};

// A conventional computation: diagonal product input (exact rationals),
// one/two-qubit gates, terminal measurement of a subset of qubits.
struct Circuit {
    std::size_t n = 0;
    std::vector<Rat> init_p0;            // p_k(0); p_k(1) = 1 - p_k(0)
    std::vector<Gate> gates;
    std::vector<std::size_t> measured;   // sorted, unique

    ProductState product_state() const;  // canonicalized initial state
};

// Parses the JSON interchange document:
//   {
//     "qubits": 2,
//     "init": [[1,2],[2,3]],                 // p_k(0) as [num, den]
//     "gates": [{"q": 0, "m": "H"},
//               {"q": [0,1], "m": "CNOT"},
//               {"q": 1, "m": [[re,im], ...]}],   // row-major 2x2 or 4x4
//     "measure": [0,1]                       // optional, default all
//   }
// Named gates: X, H (one-qubit); SWAP, CNOT, CZ (two-qubit; CNOT control =
// first listed qubit). A two-qubit gate listed as [a, b] with a > b is
// normalized to (b, a) by conjugating the matrix with SWAP. Unknown top-level
// keys are ignored. Throws CircuitError with a position/index on bad input.
Circuit parse_circuit(const std::string& text, double tol_unitary = kTolUnitary);

// Emits the same document shape (matrices always explicit, measure always
// present). parse(serialize(c)) reproduces c exactly.
std::string serialize_circuit(const Circuit& c);

}
