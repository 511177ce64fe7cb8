#pragma once

// Shared test helpers. Everything here is deliberately independent of the
// library's internals: dense GF(2) algebra as the replay oracle for
// AffineMap, mt19937-based randomness (not the library RNG), and dense
// density-matrix reconstructions for end-to-end checks.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "concord/affine.hpp"
#include "concord/bitvec.hpp"
#include "concord/convert.hpp"
#include "concord/oracle.hpp"
#include "concord/product_state.hpp"
#include "concord/sample.hpp"

namespace ct {

using namespace concord;

// ---- dense GF(2) affine algebra (replay oracle for AffineMap) ----

struct DenseAffine {
    std::size_t n = 0;
    std::vector<std::vector<int>> A;  // A[i][j]
    std::vector<int> b;

    static DenseAffine identity(std::size_t n) {
        DenseAffine d;
        d.n = n;
        d.A.assign(n, std::vector<int>(n, 0));
        d.b.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) d.A[i][i] = 1;
        return d;
    }

    // the local label permutation r on (k, l) as a dense affine map
    static DenseAffine local(const Perm4& r, std::size_t k, std::size_t l, std::size_t n) {
        DenseAffine d = identity(n);
        Perm4::Affine2 m = r.affine();
        d.A[k][k] = m.m00;
        d.A[k][l] = m.m01;
        d.A[l][k] = m.m10;
        d.A[l][l] = m.m11;
        d.b[k] = m.ck;
        d.b[l] = m.cl;
        return d;
    }

    // this ∘ inner (apply inner first)
    DenseAffine compose(const DenseAffine& inner) const {
        DenseAffine out = identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.b[i] = b[i];
            for (std::size_t j = 0; j < n; ++j) {
                int acc = 0;
                for (std::size_t t = 0; t < n; ++t) acc ^= A[i][t] & inner.A[t][j];
                out.A[i][j] = acc;
                out.b[i] ^= A[i][j] & inner.b[j];
            }
        }
        return out;
    }

    BitVec apply(const BitVec& v) const {
        BitVec out(n);
        for (std::size_t i = 0; i < n; ++i) {
            int acc = b[i];
            for (std::size_t j = 0; j < n; ++j) acc ^= A[i][j] & (v.get(j) ? 1 : 0);
            out.set(i, acc);
        }
        return out;
    }
};

inline bool same_map(const AffineMap& p, const DenseAffine& d) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.row(i).get(j) != (d.A[i][j] != 0)) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.offset().get(i) != (d.b[i] != 0)) return false;
    return true;
}

// ---- randomness (mt19937, independent of the library's CounterRng) ----

inline BitVec random_bits(std::mt19937_64& g, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, g() & 1);
    return v;
}

inline Perm4 random_perm(std::mt19937_64& g) {
    Perm4 p;
    std::shuffle(p.map.begin(), p.map.end(), g);
    return p;
}

// identity, one of 6 transpositions, or one of 3 double transpositions
inline Perm4 random_involution(std::mt19937_64& g) {
    switch (g() % 10) {
        case 0: return Perm4::identity();
        case 1: return Perm4{{1, 0, 3, 2}};  // swap l-bit
        case 2: return Perm4{{2, 3, 0, 1}};  // swap k-bit
        case 3: return Perm4{{3, 2, 1, 0}};  // swap both
        default: {
            const auto& pairs = Perm4::transposition_pairs();
            auto [a, b] = pairs[g() % 6];
            return Perm4::transposition(a, b);
        }
    }
}

// Random canonical product state: a mix of generic rationals, ties (1/2 and
// shared ratios) and pure qubits.
inline ProductState random_state(std::mt19937_64& g, std::size_t n, bool allow_ties = true,
                                 bool allow_pure = true) {
    std::vector<QubitProb> raw;
    raw.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rat p0;
        unsigned roll = static_cast<unsigned>(g() % 6);
        if (allow_pure && roll == 0) {
            p0 = make_rat(1, 1);
        } else if (allow_ties && roll == 1) {
            p0 = make_rat(1, 2);
        } else if (allow_ties && roll == 2) {
            p0 = make_rat(2, 3);
        } else {
            std::int64_t den = 3 + static_cast<std::int64_t>(g() % 97);
            std::int64_t num = 1 + static_cast<std::int64_t>(g() % (den - 1));
            while (!allow_ties && 2 * num == den)
                num = 1 + static_cast<std::int64_t>(g() % (den - 1));
            p0 = make_rat(num, den);
        }
        raw.push_back({p0, Rat(1) - p0});
    }
    return ProductState::canonicalize(raw);
}

inline AffineMap random_affine(std::mt19937_64& g, std::size_t n, int folds,
                               DenseAffine* dense_out = nullptr) {
    AffineMap p = AffineMap::identity(n);
    DenseAffine d = DenseAffine::identity(n);
    for (int i = 0; i < folds; ++i) {
        std::size_t k = g() % n;
        std::size_t l = g() % (n - 1);
        if (l >= k) ++l;
        Perm4 r = random_perm(g);
        p.fold_local_perm(r, k, l);
        d = DenseAffine::local(r, k, l, n).compose(d);
    }
    if (dense_out) *dense_out = d;
    return p;
}

// ---- distribution and dense-state comparison ----

inline double max_abs_delta(const Dist& a, const Dist& b) {
    double worst = 0;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, v] : b)
        if (!a.count(k)) worst = std::max(worst, std::abs(v));
    return worst;
}

struct Reconstruction {
    double offdiag = 0;    // max |off-diagonal| of U^dag sigma U
    double diag_err = 0;   // max |diag_j - joint(P^{-1}(j))|
};

// Final-state check: conjugating the dense final state by the converted
// basis must leave a diagonal matrix whose entries are the initial joint
// probabilities routed through P^{-1}.
inline Reconstruction reconstruct(const Circuit& c, const ConvertedProgram& prog) {
    DenseState st = dense_simulate(c);
    for (std::size_t k = 0; k < c.n; ++k) st.apply_1q(adjoint(prog.basis[k]), k);

    ProductState rho = c.product_state();
    Reconstruction r;
    std::size_t dim = std::size_t(1) << c.n;
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            if (row == col) continue;
            r.offdiag = std::max(r.offdiag, std::abs(st.at(row, col)));
        }
        BitVec j(c.n);
        for (std::size_t k = 0; k < c.n; ++k) j.set(k, (row >> (c.n - 1 - k)) & 1);
        double expect = rat_to_double(rho.joint_probability(prog.perm.apply_inverse(j)));
        r.diag_err = std::max(r.diag_err, std::abs(st.at(row, row).real() - expect));
    }
    return r;
}

}  // namespace ct
