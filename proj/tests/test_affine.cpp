#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string_view>

#include "concord/affine.hpp"
#include "support.hpp"

using namespace concord;

namespace {

BitVec bits(std::string_view s) { return BitVec::from_string(s); }

// label permutations used repeatedly: SWAP exchanges 01 and 10, CNOT (control
// k) exchanges 10 and 11, NOT-l exchanges within both k rows
const Perm4 kSwap = Perm4::transposition(1, 2);
const Perm4 kCnot = Perm4::transposition(2, 3);
const Perm4 kNotL{{1, 0, 3, 2}};

}  // namespace

TEST_SUITE("affine") {

TEST_CASE("every label permutation is affine") {
    std::array<std::uint8_t, 4> m{0, 1, 2, 3};
    std::sort(m.begin(), m.end());
    do {
        Perm4 p{m};
        Perm4::Affine2 a = p.affine();
        for (unsigned x = 0; x < 4; ++x) {
            bool xk = (x >> 1) & 1, xl = x & 1;
            unsigned yk = (a.m00 & xk) ^ (a.m01 & xl) ^ a.ck;
            unsigned yl = (a.m10 & xk) ^ (a.m11 & xl) ^ a.cl;
            CHECK(p.apply(x) == 2 * yk + yl);
        }
    } while (std::next_permutation(m.begin(), m.end()));
}

TEST_CASE("affine coefficients of SWAP and CNOT") {
    Perm4::Affine2 s = kSwap.affine();
    CHECK((!s.m00 && s.m01 && s.m10 && !s.m11));  // A = [[0,1],[1,0]]
    CHECK((!s.ck && !s.cl));

    Perm4::Affine2 c = kCnot.affine();
    CHECK((c.m00 && !c.m01 && c.m10 && c.m11));   // A = [[1,0],[1,1]]
    CHECK((!c.ck && !c.cl));
}

TEST_CASE("fold composition: CNOT then NOT-l") {
    AffineMap p = AffineMap::identity(2);
    p.fold_local_perm(kCnot, 0, 1);
    p.fold_local_perm(kNotL, 0, 1);
    // same linear part as CNOT, offset gains the l flip
    CHECK(p.row(0) == bits("10"));
    CHECK(p.row(1) == bits("11"));
    CHECK(p.offset() == bits("01"));
    // full table of NOT-l ∘ CNOT
    CHECK(p.apply(bits("00")) == bits("01"));
    CHECK(p.apply(bits("01")) == bits("00"));
    CHECK(p.apply(bits("10")) == bits("10"));
    CHECK(p.apply(bits("11")) == bits("11"));
}

TEST_CASE("identity map basics") {
    AffineMap p = AffineMap::identity(3);
    CHECK(p.is_identity());
    CHECK(p.apply(bits("101")) == bits("101"));
    AffineMap q = AffineMap::identity(1);
    CHECK(q.apply_inverse(bits("1")) == bits("1"));
}

TEST_CASE("CNOT fold maps 10 to 11") {
    AffineMap p = AffineMap::identity(2);
    p.fold_local_perm(kCnot, 0, 1);
    CHECK(p.apply(bits("10")) == bits("11"));
}

TEST_CASE("random folds match the dense replay oracle") {
    std::mt19937_64 g(2024);
    for (int rep = 0; rep < 10; ++rep) {
        ct::DenseAffine dense;
        AffineMap p = ct::random_affine(g, 16, 50, &dense);
        CHECK(ct::same_map(p, dense));
        for (int t = 0; t < 100; ++t) {
            BitVec v = ct::random_bits(g, 16);
            CHECK(p.apply(v) == dense.apply(v));
            CHECK(p.apply_inverse(p.apply(v)) == v);
        }
    }
}

TEST_CASE("inverse data is the true matrix inverse") {
    std::mt19937_64 g(5);
    AffineMap p = ct::random_affine(g, 24, 80);
    // rows of A times columns of A^{-1} must give the identity
    for (std::size_t i = 0; i < 24; ++i)
        for (std::size_t j = 0; j < 24; ++j)
            CHECK(p.row(i).parity_and(p.inv_col(j)) == (i == j));
    // b_inv = A^{-1} b: apply_inverse(b) must vanish
    CHECK(p.apply_inverse(p.offset()).none());
}

TEST_CASE("bijectivity on the sampled domain") {
    std::mt19937_64 g(77);
    AffineMap p = ct::random_affine(g, 40, 120);
    std::set<std::string> images;
    for (int t = 0; t < 1000; ++t) {
        BitVec v = ct::random_bits(g, 40);
        BitVec w = p.apply(v);
        CHECK(p.apply_inverse(w) == v);
        images.insert(w.to_string() + "|" + v.to_string());
    }
    // injectivity: distinct inputs cannot map to one output
    std::set<std::string> outs, ins;
    for (const auto& s : images) {
        auto cut = s.find('|');
        outs.insert(s.substr(0, cut));
        ins.insert(s.substr(cut + 1));
    }
    CHECK(outs.size() == ins.size());
}

TEST_CASE("conjugated involution: identity frame, swap of 00 and 01") {
    AffineMap p = AffineMap::identity(2);
    AffineInvolution s = conjugated_involution(p, Perm4::transposition(0, 1), 0, 1);
    // S(x0, x1) = (x0, x1 ^ x0 ^ 1): moves exactly the x0 = 0 labels
    CHECK(s.apply(bits("00")) == bits("01"));
    CHECK(s.apply(bits("01")) == bits("00"));
    CHECK(s.apply(bits("10")) == bits("10"));
    CHECK(s.apply(bits("11")) == bits("11"));
    CHECK(s.matrix_row(0) == bits("10"));   // row 0 of I + delta r^T
    CHECK(s.matrix_row(1) == bits("11"));
    CHECK(s.matrix_offset() == bits("01"));
}

TEST_CASE("conjugated involution: swap of 00 and 11") {
    AffineMap p = AffineMap::identity(2);
    AffineInvolution s = conjugated_involution(p, Perm4::transposition(0, 3), 0, 1);
    // S(x0, x1) = (x1 ^ 1, x0 ^ 1)
    for (unsigned x = 0; x < 4; ++x) {
        BitVec v(2);
        v.set(0, (x >> 1) & 1);
        v.set(1, x & 1);
        BitVec w = s.apply(v);
        CHECK(w.get(0) == !v.get(1));
        CHECK(w.get(1) == !v.get(0));
    }
}

TEST_CASE("conjugated involutions square to the identity") {
    std::mt19937_64 g(31);
    // exhaustive over all vectors at n = 12
    ct::DenseAffine dense;
    AffineMap p = ct::random_affine(g, 12, 60, &dense);
    for (int qi = 0; qi < 12; ++qi) {
        Perm4 q = ct::random_involution(g);
        AffineInvolution s = conjugated_involution(p, q, 3, 9);
        for (std::uint64_t x = 0; x < (1u << 12); ++x) {
            BitVec v = BitVec::from_uint(12, x);
            CHECK(s.apply(s.apply(v)) == v);
        }
    }
}

TEST_CASE("conjugated involution equals P^-1 Q P pointwise") {
    std::mt19937_64 g(13);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + g() % 9;
        ct::DenseAffine dense;
        AffineMap p = ct::random_affine(g, n, 30, &dense);
        std::size_t k = g() % n, l = g() % (n - 1);
        if (l >= k) ++l;
        Perm4 q = ct::random_involution(g);
        AffineInvolution s = conjugated_involution(p, q, k, l);
        for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
            BitVec v = BitVec::from_uint(n, x);
            // reference: y = P v; swap pair labels by q; back through P^{ -1}
            BitVec y = p.apply(v);
            unsigned label = (y.get(k) ? 2u : 0u) | (y.get(l) ? 1u : 0u);
            unsigned mapped = q.apply(label);
            y.set(k, (mapped >> 1) & 1);
            y.set(l, mapped & 1);
            CHECK(s.apply(v) == p.apply_inverse(y));
        }
    }
}

TEST_CASE("commute check: identity involution always commutes") {
    std::mt19937_64 g(3);
    AffineMap p = AffineMap::identity(4);
    AffineInvolution s = conjugated_involution(p, Perm4::identity(), 1, 2);
    ProductState rho = ct::random_state(g, 4);
    CHECK(commutes_with_product_state(s, rho));
}

TEST_CASE("commute check: swap on unequal biases fails") {
    std::vector<QubitProb> raw{{make_rat(1, 2), make_rat(1, 2)},
                               {make_rat(3, 4), make_rat(1, 4)}};
    ProductState rho = ProductState::canonicalize(raw);
    AffineMap p = AffineMap::identity(2);
    AffineInvolution s = conjugated_involution(p, kSwap, 0, 1);
    CHECK(!commutes_with_product_state(s, rho));
    CHECK(!brute_force_commutes(s, rho));
}

TEST_CASE("commute check: CNOT flip of a fair qubit commutes") {
    std::vector<QubitProb> raw{{make_rat(3, 4), make_rat(1, 4)},
                               {make_rat(1, 2), make_rat(1, 2)}};
    ProductState rho = ProductState::canonicalize(raw);
    AffineMap p = AffineMap::identity(2);
    AffineInvolution s = conjugated_involution(p, kCnot, 0, 1);
    CHECK(commutes_with_product_state(s, rho));
    CHECK(brute_force_commutes(s, rho));
}

TEST_CASE("commute check: pure qubit vs bit flip") {
    std::vector<QubitProb> raw{{make_rat(1, 1), make_rat(0, 1)}};
    ProductState rho = ProductState::canonicalize(raw);
    AffineInvolution s(BitVec::unit(1, 0), BitVec(1), true);  // S(x) = x ^ 1
    CHECK(!commutes_with_product_state(s, rho));
    CHECK(!brute_force_commutes(s, rho));
}

TEST_CASE("fast commute test equals brute force") {
    std::mt19937_64 g(99);
    int checked = 0;
    while (checked < 600) {
        std::size_t n = 1 + g() % 12;
        ProductState rho = ct::random_state(g, n);
        AffineInvolution s = [&] {
            if (n < 2) {
                // direct rank-one involutions on one qubit
                bool has_delta = g() & 1;
                return AffineInvolution(has_delta ? BitVec::unit(1, 0) : BitVec(1), BitVec(1),
                                        g() & 1);
            }
            AffineMap p = ct::random_affine(g, n, 20);
            std::size_t k = g() % n, l = g() % (n - 1);
            if (l >= k) ++l;
            return conjugated_involution(p, ct::random_involution(g), k, l);
        }();
        CHECK(commutes_with_product_state(s, rho) == brute_force_commutes(s, rho));
        ++checked;
    }
}

}
