#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace concord {

using cplx = std::complex<double>;

// Row-major 2x2 / 4x4 complex matrices. Two-qubit indices follow the label
// convention: row/column = 2*bit_k + bit_l for an ordered pair (k, l).
struct Mat2 {
    std::array<cplx, 4> a{};
    static Mat2 identity() { return Mat2{{1, 0, 0, 1}}; }
    cplx& at(int r, int c) { return a[2 * r + c]; }
    const cplx& at(int r, int c) const { return a[2 * r + c]; }
};

struct Mat4 {
    std::array<cplx, 16> a{};
    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
        return m;
    }
    cplx& at(int r, int c) { return a[4 * r + c]; }
    const cplx& at(int r, int c) const { return a[4 * r + c]; }
};

using Vec2 = std::array<cplx, 2>;
using Vec4 = std::array<cplx, 4>;

Mat2 mul(const Mat2&, const Mat2&);
Mat4 mul(const Mat4&, const Mat4&);
Mat2 adjoint(const Mat2&);
Mat4 adjoint(const Mat4&);
Mat4 kron(const Mat2& mk, const Mat2& ml);
Vec2 apply(const Mat2&, const Vec2&);
Vec4 apply(const Mat4&, const Vec4&);
Vec4 column(const Mat4&, int c);

cplx inner(const Vec2& a, const Vec2& b);  // conjugate-linear in a
cplx inner(const Vec4& a, const Vec4& b);
double norm(const Vec2&);
double norm(const Vec4&);
Vec4 tensor(const Vec2& left, const Vec2& right);

// max-entry norm of M^dag M - I
double unitarity_defect(const Mat2&);
double unitarity_defect(const Mat4&);

// Deterministic phase normalization: the largest-magnitude entry (lowest
// index on ties) is made real positive. Zero vectors pass through.
void canonical_phase(Vec2&);
void canonical_phase(Vec4&);

struct Eig2 {
    std::array<double, 2> values;            // ascending
    Mat2 vectors;                            // unit columns, canonical phase
    std::vector<std::vector<int>> groups;    // indices grouped within tol
};
struct Eig4 {
    std::array<double, 4> values;
    Mat4 vectors;
    std::vector<std::vector<int>> groups;
};

// Closed-form Hermitian 2x2 eigensolver / cyclic complex Jacobi for 4x4.
// Throws std::invalid_argument when the input is not Hermitian (within 1e-9).
Eig2 eig_hermitian(const Mat2& h, double tol_degeneracy);
Eig4 eig_hermitian(const Mat4& h, double tol_degeneracy);

struct ProductVector4 {
    Vec2 left, right;  // unit, canonical phase; left ⊗ right matches the
                       // input up to a global phase
};

// Splits a two-qubit vector into a tensor product when the 2x2 reshape has
// |det| <= tol_rank (entanglement measure); nullopt otherwise.
std::optional<ProductVector4> factor_product_vector(const Vec4& v, double tol_rank);

struct SubspaceProducts {
    bool continuum = false;                  // every vector in the span is product
    std::vector<ProductVector4> solutions;   // 0, 1 or 2; the canonical pair
                                             // when continuum
    bool orthogonal = false;                 // solutions.size() == 2 and mutually
                                             // orthogonal
};

// All product vectors in span{u, v} for orthonormal u, v: roots of the
// quadratic det(alpha U + beta V) = 0 over the projective line. When the
// quadratic vanishes identically the span has a common one-qubit factor and
// the canonical orthogonal pair aligned with the coordinate basis on the free
// slot is returned with the continuum flag.
SubspaceProducts product_pair_in_subspace(const Vec4& u, const Vec4& v, double tol);

// Unitary whose first column is w (normalized, canonical phase).
Mat2 complete_local_basis(const Vec2& w);

namespace gates {
Mat2 X();
Mat2 H();
Mat4 SWAP();
Mat4 CNOT();  // control = first qubit of the pair (high label bit)
Mat4 CZ();
// Rotation by theta inside the {01, 10} plane, identity on {00, 11}.
Mat4 partial_swap(double theta);
}

}
