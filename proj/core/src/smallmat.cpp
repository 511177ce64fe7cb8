#include "concord/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace concord {

Mat2 mul(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = 0;
            for (int k = 0; k < 2; ++k) s += x.at(i, k) * y.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat4 mul(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0;
            for (int k = 0; k < 4; ++k) s += x.at(i, k) * y.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat2 adjoint(const Mat2& m) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.at(i, j) = std::conj(m.at(j, i));
    return r;
}

Mat4 adjoint(const Mat4& m) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = std::conj(m.at(j, i));
    return r;
}

Mat4 kron(const Mat2& mk, const Mat2& ml) {
    Mat4 r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    r.at(2 * a + c, 2 * b + d) = mk.at(a, b) * ml.at(c, d);
    return r;
}

Vec2 apply(const Mat2& m, const Vec2& v) {
    return {m.at(0, 0) * v[0] + m.at(0, 1) * v[1],
            m.at(1, 0) * v[0] + m.at(1, 1) * v[1]};
}

Vec4 apply(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

Vec4 column(const Mat4& m, int c) {
    return {m.at(0, c), m.at(1, c), m.at(2, c), m.at(3, c)};
}

cplx inner(const Vec2& a, const Vec2& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

cplx inner(const Vec4& a, const Vec4& b) {
    cplx s = 0;
    for (int i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

double norm(const Vec4& v) {
    double s = 0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

Vec4 tensor(const Vec2& l, const Vec2& r) {
    return {l[0] * r[0], l[0] * r[1], l[1] * r[0], l[1] * r[1]};
}

double unitarity_defect(const Mat2& m) {
    Mat2 g = mul(adjoint(m), m);
    double worst = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            worst = std::max(worst, std::abs(g.at(i, j) - (i == j ? cplx(1) : cplx(0))));
    return worst;
}

double unitarity_defect(const Mat4& m) {
    Mat4 g = mul(adjoint(m), m);
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(g.at(i, j) - (i == j ? cplx(1) : cplx(0))));
    return worst;
}

namespace {

template <std::size_t N>
void canonical_phase_impl(std::array<cplx, N>& v) {
    std::size_t best = 0;
    double mag = 0;
    for (std::size_t i = 0; i < N; ++i) {
        double m = std::abs(v[i]);
        if (m > mag + 1e-15) {
            mag = m;
            best = i;
        }
    }
    if (mag == 0) return;
    cplx ph = std::conj(v[best]) / mag;
    for (auto& x : v) x *= ph;
    v[best] = cplx(std::abs(v[best]), 0);  // kill residual imaginary dust
}

}  // namespace

void canonical_phase(Vec2& v) { canonical_phase_impl<2>(v); }
void canonical_phase(Vec4& v) { canonical_phase_impl<4>(v); }

namespace {

constexpr double kHermTol = 1e-9;

template <typename M, int N>
void require_hermitian(const M& h) {
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (std::abs(h.at(i, j) - std::conj(h.at(j, i))) > kHermTol)
                throw std::invalid_argument("eig_hermitian: input is not Hermitian");
}

std::vector<std::vector<int>> group_close(const double* vals, int n, double tol) {
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        if (!groups.empty() && vals[i] - vals[groups.back().back()] <= tol)
            groups.back().push_back(i);
        else
            groups.push_back({i});
    }
    return groups;
}

}  // namespace

Eig2 eig_hermitian(const Mat2& h, double tol_degeneracy) {
    require_hermitian<Mat2, 2>(h);
    double a = h.at(0, 0).real(), d = h.at(1, 1).real();
    cplx b = h.at(0, 1);
    Eig2 out;
    if (std::abs(b) < 1e-300) {
        // already diagonal
        if (a <= d) {
            out.values = {a, d};
            out.vectors = Mat2::identity();
        } else {
            out.values = {d, a};
            out.vectors = Mat2{{0, 1, 1, 0}};
        }
    } else {
        double mid = 0.5 * (a + d);
        double rad = std::hypot(0.5 * (a - d), std::abs(b));
        out.values = {mid - rad, mid + rad};
        for (int c = 0; c < 2; ++c) {
            double lam = out.values[c];
            // (H - lam) v = 0; pick the larger of the two row solutions
            Vec2 v1{b, cplx(lam - a)};
            Vec2 v2{cplx(lam - d), std::conj(b)};
            Vec2 v = norm(v1) >= norm(v2) ? v1 : v2;
            double nv = norm(v);
            v = {v[0] / nv, v[1] / nv};
            canonical_phase(v);
            out.vectors.at(0, c) = v[0];
            out.vectors.at(1, c) = v[1];
        }
    }
    out.groups = group_close(out.values.data(), 2, tol_degeneracy);
    return out;
}

Eig4 eig_hermitian(const Mat4& h, double tol_degeneracy) {
    require_hermitian<Mat4, 4>(h);
    Mat4 a = h;
    // hermitize exactly so the iteration sees a clean input
    for (int i = 0; i < 4; ++i) {
        a.at(i, i) = a.at(i, i).real();
        for (int j = i + 1; j < 4; ++j) {
            cplx avg = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = avg;
            a.at(j, i) = std::conj(avg);
        }
    }
    Mat4 v = Mat4::identity();

    double scale = 0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(a.at(i, i)));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(a.at(i, j)));
    if (scale == 0) scale = 1;

    // cyclic complex Jacobi sweeps
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a.at(p, q)));
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                cplx apq = a.at(p, q);
                double m = std::abs(apq);
                if (m <= 1e-18 * scale) continue;
                cplx eiphi = apq / m;
                double app = a.at(p, p).real(), aqq = a.at(q, q).real();
                double tau = (aqq - app) / (2 * m);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                double c = 1.0 / std::hypot(1.0, t);
                double s = t * c;
                // columns: col_p' = c*col_p - s*conj(eiphi)*col_q,
                //          col_q' = s*eiphi*col_p + c*col_q  (A <- A J)
                for (int j = 0; j < 4; ++j) {
                    cplx ajp = a.at(j, p), ajq = a.at(j, q);
                    a.at(j, p) = c * ajp - s * std::conj(eiphi) * ajq;
                    a.at(j, q) = s * eiphi * ajp + c * ajq;
                }
                // rows (A <- J^dag A)
                for (int j = 0; j < 4; ++j) {
                    cplx apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * eiphi * aqj;
                    a.at(q, j) = s * std::conj(eiphi) * apj + c * aqj;
                }
                a.at(p, q) = 0;
                a.at(q, p) = 0;
                a.at(p, p) = a.at(p, p).real();
                a.at(q, q) = a.at(q, q).real();
                for (int j = 0; j < 4; ++j) {
                    cplx vjp = v.at(j, p), vjq = v.at(j, q);
                    v.at(j, p) = c * vjp - s * std::conj(eiphi) * vjq;
                    v.at(j, q) = s * eiphi * vjp + c * vjq;
                }
            }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag;
    for (int i = 0; i < 4; ++i) diag[i] = a.at(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return diag[x] < diag[y]; });

    Eig4 out;
    for (int c = 0; c < 4; ++c) {
        out.values[c] = diag[order[c]];
        Vec4 col = column(v, order[c]);
        canonical_phase(col);
        for (int r = 0; r < 4; ++r) out.vectors.at(r, c) = col[r];
    }
    out.groups = group_close(out.values.data(), 4, tol_degeneracy);
    return out;
}

std::optional<ProductVector4> factor_product_vector(const Vec4& v, double tol_rank) {
    double nv = norm(v);
    if (nv == 0) throw std::invalid_argument("factor_product_vector: zero vector");
    Vec4 u{v[0] / nv, v[1] / nv, v[2] / nv, v[3] / nv};
    // reshape M[a][b] = u[2a+b]; |det| is the entanglement measure
    cplx det = u[0] * u[3] - u[1] * u[2];
    if (std::abs(det) > tol_rank) return std::nullopt;
    // rank-1: columns are proportional; take the heavier column as the left
    // factor and project out the right factor
    double n0 = std::norm(u[0]) + std::norm(u[2]);
    double n1 = std::norm(u[1]) + std::norm(u[3]);
    Vec2 left = n1 > n0 ? Vec2{u[1], u[3]} : Vec2{u[0], u[2]};
    double nl = norm(left);
    left = {left[0] / nl, left[1] / nl};
    Vec2 right{std::conj(left[0]) * u[0] + std::conj(left[1]) * u[2],
               std::conj(left[0]) * u[1] + std::conj(left[1]) * u[3]};
    double nr = norm(right);
    right = {right[0] / nr, right[1] / nr};
    canonical_phase(left);
    canonical_phase(right);
    return ProductVector4{left, right};
}

namespace {

constexpr double kQuadEps = 1e-10;   // coefficient scale for "vanishes"
constexpr double kParTol = 1e-8;     // |overlap| within this of 1 => parallel

cplx det2x2(cplx a, cplx b, cplx c, cplx d) { return a * d - b * c; }

Vec4 combine(cplx alpha, const Vec4& u, cplx beta, const Vec4& v) {
    Vec4 w;
    for (int i = 0; i < 4; ++i) w[i] = alpha * u[i] + beta * v[i];
    double n = norm(w);
    for (auto& x : w) x /= n;
    return w;
}

}  // namespace

SubspaceProducts product_pair_in_subspace(const Vec4& u, const Vec4& v, double tol) {
    if (std::abs(norm(u) - 1) > 1e-6 || std::abs(norm(v) - 1) > 1e-6 ||
        std::abs(inner(u, v)) > 1e-6)
        throw std::invalid_argument("product_pair_in_subspace expects an orthonormal pair");

    cplx a = det2x2(u[0], u[1], u[2], u[3]);
    cplx c = det2x2(v[0], v[1], v[2], v[3]);
    cplx b = det2x2(u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]) - a - c;

    SubspaceProducts out;
    if (std::abs(a) <= kQuadEps && std::abs(b) <= kQuadEps && std::abs(c) <= kQuadEps) {
        // the whole pencil is rank-1: common left or right factor
        out.continuum = true;
        auto fu = factor_product_vector(u, 1e-6);
        auto fv = factor_product_vector(v, 1e-6);
        if (!fu || !fv)
            throw std::logic_error("degenerate pencil with non-product basis vector");
        if (std::abs(inner(fu->left, fv->left)) >= 1 - kParTol) {
            // span = left ⊗ C^2: pair aligned with the coordinate basis
            out.solutions.push_back(ProductVector4{fu->left, Vec2{1, 0}});
            out.solutions.push_back(ProductVector4{fu->left, Vec2{0, 1}});
        } else {
            out.solutions.push_back(ProductVector4{Vec2{1, 0}, fu->right});
            out.solutions.push_back(ProductVector4{Vec2{0, 1}, fu->right});
        }
        out.orthogonal = true;
        return out;
    }

    // roots of a*alpha^2 + b*alpha*beta + c*beta^2 over the projective line
    std::vector<std::pair<cplx, cplx>> roots;
    if (std::abs(a) <= kQuadEps && std::abs(c) <= kQuadEps) {
        roots = {{1, 0}, {0, 1}};
    } else if (std::abs(a) <= kQuadEps) {
        roots.push_back({1, 0});
        if (std::abs(b) > kQuadEps) roots.push_back({-c, b});
    } else if (std::abs(c) <= kQuadEps) {
        roots.push_back({0, 1});
        if (std::abs(b) > kQuadEps) roots.push_back({-b, a});
    } else {
        cplx disc = b * b - 4.0 * a * c;
        double dscale = std::abs(b * b) + 4.0 * std::abs(a * c);
        if (std::abs(disc) <= 1e-12 * dscale) {
            roots.push_back({-b, 2.0 * a});  // double root
        } else {
            cplx sq = std::sqrt(disc);
            cplx q = std::abs(-b + sq) >= std::abs(-b - sq) ? 0.5 * (-b + sq)
                                                            : 0.5 * (-b - sq);
            // q != 0 here, else both |a c| and |b| would be ~0
            roots.push_back({q, a});      // alpha/beta = q / a
            roots.push_back({c, q});      // alpha/beta = c / q
        }
    }

    std::vector<Vec4> vecs;
    for (auto [alpha, beta] : roots) {
        Vec4 w = combine(alpha, u, beta, v);
        bool dup = false;
        for (const Vec4& prev : vecs)
            if (std::abs(inner(prev, w)) >= 1 - kParTol) dup = true;
        if (dup) continue;
        auto f = factor_product_vector(w, 1e-6);
        if (!f) continue;  // spurious root beyond tolerance; treat as absent
        vecs.push_back(w);
        out.solutions.push_back(*f);
    }
    out.orthogonal =
        vecs.size() == 2 && std::abs(inner(vecs[0], vecs[1])) <= tol;
    return out;
}

Mat2 complete_local_basis(const Vec2& w) {
    double nw = norm(w);
    if (nw == 0) throw std::invalid_argument("complete_local_basis: zero vector");
    Vec2 c0{w[0] / nw, w[1] / nw};
    canonical_phase(c0);
    Vec2 c1{-std::conj(c0[1]), std::conj(c0[0])};
    canonical_phase(c1);
    Mat2 m;
    m.at(0, 0) = c0[0];
    m.at(1, 0) = c0[1];
    m.at(0, 1) = c1[0];
    m.at(1, 1) = c1[1];
    return m;
}

namespace gates {

Mat2 X() { return Mat2{{0, 1, 1, 0}}; }

Mat2 H() {
    double s = 1.0 / std::sqrt(2.0);
    return Mat2{{s, s, s, -s}};
}

Mat4 SWAP() {
    Mat4 m;
    m.at(0, 0) = 1;
    m.at(1, 2) = 1;
    m.at(2, 1) = 1;
    m.at(3, 3) = 1;
    return m;
}

Mat4 CNOT() {
    Mat4 m;
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    m.at(2, 3) = 1;
    m.at(3, 2) = 1;
    return m;
}

Mat4 CZ() {
    Mat4 m = Mat4::identity();
    m.at(3, 3) = -1;
    return m;
}

Mat4 partial_swap(double theta) {
    Mat4 m;
    m.at(0, 0) = 1;
    m.at(3, 3) = 1;
    m.at(1, 1) = std::cos(theta);
    m.at(2, 2) = std::cos(theta);
    m.at(1, 2) = -std::sin(theta);
    m.at(2, 1) = std::sin(theta);
    return m;
}

}  // namespace gates

}
