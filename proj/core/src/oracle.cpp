#include "concord/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace concord {

DenseState DenseState::product_diag(const std::vector<Rat>& p0) {
    DenseState st;
    st.n = p0.size();
    if (st.n > kDenseMaxQubits)
        throw BoundError("dense oracle limited to " + std::to_string(kDenseMaxQubits) +
                         " qubits");
    std::size_t dim = std::size_t(1) << st.n;
    st.rho.assign(dim * dim, cplx(0));
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double p = 1.0;
        for (std::size_t k = 0; k < st.n; ++k) {
            bool one = idx >> (st.n - 1 - k) & 1;
            double pk = rat_to_double(p0[k]);
            p *= one ? 1.0 - pk : pk;
        }
        st.at(idx, idx) = p;
    }
    return st;
}

void DenseState::apply_1q(const Mat2& g, std::size_t k) {
    std::size_t dim = std::size_t(1) << n;
    std::size_t mk = std::size_t(1) << (n - 1 - k);
    // rho <- G rho
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) {
            if (r & mk) continue;
            cplx x0 = at(r, c), x1 = at(r | mk, c);
            at(r, c) = g.at(0, 0) * x0 + g.at(0, 1) * x1;
            at(r | mk, c) = g.at(1, 0) * x0 + g.at(1, 1) * x1;
        }
    // rho <- rho G^dag
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            if (c & mk) continue;
            cplx x0 = at(r, c), x1 = at(r, c | mk);
            at(r, c) = x0 * std::conj(g.at(0, 0)) + x1 * std::conj(g.at(0, 1));
            at(r, c | mk) = x0 * std::conj(g.at(1, 0)) + x1 * std::conj(g.at(1, 1));
        }
}

void DenseState::apply_2q(const Mat4& g, std::size_t k, std::size_t l) {
    std::size_t dim = std::size_t(1) << n;
    std::size_t mk = std::size_t(1) << (n - 1 - k);
    std::size_t ml = std::size_t(1) << (n - 1 - l);
    auto expand = [&](std::size_t base, int a) {
        return base | (a & 2 ? mk : 0) | (a & 1 ? ml : 0);
    };
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) {
            if (r & (mk | ml)) continue;
            std::array<cplx, 4> x;
            for (int a = 0; a < 4; ++a) x[a] = at(expand(r, a), c);
            for (int b = 0; b < 4; ++b) {
                cplx y = 0;
                for (int a = 0; a < 4; ++a) y += g.at(b, a) * x[a];
                at(expand(r, b), c) = y;
            }
        }
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            if (c & (mk | ml)) continue;
            std::array<cplx, 4> x;
            for (int a = 0; a < 4; ++a) x[a] = at(r, expand(c, a));
            for (int b = 0; b < 4; ++b) {
                cplx y = 0;
                for (int a = 0; a < 4; ++a) y += x[a] * std::conj(g.at(b, a));
                at(r, expand(c, b)) = y;
            }
        }
}

double DenseState::trace_real() const {
    double t = 0;
    std::size_t dim = std::size_t(1) << n;
    for (std::size_t i = 0; i < dim; ++i) t += at(i, i).real();
    return t;
}

void dense_simulate_visit(const Circuit& c,
                          const std::function<void(const DenseState&, std::size_t)>& fn) {
    DenseState st = DenseState::product_diag(c.init_p0);
    fn(st, 0);
    for (std::size_t t = 0; t < c.gates.size(); ++t) {
        const Gate& g = c.gates[t];
        if (g.two)
            st.apply_2q(g.m4, g.k, g.l);
        else
            st.apply_1q(g.m2, g.k);
        fn(st, t + 1);
    }
}

DenseState dense_simulate(const Circuit& c) {
    DenseState out;
    dense_simulate_visit(c, [&](const DenseState& st, std::size_t t) {
        if (t == c.gates.size()) out = st;
    });
    return out;
}

std::vector<DenseState> dense_simulate_states(const Circuit& c) {
    std::vector<DenseState> out;
    dense_simulate_visit(c, [&](const DenseState& st, std::size_t) { out.push_back(st); });
    return out;
}

Dist measurement_distribution(const DenseState& st, const std::vector<std::size_t>& measured) {
    for (std::size_t k : measured)
        if (k >= st.n) throw std::invalid_argument("measured qubit out of range");
    Dist dist;
    std::size_t dim = std::size_t(1) << st.n;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double p = st.at(idx, idx).real();
        std::string key(measured.size(), '0');
        for (std::size_t i = 0; i < measured.size(); ++i)
            if (idx >> (st.n - 1 - measured[i]) & 1) key[i] = '1';
        dist[key] += p;
    }
    for (auto it = dist.begin(); it != dist.end();)
        it = it->second == 0.0 ? dist.erase(it) : std::next(it);
    return dist;
}

namespace {

struct Bloch {
    double x = 0, y = 0, z = 0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// ||[C, D]|| witness: twice the cross product of the Bloch vectors.
double cross_norm(const Bloch& a, const Bloch& b) {
    double cx = a.y * b.z - a.z * b.y;
    double cy = a.z * b.x - a.x * b.z;
    double cz = a.x * b.y - a.y * b.x;
    return 2 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

}  // namespace

ConcordanceReport concordance_report(const DenseState& st, double tol) {
    std::size_t n = st.n;
    ConcordanceReport rep;
    if (n == 0) return rep;
    std::size_t dim = std::size_t(1) << n;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t mk = dim >> (k + 1);  // bit mask of qubit k in the index
        // Collect Bloch vectors of the conditional family. For rest indices
        // A <= B the Hermitian coordinate operators contribute blocks
        // (Q + Q^dag)/sqrt(2) and i(Q - Q^dag)/sqrt(2) with
        // Q_xy = rho[(x,A),(y,B)]; A == B contributes the diagonal block.
        std::vector<Bloch> vecs;
        vecs.reserve((dim / 2) * (dim / 2));
        // enumerate rest indices as full indices with bit k cleared
        for (std::size_t A = 0; A < dim; ++A) {
            if (A & mk) continue;
            for (std::size_t B = A; B < dim; ++B) {
                if (B & mk) continue;
                cplx q00 = st.at(A, B), q01 = st.at(A, B | mk);
                cplx q10 = st.at(A | mk, B), q11 = st.at(A | mk, B | mk);
                if (A == B) {
                    Bloch v{q01.real(), -q01.imag(), 0.5 * (q00.real() - q11.real())};
                    vecs.push_back(v);
                } else {
                    // (Q + Q^dag): entries q01 + conj(q10), diag q00 + conj(q00)
                    cplx r01 = q01 + std::conj(q10);
                    double r00 = 2 * q00.real(), r11 = 2 * q11.real();
                    vecs.push_back({r01.real(), -r01.imag(), 0.5 * (r00 - r11)});
                    // i(Q - Q^dag)
                    cplx s01 = cplx(0, 1) * (q01 - std::conj(q10));
                    double s00 = -2 * q00.imag(), s11 = -2 * q11.imag();
                    vecs.push_back({s01.real(), -s01.imag(), 0.5 * (s00 - s11)});
                }
            }
        }

        double margin = 0;
        if (vecs.size() <= 2048) {
            for (std::size_t a = 0; a < vecs.size(); ++a)
                for (std::size_t b = a + 1; b < vecs.size(); ++b)
                    margin = std::max(margin, cross_norm(vecs[a], vecs[b]));
        } else {
            // reference direction: the heaviest vector; a family commutes
            // pairwise iff every member is parallel to a common axis
            const Bloch* ref = &vecs[0];
            for (const Bloch& v : vecs)
                if (v.norm() > ref->norm()) ref = &v;
            double rn = ref->norm();
            if (rn > 1e-14) {
                Bloch unit{ref->x / rn, ref->y / rn, ref->z / rn};
                for (const Bloch& v : vecs) margin = std::max(margin, cross_norm(v, unit));
            }
        }
        if (margin > rep.margin) {
            rep.margin = margin;
            rep.worst_qubit = k;
        }
    }
    rep.concordant = rep.margin <= tol;
    return rep;
}

bool is_concordant(const DenseState& st, double tol) {
    return concordance_report(st, tol).concordant;
}

std::optional<std::size_t> first_discord_step(const Circuit& c, double tol) {
    std::optional<std::size_t> found;
    dense_simulate_visit(c, [&](const DenseState& st, std::size_t t) {
        if (found || t == 0) return;  // the diagonal product input is concordant
        if (!is_concordant(st, tol)) found = t - 1;
    });
    return found;
}

double tvd(const Dist& a, const Dist& b) {
    std::size_t width = a.empty() ? (b.empty() ? 0 : b.begin()->first.size())
                                  : a.begin()->first.size();
    std::set<std::string> keys;
    for (const auto& [k, v] : a) {
        if (k.size() != width) throw std::invalid_argument("tvd: mismatched outcome spaces");
        keys.insert(k);
    }
    for (const auto& [k, v] : b) {
        if (k.size() != width) throw std::invalid_argument("tvd: mismatched outcome spaces");
        keys.insert(k);
    }
    double s = 0;
    for (const std::string& k : keys) {
        auto ia = a.find(k), ib = b.find(k);
        double pa = ia == a.end() ? 0.0 : ia->second;
        double pb = ib == b.end() ? 0.0 : ib->second;
        s += std::abs(pa - pb);
    }
    return 0.5 * s;
}

}
