#include "concord/affine.hpp"

#include <stdexcept>

namespace concord {

Perm4 Perm4::transposition(unsigned a, unsigned b) {
    if (a > 3 || b > 3 || a == b)
        throw std::invalid_argument("transposition needs two distinct labels in 0..3");
    Perm4 p;
    p.map[a] = static_cast<std::uint8_t>(b);
    p.map[b] = static_cast<std::uint8_t>(a);
    return p;
}

const std::array<std::pair<unsigned, unsigned>, 6>& Perm4::transposition_pairs() {
    static const std::array<std::pair<unsigned, unsigned>, 6> pairs = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return pairs;
}

bool Perm4::is_permutation() const {
    unsigned seen = 0;
    for (unsigned v : map) {
        if (v > 3) return false;
        seen |= 1u << v;
    }
    return seen == 0xf;
}

bool Perm4::is_involution() const {
    if (!is_permutation()) return false;
    for (unsigned x = 0; x < 4; ++x)
        if (map[map[x]] != x) return false;
    return true;
}

Perm4::Affine2 Perm4::affine() const {
    if (!is_permutation())
        throw std::invalid_argument("label map is not a permutation");
    unsigned c = map[0];
    unsigned col_k = map[2] ^ c;  // image difference of x_k
    unsigned col_l = map[1] ^ c;  // image difference of x_l
    // Injectivity makes the two columns distinct and nonzero, hence
    // independent over GF(2); the affinity identity holds for free.
    if ((map[0] ^ map[1] ^ map[2] ^ map[3]) != 0)
        throw std::logic_error("label permutation violates affinity");
    Affine2 a;
    a.m00 = col_k >> 1 & 1;
    a.m10 = col_k & 1;
    a.m01 = col_l >> 1 & 1;
    a.m11 = col_l & 1;
    a.ck = c >> 1 & 1;
    a.cl = c & 1;
    return a;
}

Perm4 perm_compose(const Perm4& a, const Perm4& b) {
    Perm4 r;
    for (unsigned x = 0; x < 4; ++x) r.map[x] = a.map[b.map[x]];
    return r;
}

AffineMap AffineMap::identity(std::size_t n) {
    AffineMap p;
    p.rows_.reserve(n);
    p.inv_cols_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.rows_.push_back(BitVec::unit(n, i));
        p.inv_cols_.push_back(BitVec::unit(n, i));
    }
    p.b_ = BitVec(n);
    p.b_inv_ = BitVec(n);
    return p;
}

void AffineMap::fold_local_perm(const Perm4& r, std::size_t k, std::size_t l) {
    std::size_t n = size();
    if (k >= n || l >= n || k == l)
        throw std::invalid_argument("fold_local_perm needs two distinct in-range qubits");
    Perm4::Affine2 m = r.affine();

    // A <- M_R A: only rows k and l change.
    BitVec rk = rows_[k], rl = rows_[l];
    BitVec nk(n), nl(n);
    if (m.m00) nk ^= rk;
    if (m.m01) nk ^= rl;
    if (m.m10) nl ^= rk;
    if (m.m11) nl ^= rl;
    rows_[k] = std::move(nk);
    rows_[l] = std::move(nl);

    // b <- M_R b + c_R on bits k, l.
    bool bk = b_.get(k), bl = b_.get(l);
    b_.set(k, (m.m00 & bk) ^ (m.m01 & bl) ^ m.ck);
    b_.set(l, (m.m10 & bk) ^ (m.m11 & bl) ^ m.cl);

    // A^{-1} <- A^{-1} M_R^{-1}: only columns k and l change. Over GF(2) the
    // inverse of the 2x2 block is its adjugate (det = 1 for a permutation).
    BitVec ck = inv_cols_[k], cl = inv_cols_[l];
    BitVec nck(n), ncl(n);
    if (m.m11) nck ^= ck;
    if (m.m10) nck ^= cl;
    if (m.m01) ncl ^= ck;
    if (m.m00) ncl ^= cl;
    inv_cols_[k] = std::move(nck);
    inv_cols_[l] = std::move(ncl);

    // b_inv <- b_inv + A^{-1}' c_R (updated columns).
    if (m.ck) b_inv_ ^= inv_cols_[k];
    if (m.cl) b_inv_ ^= inv_cols_[l];
}

BitVec AffineMap::apply(const BitVec& v) const {
    std::size_t n = size();
    if (v.size() != n) throw std::invalid_argument("vector size mismatch");
    BitVec w = b_;
    for (std::size_t i = 0; i < n; ++i)
        if (rows_[i].parity_and(v)) w.flip(i);
    return w;
}

BitVec AffineMap::apply_inverse(const BitVec& v) const {
    std::size_t n = size();
    if (v.size() != n) throw std::invalid_argument("vector size mismatch");
    BitVec w = b_inv_;
    v.for_each_set([&](std::size_t j) { w ^= inv_cols_[j]; });
    return w;
}

bool AffineMap::is_identity() const {
    if (b_.any()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (rows_[i] != BitVec::unit(size(), i)) return false;
    return true;
}

AffineInvolution::AffineInvolution(BitVec delta, BitVec r, bool c0)
    : delta_(std::move(delta)), r_(std::move(r)), c0_(c0) {
    if (delta_.size() != r_.size())
        throw std::invalid_argument("delta/direction size mismatch");
    if (r_.parity_and(delta_))
        throw std::invalid_argument("not an involution: <r, delta> must be 0");
}

BitVec AffineInvolution::matrix_row(std::size_t i) const {
    BitVec row = BitVec::unit(delta_.size(), i);
    if (delta_.get(i)) row ^= r_;
    return row;
}

BitVec AffineInvolution::matrix_offset() const {
    return c0_ ? delta_ : BitVec(delta_.size());
}

AffineInvolution conjugated_involution(const AffineMap& P, const Perm4& q,
                                       std::size_t k, std::size_t l) {
    std::size_t n = P.size();
    if (k >= n || l >= n || k == l)
        throw std::invalid_argument("conjugated_involution needs two distinct in-range qubits");
    if (!q.is_involution())
        throw std::invalid_argument("label map is not an involution");

    // Write Q(y) = y + d * (<alpha, y> + gamma) on the two label bits. For a
    // transposition s <-> t: d = s^t and alpha is the unique nonzero vector
    // orthogonal to d; for a double transposition (pure shift) alpha = 0,
    // gamma = 1; for the identity d = 0.
    Perm4::Affine2 a = q.affine();
    unsigned d2, alpha2;
    bool gamma;
    unsigned dk_col = (a.m00 << 1 | a.m10) ^ 2u;  // columns of M_Q - I
    unsigned dl_col = (a.m01 << 1 | a.m11) ^ 1u;
    unsigned c2 = a.ck << 1 | a.cl;
    if (dk_col == 0 && dl_col == 0) {
        d2 = c2;
        alpha2 = 0;
        gamma = c2 != 0;
    } else {
        d2 = dk_col ? dk_col : dl_col;
        alpha2 = (dk_col ? 2u : 0u) | (dl_col ? 1u : 0u);
        // involution forces c in {0, d}
        gamma = c2 != 0;
    }

    // delta = A^{-1} d, r = A^T alpha, c0 = <alpha, b> + gamma.
    BitVec delta(n), r(n);
    bool c0 = gamma;
    if (d2 & 2) delta ^= P.inv_col(k);
    if (d2 & 1) delta ^= P.inv_col(l);
    if (alpha2 & 2) {
        r ^= P.row(k);
        c0 ^= P.offset().get(k);
    }
    if (alpha2 & 1) {
        r ^= P.row(l);
        c0 ^= P.offset().get(l);
    }
    return AffineInvolution(std::move(delta), std::move(r), c0);
}

namespace {

// Compare e_m^2 against the product of ratios over the support set T
// (ascending), all factors strictly between 0 and 1. Integer numerators and
// denominators are accumulated separately; once the bit-length upper bound of
// the running product drops below the lower bound of the target the result is
// decided.
bool ratio_product_matches(const ProductState& rho, std::size_t m, const BitVec& T) {
    Rat lhs = rho.ratio(m) * rho.ratio(m);
    mpz_class ln = lhs.get_num(), ld = lhs.get_den();
    long lb_target = static_cast<long>(mpz_sizeinbase(ln.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(ld.get_mpz_t(), 2)) - 1;
    mpz_class yn(1), yd(1);
    bool decided_low = false;
    T.for_each_set([&](std::size_t j) {
        if (decided_low) return;
        yn *= rho.ratio(j).get_num();
        yd *= rho.ratio(j).get_den();
        long ub = static_cast<long>(mpz_sizeinbase(yn.get_mpz_t(), 2)) -
                  static_cast<long>(mpz_sizeinbase(yd.get_mpz_t(), 2)) + 1;
        if (ub <= lb_target) decided_low = true;  // product can only shrink
    });
    if (decided_low) return false;
    return ln * yd == ld * yn;
}

}  // namespace

bool commutes_with_product_state(const AffineInvolution& S, const ProductState& rho) {
    if (S.size() != rho.num_qubits())
        throw std::invalid_argument("involution/state size mismatch");
    const BitVec& delta = S.delta();
    if (delta.none()) return true;  // identity

    const BitVec& H = rho.half_mask();
    const BitVec& Z = rho.zero_mask();
    bool delta_tied = delta.is_subset_of(H);

    // A moved v and S(v) differ exactly on delta, so p(v) = p(S(v)) compares
    // prod_{j in delta} p_j(v_j) with the bits inside delta toggled. For the
    // all-zero vector (and any moved unit vector e_m with m outside delta and
    // p_m(1) > 0) that is prod p_j(0) = prod p_j(1), which under canonical
    // ordering holds iff every qubit of delta is tied at 1/2.
    if (S.c0() && !delta_tied) return false;
    BitVec mv = S.c0() ? ~S.direction() : S.direction();
    if (!delta_tied && (mv & ~delta & ~Z).any()) return false;

    BitVec inside = mv & delta;
    if (inside.none()) return true;

    std::size_t zeros_in_delta = (delta & Z).popcount();
    BitVec T = delta & ~H;  // ratios != 1 (zeros included until ruled out)

    bool ok = true;
    inside.for_each_set([&](std::size_t m) {
        if (!ok) return;
        if (rho.is_pure(m)) {
            // e_m = 0: both sides vanish iff another zero remains in delta.
            ok = zeros_in_delta >= 2;
        } else if (zeros_in_delta >= 1) {
            ok = false;  // right side vanishes, left side does not
        } else if (rho.half_mask().get(m)) {
            // e_m = 1 against a product of factors < 1: only the empty
            // product matches.
            ok = T.none();
        } else {
            ok = ratio_product_matches(rho, m, T);
        }
    });
    return ok;
}

bool brute_force_commutes(const AffineInvolution& S, const ProductState& rho) {
    std::size_t n = rho.num_qubits();
    if (S.size() != n) throw std::invalid_argument("involution/state size mismatch");
    if (n > 20) throw std::invalid_argument("brute_force_commutes limited to n <= 20");
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
        BitVec v = BitVec::from_uint(n, x);
        BitVec w = S.apply(v);
        if (w == v) continue;
        if (rho.joint_probability(v) != rho.joint_probability(w)) return false;
    }
    return true;
}

}
