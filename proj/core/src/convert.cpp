#include "concord/convert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace concord {

using json = nlohmann::ordered_json;

const char* to_string(DiscordReason r) {
    switch (r) {
        case DiscordReason::kNoProductEigenvector: return "no-product-eigenvector";
        case DiscordReason::kNoProductPairInSubspace: return "subspace-has-no-product-pair";
        case DiscordReason::kComponentCountMismatch: return "component-count-mismatch";
    }
    return "unknown";
}

DiscordError::DiscordError(DiscordReason reason, std::string detail, std::ptrdiff_t gate)
    : std::runtime_error(std::string(to_string(reason)) +
                         (gate >= 0 ? " at gate " + std::to_string(gate) : std::string()) +
                         ": " + detail),
      reason_(reason),
      detail_(std::move(detail)),
      gate_(gate) {}

DegeneracyClasses DegeneracyClasses::from_pairs(const std::array<bool, 6>& equal) {
    // union-find over the four labels
    std::array<int, 4> root{0, 1, 2, 3};
    auto find = [&](int x) {
        while (root[x] != x) x = root[x];
        return x;
    };
    const auto& pairs = Perm4::transposition_pairs();
    for (int i = 0; i < 6; ++i)
        if (equal[i]) {
            int a = find(pairs[i].first), b = find(pairs[i].second);
            if (a != b) root[std::max(a, b)] = std::min(a, b);
        }
    // exact equality must already be transitive; a contradiction means a bug
    for (int i = 0; i < 6; ++i) {
        bool joined = find(pairs[i].first) == find(pairs[i].second);
        if (joined != equal[i])
            throw std::logic_error("degeneracy relation is not an equivalence");
    }
    DegeneracyClasses d;
    d.classes_.clear();
    std::array<int, 4> cls{-1, -1, -1, -1};
    for (unsigned x = 0; x < 4; ++x) {
        int r = find(x);
        if (cls[r] < 0) {
            cls[r] = static_cast<int>(d.classes_.size());
            d.classes_.push_back({});
        }
        d.of_[x] = cls[r];
        d.classes_[cls[r]].push_back(x);
    }
    return d;
}

DegeneracyClasses DegeneracyClasses::all_singletons() {
    return from_pairs({false, false, false, false, false, false});
}

DegeneracyClasses DegeneracyClasses::all_equal() {
    return from_pairs({true, true, true, true, true, true});
}

std::vector<std::size_t> DegeneracyClasses::sizes() const {
    std::vector<std::size_t> s;
    for (const auto& c : classes_) s.push_back(c.size());
    return s;
}

DegeneracyClasses diagnose_degeneracy(const AffineMap& P, const ProductState& rho,
                                      std::size_t k, std::size_t l) {
    std::array<bool, 6> equal{};
    const auto& pairs = Perm4::transposition_pairs();
    for (int i = 0; i < 6; ++i) {
        AffineInvolution s =
            conjugated_involution(P, Perm4::transposition(pairs[i].first, pairs[i].second), k, l);
        equal[i] = commutes_with_product_state(s, rho);
    }
    return DegeneracyClasses::from_pairs(equal);
}

namespace {

Mat4 conditional_spectrum(const Mat4& w, const DegeneracyClasses& classes) {
    // H = sum_c (1 + c) W Pi_c W^dag; eigenvalue spacing 1 keeps the class
    // structure readable off the diagonal of the transformed matrix.
    Mat4 h;
    for (std::size_t c = 0; c < classes.classes().size(); ++c)
        for (unsigned i : classes.classes()[c]) {
            Vec4 wi = column(w, static_cast<int>(i));
            double lam = 1.0 + static_cast<double>(c);
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s)
                    h.at(r, s) += lam * wi[r] * std::conj(wi[s]);
        }
    return h;
}

double offdiag_max(const Mat4& m) {
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) worst = std::max(worst, std::abs(m.at(i, j)));
    return worst;
}

// Second column from an independent vector, Gram-Schmidt against the first.
Vec2 orthonormalize_against(const Vec2& fixed, const Vec2& v) {
    cplx ov = inner(fixed, v);
    Vec2 r{v[0] - ov * fixed[0], v[1] - ov * fixed[1]};
    double n = norm(r);
    if (n < 1e-12)
        throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                           "local factors collapse under orthonormalization");
    r = {r[0] / n, r[1] / n};
    canonical_phase(r);
    return r;
}

Mat2 basis_from_columns(const Vec2& c0, const Vec2& c1) {
    Mat2 m;
    m.at(0, 0) = c0[0];
    m.at(1, 0) = c0[1];
    m.at(0, 1) = c1[0];
    m.at(1, 1) = c1[1];
    return m;
}

// Assemble V_k, V_l from two product vectors that must extend to a tensor
// basis: sides agree (parallel) on one slot and differ (orthogonal) on the
// other, or differ on both.
LocalBasisPair assemble_from_two(const ProductVector4& f1, const ProductVector4& f2,
                                 const Tolerances& tol) {
    double lk = std::abs(inner(f1.left, f2.left));
    double ll = std::abs(inner(f1.right, f2.right));
    Mat2 vk, vl;
    if (lk >= 1 - tol.parallel) {
        if (ll > tol.parallel)
            throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                               "product vectors share a left factor but right factors are "
                               "neither orthogonal nor distinct");
        vk = complete_local_basis(f1.left);
        vl = basis_from_columns(f1.right, orthonormalize_against(f1.right, f2.right));
    } else if (lk <= tol.parallel) {
        vk = basis_from_columns(f1.left, orthonormalize_against(f1.left, f2.left));
        if (ll >= 1 - tol.parallel)
            vl = complete_local_basis(f1.right);
        else if (ll <= tol.parallel)
            vl = basis_from_columns(f1.right, orthonormalize_against(f1.right, f2.right));
        else
            throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                               "right factors neither parallel nor orthogonal");
    } else {
        throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                           "left factors neither parallel nor orthogonal");
    }
    return {vk, vl};
}

ProductVector4 factor_or_throw(const Mat4& w, unsigned label, const Tolerances& tol) {
    Vec4 v = column(w, static_cast<int>(label));
    auto f = factor_product_vector(v, tol.rank);
    if (!f)
        throw DiscordError(DiscordReason::kNoProductEigenvector,
                           "conditional eigenvector for label " + std::to_string(label) +
                               " is entangled");
    return *f;
}

}  // namespace

LocalBasisPair solve_new_basis(const Mat4& w, const DegeneracyClasses& classes,
                               const Tolerances& tol) {
    if (unitarity_defect(w) > 10 * tol.unitary)
        throw std::invalid_argument("solve_new_basis: frame-adjusted gate is not unitary");

    const auto& cls = classes.classes();
    std::vector<std::size_t> sizes = classes.sizes();
    std::vector<std::size_t> sorted_sizes = sizes;
    std::sort(sorted_sizes.begin(), sorted_sizes.end(), std::greater<>());

    LocalBasisPair out{Mat2::identity(), Mat2::identity()};

    if (sorted_sizes[0] == 4) {
        // fully degenerate: the gate acts trivially on the conditional
        // structure, keep the current frame
    } else if (sorted_sizes[0] == 3) {
        // {3,1}: the singleton pins one product direction per side
        unsigned s = 0;
        for (std::size_t c = 0; c < cls.size(); ++c)
            if (cls[c].size() == 1) s = cls[c][0];
        ProductVector4 f = factor_or_throw(w, s, tol);
        out.vk = complete_local_basis(f.left);
        out.vl = complete_local_basis(f.right);
    } else if (sorted_sizes.size() == 2) {
        // {2,2}: product pair inside the first class's eigenspace
        const auto& e = cls[0];
        Vec4 u = column(w, static_cast<int>(e[0]));
        Vec4 v = column(w, static_cast<int>(e[1]));
        SubspaceProducts sp = product_pair_in_subspace(u, v, tol.parallel);
        if (sp.solutions.size() < 2)
            throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                               "degenerate eigenspace holds " +
                                   std::to_string(sp.solutions.size()) +
                                   " product direction(s), need 2");
        if (!sp.continuum && !sp.orthogonal)
            throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                               "the two product directions are not orthogonal");
        out = assemble_from_two(sp.solutions[0], sp.solutions[1], tol);
    } else if (sorted_sizes[0] == 2) {
        // {2,1,1}: factor both singletons, the pair space is checked by the
        // final verification
        std::vector<unsigned> singles;
        for (const auto& c : cls)
            if (c.size() == 1) singles.push_back(c[0]);
        ProductVector4 f1 = factor_or_throw(w, singles[0], tol);
        ProductVector4 f2 = factor_or_throw(w, singles[1], tol);
        out = assemble_from_two(f1, f2, tol);
    } else {
        // {1,1,1,1}: every conditional eigenvector must be product
        std::array<ProductVector4, 4> f{factor_or_throw(w, 0, tol), factor_or_throw(w, 1, tol),
                                        factor_or_throw(w, 2, tol), factor_or_throw(w, 3, tol)};
        out.vk = complete_local_basis(f[0].left);
        out.vl = complete_local_basis(f[0].right);
    }

    // Deterministic column order: the |0>-dominant column goes first (strict
    // comparison, so balanced columns keep the assembly order). Pure
    // relabeling, absorbed downstream by extract_permutation; it pins the
    // natural outcome V = I for coordinate-permutation gates.
    auto order_columns = [](Mat2& v) {
        if (std::norm(v.at(0, 0)) + 1e-12 < std::norm(v.at(0, 1))) {
            std::swap(v.a[0], v.a[1]);
            std::swap(v.a[2], v.a[3]);
        }
    };
    order_columns(out.vk);
    order_columns(out.vl);

    // One uniform acceptance test: the proposed local bases must diagonalize
    // the conditional spectrum. Anything the per-case assembly missed (e.g.
    // four product eigenvectors that do not form a tensor basis) lands here.
    Mat4 b = kron(out.vk, out.vl);
    Mat4 d = mul(adjoint(b), mul(conditional_spectrum(w, classes), b));
    if (offdiag_max(d) > tol.diag)
        throw DiscordError(DiscordReason::kNoProductPairInSubspace,
                           "local bases do not diagonalize the conditional spectrum "
                           "(off-diagonal " + std::to_string(offdiag_max(d)) + ")");
    return out;
}

Perm4 extract_permutation(const Mat4& w, const LocalBasisPair& basis,
                          const DegeneracyClasses& classes, const Tolerances& tol) {
    Mat4 b = kron(basis.vk, basis.vl);
    Mat4 t = mul(adjoint(b), w);

    // class of each new label from the transformed conditional spectrum
    Mat4 d = mul(adjoint(b), mul(conditional_spectrum(w, classes), b));
    std::array<int, 4> new_class;
    for (int j = 0; j < 4; ++j) {
        double val = d.at(j, j).real();
        int c = static_cast<int>(std::lround(val)) - 1;
        if (c < 0 || c >= static_cast<int>(classes.classes().size()) ||
            std::abs(val - std::lround(val)) > 0.25)
            throw DiscordError(DiscordReason::kComponentCountMismatch,
                               "new label " + std::to_string(j) +
                                   " has no well-defined degeneracy class");
        new_class[j] = c;
    }

    // union-find on 8 nodes: old labels 0..3, new labels 4..7
    std::array<int, 8> root;
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
    };
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            if (std::norm(t.at(j, i)) > tol.edge) unite(i, 4 + j);

    Perm4 r;
    for (int comp = 0; comp < 8; ++comp) {
        std::vector<int> olds, news;
        for (int i = 0; i < 4; ++i)
            if (find(i) == comp) olds.push_back(i);
        for (int j = 0; j < 4; ++j)
            if (find(4 + j) == comp) news.push_back(j);
        if (olds.size() != news.size())
            throw DiscordError(DiscordReason::kComponentCountMismatch,
                               "component pairs " + std::to_string(olds.size()) + " old with " +
                                   std::to_string(news.size()) + " new label(s)");
        for (std::size_t x = 1; x < olds.size(); ++x)
            if (classes.class_of(olds[x]) != classes.class_of(olds[0]))
                throw DiscordError(DiscordReason::kComponentCountMismatch,
                                   "component mixes degeneracy classes");
        for (int j : news)
            if (!olds.empty() && new_class[j] != classes.class_of(olds[0]))
                throw DiscordError(DiscordReason::kComponentCountMismatch,
                                   "component mixes old and new degeneracy classes");
        // ascending pairing inside the component keeps the choice deterministic
        for (std::size_t x = 0; x < olds.size(); ++x)
            r.map[olds[x]] = static_cast<std::uint8_t>(news[x]);
    }
    if (!r.is_permutation())
        throw std::logic_error("extracted label map is not a permutation");
    return r;
}

ConvertedProgram convert(const Circuit& c, const Tolerances& tol) {
    ConvertedProgram prog;
    prog.n = c.n;

    ProductState rho = c.product_state();
    prog.flips = rho.flips();
    prog.perm = AffineMap::identity(c.n);
    prog.basis.assign(c.n, Mat2::identity());
    for (std::size_t k = 0; k < c.n; ++k)
        if (rho.flips().get(k)) prog.basis[k] = gates::X();

    for (std::size_t tstep = 0; tstep < c.gates.size(); ++tstep) {
        const Gate& g = c.gates[tstep];
        if (!g.two) {
            prog.basis[g.k] = mul(g.m2, prog.basis[g.k]);
            continue;
        }
        Mat4 frame = kron(prog.basis[g.k], prog.basis[g.l]);
        Mat4 w = mul(adjoint(frame), mul(g.m4, frame));
        DegeneracyClasses classes = diagnose_degeneracy(prog.perm, rho, g.k, g.l);
        LocalBasisPair basis;
        Perm4 r;
        try {
            basis = solve_new_basis(w, classes, tol);
            r = extract_permutation(w, basis, classes, tol);
        } catch (const DiscordError& e) {
            throw DiscordError(e.reason(), e.detail(), static_cast<std::ptrdiff_t>(tstep));
        }
        prog.perm.fold_local_perm(r, g.k, g.l);
        prog.basis[g.k] = mul(prog.basis[g.k], basis.vk);
        prog.basis[g.l] = mul(prog.basis[g.l], basis.vl);
        prog.audit.push_back({tstep, g.k, g.l, classes, r, basis.vk, basis.vl});
    }
    return prog;
}

namespace {

json mat2_json(const Mat2& m) {
    json a = json::array();
    for (const cplx& x : m.a) a.push_back({x.real(), x.imag()});
    return a;
}

}  // namespace

std::string serialize_converted(const ConvertedProgram& prog) {
    json doc;
    doc["qubits"] = prog.n;
    json rows = json::array();
    for (std::size_t i = 0; i < prog.n; ++i) rows.push_back(prog.perm.row(i).to_hex());
    doc["permutation"] = {{"rows", std::move(rows)}, {"offset", prog.perm.offset().to_hex()}};
    json basis = json::array();
    for (const Mat2& u : prog.basis) basis.push_back(mat2_json(u));
    doc["basis"] = std::move(basis);
    doc["flips"] = prog.flips.to_string();
    json audit = json::array();
    for (const AuditRecord& rec : prog.audit) {
        json jr;
        jr["gate"] = rec.gate;
        jr["qubits"] = {rec.k, rec.l};
        json cls = json::array();
        for (const auto& c : rec.classes.classes()) cls.push_back(c);
        jr["classes"] = std::move(cls);
        jr["perm"] = rec.perm.map;
        jr["v_k"] = mat2_json(rec.vk);
        jr["v_l"] = mat2_json(rec.vl);
        audit.push_back(std::move(jr));
    }
    doc["audit"] = std::move(audit);
    return doc.dump();
}

}
