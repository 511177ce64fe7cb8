#include "concord/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "concord/oracle.hpp"
#include "concord/rational.hpp"

namespace concord {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// The first `count` primes above 50. Qubit k gets p_k(0) = P_k / (P_k + a_k)
// with a_k < 50: the denominators are pairwise coprime, so all 2^n joint
// probabilities of the initial state are distinct and every degeneracy
// diagnosis on it comes out all-singleton.
std::vector<std::int64_t> primes_above_50(std::size_t count) {
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::uint64_t v = 53; out.size() < count; ++v)
        if (is_prime(v)) out.push_back(static_cast<std::int64_t>(v));
    return out;
}

Rat generic_ratio(std::int64_t prime, CounterRng& rng) {
    std::int64_t a = 1 + static_cast<std::int64_t>(rng.next() % 49);
    return make_rat(prime, prime + a);
}

std::pair<std::size_t, std::size_t> pick_pair(CounterRng& rng, std::size_t n) {
    std::size_t k = rng.next() % n;
    std::size_t l = rng.next() % (n - 1);
    if (l >= k) ++l;
    if (k > l) std::swap(k, l);
    return {k, l};
}

Mat4 perm_matrix(const Perm4& r) {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.at(r.map[i], i) = 1;
    return m;
}

// Rotation by theta in the {a, b} coordinate plane with relative phase phi.
Mat4 plane_rotation(int a, int b, double theta, double phi) {
    Mat4 m = Mat4::identity();
    cplx e = std::polar(1.0, phi);
    m.at(a, a) = std::cos(theta);
    m.at(a, b) = -std::sin(theta) * e;
    m.at(b, a) = std::sin(theta) * std::conj(e);
    m.at(b, b) = std::cos(theta);
    return m;
}

Mat4 random_unitary4(CounterRng& rng) {
    Mat4 m = Mat4::identity();
    for (int i = 0; i < 4; ++i) {
        Mat4 d = Mat4::identity();
        d.at(i, i) = std::polar(1.0, kTau * rng.next_double());
        m = mul(d, m);
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            m = mul(plane_rotation(a, b, kTau * rng.next_double(), kTau * rng.next_double()), m);
    return m;
}

Gate one_qubit_gate(std::size_t k, const Mat2& m) {
    Gate g;
    g.two = false;
    g.k = k;
    g.m2 = m;
    return g;
}

Gate two_qubit_gate(std::size_t k, std::size_t l, const Mat4& m) {
    Gate g;
    g.two = true;
    g.k = k;
    g.l = l;
    g.m4 = m;
    return g;
}

std::vector<std::size_t> all_qubits(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t k = 0; k < n; ++k) m[k] = k;
    return m;
}

std::vector<Rat> build_init(const GenSpec& spec, CounterRng& rng) {
    std::vector<std::int64_t> primes = primes_above_50(spec.n);
    std::vector<Rat> init(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        switch (spec.init) {
            case GenSpec::Init::kGeneric:
                init[k] = generic_ratio(primes[k], rng);
                break;
            case GenSpec::Init::kWithTies:
                // guaranteed ties up front, then a mix
                if (k == 0) init[k] = make_rat(1, 2);
                else if (k <= 2) init[k] = make_rat(2, 3);
                else {
                    switch (rng.next() % 4) {
                        case 0: init[k] = make_rat(1, 2); break;
                        case 1: init[k] = make_rat(2, 3); break;
                        case 2: init[k] = make_rat(3, 5); break;
                        default: init[k] = generic_ratio(primes[k], rng); break;
                    }
                }
                break;
            case GenSpec::Init::kMixedPure:
                if (k == 0 || rng.next() % 3 == 0) init[k] = make_rat(1, 1);
                else init[k] = generic_ratio(primes[k], rng);
                break;
        }
    }
    return init;
}

// One concordant-by-construction step appended to `sample`: either a local
// basis change on one qubit or a label permutation conjugated into the
// current frame of a random pair. Folds the ground truth alongside.
void append_mixed_step(ConcordantSample& sample, CounterRng& rng, GenSpec::Gates mode) {
    std::size_t n = sample.circuit.n;
    bool local = mode == GenSpec::Gates::kLocalOnly ||
                 (mode == GenSpec::Gates::kMixed && rng.next() % 3 == 0);
    if (local && n >= 1) {
        std::size_t k = rng.next() % n;
        Mat2 next = random_unitary2(rng);
        sample.circuit.gates.push_back(one_qubit_gate(k, mul(next, adjoint(sample.basis[k]))));
        sample.basis[k] = next;
        return;
    }
    auto [k, l] = pick_pair(rng, n);
    Mat2 bk = sample.basis[k], bl = sample.basis[l];
    Mat2 nk = mode == GenSpec::Gates::kPermutationOnly || rng.next() % 2 ? bk : random_unitary2(rng);
    Mat2 nl = mode == GenSpec::Gates::kPermutationOnly || rng.next() % 2 ? bl : random_unitary2(rng);
    Perm4 r = random_perm4(rng);
    Mat4 g = mul(kron(nk, nl), mul(perm_matrix(r), adjoint(kron(bk, bl))));
    sample.circuit.gates.push_back(two_qubit_gate(k, l, g));
    sample.perm.fold_local_perm(r, k, l);
    sample.basis[k] = nk;
    sample.basis[l] = nl;
}

}  // namespace

Mat2 random_unitary2(CounterRng& rng) {
    double t = 0.5 * std::numbers::pi * rng.next_double();
    double phi = kTau * rng.next_double();
    double psi = kTau * rng.next_double();
    double alpha = kTau * rng.next_double();
    cplx c = std::cos(t) * std::polar(1.0, phi);
    cplx s = std::sin(t) * std::polar(1.0, psi);
    cplx g = std::polar(1.0, alpha);
    Mat2 m;
    m.at(0, 0) = g * c;
    m.at(0, 1) = g * s;
    m.at(1, 0) = g * -std::conj(s);
    m.at(1, 1) = g * std::conj(c);
    return m;
}

Perm4 random_perm4(CounterRng& rng) {
    Perm4 p;
    for (int i = 3; i > 0; --i) {
        int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(p.map[i], p.map[j]);
    }
    return p;
}

ConcordantSample gen_concordant(const GenSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("gen_concordant: need at least one qubit");
    if (spec.n < 2 && spec.gates != GenSpec::Gates::kLocalOnly)
        throw std::invalid_argument("gen_concordant: two-qubit gates need n >= 2");
    CounterRng rng(spec.seed ^ 0x636f6e636f726461ull);

    ConcordantSample sample;
    sample.circuit.n = spec.n;
    sample.circuit.init_p0 = build_init(spec, rng);
    sample.circuit.measured = all_qubits(spec.n);
    sample.perm = AffineMap::identity(spec.n);
    sample.basis.assign(spec.n, Mat2::identity());

    for (std::size_t step = 0; step < spec.depth; ++step)
        append_mixed_step(sample, rng, spec.gates);
    return sample;
}

Circuit gen_degenerate(const GenSpec& spec, DegPattern pattern) {
    if (spec.n < 2) throw std::invalid_argument("gen_degenerate: need n >= 2");
    CounterRng rng(spec.seed ^ 0x646567656e217e21ull);
    std::vector<std::int64_t> primes = primes_above_50(spec.n);

    ConcordantSample sample;
    sample.circuit.n = spec.n;
    sample.circuit.measured = all_qubits(spec.n);
    sample.perm = AffineMap::identity(spec.n);
    sample.basis.assign(spec.n, Mat2::identity());

    // Qubits 0 and 1 pin the requested degeneracy pattern of the first gate;
    // the rest stay generic so they never add accidental ties.
    std::vector<Rat>& init = sample.circuit.init_p0;
    init.assign(spec.n, Rat());
    for (std::size_t k = 2; k < spec.n; ++k) init[k] = generic_ratio(primes[k], rng);

    Mat4 first;
    switch (pattern) {
        case DegPattern::kSingletons: {
            // distinct pair masses -> {1,1,1,1}
            init[0] = generic_ratio(primes[0], rng);
            init[1] = generic_ratio(primes[1], rng);
            Mat2 nk = random_unitary2(rng), nl = random_unitary2(rng);
            Perm4 r = random_perm4(rng);
            first = mul(kron(nk, nl), perm_matrix(r));
            sample.perm.fold_local_perm(r, 0, 1);
            sample.basis[0] = nk;
            sample.basis[1] = nl;
            break;
        }
        case DegPattern::kPairAndTwo:
            // equal biases tie labels 01 and 10 -> {2,1,1}; the gate mixes
            // exactly that plane, so the state is untouched
            init[0] = make_rat(2, 3);
            init[1] = make_rat(2, 3);
            first = gates::partial_swap(0.2 + rng.next_double());
            break;
        case DegPattern::kTwoPairs:
            // a half qubit ties {00,10} and {01,11} -> {2,2}; mix bit k
            // controlled on bit l inside each class
            init[0] = make_rat(1, 2);
            init[1] = make_rat(2, 3);
            for (int b = 0; b < 2; ++b) {
                Mat2 a = random_unitary2(rng);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        first.at(2 * x + b, 2 * y + b) = a.at(x, y);
            }
            break;
        case DegPattern::kTripleAndOne:
            // pure ⊗ pure: the three zero-probability labels are degenerate
            // -> {3,1}; any unitary fixing label 00 keeps the state
            init[0] = make_rat(1, 1);
            init[1] = make_rat(1, 1);
            first = mul(plane_rotation(1, 2, kTau * rng.next_double(), kTau * rng.next_double()),
                        mul(plane_rotation(2, 3, kTau * rng.next_double(), kTau * rng.next_double()),
                            plane_rotation(1, 3, kTau * rng.next_double(), kTau * rng.next_double())));
            break;
        case DegPattern::kAllFour:
            // two half qubits: all four labels tied -> {4}; any unitary works
            init[0] = make_rat(1, 2);
            init[1] = make_rat(1, 2);
            first = random_unitary4(rng);
            break;
    }

    sample.circuit.gates.push_back(two_qubit_gate(0, 1, first));
    for (std::size_t step = 1; step < spec.depth; ++step)
        append_mixed_step(sample, rng, GenSpec::Gates::kMixed);
    return sample.circuit;
}

DiscordantSample gen_discordant(const GenSpec& spec) {
    if (spec.n < 2 || spec.n > kDenseMaxQubits)
        throw std::invalid_argument("gen_discordant: need 2 <= n <= dense oracle limit");
    CounterRng rng(spec.seed ^ 0x646973636f726421ull);
    std::vector<std::int64_t> primes = primes_above_50(spec.n);

    for (int attempt = 0; attempt < 100; ++attempt) {
        Circuit c;
        c.n = spec.n;
        c.measured = all_qubits(spec.n);
        c.init_p0.resize(spec.n);
        // biased (never half, never pure) so the CNOT correlations are real
        for (std::size_t k = 0; k < spec.n; ++k) c.init_p0[k] = generic_ratio(primes[k], rng);

        // classically correlate, rotate the control off-axis, correlate again:
        // the third gate entangles the rotated basis and discord appears there
        double theta = 0.3 + 0.9 * rng.next_double();
        double phi = kTau * rng.next_double();
        Mat2 rot;
        rot.at(0, 0) = std::cos(theta);
        rot.at(0, 1) = -std::sin(theta) * std::polar(1.0, phi);
        rot.at(1, 0) = std::sin(theta) * std::polar(1.0, -phi);
        rot.at(1, 1) = std::cos(theta);
        c.gates.push_back(two_qubit_gate(0, 1, gates::CNOT()));
        c.gates.push_back(one_qubit_gate(0, rot));
        c.gates.push_back(two_qubit_gate(0, 1, gates::CNOT()));

        if (auto step = first_discord_step(c)) return {c, *step};
    }
    throw std::runtime_error("gen_discordant: no certified circuit after 100 attempts");
}

}
