#include "concord/sample.hpp"

#include <cmath>
#include <stdexcept>

namespace concord {

namespace {

// u < p * 2^64 decided exactly for rational p = num/den in [0, 1].
bool below_threshold(std::uint64_t u, const Rat& p) {
    const mpz_class& nz = p.get_num();
    const mpz_class& dz = p.get_den();
    if (nz.fits_ulong_p() && dz.fits_ulong_p()) {
        unsigned __int128 lhs = static_cast<unsigned __int128>(u) * dz.get_ui();
        unsigned __int128 rhs = static_cast<unsigned __int128>(nz.get_ui()) << 64;
        return lhs < rhs;
    }
    // arbitrary-size fallback
    mpz_class lhs = dz;
    mpz_class uz;
    mpz_import(uz.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
    lhs *= uz;
    mpz_class rhs = nz << 64;
    return lhs < rhs;
}

}  // namespace

BitVec sample_initial(const ProductState& rho, CounterRng& rng) {
    std::size_t n = rho.num_qubits();
    BitVec v(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t u = rng.next();
        if (!below_threshold(u, rho.p0(k))) v.set(k, true);
    }
    return v;
}

std::string run_shot(const ConvertedProgram& prog, const ProductState& rho,
                     const std::vector<std::size_t>& measured, CounterRng& rng) {
    if (prog.n != rho.num_qubits())
        throw std::invalid_argument("program/state size mismatch");
    BitVec i = sample_initial(rho, rng);
    BitVec j = prog.perm.apply(i);
    std::string out(measured.size(), '0');
    for (std::size_t idx = 0; idx < measured.size(); ++idx) {
        std::size_t k = measured[idx];
        int jk = j.get(k) ? 1 : 0;
        double p0 = std::norm(prog.basis[k].at(0, jk));
        if (rng.next_double() >= p0) out[idx] = '1';
    }
    return out;
}

Dist exact_output_distribution(const ConvertedProgram& prog, const ProductState& rho,
                               const std::vector<std::size_t>& measured,
                               std::size_t enum_limit) {
    std::size_t n = prog.n;
    if (rho.num_qubits() != n)
        throw std::invalid_argument("program/state size mismatch");
    if (n > enum_limit || n > 62)
        throw std::invalid_argument("exact distribution limited to " +
                                    std::to_string(enum_limit) + " qubits");
    std::size_t m = measured.size();

    std::vector<double> pd0(n), pd1(n);
    for (std::size_t k = 0; k < n; ++k) {
        pd0[k] = rat_to_double(rho.p0(k));
        pd1[k] = rat_to_double(rho.p1(k));
    }

    // mass of each permuted label restricted to the measured qubits
    std::vector<double> mass(std::size_t(1) << m, 0.0);
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
        BitVec i = BitVec::from_uint(n, x);
        double p = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            p *= i.get(k) ? pd1[k] : pd0[k];
            if (p == 0.0) break;
        }
        if (p == 0.0) continue;
        BitVec j = prog.perm.apply(i);
        std::size_t jm = 0;
        for (std::size_t idx = 0; idx < m; ++idx)
            if (j.get(measured[idx])) jm |= std::size_t(1) << idx;
        mass[jm] += p;
    }

    // push the mass through the per-qubit measurement channel
    // M_k(h | j) = |<h| U_k |j>|^2, one in-place pass per measured qubit
    for (std::size_t idx = 0; idx < m; ++idx) {
        const Mat2& u = prog.basis[measured[idx]];
        double w00 = std::norm(u.at(0, 0)), w01 = std::norm(u.at(0, 1));
        double w10 = std::norm(u.at(1, 0)), w11 = std::norm(u.at(1, 1));
        std::size_t bit = std::size_t(1) << idx;
        for (std::size_t x = 0; x < mass.size(); ++x) {
            if (x & bit) continue;
            double a = mass[x], b = mass[x | bit];
            mass[x] = w00 * a + w01 * b;
            mass[x | bit] = w10 * a + w11 * b;
        }
    }

    Dist dist;
    for (std::size_t x = 0; x < mass.size(); ++x) {
        if (mass[x] == 0.0) continue;
        std::string key(m, '0');
        for (std::size_t idx = 0; idx < m; ++idx)
            if (x & (std::size_t(1) << idx)) key[idx] = '1';
        dist[key] = mass[x];
    }
    return dist;
}

}
