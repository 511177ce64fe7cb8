// Microbenchmarks for the hot paths: GF(2) map folding/application, the
// degeneracy diagnosis, whole-circuit conversion, and per-shot sampling.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "concord/affine.hpp"
#include "concord/convert.hpp"
#include "concord/generate.hpp"
#include "concord/oracle.hpp"
#include "concord/sample.hpp"

using namespace concord;

namespace {

Circuit perm_circuit(std::size_t n, std::size_t depth, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.depth = depth;
    spec.seed = seed;
    spec.init = GenSpec::Init::kGeneric;
    spec.gates = GenSpec::Gates::kPermutationOnly;
    return gen_concordant(spec).circuit;
}

AffineMap folded_map(std::size_t n, int folds, CounterRng& rng) {
    AffineMap p = AffineMap::identity(n);
    for (int i = 0; i < folds; ++i) {
        std::size_t k = rng.next() % n;
        std::size_t l = rng.next() % (n - 1);
        if (l >= k) ++l;
        p.fold_local_perm(random_perm4(rng), k, l);
    }
    return p;
}

BitVec random_vec(std::size_t n, CounterRng& rng) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng.next() & 1);
    return v;
}

}  // namespace

static void BM_fold_local_perm(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(2);
    AffineMap p = folded_map(n, 16, rng);
    Perm4 r = random_perm4(rng);
    for (auto _ : state) {
        p.fold_local_perm(r, 3, n / 2);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_fold_local_perm)->Arg(64)->Arg(256)->Arg(1024);

static void BM_apply_inverse(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(3);
    AffineMap p = folded_map(n, static_cast<int>(2 * n), rng);
    BitVec v = random_vec(n, rng);
    for (auto _ : state) {
        BitVec w = p.apply_inverse(v);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_apply_inverse)->Arg(64)->Arg(256)->Arg(1024);

static void BM_diagnose(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(4);
    Circuit c = perm_circuit(n, 0, 5);
    ProductState rho = c.product_state();
    AffineMap p = folded_map(n, static_cast<int>(2 * n), rng);
    for (auto _ : state) {
        DegeneracyClasses d = diagnose_degeneracy(p, rho, 1, n - 2);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_diagnose)->Arg(64)->Arg(256)->Arg(1024);

static void BM_convert(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t depth = 1000;
    Circuit c = perm_circuit(n, depth, 6);
    for (auto _ : state) {
        ConvertedProgram prog = convert(c);
        benchmark::DoNotOptimize(prog);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * depth));
}
BENCHMARK(BM_convert)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_run_shot(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Circuit c = perm_circuit(n, 200, 7);
    ConvertedProgram prog = convert(c);
    ProductState rho = c.product_state();
    std::uint64_t s = 0;
    for (auto _ : state) {
        CounterRng rng(11, s++);
        std::string bits = run_shot(prog, rho, c.measured, rng);
        benchmark::DoNotOptimize(bits);
    }
}
BENCHMARK(BM_run_shot)->Arg(64)->Arg(256)->Arg(1024);

static void BM_dense_oracle(benchmark::State& state) {
    GenSpec spec;
    spec.n = 6;
    spec.depth = 12;
    spec.seed = 8;
    spec.init = GenSpec::Init::kWithTies;
    Circuit c = gen_concordant(spec).circuit;
    for (auto _ : state) {
        DenseState st = dense_simulate(c);
        benchmark::DoNotOptimize(st);
    }
}
BENCHMARK(BM_dense_oracle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
