#include <doctest.h>

#include <string>
#include <vector>

#include "concord/convert.hpp"
#include "concord/generate.hpp"
#include "concord/oracle.hpp"
#include "concord/sample.hpp"
#include "support.hpp"

using namespace concord;

namespace {

bool exactly_identity(const Mat2& m) {
    return m.at(0, 0) == cplx(1) && m.at(1, 1) == cplx(1) && m.at(0, 1) == cplx(0) &&
           m.at(1, 0) == cplx(0);
}

}  // namespace

TEST_SUITE("generate") {

TEST_CASE("permutation circuits convert to their construction record") {
    for (std::uint64_t seed : {1u, 7u, 23u}) {
        GenSpec spec;
        spec.n = 6;
        spec.depth = 20;
        spec.seed = seed;
        spec.gates = GenSpec::Gates::kPermutationOnly;
        ConcordantSample s = gen_concordant(spec);
        REQUIRE(s.circuit.gates.size() == 20);
        ConvertedProgram prog = convert(s.circuit);
        CHECK(prog.flips.none());
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(exactly_identity(prog.basis[k]));
            CHECK(prog.perm.row(k) == s.perm.row(k));
        }
        CHECK(prog.perm.offset() == s.perm.offset());
        CHECK(!prog.perm.is_identity());  // 20 random folds: identity is astronomically unlikely
    }
}

TEST_CASE("depth zero produces the do-nothing program") {
    GenSpec spec;
    spec.n = 3;
    spec.depth = 0;
    spec.seed = 4;
    ConcordantSample s = gen_concordant(spec);
    CHECK(s.circuit.gates.empty());
    CHECK(s.perm.is_identity());
    ConvertedProgram prog = convert(s.circuit);
    CHECK(prog.perm.is_identity());
}

TEST_CASE("mixed concordant circuits convert and reconstruct") {
    for (std::uint64_t seed : {2u, 6u, 19u}) {
        GenSpec spec;
        spec.n = 5;
        spec.depth = 20;
        spec.seed = seed;
        spec.init = GenSpec::Init::kWithTies;
        spec.gates = GenSpec::Gates::kMixed;
        Circuit c = gen_concordant(spec).circuit;
        ConvertedProgram prog = convert(c);
        ct::Reconstruction r = ct::reconstruct(c, prog);
        CHECK(r.offdiag <= 1e-8);
        CHECK(r.diag_err <= 1e-8);
    }
}

TEST_CASE("local-only circuits keep the permutation trivial") {
    GenSpec spec;
    spec.n = 4;
    spec.depth = 12;
    spec.seed = 3;
    spec.gates = GenSpec::Gates::kLocalOnly;
    ConcordantSample s = gen_concordant(spec);
    for (const Gate& g : s.circuit.gates) CHECK(!g.two);
    ConvertedProgram prog = convert(s.circuit);
    CHECK(prog.perm.is_identity());
}

TEST_CASE("each degeneracy pattern shows up in the first audit record") {
    struct Want {
        DegPattern pat;
        std::vector<std::vector<unsigned>> classes;
    };
    const Want wants[] = {
        {DegPattern::kSingletons, {{0}, {1}, {2}, {3}}},
        {DegPattern::kPairAndTwo, {{0}, {1, 2}, {3}}},
        {DegPattern::kTwoPairs, {{0, 2}, {1, 3}}},
        {DegPattern::kTripleAndOne, {{0}, {1, 2, 3}}},
        {DegPattern::kAllFour, {{0, 1, 2, 3}}},
    };
    for (const Want& w : wants) {
        GenSpec spec;
        spec.n = 3;
        spec.depth = 5;
        spec.seed = 31;
        Circuit c = gen_degenerate(spec, w.pat);
        ConvertedProgram prog = convert(c);
        REQUIRE(!prog.audit.empty());
        CHECK(prog.audit[0].gate == 0);
        CHECK(prog.audit[0].classes.classes() == w.classes);
    }
}

TEST_CASE("degenerate circuits still match the dense oracle") {
    for (auto pat : {DegPattern::kPairAndTwo, DegPattern::kTwoPairs, DegPattern::kTripleAndOne,
                     DegPattern::kAllFour}) {
        GenSpec spec;
        spec.n = 4;
        spec.depth = 8;
        spec.seed = 13;
        Circuit c = gen_degenerate(spec, pat);
        ConvertedProgram prog = convert(c);
        Dist mine = exact_output_distribution(prog, c.product_state(), c.measured);
        Dist ref = measurement_distribution(dense_simulate(c), c.measured);
        CHECK(ct::max_abs_delta(mine, ref) <= 1e-8);
    }
}

TEST_CASE("discordant generator certifies its own failure point") {
    for (std::uint64_t seed : {1u, 4u, 9u}) {
        GenSpec spec;
        spec.n = 2 + seed % 3;
        spec.seed = seed;
        DiscordantSample s = gen_discordant(spec);
        REQUIRE(s.circuit.gates.size() >= s.first_discord + 1);
        try {
            convert(s.circuit);
            FAIL("expected DiscordError");
        } catch (const DiscordError& e) {
            CHECK(e.gate() == static_cast<std::ptrdiff_t>(s.first_discord));
        }
    }
}

TEST_CASE("generation is a pure function of its spec") {
    GenSpec spec;
    spec.n = 5;
    spec.depth = 14;
    spec.seed = 77;
    spec.init = GenSpec::Init::kMixedPure;
    std::string a = serialize_circuit(gen_concordant(spec).circuit);
    std::string b = serialize_circuit(gen_concordant(spec).circuit);
    CHECK(a == b);
    spec.seed = 78;
    CHECK(serialize_circuit(gen_concordant(spec).circuit) != a);
}

TEST_CASE("helper draws are well formed") {
    CounterRng rng(2024);
    for (int i = 0; i < 200; ++i) {
        CHECK(unitarity_defect(random_unitary2(rng)) <= 1e-12);
        CHECK(random_perm4(rng).is_permutation());
    }
}

TEST_CASE("spec validation") {
    GenSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(gen_concordant(spec), std::invalid_argument);
    spec.n = 1;
    CHECK_THROWS_AS(gen_degenerate(spec, DegPattern::kSingletons), std::invalid_argument);
    spec.n = 1;
    CHECK_THROWS_AS(gen_discordant(spec), std::invalid_argument);
    spec.n = kDenseMaxQubits + 1;
    CHECK_THROWS_AS(gen_discordant(spec), std::invalid_argument);
}

TEST_CASE("one-qubit circuits stay single qubit") {
    GenSpec spec;
    spec.n = 1;
    spec.depth = 9;
    spec.seed = 8;
    spec.gates = GenSpec::Gates::kLocalOnly;
    Circuit c = gen_concordant(spec).circuit;
    CHECK(c.n == 1);
    ConvertedProgram prog = convert(c);
    Dist mine = exact_output_distribution(prog, c.product_state(), c.measured);
    Dist ref = measurement_distribution(dense_simulate(c), c.measured);
    CHECK(ct::max_abs_delta(mine, ref) <= 1e-8);
}

}
