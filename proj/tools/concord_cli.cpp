// concord: command-line front end for the concordant-computation toolkit.
//
// Subcommands: convert, run, dist, oracle, check, gen. All read the circuit
// interchange JSON (path argument or "-" for stdin) and write either a
// human-oriented text report or a structured JSON document that embeds
// enough metadata (tool version, seed, tolerances) to reproduce the run.
//
// Exit codes: 0 success, 2 parse/validation error, 3 conversion hit a
// discordant gate (index on stderr, and in the structured output),
// 4 resource bound exceeded (dense oracle or exact enumeration too large).

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "concord/circuit.hpp"
#include "concord/convert.hpp"
#include "concord/generate.hpp"
#include "concord/oracle.hpp"
#include "concord/sample.hpp"
#include "concord/version.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string input = "-";
    std::string format = "structured";
    std::uint64_t seed = 0;
    std::uint64_t shots = 1024;
    std::size_t enum_limit = 20;
    concord::Tolerances tol;

    // gen
    std::string kind = "concordant";
    std::string pattern = "singletons";
    std::string init_mode = "generic";
    std::string gate_mode = "mixed";
    std::size_t n = 4;
    std::size_t depth = 16;

    bool structured() const { return format == "structured"; }
};

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw concord::CircuitError("cannot open input: " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

json meta_json(const Options& o) {
    json m;
    m["tool"] = "concord";
    m["version"] = concord::kVersion;
    m["seed"] = o.seed;
    m["tolerances"] = {{"unitary", o.tol.unitary},       {"rank", o.tol.rank},
                       {"degeneracy", o.tol.degeneracy}, {"edge", o.tol.edge},
                       {"diag", o.tol.diag},             {"parallel", o.tol.parallel}};
    return m;
}

void text_header(const Options& o) {
    std::cout << "# concord " << concord::kVersion << " seed=" << o.seed << " tol-unitary="
              << o.tol.unitary << " tol-rank=" << o.tol.rank << " tol-degeneracy="
              << o.tol.degeneracy << " tol-edge=" << o.tol.edge << " tol-diag=" << o.tol.diag
              << " tol-parallel=" << o.tol.parallel << "\n";
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

std::string classes_string(const concord::DegeneracyClasses& c) {
    std::string s;
    for (const auto& cls : c.classes()) {
        s += '{';
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(cls[i]);
        }
        s += '}';
    }
    return s;
}

void print_distribution(const Options& o, const concord::Dist& d, const json& extra_meta) {
    if (o.structured()) {
        json out;
        out["meta"] = meta_json(o);
        for (auto it = extra_meta.begin(); it != extra_meta.end(); ++it)
            out["meta"][it.key()] = it.value();
        out["dist"] = json::object();
        for (const auto& [bits, p] : d) out["dist"][bits] = p;
        emit(out);
        return;
    }
    text_header(o);
    std::cout << std::setprecision(17);
    for (const auto& [bits, p] : d)
        std::cout << (bits.empty() ? "-" : bits) << " " << p << "\n";
}

int emit_discord(const Options& o, const concord::DiscordError& e) {
    std::cerr << "discordant at gate " << e.gate() << ": " << to_string(e.reason()) << " ("
              << e.detail() << ")\n";
    if (o.structured()) {
        json out;
        out["meta"] = meta_json(o);
        out["error"] = {{"type", "discord"},
                        {"gate", e.gate()},
                        {"reason", to_string(e.reason())},
                        {"detail", e.detail()}};
        emit(out);
    }
    return 3;
}

int cmd_convert(const Options& o) {
    concord::Circuit c = concord::parse_circuit(read_input(o.input), o.tol.unitary);
    concord::ConvertedProgram prog;
    try {
        prog = concord::convert(c, o.tol);
    } catch (const concord::DiscordError& e) {
        return emit_discord(o, e);
    }
    if (o.structured()) {
        json out;
        out["meta"] = meta_json(o);
        out["program"] = json::parse(concord::serialize_converted(prog));
        emit(out);
        return 0;
    }
    text_header(o);
    std::cout << "qubits " << prog.n << "\n";
    std::cout << "flips " << prog.flips.to_string() << "\n";
    for (std::size_t i = 0; i < prog.n; ++i)
        std::cout << "P row " << i << " " << prog.perm.row(i).to_hex() << "\n";
    std::cout << "P offset " << prog.perm.offset().to_hex() << "\n";
    std::cout << std::setprecision(12);
    for (std::size_t k = 0; k < prog.n; ++k) {
        const concord::Mat2& u = prog.basis[k];
        std::cout << "U[" << k << "]";
        for (int r = 0; r < 2; ++r)
            for (int cix = 0; cix < 2; ++cix)
                std::cout << " (" << u.at(r, cix).real() << "," << u.at(r, cix).imag() << ")";
        std::cout << "\n";
    }
    for (const auto& rec : prog.audit)
        std::cout << "gate " << rec.gate << " pair (" << rec.k << "," << rec.l << ") classes "
                  << classes_string(rec.classes) << " perm [" << int(rec.perm.map[0]) << ","
                  << int(rec.perm.map[1]) << "," << int(rec.perm.map[2]) << ","
                  << int(rec.perm.map[3]) << "]\n";
    return 0;
}

int cmd_run(const Options& o) {
    if (o.shots < 1) throw concord::CircuitError("--shots must be at least 1");
    concord::Circuit c = concord::parse_circuit(read_input(o.input), o.tol.unitary);
    concord::ConvertedProgram prog;
    try {
        prog = concord::convert(c, o.tol);
    } catch (const concord::DiscordError& e) {
        return emit_discord(o, e);
    }
    concord::ProductState rho = c.product_state();
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < o.shots; ++s) {
        concord::CounterRng rng(o.seed, s);
        ++counts[concord::run_shot(prog, rho, c.measured, rng)];
    }
    if (o.structured()) {
        json out;
        out["meta"] = meta_json(o);
        out["meta"]["shots"] = o.shots;
        out["counts"] = json::object();
        for (const auto& [bits, cnt] : counts) out["counts"][bits] = cnt;
        emit(out);
        return 0;
    }
    text_header(o);
    std::cout << "# shots " << o.shots << "\n";
    for (const auto& [bits, cnt] : counts)
        std::cout << (bits.empty() ? "-" : bits) << " " << cnt << " "
                  << static_cast<double>(cnt) / static_cast<double>(o.shots) << "\n";
    return 0;
}

int cmd_dist(const Options& o) {
    concord::Circuit c = concord::parse_circuit(read_input(o.input), o.tol.unitary);
    if (c.n > o.enum_limit)
        throw concord::BoundError("exact enumeration needs 2^n terms; n = " +
                                  std::to_string(c.n) + " exceeds --enum-limit " +
                                  std::to_string(o.enum_limit));
    concord::ConvertedProgram prog;
    try {
        prog = concord::convert(c, o.tol);
    } catch (const concord::DiscordError& e) {
        return emit_discord(o, e);
    }
    concord::Dist d =
        concord::exact_output_distribution(prog, c.product_state(), c.measured, o.enum_limit);
    print_distribution(o, d, json{{"enum_limit", o.enum_limit}});
    return 0;
}

int cmd_oracle(const Options& o) {
    concord::Circuit c = concord::parse_circuit(read_input(o.input), o.tol.unitary);
    concord::DenseState st = concord::dense_simulate(c);
    concord::Dist d = concord::measurement_distribution(st, c.measured);
    print_distribution(o, d, json{{"oracle", "dense"}});
    return 0;
}

int cmd_check(const Options& o) {
    concord::Circuit c = concord::parse_circuit(read_input(o.input), o.tol.unitary);
    auto step = concord::first_discord_step(c);
    if (o.structured()) {
        json out;
        out["meta"] = meta_json(o);
        out["concordant"] = !step.has_value();
        out["first_discord_gate"] = step ? json(*step) : json(nullptr);
        emit(out);
        return 0;
    }
    text_header(o);
    if (step)
        std::cout << "discordant after gate " << *step << "\n";
    else
        std::cout << "concordant at every step\n";
    return 0;
}

int cmd_gen(const Options& o) {
    concord::GenSpec spec;
    spec.n = o.n;
    spec.depth = o.depth;
    spec.seed = o.seed;
    if (o.init_mode == "generic") spec.init = concord::GenSpec::Init::kGeneric;
    else if (o.init_mode == "ties") spec.init = concord::GenSpec::Init::kWithTies;
    else spec.init = concord::GenSpec::Init::kMixedPure;
    if (o.gate_mode == "mixed") spec.gates = concord::GenSpec::Gates::kMixed;
    else if (o.gate_mode == "perm") spec.gates = concord::GenSpec::Gates::kPermutationOnly;
    else spec.gates = concord::GenSpec::Gates::kLocalOnly;

    json doc;
    doc["meta"] = meta_json(o);
    doc["meta"]["kind"] = o.kind;
    concord::Circuit c;
    if (o.kind == "concordant") {
        doc["meta"]["init"] = o.init_mode;
        doc["meta"]["gates"] = o.gate_mode;
        c = concord::gen_concordant(spec).circuit;
    } else if (o.kind == "degenerate") {
        concord::DegPattern p;
        if (o.pattern == "singletons") p = concord::DegPattern::kSingletons;
        else if (o.pattern == "pair-two") p = concord::DegPattern::kPairAndTwo;
        else if (o.pattern == "two-pairs") p = concord::DegPattern::kTwoPairs;
        else if (o.pattern == "triple-one") p = concord::DegPattern::kTripleAndOne;
        else p = concord::DegPattern::kAllFour;
        doc["meta"]["pattern"] = o.pattern;
        c = concord::gen_degenerate(spec, p);
    } else {
        concord::DiscordantSample s = concord::gen_discordant(spec);
        doc["meta"]["certified_discord_at"] = s.first_discord;
        c = s.circuit;
    }
    json body = json::parse(concord::serialize_circuit(c));
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    if (o.structured())
        emit(doc);
    else
        std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"classical conversion and sampling for concordant computations"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input)
            sub->add_option("input", o.input, "circuit JSON path, or - for stdin");
        sub->add_option("--seed", o.seed, "random seed (echoed in all outputs)");
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--tol-unitary", o.tol.unitary, "unitarity defect bound");
        sub->add_option("--tol-rank", o.tol.rank, "product-factor rank bound");
        sub->add_option("--tol-degeneracy", o.tol.degeneracy, "eigenvalue grouping width");
        sub->add_option("--tol-edge", o.tol.edge, "overlap-graph edge threshold");
        sub->add_option("--tol-diag", o.tol.diag, "solve verification off-diagonal bound");
        sub->add_option("--tol-parallel", o.tol.parallel, "parallel/orthogonal factor bound");
    };

    CLI::App* sc = app.add_subcommand("convert", "emit permutation + basis + audit log");
    add_common(sc, true);
    CLI::App* sr = app.add_subcommand("run", "sample measurement shots");
    add_common(sr, true);
    sr->add_option("--shots", o.shots, "number of shots");
    CLI::App* sd = app.add_subcommand("dist", "exact output distribution (2^n enumeration)");
    add_common(sd, true);
    sd->add_option("--enum-limit", o.enum_limit, "largest n allowed for enumeration");
    CLI::App* so = app.add_subcommand("oracle", "dense density-matrix reference distribution");
    add_common(so, true);
    CLI::App* sk = app.add_subcommand("check", "dense concordance check per gate prefix");
    add_common(sk, true);
    CLI::App* sg = app.add_subcommand("gen", "generate circuit corpora");
    add_common(sg, false);
    sg->add_option("--kind", o.kind, "corpus kind")
        ->check(CLI::IsMember({"concordant", "degenerate", "discordant"}));
    sg->add_option("--pattern", o.pattern, "degeneracy pattern for --kind degenerate")
        ->check(CLI::IsMember({"singletons", "pair-two", "two-pairs", "triple-one", "all-four"}));
    sg->add_option("--init", o.init_mode, "initial-state mode")
        ->check(CLI::IsMember({"generic", "ties", "pure"}));
    sg->add_option("--gates", o.gate_mode, "gate mix")
        ->check(CLI::IsMember({"mixed", "perm", "local"}));
    sg->add_option("--n", o.n, "number of qubits");
    sg->add_option("--depth", o.depth, "number of gates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc->parsed()) return cmd_convert(o);
        if (sr->parsed()) return cmd_run(o);
        if (sd->parsed()) return cmd_dist(o);
        if (so->parsed()) return cmd_oracle(o);
        if (sk->parsed()) return cmd_check(o);
        if (sg->parsed()) return cmd_gen(o);
    } catch (const concord::CircuitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const concord::BoundError& e) {
        std::cerr << "resource bound exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
