#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using json = nlohmann::json;

namespace {

struct CliResult {
    int status = -1;
    std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args, const std::string& input = "") {
    static int counter = 0;
    const auto base = std::filesystem::temp_directory_path() /
                      ("concord_cli_" + std::to_string(::getpid()) + "_" +
                       std::to_string(counter++));
    const auto in = base.string() + ".in", out = base.string() + ".out",
               err = base.string() + ".err";
    {
        std::ofstream f(in, std::ios::binary);
        f << input;
    }
    std::string cmd = std::string("\"") + CONCORD_CLI_PATH + "\" " + args + " < " + in + " > " +
                      out + " 2> " + err;
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.status = rc == -1 ? -1 : (WIFEXITED(rc) ? WEXITSTATUS(rc) : -2);
    r.out = slurp(out);
    r.err = slurp(err);
    std::filesystem::remove(in);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return r;
}

const char* kCopy = R"({"qubits":2,"init":[[1,2],[1,1]],"gates":[{"q":[0,1],"m":"CNOT"}]})";
const char* kDiscord =
    R"({"qubits":2,"init":[[2,3],[2,3]],"gates":[{"q":0,"m":"H"},{"q":[0,1],"m":"CNOT"}]})";

std::string wide_circuit(int n) {
    std::string s = R"({"qubits":)" + std::to_string(n) + R"(,"init":[)";
    for (int k = 0; k < n; ++k) s += std::string(k ? "," : "") + "[1,2]";
    return s + R"(],"gates":[]})";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("convert emits the program with reproducibility metadata") {
    CliResult r = run_cli("convert -", kCopy);
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["meta"]["tool"] == "concord");
    CHECK(j["meta"].contains("version"));
    CHECK(j["meta"]["seed"] == 0);
    CHECK(j["meta"]["tolerances"]["unitary"].get<double>() == 1e-9);
    CHECK(j["program"]["qubits"] == 2);
    REQUIRE(j["program"]["audit"].size() == 1);
    CHECK(j["program"]["audit"][0]["qubits"] == json::array({0, 1}));
}

TEST_CASE("every subcommand carries the metadata block") {
    for (const char* sub : {"convert", "run", "dist", "oracle", "check"}) {
        CliResult r = run_cli(std::string(sub) + " - --seed 9", kCopy);
        REQUIRE(r.status == 0);
        json j = json::parse(r.out);
        CHECK(j["meta"]["tool"] == "concord");
        CHECK(j["meta"]["seed"] == 9);
        CHECK(j["meta"]["tolerances"].size() == 6);
    }
}

TEST_CASE("run is reproducible and counts add up") {
    CliResult a = run_cli("run - --shots 1000 --seed 7", kCopy);
    CliResult b = run_cli("run - --shots 1000 --seed 7", kCopy);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    std::uint64_t total = 0;
    for (const auto& [bits, cnt] : j["counts"].items()) {
        CHECK(bits.size() == 2);
        total += cnt.get<std::uint64_t>();
    }
    CHECK(total == 1000);
    CliResult c = run_cli("run - --shots 1000 --seed 8", kCopy);
    CHECK(a.out != c.out);
}

TEST_CASE("discordant input exits 3 with the gate on stderr") {
    CliResult r = run_cli("convert -", kDiscord);
    CHECK(r.status == 3);
    CHECK(r.err.find("discordant at gate 1") != std::string::npos);
    json j = json::parse(r.out);
    CHECK(j["error"]["type"] == "discord");
    CHECK(j["error"]["gate"] == 1);
    CHECK(j["error"].contains("reason"));
    // run and dist report the same failure
    CHECK(run_cli("run -", kDiscord).status == 3);
    CHECK(run_cli("dist -", kDiscord).status == 3);
}

TEST_CASE("dist agrees with the dense oracle") {
    CliResult mine = run_cli("dist -", kCopy);
    CliResult ref = run_cli("oracle -", kCopy);
    REQUIRE(mine.status == 0);
    REQUIRE(ref.status == 0);
    json a = json::parse(mine.out)["dist"];
    json b = json::parse(ref.out)["dist"];
    std::set<std::string> keys;
    for (const auto& [k, v] : a.items()) keys.insert(k);
    for (const auto& [k, v] : b.items()) keys.insert(k);
    for (const std::string& k : keys) {
        double pa = a.contains(k) ? a[k].get<double>() : 0.0;
        double pb = b.contains(k) ? b[k].get<double>() : 0.0;
        CHECK(std::abs(pa - pb) <= 1e-8);
    }
}

TEST_CASE("generated circuits flow straight back into the tool") {
    CliResult gen = run_cli("gen --kind concordant --n 3 --depth 6 --seed 5 --init ties");
    REQUIRE(gen.status == 0);
    json g = json::parse(gen.out);
    CHECK(g["meta"]["kind"] == "concordant");
    CHECK(g["qubits"] == 3);
    CliResult conv = run_cli("convert -", gen.out);
    CHECK(conv.status == 0);
    CliResult dist = run_cli("dist -", gen.out);
    CHECK(dist.status == 0);

    CliResult bad = run_cli("gen --kind discordant --n 2 --seed 3");
    REQUIRE(bad.status == 0);
    json gb = json::parse(bad.out);
    REQUIRE(gb["meta"].contains("certified_discord_at"));
    CliResult fail = run_cli("convert -", bad.out);
    CHECK(fail.status == 3);
    json fj = json::parse(fail.out);
    CHECK(fj["error"]["gate"] == gb["meta"]["certified_discord_at"]);
}

TEST_CASE("gen is deterministic per seed") {
    CliResult a = run_cli("gen --kind degenerate --pattern two-pairs --n 4 --seed 12");
    CliResult b = run_cli("gen --kind degenerate --pattern two-pairs --n 4 --seed 12");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("check reports concordance as data") {
    CliResult good = run_cli("check -", kCopy);
    REQUIRE(good.status == 0);
    json g = json::parse(good.out);
    CHECK(g["concordant"] == true);
    CHECK(g["first_discord_gate"].is_null());
    CliResult bad = run_cli("check -", kDiscord);
    REQUIRE(bad.status == 0);
    json h = json::parse(bad.out);
    CHECK(h["concordant"] == false);
    CHECK(h["first_discord_gate"] == 1);
}

TEST_CASE("malformed input exits 2") {
    CliResult r = run_cli("convert -", "{nope");
    CHECK(r.status == 2);
    CHECK(!r.err.empty());
    CHECK(run_cli("run -", R"({"qubits":0,"init":[]})").status == 2);
}

TEST_CASE("unknown flags and bad enum values exit 2") {
    CHECK(run_cli("convert - --no-such-flag", kCopy).status == 2);
    CHECK(run_cli("convert - --format yaml", kCopy).status == 2);
    CHECK(run_cli("frobnicate", "").status == 2);
}

TEST_CASE("resource bounds exit 4") {
    CliResult r = run_cli("oracle -", wide_circuit(11));
    CHECK(r.status == 4);
    CHECK(r.err.find("resource bound") != std::string::npos);
    CHECK(run_cli("dist - --enum-limit 3", wide_circuit(4)).status == 4);
}

TEST_CASE("text format prints the header and program") {
    CliResult r = run_cli("convert - --format text --seed 2", kCopy);
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("# concord", 0) == 0);
    CHECK(r.out.find("seed=2") != std::string::npos);
    CHECK(r.out.find("tol-unitary=") != std::string::npos);
    CHECK(r.out.find("P row 0") != std::string::npos);
    CHECK(r.out.find("U[0]") != std::string::npos);
    CHECK(r.out.find("classes") != std::string::npos);
    CliResult d = run_cli("dist - --format text", kCopy);
    REQUIRE(d.status == 0);
    CHECK(d.out.find("00 0.5") != std::string::npos);
}

}
