#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace normlog;
using namespace normlog::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "normlog_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

Run run(const std::string& args) {
    fs::path out = scratch() / "stdout.txt";
    std::string cmd = std::string("\"") + NORMLOG_CLI + "\" " + args + " > \"" + out.string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    return r;
}

std::string corpus(const std::string& rel) { return "\"" + corpus_dir() + "/" + rel + "\""; }

}  // namespace

TEST_CASE("cli compile", "[cli]") {
    fs::path out = scratch() / "chisholm.asp";
    Run r = run("compile " + corpus("programs/chisholm_olon.deon") + " -o \"" + out.string() + "\"");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("OLON-OB") != std::string::npos);
    Program compiled = parse_program(read_file(out));
    Program listing = parse_program(read_file(corpus_dir() + "/listings/chisholm.asp"));
    // The listing adds the fact -go; the compiled program adds the abducibles.
    std::vector<std::string> rules, expected;
    for (const auto& rule : compiled.rules) rules.push_back(rule.to_string());
    for (const auto& rule : listing.rules) {
        if (!rule.is_fact()) expected.push_back(rule.to_string());
    }
    CHECK(rules == expected);
    CHECK(compiled.abducibles.size() == 4);

    SECTION("empty theory") {
        fs::path empty = write_temp("empty.deon", "");
        fs::path target = scratch() / "empty.asp";
        CHECK(run("compile \"" + empty.string() + "\" -o \"" + target.string() + "\"").code == 0);
        CHECK(read_file(target).find_first_not_of(" \n") == std::string::npos);
    }
    SECTION("unless naming the target is rejected") {
        fs::path bad = write_temp("bad.deon", "obligatory p unless p.\n");
        Run e = run("compile \"" + bad.string() + "\" -o \"" + (scratch() / "bad.asp").string() + "\"");
        CHECK(e.code == 2);
        CHECK_FALSE(e.out.empty());
    }
    SECTION("trace as JSON") {
        Run j = run("compile " + corpus("programs/chisholm_olon.deon") + " -o \"" + out.string() + "\" --json");
        REQUIRE(j.code == 0);
        CHECK(nlohmann::json::parse(j.out)["statements"].size() == 7);
    }
}

TEST_CASE("cli solve", "[cli]") {
    Run sartre = run("solve " + corpus("programs/sartre.asp") + " --json");
    REQUIRE(sartre.code == 0);
    CHECK(nlohmann::json::parse(sartre.out)["count"] == 2);

    CHECK(run("solve " + corpus("programs/good_samaritan.asp")).code == 1);

    Run dog = run("solve " + corpus("programs/dog.deon") + " --query warning_sign --json");
    REQUIRE(dog.code == 0);
    auto j = nlohmann::json::parse(dog.out);
    CHECK(j["count"] == 1);
    CHECK(j["models"][0]["literals"] == nlohmann::json::array({"dog", "warning_sign"}));

    Run limited = run("solve " + corpus("programs/fence_calm_sea.asp") + " --max-models 1 --json");
    CHECK(nlohmann::json::parse(limited.out)["count"] == 1);

    Run text = run("solve " + corpus("programs/chisholm_olon.deon") + " --show-naf");
    CHECK(text.out.find("not go") != std::string::npos);

    fs::path unsafe = write_temp("unsafe.asp", "p(X) :- not q(X).\n");
    Run e = run("solve \"" + unsafe.string() + "\"");
    CHECK(e.code == 2);
    CHECK(e.out.find("X") != std::string::npos);

    CHECK(run("solve \"" + (scratch() / "missing.asp").string() + "\"").code == 2);
    CHECK(run("solve").code == 2);
}

TEST_CASE("cli check and corpus", "[cli]") {
    Run r = run("check " + corpus("programs/car.asp") + " --narrative " + corpus("narratives/car_3.asp") + " --json");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["triggered_exceptions"] ==
          nlohmann::json::array({"fail_to_return_by_noon"}));

    Run c = run("corpus --corpus \"" + corpus_dir() + "\" --filter chisholm");
    CHECK(c.code == 0);
    CHECK(c.out.find("2/2 cases passed") != std::string::npos);
    CHECK(run("corpus --corpus \"" + corpus_dir() + "\" --filter no_such_case").code == 1);
}
