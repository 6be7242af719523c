#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace normlog;
using namespace normlog::testing;
namespace fs = std::filesystem;

namespace {

ComplianceReport narrative(int n) {
    Program base = load_program(corpus_dir() + "/programs/car.asp");
    Program facts = parse_program(read_file(corpus_dir() + "/narratives/car_" + std::to_string(n) + ".asp"));
    return check_narrative(base, facts, "car_" + std::to_string(n));
}

using Names = std::set<std::string>;

}  // namespace

TEST_CASE("car narratives", "[harness]") {
    const std::map<int, Names> expected{
        {1, {"fail_to_return_car", "fail_to_return_by_noon", "fail_to_return_ok_battery"}},
        {2, {}},
        {3, {"fail_to_return_by_noon"}},
        {4, {"fail_to_return_ok_battery"}},
        {5, {"fail_to_return_by_noon", "fail_to_return_ok_battery"}},
        {6, {"fail_to_return_ok_battery"}},
        {7, {}},
    };
    for (const auto& [n, exceptions] : expected) {
        INFO("narrative " << n);
        ComplianceReport r = narrative(n);
        CHECK(r.satisfiable);
        CHECK(r.satisfiable == !r.models.empty());
        CHECK(r.triggered_exceptions == exceptions);
        for (const auto& e : r.triggered_exceptions) {
            CHECK(std::any_of(r.models.begin(), r.models.end(),
                              [&](const AnswerSet& m) { return m.contains(parse_literal(e)); }));
        }
    }
}

TEST_CASE("narrative justification reaches the sickness fact", "[harness]") {
    Program p = load_program(corpus_dir() + "/programs/car.asp");
    for (const auto& r : parse_program(read_file(corpus_dir() + "/narratives/car_3.asp")).rules) p.rules.push_back(r);
    GroundProgram g = ground(p);
    auto models = enumerate_models(g);
    REQUIRE(models.size() == 1);
    Justification j = justify(g, models[0], lit("fail_to_return_by_noon"));
    std::function<bool(const JustificationNode&)> has_leaf = [&](const JustificationNode& n) {
        if (n.children.empty() && n.kind == JustificationNode::Kind::Fact && n.literal == lit("sick(jones,8)")) {
            return true;
        }
        return std::any_of(n.children.begin(), n.children.end(), has_leaf);
    };
    CHECK(has_leaf(j.root));
}

TEST_CASE("narratives must be ground facts", "[harness]") {
    Program base = load_program(corpus_dir() + "/programs/car.asp");
    for (std::string text : {"p :- q.", "sick(X, 8).", "#abducible p.", ":- p."}) {
        try {
            check_narrative(base, parse_program(text));
            FAIL("accepted: " << text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonFactNarrative);
        }
    }
}

TEST_CASE("exception atoms", "[harness]") {
    auto names = [](const Program& p) {
        Names out;
        for (const auto& s : exception_signatures(p)) out.insert(s.to_string());
        return out;
    };
    CHECK(names(parse_program("c :- q, not c. d :- not p. -go :- not go, not -go.")) == Names{"c/0", "-go/0"});
    CHECK(names(parse_program("#exceptions x/0.\nc :- q, not c.")) == Names{"x/0"});
    CHECK(names(load_program(corpus_dir() + "/programs/car.asp")) ==
          Names{"fail_to_return_car/0", "fail_to_return_by_noon/0", "fail_to_return_ok_battery/0"});
}

TEST_CASE("canonical JSON", "[harness]") {
    GroundProgram g = ground(load_program(corpus_dir() + "/programs/chisholm_olon.deon"));
    std::string text = models_json(enumerate_models(g));
    CHECK(text == models_json(enumerate_models(g)));
    auto j = nlohmann::json::parse(text);
    CHECK(j["count"] == 2);
    CHECK(j["models"][1]["literals"] == nlohmann::json::array({"go", "tell"}));
    CHECK(j["models"][1]["shown"]["-go"] == false);
    CHECK(j["models"][1]["shown"]["go"] == true);
    CHECK(text.find("\"count\"") < text.find("\"models\""));

    CompiledTheory c = compile_theory(parse_deontic("obligatory go unless -go. obligatory tell when go."));
    auto trace = nlohmann::json::parse(trace_json(c.trace));
    CHECK(trace["statements"][0]["tag"] == "OLON-OB");
    CHECK(trace["statements"][1]["rules"][0] == ":- go, not tell.");

    auto report = nlohmann::json::parse(report_json(narrative(3)));
    CHECK(report["triggered_exceptions"] == nlohmann::json::array({"fail_to_return_by_noon"}));
    CHECK(report["satisfiable"] == true);
}

TEST_CASE("corpus runner", "[harness][corpus]") {
    auto results = run_corpus(corpus_dir());
    CHECK(results.size() == load_manifest(corpus_dir()).size());
    for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
        CHECK(r.millis < 1000.0);
    }

    SECTION("filter by substring") {
        auto chisholm = run_corpus(corpus_dir(), "chisholm");
        REQUIRE(chisholm.size() == 2);
        CHECK(chisholm[0].name == "chisholm_olon");
        CHECK(chisholm[1].name == "chisholm_ignore_obligation");
    }
    SECTION("an edited golden fails with a named diff") {
        fs::path tmp = fs::temp_directory_path() / "normlog_corpus_copy";
        fs::remove_all(tmp);
        fs::copy(corpus_dir(), tmp, fs::copy_options::recursive);
        {
            std::ofstream out(tmp / "golden" / "sartre.json", std::ios::binary);
            out << read_file(fs::path(corpus_dir()) / "golden" / "sartre.json") << "\n";
        }
        auto rerun = run_corpus(tmp);
        std::size_t failed = 0;
        for (const auto& r : rerun) {
            if (r.passed) continue;
            ++failed;
            CHECK(r.name == "sartre");
            CHECK_FALSE(r.detail.empty());
        }
        CHECK(failed == 1);
        CHECK(format_results(rerun).find("FAIL  sartre") != std::string::npos);
        fs::remove_all(tmp);
    }
}
