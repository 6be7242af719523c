#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace normlog;
using namespace normlog::testing;

namespace {

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Io;
}

std::set<std::string> rule_texts(const GroundProgram& g) {
    std::set<std::string> out;
    for (const auto& r : g.rules) out.insert(g.rule_text(r));
    return out;
}

Program car_with(const std::string& narrative) {
    Program base = parse_program(read_file(corpus_dir() + "/programs/car.asp"));
    Program facts = parse_program(read_file(corpus_dir() + "/narratives/" + narrative));
    for (const auto& r : facts.rules) base.rules.push_back(r);
    return base;
}

std::set<std::string> universe_texts(const Program& p) {
    std::set<std::string> out;
    for (const auto& t : herbrand_universe(p)) out.insert(t.to_string());
    return out;
}

}  // namespace

TEST_CASE("safety", "[grounder]") {
    SECTION("positive literal binds") {
        auto r = check_safety(parse_program("p(X) :- q(X). q(a)."));
        CHECK(r.all_safe());
    }
    SECTION("default negation does not bind") {
        auto r = check_safety(parse_program("p(X) :- not q(X)."));
        REQUIRE_FALSE(r.all_safe());
        CHECK(r.rules[0].unsafe_vars == std::vector<std::string>{"X"});
        CHECK(error_of([] { ground(parse_program("p(X) :- not q(X).")); }) == ErrorCode::UnsafeRule);
    }
    SECTION("head-only variables") {
        auto r = check_safety(parse_program("p(X)."));
        CHECK_FALSE(r.all_safe());
        CHECK_FALSE(check_safety(parse_program(":- q(X), not r(Y). q(a).")).all_safe());
    }
    SECTION("assignment binds when called with bound inputs") {
        Program p = parse_program(
            "diff(L1,L2,D) :- L1 .>=. L2, D .=. L1 - L2.\n"
            "diff(L1,L2,D) :- L1 .<. L2, D .=. L2 - L1.\n"
            "close(A,B) :- v(A), v(B), diff(A,B,D), D .<. 2.\n");
        auto r = check_safety(p);
        CHECK(r.all_safe());
        REQUIRE(r.modes.count(PredicateSig{false, "diff", 3}));
        CHECK(r.modes.at(PredicateSig{false, "diff", 3}) == std::vector<std::size_t>{0, 1});
    }
    SECTION("battery check is demand-grounded on its time arguments") {
        auto r = check_safety(parse_program(read_file(corpus_dir() + "/programs/car.asp")));
        CHECK(r.all_safe());
        CHECK(r.modes.at(PredicateSig{false, "battery_ok_to_return", 3}) == std::vector<std::size_t>{1, 2});
    }
    SECTION("describe names the offending variables") {
        Program p = parse_program("p(X) :- not q(X).");
        CHECK(check_safety(p).describe(p).find("X") != std::string::npos);
    }
}

TEST_CASE("Herbrand universe", "[grounder]") {
    CHECK(universe_texts(parse_program(read_file(corpus_dir() + "/narratives/car_2.asp"))) ==
          std::set<std::string>{"smith_bmw", "jones", "smith", "0", "5", "200"});
    CHECK(universe_texts(parse_program("p :- not q. :- p, r.")).empty());
    auto u = universe_texts(car_with("car_3.asp"));
    CHECK(u.count("14"));
    CHECK(u.count("195"));
    CHECK(u.count("8"));
    CHECK(u.count("0.05"));
}

TEST_CASE("builtins over exact rationals", "[grounder]") {
    auto n = [](std::int64_t v) { return Term::number(Rational(v)); };
    CHECK(eval_builtin(CmpOp::Ge, n(200), n(195)));
    CHECK(eval_builtin(CmpOp::Lt, n(5), Term::number(Rational(1, 20) * Rational(200))));
    CHECK_FALSE(eval_builtin(CmpOp::Gt, n(5), n(12)));
    CHECK(eval_builtin(CmpOp::Ne, Term::constant("jones"), Term::constant("smith")));
    CHECK(eval_builtin(CmpOp::Eq, n(5), Term::number(Rational(10, 2))));
    CHECK(eval_builtin(CmpOp::Ne, Term::constant("a"), n(1)));
    CHECK(error_of([&] { eval_builtin(CmpOp::Lt, Term::constant("a"), n(1)); }) == ErrorCode::TypeMismatch);

    Substitution s{{"L1", n(200)}, {"L2", n(195)}};
    ArithExpr diff = ArithExpr::binary(ArithExpr::Op::Sub, Term::variable("L1"), Term::variable("L2"));
    CHECK(evaluate(diff, s) == n(5));
    CHECK_FALSE(evaluate(diff, {}).has_value());
    CHECK(error_of([] {
              evaluate(ArithExpr::binary(ArithExpr::Op::Add, Term::constant("a"), Term::number(Rational(1))), {});
          }) == ErrorCode::TypeMismatch);
}

TEST_CASE("grounding the car example", "[grounder]") {
    GroundProgram g = ground(car_with("car_3.asp"));
    auto texts = rule_texts(g);
    CHECK(texts.count("diff(200,195,5)."));
    CHECK(texts.count("same_battery_level(smith_bmw,0,14) :- car(smith_bmw), batterylvl(smith_bmw,0,200), "
                      "batterylvl(smith_bmw,14,195), diff(200,195,5)."));
    CHECK(texts.count("fail_to_return_by_noon :- friend(jones,smith), car(smith_bmw), "
                      "car_returned(jones,smith,smith_bmw,14), borrowed_car(jones,smith,smith_bmw,0), "
                      "not fail_to_return_by_noon."));
    // No rule keeps a variable.
    for (AtomId a = 0; a < g.atoms.size(); ++a) CHECK(g.atoms.literal(a).atom.is_ground());

    SECTION("a false builtin drops the instance") {
        GroundProgram g2 = ground(car_with("car_2.asp"));
        for (const auto& t : rule_texts(g2)) CHECK(t.rfind("fail_to_return_by_noon :- friend", 0) != 0);
    }
}

TEST_CASE("grounding is the identity on ground input", "[grounder]") {
    for (std::string text : {"p :- not q. q :- not p. :- p, -r.", "-go :- not go, not -go. :- go, not tell. -go.",
                             "a. b :- a, not c. :- not b."}) {
        Program p = parse_program(text);
        GroundProgram g = ground(p);
        REQUIRE(g.rules.size() == p.rules.size());
        for (std::size_t i = 0; i < p.rules.size(); ++i) CHECK(g.rule_text(g.rules[i]) == p.rules[i].to_string());
    }
}

TEST_CASE("grounding errors", "[grounder]") {
    CHECK(error_of([] { ground(parse_program("p(X) :- q(X), X .<. a. q(1).")); }) == ErrorCode::TypeMismatch);
    // Counting upwards never reaches a fixpoint over the rationals.
    GroundOptions tight;
    tight.max_iterations = 50;
    CHECK(error_of([&] {
              ground(parse_program("n(0). n(Y) :- n(X), Y .=. X + 1."), tight);
          }) == ErrorCode::GroundingLimit);
    GroundOptions few;
    few.max_rules = 10;
    CHECK(error_of([&] { ground(parse_program("n(0). n(Y) :- n(X), Y .=. X + 1."), few); }) ==
          ErrorCode::GroundingLimit);
}

TEST_CASE("grounding is monotone in facts", "[grounder][property]") {
    Program base = parse_program(read_file(corpus_dir() + "/programs/car.asp"));
    Program facts = parse_program(read_file(corpus_dir() + "/narratives/car_5.asp"));
    Program current = base;
    std::set<std::string> previous = rule_texts(ground(current));
    for (const auto& f : facts.rules) {
        current.rules.push_back(f);
        std::set<std::string> next = rule_texts(ground(current));
        CHECK(std::includes(next.begin(), next.end(), previous.begin(), previous.end()));
        previous = std::move(next);
    }
}

TEST_CASE("models do not depend on rule order", "[grounder][property]") {
    std::mt19937_64 rng(test_seed());
    for (const auto& c : load_manifest(corpus_dir())) {
        INFO(c.name);
        Program p = load_program(corpus_dir() + "/" + c.program);
        if (c.narrative) {
            for (const auto& r : parse_program(read_file(corpus_dir() + "/" + *c.narrative)).rules) p.rules.push_back(r);
        }
        Models expected = models_of(p);
        for (int round = 0; round < 3; ++round) {
            std::shuffle(p.rules.begin(), p.rules.end(), rng);
            CHECK(models_of(p) == expected);
        }
    }
}
