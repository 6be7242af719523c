#include "normlog/harness.hpp"

#include "normlog/surface.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

namespace normlog {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Program load_program(const std::filesystem::path& path, CompilationTrace* trace) {
    std::string text = read_file(path);
    if (path.extension() == ".deon") {
        CompiledTheory compiled = compile_theory(parse_deontic(text));
        if (trace) *trace = std::move(compiled.trace);
        return std::move(compiled.program);
    }
    return parse_program(text);
}

std::vector<PredicateSig> exception_signatures(const Program& program) {
    if (!program.exceptions.empty()) return program.exceptions;
    std::set<PredicateSig> out;
    for (const auto& rule : program.rules) {
        if (!rule.head) continue;
        for (const auto& e : rule.body) {
            if (e.is_naf() && e.literal() == *rule.head) {
                const Literal& h = *rule.head;
                out.insert(PredicateSig{h.strong_neg, h.atom.predicate, h.atom.arity()});
            }
        }
    }
    return {out.begin(), out.end()};
}

ComplianceReport check_narrative(const Program& base, const Program& facts, std::string narrative) {
    if (!facts.abducibles.empty() || !facts.show.empty() || !facts.exceptions.empty()) {
        throw Error(ErrorCode::NonFactNarrative, "a narrative may not carry directives");
    }
    Program combined = base;
    for (const auto& rule : facts.rules) {
        if (!rule.is_fact() || !rule.head->atom.is_ground()) {
            throw Error(ErrorCode::NonFactNarrative, "narrative entry '" + rule.to_string() + "' is not a ground fact",
                        rule.span);
        }
        combined.rules.push_back(rule);
    }
    std::vector<PredicateSig> exceptions = exception_signatures(base);
    GroundProgram g = ground(combined);

    ComplianceReport report;
    report.narrative = std::move(narrative);
    report.models = enumerate_models(g);
    report.satisfiable = !report.models.empty();
    for (const auto& m : report.models) {
        for (const auto& l : m.visible) {
            PredicateSig sig{l.strong_neg, l.atom.predicate, l.atom.arity()};
            if (std::find(exceptions.begin(), exceptions.end(), sig) != exceptions.end()) {
                report.triggered_exceptions.insert(l.to_string());
            }
        }
    }
    return report;
}

namespace {

json model_json(const AnswerSet& m) {
    json shown = json::object();
    for (const auto& [text, present] : m.shown) shown[text] = present;
    return json{{"literals", m.texts()}, {"shown", shown}};
}

json models_value(const std::vector<AnswerSet>& models) {
    json list = json::array();
    for (const auto& m : models) list.push_back(model_json(m));
    return json{{"count", models.size()}, {"models", list}};
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

std::string_view to_string(PreemptionKind k) {
    switch (k) {
        case PreemptionKind::None: return "none";
        case PreemptionKind::Complement: return "complement";
        case PreemptionKind::Condition: return "condition";
    }
    return "none";
}

}  // namespace

std::string models_json(const std::vector<AnswerSet>& models) { return canonical(models_value(models)); }

std::string report_json(const ComplianceReport& report) {
    json j = models_value(report.models);
    j["narrative"] = report.narrative;
    j["satisfiable"] = report.satisfiable;
    j["triggered_exceptions"] = std::vector<std::string>(report.triggered_exceptions.begin(),
                                                         report.triggered_exceptions.end());
    return canonical(j);
}

std::string trace_json(const CompilationTrace& trace) {
    json list = json::array();
    for (const auto& e : trace.entries) {
        std::vector<std::string> rules;
        for (const auto& r : e.rules) rules.push_back(r.to_string());
        list.push_back(json{{"index", e.index},
                            {"statement", e.statement},
                            {"tag", std::string(to_string(e.tag))},
                            {"preemption", std::string(to_string(e.preemption))},
                            {"rules", rules}});
    }
    return canonical(json{{"statements", list}});
}

std::vector<CorpusCase> load_manifest(const std::filesystem::path& corpus_dir) {
    json manifest;
    try {
        manifest = json::parse(read_file(corpus_dir / "manifest.json"));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, std::string("malformed corpus manifest: ") + e.what());
    }
    std::vector<CorpusCase> out;
    for (const auto& j : manifest.at("cases")) {
        CorpusCase c;
        c.name = j.at("name").get<std::string>();
        c.description = j.value("description", "");
        c.program = j.at("program").get<std::string>();
        if (j.contains("narrative")) c.narrative = j.at("narrative").get<std::string>();
        c.query = j.value("query", "");
        c.golden = j.value("golden", "golden/" + c.name + ".json");
        c.reconstructed = j.value("reconstructed", false);
        out.push_back(std::move(c));
    }
    return out;
}

std::string run_case(const std::filesystem::path& corpus_dir, const CorpusCase& c) {
    Program program = load_program(corpus_dir / c.program);
    if (c.narrative) {
        Program facts = parse_program(read_file(corpus_dir / *c.narrative));
        return report_json(check_narrative(program, facts, c.name));
    }
    GroundProgram g = ground(program);
    return models_json(query(g, parse_query(c.query)));
}

namespace {

std::string first_difference(const std::string& expected, const std::string& actual) {
    std::istringstream e(expected), a(actual);
    std::string le, la;
    for (std::size_t line = 1;; ++line) {
        bool he = static_cast<bool>(std::getline(e, le));
        bool ha = static_cast<bool>(std::getline(a, la));
        if (!he && !ha) return "outputs differ";
        if (le != la || he != ha) {
            return "line " + std::to_string(line) + ": expected '" + (he ? le : "<eof>") + "', got '" +
                   (ha ? la : "<eof>") + "'";
        }
    }
}

CorpusResult run_one(const std::filesystem::path& dir, const CorpusCase& c) {
    CorpusResult r;
    r.name = c.name;
    auto start = std::chrono::steady_clock::now();
    try {
        std::string actual = run_case(dir, c);
        std::string expected = read_file(dir / c.golden);
        r.passed = actual == expected;
        if (!r.passed) r.detail = first_difference(expected, actual);
    } catch (const Error& e) {
        r.detail = e.diagnostic();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

std::vector<CorpusResult> run_corpus(const std::filesystem::path& corpus_dir, const std::string& filter) {
    std::vector<std::future<CorpusResult>> pending;
    for (const auto& c : load_manifest(corpus_dir)) {
        if (c.name.find(filter) == std::string::npos) continue;
        pending.push_back(std::async(std::launch::async, run_one, corpus_dir, c));
    }
    std::vector<CorpusResult> out;
    for (auto& f : pending) out.push_back(f.get());
    return out;
}

std::string format_results(const std::vector<CorpusResult>& results) {
    std::size_t width = 4;
    for (const auto& r : results) width = std::max(width, r.name.size());
    std::ostringstream out;
    std::size_t passed = 0;
    for (const auto& r : results) {
        passed += r.passed;
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ');
        char ms[32];
        std::snprintf(ms, sizeof ms, "%8.1f ms", r.millis);
        out << ms;
        if (!r.passed) out << "  " << r.detail;
        out << '\n';
    }
    out << passed << "/" << results.size() << " cases passed\n";
    return out.str();
}

}  // namespace normlog
