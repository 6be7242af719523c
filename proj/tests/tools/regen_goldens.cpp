// Rewrites the corpus goldens from the reference enumerator.
//
//   regen_goldens [CORPUS_DIR] [--check]
//
// With --check nothing is written; differing goldens are listed and the
// exit status is 1.

#include "../support/oracle.hpp"

#include "normlog/harness.hpp"
#include "normlog/surface.hpp"

#include <fstream>
#include <iostream>

using namespace normlog;

namespace {

std::string oracle_output(const std::filesystem::path& dir, const CorpusCase& c) {
    Program program = load_program(dir / c.program);
    if (c.narrative) {
        Program facts = parse_program(read_file(dir / *c.narrative));
        Program combined = program;
        for (const auto& r : facts.rules) combined.rules.push_back(r);
        GroundProgram g = ground(combined);
        ComplianceReport report;
        report.narrative = c.name;
        report.models = testing::oracle_models(g);
        report.satisfiable = !report.models.empty();
        auto exceptions = exception_signatures(program);
        for (const auto& m : report.models) {
            for (const auto& l : m.visible) {
                PredicateSig sig{l.strong_neg, l.atom.predicate, l.atom.arity()};
                if (std::find(exceptions.begin(), exceptions.end(), sig) != exceptions.end()) {
                    report.triggered_exceptions.insert(l.to_string());
                }
            }
        }
        return report_json(report);
    }
    GroundProgram g = ground(program);
    auto goals = parse_query(c.query);
    std::vector<AnswerSet> kept;
    for (auto& m : testing::oracle_models(g)) {
        if (satisfies(m, goals)) kept.push_back(std::move(m));
    }
    return models_json(kept);
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = testing::corpus_dir();
    bool check = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--check") {
            check = true;
        } else {
            dir = arg;
        }
    }
    int status = 0;
    try {
        for (const auto& c : load_manifest(dir)) {
            std::string text = oracle_output(dir, c);
            auto path = dir / c.golden;
            if (check) {
                std::string old = std::filesystem::exists(path) ? read_file(path) : "";
                if (old != text) {
                    std::cout << "differs: " << c.name << '\n';
                    status = 1;
                }
                continue;
            }
            std::filesystem::create_directories(path.parent_path());
            std::ofstream(path, std::ios::binary) << text;
            std::cout << "wrote " << path.string() << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.diagnostic() << '\n';
        return 2;
    }
    return status;
}
