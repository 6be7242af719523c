// normlog: compile normative theories to ASP and solve them.
//
// Exit codes: 0 success (at least one model), 1 no model / corpus mismatch,
// 2 usage, parse, compile or grounding error.

#include "normlog/harness.hpp"
#include "normlog/surface.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#ifndef NORMLOG_CORPUS_DIR
#define NORMLOG_CORPUS_DIR "corpus"
#endif

namespace {

using namespace normlog;

void report_error(const Error& e) {
    if (const auto* list = dynamic_cast<const ErrorList*>(&e)) {
        for (const auto& item : list->errors()) std::cerr << "error: " << item.diagnostic() << '\n';
        return;
    }
    std::cerr << "error: " << e.diagnostic() << '\n';
}

int cmd_compile(const std::string& in, const std::string& out, bool json) {
    CompiledTheory compiled = compile_theory(parse_deontic(read_file(in)));
    std::ofstream file(out, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write '" + out + "'");
    file << render_program(compiled.program);
    if (json) {
        std::cout << trace_json(compiled.trace);
        return 0;
    }
    for (const auto& e : compiled.trace.entries) {
        std::cout << "[" << e.index << "] " << to_string(e.tag) << "  " << e.statement << '\n';
        for (const auto& r : e.rules) std::cout << "    " << r.to_string() << '\n';
    }
    return 0;
}

struct SolveArgs {
    std::string in;
    std::string query;
    std::size_t max_models = 0;
    bool json = false;
    bool dump_ground = false;
    bool show_naf = false;
    std::string justify;
};

int cmd_solve(const SolveArgs& a) {
    GroundProgram g = ground(load_program(a.in));
    if (a.dump_ground) std::cout << g.render();
    std::vector<std::string> warnings;
    SolveOptions options;
    options.max_models = a.max_models;
    auto models = query(g, parse_query(a.query), &warnings, options);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    if (a.json) {
        std::cout << models_json(models);
    } else {
        for (std::size_t i = 0; i < models.size(); ++i) {
            std::cout << "Model " << i + 1 << ": " << models[i].to_string(a.show_naf) << '\n';
        }
        std::cout << models.size() << (models.size() == 1 ? " model" : " models") << '\n';
    }
    if (!a.justify.empty()) {
        Literal target = parse_literal(a.justify);
        for (std::size_t i = 0; i < models.size(); ++i) {
            if (!models[i].contains(target)) continue;
            std::cout << "Justification in model " << i + 1 << ":\n" << justify(g, models[i], target).to_string();
        }
    }
    return models.empty() ? 1 : 0;
}

int cmd_check(const std::string& base, const std::string& narrative, bool json) {
    Program facts = parse_program(read_file(narrative));
    ComplianceReport report = check_narrative(load_program(base), facts, narrative);
    if (json) {
        std::cout << report_json(report);
    } else {
        std::cout << "narrative: " << report.narrative << '\n'
                  << "satisfiable: " << (report.satisfiable ? "yes" : "no") << '\n'
                  << "models: " << report.models.size() << '\n'
                  << "triggered exceptions: {";
        bool first = true;
        for (const auto& e : report.triggered_exceptions) {
            std::cout << (first ? " " : ", ") << e;
            first = false;
        }
        std::cout << (first ? "}" : " }") << '\n';
    }
    return report.satisfiable ? 0 : 1;
}

int cmd_corpus(const std::string& dir, const std::string& filter) {
    auto results = run_corpus(dir, filter);
    std::cout << format_results(results);
    if (results.empty()) {
        std::cerr << "no corpus case matches '" << filter << "'\n";
        return 1;
    }
    bool all = std::all_of(results.begin(), results.end(), [](const CorpusResult& r) { return r.passed; });
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normlog: normative reasoning with answer-set programs"};
    app.require_subcommand(1);

    std::string compile_in, compile_out;
    bool compile_json = false;
    auto* compile = app.add_subcommand("compile", "Compile a .deon theory to .asp and print the trace");
    compile->add_option("input", compile_in, "Theory file")->required();
    compile->add_option("-o,--output", compile_out, "Output program")->required();
    compile->add_flag("--json", compile_json, "Print the trace as JSON");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Enumerate stable models");
    solve->add_option("input", solve_args.in, "Program (.asp) or theory (.deon)")->required();
    solve->add_option("--query", solve_args.query, "Goals, e.g. 'warning_sign' or 'go, not tell'");
    solve->add_option("--max-models", solve_args.max_models, "Stop after N models (0: all)");
    solve->add_flag("--json", solve_args.json, "Canonical JSON output");
    solve->add_flag("--dump-ground", solve_args.dump_ground, "Print the ground program first");
    solve->add_flag("--show-naf", solve_args.show_naf, "Display `not l` for complements of shown literals");
    solve->add_option("--justify", solve_args.justify, "Print a derivation of this literal in each model");

    std::string check_base, check_narrative_path;
    bool check_json = false;
    auto* check = app.add_subcommand("check", "Check a narrative of facts against a base program");
    check->add_option("base", check_base, "Base program")->required();
    check->add_option("--narrative", check_narrative_path, "Facts file")->required();
    check->add_flag("--json", check_json, "Canonical JSON output");

    std::string corpus_dir = NORMLOG_CORPUS_DIR, corpus_filter;
    auto* corpus = app.add_subcommand("corpus", "Run the regression corpus against its goldens");
    corpus->add_option("--filter", corpus_filter, "Only cases whose name contains this text");
    corpus->add_option("--corpus", corpus_dir, "Corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*compile) return cmd_compile(compile_in, compile_out, compile_json);
        if (*solve) return cmd_solve(solve_args);
        if (*check) return cmd_check(check_base, check_narrative_path, check_json);
        if (*corpus) return cmd_corpus(corpus_dir, corpus_filter);
    } catch (const Error& e) {
        report_error(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
