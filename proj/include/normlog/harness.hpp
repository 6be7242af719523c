#pragma once

// Loading, JSON output, narrative compliance checks and the regression
// corpus runner used by the command-line tool.

#include "normlog/compiler.hpp"
#include "normlog/solver.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace normlog {

std::string read_file(const std::filesystem::path& path);

/// `.deon` files are compiled; anything else is read as `.asp`.
Program load_program(const std::filesystem::path& path, CompilationTrace* trace = nullptr);

/// Declared `#exceptions`, or else the heads of rules of the form
/// `c :- ..., not c, ...`.
std::vector<PredicateSig> exception_signatures(const Program& program);

struct ComplianceReport {
    std::string narrative;
    bool satisfiable = false;
    /// Exception atoms true in at least one model, sorted.
    std::set<std::string> triggered_exceptions;
    std::vector<AnswerSet> models;
};

/// Solves base ∪ facts with goal `true`. Throws NonFactNarrative when
/// `facts` holds anything but ground facts.
ComplianceReport check_narrative(const Program& base, const Program& facts, std::string narrative = {});

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string models_json(const std::vector<AnswerSet>& models);
std::string report_json(const ComplianceReport& report);
std::string trace_json(const CompilationTrace& trace);

struct CorpusCase {
    std::string name;
    std::string description;
    std::string program;                  // relative to the corpus directory
    std::optional<std::string> narrative; // compliance case when present
    std::string query;                    // empty: `true`
    std::string golden;
    bool reconstructed = false;
};

struct CorpusResult {
    std::string name;
    bool passed = false;
    std::string detail;  // first differing line, or the error
    double millis = 0;
};

std::vector<CorpusCase> load_manifest(const std::filesystem::path& corpus_dir);

/// Canonical JSON output of one case.
std::string run_case(const std::filesystem::path& corpus_dir, const CorpusCase& c);

/// Cases whose name contains `filter`, run concurrently, in manifest order.
std::vector<CorpusResult> run_corpus(const std::filesystem::path& corpus_dir, const std::string& filter = {});

std::string format_results(const std::vector<CorpusResult>& results);

}  // namespace normlog
