#pragma once

// Stable models of ground programs with strong negation and denials.

#include "normlog/compiler.hpp"
#include "normlog/grounder.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace normlog {

using Candidate = std::set<AtomId>;

struct AnswerSet {
    /// The whole model, fresh atoms included.
    Candidate atoms;
    /// Every non-fresh literal of the model, sorted by text.
    std::vector<Literal> visible;
    /// Displayed literals: visible, projected by #show, sorted by text.
    std::vector<Literal> literals;
    /// Show-listed literals and their complements. `false` marks an entry
    /// displayed as `not l`.
    std::map<std::string, bool> shown;

    bool contains(const Literal& lit) const;
    std::vector<std::string> texts() const;
    /// `{a, b}`; with `with_naf` the `not l` entries of `shown` are appended.
    std::string to_string(bool with_naf = false) const;
};

/// A definite rule; an absent head is the distinguished `false`.
struct DefiniteRule {
    std::optional<AtomId> head;
    std::vector<AtomId> body;
    std::size_t source = 0;  // index into GroundProgram::rules
};

struct DefiniteProgram {
    std::vector<DefiniteRule> rules;
};

struct LeastModel {
    Candidate atoms;
    bool falsum = false;
};

/// Gelfond-Lifschitz reduct. Throws InconsistentCandidate.
DefiniteProgram reduct(const GroundProgram& g, const Candidate& candidate);
LeastModel least_model(const DefiniteProgram& d);

bool is_consistent(const GroundProgram& g, const Candidate& candidate);
bool is_stable(const GroundProgram& g, const Candidate& candidate);
/// Candidate given by its visible literals; fresh atoms of abducibles
/// absent from it are added. Literals missing from the atom table make the
/// candidate unstable.
bool is_stable(const GroundProgram& g, const std::vector<Literal>& candidate);

struct SolveOptions {
    std::size_t max_models = 0;  // 0: all
    bool project = true;         // apply #show to AnswerSet::literals
};

/// All stable models, deduplicated after projection, ordered by their
/// sorted literal texts.
std::vector<AnswerSet> enumerate_models(const GroundProgram& g, const SolveOptions& options = {});

/// Builds the display fields of a model.
AnswerSet make_answer_set(const GroundProgram& g, Candidate atoms, bool project = true);

/// Models satisfying every goal. Goals may contain variables; a positive
/// goal binds them against the model. Goals naming predicates outside the
/// program signature append an `UnknownPredicate` warning.
std::vector<AnswerSet> query(const GroundProgram& g, const std::vector<BodyElem>& goals,
                             std::vector<std::string>* warnings = nullptr, const SolveOptions& options = {});

bool satisfies(const AnswerSet& m, const std::vector<BodyElem>& goals);

// ---------------------------------------------------------------------------
// Justification

struct JustificationNode {
    enum class Kind { Fact, Rule, Abduced, Naf };

    Literal literal;
    Kind kind = Kind::Fact;
    std::optional<std::size_t> rule;  // GroundProgram::rules index
    std::vector<JustificationNode> children;

    std::string to_string(int indent = 0) const;
};

/// Verdict for one denial of the program: no ground instance has its body
/// true in the model.
struct DenialCheck {
    std::size_t source = 0;  // Program rule index
    std::string text;
    std::size_t instances = 0;
    bool satisfied = true;
};

struct Justification {
    JustificationNode root;
    std::vector<DenialCheck> denials;

    std::string to_string() const;
};

/// Derivation tree of `lit` along the least-model order of the reduct.
/// Throws LiteralNotInModel.
Justification justify(const GroundProgram& g, const AnswerSet& m, const Literal& lit);

// ---------------------------------------------------------------------------
// Modal reading of models

enum class ModalStatus { Necessary, Impossible, Contingent };

std::string_view to_string(ModalStatus s);

ModalStatus modal_classify(const AnswerSet& m, const Atom& p);
bool evaluate_notion(const AnswerSet& m, AlethicNotion n, const Atom& p);
bool evaluate_notion(const AnswerSet& m, DeonticNotion n, const Atom& p);

}  // namespace normlog
