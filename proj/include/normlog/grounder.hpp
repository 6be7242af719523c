#pragma once

// Herbrand instantiation of safe programs with exact rational builtins.
//
// Variables are bound only by matching positive body literals against
// derivable atoms and by `X .=. Expr` assignments. A predicate whose rules
// leave some head arguments unbound (e.g. `diff(L1,L2,D) :- L1 .>=. L2,
// D .=. L1 - L2.`) is grounded on demand: only for the argument values its
// call sites supply. check_safety reports these input positions as the
// predicate's binding mode.

#include "normlog/ast.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace normlog {

using AtomId = std::uint32_t;

/// Dense ids for ground literals; `p` and `-p` are distinct entries.
class AtomTable {
public:
    AtomId intern(const Literal& lit);
    std::optional<AtomId> find(const Literal& lit) const;

    const Literal& literal(AtomId id) const { return literals_[id]; }
    const std::string& text(AtomId id) const { return texts_[id]; }
    std::size_t size() const noexcept { return literals_.size(); }

    /// Id of the complementary literal when it occurs in the table.
    std::optional<AtomId> complement(AtomId id) const;

private:
    std::vector<Literal> literals_;
    std::vector<std::string> texts_;
    std::unordered_map<std::string, AtomId> index_;
};

struct GroundRule {
    std::optional<AtomId> head;  // absent for denials
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;
    std::size_t source = 0;       // index of the instantiated rule
    bool abducible_loop = false;  // generated from an #abducible declaration
};

struct GroundProgram {
    std::vector<GroundRule> rules;
    AtomTable atoms;
    std::vector<PredicateSig> show;
    std::vector<PredicateSig> exceptions;
    std::vector<Literal> abducibles;
    std::set<PredicateSig> signature;  // of the source program

    /// Compiler-generated atoms (reserved prefix), never displayed.
    bool is_hidden(AtomId id) const;
    std::string rule_text(const GroundRule& rule) const;
    /// One rule per line in surface syntax.
    std::string render() const;
};

struct RuleSafety {
    std::size_t rule_index = 0;
    bool safe = true;
    std::vector<std::string> unsafe_vars;
};

struct SafetyReport {
    std::vector<RuleSafety> rules;
    /// Argument positions that call sites must bind, for demand-grounded predicates.
    std::map<PredicateSig, std::vector<std::size_t>> modes;

    bool all_safe() const;
    std::string describe(const Program& program) const;
};

SafetyReport check_safety(const Program& program);

/// Constants and numerals occurring anywhere in the program.
std::set<Term> herbrand_universe(const Program& program);

/// Value of a ground arithmetic expression; nullopt when a variable is
/// unbound. Throws TypeMismatch when arithmetic touches a constant.
using Substitution = std::map<std::string, Term>;
std::optional<Term> evaluate(const ArithExpr& expr, const Substitution& subst);

/// Ground comparison. Order operators need numbers on both sides
/// (TypeMismatch otherwise); `.=.` and `\=` compare any ground terms.
bool eval_builtin(CmpOp op, const Term& lhs, const Term& rhs);

struct GroundOptions {
    std::size_t max_iterations = 10'000;
    std::size_t max_rules = 2'000'000;
};

/// Expands #abducible declarations, then instantiates to fixpoint. Throws
/// UnsafeRule, UnboundArithmetic, TypeMismatch, FreshNameCollision,
/// GroundingLimit.
GroundProgram ground(const Program& program, const GroundOptions& options = {});

}  // namespace normlog
