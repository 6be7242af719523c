#pragma once

// Lowering of normative statements to answer-set programs.
//
//   obligation            OB p             :- not p.
//   impermissibility      IM p             :- not -p.
//   conditional           B -> OB p        :- B, not p.
//                         B -> IM p        :- B, not -p.
//   preemptable           OB p unless c    c :- B, not p, not c.
//                         IM q unless c    c :- B, q, not c.
//   permission            PE p when B      p :- B, not e1, ..., not en.
//   abducible             #abducible g     g :- not o_not_g.  o_not_g :- not g.

#include "normlog/ast.hpp"
#include "normlog/deontic.hpp"

#include <string_view>
#include <vector>

namespace normlog {

enum class NormKind { OB, IM };

enum class PatternTag {
    ObDenial,
    ImDenial,
    CondOb,
    CondIm,
    OlonOb,
    OlonIm,
    PermDefault,
    EvenLoop,
    Fact,
    Raw,
};

std::string_view to_string(PatternTag tag);

/// How a preemptable norm names its violation condition.
enum class PreemptionKind {
    None,
    Complement,  // the target's own complement, e.g. `-go :- not go, not -go.`
    Condition,   // a separate condition atom, e.g. `ignore_obligation`
};

struct TraceEntry {
    std::size_t index = 0;  // statement position in the theory
    std::string statement;
    PatternTag tag = PatternTag::Raw;
    PreemptionKind preemption = PreemptionKind::None;
    std::vector<Rule> rules;
    SourceSpan span;
};

struct CompilationTrace {
    std::vector<TraceEntry> entries;
};

struct CompiledTheory {
    Program program;
    CompilationTrace trace;
};

struct AbducibleExpansion {
    Rule assume;  // g :- not o_not_g.
    Rule reject;  // o_not_g :- not g.
    Literal fresh;
};

/// Several errors reported together; code() is that of the first.
class ErrorList : public Error {
public:
    explicit ErrorList(std::vector<Error> errors);
    const std::vector<Error>& errors() const noexcept { return errors_; }

private:
    std::vector<Error> errors_;
};

Rule compile_obligation(const Literal& target);
Rule compile_impermissibility(const Literal& target);

/// Throws EmptyConditions when `conditions` is empty.
Rule compile_conditional(const Literal& target, NormKind kind, const std::vector<BodyElem>& conditions);

/// OLON rule headed by `unless`. Throws UnlessEqualsTarget.
Rule compile_preemptable(const Literal& target, NormKind kind, const Literal& unless,
                         const std::vector<BodyElem>& conditions = {});

Rule compile_permission(const Literal& target, const std::vector<BodyElem>& conditions,
                        const std::vector<Literal>& exceptions);

/// Fresh name: o_not_<p> for p, o_notneg_<p> for -p. Throws
/// FreshNameCollision when the abducible itself uses the reserved prefix.
AbducibleExpansion expand_abducible(const Literal& abducible);

/// Replaces the program's abducible declarations by their even loops. Throws
/// FreshNameCollision if any user predicate carries the reserved prefix.
Program expand_abducibles(const Program& program);

/// Per-statement lowering in source order; abducibles stay declarations in
/// the program (their loops appear in the trace), and the heads of
/// preemptable norms are recorded as the program's exceptions.
CompiledTheory compile_theory(const DeonticTheory& theory);

// ---------------------------------------------------------------------------
// Modal notions

enum class AlethicNotion { Necessary, Possible, Impossible, NonNecessary, Contingent, NonContingent };

inline constexpr AlethicNotion kAllAlethicNotions[] = {
    AlethicNotion::Necessary,    AlethicNotion::Possible,   AlethicNotion::Impossible,
    AlethicNotion::NonNecessary, AlethicNotion::Contingent, AlethicNotion::NonContingent,
};

enum class DeonticNotion { OB, PE, IM, OM, OP, NO };

std::string_view to_string(AlethicNotion n);
std::string_view to_string(DeonticNotion n);

/// Obligation is deontic necessity: OB/PE/IM/OM/OP/NO line up with the
/// alethic notions in order.
AlethicNotion alethic_counterpart(DeonticNotion n);

/// Negation pattern of a notion as a disjunction of conjunctions. Only
/// NonContingent has more than one disjunct.
struct NotionPattern {
    std::vector<std::vector<BodyElem>> disjuncts;
    std::string to_string() const;
};

NotionPattern alethic_pattern(AlethicNotion n, const Atom& p);

}  // namespace normlog
