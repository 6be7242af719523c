#include "normlog/compiler.hpp"

#include <algorithm>

namespace normlog {

std::string_view to_string(PatternTag tag) {
    switch (tag) {
        case PatternTag::ObDenial: return "OB-denial";
        case PatternTag::ImDenial: return "IM-denial";
        case PatternTag::CondOb: return "COND-OB";
        case PatternTag::CondIm: return "COND-IM";
        case PatternTag::OlonOb: return "OLON-OB";
        case PatternTag::OlonIm: return "OLON-IM";
        case PatternTag::PermDefault: return "PERM-DEFAULT";
        case PatternTag::EvenLoop: return "EVEN-LOOP";
        case PatternTag::Fact: return "FACT";
        case PatternTag::Raw: return "RAW";
    }
    return "?";
}

namespace {

std::string join_diagnostics(const std::vector<Error>& errors) {
    std::string out;
    for (const auto& e : errors) {
        if (!out.empty()) out += '\n';
        out += e.diagnostic();
    }
    return out;
}

}  // namespace

ErrorList::ErrorList(std::vector<Error> errors)
    : Error(errors.empty() ? ErrorCode::SyntaxError : errors.front().code(), join_diagnostics(errors),
            errors.empty() ? std::nullopt : errors.front().span()),
      errors_(std::move(errors)) {}

Rule compile_obligation(const Literal& target) { return Rule{std::nullopt, {BodyElem::naf(target)}, {}}; }

Rule compile_impermissibility(const Literal& target) {
    return Rule{std::nullopt, {BodyElem::naf(complement(target))}, {}};
}

Rule compile_conditional(const Literal& target, NormKind kind, const std::vector<BodyElem>& conditions) {
    if (conditions.empty()) {
        throw Error(ErrorCode::EmptyConditions, "conditional norm on '" + target.to_string() + "' has no conditions");
    }
    Rule r{std::nullopt, conditions, {}};
    r.body.push_back(BodyElem::naf(kind == NormKind::OB ? target : complement(target)));
    return r;
}

Rule compile_preemptable(const Literal& target, NormKind kind, const Literal& unless,
                         const std::vector<BodyElem>& conditions) {
    if (unless == target) {
        throw Error(ErrorCode::UnlessEqualsTarget,
                    "'unless' literal must differ from the target '" + target.to_string() + "'");
    }
    Rule r{unless, conditions, {}};
    if (kind == NormKind::OB) {
        r.body.push_back(BodyElem::naf(target));
    } else {
        r.body.push_back(BodyElem::pos(target));
    }
    r.body.push_back(BodyElem::naf(unless));
    return r;
}

Rule compile_permission(const Literal& target, const std::vector<BodyElem>& conditions,
                        const std::vector<Literal>& exceptions) {
    Rule r{target, conditions, {}};
    for (const auto& e : exceptions) r.body.push_back(BodyElem::naf(e));
    return r;
}

AbducibleExpansion expand_abducible(const Literal& abducible) {
    if (is_fresh_name(abducible.atom.predicate)) {
        throw Error(ErrorCode::FreshNameCollision,
                    "abducible '" + abducible.to_string() + "' uses the reserved prefix '" + std::string(kFreshPrefix) + "'");
    }
    Literal fresh;
    fresh.atom.predicate =
        std::string(kFreshPrefix) + (abducible.strong_neg ? "notneg_" : "not_") + abducible.atom.predicate;
    fresh.atom.args = abducible.atom.args;
    AbducibleExpansion out;
    out.assume = Rule{abducible, {BodyElem::naf(fresh)}, {}};
    out.reject = Rule{fresh, {BodyElem::naf(abducible)}, {}};
    out.fresh = std::move(fresh);
    return out;
}

Program expand_abducibles(const Program& program) {
    if (program.abducibles.empty()) return program;
    for (const auto& sig : signature(program)) {
        if (is_fresh_name(sig.name)) {
            throw Error(ErrorCode::FreshNameCollision,
                        "predicate '" + sig.name + "' uses the reserved prefix '" + std::string(kFreshPrefix) + "'");
        }
    }
    Program out = program;
    out.abducibles.clear();
    std::vector<Literal> seen;
    for (const auto& a : program.abducibles) {
        if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
        seen.push_back(a);
        auto loop = expand_abducible(a);
        out.rules.push_back(std::move(loop.assume));
        out.rules.push_back(std::move(loop.reject));
    }
    return out;
}

namespace {

void check_fresh(const Literal& lit, const SourceSpan& span, std::vector<Error>& errors) {
    if (is_fresh_name(lit.atom.predicate)) {
        errors.emplace_back(ErrorCode::FreshNameCollision,
                            "predicate '" + lit.atom.predicate + "' uses the reserved prefix '" +
                                std::string(kFreshPrefix) + "'",
                            span);
    }
}

void check_fresh(const std::vector<BodyElem>& body, const SourceSpan& span, std::vector<Error>& errors) {
    for (const auto& e : body) {
        if (!e.is_builtin()) check_fresh(e.literal(), span, errors);
    }
}

void add_exception(Program& program, const Literal& head) {
    PredicateSig sig{head.strong_neg, head.atom.predicate, head.atom.arity()};
    if (std::find(program.exceptions.begin(), program.exceptions.end(), sig) == program.exceptions.end()) {
        program.exceptions.push_back(std::move(sig));
    }
}

template <typename Norm>
TraceEntry lower_norm(const Norm& norm, NormKind kind, const SourceSpan& span, Program& program,
                      std::vector<Error>& errors) {
    TraceEntry entry;
    check_fresh(norm.target, span, errors);
    check_fresh(norm.conditions, span, errors);
    if (norm.unless) {
        check_fresh(*norm.unless, span, errors);
        if (*norm.unless == norm.target) {
            errors.emplace_back(ErrorCode::UnlessEqualsTarget,
                                "'unless' literal must differ from the target '" + norm.target.to_string() + "'", span);
            return entry;
        }
        entry.tag = kind == NormKind::OB ? PatternTag::OlonOb : PatternTag::OlonIm;
        entry.preemption =
            norm.unless->atom == norm.target.atom ? PreemptionKind::Complement : PreemptionKind::Condition;
        entry.rules.push_back(compile_preemptable(norm.target, kind, *norm.unless, norm.conditions));
        add_exception(program, *norm.unless);
    } else if (norm.conditions.empty()) {
        entry.tag = kind == NormKind::OB ? PatternTag::ObDenial : PatternTag::ImDenial;
        entry.rules.push_back(kind == NormKind::OB ? compile_obligation(norm.target)
                                                   : compile_impermissibility(norm.target));
    } else {
        entry.tag = kind == NormKind::OB ? PatternTag::CondOb : PatternTag::CondIm;
        entry.rules.push_back(compile_conditional(norm.target, kind, norm.conditions));
    }
    return entry;
}

}  // namespace

CompiledTheory compile_theory(const DeonticTheory& theory) {
    CompiledTheory out;
    Program& program = out.program;
    std::vector<Error> errors;
    for (std::size_t i = 0; i < theory.statements.size(); ++i) {
        const auto& stmt = theory.statements[i];
        TraceEntry entry = std::visit(
            [&](const auto& v) -> TraceEntry {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Obligation>) {
                    return lower_norm(v, NormKind::OB, stmt.span, program, errors);
                } else if constexpr (std::is_same_v<T, Impermissibility>) {
                    return lower_norm(v, NormKind::IM, stmt.span, program, errors);
                } else if constexpr (std::is_same_v<T, Permission>) {
                    check_fresh(v.target, stmt.span, errors);
                    check_fresh(v.conditions, stmt.span, errors);
                    for (const auto& e : v.exceptions) check_fresh(e, stmt.span, errors);
                    TraceEntry e;
                    e.tag = PatternTag::PermDefault;
                    e.rules.push_back(compile_permission(v.target, v.conditions, v.exceptions));
                    return e;
                } else if constexpr (std::is_same_v<T, FactStatement>) {
                    check_fresh(v.literal, stmt.span, errors);
                    TraceEntry e;
                    e.tag = PatternTag::Fact;
                    e.rules.push_back(Rule{v.literal, {}, {}});
                    return e;
                } else if constexpr (std::is_same_v<T, RawRule>) {
                    if (v.rule.head) check_fresh(*v.rule.head, stmt.span, errors);
                    check_fresh(v.rule.body, stmt.span, errors);
                    TraceEntry e;
                    e.tag = PatternTag::Raw;
                    e.rules.push_back(v.rule);
                    return e;
                } else {
                    TraceEntry e;
                    e.tag = PatternTag::EvenLoop;
                    try {
                        auto loop = expand_abducible(v.literal);
                        e.rules.push_back(std::move(loop.assume));
                        e.rules.push_back(std::move(loop.reject));
                    } catch (const Error& err) {
                        errors.emplace_back(err.code(), err.what(), stmt.span);
                    }
                    if (std::find(program.abducibles.begin(), program.abducibles.end(), v.literal) !=
                        program.abducibles.end()) {
                        errors.emplace_back(ErrorCode::DuplicateDeclaration,
                                            "duplicate abducible '" + v.literal.to_string() + "'", stmt.span);
                    }
                    program.abducibles.push_back(v.literal);
                    return e;
                }
            },
            stmt.value);
        entry.index = i;
        entry.statement = stmt.to_string();
        entry.span = stmt.span;
        if (entry.tag != PatternTag::EvenLoop) {
            for (auto r : entry.rules) {
                r.span = stmt.span;
                program.rules.push_back(std::move(r));
            }
        }
        out.trace.entries.push_back(std::move(entry));
    }
    program.show = theory.show;
    if (!errors.empty()) throw ErrorList(std::move(errors));
    signature(program);
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(AlethicNotion n) {
    switch (n) {
        case AlethicNotion::Necessary: return "necessary";
        case AlethicNotion::Possible: return "possible";
        case AlethicNotion::Impossible: return "impossible";
        case AlethicNotion::NonNecessary: return "non-necessary";
        case AlethicNotion::Contingent: return "contingent";
        case AlethicNotion::NonContingent: return "non-contingent";
    }
    return "?";
}

std::string_view to_string(DeonticNotion n) {
    switch (n) {
        case DeonticNotion::OB: return "OB";
        case DeonticNotion::PE: return "PE";
        case DeonticNotion::IM: return "IM";
        case DeonticNotion::OM: return "OM";
        case DeonticNotion::OP: return "OP";
        case DeonticNotion::NO: return "NO";
    }
    return "?";
}

AlethicNotion alethic_counterpart(DeonticNotion n) {
    switch (n) {
        case DeonticNotion::OB: return AlethicNotion::Necessary;
        case DeonticNotion::PE: return AlethicNotion::Possible;
        case DeonticNotion::IM: return AlethicNotion::Impossible;
        case DeonticNotion::OM: return AlethicNotion::NonNecessary;
        case DeonticNotion::OP: return AlethicNotion::Contingent;
        case DeonticNotion::NO: return AlethicNotion::NonContingent;
    }
    return AlethicNotion::Necessary;
}

NotionPattern alethic_pattern(AlethicNotion n, const Atom& p) {
    Literal pos{p, false};
    Literal neg{p, true};
    switch (n) {
        case AlethicNotion::Necessary: return {{{BodyElem::pos(pos)}}};
        case AlethicNotion::Possible: return {{{BodyElem::naf(neg)}}};
        case AlethicNotion::Impossible: return {{{BodyElem::pos(neg)}}};
        case AlethicNotion::NonNecessary: return {{{BodyElem::naf(pos)}}};
        case AlethicNotion::Contingent: return {{{BodyElem::naf(pos), BodyElem::naf(neg)}}};
        case AlethicNotion::NonContingent: return {{{BodyElem::pos(pos)}, {BodyElem::pos(neg)}}};
    }
    return {};
}

std::string NotionPattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
        if (i) out += " ∨ ";
        for (std::size_t j = 0; j < disjuncts[i].size(); ++j) {
            if (j) out += " ∧ ";
            out += disjuncts[i][j].to_string();
        }
    }
    return out;
}

}  // namespace normlog
