#include "normlog/grounder.hpp"

#include "normlog/compiler.hpp"

#include <algorithm>
#include <unordered_set>

namespace normlog {

AtomId AtomTable::intern(const Literal& lit) {
    std::string key = lit.to_string();
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto id = static_cast<AtomId>(literals_.size());
    literals_.push_back(lit);
    texts_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<AtomId> AtomTable::find(const Literal& lit) const {
    auto it = index_.find(lit.to_string());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<AtomId> AtomTable::complement(AtomId id) const { return find(normlog::complement(literals_[id])); }

bool GroundProgram::is_hidden(AtomId id) const { return is_fresh_name(atoms.literal(id).atom.predicate); }

std::string GroundProgram::rule_text(const GroundRule& rule) const {
    std::string out;
    if (rule.head) out += atoms.text(*rule.head);
    if (!rule.pos.empty() || !rule.neg.empty()) {
        out += rule.head ? " :- " : ":- ";
        bool first = true;
        for (AtomId a : rule.pos) {
            if (!first) out += ", ";
            first = false;
            out += atoms.text(a);
        }
        for (AtomId a : rule.neg) {
            if (!first) out += ", ";
            first = false;
            out += "not " + atoms.text(a);
        }
    } else if (!rule.head) {
        // A denial whose whole body evaluated to true.
        out += ":- true";
    }
    out += '.';
    return out;
}

std::string GroundProgram::render() const {
    std::string out;
    for (const auto& r : rules) out += rule_text(r) + "\n";
    return out;
}

bool SafetyReport::all_safe() const {
    return std::all_of(rules.begin(), rules.end(), [](const RuleSafety& r) { return r.safe; });
}

std::string SafetyReport::describe(const Program& program) const {
    std::string out;
    for (const auto& r : rules) {
        if (r.safe) continue;
        const Rule& rule = program.rules[r.rule_index];
        out += std::to_string(rule.span.line) + ":" + std::to_string(rule.span.column) + ": unsafe variables";
        for (const auto& v : r.unsafe_vars) out += " " + v;
        out += " in '" + rule.to_string() + "'\n";
    }
    return out;
}

namespace {

using Modes = std::map<PredicateSig, std::vector<std::size_t>>;

PredicateSig sig_of(const Literal& lit) { return PredicateSig{lit.strong_neg, lit.atom.predicate, lit.atom.arity()}; }

const std::vector<std::size_t>* mode_of(const Modes& modes, const Literal& lit) {
    auto it = modes.find(sig_of(lit));
    return it == modes.end() || it->second.empty() ? nullptr : &it->second;
}

bool arg_bound(const Term& t, const std::set<std::string>& bound) {
    return !t.is_variable() || bound.count(t.name()) > 0;
}

bool expr_bound(const ArithExpr& e, const std::set<std::string>& bound) {
    std::vector<std::string> vars;
    collect_variables(e, vars);
    return std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return bound.count(v) > 0; });
}

// Variables bound by positive literals (whose demanded positions are bound)
// and by `.=.` assignments, starting from `bound`.
std::set<std::string> close_bindings(const Rule& rule, const Modes& modes, std::set<std::string> bound) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& elem : rule.body) {
            if (elem.is_pos()) {
                const Literal& lit = elem.literal();
                if (const auto* mode = mode_of(modes, lit)) {
                    bool ready = std::all_of(mode->begin(), mode->end(),
                                             [&](std::size_t i) { return arg_bound(lit.atom.args[i], bound); });
                    if (!ready) continue;
                }
                for (const auto& t : lit.atom.args) {
                    if (t.is_variable() && bound.insert(t.name()).second) progress = true;
                }
            } else if (elem.is_builtin()) {
                const auto& cmp = elem.comparison();
                if (cmp.op != CmpOp::Eq || !cmp.lhs.is_leaf() || !cmp.lhs.term().is_variable()) continue;
                if (bound.count(cmp.lhs.term().name()) || !expr_bound(cmp.rhs, bound)) continue;
                bound.insert(cmp.lhs.term().name());
                progress = true;
            }
        }
    }
    return bound;
}

std::set<std::string> head_prebound(const Rule& rule, const Modes& modes) {
    std::set<std::string> out;
    if (!rule.head) return out;
    if (const auto* mode = mode_of(modes, *rule.head)) {
        for (std::size_t i : *mode) {
            const Term& t = rule.head->atom.args[i];
            if (t.is_variable()) out.insert(t.name());
        }
    }
    return out;
}

Modes compute_modes(const Program& program) {
    Modes modes;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : program.rules) {
            if (!rule.head) continue;
            std::set<std::string> pre = head_prebound(rule, modes);
            std::set<std::string> bound = close_bindings(rule, modes, pre);
            auto vars = rule_variables(rule);
            if (std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return bound.count(v) > 0; })) {
                continue;
            }
            // Demand head arguments left to right until the rest follows.
            auto& mode = modes[sig_of(*rule.head)];
            const auto& args = rule.head->atom.args;
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (!args[i].is_variable() || bound.count(args[i].name())) continue;
                pre.insert(args[i].name());
                bound = close_bindings(rule, modes, pre);
                if (std::find(mode.begin(), mode.end(), i) == mode.end()) {
                    mode.push_back(i);
                    std::sort(mode.begin(), mode.end());
                    changed = true;
                }
            }
        }
    }
    for (auto it = modes.begin(); it != modes.end();) {
        it = it->second.empty() ? modes.erase(it) : std::next(it);
    }
    return modes;
}

bool has_call_site(const Program& program, const PredicateSig& sig) {
    for (const auto& rule : program.rules) {
        for (const auto& elem : rule.body) {
            if (!elem.is_builtin() && sig_of(elem.literal()) == sig) return true;
        }
    }
    return false;
}

SafetyReport analyze(const Program& program) {
    SafetyReport report;
    report.modes = compute_modes(program);
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& rule = program.rules[i];
        RuleSafety rs;
        rs.rule_index = i;
        std::set<std::string> pre = head_prebound(rule, report.modes);
        std::set<std::string> bound = close_bindings(rule, report.modes, pre);
        for (const auto& v : rule_variables(rule)) {
            if (!bound.count(v)) rs.unsafe_vars.push_back(v);
        }
        if (rs.unsafe_vars.empty() && !pre.empty() && !has_call_site(program, sig_of(*rule.head))) {
            // Demand-grounded but nothing ever demands it.
            for (const auto& v : rule_variables(rule)) {
                if (pre.count(v)) rs.unsafe_vars.push_back(v);
            }
        }
        rs.safe = rs.unsafe_vars.empty();
        report.rules.push_back(std::move(rs));
    }
    return report;
}

void universe_of(const ArithExpr& e, std::set<Term>& out) {
    if (e.is_leaf()) {
        if (!e.term().is_variable()) out.insert(e.term());
        return;
    }
    universe_of(e.lhs(), out);
    universe_of(e.rhs(), out);
}

void universe_of(const Literal& lit, std::set<Term>& out) {
    for (const auto& t : lit.atom.args) {
        if (!t.is_variable()) out.insert(t);
    }
}

}  // namespace

SafetyReport check_safety(const Program& program) { return analyze(program); }

std::set<Term> herbrand_universe(const Program& program) {
    std::set<Term> out;
    for (const auto& rule : program.rules) {
        if (rule.head) universe_of(*rule.head, out);
        for (const auto& elem : rule.body) {
            if (elem.is_builtin()) {
                universe_of(elem.comparison().lhs, out);
                universe_of(elem.comparison().rhs, out);
            } else {
                universe_of(elem.literal(), out);
            }
        }
    }
    for (const auto& a : program.abducibles) universe_of(a, out);
    return out;
}

std::optional<Term> evaluate(const ArithExpr& expr, const Substitution& subst) {
    if (expr.is_leaf()) {
        const Term& t = expr.term();
        if (!t.is_variable()) return t;
        auto it = subst.find(t.name());
        if (it == subst.end()) return std::nullopt;
        return it->second;
    }
    auto lhs = evaluate(expr.lhs(), subst);
    auto rhs = evaluate(expr.rhs(), subst);
    if (!lhs || !rhs) return std::nullopt;
    if (!lhs->is_number() || !rhs->is_number()) {
        throw Error(ErrorCode::TypeMismatch, "arithmetic on a non-number in '" + expr.to_string() + "'");
    }
    switch (expr.op()) {
        case ArithExpr::Op::Add: return Term::number(lhs->value() + rhs->value());
        case ArithExpr::Op::Sub: return Term::number(lhs->value() - rhs->value());
        default: return Term::number(lhs->value() * rhs->value());
    }
}

bool eval_builtin(CmpOp op, const Term& lhs, const Term& rhs) {
    if (lhs.is_variable() || rhs.is_variable()) {
        throw Error(ErrorCode::UnboundArithmetic, "comparison on an unbound variable");
    }
    switch (op) {
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ne: return lhs != rhs;
        default: break;
    }
    if (!lhs.is_number() || !rhs.is_number()) {
        throw Error(ErrorCode::TypeMismatch, "cannot order '" + lhs.to_string() + "' and '" + rhs.to_string() + "'");
    }
    switch (op) {
        case CmpOp::Gt: return lhs.value() > rhs.value();
        case CmpOp::Lt: return lhs.value() < rhs.value();
        case CmpOp::Ge: return lhs.value() >= rhs.value();
        case CmpOp::Le: return lhs.value() <= rhs.value();
        default: return false;
    }
}

namespace {

Literal substitute(const Literal& lit, const Substitution& subst) {
    Literal out = lit;
    for (auto& t : out.atom.args) {
        if (!t.is_variable()) continue;
        auto it = subst.find(t.name());
        if (it != subst.end()) t = it->second;
    }
    return out;
}

class Grounder {
public:
    Grounder(const Program& program, const SafetyReport& safety, const GroundOptions& options)
        : program_(program), modes_(safety.modes), options_(options) {}

    GroundProgram run(std::size_t first_loop_rule) {
        const auto& rules = program_.rules;
        std::vector<char> ground_done(rules.size(), 0);
        std::vector<char> is_ground(rules.size(), 0);
        for (std::size_t i = 0; i < rules.size(); ++i) is_ground[i] = rule_variables(rules[i]).empty();

        for (std::size_t iter = 0;; ++iter) {
            if (iter >= options_.max_iterations) {
                throw Error(ErrorCode::GroundingLimit, "grounding did not reach a fixpoint within " +
                                                           std::to_string(options_.max_iterations) + " iterations");
            }
            changed_ = false;
            for (std::size_t i = 0; i < rules.size(); ++i) {
                current_ = i;
                current_ground_ = is_ground[i];
                current_loop_ = i >= first_loop_rule;
                const Rule& rule = rules[i];
                if (is_ground[i]) {
                    if (ground_done[i]) continue;
                    ground_done[i] = 1;
                    instantiate(rule, {});
                    continue;
                }
                const std::vector<std::size_t>* mode = rule.head ? mode_of(modes_, *rule.head) : nullptr;
                if (!mode) {
                    instantiate(rule, {});
                    continue;
                }
                auto dit = demands_.find(sig_of(*rule.head));
                if (dit == demands_.end()) continue;
                // Demands raised during this pass wait for the next one.
                const std::size_t end = dit->second.size();
                for (std::size_t d = 0; d < end; ++d) {
                    std::vector<Term> demand = dit->second[d];
                    Substitution subst;
                    if (prebind(*rule.head, *mode, demand, subst)) instantiate(rule, std::move(subst));
                }
            }
            if (!changed_) break;
        }

        std::stable_sort(emitted_.begin(), emitted_.end(),
                         [](const GroundRule& a, const GroundRule& b) { return a.source < b.source; });
        out_.rules = std::move(emitted_);
        return std::move(out_);
    }

private:
    static bool prebind(const Literal& head, const std::vector<std::size_t>& mode, const std::vector<Term>& values,
                        Substitution& subst) {
        for (std::size_t k = 0; k < mode.size(); ++k) {
            const Term& arg = head.atom.args[mode[k]];
            const Term& value = values[k];
            if (arg.is_variable()) {
                auto [it, inserted] = subst.emplace(arg.name(), value);
                if (!inserted && it->second != value) return false;
            } else if (arg != value) {
                return false;
            }
        }
        return true;
    }

    void note_demand(const Literal& ground_lit) {
        const auto* mode = mode_of(modes_, ground_lit);
        if (!mode) return;
        std::vector<Term> key;
        key.reserve(mode->size());
        for (std::size_t i : *mode) key.push_back(ground_lit.atom.args[i]);
        auto sig = sig_of(ground_lit);
        if (demand_seen_[sig].insert(key).second) {
            demands_[sig].push_back(std::move(key));
            changed_ = true;
        }
    }

    void instantiate(const Rule& rule, Substitution subst) {
        std::vector<char> done(rule.body.size(), 0);
        search(rule, done, rule.body.size(), subst);
    }

    bool demand_ready(const Literal& lit, const Substitution& subst) const {
        const auto* mode = mode_of(modes_, lit);
        if (!mode) return true;
        return std::all_of(mode->begin(), mode->end(), [&](std::size_t i) {
            const Term& t = lit.atom.args[i];
            return !t.is_variable() || subst.count(t.name()) > 0;
        });
    }

    static bool is_ground_under(const Literal& lit, const Substitution& subst) {
        return std::all_of(lit.atom.args.begin(), lit.atom.args.end(),
                           [&](const Term& t) { return !t.is_variable() || subst.count(t.name()) > 0; });
    }

    void search(const Rule& rule, std::vector<char>& done, std::size_t remaining, Substitution& subst) {
        if (remaining == 0) {
            emit(rule, subst);
            return;
        }
        // Deterministic steps first: ready builtins and default-negated literals.
        for (std::size_t k = 0; k < rule.body.size(); ++k) {
            if (done[k]) continue;
            const BodyElem& elem = rule.body[k];
            if (elem.is_builtin()) {
                const auto& cmp = elem.comparison();
                if (cmp.op == CmpOp::Eq && cmp.lhs.is_leaf() && cmp.lhs.term().is_variable() &&
                    !subst.count(cmp.lhs.term().name())) {
                    auto value = evaluate(cmp.rhs, subst);
                    if (!value) continue;
                    const std::string& var = cmp.lhs.term().name();
                    subst.emplace(var, *value);
                    done[k] = 1;
                    search(rule, done, remaining - 1, subst);
                    done[k] = 0;
                    subst.erase(var);
                    return;
                }
                auto lhs = evaluate(cmp.lhs, subst);
                auto rhs = evaluate(cmp.rhs, subst);
                if (!lhs || !rhs) continue;
                if (!eval_builtin(cmp.op, *lhs, *rhs)) return;
                done[k] = 1;
                search(rule, done, remaining - 1, subst);
                done[k] = 0;
                return;
            }
            if (elem.is_naf()) {
                if (!is_ground_under(elem.literal(), subst)) continue;
                note_demand(substitute(elem.literal(), subst));
                done[k] = 1;
                search(rule, done, remaining - 1, subst);
                done[k] = 0;
                return;
            }
        }
        // Then one positive literal, matched against the derivable atoms.
        std::size_t pick = rule.body.size();
        for (std::size_t k = 0; k < rule.body.size(); ++k) {
            if (done[k] || !rule.body[k].is_pos()) continue;
            if (demand_ready(rule.body[k].literal(), subst)) {
                pick = k;
                break;
            }
        }
        if (pick == rule.body.size()) {
            throw Error(ErrorCode::UnboundArithmetic,
                        "cannot bind the remaining body of '" + rule.to_string() + "'", rule.span);
        }
        const Literal& lit = rule.body[pick].literal();
        done[pick] = 1;
        if (is_ground_under(lit, subst)) {
            Literal g = substitute(lit, subst);
            note_demand(g);
            bool derivable = current_ground_;
            if (!derivable) {
                auto id = out_.atoms.find(g);
                derivable = id && *id < in_base_.size() && in_base_[*id];
            }
            if (derivable) search(rule, done, remaining - 1, subst);
        } else {
            note_demand_partial(lit, subst);
            auto bit = base_.find(sig_of(lit));
            if (bit != base_.end()) {
                // Atoms derived during this match wait for the next pass.
                const std::size_t end = bit->second.size();
                for (std::size_t j = 0; j < end; ++j) {
                    const Literal candidate = out_.atoms.literal(bit->second[j]);
                    std::vector<std::string> added;
                    if (unify(lit, candidate, subst, added)) search(rule, done, remaining - 1, subst);
                    for (const auto& v : added) subst.erase(v);
                }
            }
        }
        done[pick] = 0;
    }

    void note_demand_partial(const Literal& lit, const Substitution& subst) {
        const auto* mode = mode_of(modes_, lit);
        if (!mode) return;
        Literal g = substitute(lit, subst);
        std::vector<Term> key;
        for (std::size_t i : *mode) key.push_back(g.atom.args[i]);
        auto sig = sig_of(lit);
        if (demand_seen_[sig].insert(key).second) {
            demands_[sig].push_back(std::move(key));
            changed_ = true;
        }
    }

    static bool unify(const Literal& pattern, const Literal& ground, Substitution& subst,
                      std::vector<std::string>& added) {
        for (std::size_t i = 0; i < pattern.atom.args.size(); ++i) {
            const Term& p = pattern.atom.args[i];
            const Term& g = ground.atom.args[i];
            if (!p.is_variable()) {
                if (p != g) return false;
                continue;
            }
            auto it = subst.find(p.name());
            if (it != subst.end()) {
                if (it->second != g) return false;
                continue;
            }
            subst.emplace(p.name(), g);
            added.push_back(p.name());
        }
        return true;
    }

    void emit(const Rule& rule, const Substitution& subst) {
        GroundRule gr;
        gr.source = current_;
        gr.abducible_loop = current_loop_;
        if (rule.head) gr.head = out_.atoms.intern(substitute(*rule.head, subst));
        for (const auto& elem : rule.body) {
            if (elem.is_pos()) {
                gr.pos.push_back(out_.atoms.intern(substitute(elem.literal(), subst)));
            } else if (elem.is_naf()) {
                gr.neg.push_back(out_.atoms.intern(substitute(elem.literal(), subst)));
            }
        }
        std::string key = std::to_string(current_) + "|" + out_.rule_text(gr);
        if (!seen_.insert(std::move(key)).second) return;
        if (emitted_.size() >= options_.max_rules) {
            throw Error(ErrorCode::GroundingLimit,
                        "ground program exceeds " + std::to_string(options_.max_rules) + " rules");
        }
        if (gr.head) {
            AtomId h = *gr.head;
            if (in_base_.size() <= h) in_base_.resize(h + 1, 0);
            if (!in_base_[h]) {
                in_base_[h] = 1;
                base_[sig_of(out_.atoms.literal(h))].push_back(h);
            }
        }
        emitted_.push_back(std::move(gr));
        changed_ = true;
    }

    const Program& program_;
    const Modes& modes_;
    GroundOptions options_;
    GroundProgram out_;
    std::vector<GroundRule> emitted_;
    std::unordered_set<std::string> seen_;
    std::map<PredicateSig, std::vector<AtomId>> base_;
    std::vector<char> in_base_;
    std::map<PredicateSig, std::vector<std::vector<Term>>> demands_;
    std::map<PredicateSig, std::set<std::vector<Term>>> demand_seen_;
    std::size_t current_ = 0;
    bool current_ground_ = false;
    bool current_loop_ = false;
    bool changed_ = false;
};

}  // namespace

GroundProgram ground(const Program& program, const GroundOptions& options) {
    std::set<PredicateSig> sig = signature(program);
    Program expanded = expand_abducibles(program);
    std::size_t first_loop_rule = program.rules.size();
    SafetyReport safety = check_safety(expanded);
    if (!safety.all_safe()) {
        for (const auto& r : safety.rules) {
            if (r.safe) continue;
            const Rule& rule = expanded.rules[r.rule_index];
            std::string vars;
            for (const auto& v : r.unsafe_vars) vars += (vars.empty() ? "" : ", ") + v;
            throw Error(ErrorCode::UnsafeRule, "unsafe variables " + vars + " in '" + rule.to_string() + "'", rule.span);
        }
    }
    GroundProgram out = Grounder(expanded, safety, options).run(first_loop_rule);
    out.show = program.show;
    out.exceptions = program.exceptions;
    out.abducibles = program.abducibles;
    out.signature = std::move(sig);
    return out;
}

}  // namespace normlog
