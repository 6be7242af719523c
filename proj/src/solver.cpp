#include "normlog/solver.hpp"

#include <algorithm>
#include <deque>

namespace normlog {

bool AnswerSet::contains(const Literal& lit) const {
    return std::binary_search(visible.begin(), visible.end(), lit, [](const Literal& a, const Literal& b) {
        return a.to_string() < b.to_string();
    });
}

std::vector<std::string> AnswerSet::texts() const {
    std::vector<std::string> out;
    out.reserve(literals.size());
    for (const auto& l : literals) out.push_back(l.to_string());
    return out;
}

std::string AnswerSet::to_string(bool with_naf) const {
    std::string out = "{";
    bool first = true;
    for (const auto& l : literals) {
        std::string text = l.to_string();
        out += (first ? "" : ", ") + text;
        first = false;
        if (!with_naf) continue;
        std::string comp = complement(l).to_string();
        auto it = shown.find(comp);
        if (it != shown.end() && !it->second) out += ", not " + comp;
    }
    return out + "}";
}

bool is_consistent(const GroundProgram& g, const Candidate& candidate) {
    for (AtomId a : candidate) {
        auto c = g.atoms.complement(a);
        if (c && candidate.count(*c)) return false;
    }
    return true;
}

DefiniteProgram reduct(const GroundProgram& g, const Candidate& candidate) {
    if (!is_consistent(g, candidate)) {
        throw Error(ErrorCode::InconsistentCandidate, "candidate contains a literal and its complement");
    }
    DefiniteProgram out;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const GroundRule& r = g.rules[i];
        bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return candidate.count(a) > 0; });
        if (!blocked) out.rules.push_back(DefiniteRule{r.head, r.pos, i});
    }
    return out;
}

LeastModel least_model(const DefiniteProgram& d) {
    LeastModel m;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : d.rules) {
            bool holds = std::all_of(r.body.begin(), r.body.end(), [&](AtomId a) { return m.atoms.count(a) > 0; });
            if (!holds) continue;
            if (!r.head) {
                m.falsum = true;
            } else if (m.atoms.insert(*r.head).second) {
                changed = true;
            }
        }
    }
    return m;
}

bool is_stable(const GroundProgram& g, const Candidate& candidate) {
    if (!is_consistent(g, candidate)) return false;
    LeastModel lm = least_model(reduct(g, candidate));
    return !lm.falsum && lm.atoms == candidate;
}

bool is_stable(const GroundProgram& g, const std::vector<Literal>& candidate) {
    Candidate ids;
    for (const auto& l : candidate) {
        auto id = g.atoms.find(l);
        if (!id) return false;
        ids.insert(*id);
    }
    // Complete with the fresh atom of every abducible assumed false.
    for (const auto& r : g.rules) {
        if (r.abducible_loop && r.head && g.is_hidden(*r.head) && r.neg.size() == 1 && !ids.count(r.neg[0])) {
            ids.insert(*r.head);
        }
    }
    return is_stable(g, ids);
}

namespace {

bool shows(const std::vector<PredicateSig>& show, const Literal& lit) {
    for (const auto& s : show) {
        if (s.name != lit.atom.predicate || s.arity != lit.atom.arity()) continue;
        if (!s.strong_neg || lit.strong_neg) return true;
    }
    return false;
}

bool text_less(const Literal& a, const Literal& b) { return a.to_string() < b.to_string(); }

}  // namespace

AnswerSet make_answer_set(const GroundProgram& g, Candidate atoms, bool project) {
    AnswerSet m;
    for (AtomId a : atoms) {
        if (!g.is_hidden(a)) m.visible.push_back(g.atoms.literal(a));
    }
    std::sort(m.visible.begin(), m.visible.end(), text_less);
    for (const auto& l : m.visible) {
        if (project && !g.show.empty() && !shows(g.show, l)) continue;
        m.literals.push_back(l);
    }
    for (const auto& l : m.literals) {
        m.shown[l.to_string()] = true;
        Literal c = complement(l);
        auto id = g.atoms.find(c);
        if (!id || !atoms.count(*id)) m.shown.emplace(c.to_string(), false);
    }
    m.atoms = std::move(atoms);
    return m;
}

namespace {

// Branch-and-propagate search over the atoms occurring default-negated in
// non-denial rules. Any total assignment of those atoms fixes the reduct of
// the non-denial rules, hence the single candidate model.
class Search {
public:
    Search(const GroundProgram& g, std::size_t limit) : g_(g), limit_(limit) {
        const std::size_t n = g.atoms.size();
        watch_.resize(n);
        branch_index_.assign(n, -1);
        for (std::size_t i = 0; i < g.rules.size(); ++i) {
            const GroundRule& r = g.rules[i];
            if (!r.head) {
                denials_.push_back(i);
                continue;
            }
            std::size_t k = normal_.size();
            normal_.push_back(i);
            for (AtomId a : r.pos) watch_[a].push_back(k);
            for (AtomId a : r.neg) {
                if (branch_index_[a] < 0) {
                    branch_index_[a] = 0;
                    branch_.push_back(a);
                }
            }
        }
        std::sort(branch_.begin(), branch_.end());
        for (std::size_t i = 0; i < branch_.size(); ++i) branch_index_[branch_[i]] = static_cast<int>(i);
        complement_.resize(n);
        for (AtomId a = 0; a < n; ++a) complement_[a] = g.atoms.complement(a);
    }

    std::vector<Candidate> run() {
        std::vector<signed char> value(g_.atoms.size(), -1);
        descend(value);
        return std::move(found_);
    }

private:
    template <typename Active>
    std::vector<char> closure(Active active) const {
        std::vector<char> in(g_.atoms.size(), 0);
        std::vector<std::size_t> missing(normal_.size(), 0);
        std::vector<char> enabled(normal_.size(), 0);
        std::deque<AtomId> queue;
        for (std::size_t k = 0; k < normal_.size(); ++k) {
            const GroundRule& r = g_.rules[normal_[k]];
            if (!active(r)) continue;
            enabled[k] = 1;
            missing[k] = r.pos.size();
            if (missing[k] == 0 && !in[*r.head]) {
                in[*r.head] = 1;
                queue.push_back(*r.head);
            }
        }
        while (!queue.empty()) {
            AtomId a = queue.front();
            queue.pop_front();
            for (std::size_t k : watch_[a]) {
                if (!enabled[k] || --missing[k] != 0) continue;
                AtomId h = *g_.rules[normal_[k]].head;
                if (!in[h]) {
                    in[h] = 1;
                    queue.push_back(h);
                }
            }
        }
        return in;
    }

    // Returns false on conflict.
    bool propagate(std::vector<signed char>& value, std::vector<char>& lower) const {
        for (;;) {
            lower = closure([&](const GroundRule& r) {
                return std::all_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return value[a] == 0; });
            });
            std::vector<char> upper = closure([&](const GroundRule& r) {
                return std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return value[a] == 1; });
            });
            for (AtomId b : branch_) {
                if (value[b] == 1 && !upper[b]) return false;
                if (value[b] == 0 && lower[b]) return false;
            }
            for (AtomId a = 0; a < lower.size(); ++a) {
                if (lower[a] && complement_[a] && lower[*complement_[a]]) return false;
            }
            for (std::size_t i : denials_) {
                const GroundRule& r = g_.rules[i];
                bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return lower[a] != 0; }) &&
                            std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return upper[a] != 0; });
                if (body) return false;
            }
            bool changed = false;
            for (AtomId b : branch_) {
                if (value[b] != -1) continue;
                if (lower[b]) {
                    value[b] = 1;
                    changed = true;
                } else if (!upper[b]) {
                    value[b] = 0;
                    changed = true;
                }
            }
            if (!changed) return true;
        }
    }

    void descend(std::vector<signed char> value) {
        if (limit_ && found_.size() >= limit_) return;
        std::vector<char> lower;
        if (!propagate(value, lower)) return;
        auto next = std::find_if(branch_.begin(), branch_.end(), [&](AtomId b) { return value[b] == -1; });
        if (next == branch_.end()) {
            Candidate m;
            for (AtomId a = 0; a < lower.size(); ++a) {
                if (lower[a]) m.insert(a);
            }
            if (is_stable(g_, m)) found_.push_back(std::move(m));
            return;
        }
        for (signed char v : {0, 1}) {
            std::vector<signed char> child = value;
            child[*next] = v;
            descend(std::move(child));
        }
    }

    const GroundProgram& g_;
    std::size_t limit_;
    std::vector<std::size_t> normal_;
    std::vector<std::size_t> denials_;
    std::vector<std::vector<std::size_t>> watch_;
    std::vector<AtomId> branch_;
    std::vector<int> branch_index_;
    std::vector<std::optional<AtomId>> complement_;
    std::vector<Candidate> found_;
};

std::vector<AnswerSet> canonical(const GroundProgram& g, std::vector<Candidate> raw, bool project,
                                 std::size_t max_models) {
    std::map<std::vector<std::string>, AnswerSet> unique;
    for (auto& c : raw) {
        AnswerSet m = make_answer_set(g, std::move(c), project);
        auto key = m.texts();
        unique.emplace(std::move(key), std::move(m));
    }
    std::vector<AnswerSet> out;
    for (auto& [key, m] : unique) {
        if (max_models && out.size() >= max_models) break;
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

std::vector<AnswerSet> enumerate_models(const GroundProgram& g, const SolveOptions& options) {
    // Without projection distinct candidates are distinct models, so the
    // search may stop early.
    bool projecting = options.project && !g.show.empty();
    std::size_t limit = projecting ? 0 : options.max_models;
    return canonical(g, Search(g, limit).run(), options.project, options.max_models);
}

namespace {

bool unify_visible(const Literal& pattern, const Literal& ground, Substitution& subst,
                   std::vector<std::string>& added) {
    if (pattern.strong_neg != ground.strong_neg || pattern.atom.predicate != ground.atom.predicate ||
        pattern.atom.arity() != ground.atom.arity()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.atom.args.size(); ++i) {
        const Term& p = pattern.atom.args[i];
        const Term& v = ground.atom.args[i];
        if (!p.is_variable()) {
            if (p != v) return false;
            continue;
        }
        auto it = subst.find(p.name());
        if (it != subst.end()) {
            if (it->second != v) return false;
            continue;
        }
        subst.emplace(p.name(), v);
        added.push_back(p.name());
    }
    return true;
}

bool exists_instance(const AnswerSet& m, const Literal& lit, Substitution& subst) {
    for (const auto& l : m.visible) {
        std::vector<std::string> added;
        bool ok = unify_visible(lit, l, subst, added);
        for (const auto& v : added) subst.erase(v);
        if (ok) return true;
    }
    return false;
}

bool solve_goals(const AnswerSet& m, const std::vector<const BodyElem*>& goals, std::size_t k, Substitution& subst) {
    if (k == goals.size()) return true;
    const BodyElem& goal = *goals[k];
    if (goal.is_pos()) {
        for (const auto& l : m.visible) {
            std::vector<std::string> added;
            bool ok = unify_visible(goal.literal(), l, subst, added) && solve_goals(m, goals, k + 1, subst);
            for (const auto& v : added) subst.erase(v);
            if (ok) return true;
        }
        return false;
    }
    if (goal.is_naf()) {
        return !exists_instance(m, goal.literal(), subst) && solve_goals(m, goals, k + 1, subst);
    }
    const auto& cmp = goal.comparison();
    auto lhs = evaluate(cmp.lhs, subst);
    auto rhs = evaluate(cmp.rhs, subst);
    if (!lhs || !rhs) throw Error(ErrorCode::UnboundArithmetic, "query comparison on an unbound variable");
    return eval_builtin(cmp.op, *lhs, *rhs) && solve_goals(m, goals, k + 1, subst);
}

}  // namespace

bool satisfies(const AnswerSet& m, const std::vector<BodyElem>& goals) {
    std::vector<const BodyElem*> ordered;
    for (const auto& gl : goals) {
        if (gl.is_pos()) ordered.push_back(&gl);
    }
    for (const auto& gl : goals) {
        if (!gl.is_pos()) ordered.push_back(&gl);
    }
    Substitution subst;
    return solve_goals(m, ordered, 0, subst);
}

std::vector<AnswerSet> query(const GroundProgram& g, const std::vector<BodyElem>& goals,
                             std::vector<std::string>* warnings, const SolveOptions& options) {
    if (warnings) {
        for (const auto& gl : goals) {
            if (gl.is_builtin()) continue;
            const Atom& a = gl.literal().atom;
            PredicateSig sig{false, a.predicate, a.arity()};
            if (!g.signature.count(sig)) {
                warnings->push_back("UnknownPredicate: " + sig.to_string() + " does not occur in the program");
            }
        }
    }
    SolveOptions all = options;
    all.max_models = 0;
    std::vector<AnswerSet> out;
    for (auto& m : enumerate_models(g, all)) {
        if (options.max_models && out.size() >= options.max_models) break;
        if (satisfies(m, goals)) out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Justification

namespace {

struct Derivation {
    std::vector<std::size_t> stage;  // 0: underived
    std::vector<std::size_t> via;    // GroundProgram rule index
};

Derivation derive(const GroundProgram& g, const Candidate& model) {
    DefiniteProgram d = reduct(g, model);
    Derivation out;
    out.stage.assign(g.atoms.size(), 0);
    out.via.assign(g.atoms.size(), 0);
    for (std::size_t round = 1;; ++round) {
        std::vector<std::pair<AtomId, std::size_t>> fresh;
        for (const auto& r : d.rules) {
            if (!r.head || out.stage[*r.head]) continue;
            bool ready = std::all_of(r.body.begin(), r.body.end(),
                                     [&](AtomId a) { return out.stage[a] != 0 && out.stage[a] < round; });
            if (ready && std::none_of(fresh.begin(), fresh.end(), [&](const auto& f) { return f.first == *r.head; })) {
                fresh.emplace_back(*r.head, r.source);
            }
        }
        if (fresh.empty()) break;
        for (auto [a, rule] : fresh) {
            out.stage[a] = round;
            out.via[a] = rule;
        }
    }
    return out;
}

JustificationNode build(const GroundProgram& g, const Derivation& d, AtomId a) {
    JustificationNode node;
    node.literal = g.atoms.literal(a);
    const GroundRule& r = g.rules[d.via[a]];
    node.rule = d.via[a];
    if (r.abducible_loop) {
        node.kind = JustificationNode::Kind::Abduced;
        return node;
    }
    node.kind = r.pos.empty() && r.neg.empty() ? JustificationNode::Kind::Fact : JustificationNode::Kind::Rule;
    for (AtomId p : r.pos) node.children.push_back(build(g, d, p));
    for (AtomId n : r.neg) {
        JustificationNode leaf;
        leaf.literal = g.atoms.literal(n);
        leaf.kind = JustificationNode::Kind::Naf;
        node.children.push_back(std::move(leaf));
    }
    return node;
}

}  // namespace

std::string JustificationNode::to_string(int indent) const {
    std::string out(static_cast<std::size_t>(indent) * 4, ' ');
    switch (kind) {
        case Kind::Fact: out += literal.to_string() + "  [fact]"; break;
        case Kind::Rule: out += literal.to_string() + " :-"; break;
        case Kind::Abduced: out += literal.to_string() + "  [abduced]"; break;
        case Kind::Naf: out += "not " + literal.to_string(); break;
    }
    out += '\n';
    for (const auto& c : children) out += c.to_string(indent + 1);
    return out;
}

std::string Justification::to_string() const {
    std::string out = root.to_string();
    for (const auto& d : denials) {
        out += "denial " + d.text + "  " +
               (d.satisfied ? "no violating instance" : "VIOLATED") + " (" + std::to_string(d.instances) +
               " ground instance" + (d.instances == 1 ? "" : "s") + ")\n";
    }
    return out;
}

Justification justify(const GroundProgram& g, const AnswerSet& m, const Literal& lit) {
    auto id = g.atoms.find(lit);
    if (!id || !m.atoms.count(*id)) {
        throw Error(ErrorCode::LiteralNotInModel, "'" + lit.to_string() + "' is not in the model");
    }
    Derivation d = derive(g, m.atoms);
    if (!d.stage[*id]) {
        throw Error(ErrorCode::LiteralNotInModel, "'" + lit.to_string() + "' is not derivable in the model");
    }
    Justification out;
    out.root = build(g, d, *id);

    std::map<std::size_t, DenialCheck> checks;
    for (const auto& r : g.rules) {
        if (r.head) continue;
        auto [it, inserted] = checks.try_emplace(r.source);
        DenialCheck& c = it->second;
        if (inserted) {
            c.source = r.source;
            c.text = g.rule_text(r);
        }
        ++c.instances;
        bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return m.atoms.count(a) > 0; }) &&
                    std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return m.atoms.count(a) > 0; });
        if (body) c.satisfied = false;
    }
    for (auto& [source, c] : checks) {
        if (c.instances > 1) c.text = "#" + std::to_string(source) + " " + c.text;
        out.denials.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modal reading

std::string_view to_string(ModalStatus s) {
    switch (s) {
        case ModalStatus::Necessary: return "NECESSARY";
        case ModalStatus::Impossible: return "IMPOSSIBLE";
        case ModalStatus::Contingent: return "CONTINGENT";
    }
    return "?";
}

ModalStatus modal_classify(const AnswerSet& m, const Atom& p) {
    if (m.contains(Literal{p, false})) return ModalStatus::Necessary;
    if (m.contains(Literal{p, true})) return ModalStatus::Impossible;
    return ModalStatus::Contingent;
}

bool evaluate_notion(const AnswerSet& m, AlethicNotion n, const Atom& p) {
    NotionPattern pattern = alethic_pattern(n, p);
    return std::any_of(pattern.disjuncts.begin(), pattern.disjuncts.end(), [&](const std::vector<BodyElem>& conj) {
        return std::all_of(conj.begin(), conj.end(), [&](const BodyElem& e) {
            return e.is_pos() ? m.contains(e.literal()) : !m.contains(e.literal());
        });
    });
}

bool evaluate_notion(const AnswerSet& m, DeonticNotion n, const Atom& p) {
    return evaluate_notion(m, alethic_counterpart(n), p);
}

}  // namespace normlog
