#include "oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

#ifndef NORMLOG_CORPUS_DIR
#define NORMLOG_CORPUS_DIR "corpus"
#endif

namespace normlog::testing {

namespace {

// Least model of the rules not blocked by `assumed`; denials ignored.
Candidate fixpoint(const GroundProgram& g, const Candidate& assumed) {
    Candidate model;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.rules) {
            if (!r.head || model.count(*r.head)) continue;
            bool blocked = false;
            for (AtomId a : r.neg) blocked = blocked || assumed.count(a);
            bool holds = !blocked;
            for (AtomId a : r.pos) holds = holds && model.count(a);
            if (holds) {
                model.insert(*r.head);
                changed = true;
            }
        }
    }
    return model;
}

bool consistent(const GroundProgram& g, const Candidate& c) {
    for (AtomId a : c) {
        Literal comp = complement(g.atoms.literal(a));
        auto id = g.atoms.find(comp);
        if (id && c.count(*id)) return false;
    }
    return true;
}

bool denials_hold(const GroundProgram& g, const Candidate& c) {
    for (const auto& r : g.rules) {
        if (r.head) continue;
        bool body = true;
        for (AtomId a : r.pos) body = body && c.count(a);
        for (AtomId a : r.neg) body = body && !c.count(a);
        if (body) return false;
    }
    return true;
}

}  // namespace

bool oracle_is_stable(const GroundProgram& g, const Candidate& candidate) {
    return consistent(g, candidate) && fixpoint(g, candidate) == candidate && denials_hold(g, candidate);
}

std::vector<Candidate> oracle_candidates(const GroundProgram& g) {
    std::vector<Candidate> out;
    const std::size_t n = g.atoms.size();
    if (n <= kOracleSubsetLimit) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            Candidate c;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) c.insert(static_cast<AtomId>(i));
            }
            if (oracle_is_stable(g, c)) out.push_back(std::move(c));
        }
        return out;
    }
    std::vector<AtomId> guessed;
    for (const auto& r : g.rules) {
        for (AtomId a : r.neg) {
            if (std::find(guessed.begin(), guessed.end(), a) == guessed.end()) guessed.push_back(a);
        }
    }
    if (guessed.size() > 24) throw std::runtime_error("oracle: too many default-negated atoms");
    std::set<Candidate> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << guessed.size()); ++mask) {
        Candidate assumed;
        for (std::size_t i = 0; i < guessed.size(); ++i) {
            if (mask >> i & 1) assumed.insert(guessed[i]);
        }
        Candidate model = fixpoint(g, assumed);
        if (oracle_is_stable(g, model) && seen.insert(model).second) out.push_back(std::move(model));
    }
    return out;
}

std::vector<AnswerSet> oracle_models(const GroundProgram& g, bool project) {
    std::map<std::vector<std::string>, AnswerSet> unique;
    for (auto& c : oracle_candidates(g)) {
        AnswerSet m = make_answer_set(g, std::move(c), project);
        unique.emplace(m.texts(), std::move(m));
    }
    std::vector<AnswerSet> out;
    for (auto& [key, m] : unique) out.push_back(std::move(m));
    return out;
}

std::vector<std::vector<std::string>> model_texts(const std::vector<AnswerSet>& models) {
    std::vector<std::vector<std::string>> out;
    for (const auto& m : models) out.push_back(m.texts());
    return out;
}

std::uint64_t test_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("NORMLOG_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

Program random_program(std::mt19937_64& rng, const RandomProgramOptions& options) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::size_t props = pick(1, std::max<std::size_t>(1, options.max_literals / 2));
    auto literal = [&] {
        Literal l = make_literal("p" + std::to_string(pick(0, props - 1)));
        l.strong_neg = pick(0, 3) == 0;
        return l;
    };
    Program p;
    std::size_t rules = pick(1, options.max_rules);
    for (std::size_t i = 0; i < rules; ++i) {
        Rule r;
        std::size_t kind = pick(0, 9);
        if (kind >= 2) r.head = literal();
        std::size_t body = pick(r.head ? 0 : 1, options.max_body);
        if (kind == 9) body = 0;  // some facts
        if (!r.head && body == 0) body = 1;
        for (std::size_t j = 0; j < body; ++j) {
            r.body.push_back(pick(0, 1) ? BodyElem::naf(literal()) : BodyElem::pos(literal()));
        }
        p.rules.push_back(std::move(r));
    }
    return p;
}

std::string corpus_dir() { return NORMLOG_CORPUS_DIR; }

}  // namespace normlog::testing
