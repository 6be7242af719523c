#pragma once

// Reference enumerator for tests: a separate, deliberately naive
// implementation of the reduct check with no pruning.

#include "normlog/solver.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace normlog::testing {

/// Atom counts up to this size are checked over every subset.
inline constexpr std::size_t kOracleSubsetLimit = 16;

/// Independent stability test over ground rules.
bool oracle_is_stable(const GroundProgram& g, const Candidate& candidate);

/// Every stable model. Small programs: all 2^n consistent candidates.
/// Larger ones: every assignment to the default-negated atoms, each
/// checked with oracle_is_stable.
std::vector<Candidate> oracle_candidates(const GroundProgram& g);

/// Oracle models in the canonical order and projection of enumerate_models.
std::vector<AnswerSet> oracle_models(const GroundProgram& g, bool project = true);

/// Sorted literal texts per model, for comparisons.
std::vector<std::vector<std::string>> model_texts(const std::vector<AnswerSet>& models);

/// NORMLOG_SEED when set, else `fallback`.
std::uint64_t test_seed(std::uint64_t fallback = 20240611);

struct RandomProgramOptions {
    std::size_t max_literals = 10;  // distinct ground literals
    std::size_t max_rules = 20;
    std::size_t max_body = 3;
};

/// Propositional program with strong negation, denials and default negation.
Program random_program(std::mt19937_64& rng, const RandomProgramOptions& options = {});

std::string corpus_dir();

}  // namespace normlog::testing
