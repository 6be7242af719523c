#pragma once

#include "oracle.hpp"

#include "normlog/harness.hpp"
#include "normlog/surface.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace normlog::testing {

using Models = std::vector<std::vector<std::string>>;

inline GroundProgram ground_text(std::string_view text) { return ground(parse_program(text)); }

inline Models models_of(std::string_view text) { return model_texts(enumerate_models(ground_text(text))); }

inline Models oracle_models_of(std::string_view text) { return model_texts(oracle_models(ground_text(text))); }

inline Literal lit(std::string_view text) { return parse_literal(text); }

inline Program compile_text(std::string_view deon) { return compile_theory(parse_deontic(deon)).program; }

inline Models models_of(const Program& p) { return model_texts(enumerate_models(ground(p))); }

}  // namespace normlog::testing
