#pragma once

#include "daseinizer/model.hpp"

namespace daseinizer {

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

/// The invariant suite behind the verify subcommand: every structural law
/// the library relies on, exercised against the model's own data plus
/// seeded random samples. Deterministic for a fixed model and seed.
std::vector<CheckResult> run_verification(const Model& model, std::uint64_t seed = 20260819);

}  // namespace daseinizer
