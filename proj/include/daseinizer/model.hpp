#pragma once

#include <optional>

#include "daseinizer/truth.hpp"

namespace daseinizer {

inline constexpr int kSchemaVersion = 1;

/// A loaded model file: operators, states, context seeds and the generated
/// poset. Owns the poset; everything built from it keeps pointers into it,
/// so a Model must stay put while derived values are alive.
struct Model {
  int dim = 0;
  std::map<std::string, SelfAdjointOperator> operators;
  std::map<std::string, StateVector> states;
  std::map<std::string, DensityMatrix> densities;
  std::optional<ClassicalModel> classical;
  int block_cap = kDefaultBlockCap;
  bool down_close = true;
  std::optional<ContextPoset> poset;  // engaged after loading

  const ContextPoset& require_poset() const;
};

/// Parse and validate a model file; builds the poset from the declared
/// context seeds. Tolerance precedence: DASEINIZER_EPS, then the file's
/// options.tolerance, then the default.
Model load_model(const std::string& path);
Model load_model_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace daseinizer
