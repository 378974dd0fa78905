#pragma once

#include <nlohmann/json_fwd.hpp>

#include "daseinizer/truth.hpp"

namespace daseinizer {

/// Hasse diagram, finest contexts on top; contexts listed in canonical
/// order. highlight marks a down-closed set of contexts (filled nodes).
std::string poset_to_dot(const ContextPoset& poset, const std::vector<int>* highlight = nullptr);

nlohmann::json poset_to_json(const ContextPoset& poset);
nlohmann::json sections_to_json(const Presheaf& f, const std::vector<GlobalSection>& sections);
nlohmann::json subobject_to_json(const ClopenSubobject& s);
nlohmann::json omega_to_json(const GlobalOmegaElement& value);

}  // namespace daseinizer
