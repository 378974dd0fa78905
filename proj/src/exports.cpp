#include "daseinizer/exports.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "daseinizer/model.hpp"

namespace daseinizer {

using nlohmann::json;

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string poset_to_dot(const ContextPoset& poset, const std::vector<int>* highlight) {
  std::string out = "digraph contexts {\n  node [shape=box];\n";
  for (int v = 0; v < poset.size(); ++v) {
    out += "  \"" + dot_escape(poset.context(v).label()) + "\"";
    bool hl = highlight && std::binary_search(highlight->begin(), highlight->end(), v);
    if (hl) out += " [style=filled, fillcolor=lightblue]";
    out += ";\n";
  }
  for (const auto& [sub, super] : poset.cover_pairs())
    out += "  \"" + dot_escape(poset.context(super).label()) + "\" -> \"" +
           dot_escape(poset.context(sub).label()) + "\";\n";
  out += "}\n";
  return out;
}

json poset_to_json(const ContextPoset& poset) {
  json contexts = json::array();
  for (int v = 0; v < poset.size(); ++v) {
    const Context& c = poset.context(v);
    json minimals = json::array();
    for (const auto& p : c.minimals()) minimals.push_back(matrix_to_json(p.matrix()));
    contexts.push_back({{"label", c.label()}, {"minimals", std::move(minimals)}});
  }
  json covers = json::array();
  for (const auto& [sub, super] : poset.cover_pairs())
    covers.push_back(json::array({poset.context(sub).label(), poset.context(super).label()}));
  return json{{"schemaVersion", kSchemaVersion},
              {"dim", poset.dim()},
              {"contexts", std::move(contexts)},
              {"covers", std::move(covers)}};
}

json sections_to_json(const Presheaf& f, const std::vector<GlobalSection>& sections) {
  const ContextPoset& poset = f.poset();
  json list = json::array();
  for (const auto& s : sections) {
    json entry = json::object();
    for (int v = 0; v < poset.size(); ++v)
      entry[poset.context(v).label()] = s[static_cast<std::size_t>(v)];
    list.push_back(std::move(entry));
  }
  return json{{"schemaVersion", kSchemaVersion},
              {"count", sections.size()},
              {"sections", std::move(list)}};
}

json subobject_to_json(const ClopenSubobject& s) {
  const ContextPoset& poset = s.poset();
  json components = json::object();
  for (int v = 0; v < poset.size(); ++v) {
    json indices = json::array();
    for (int q = 0; q < poset.context(v).size(); ++q)
      if (s.mask_at(v) >> q & 1) indices.push_back(q);
    components[poset.context(v).label()] = std::move(indices);
  }
  return json{{"schemaVersion", kSchemaVersion}, {"components", std::move(components)}};
}

json omega_to_json(const GlobalOmegaElement& value) {
  const ContextPoset& poset = value.poset();
  json stages = json::object();
  for (int v = 0; v < poset.size(); ++v) {
    json members = json::array();
    for (int w : value.at(v).members()) members.push_back(poset.context(w).label());
    stages[poset.context(v).label()] = std::move(members);
  }
  json support = json::array();
  for (int v : value.support()) support.push_back(poset.context(v).label());
  return json{{"schemaVersion", kSchemaVersion},
              {"stages", std::move(stages)},
              {"holdsAt", std::move(support)},
              {"globallyTrue", value.is_top()}};
}

}  // namespace daseinizer
