#include "daseinizer/model.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace daseinizer {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw Error(origin + ": " + message);
}

Complex parse_entry(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(origin, where + ": matrix entries are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix parse_matrix(const json& j, int dim, const std::string& origin, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(origin, where + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                     " matrix");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(origin, where + ": row " + std::to_string(r) + " has the wrong length");
    for (int c = 0; c < dim; ++c)
      m(r, c) = parse_entry(row[static_cast<std::size_t>(c)], origin,
                            where + " entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
  }
  return m;
}

Vector parse_vector(const json& j, int dim, const std::string& origin, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(origin, where + ": expected a length-" + std::to_string(dim) + " vector");
  Vector v(dim);
  for (int r = 0; r < dim; ++r)
    v(r) = parse_entry(j[static_cast<std::size_t>(r)], origin,
                       where + " entry " + std::to_string(r));
  return v;
}

}  // namespace

const ContextPoset& Model::require_poset() const {
  if (!poset) throw Error("model has no context poset");
  return *poset;
}

Model load_model_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(origin + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) fail(origin, "top level must be an object");
  if (!j.contains("schemaVersion") || !j["schemaVersion"].is_number_integer())
    fail(origin, "missing integer schemaVersion");
  if (j["schemaVersion"].get<int>() != kSchemaVersion)
    fail(origin, "unsupported schemaVersion " + j["schemaVersion"].dump() + ", expected " +
                     std::to_string(kSchemaVersion));

  Model model;

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) fail(origin, "options must be an object");
    for (auto it = o.begin(); it != o.end(); ++it) {
      if (it.key() == "tolerance") {
        if (!it.value().is_number()) fail(origin, "options.tolerance must be a number");
        if (!tolerance_from_env()) set_tolerance(it.value().get<double>());
      } else if (it.key() == "blockCap") {
        if (!it.value().is_number_integer() || it.value().get<int>() < 2)
          fail(origin, "options.blockCap must be an integer >= 2");
        model.block_cap = it.value().get<int>();
      } else if (it.key() == "downClose") {
        if (!it.value().is_boolean()) fail(origin, "options.downClose must be a boolean");
        model.down_close = it.value().get<bool>();
      } else {
        fail(origin, "unknown option '" + it.key() + "'");
      }
    }
  }

  bool quantum = j.contains("dim") || j.contains("operators") || j.contains("contexts");
  if (quantum) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
      fail(origin, "missing integer dim");
    model.dim = j["dim"].get<int>();
    if (model.dim < 2 || model.dim > 16) fail(origin, "dim must be between 2 and 16");

    if (j.contains("operators")) {
      if (!j["operators"].is_object()) fail(origin, "operators must be an object");
      for (auto it = j["operators"].begin(); it != j["operators"].end(); ++it) {
        try {
          model.operators.emplace(it.key(), SelfAdjointOperator(parse_matrix(
                                                it.value(), model.dim, origin,
                                                "operator '" + it.key() + "'")));
        } catch (const Error& e) {
          fail(origin, "operator '" + it.key() + "': " + e.what());
        }
      }
    }
    if (j.contains("states")) {
      if (!j["states"].is_object()) fail(origin, "states must be an object");
      for (auto it = j["states"].begin(); it != j["states"].end(); ++it) {
        try {
          model.states.emplace(it.key(), StateVector(parse_vector(it.value(), model.dim, origin,
                                                                  "state '" + it.key() + "'")));
        } catch (const Error& e) {
          fail(origin, "state '" + it.key() + "': " + e.what());
        }
      }
    }
    if (j.contains("densities")) {
      if (!j["densities"].is_object()) fail(origin, "densities must be an object");
      for (auto it = j["densities"].begin(); it != j["densities"].end(); ++it) {
        try {
          model.densities.emplace(it.key(),
                                  DensityMatrix(parse_matrix(it.value(), model.dim, origin,
                                                             "density '" + it.key() + "'")));
        } catch (const Error& e) {
          fail(origin, "density '" + it.key() + "': " + e.what());
        }
      }
    }

    if (!j.contains("contexts") || !j["contexts"].is_array() || j["contexts"].empty())
      fail(origin, "missing non-empty contexts array");
    std::vector<Context> seeds;
    for (const json& c : j["contexts"]) {
      if (!c.is_object() || !c.contains("label") || !c["label"].is_string() ||
          !c.contains("generators") || !c["generators"].is_array() || c["generators"].empty())
        fail(origin, "each context needs a label and a non-empty generators array");
      std::string label = c["label"].get<std::string>();
      std::vector<SelfAdjointOperator> gens;
      for (const json& g : c["generators"]) {
        if (!g.is_string()) fail(origin, "context '" + label + "': generators are operator names");
        auto it = model.operators.find(g.get<std::string>());
        if (it == model.operators.end())
          fail(origin, "context '" + label + "': unknown operator '" + g.get<std::string>() + "'");
        gens.push_back(it->second);
      }
      try {
        seeds.push_back(context_from_commuting(gens, label));
      } catch (const Error& e) {
        fail(origin, e.what());
      }
    }
    try {
      model.poset.emplace(generate_poset(seeds, model.down_close, model.block_cap));
    } catch (const Error& e) {
      fail(origin, e.what());
    }
  }

  if (j.contains("classical")) {
    const json& c = j["classical"];
    if (!c.is_object() || !c.contains("states") || !c["states"].is_array())
      fail(origin, "classical needs a states array");
    ClassicalModel cm;
    for (const json& s : c["states"]) {
      if (!s.is_string()) fail(origin, "classical state names are strings");
      cm.states.push_back(s.get<std::string>());
    }
    if (c.contains("quantities")) {
      if (!c["quantities"].is_object()) fail(origin, "classical.quantities must be an object");
      for (auto it = c["quantities"].begin(); it != c["quantities"].end(); ++it) {
        if (!it.value().is_array())
          fail(origin, "classical quantity '" + it.key() + "' must be an array");
        std::vector<double> values;
        for (const json& x : it.value()) {
          if (!x.is_number())
            fail(origin, "classical quantity '" + it.key() + "' has a non-numeric value");
          values.push_back(x.get<double>());
        }
        cm.quantities.emplace(it.key(), std::move(values));
      }
    }
    try {
      cm.validate();
    } catch (const Error& e) {
      fail(origin, e.what());
    }
    model.classical = std::move(cm);
  }

  if (!quantum && !model.classical) fail(origin, "model declares neither contexts nor classical data");
  return model;
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_model_text(text, path);
}

}  // namespace daseinizer
