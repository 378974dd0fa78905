#include "daseinizer/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>

#include "daseinizer/exports.hpp"
#include "daseinizer/pl.hpp"
#include "daseinizer/verify.hpp"

namespace daseinizer {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
}

void write_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::string mask_bits(std::uint64_t mask, int width) {
  std::string s;
  s.reserve(static_cast<std::size_t>(width));
  for (int q = 0; q < width; ++q) s += (mask >> q & 1) ? '1' : '0';
  return s;
}

void print_poset(const ContextPoset& poset, std::ostream& out) {
  auto maximal = poset.maximal_contexts();
  out << "contexts: " << poset.size() << " (dim " << poset.dim() << ")\n";
  for (int v = 0; v < poset.size(); ++v) {
    const Context& c = poset.context(v);
    out << "  " << c.label() << "  minimals=" << c.size();
    if (std::binary_search(maximal.begin(), maximal.end(), v)) out << "  maximal";
    out << "\n";
  }
  auto covers = poset.cover_pairs();
  out << "covers: " << covers.size() << "\n";
  for (const auto& [sub, super] : covers)
    out << "  " << poset.context(sub).label() << " < " << poset.context(super).label() << "\n";
}

const StateVector* find_state(const Model& model, const std::string& name) {
  auto it = model.states.find(name);
  return it == model.states.end() ? nullptr : &it->second;
}

const DensityMatrix* find_density(const Model& model, const std::string& name) {
  auto it = model.densities.find(name);
  return it == model.densities.end() ? nullptr : &it->second;
}

void print_omega(const GlobalOmegaElement& value, const ContextPoset& poset, std::ostream& out) {
  for (int v = 0; v < poset.size(); ++v) {
    out << "  " << poset.context(v).label() << ": {";
    const auto& members = value.at(v).members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out << ", ";
      out << poset.context(members[i]).label();
    }
    out << "}\n";
  }
  out << "globally true: " << (value.is_top() ? "yes" : "no") << "\n";
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"topos-style truth values for finite quantum systems"};
  app.require_subcommand(1);

  std::string model_path, op_name, prop_text, state_name, dot_path, json_path;
  bool list_sections = false;

  CLI::App* cmd_poset = app.add_subcommand("poset", "print the context poset");
  cmd_poset->add_option("model", model_path)->required();
  cmd_poset->add_option("--dot", dot_path);
  cmd_poset->add_option("--json", json_path);

  CLI::App* cmd_das = app.add_subcommand("daseinise", "approximate a projector in every context");
  cmd_das->add_option("--op", op_name)->required();
  cmd_das->add_option("model", model_path)->required();

  CLI::App* cmd_eval = app.add_subcommand("eval", "represent a proposition as a sub-object");
  cmd_eval->add_option("--prop", prop_text)->required();
  cmd_eval->add_option("model", model_path)->required();
  cmd_eval->add_option("--json", json_path);

  CLI::App* cmd_truth = app.add_subcommand("truth", "sieve-valued truth of a proposition");
  cmd_truth->add_option("--prop", prop_text)->required();
  cmd_truth->add_option("--state", state_name)->required();
  cmd_truth->add_option("model", model_path)->required();
  cmd_truth->add_option("--json", json_path);
  cmd_truth->add_option("--dot", dot_path);

  CLI::App* cmd_sections = app.add_subcommand("sections", "global sections of the spectrum");
  cmd_sections->add_option("model", model_path)->required();
  cmd_sections->add_option("--json", json_path);
  cmd_sections->add_flag("--list", list_sections);

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the invariant suite");
  cmd_verify->add_option("model", model_path)->required();

  CLI::App* cmd_export = app.add_subcommand("export", "write the poset as DOT or JSON");
  cmd_export->add_option("model", model_path)->required();
  cmd_export->add_option("--dot", dot_path);
  cmd_export->add_option("--json", json_path);

  std::vector<std::string> cli_args(args.rbegin(), args.rend());
  try {
    app.parse(cli_args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  Model model = load_model(model_path);

  if (cmd_poset->parsed()) {
    const ContextPoset& poset = model.require_poset();
    print_poset(poset, out);
    if (!dot_path.empty()) write_file(dot_path, poset_to_dot(poset));
    if (!json_path.empty()) write_json(json_path, poset_to_json(poset));
    return 0;
  }

  if (cmd_das->parsed()) {
    const ContextPoset& poset = model.require_poset();
    auto it = model.operators.find(op_name);
    if (it == model.operators.end()) throw Error("unknown operator '" + op_name + "'");
    Projector p(it->second.matrix());
    GlobalElement outer = daseinise_global(p, poset, Flavor::outer);
    GlobalElement inner = daseinise_global(p, poset, Flavor::inner);
    out << "operator " << op_name << "  rank " << p.rank() << "\n";
    out << "context  outer  inner  (bit q = minimal q)\n";
    for (int v = 0; v < poset.size(); ++v) {
      const Context& c = poset.context(v);
      out << "  " << c.label() << "  " << mask_bits(outer.mask_at(v), c.size()) << "  "
          << mask_bits(inner.mask_at(v), c.size()) << "\n";
    }
    return 0;
  }

  if (cmd_eval->parsed()) {
    const ContextPoset& poset = model.require_poset();
    PropPtr prop = parse_proposition(prop_text);
    ClopenSubobject s = represent(prop, model.operators, poset);
    out << "proposition: " << print_proposition(prop) << "\n";
    for (int v = 0; v < poset.size(); ++v) {
      out << "  " << poset.context(v).label() << ": {";
      bool first = true;
      for (int q = 0; q < poset.context(v).size(); ++q)
        if (s.mask_at(v) >> q & 1) {
          if (!first) out << ", ";
          out << q;
          first = false;
        }
      out << "}\n";
    }
    if (!json_path.empty()) write_json(json_path, subobject_to_json(s));
    return 0;
  }

  if (cmd_truth->parsed()) {
    const ContextPoset& poset = model.require_poset();
    PropPtr prop = parse_proposition(prop_text);
    if (prop->kind != Proposition::Kind::primitive)
      throw Error("truth takes a primitive proposition 'A in set'");
    auto it = model.operators.find(prop->symbol);
    if (it == model.operators.end()) throw Error("unknown operator '" + prop->symbol + "'");
    const StateVector* psi = find_state(model, state_name);
    const DensityMatrix* rho = psi ? nullptr : find_density(model, state_name);
    if (!psi && !rho) throw Error("unknown state or density '" + state_name + "'");
    GlobalOmegaElement value = psi ? truth_value_proposition(it->second, prop->set, *psi, poset)
                                   : truth_value_proposition(it->second, prop->set, *rho, poset);
    out << "truth value of '" << print_proposition(prop) << "' in state " << state_name << "\n";
    print_omega(value, poset, out);
    if (!json_path.empty()) write_json(json_path, omega_to_json(value));
    if (!dot_path.empty()) {
      std::vector<int> holds = value.support();
      write_file(dot_path, poset_to_dot(poset, &holds));
    }
    return 0;
  }

  if (cmd_sections->parsed()) {
    const ContextPoset& poset = model.require_poset();
    Presheaf sigma = spectral_presheaf(poset);
    auto sections = global_sections(sigma);
    out << "global sections: " << sections.size() << "\n";
    if (list_sections)
      for (const auto& s : sections) {
        out << " ";
        for (int v = 0; v < poset.size(); ++v)
          out << " " << poset.context(v).label() << "=" << s[static_cast<std::size_t>(v)];
        out << "\n";
      }
    if (!json_path.empty()) write_json(json_path, sections_to_json(sigma, sections));
    return 0;
  }

  if (cmd_verify->parsed()) {
    auto results = run_verification(model);
    int failed = 0, skipped_count = 0;
    for (const auto& r : results) {
      switch (r.status) {
        case CheckStatus::pass:
          out << "PASS " << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
          break;
        case CheckStatus::skip:
          ++skipped_count;
          out << "SKIP " << r.name << " (" << r.detail << ")\n";
          break;
        case CheckStatus::fail:
          ++failed;
          out << "FAIL " << r.name << ": " << r.detail << "\n";
          break;
      }
    }
    out << "verification: " << (results.size() - failed - skipped_count) << " passed, " << failed
        << " failed, " << skipped_count << " skipped\n";
    return failed ? 2 : 0;
  }

  if (cmd_export->parsed()) {
    const ContextPoset& poset = model.require_poset();
    if (dot_path.empty() && json_path.empty())
      throw Error("export needs --dot and/or --json");
    if (!dot_path.empty()) write_file(dot_path, poset_to_dot(poset));
    if (!json_path.empty()) write_json(json_path, poset_to_json(poset));
    return 0;
  }

  throw Error("no subcommand handled");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const CertificationError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace daseinizer
