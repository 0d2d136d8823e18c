// foliage: reduction of plane foliation singularities from the command line.
//
//   foliage reduce "2*y dy - 3*x^2 dx" --out dot
//   foliage tff "2*y dy - 3*x^2 dx" --mode nondegenerate
//   foliage equising "x dy + y*(y - t) dx" --samples 1,1/2
//   foliage bound 2 3
//
// Exit status: 0 on success, 1 when the input has no verdict (dicritical
// under abort, height limit, non-isolated singularity) or a family fails the
// sampled check, 2 on malformed input or arguments.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "foliage/foliage.h"

using Json = nlohmann::json;

namespace {

struct Failure {
  foliage_status status;
  std::string message;
};

int exit_code(foliage_status s) {
  switch (s) {
    case FOLIAGE_OK: return 0;
    case FOLIAGE_DICRITICAL:
    case FOLIAGE_HEIGHT_LIMIT:
    case FOLIAGE_NOT_ISOLATED:
    case FOLIAGE_NON_ISOLATED_ON_DIVISOR:
    case FOLIAGE_CAP_EXCEEDED:
    case FOLIAGE_INTERNAL: return 1;
    default: return 2;
  }
}

void check(foliage_status s) {
  if (s != FOLIAGE_OK) throw Failure{s, foliage_last_error()};
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out(s ? s : "");
  foliage_string_free(s);
  return out;
}

class Tree {
 public:
  Tree(const std::string& form, const foliage_options& o) { check(foliage_reduce(form.c_str(), &o, &t_)); }
  ~Tree() { foliage_tree_free(t_); }
  Tree(const Tree&) = delete;
  Tree& operator=(const Tree&) = delete;
  const foliage_tree* get() const { return t_; }

 private:
  foliage_tree* t_ = nullptr;
};

class NerveHandle {
 public:
  NerveHandle(const Tree& t, const foliage_options& o) { check(foliage_nerve_build(t.get(), &o, &n_)); }
  ~NerveHandle() { foliage_nerve_free(n_); }
  NerveHandle(const NerveHandle&) = delete;
  NerveHandle& operator=(const NerveHandle&) = delete;
  const foliage_nerve* get() const { return n_; }

 private:
  foliage_nerve* n_ = nullptr;
};

template <class F, class... A>
std::string call(F f, A... args) {
  char* out = nullptr;
  check(f(args..., &out));
  return take(out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{FOLIAGE_INVALID_ARG, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string opt_str(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

// ---------------------------------------------------------------------------
// text renderings

void tree_text(std::ostream& o, const Json& tree, const Json& dual) {
  o << "input: " << tree["original"]["text"].get<std::string>() << "\n";
  if (tree["saturated"].get<bool>()) o << "saturated: " << tree["input"]["text"].get<std::string>() << "\n";
  o << "height: " << tree["height"] << "\n";
  for (const auto& f : tree["fields"]) o << "field " << f["gen"].get<std::string>() << ": degree " << f["minpoly"].size() - 1 << "\n";
  o << "divisors:\n";
  for (const auto& d : tree["divisors"]) {
    o << "  D" << d["id"] << "  e=" << d["e"] << "  m_omega=" << d["m_omega"] << "  m_ideal=" << d["m_ideal"]
      << "  m_f=" << d["m_f"];
    if (d["orbit"].get<int>() > 1) o << "  orbit=" << d["orbit"];
    if (d["dicritical"].get<bool>()) o << "  dicritical";
    o << "\n";
  }
  o << "points:\n";
  for (const auto& p : tree["points"]) {
    o << "  p" << p["id"] << "  height=" << p["height"] << "  nu=" << p["nu"];
    if (p["orbit"].get<int>() > 1) o << "  orbit=" << p["orbit"];
    if (p["blown_up"].get<bool>()) o << "  blown-up";
    else if (p["singular"].get<bool>()) o << "  singular";
    if (!p["local"].is_null()) {
      const Json& l = p["local"];
      o << "  " << l["kind"].get<std::string>() << "  first-integral=" << l["first_integral"].get<std::string>()
        << " (" << l["fi_provenance"].get<std::string>() << ")";
    }
    o << "\n";
  }
  o << "dual tree: " << dual["canonical"].get<std::string>() << "\nhash: " << dual["hash"].get<std::string>() << "\n";
}

void nerve_text(std::ostream& o, const Json& n) {
  o << "mode: " << n["mode"].get<std::string>() << "\n";
  if (n["vertices"].empty()) o << "trivial nerve\n";
  for (const auto& v : n["vertices"]) {
    o << "  " << v["label"].get<std::string>() << "  type " << v["type"] << "  " << v["color"].get<std::string>()
      << " (" << v["color_provenance"].get<std::string>() << ")";
    if (!v["weight"].is_null()) o << "  weight " << v["weight"] << " (" << v["weight_provenance"].get<std::string>() << ")";
    o << "\n";
  }
  for (const auto& e : n["edges"]) {
    o << "  " << n["vertices"][e["v0"].get<int>()]["label"].get<std::string>() << " - "
      << n["vertices"][e["v1"].get<int>()]["label"].get<std::string>() << "  " << e["color"].get<std::string>()
      << "  " << e["arrow"].get<std::string>() << " (" << e["arrow_provenance"].get<std::string>() << ")\n";
  }
  for (const auto& s : n["notes"]) o << "note: " << s.get<std::string>() << "\n";
}

void verdict_text(std::ostream& o, const Json& v) {
  o << "tff: " << v["kind"].get<std::string>() << "\n";
  o << "reason: " << v["reason"].get<std::string>() << "\n";
  if (!v["witness"].is_null()) {
    o << "witness type " << v["witness"]["type"] << ":";
    if (v["witness"].contains("labels"))
      for (const auto& l : v["witness"]["labels"]) o << " " << l.get<std::string>();
    o << "\n";
  }
  for (const auto& m : v["missing"]) o << "missing: " << m.get<std::string>() << "\n";
}

void report_text(std::ostream& o, const Json& r) {
  o << "input: " << r["input"].get<std::string>() << "\n";
  o << "height: " << r["height"] << "\nnu0: " << r["nu0"] << "\nmu0: " << opt_str(r["mu0"]) << "\n";
  o << "m_omega:";
  for (auto& [k, v] : r["m_omega"].items()) o << " " << k << "=" << v;
  o << "\nm_ideal:";
  for (auto& [k, v] : r["m_ideal"].items()) o << " " << k << "=" << v;
  o << "\ndicritical: " << r["dicritical"] << "\nsecond kind: " << r["second_kind"];
  for (const auto& w : r["second_kind_witnesses"]) o << " " << w.get<std::string>();
  o << "\nsemi-hyperbolic: " << r["semi_hyperbolic"] << "\ndelta_hat: " << r["delta_hat"] << "\n";
  o << "mode: " << r["mode"].get<std::string>() << "\n";
  o << "sigma_hat: " << opt_str(r["sigma_hat"]) << "\ntau_hat: " << opt_str(r["tau_hat"]) << "\n";
  if (!r["beta_hat"].is_null())
    o << "beta_hat: [" << r["beta_hat"]["lo"] << ", " << r["beta_hat"]["hi"]
      << "]  epsilon " << r["beta_hat"]["epsilon_status"].get<std::string>() << "\n";
  else
    o << "beta_hat: -\n";
  o << "non-degenerate: " << r["nondegenerate"].get<std::string>() << "\nchains: " << r["chains"] << "\n";
  verdict_text(o, r["tff"]);
}

void equising_text(std::ostream& o, const Json& r) {
  o << "base: mu=" << r["base_mu"] << "  hash=" << r["base_hash"].get<std::string>() << "\n";
  for (const auto& s : r["samples"]) {
    o << "  t=" << s["t"].get<std::string>() << "  mu=" << opt_str(s["mu"]) << "  "
      << (s["ok"].get<bool>() ? "ok" : "fails: " + s["reason"].get<std::string>()) << "\n";
  }
  o << r["verdict"].get<std::string>() << " (" << r["label"].get<std::string>() << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction of singularities of plane 1-forms and their formal invariants"};
  app.require_subcommand(1);

  std::string form, family, mode = "certified", annotations_path, dicritical = "abort", out = "text", samples;
  int probe_depth = 10, max_height = 64, milnor_cap = 256;
  int bound_v = 0, bound_h = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--probe-depth", probe_depth, "linearizability probe depth K")->check(CLI::NonNegativeNumber);
    sub->add_option("--dicritical", dicritical, "abort or mark dicritical components")
        ->check(CLI::IsMember({"abort", "mark"}));
    sub->add_option("--max-height", max_height, "height limit of the reduction")->check(CLI::PositiveNumber);
    sub->add_option("--milnor-cap", milnor_cap, "bound on the quotient dimension")->check(CLI::PositiveNumber);
  };
  auto add_nerve = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "certified, annotated or nondegenerate")
        ->check(CLI::IsMember({"certified", "certified-only", "annotated", "nondegenerate"}));
    sub->add_option("--annotations", annotations_path, "annotations file (JSON)");
  };

  CLI::App* reduce = app.add_subcommand("reduce", "reduction tree and dual tree");
  reduce->add_option("form", form, "1-form such as \"2*y dy - 3*x^2 dx\"")->required();
  reduce->add_option("--out", out)->check(CLI::IsMember({"json", "dot", "text"}));
  add_common(reduce);

  CLI::App* invariants = app.add_subcommand("invariants", "invariant report");
  invariants->add_option("form", form)->required();
  invariants->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));
  add_common(invariants);
  add_nerve(invariants);

  CLI::App* nerve = app.add_subcommand("nerve", "complete nerve with provenance");
  nerve->add_option("form", form)->required();
  nerve->add_option("--out", out)->check(CLI::IsMember({"json", "dot", "text"}));
  add_common(nerve);
  add_nerve(nerve);

  CLI::App* tff = app.add_subcommand("tff", "finite formal type verdict");
  tff->add_option("form", form)->required();
  tff->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));
  add_common(tff);
  add_nerve(tff);

  CLI::App* equising = app.add_subcommand("equising", "sampled equisingularity check of a family in t");
  equising->add_option("family", family)->required();
  equising->add_option("--samples", samples, "comma separated nonzero rationals, default 1/8,1/16,1/32");
  equising->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));
  add_common(equising);

  CLI::App* bound = app.add_subcommand("bound", "determinacy recurrence sigma(v, h)");
  bound->add_option("valuation", bound_v, "v")->required()->check(CLI::PositiveNumber);
  bound->add_option("height", bound_h, "h")->required()->check(CLI::PositiveNumber);
  bound->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  foliage_options opts;
  foliage_options_init(&opts);
  opts.probe_depth = probe_depth;
  opts.max_height = max_height;
  opts.milnor_cap = milnor_cap;
  opts.dicritical_mark = dicritical == "mark";
  opts.mode = mode == "annotated"       ? FOLIAGE_MODE_ANNOTATED
              : mode == "nondegenerate" ? FOLIAGE_MODE_NONDEGENERATE
                                        : FOLIAGE_MODE_CERTIFIED;

  try {
    std::string annotations;
    if (!annotations_path.empty()) {
      annotations = read_file(annotations_path);
      opts.annotations_json = annotations.c_str();
    }
    std::ostream& o = std::cout;

    if (*bound) {
      std::string v = call(foliage_bound, bound_v, bound_h);
      if (out == "json") o << Json{{"v", bound_v}, {"h", bound_h}, {"sigma", v}}.dump(2) << "\n";
      else o << v << "\n";
      return 0;
    }

    if (*equising) {
      Json r = Json::parse(call(foliage_equising_json, family.c_str(), samples.empty() ? nullptr : samples.c_str(),
                                static_cast<const foliage_options*>(&opts)));
      if (out == "json") o << r.dump(2) << "\n";
      else equising_text(o, r);
      return r["verdict"] == "fails" ? 1 : 0;
    }

    Tree tree(form, opts);
    if (*reduce) {
      if (out == "dot") {
        o << call(foliage_dual_tree_dot, tree.get());
        return 0;
      }
      Json t = Json::parse(call(foliage_tree_json, tree.get()));
      Json d = Json::parse(call(foliage_dual_tree_json, tree.get()));
      if (out == "json") {
        Json doc{{"tree", t}, {"dual_tree", d}};
        if (!foliage_tree_dicritical(tree.get())) doc["separatrix"] = Json::parse(call(foliage_separatrix_json, tree.get()));
        o << doc.dump(2) << "\n";
      } else {
        tree_text(o, t, d);
      }
      return 0;
    }
    if (*invariants || *tff) {
      Json r = Json::parse(call(foliage_report_json, tree.get(), static_cast<const foliage_options*>(&opts)));
      if (*tff) {
        // witness labels come from the nerve
        if (!r["dicritical"].get<bool>()) {
          NerveHandle n(tree, opts);
          r["tff"] = Json::parse(call(foliage_nerve_tff_json, n.get()));
        }
        Json v{{"tff", r["tff"]},       {"sigma_hat", r["sigma_hat"]}, {"tau_hat", r["tau_hat"]},
               {"delta_hat", r["delta_hat"]}, {"beta_hat", r["beta_hat"]}, {"mode", r["mode"]}};
        if (out == "json") {
          o << v.dump(2) << "\n";
        } else {
          verdict_text(o, v["tff"]);
          o << "sigma_hat: " << opt_str(v["sigma_hat"]) << "\ntau_hat: " << opt_str(v["tau_hat"])
            << "\ndelta_hat: " << v["delta_hat"] << "\n";
          if (!v["beta_hat"].is_null())
            o << "beta_hat: [" << v["beta_hat"]["lo"] << ", " << v["beta_hat"]["hi"] << "]  epsilon "
              << v["beta_hat"]["epsilon_status"].get<std::string>() << "\n";
        }
        if (r["dicritical"].get<bool>()) throw Failure{FOLIAGE_DICRITICAL, "dicritical tree has no nerve"};
      } else {
        if (out == "json") o << r.dump(2) << "\n";
        else report_text(o, r);
      }
      return 0;
    }
    if (*nerve) {
      NerveHandle n(tree, opts);
      if (out == "dot") {
        o << call(foliage_nerve_dot, n.get());
      } else {
        Json j = Json::parse(call(foliage_nerve_json, n.get()));
        j["prune"] = Json::parse(call(foliage_nerve_prune_json, n.get()));
        if (out == "json") o << j.dump(2) << "\n";
        else nerve_text(o, j);
      }
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "foliage: " << foliage_status_name(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "foliage: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
