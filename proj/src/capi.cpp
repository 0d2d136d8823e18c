#include "foliage/foliage.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

#include "foliage/error.hpp"
#include "foliage/parse.hpp"
#include "foliage/serialize.hpp"

using namespace foliage;

struct foliage_tree {
  ReductionTree tree;
};

struct foliage_nerve {
  Nerve nerve;
};

namespace {

thread_local std::string last_error;

foliage_status fail(foliage_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
foliage_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FOLIAGE_OK;
  } catch (const Error& e) {
    return fail(static_cast<foliage_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(FOLIAGE_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ReduceConfig reduce_config(const foliage_options* o) {
  ReduceConfig cfg;
  if (!o) return cfg;
  if (o->max_height > 0) cfg.max_height = o->max_height;
  cfg.dicritical = o->dicritical_mark ? DicriticalPolicy::Mark : DicriticalPolicy::Abort;
  if (o->probe_depth > 0) cfg.local.probe_depth = o->probe_depth;
  return cfg;
}

NerveMode nerve_mode(const foliage_options* o) {
  if (!o) return NerveMode::Certified;
  switch (o->mode) {
    case FOLIAGE_MODE_CERTIFIED: return NerveMode::Certified;
    case FOLIAGE_MODE_ANNOTATED: return NerveMode::Annotated;
    case FOLIAGE_MODE_NONDEGENERATE: return NerveMode::NonDegenerate;
  }
  throw Error(Status::InvalidArg, "unknown mode");
}

std::optional<Annotations> annotations(const foliage_options* o) {
  if (!o || !o->annotations_json) return std::nullopt;
  return parse_annotations(o->annotations_json);
}

bool check_out(const void* p) {
  if (!p) {
    last_error = "null argument";
    return false;
  }
  return true;
}

}  // namespace

extern "C" {

void foliage_options_init(foliage_options* opts) {
  if (!opts) return;
  opts->max_height = 64;
  opts->dicritical_mark = 0;
  opts->probe_depth = 10;
  opts->milnor_cap = 256;
  opts->mode = FOLIAGE_MODE_CERTIFIED;
  opts->annotations_json = nullptr;
}

const char* foliage_status_name(foliage_status s) {
  if (s == FOLIAGE_CAP_EXCEEDED) return "CapExceeded";
  if (s < FOLIAGE_OK || s > FOLIAGE_INTERNAL) return "Unknown";
  return status_name(static_cast<Status>(s));
}

const char* foliage_last_error(void) { return last_error.c_str(); }

void foliage_string_free(char* s) { std::free(s); }

foliage_status foliage_reduce(const char* form, const foliage_options* opts, foliage_tree** out) {
  if (!check_out(form) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    auto t = std::make_unique<foliage_tree>();
    t->tree = reduce(parse_oneform(form), reduce_config(opts));
    *out = t.release();
  });
}

foliage_status foliage_tree_from_json(const char* json, foliage_tree** out) {
  if (!check_out(json) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    Json j;
    try {
      j = Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Status::Parse, e.what());
    }
    auto t = std::make_unique<foliage_tree>();
    t->tree = tree_from_json(j);
    *out = t.release();
  });
}

void foliage_tree_free(foliage_tree* t) { delete t; }

int foliage_tree_height(const foliage_tree* t) { return t ? t->tree.height : -1; }

int foliage_tree_dicritical(const foliage_tree* t) { return t && t->tree.has_dicritical() ? 1 : 0; }

foliage_status foliage_tree_json(const foliage_tree* t, char** out) {
  if (!check_out(t) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(dump(tree_to_json(t->tree))); });
}

foliage_status foliage_dual_tree_json(const foliage_tree* t, char** out) {
  if (!check_out(t) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(dump(dual_tree_to_json(dual_tree(t->tree)))); });
}

foliage_status foliage_dual_tree_dot(const foliage_tree* t, char** out) {
  if (!check_out(t) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(dual_tree_dot(dual_tree(t->tree))); });
}

foliage_status foliage_separatrix_json(const foliage_tree* t, char** out) {
  if (!check_out(t) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    if (t->tree.has_dicritical()) throw Error(Status::Dicritical, "separatrices of a dicritical tree");
    *out = dup(dump(separatrix_to_json(sep_multiplicities(t->tree))));
  });
}

foliage_status foliage_report_json(const foliage_tree* t, const foliage_options* opts, char** out) {
  if (!check_out(t) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    auto ann = annotations(opts);
    ReportConfig cfg;
    cfg.mode = nerve_mode(opts);
    cfg.annotations = ann ? &*ann : nullptr;
    if (opts && opts->milnor_cap > 0) cfg.milnor_cap = opts->milnor_cap;
    *out = dup(dump(report_to_json(invariant_report(t->tree, cfg))));
  });
}

foliage_status foliage_nerve_build(const foliage_tree* t, const foliage_options* opts, foliage_nerve** out) {
  if (!check_out(t) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    auto ann = annotations(opts);
    auto n = std::make_unique<foliage_nerve>();
    n->nerve = build_nerve(t->tree, nerve_mode(opts), ann ? &*ann : nullptr);
    *out = n.release();
  });
}

foliage_status foliage_nerve_from_json(const char* json, foliage_nerve** out) {
  if (!check_out(json) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    Json j;
    try {
      j = Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Status::Parse, e.what());
    }
    auto n = std::make_unique<foliage_nerve>();
    n->nerve = nerve_from_json(j);
    *out = n.release();
  });
}

void foliage_nerve_free(foliage_nerve* n) { delete n; }

foliage_status foliage_nerve_json(const foliage_nerve* n, char** out) {
  if (!check_out(n) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(dump(nerve_to_json(n->nerve))); });
}

foliage_status foliage_nerve_dot(const foliage_nerve* n, char** out) {
  if (!check_out(n) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(nerve_dot(n->nerve)); });
}

foliage_status foliage_nerve_tff_json(const foliage_nerve* n, char** out) {
  if (!check_out(n) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    TffVerdict v = is_tff(n->nerve);
    Json j = verdict_to_json(v);
    if (v.witness) {
      Json labels = Json::array();
      for (int id : v.witness->path) labels.push_back(n->nerve.vertices[id].label);
      j["witness"]["labels"] = labels;
    }
    *out = dup(dump(j));
  });
}

foliage_status foliage_nerve_prune_json(const foliage_nerve* n, char** out) {
  if (!check_out(n) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(dump(prune_to_json(n->nerve, prune(n->nerve)))); });
}

foliage_status foliage_equising_json(const char* family, const char* samples, const foliage_options* opts,
                                     char** out) {
  if (!check_out(family) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] {
    std::vector<Rational> ts;
    if (samples) {
      std::stringstream ss(samples);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        try {
          ts.push_back(parse_rational(item));
        } catch (const std::exception&) {
          throw Error(Status::InvalidArg, "bad sample '" + item + "'");
        }
      }
    } else {
      ts = default_samples();
    }
    long cap = opts && opts->milnor_cap > 0 ? opts->milnor_cap : 256;
    *out = dup(dump(equising_to_json(equising_sample_check(parse_family(family), ts, reduce_config(opts), cap))));
  });
}

foliage_status foliage_milnor(const char* a, const char* b, int cap, long* out) {
  if (!check_out(a) || !check_out(b) || !check_out(out)) return FOLIAGE_INVALID_ARG;
  foliage_status st = FOLIAGE_OK;
  foliage_status g = guarded([&] {
    MilnorResult m = milnor_number(parse_poly(a), parse_poly(b), cap > 0 ? cap : 256);
    if (m.code == MilnorResult::Code::NotIsolated) st = fail(FOLIAGE_NOT_ISOLATED, "singularity not isolated");
    else if (m.code == MilnorResult::Code::CapExceeded) st = fail(FOLIAGE_CAP_EXCEEDED, "Milnor cap exceeded");
    else *out = m.value;
  });
  return g != FOLIAGE_OK ? g : st;
}

foliage_status foliage_bound(int v, int h, char** out) {
  if (!check_out(out)) return FOLIAGE_INVALID_ARG;
  return guarded([&] { *out = dup(determinacy_bound(v, h).get_str()); });
}

}  // extern "C"
