#include "foliage/serialize.hpp"

#include <sstream>

#include "foliage/error.hpp"

namespace foliage {

namespace {

template <class E, class F>
E enum_from(const Json& j, F name, int count, const char* what) {
  std::string s = j.get<std::string>();
  for (int i = 0; i < count; ++i)
    if (s == name(static_cast<E>(i))) return static_cast<E>(i);
  throw Error(Status::Parse, std::string("unknown ") + what + " '" + s + "'");
}

const char* ratio_tag_name(RatioTag t) {
  switch (t) {
    case RatioTag::BothZeroEigen: return "both-zero";
    case RatioTag::SaddleNodeCandidate: return "saddle-node";
    case RatioTag::RationalRatio: return "rational";
    case RatioTag::IrrationalOrComplexRatio: return "irrational-or-complex";
  }
  return "?";
}
const char* axis_name(Axis a) { return a == Axis::S ? "s" : "t"; }

Provenance prov_from(const Json& j) { return enum_from<Provenance>(j, provenance_name, 5, "provenance"); }
Tri tri_from(const Json& j) { return enum_from<Tri>(j, tri_name, 3, "tri-state"); }
Color color_from(const Json& j) { return enum_from<Color>(j, color_name, 3, "color"); }

Json rat(const Rational& q) { return rational_str(q); }
Rational rat_from(const Json& j) { return parse_rational(j.get<std::string>()); }
Json integer(const Integer& z) { return z.get_str(); }
Integer integer_from(const Json& j) { return Integer(j.get<std::string>()); }

// Field numbering: 0 is Q, k + 1 is tree.fields[k].
struct FieldTable {
  std::vector<FieldPtr> fields{Field::rationals()};

  int id(const FieldPtr& f) const {
    for (size_t i = 0; i < fields.size(); ++i)
      if (fields[i] == f) return static_cast<int>(i);
    throw Error(Status::Internal, "field missing from the tree's field list");
  }
  const FieldPtr& at(const Json& j) const {
    int i = j.get<int>();
    if (i < 0 || i >= static_cast<int>(fields.size())) throw Error(Status::Parse, "bad field index");
    return fields[i];
  }

  // Coordinates of e, which must lie in f; a plain string over Q.
  Json value(const FieldElem& e, const FieldPtr& f) const {
    FieldElem x = e.field() == f ? e : e.lift(f);
    if (f->is_rationals()) return rat(x.coords()[0]);
    Json a = Json::array();
    for (const auto& c : x.coords()) a.push_back(rat(c));
    return a;
  }
  FieldElem value_from(const Json& j, const FieldPtr& f) const {
    if (j.is_string()) return FieldElem(f, rat_from(j));
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rat_from(x));
    return FieldElem(f, std::move(c));
  }

  Json elem(const FieldElem& e) const { return {{"field", id(e.field())}, {"value", value(e, e.field())}}; }
  FieldElem elem_from(const Json& j) const {
    const FieldPtr& f = at(j.at("field"));
    return value_from(j.at("value"), f);
  }

  Json poly(const Poly2& p) const {
    Json t = Json::array();
    for (const auto& [e, c] : p.terms()) t.push_back({e.first, e.second, value(c, p.field())});
    return {{"field", id(p.field())}, {"terms", t}};
  }
  Poly2 poly_from(const Json& j) const {
    const FieldPtr& f = at(j.at("field"));
    Poly2 p(f);
    for (const auto& t : j.at("terms")) p.set(t[0].get<int>(), t[1].get<int>(), value_from(t[2], f));
    return p;
  }

  Json upoly(const UPoly& p) const {
    Json c = Json::array();
    for (const auto& x : p.coeffs()) c.push_back(value(x, p.field()));
    return {{"field", id(p.field())}, {"coeffs", c}};
  }
  UPoly upoly_from(const Json& j) const {
    const FieldPtr& f = at(j.at("field"));
    std::vector<FieldElem> c;
    for (const auto& x : j.at("coeffs")) c.push_back(value_from(x, f));
    return UPoly(f, std::move(c));
  }

  Json form(const OneForm& w) const { return {{"a", poly(w.a)}, {"b", poly(w.b)}, {"text", w.str()}}; }
  OneForm form_from(const Json& j) const { return {poly_from(j.at("a")), poly_from(j.at("b"))}; }
};

template <class T, class F>
Json opt(const std::optional<T>& v, F f) {
  return v ? f(*v) : Json(nullptr);
}

Json local_to_json(const FieldTable& ft, const ReducedSingularity& r) {
  Json j;
  j["kind"] = kind_name(r.kind);
  j["ratio"] = {{"tag", ratio_tag_name(r.ratio.tag)},
                {"p", integer(r.ratio.p)},
                {"q", integer(r.ratio.q)},
                {"sign", r.ratio.sign},
                {"s", opt(r.ratio.s, [&](const FieldElem& e) { return ft.elem(e); })}};
  j["p"] = integer(r.p);
  j["q"] = integer(r.q);
  j["probe"] = {{"obstructed", r.probe.obstructed},
                {"depth", r.probe.depth},
                {"k", r.probe.k},
                {"zeta", opt(r.probe.zeta, [&](const FieldElem& e) { return ft.elem(e); })}};
  j["probe_implied"] = r.probe_implied;
  j["sn_p"] = r.sn_p;
  j["mu"] = r.mu;
  j["corner"] = r.corner;
  Json br = Json::array();
  for (const auto& b : r.branches)
    br.push_back({{"axis", axis_name(b.axis)},
                  {"comp", b.comp},
                  {"cs_index", opt(b.cs_index, [&](const FieldElem& e) { return ft.elem(e); })},
                  {"weak", b.weak},
                  {"alignment", alignment_name(b.alignment)},
                  {"mu_along", b.mu_along}});
  j["branches"] = br;
  j["first_integral"] = tri_name(r.first_integral);
  j["fi_provenance"] = provenance_name(r.fi_prov);
  j["fi_certificate"] = opt(r.fi_certificate, [&](const Poly2& p) { return ft.poly(p); });
  j["weak_periodic"] = tri_name(r.weak_periodic);
  j["weak_provenance"] = provenance_name(r.weak_prov);
  return j;
}

ReducedSingularity local_from_json(const FieldTable& ft, const Json& j) {
  ReducedSingularity r;
  r.kind = enum_from<SingKind>(j.at("kind"), kind_name, 4, "kind");
  const Json& rc = j.at("ratio");
  r.ratio.tag = enum_from<RatioTag>(rc.at("tag"), ratio_tag_name, 4, "ratio tag");
  r.ratio.p = integer_from(rc.at("p"));
  r.ratio.q = integer_from(rc.at("q"));
  r.ratio.sign = rc.at("sign").get<int>();
  if (!rc.at("s").is_null()) r.ratio.s = ft.elem_from(rc.at("s"));
  r.p = integer_from(j.at("p"));
  r.q = integer_from(j.at("q"));
  const Json& pr = j.at("probe");
  r.probe.obstructed = pr.at("obstructed").get<bool>();
  r.probe.depth = pr.at("depth").get<int>();
  r.probe.k = pr.at("k").get<int>();
  if (!pr.at("zeta").is_null()) r.probe.zeta = ft.elem_from(pr.at("zeta"));
  r.probe_implied = j.at("probe_implied").get<bool>();
  r.sn_p = j.at("sn_p").get<int>();
  r.mu = j.at("mu").get<long>();
  r.corner = j.at("corner").get<bool>();
  for (const auto& b : j.at("branches")) {
    BranchData d;
    d.axis = enum_from<Axis>(b.at("axis"), axis_name, 2, "axis");
    d.comp = b.at("comp").get<int>();
    if (!b.at("cs_index").is_null()) d.cs_index = ft.elem_from(b.at("cs_index"));
    d.weak = b.at("weak").get<bool>();
    d.alignment = enum_from<Alignment>(b.at("alignment"), alignment_name, 3, "alignment");
    d.mu_along = b.at("mu_along").get<int>();
    r.branches.push_back(d);
  }
  r.first_integral = tri_from(j.at("first_integral"));
  r.fi_prov = prov_from(j.at("fi_provenance"));
  if (!j.at("fi_certificate").is_null()) r.fi_certificate = ft.poly_from(j.at("fi_certificate"));
  r.weak_periodic = tri_from(j.at("weak_periodic"));
  r.weak_prov = prov_from(j.at("weak_provenance"));
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// trees

Json tree_to_json(const ReductionTree& t) {
  FieldTable ft;
  for (const auto& f : t.fields) ft.fields.push_back(f);
  Json j;
  Json fields = Json::array();
  for (size_t k = 0; k < t.fields.size(); ++k) {
    const Field& f = *t.fields[k];
    Json mp = Json::array();
    for (const auto& c : f.minpoly) mp.push_back(ft.value(c, f.parent));
    fields.push_back({{"id", k + 1}, {"gen", f.gen}, {"parent", ft.id(f.parent)}, {"minpoly", mp}});
  }
  j["fields"] = fields;
  j["input"] = ft.form(t.input);
  j["original"] = ft.form(t.original);
  j["saturated"] = t.saturated;
  j["pre_reduction"] = t.pre_reduction;
  j["height"] = t.height;
  j["dicritical_log"] = t.dicritical_log;
  Json pts = Json::array();
  Json prox = Json::array();
  Json charts = Json::array();
  for (const auto& p : t.points) {
    Json q;
    q["id"] = p.id;
    q["height"] = p.height;
    q["parent"] = p.parent;
    q["chart"] = chart_name(p.chart);
    Json path = Json::array();
    for (auto c : p.path) path.push_back(chart_name(c));
    q["path"] = path;
    q["field"] = ft.id(p.field);
    q["factor"] = opt(p.factor, [&](const UPoly& u) { return ft.upoly(u); });
    q["coord"] = ft.elem(p.coord);
    q["orbit"] = p.orbit;
    q["orbit_rel"] = p.orbit_rel;
    q["comp_s"] = p.comp_s;
    q["comp_t"] = p.comp_t;
    q["proximate"] = p.proximate;
    q["form"] = ft.form(p.form);
    q["nu"] = p.nu;
    q["singular"] = p.singular;
    q["reduced"] = p.reduced;
    q["blown_up"] = p.blown_up;
    q["division_exponent"] = p.division_exponent;
    q["created"] = p.created;
    q["local"] = opt(p.local, [&](const ReducedSingularity& r) { return local_to_json(ft, r); });
    pts.push_back(q);
    for (int o : p.proximate) prox.push_back({p.id, o});
    charts.push_back({{"point", p.id}, {"chart", chart_name(p.chart)}, {"path", path}});
  }
  j["points"] = pts;
  j["proximity"] = prox;
  j["charts"] = charts;
  Json divs = Json::array();
  for (const auto& d : t.comps)
    divs.push_back({{"id", d.id},
                    {"creator", d.creator},
                    {"e", d.e},
                    {"m_omega", d.m_omega},
                    {"m_ideal", d.m_ideal},
                    {"m_f", d.m_f},
                    {"dicritical", d.dicritical},
                    {"orbit", d.orbit},
                    {"field", ft.id(d.field)},
                    {"points", d.points}});
  j["divisors"] = divs;
  return j;
}

ReductionTree tree_from_json(const Json& j) {
  try {
    FieldTable ft;
    for (const auto& f : j.at("fields")) {
      const FieldPtr& parent = ft.at(f.at("parent"));
      std::vector<FieldElem> mp;
      for (const auto& c : f.at("minpoly")) mp.push_back(ft.value_from(c, parent));
      ft.fields.push_back(make_extension_unchecked(parent, mp, f.at("gen").get<std::string>()));
    }
    ReductionTree t;
    for (size_t k = 1; k < ft.fields.size(); ++k) t.fields.push_back(ft.fields[k]);
    t.input = ft.form_from(j.at("input"));
    t.original = ft.form_from(j.at("original"));
    t.saturated = j.at("saturated").get<bool>();
    t.pre_reduction = j.at("pre_reduction").get<bool>();
    t.height = j.at("height").get<int>();
    t.dicritical_log = j.at("dicritical_log").get<std::vector<std::string>>();
    for (const auto& q : j.at("points")) {
      InfNearPoint p;
      p.id = q.at("id").get<int>();
      p.height = q.at("height").get<int>();
      p.parent = q.at("parent").get<int>();
      p.chart = enum_from<ChartKind>(q.at("chart"), chart_name, 3, "chart");
      for (const auto& c : q.at("path")) p.path.push_back(enum_from<ChartKind>(c, chart_name, 3, "chart"));
      p.field = ft.at(q.at("field"));
      if (!q.at("factor").is_null()) p.factor = ft.upoly_from(q.at("factor"));
      p.coord = ft.elem_from(q.at("coord"));
      p.orbit = q.at("orbit").get<int>();
      p.orbit_rel = q.at("orbit_rel").get<int>();
      p.comp_s = q.at("comp_s").get<int>();
      p.comp_t = q.at("comp_t").get<int>();
      p.proximate = q.at("proximate").get<std::vector<int>>();
      p.form = ft.form_from(q.at("form"));
      p.nu = q.at("nu").get<int>();
      p.singular = q.at("singular").get<bool>();
      p.reduced = q.at("reduced").get<bool>();
      p.blown_up = q.at("blown_up").get<bool>();
      p.division_exponent = q.at("division_exponent").get<int>();
      p.created = q.at("created").get<int>();
      if (!q.at("local").is_null()) p.local = local_from_json(ft, q.at("local"));
      t.points.push_back(std::move(p));
    }
    for (const auto& d : j.at("divisors")) {
      DivisorComp c;
      c.id = d.at("id").get<int>();
      c.creator = d.at("creator").get<int>();
      c.e = d.at("e").get<int>();
      c.m_omega = d.at("m_omega").get<int>();
      c.m_ideal = d.at("m_ideal").get<int>();
      c.m_f = d.at("m_f").get<int>();
      c.dicritical = d.at("dicritical").get<bool>();
      c.orbit = d.at("orbit").get<int>();
      c.field = ft.at(d.at("field"));
      c.points = d.at("points").get<std::vector<int>>();
      t.comps.push_back(std::move(c));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Status::Parse, std::string("tree document: ") + e.what());
  }
}

Json dual_tree_to_json(const DualTree& dt) {
  Json v = Json::array();
  for (const auto& x : dt.vertices)
    v.push_back({{"label", x.label},
                 {"comp", x.comp},
                 {"copy", x.copy},
                 {"e", x.e},
                 {"m_omega", x.m_omega},
                 {"arrows", x.arrows},
                 {"dicritical", x.dicritical}});
  Json e = Json::array();
  for (auto [a, b] : dt.edges) e.push_back({a, b});
  Json ar = Json::array();
  for (auto [a, b] : dt.arrows) ar.push_back({a, b});
  return {{"vertices", v}, {"edges", e}, {"arrows", ar}, {"canonical", dt.canonical}, {"hash", dt.hash}};
}

Json separatrix_to_json(const SeparatrixModel& sep) {
  Json br = Json::array();
  for (const auto& b : sep.branches) {
    Json nu = Json::object();
    for (auto [p, m] : b.nu) nu["p" + std::to_string(p)] = m;
    br.push_back({{"id", b.id}, {"cime", b.cime}, {"orbit", b.orbit}, {"nu", nu}});
  }
  Json mf = Json::object();
  for (auto [c, m] : sep.m_f) mf["D" + std::to_string(c)] = m;
  return {{"branches", br}, {"m_f", mf}, {"nu0_f", sep.nu0_f}, {"flagged", sep.flagged}};
}

// ---------------------------------------------------------------------------
// nerves

Json nerve_to_json(const Nerve& n) {
  Json v = Json::array();
  for (const auto& x : n.vertices)
    v.push_back({{"id", x.id},
                 {"type", x.type},
                 {"label", x.label},
                 {"ref", x.ref},
                 {"color", color_name(x.color)},
                 {"color_provenance", provenance_name(x.color_prov)},
                 {"weight", x.weight < 0 ? Json(nullptr) : Json(x.weight)},
                 {"weight_provenance", provenance_name(x.weight_prov)},
                 {"saddle_node", x.saddle_node},
                 {"tangent_saddle_node", x.tangent_sn},
                 {"valence", x.valence}});
  Json e = Json::array();
  for (const auto& x : n.edges)
    e.push_back({{"v0", x.v0},
                 {"v1", x.v1},
                 {"color", color_name(x.color)},
                 {"color_provenance", provenance_name(x.color_prov)},
                 {"bijective0", tri_name(x.bij0)},
                 {"bijective1", tri_name(x.bij1)},
                 {"arrow", arrow_name(x.arrow())},
                 {"arrow_provenance", provenance_name(x.bij_prov)}});
  return {{"mode", mode_name(n.mode)}, {"vertices", v}, {"edges", e}, {"notes", n.notes}};
}

Nerve nerve_from_json(const Json& j) {
  try {
    Nerve n;
    n.mode = parse_mode(j.at("mode").get<std::string>());
    for (const auto& x : j.at("vertices")) {
      NerveVertex v;
      v.id = x.at("id").get<int>();
      v.type = x.at("type").get<int>();
      v.label = x.at("label").get<std::string>();
      v.ref = x.at("ref").get<int>();
      v.color = color_from(x.at("color"));
      v.color_prov = prov_from(x.at("color_provenance"));
      v.weight = x.at("weight").is_null() ? -1 : x.at("weight").get<int>();
      v.weight_prov = prov_from(x.at("weight_provenance"));
      v.saddle_node = x.at("saddle_node").get<bool>();
      v.tangent_sn = x.at("tangent_saddle_node").get<bool>();
      v.valence = x.at("valence").get<int>();
      n.vertices.push_back(v);
    }
    for (const auto& x : j.at("edges")) {
      NerveEdge e;
      e.v0 = x.at("v0").get<int>();
      e.v1 = x.at("v1").get<int>();
      e.color = color_from(x.at("color"));
      e.color_prov = prov_from(x.at("color_provenance"));
      e.bij0 = tri_from(x.at("bijective0"));
      e.bij1 = tri_from(x.at("bijective1"));
      e.bij_prov = prov_from(x.at("arrow_provenance"));
      n.edges.push_back(e);
    }
    n.notes = j.at("notes").get<std::vector<std::string>>();
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Status::Parse, std::string("nerve document: ") + e.what());
  }
}

Json verdict_to_json(const TffVerdict& v) {
  Json w = nullptr;
  if (v.witness) w = {{"type", v.witness->type}, {"path", v.witness->path}};
  return {{"kind", tff_name(v.kind)},
          {"sigma_hat", v.sigma_hat < 0 ? Json(nullptr) : Json(v.sigma_hat)},
          {"tau_hat", v.tau_hat < 0 ? Json(nullptr) : Json(v.tau_hat)},
          {"witness", w},
          {"missing", v.missing},
          {"reason", v.reason}};
}

namespace {

TffVerdict verdict_from_json(const Json& j) {
  TffVerdict v;
  v.kind = enum_from<TffKind>(j.at("kind"), tff_name, 4, "verdict");
  v.sigma_hat = j.at("sigma_hat").is_null() ? -1 : j.at("sigma_hat").get<long>();
  v.tau_hat = j.at("tau_hat").is_null() ? -1 : j.at("tau_hat").get<long>();
  if (!j.at("witness").is_null())
    v.witness = Witness{j["witness"].at("type").get<int>(), j["witness"].at("path").get<std::vector<int>>()};
  v.missing = j.at("missing").get<std::vector<std::string>>();
  v.reason = j.at("reason").get<std::string>();
  return v;
}

}  // namespace

Json prune_to_json(const Nerve& n, const PruneResult& p) {
  Json log = Json::array();
  for (const auto& s : p.log) {
    Json removed = Json::array();
    for (int v : s.removed) removed.push_back(n.vertices[v].label);
    log.push_back({{"branch", s.green ? "green" : "red"}, {"removed", removed}, {"attach", n.vertices[s.attach].label}});
  }
  Json kept = Json::array();
  for (int v : p.kept) kept.push_back(n.vertices[v].label);
  return {{"kept", kept}, {"log", log}};
}

// ---------------------------------------------------------------------------
// reports

Json report_to_json(const InvariantReport& r) {
  Json j;
  j["input"] = r.input;
  j["height"] = r.height;
  j["nu0"] = r.nu0;
  j["mu0"] = r.mu0 ? Json(*r.mu0) : Json(nullptr);
  j["m_omega"] = r.m_omega;
  j["m_ideal"] = r.m_ideal;
  j["dicritical"] = r.dicritical;
  j["second_kind"] = r.second_kind;
  j["second_kind_witnesses"] = r.second_kind_witnesses;
  j["semi_hyperbolic"] = r.semi_hyperbolic;
  j["delta_hat"] = r.delta_hat;
  j["mode"] = mode_name(r.mode);
  j["sigma_hat"] = r.sigma_hat ? Json(*r.sigma_hat) : Json(nullptr);
  j["tau_hat"] = r.tau_hat ? Json(*r.tau_hat) : Json(nullptr);
  if (r.beta_hat)
    j["beta_hat"] = {{"lo", r.beta_hat->lo}, {"hi", r.beta_hat->hi}, {"epsilon_status", epsilon_name(r.beta_hat->epsilon)}};
  else
    j["beta_hat"] = nullptr;
  j["epsilon_note"] = r.epsilon_note;
  j["tff"] = verdict_to_json(r.tff);
  j["nondegenerate"] = tri_name(r.nondegenerate);
  j["chains"] = r.chains;
  Json pv = Json::array();
  for (const auto& p : r.provenance)
    pv.push_back({{"attribute", p.attribute}, {"value", p.value}, {"provenance", provenance_name(p.prov)}});
  j["provenance"] = pv;
  return j;
}

InvariantReport report_from_json(const Json& j) {
  try {
    InvariantReport r;
    r.input = j.at("input").get<std::string>();
    r.height = j.at("height").get<int>();
    r.nu0 = j.at("nu0").get<int>();
    if (!j.at("mu0").is_null()) r.mu0 = j["mu0"].get<long>();
    r.m_omega = j.at("m_omega").get<std::map<std::string, int>>();
    r.m_ideal = j.at("m_ideal").get<std::map<std::string, int>>();
    r.dicritical = j.at("dicritical").get<bool>();
    r.second_kind = j.at("second_kind").get<bool>();
    r.second_kind_witnesses = j.at("second_kind_witnesses").get<std::vector<std::string>>();
    r.semi_hyperbolic = j.at("semi_hyperbolic").get<bool>();
    r.delta_hat = j.at("delta_hat").get<long>();
    r.mode = parse_mode(j.at("mode").get<std::string>());
    if (!j.at("sigma_hat").is_null()) r.sigma_hat = j["sigma_hat"].get<long>();
    if (!j.at("tau_hat").is_null()) r.tau_hat = j["tau_hat"].get<long>();
    if (!j.at("beta_hat").is_null()) {
      const Json& b = j["beta_hat"];
      r.beta_hat = BetaBounds{b.at("lo").get<long>(), b.at("hi").get<long>(),
                              enum_from<EpsilonStatus>(b.at("epsilon_status"), epsilon_name, 5, "epsilon status")};
    }
    r.epsilon_note = j.at("epsilon_note").get<std::string>();
    r.tff = verdict_from_json(j.at("tff"));
    r.nondegenerate = tri_from(j.at("nondegenerate"));
    r.chains = j.at("chains").get<long>();
    for (const auto& p : j.at("provenance"))
      r.provenance.push_back({p.at("attribute").get<std::string>(), p.at("value").get<std::string>(),
                              prov_from(p.at("provenance"))});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Status::Parse, std::string("report document: ") + e.what());
  }
}

Json equising_to_json(const EquisingReport& r) {
  Json s = Json::array();
  for (const auto& v : r.samples)
    s.push_back({{"t", rat(v.t)},
                 {"ok", v.ok},
                 {"reason", v.reason},
                 {"mu", v.mu < 0 ? Json(nullptr) : Json(v.mu)},
                 {"hash", v.hash}});
  return {{"base_mu", r.base_mu},
          {"base_hash", r.base_hash},
          {"samples", s},
          {"verdict", r.equisingular_at_samples ? "equisingular-at-samples" : "fails"},
          {"label", r.label}};
}

// ---------------------------------------------------------------------------
// Graphviz

std::string dual_tree_dot(const DualTree& dt) {
  std::ostringstream o;
  o << "graph dual_tree {\n  node [shape=ellipse];\n";
  for (size_t i = 0; i < dt.vertices.size(); ++i) {
    const auto& v = dt.vertices[i];
    o << "  v" << i << " [label=\"" << v.label << "\\ne=" << v.e << ", m=" << v.m_omega << "\"";
    if (v.dicritical) o << ", peripheries=2";
    o << "];\n";
  }
  for (auto [a, b] : dt.edges) o << "  v" << a << " -- v" << b << ";\n";
  int k = 0;
  for (auto [v, p] : dt.arrows) {
    o << "  a" << k << " [shape=point, label=\"\"];\n";
    o << "  v" << v << " -- a" << k << " [dir=forward, arrowhead=normal, tooltip=\"point " << p << "\"];\n";
    ++k;
  }
  for (size_t i = 0; i < dt.vertices.size(); ++i) {
    if (!dt.vertices[i].dicritical) continue;
    o << "  d" << i << " [shape=point, label=\"\"];\n";
    o << "  v" << i << " -- d" << i << " [dir=forward, arrowhead=normalnormal];\n";
  }
  o << "}\n";
  return o.str();
}

std::string nerve_dot(const Nerve& n) {
  std::ostringstream o;
  o << "graph nerve {\n  node [style=filled];\n";
  for (const auto& v : n.vertices) {
    const char* fill = v.color == Color::Red ? "red" : v.color == Color::Green ? "green" : "gray";
    o << "  n" << v.id << " [label=\"" << v.label;
    if (v.color == Color::Red) o << "\\nw=" << (v.weight < 0 ? std::string("?") : std::to_string(v.weight));
    o << "\", shape=" << (v.type == 0 ? "circle" : "box") << ", fillcolor=" << fill << "];\n";
  }
  for (const auto& e : n.edges) {
    const char* color = e.color == Color::Red ? "red" : e.color == Color::Green ? "green" : "gray";
    o << "  n" << e.v0 << " -- n" << e.v1 << " [color=" << color;
    switch (e.arrow()) {
      case Arrow::Forward: o << ", dir=forward, label=\"→\""; break;
      case Arrow::Backward: o << ", dir=back, label=\"←\""; break;
      case Arrow::Both: o << ", dir=both, label=\"↔\""; break;
      case Arrow::Neither: o << ", dir=none, label=\"⊗\""; break;
      case Arrow::Unknown: o << ", dir=none, label=\"?\""; break;
    }
    o << "];\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace foliage
