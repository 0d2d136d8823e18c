#include "foliage/nerve.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "foliage/error.hpp"
#include "linalg.hpp"

namespace foliage {

const char* color_name(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Green: return "green";
    case Color::Unknown: return "unknown";
  }
  return "?";
}

const char* arrow_name(Arrow a) {
  switch (a) {
    case Arrow::Forward: return "forward";
    case Arrow::Backward: return "backward";
    case Arrow::Both: return "both";
    case Arrow::Neither: return "neither";
    case Arrow::Unknown: return "unknown";
  }
  return "?";
}

const char* mode_name(NerveMode m) {
  switch (m) {
    case NerveMode::Certified: return "certified";
    case NerveMode::Annotated: return "annotated";
    case NerveMode::NonDegenerate: return "nondegenerate";
  }
  return "?";
}

NerveMode parse_mode(const std::string& s) {
  if (s == "certified" || s == "certified-only") return NerveMode::Certified;
  if (s == "annotated") return NerveMode::Annotated;
  if (s == "nondegenerate" || s == "non-degenerate") return NerveMode::NonDegenerate;
  throw Error(Status::InvalidArg, "unknown mode '" + s + "'");
}

const char* tff_name(TffKind k) {
  switch (k) {
    case TffKind::Finite: return "Finite";
    case TffKind::Infinite: return "Infinite";
    case TffKind::Unknown: return "Unknown";
    case TffKind::NotApplicable: return "NotApplicable";
  }
  return "?";
}

Arrow NerveEdge::arrow() const {
  if (bij0 == Tri::Unknown || bij1 == Tri::Unknown) return Arrow::Unknown;
  bool a = bij0 == Tri::Yes, b = bij1 == Tri::Yes;
  if (a && b) return Arrow::Both;
  if (!a && !b) return Arrow::Neither;
  return b ? Arrow::Forward : Arrow::Backward;
}

std::vector<int> NerveSkeleton::valence() const {
  std::vector<int> v(comps.size(), 0);
  for (const auto& s : sites)
    for (int c : s.comps) v[c]++;
  return v;
}

std::vector<std::vector<int>> Nerve::incidence() const {
  std::vector<std::vector<int>> inc(vertices.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    inc[edges[i].v0].push_back(static_cast<int>(i));
    inc[edges[i].v1].push_back(static_cast<int>(i));
  }
  return inc;
}

std::vector<int> Nerve::red_vertices() const {
  std::vector<int> r;
  for (const auto& v : vertices)
    if (v.color == Color::Red) r.push_back(v.id);
  return r;
}

// ---------------------------------------------------------------------------
// skeleton

NerveSkeleton nerve_skeleton(const ReductionTree& tree) {
  if (tree.has_dicritical()) throw Error(Status::Dicritical, "nerve of a dicritical tree");
  NerveSkeleton sk;
  GeoTree g = expand(tree);
  for (const auto& gc : g.comps) sk.comps.push_back({gc.label(), gc.comp, gc.copy});
  for (const auto& gp : g.points) {
    const InfNearPoint& p = tree.point(gp.point);
    if (p.blown_up || !p.singular) continue;
    if (gp.comp_s < 0 && gp.comp_t < 0) continue;
    SkeletonSite s;
    s.label = gp.label();
    s.point = gp.point;
    s.copy = gp.copy;
    if (gp.comp_s >= 0) s.comps.push_back(gp.comp_s);
    if (gp.comp_t >= 0) s.comps.push_back(gp.comp_t);
    if (!p.local) throw Error(Status::Internal, "cime point " + s.label + " is not classified");
    const ReducedSingularity& r = *p.local;
    s.kind = r.kind;
    s.first_integral = r.first_integral;
    s.fi_prov = r.fi_prov;
    s.tangent_sn = r.tangent_saddle_node();
    s.weak_periodic = r.weak_periodic;
    s.weak_prov = r.weak_prov;
    if (r.kind == SingKind::SaddleNode)
      for (const auto& bd : r.branches)
        if (bd.weak) s.weak_comp = bd.axis == Axis::S ? gp.comp_s : gp.comp_t;
    sk.sites.push_back(std::move(s));
  }
  return sk;
}

// ---------------------------------------------------------------------------
// annotations

namespace {

Tri parse_tri(const nlohmann::json& j, const std::string& what) {
  if (j.is_boolean()) return j.get<bool>() ? Tri::Yes : Tri::No;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "yes") return Tri::Yes;
    if (s == "no") return Tri::No;
  }
  throw Error(Status::Annotation, what + ": expected yes or no");
}

}  // namespace

Annotations parse_annotations(const std::string& text) {
  Annotations a;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Status::Annotation, std::string("annotations: ") + e.what());
  }
  if (!j.is_object()) throw Error(Status::Annotation, "annotations: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "divisors" && it.key() != "points")
      throw Error(Status::Annotation, "annotations: unexpected key '" + it.key() + "'");
  try {
    if (j.contains("divisors")) {
      for (auto& [id, e] : j["divisors"].items()) {
        CompAnnotation c;
        for (auto& [k, v] : e.items()) {
          if (k == "holonomy") {
            std::string h = v.get<std::string>();
            if (h == "finite") c.holonomy = Holonomy::Finite;
            else if (h == "commutative-infinite") c.holonomy = Holonomy::CommutativeInfinite;
            else if (h == "non-commutative") c.holonomy = Holonomy::NonCommutative;
            else throw Error(Status::Annotation, id + ": unknown holonomy '" + h + "'");
          } else if (k == "order") {
            c.finite_order = v.get<int>();
          } else {
            throw Error(Status::Annotation, id + ": unexpected key '" + k + "'");
          }
        }
        a.comps[id] = c;
      }
    }
    if (j.contains("points")) {
      for (auto& [id, e] : j["points"].items()) {
        SiteAnnotation s;
        for (auto& [k, v] : e.items()) {
          if (k == "first_integral") s.first_integral = parse_tri(v, id);
          else if (k == "weak_holonomy_periodic") s.weak_periodic = parse_tri(v, id);
          else if (k == "transverse_symmetry_weight") {
            int w = v.get<int>();
            if (w != 0 && w != 1) throw Error(Status::Annotation, id + ": weight must be 0 or 1");
            s.weight = w;
          } else if (k == "green_edge_index") {
            int d = v.get<int>();
            if (d < 1) throw Error(Status::Annotation, id + ": green edge index must be >= 1");
            s.edge_index = d;
          } else if (k == "green_edge_correction") {
            s.edge_correction = v.get<bool>();
          } else {
            throw Error(Status::Annotation, id + ": unexpected key '" + k + "'");
          }
        }
        a.sites[id] = s;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Status::Annotation, std::string("annotations: ") + e.what());
  }
  return a;
}

// ---------------------------------------------------------------------------
// building

namespace {

int strength(Provenance p) {
  switch (p) {
    case Provenance::Certified: return 4;
    case Provenance::Annotated: return 3;
    case Provenance::Probed: return 2;
    case Provenance::Assumed: return 1;
    case Provenance::Unknown: return 0;
  }
  return 0;
}

Provenance weakest(Provenance a, Provenance b) { return strength(a) <= strength(b) ? a : b; }

std::string base_label(const std::string& l) {
  auto h = l.find('#');
  return h == std::string::npos ? l : l.substr(0, h);
}

template <class Map>
const typename Map::mapped_type* lookup(const Map& m, const std::string& label) {
  auto it = m.find(label);
  if (it != m.end()) return &it->second;
  it = m.find(base_label(label));
  return it != m.end() ? &it->second : nullptr;
}

struct ChainInfo {
  std::vector<bool> comp_on_chain;
  std::vector<bool> site_on_chain;
  long count = 0;
};

// Chains of the skeleton: walk from each valence >= 3 component through
// valence-2 components joined by corners.
ChainInfo skeleton_chains(const NerveSkeleton& sk) {
  ChainInfo ci;
  ci.comp_on_chain.assign(sk.comps.size(), false);
  ci.site_on_chain.assign(sk.sites.size(), false);
  auto val = sk.valence();
  std::vector<std::vector<int>> on(sk.comps.size());
  for (size_t i = 0; i < sk.sites.size(); ++i)
    for (int c : sk.sites[i].comps) on[c].push_back(static_cast<int>(i));
  for (size_t a = 0; a < sk.comps.size(); ++a) {
    if (val[a] < 3) continue;
    for (int s0 : on[a]) {
      if (sk.sites[s0].comps.size() != 2) continue;
      std::vector<int> sites{s0}, comps;
      int prev = s0;
      int cur = sk.sites[s0].comps[0] == static_cast<int>(a) ? sk.sites[s0].comps[1] : sk.sites[s0].comps[0];
      bool ok = false;
      while (true) {
        if (val[cur] >= 3) {
          ok = cur > static_cast<int>(a);
          break;
        }
        if (val[cur] != 2) break;
        comps.push_back(cur);
        int next = on[cur][0] == prev ? on[cur][1] : on[cur][0];
        if (sk.sites[next].comps.size() != 2) break;
        sites.push_back(next);
        cur = sk.sites[next].comps[0] == cur ? sk.sites[next].comps[1] : sk.sites[next].comps[0];
        prev = next;
      }
      if (!ok) continue;
      ci.count++;
      for (int c : comps) ci.comp_on_chain[c] = true;
      for (int s : sites) ci.site_on_chain[s] = true;
    }
  }
  return ci;
}

class Builder {
 public:
  Builder(const NerveSkeleton& sk, NerveMode mode, const Annotations* ann)
      : sk_(sk), mode_(mode), ann_(ann), val_(sk.valence()) {
    ns_ = static_cast<int>(sk.sites.size());
    nc_ = static_cast<int>(sk.comps.size());
    color_.assign(ns_ + nc_, Color::Unknown);
    cprov_.assign(ns_ + nc_, Provenance::Unknown);
    weak_.resize(ns_);
    wprov_.resize(ns_);
    for (int i = 0; i < ns_; ++i) {
      weak_[i] = sk.sites[i].weak_periodic;
      wprov_[i] = sk.sites[i].weak_prov;
    }
  }

  Nerve run() {
    // certified stage
    for (int i = 0; i < ns_; ++i) {
      const auto& s = sk_.sites[i];
      if (s.fi_prov == Provenance::Certified && s.first_integral != Tri::Unknown)
        set(site(i), s.first_integral == Tri::Yes ? Color::Green : Color::Red, Provenance::Certified,
            "first integral status");
    }
    for (int c = 0; c < nc_; ++c)
      if (val_[c] <= 1) set(comp(c), Color::Green, Provenance::Certified, "trivial holonomy");
    propagate();

    if (mode_ != NerveMode::Certified && ann_) apply_annotations();

    if (mode_ == NerveMode::NonDegenerate) {
      ChainInfo ci = skeleton_chains(sk_);
      for (int c = 0; c < nc_; ++c)
        if (val_[c] >= 3 || ci.comp_on_chain[c]) set_default(comp(c), Color::Red);
      for (int i = 0; i < ns_; ++i)
        if (ci.site_on_chain[i]) set_default(site(i), Color::Red);
      for (int i = 0; i < ns_; ++i)
        if (sk_.sites[i].tangent_sn && weak_[i] == Tri::Unknown) {
          weak_[i] = Tri::No;
          wprov_[i] = Provenance::Assumed;
        }
      propagate();
      for (int v = 0; v < ns_ + nc_; ++v) set_default(v, Color::Red);
      propagate();
    }
    return assemble();
  }

 private:
  int site(int i) const { return i; }
  int comp(int c) const { return ns_ + c; }
  bool is_sn(int i) const { return sk_.sites[i].kind == SingKind::SaddleNode; }

  std::string label(int v) const {
    return v < ns_ ? sk_.sites[v].label : sk_.comps[v - ns_].label;
  }

  // Returns true when the value changed.
  bool set(int v, Color c, Provenance p, const std::string& why) {
    if (color_[v] == c) {
      if (strength(p) > strength(cprov_[v])) cprov_[v] = p;
      return false;
    }
    if (color_[v] == Color::Unknown) {
      color_[v] = c;
      cprov_[v] = p;
      return true;
    }
    Provenance old = cprov_[v];
    std::string msg = label(v) + ": " + why + " says " + color_name(c) + " but it is " +
                      color_name(color_[v]) + " (" + provenance_name(old) + ")";
    if (p == Provenance::Assumed) return false;
    if (p == Provenance::Certified && old == Provenance::Certified) throw Error(Status::Internal, msg);
    throw Error(Status::Annotation, msg);
  }

  void set_default(int v, Color c) {
    if (color_[v] == Color::Unknown) {
      color_[v] = c;
      cprov_[v] = Provenance::Assumed;
    }
  }

  void propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < ns_; ++i) {
        const auto& s = sk_.sites[i];
        for (int c : s.comps) {
          int D = comp(c);
          if (!is_sn(i)) {
            // the holonomy of D around a saddle is periodic iff the saddle has a first integral
            if (color_[i] == Color::Green && val_[c] <= 2)
              changed |= set(D, Color::Green, cprov_[i], "cyclic holonomy generated at " + s.label);
            if (color_[i] == Color::Red)
              changed |= set(D, Color::Red, cprov_[i], "non-periodic holonomy at " + s.label);
            if (color_[D] == Color::Green)
              changed |= set(i, Color::Green, cprov_[D], "periodic holonomy of " + label(D));
          } else if (c != s.weak_comp) {
            changed |= set(D, Color::Red, Provenance::Certified, "strong variety holonomy at " + s.label);
          } else if (weak_[i] == Tri::No) {
            changed |= set(D, Color::Red, wprov_[i], "weak holonomy at " + s.label);
          }
        }
      }
    }
  }

  void apply_annotations() {
    std::set<std::string> known;
    for (const auto& s : sk_.sites) {
      known.insert(s.label);
      known.insert(base_label(s.label));
    }
    for (const auto& c : sk_.comps) {
      known.insert(c.label);
      known.insert(base_label(c.label));
    }
    for (const auto& [k, _] : ann_->sites)
      if (!known.count(k)) throw Error(Status::Annotation, "unknown point '" + k + "'");
    for (const auto& [k, _] : ann_->comps)
      if (!known.count(k)) throw Error(Status::Annotation, "unknown divisor '" + k + "'");
    for (int i = 0; i < ns_; ++i) {
      const SiteAnnotation* a = lookup(ann_->sites, sk_.sites[i].label);
      if (!a) continue;
      if (a->first_integral)
        set(i, *a->first_integral == Tri::Yes ? Color::Green : Color::Red, Provenance::Annotated,
            "annotated first integral");
      if (a->weak_periodic) {
        if (!sk_.sites[i].tangent_sn)
          throw Error(Status::Annotation, sk_.sites[i].label + ": weak holonomy on a point that is not a tangent saddle-node");
        if (wprov_[i] == Provenance::Certified && weak_[i] != *a->weak_periodic)
          throw Error(Status::Annotation, sk_.sites[i].label + ": weak holonomy contradicts a certified value");
        weak_[i] = *a->weak_periodic;
        wprov_[i] = Provenance::Annotated;
      }
    }
    for (int c = 0; c < nc_; ++c) {
      const CompAnnotation* a = lookup(ann_->comps, sk_.comps[c].label);
      if (!a || !a->holonomy) continue;
      bool finite = *a->holonomy == Holonomy::Finite;
      set(comp(c), finite ? Color::Green : Color::Red, Provenance::Annotated, "annotated holonomy");
      if (*a->holonomy == Holonomy::NonCommutative && val_[c] <= 2)
        throw Error(Status::Annotation, sk_.comps[c].label + ": holonomy of a component with at most two singular points is cyclic");
    }
    propagate();
  }

  std::pair<Tri, Provenance> green_type1_side(int i, int c) const {
    // index of the holonomy of the crown in the holonomy of the component
    if (val_[c] <= 2) return {Tri::Yes, Provenance::Certified};
    if (mode_ != NerveMode::Certified && ann_) {
      const SiteAnnotation* a = lookup(ann_->sites, sk_.sites[i].label);
      if (a && a->edge_index) return {*a->edge_index == 1 ? Tri::Yes : Tri::No, Provenance::Annotated};
    }
    if (mode_ == NerveMode::NonDegenerate) return {Tri::Yes, Provenance::Assumed};
    return {Tri::Unknown, Provenance::Unknown};
  }

  Nerve assemble() {
    Nerve n;
    n.mode = mode_;
    for (int v = 0; v < ns_ + nc_; ++v) {
      NerveVertex x;
      x.id = v;
      x.type = v < ns_ ? 0 : 1;
      x.ref = v < ns_ ? v : v - ns_;
      x.label = label(v);
      x.color = color_[v];
      x.color_prov = cprov_[v];
      if (v < ns_) {
        x.saddle_node = is_sn(v);
        x.tangent_sn = sk_.sites[v].tangent_sn;
      } else {
        x.valence = val_[v - ns_];
      }
      if (x.color == Color::Red) fill_weight(x);
      n.vertices.push_back(x);
    }
    for (int i = 0; i < ns_; ++i)
      for (int c : sk_.sites[i].comps) n.edges.push_back(make_edge(n, i, c));
    return n;
  }

  void fill_weight(NerveVertex& x) const {
    if (x.type == 0) {
      const auto& s = sk_.sites[x.ref];
      if (!s.tangent_sn) {
        x.weight = 1;
        x.weight_prov = x.color_prov;
        return;
      }
      if (mode_ != NerveMode::Certified && ann_) {
        const SiteAnnotation* a = lookup(ann_->sites, s.label);
        if (a && a->weight) {
          x.weight = *a->weight;
          x.weight_prov = Provenance::Annotated;
          return;
        }
      }
      if (mode_ == NerveMode::NonDegenerate) {
        x.weight = 0;
        x.weight_prov = Provenance::Assumed;
      }
      return;
    }
    if (x.valence <= 2) {
      x.weight = 1;
      x.weight_prov = x.color_prov;
      return;
    }
    if (mode_ != NerveMode::Certified && ann_) {
      const CompAnnotation* a = lookup(ann_->comps, x.label);
      if (a && a->holonomy) {
        x.weight = *a->holonomy == Holonomy::CommutativeInfinite ? 1 : 0;
        x.weight_prov = Provenance::Annotated;
        return;
      }
    }
    if (mode_ == NerveMode::NonDegenerate) {
      x.weight = 0;
      x.weight_prov = Provenance::Assumed;
    }
  }

  NerveEdge make_edge(const Nerve& n, int i, int c) const {
    NerveEdge e;
    e.v0 = i;
    e.v1 = comp(c);
    const NerveVertex& s = n.vertices[e.v0];
    const NerveVertex& D = n.vertices[e.v1];
    if (s.color == Color::Green || D.color == Color::Green) {
      e.color = Color::Green;
      e.color_prov = Provenance::Unknown;
      if (s.color == Color::Green) e.color_prov = s.color_prov;
      if (D.color == Color::Green && strength(D.color_prov) > strength(e.color_prov)) e.color_prov = D.color_prov;
    } else if (s.color == Color::Red && D.color == Color::Red) {
      Provenance p = weakest(s.color_prov, D.color_prov);
      if (sk_.sites[i].tangent_sn && sk_.sites[i].weak_comp == c) {
        if (weak_[i] == Tri::Yes) e.color = Color::Green, p = wprov_[i];
        else if (weak_[i] == Tri::No) e.color = Color::Red, p = weakest(p, wprov_[i]);
        else p = Provenance::Unknown;
      } else {
        e.color = Color::Red;
      }
      e.color_prov = p;
    }
    if (e.color == Color::Red) {
      e.bij0 = s.weight < 0 ? Tri::Unknown : (s.weight == 1 ? Tri::Yes : Tri::No);
      e.bij1 = D.weight < 0 ? Tri::Unknown : (D.weight == 1 ? Tri::Yes : Tri::No);
      e.bij_prov = weakest(s.weight_prov, D.weight_prov);
    } else if (e.color == Color::Green) {
      if (s.color == Color::Green) {
        e.bij0 = Tri::Yes;
        e.bij_prov = s.color_prov;
        if (D.color == Color::Green) {
          auto [t, p] = green_type1_side(i, c);
          e.bij1 = t;
          e.bij_prov = weakest(e.bij_prov, p);
        } else if (D.color == Color::Red) {
          e.bij1 = Tri::No;
          e.bij_prov = weakest(e.bij_prov, D.color_prov);
        }
      } else if (s.color == Color::Red) {
        if (D.color == Color::Green) {
          auto [t, p] = green_type1_side(i, c);
          e.bij0 = Tri::No;
          e.bij1 = t;
          e.bij_prov = weakest(s.color_prov, p);
        } else if (D.color == Color::Red) {
          e.bij0 = e.bij1 = Tri::Yes;
          e.bij_prov = e.color_prov;
        }
      }
    }
    if (e.bij0 == Tri::Unknown || e.bij1 == Tri::Unknown) e.bij_prov = Provenance::Unknown;
    return e;
  }

  const NerveSkeleton& sk_;
  NerveMode mode_;
  const Annotations* ann_;
  std::vector<int> val_;
  int ns_ = 0, nc_ = 0;
  std::vector<Color> color_;
  std::vector<Provenance> cprov_;
  std::vector<Tri> weak_;
  std::vector<Provenance> wprov_;
};

}  // namespace

Nerve build_nerve(const NerveSkeleton& sk, NerveMode mode, const Annotations* ann) {
  return Builder(sk, mode, ann).run();
}

Nerve build_nerve(const ReductionTree& tree, NerveMode mode, const Annotations* ann) {
  Nerve n = build_nerve(nerve_skeleton(tree), mode, ann);
  if (n.trivial()) n.notes.push_back("height-0 tree: trivial nerve");
  return n;
}

// ---------------------------------------------------------------------------
// red part

namespace {

bool red_edge(const Nerve& n, const NerveEdge& e) {
  return e.color == Color::Red && n.vertices[e.v0].color == Color::Red &&
         n.vertices[e.v1].color == Color::Red;
}

// Components of the subgraph on `keep` using the edges accepted by `use`.
std::vector<std::vector<int>> components(const Nerve& n, const std::vector<bool>& keep,
                                         const std::function<bool(const NerveEdge&)>& use) {
  std::vector<int> parent(n.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : n.edges)
    if (keep[e.v0] && keep[e.v1] && use(e)) parent[find(e.v0)] = find(e.v1);
  std::map<int, std::vector<int>> groups;
  for (size_t v = 0; v < n.vertices.size(); ++v)
    if (keep[v]) groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> out;
  for (auto& [_, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> mask(size_t n, const std::vector<int>& vs) {
  std::vector<bool> m(n, false);
  for (int v : vs) m[v] = true;
  return m;
}

}  // namespace

std::vector<std::vector<int>> red_components(const Nerve& n) {
  auto keep = mask(n.vertices.size(), n.red_vertices());
  return components(n, keep, [&](const NerveEdge& e) { return red_edge(n, e); });
}

bool red_connected(const Nerve& n) { return red_components(n).size() <= 1; }

Tri is_repulsive(const Nerve& n, const std::vector<int>& part) {
  if (part.empty()) return Tri::Unknown;
  auto inc = n.incidence();
  std::vector<int> dist(n.vertices.size(), -1);
  std::deque<int> queue;
  for (int v : part) {
    dist[v] = 0;
    queue.push_back(v);
  }
  Tri result = Tri::Yes;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int ei : inc[v]) {
      const NerveEdge& e = n.edges[ei];
      int u = e.other(v);
      if (dist[u] >= 0) continue;
      dist[u] = dist[v] + 1;
      queue.push_back(u);
      Tri b = e.bijective_at(u);
      if (b == Tri::No) return Tri::No;
      if (b == Tri::Unknown) result = Tri::Unknown;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// pruning

namespace {

// Alive-degree bookkeeping over a vertex subset and an edge filter.
struct Graph {
  const Nerve& n;
  std::vector<std::vector<int>> inc;
  std::vector<bool> alive;
  std::function<bool(const NerveEdge&)> use;
  std::vector<bool> anchor;  // never elided

  Graph(const Nerve& nv, std::vector<bool> keep, std::function<bool(const NerveEdge&)> u)
      : n(nv), inc(nv.incidence()), alive(std::move(keep)), use(std::move(u)), anchor(nv.vertices.size(), false) {}

  std::vector<int> edges_at(int v) const {
    std::vector<int> out;
    for (int ei : inc[v]) {
      const NerveEdge& e = n.edges[ei];
      if (alive[e.other(v)] && use(e)) out.push_back(ei);
    }
    return out;
  }
  int degree(int v) const { return static_cast<int>(edges_at(v).size()); }
};

// Both edges of a green valence-2 vertex point away from it.
bool repelling_vertex(const Graph& g, int v) {
  for (int ei : g.edges_at(v)) {
    const NerveEdge& e = g.n.edges[ei];
    if (e.bijective_at(v) != Tri::No || e.bijective_at(e.other(v)) != Tri::Yes) return false;
  }
  return true;
}

// Attach vertex and removed vertices of a green sécable branch ending at `leaf`.
std::optional<PruneStep> green_branch(const Graph& g, int leaf) {
  const Nerve& n = g.n;
  if (n.vertices[leaf].color != Color::Green) return std::nullopt;
  auto es = g.edges_at(leaf);
  if (es.size() != 1) return std::nullopt;
  std::vector<int> path{leaf};
  std::vector<int> edges;  // edges[i] joins path[i] and path[i + 1]
  std::vector<size_t> attach_at;  // candidate attach positions in path
  int prev_edge = es[0];
  int cur = n.edges[es[0]].other(leaf);
  while (true) {
    path.push_back(cur);
    edges.push_back(prev_edge);
    const NerveVertex& x = n.vertices[cur];
    int deg = g.degree(cur);
    if (x.color != Color::Green || deg != 2) {
      attach_at.push_back(path.size() - 1);
      break;
    }
    if (repelling_vertex(g, cur)) attach_at.push_back(path.size() - 1);
    auto ce = g.edges_at(cur);
    int next_edge = ce[0] == prev_edge ? ce[1] : ce[0];
    prev_edge = next_edge;
    cur = n.edges[next_edge].other(cur);
  }
  // farthest attach position whose branch is repulsive towards the free end
  for (auto it = attach_at.rbegin(); it != attach_at.rend(); ++it) {
    size_t a = *it;
    bool ok = true;
    for (size_t i = 0; i < a && ok; ++i) {
      // edge between path[i] (free side) and path[i + 1] (attach side)
      if (n.edges[edges[i]].bijective_at(path[i]) != Tri::Yes) ok = false;
    }
    if (!ok) continue;
    PruneStep st;
    st.green = true;
    st.attach = path[a];
    st.removed.assign(path.begin(), path.begin() + static_cast<long>(a));
    return st;
  }
  return std::nullopt;
}

std::optional<PruneStep> red_branch(const Graph& g, int leaf) {
  const Nerve& n = g.n;
  if (n.vertices[leaf].weight != 1 || g.anchor[leaf]) return std::nullopt;
  auto es = g.edges_at(leaf);
  if (es.size() != 1) return std::nullopt;
  std::vector<int> path{leaf};
  int prev_edge = es[0];
  int cur = n.edges[es[0]].other(leaf);
  while (true) {
    path.push_back(cur);
    int deg = g.degree(cur);
    if (deg != 2 || n.vertices[cur].weight != 1 || g.anchor[cur]) break;
    auto ce = g.edges_at(cur);
    int next_edge = ce[0] == prev_edge ? ce[1] : ce[0];
    prev_edge = next_edge;
    cur = n.edges[next_edge].other(cur);
  }
  PruneStep st;
  st.green = false;
  st.attach = path.back();
  st.removed.assign(path.begin(), path.end() - 1);
  return st;
}

void prune_phase(Graph& g, bool green, std::mt19937* rng, std::vector<PruneStep>& log) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> leaves;
    for (size_t v = 0; v < g.alive.size(); ++v)
      if (g.alive[v] && g.degree(static_cast<int>(v)) == 1) leaves.push_back(static_cast<int>(v));
    if (rng) std::shuffle(leaves.begin(), leaves.end(), *rng);
    for (int leaf : leaves) {
      if (!g.alive[leaf] || g.degree(leaf) != 1) continue;
      auto st = green ? green_branch(g, leaf) : red_branch(g, leaf);
      if (!st || st->removed.empty()) continue;
      for (int v : st->removed) g.alive[v] = false;
      log.push_back(*st);
      changed = true;
    }
  }
}

}  // namespace

PruneResult prune(const Nerve& n, unsigned shuffle_seed) {
  PruneResult res;
  std::mt19937 rng(shuffle_seed);
  std::mt19937* r = shuffle_seed ? &rng : nullptr;
  Graph g(n, std::vector<bool>(n.vertices.size(), true), [](const NerveEdge&) { return true; });
  prune_phase(g, true, r, res.log);
  std::vector<bool> red(n.vertices.size(), false);
  for (size_t v = 0; v < n.vertices.size(); ++v)
    red[v] = g.alive[v] && n.vertices[v].color == Color::Red;
  Graph rg(n, red, [&](const NerveEdge& e) { return red_edge(n, e); });
  // a component without weight-0 vertices collapses to a point: its smallest vertex
  for (const auto& comp : components(n, red, rg.use)) {
    bool all_one = std::all_of(comp.begin(), comp.end(), [&](int v) { return n.vertices[v].weight == 1; });
    if (all_one) rg.anchor[*std::min_element(comp.begin(), comp.end())] = true;
  }
  prune_phase(rg, false, r, res.log);
  for (size_t v = 0; v < n.vertices.size(); ++v)
    if (g.alive[v] && (n.vertices[v].color != Color::Red || rg.alive[v]))
      res.kept.push_back(static_cast<int>(v));
  return res;
}

// ---------------------------------------------------------------------------
// sigma-hat: three computations

long active_part_census(const Nerve& n, const std::vector<int>& vertices) {
  std::vector<bool> in(n.vertices.size(), false);
  for (int v : vertices)
    if (n.vertices[v].color == Color::Red) in[v] = true;
  std::vector<bool> w1(n.vertices.size(), false);
  for (size_t v = 0; v < in.size(); ++v) w1[v] = in[v] && n.vertices[v].weight == 1;
  auto parts = components(n, w1, [&](const NerveEdge& e) { return red_edge(n, e); });
  std::vector<int> part_of(n.vertices.size(), -1);
  for (size_t i = 0; i < parts.size(); ++i)
    for (int v : parts[i]) part_of[v] = static_cast<int>(i);
  std::vector<long> attach(parts.size(), 0);
  long zero_zero = 0;
  for (const auto& e : n.edges) {
    if (!in[e.v0] || !in[e.v1] || !red_edge(n, e)) continue;
    int a = n.vertices[e.v0].weight, b = n.vertices[e.v1].weight;
    if (a == 0 && b == 0) zero_zero++;
    else if (a == 1 && b == 0) attach[part_of[e.v0]]++;
    else if (a == 0 && b == 1) attach[part_of[e.v1]]++;
  }
  long s = zero_zero;
  for (long v : attach) s += std::max(v - 1, 0L);
  return s;
}

long cohomology_bruteforce_red(const Nerve& n, const std::vector<int>& vertices) {
  std::vector<bool> in(n.vertices.size(), false);
  for (int v : vertices)
    if (n.vertices[v].color == Color::Red) in[v] = true;
  // columns: weight-1 vertices (E_s = C); rows: red edges (E_ss' = C)
  std::map<int, int> col;
  for (size_t v = 0; v < in.size(); ++v)
    if (in[v] && n.vertices[v].weight == 1) col.emplace(static_cast<int>(v), static_cast<int>(col.size()));
  detail::Echelon ech(Field::rationals());
  long rows = 0;
  FieldPtr q = Field::rationals();
  // rank of the transpose: one row per vertex, entries on its edges
  std::vector<int> edge_ids;
  for (size_t i = 0; i < n.edges.size(); ++i) {
    const NerveEdge& e = n.edges[i];
    if (in[e.v0] && in[e.v1] && red_edge(n, e)) edge_ids.push_back(static_cast<int>(i));
  }
  rows = static_cast<long>(edge_ids.size());
  for (const auto& [v, c] : col) {
    detail::SparseRow r;
    for (size_t k = 0; k < edge_ids.size(); ++k) {
      const NerveEdge& e = n.edges[edge_ids[k]];
      // coboundary (lambda_s - lambda_s') on the edge oriented from v0 to v1
      if (e.v0 == v) r[static_cast<int>(k)] = FieldElem(q, Rational(1));
      if (e.v1 == v) r[static_cast<int>(k)] = FieldElem(q, Rational(-1));
    }
    (void)c;
    ech.add(std::move(r));
  }
  return rows - static_cast<long>(ech.rank());
}

long bouquet_rank(const Nerve& n, const std::vector<int>& vertices) {
  std::vector<bool> in(n.vertices.size(), false);
  for (int v : vertices)
    if (n.vertices[v].color == Color::Red) in[v] = true;
  // contract the weight-0 vertices to one point
  const int hub = static_cast<int>(n.vertices.size());
  std::vector<int> parent(n.vertices.size() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto node = [&](int v) { return n.vertices[v].weight == 0 ? hub : v; };
  long V = 0, E = 0;
  bool has_hub = false;
  for (size_t v = 0; v < in.size(); ++v) {
    if (!in[v]) continue;
    if (n.vertices[v].weight == 0) has_hub = true;
    else V++;
  }
  if (has_hub) V++;
  for (const auto& e : n.edges) {
    if (!in[e.v0] || !in[e.v1] || !red_edge(n, e)) continue;
    E++;
    parent[find(node(e.v0))] = find(node(e.v1));
  }
  std::set<int> roots;
  for (size_t v = 0; v < in.size(); ++v)
    if (in[v]) roots.insert(find(node(static_cast<int>(v))));
  return E - V + static_cast<long>(roots.size());
}

// ---------------------------------------------------------------------------
// witnesses and the criterion

std::optional<Witness> find_witness(const Nerve& n) {
  auto inc = n.incidence();
  auto color = [&](int v) { return n.vertices[v].color; };
  // type 4: red and green joined by an edge bijective on neither side
  for (const auto& e : n.edges) {
    if (e.arrow() != Arrow::Neither) continue;
    if (color(e.v0) == Color::Red && color(e.v1) == Color::Green) return Witness{4, {e.v0, e.v1}};
    if (color(e.v1) == Color::Red && color(e.v0) == Color::Green) return Witness{4, {e.v1, e.v0}};
  }
  // type 2: two red vertices joined through green vertices only
  for (int r : n.red_vertices()) {
    std::vector<int> path{r};
    std::optional<Witness> found;
    std::function<void(int, int)> dfs = [&](int v, int from) {
      for (int ei : inc[v]) {
        if (found) return;
        int u = n.edges[ei].other(v);
        if (u == from) continue;
        if (color(u) == Color::Red && path.size() >= 2) {
          path.push_back(u);
          found = Witness{2, path};
          path.pop_back();
        } else if (color(u) == Color::Green) {
          path.push_back(u);
          dfs(u, v);
          path.pop_back();
        }
      }
    };
    dfs(r, -1);
    if (found) return found;
  }
  // type 3: a green edge between two red vertices
  for (const auto& e : n.edges)
    if (e.color == Color::Green && color(e.v0) == Color::Red && color(e.v1) == Color::Red)
      return Witness{3, {std::min(e.v0, e.v1), std::max(e.v0, e.v1)}};
  // type 1: red, then green vertices, ending with an edge pointing back
  for (int r : n.red_vertices()) {
    std::vector<int> path{r};
    std::optional<Witness> found;
    std::function<void(int, int)> dfs = [&](int v, int from) {
      for (int ei : inc[v]) {
        if (found) return;
        const NerveEdge& e = n.edges[ei];
        int u = e.other(v);
        if (u == from || color(u) != Color::Green) continue;
        if (path.size() >= 2 && e.bijective_at(v) == Tri::Yes && e.bijective_at(u) == Tri::No) {
          path.push_back(u);
          found = Witness{1, path};
          path.pop_back();
          return;
        }
        path.push_back(u);
        dfs(u, v);
        path.pop_back();
      }
    };
    dfs(r, -1);
    if (found) return found;
  }
  return std::nullopt;
}

TffVerdict is_tff(const Nerve& n) {
  TffVerdict t;
  if (n.trivial()) {
    t.kind = TffKind::NotApplicable;
    t.reason = "trivial nerve: the input is already reduced";
    return t;
  }
  for (const auto& v : n.vertices)
    if (v.color == Color::Unknown) t.missing.push_back(v.label + ".color");
  auto red = n.red_vertices();
  if (red.empty()) {
    t.kind = t.missing.empty() ? TffKind::NotApplicable : TffKind::Unknown;
    t.reason = t.missing.empty() ? "empty red part" : "colors unknown";
    return t;
  }
  if (auto w = find_witness(n)) {
    t.kind = TffKind::Infinite;
    t.witness = w;
    t.missing.clear();
    t.reason = "infinite-dimensional cohomology witness of type " + std::to_string(w->type);
    return t;
  }
  auto comps = red_components(n);
  std::vector<bool> in_red(n.vertices.size(), false);
  for (int v : red) in_red[v] = true;
  for (const auto& e : n.edges) {
    std::string name = n.vertices[e.v0].label + "-" + n.vertices[e.v1].label;
    if (e.color == Color::Unknown) t.missing.push_back(name + ".color");
    else if (!red_edge(n, e) && e.arrow() == Arrow::Unknown) t.missing.push_back(name + ".arrow");
  }
  for (int v : red)
    if (n.vertices[v].weight < 0) t.missing.push_back(n.vertices[v].label + ".weight");
  if (!t.missing.empty()) {
    t.kind = TffKind::Unknown;
    t.reason = "undetermined attributes";
    return t;
  }
  bool connected = comps.size() == 1;
  Tri rep = connected ? is_repulsive(n, comps[0]) : Tri::No;
  if (connected && rep == Tri::Yes) {
    PruneResult pr = prune(n);
    t.kind = TffKind::Finite;
    t.sigma_hat = active_part_census(n, pr.kept);
    t.tau_hat = t.sigma_hat;
    t.reason = "red part connected and repulsive";
    return t;
  }
  t.kind = TffKind::Infinite;
  t.reason = connected ? "red part not repulsive" : "red part disconnected";
  t.reason += "; no witness pattern found, the nerve violates the edge configuration lists";
  return t;
}

// ---------------------------------------------------------------------------
// chains and non-degeneracy

long chain_count(const DualTree& dt) {
  auto adj = dt.adjacency();
  size_t n = dt.vertices.size();
  std::vector<int> val(n);
  for (size_t i = 0; i < n; ++i) val[i] = static_cast<int>(adj[i].size()) + dt.vertices[i].arrows;
  long count = 0;
  for (size_t a = 0; a < n; ++a) {
    if (val[a] < 3) continue;
    for (int b : adj[a]) {
      int prev = static_cast<int>(a), cur = b;
      while (val[cur] == 2 && adj[cur].size() == 2) {
        int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
      }
      if (val[cur] >= 3 && cur > static_cast<int>(a)) count++;
    }
  }
  return count;
}

long chain_count(const NerveSkeleton& sk) { return skeleton_chains(sk).count; }

NonDegeneracy nondegenerate_check(const NerveSkeleton& sk, const Nerve& n, bool second_kind) {
  NonDegeneracy r;
  bool unknown = false, no = false, assumed = false;
  if (!second_kind) {
    no = true;
    r.reasons.push_back("not of second kind");
  }
  int ns = static_cast<int>(sk.sites.size());
  auto val = sk.valence();
  for (size_t c = 0; c < sk.comps.size(); ++c) {
    if (val[c] < 3) continue;
    const NerveVertex& v = n.vertices[ns + c];
    if (v.color == Color::Green || v.weight == 1) {
      no = true;
      r.reasons.push_back(v.label + ": holonomy is not non-commutative");
    } else if (v.color == Color::Unknown || v.weight < 0) {
      unknown = true;
      r.reasons.push_back(v.label + ": holonomy commutativity unknown");
    } else if (v.weight_prov == Provenance::Assumed) {
      assumed = true;
    }
  }
  ChainInfo ci = skeleton_chains(sk);
  auto check = [&](const NerveVertex& v) {
    if (v.color == Color::Green) {
      no = true;
      r.reasons.push_back(v.label + ": first integrals along a chain");
    } else if (v.color == Color::Unknown) {
      unknown = true;
      r.reasons.push_back(v.label + ": first integral status on a chain unknown");
    } else if (v.color_prov == Provenance::Assumed) {
      assumed = true;
    }
  };
  for (size_t c = 0; c < sk.comps.size(); ++c)
    if (ci.comp_on_chain[c]) check(n.vertices[ns + c]);
  for (int i = 0; i < ns; ++i)
    if (ci.site_on_chain[i]) check(n.vertices[i]);
  r.value = no ? Tri::No : (unknown ? Tri::Unknown : Tri::Yes);
  if (r.value == Tri::Yes && assumed) r.reasons.push_back("holds under the non-degenerate mode assumptions");
  return r;
}

NonDegeneracy nondegenerate_check(const ReductionTree& tree, const Nerve& n) {
  NerveSkeleton sk = nerve_skeleton(tree);
  bool second_kind = true;
  for (const auto& s : sk.sites)
    if (s.tangent_sn) second_kind = false;
  return nondegenerate_check(sk, n, second_kind);
}

}  // namespace foliage
