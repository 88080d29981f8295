#include "ubk/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ubk {

namespace {

constexpr std::size_t kDenseLimit = 16;

Error bad(const std::string& what) { return Error(ErrorKind::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Label> labels_from_json(const Json& j) {
  if (!j.is_array()) throw bad("labels must be an array");
  std::vector<Label> out;
  for (const auto& l : j) {
    if (!l.is_string()) throw bad("labels must be strings");
    out.push_back(l.get<std::string>());
  }
  return out;
}

Json sparse_by_label(const SparseVector& g, const std::vector<Label>& labels) {
  Json o = Json::object();
  for (const auto& [c, v] : g) o[labels[c]] = to_json(v);
  return o;
}

SparseVector sparse_from_labels(const Json& j, const std::unordered_map<Label, std::size_t>& index) {
  SparseVector out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto f = index.find(it.key());
    if (f == index.end()) throw bad("generator uses unknown label '" + it.key() + "'");
    Rational v = rational_from_json(it.value());
    if (v != 0) out.emplace_back(f->second, v);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::unordered_map<Label, std::size_t> index_of_labels(const std::vector<Label>& labels) {
  std::unordered_map<Label, std::size_t> m;
  for (std::size_t i = 0; i < labels.size(); ++i) m.emplace(labels[i], i);
  return m;
}

SparseVector sign_normalized(const SparseVector& v) {
  if (v.empty() || v.front().second > 0) return v;
  SparseVector out = v;
  for (auto& [c, x] : out) x = -x;
  return out;
}

bool sparse_less(const SparseVector& a, const SparseVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
}

struct SparseLess {
  bool operator()(const SparseVector& a, const SparseVector& b) const { return sparse_less(a, b); }
};

Json pairs_json(const LabelPairs& p) {
  Json o = Json::object();
  for (const auto& [a, b] : p) o[a] = b;
  return o;
}

LabelPairs pairs_from_json(const Json& j, const std::vector<Label>& order) {
  if (!j.is_object()) throw bad("label map must be an object");
  LabelPairs out;
  std::set<std::string> used;
  for (const auto& l : order)
    if (j.contains(l)) {
      out.emplace_back(l, j.at(l).get<std::string>());
      used.insert(l);
    }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!used.count(it.key())) out.emplace_back(it.key(), it.value().get<std::string>());
  return out;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw bad("rationals are written as \"p/q\" strings");
}

Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

RationalVector vector_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw bad("vector of length " + std::to_string(dim) + " expected");
  RationalVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json to_json(const Polytope& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators()) gens.push_back(to_json(g));
  return Json{{"dim", p.dim()}, {"generators", gens}};
}

Polytope polytope_from_json(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_unsigned()) throw bad("dim must be a non-negative integer");
  std::size_t dim = d.get<std::size_t>();
  std::vector<RationalVector> gens;
  for (const auto& g : field(j, "generators")) gens.push_back(vector_from_json(g, dim));
  return Polytope(dim, gens);
}

Json to_json(const BasedSpace& s) {
  Json ball = Json::array();
  if (s.dim() <= kDenseLimit) {
    for (const auto& g : s.ball.generators()) ball.push_back(to_json(g));
  } else {
    for (const auto& g : s.ball.sparse_generators()) ball.push_back(sparse_by_label(g, s.labels));
  }
  return Json{{"labels", s.labels}, {"k_bound", to_json(s.k_bound)}, {"ball", ball}};
}

BasedSpace space_from_json(const Json& j) {
  auto labels = labels_from_json(field(j, "labels"));
  Rational k = j.contains("k_bound") ? rational_from_json(j.at("k_bound")) : Rational(1);
  const Json& ball = field(j, "ball");
  if (!ball.is_array()) throw bad("ball must be an array of generators");
  std::size_t n = labels.size();
  auto index = index_of_labels(labels);
  std::vector<SparseVector> gens;
  for (const auto& g : ball) {
    if (g.is_array()) gens.push_back(to_sparse(vector_from_json(g, n)));
    else if (g.is_object()) gens.push_back(sparse_from_labels(g, index));
    else throw bad("generator must be an array or an object");
  }
  return make_space(std::move(labels), Polytope::from_sparse(n, gens), k);
}

Json label_map_json(const BasedMorphism& m) { return pairs_json(m.label_map()); }

BasedMorphism morphism_from_label_map(const BasedSpace& domain, const BasedSpace& codomain, const Json& map) {
  if (!map.is_object()) throw bad("label_map must be an object");
  if (map.size() != domain.dim()) throw bad("label_map must cover every domain label");
  return make_morphism(domain, codomain, pairs_from_json(map, domain.labels));
}

Json to_json(const BasedMorphism& m) {
  return Json{{"domain", to_json(m.domain)}, {"codomain", to_json(m.codomain)}, {"label_map", label_map_json(m)}};
}

BasedMorphism morphism_from_json(const Json& j) {
  return morphism_from_label_map(space_from_json(field(j, "domain")), space_from_json(field(j, "codomain")),
                                 field(j, "label_map"));
}

Json to_json(const DistortionInterval& d) { return Json{{"lower", to_json(d.lower)}, {"upper", to_json(d.upper)}}; }

Json to_json(const SubsetWitness& w) {
  return Json{{"norm", to_json(w.norm)}, {"subset", w.subset}, {"generator", to_json(w.generator)}};
}

Json to_json(const ValidationReport& r) {
  Json un = Json::array();
  for (const auto& [l, v] : r.unnormalized) un.push_back(Json{{"label", l}, {"norm", to_json(v)}});
  Json j{{"valid", r.valid},
         {"full_dimensional", r.full_dimensional},
         {"unnormalized", un},
         {"suppression", to_json(r.suppression)}};
  j["suppression_violation"] = r.suppression_violation ? to_json(*r.suppression_violation) : Json(nullptr);
  return j;
}

Json to_json(const AmalgamReport& r) {
  return Json{{"i_prime_isometry", r.i_prime_isometry}, {"j_prime_isometry", r.j_prime_isometry},
              {"commutes", r.commutes},                 {"suppression", to_json(r.suppression)},
              {"suppression_bound", to_json(r.suppression_bound)}, {"verified", r.verified}};
}

Json to_json(const ExtensionReport& r) {
  return Json{{"section_equal", r.section_equal}, {"basis_norms_one", r.basis_norms_one},
              {"suppression", to_json(r.suppression)}, {"upper_ratio", to_json(r.upper_ratio)},
              {"lower_ratio", to_json(r.lower_ratio)}, {"variant", r.variant}};
}

Json to_json(const SandwichParams& p) {
  return Json{{"delta", to_json(p.delta)}, {"delta_prime", to_json(p.delta_prime)}, {"epsilon", to_json(p.epsilon)}};
}

Json to_json(const Chain& c) {
  Json stages = Json::array(), inclusions = Json::array(), log = Json::array();
  std::set<SparseVector, SparseLess> prev;
  for (std::size_t n = 0; n < c.stages.size(); ++n) {
    const BasedSpace& s = c.stages[n];
    std::size_t old_dim = n == 0 ? 0 : c.stages[n - 1].dim();
    std::set<SparseVector, SparseLess> cur;
    for (const auto& g : s.ball.sparse_generators()) cur.insert(sign_normalized(g));
    Json added = Json::array();
    for (const auto& g : cur)
      if (!prev.count(g)) added.push_back(sparse_by_label(g, s.labels));
    Json fresh(std::vector<Label>(s.labels.begin() + old_dim, s.labels.end()));
    stages.push_back(Json{{"new_labels", fresh}, {"added_generators", added}});
    if (n > 0) inclusions.push_back(Json{{"from", n - 1}, {"to", n}});
    prev = std::move(cur);
  }
  for (const auto& r : c.log) {
    log.push_back(Json{{"kind", r.kind},
                       {"source_stage", r.source_stage ? Json(*r.source_stage) : Json(nullptr)},
                       {"target", to_json(r.target)},
                       {"f", pairs_json(r.f)},
                       {"shared", pairs_json(r.shared)},
                       {"g", pairs_json(r.g)}});
  }
  return Json{{"k_bound", to_json(c.k_bound)}, {"stages", stages}, {"inclusions", inclusions}, {"log", log}};
}

Chain chain_from_json(const Json& j) {
  Chain c;
  c.k_bound = rational_from_json(field(j, "k_bound"));
  const Json& stages = field(j, "stages");
  if (!stages.is_array() || stages.empty()) throw bad("a chain needs at least one stage");
  std::vector<Label> labels;
  Polytope ball;
  for (const auto& st : stages) {
    for (const auto& l : labels_from_json(field(st, "new_labels"))) labels.push_back(l);
    std::size_t n = labels.size();
    auto index = index_of_labels(labels);
    std::vector<SparseVector> added;
    for (const auto& g : field(st, "added_generators")) {
      if (!g.is_object()) throw bad("chain generators are written by label");
      added.push_back(sparse_from_labels(g, index));
    }
    std::vector<std::size_t> iota(ball.dim());
    std::iota(iota.begin(), iota.end(), 0);
    Polytope grown = ball.embed(iota, n);
    if (!added.empty()) grown = hull_union(grown, Polytope::from_sparse(n, added));
    ball = std::move(grown);
    c.stages.push_back(make_space(labels, ball, c.k_bound));
  }
  if (j.contains("inclusions")) {
    const Json& inc = j.at("inclusions");
    if (!inc.is_array() || inc.size() + 1 != c.stages.size()) throw bad("inclusions do not match the stages");
    for (std::size_t n = 0; n < inc.size(); ++n)
      if (field(inc[n], "from").get<std::size_t>() != n || field(inc[n], "to").get<std::size_t>() != n + 1)
        throw bad("inclusions must link consecutive stages");
  }
  if (j.contains("log")) {
    for (const auto& r : j.at("log")) {
      StepRecord rec;
      rec.kind = field(r, "kind").get<std::string>();
      const Json& src = field(r, "source_stage");
      if (!src.is_null()) rec.source_stage = src.get<std::size_t>();
      rec.target = space_from_json(field(r, "target"));
      std::vector<Label> src_order;
      if (rec.source_stage && *rec.source_stage < c.stages.size()) src_order = c.stages[*rec.source_stage].labels;
      rec.f = pairs_from_json(field(r, "f"), src_order);
      rec.shared = pairs_from_json(field(r, "shared"), rec.target.labels);
      rec.g = pairs_from_json(field(r, "g"), rec.target.labels);
      c.log.push_back(std::move(rec));
    }
  }
  if (c.log.size() + 1 != c.stages.size() && !c.log.empty()) throw bad("log does not match the stages");
  return c;
}

Json to_json(const BackForthTranscript& t) {
  Json f = Json::array(), g = Json::array();
  for (std::size_t k = 0; k < t.f_list.size(); ++k) {
    Json e{{"label_map", label_map_json(t.f_list[k])}};
    if (k < t.f_distortion.size()) e["distortion"] = to_json(t.f_distortion[k]);
    f.push_back(e);
  }
  for (std::size_t k = 0; k < t.g_list.size(); ++k) {
    Json e{{"label_map", label_map_json(t.g_list[k])}};
    if (k < t.g_distortion.size()) e["distortion"] = to_json(t.g_distortion[k]);
    g.push_back(e);
  }
  return Json{{"mode", t.mode == BackForthMode::Exact ? "exact" : "epsilon"},
              {"epsilon", t.epsilon ? to_json(*t.epsilon) : Json(nullptr)},
              {"delta", t.delta ? to_json(*t.delta) : Json(nullptr)},
              {"n_indices", t.n_indices},
              {"m_indices", t.m_indices},
              {"f", f},
              {"g", g}};
}

BackForthTranscript transcript_from_json(const Json& j, const Chain& x, const Chain& y) {
  BackForthTranscript t;
  std::string mode = field(j, "mode").get<std::string>();
  if (mode != "exact" && mode != "epsilon") throw bad("mode must be exact or epsilon");
  t.mode = mode == "exact" ? BackForthMode::Exact : BackForthMode::Epsilon;
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) t.epsilon = rational_from_json(j.at("epsilon"));
  if (j.contains("delta") && !j.at("delta").is_null()) t.delta = rational_from_json(j.at("delta"));
  t.n_indices = field(j, "n_indices").get<std::vector<std::size_t>>();
  t.m_indices = field(j, "m_indices").get<std::vector<std::size_t>>();
  const Json& f = field(j, "f");
  const Json& g = field(j, "g");
  if (t.m_indices.size() != f.size() || t.n_indices.size() != g.size() + 1) throw bad("transcript indices do not match");
  auto stage = [](const Chain& c, std::size_t n) -> const BasedSpace& {
    if (n >= c.stages.size()) throw bad("transcript refers to a missing stage");
    return c.stages[n];
  };
  auto interval = [](const Json& e) {
    return DistortionInterval{rational_from_json(field(e, "lower")), rational_from_json(field(e, "upper"))};
  };
  for (std::size_t k = 0; k < f.size(); ++k) {
    t.f_list.push_back(morphism_from_label_map(stage(x, t.n_indices.at(k)), stage(y, t.m_indices[k]), field(f[k], "label_map")));
    if (f[k].contains("distortion")) t.f_distortion.push_back(interval(f[k].at("distortion")));
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    t.g_list.push_back(morphism_from_label_map(stage(y, t.m_indices.at(k)), stage(x, t.n_indices[k + 1]), field(g[k], "label_map")));
    if (g[k].contains("distortion")) t.g_distortion.push_back(interval(g[k].at("distortion")));
  }
  return t;
}

Json to_json(const StuckReport& s) {
  return Json{{"round", s.round}, {"direction", s.direction}, {"domain", s.domain}, {"lambda", s.lambda},
              {"reason", s.reason}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::exception& e) {
    throw bad("'" + path + "': " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ubk
