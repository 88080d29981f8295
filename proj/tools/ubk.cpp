// ubk: command-line front end. One JSON document on stdout, logs on stderr.
// Exit codes: 0 ok, 1 input error, 2 validation failure, 3 property failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ubk/suites.hpp"

using namespace ubk;

namespace {

enum Exit { kOk = 0, kInput = 1, kInvalid = 2, kProperty = 3 };

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string witness = "ubk-witness.json";
  std::string plot;
  bool verify = true;
  std::size_t max_dim = 2, max_den = 3, max_gen = 8;
};

// Failure that carries its exit code and an optional witness document.
struct Failure {
  int code;
  std::string message;
  Json witness;
};

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedInput:
    case ErrorKind::LabelCollision:
    case ErrorKind::NotInjective:
    case ErrorKind::SpaceMismatch:
    case ErrorKind::KMismatch:
      return kInput;
    case ErrorKind::ConstructionInvariantViolated:
      return kProperty;
    default:
      return kInvalid;
  }
}

std::vector<Label> split_labels(const std::string& s) {
  std::vector<Label> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

RationalVector parse_vector(const std::string& s) {
  RationalVector v;
  for (const auto& item : split_labels(s)) v.push_back(parse_rational(item));
  return v;
}

Rational parse_flag_rational(const std::string& s, const char* name) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    throw Error(ErrorKind::MalformedInput, std::string("--") + name + ": not a rational: " + s);
  }
}

BasedSpace load_space(const std::string& path) { return space_from_json(read_json_file(path)); }
Chain load_chain(const std::string& path) { return chain_from_json(read_json_file(path)); }

// A morphism file is either a full morphism or a bare label map (optionally
// under "label_map").
BasedMorphism load_map(const std::string& path, const BasedSpace& domain, const BasedSpace& codomain) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("domain")) return morphism_from_json(j);
  if (j.is_object() && j.contains("label_map")) j = j["label_map"];
  return morphism_from_label_map(domain, codomain, j);
}

void write_plot(const Globals& g, const Polytope& ball) {
  if (g.plot.empty()) return;
  if (ball.dim() != 2) {
    std::cerr << "plot data skipped: ball has dimension " << ball.dim() << "\n";
    return;
  }
  auto v = ball.pruned().generators();  // one of each +- pair
  for (std::size_t i = 0, n = v.size(); i < n; ++i) v.push_back(negate(v[i]));
  std::sort(v.begin(), v.end(), [](const RationalVector& a, const RationalVector& b) {
    return std::atan2(a[1].get_d(), a[0].get_d()) < std::atan2(b[1].get_d(), b[0].get_d());
  });
  std::ofstream f(g.plot);
  if (!f) throw Error(ErrorKind::MalformedInput, "cannot write " + g.plot);
  f << "x,y\n";
  for (const auto& p : v) f << to_string(p[0]) << "," << to_string(p[1]) << "\n";
  std::cerr << "plot data: " << v.size() << " vertices -> " << g.plot << "\n";
}

void check_roundtrip(const Globals& g, const BasedSpace& s) {
  if (g.verify && !(space_from_json(to_json(s)) == s))
    throw Failure{kProperty, "space does not survive a JSON round trip", to_json(s)};
}

ComplexityBound bound_of(const Globals& g) { return ComplexityBound{g.max_dim, g.max_den, g.max_gen}; }

void emit(const Globals& g, const Json& doc) {
  if (g.out.empty()) {
    std::cout << dump(doc);
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorKind::MalformedInput, "cannot write " + g.out);
  f << dump(doc);
  std::cout << dump(Json{{"out", g.out}});
}

int cmd_validate(const Globals& g, const std::string& path) {
  BasedSpace s = load_space(path);
  ValidationReport r = validate(s);
  write_plot(g, s.ball);
  emit(g, to_json(r));
  if (!r.valid) std::cerr << "space is not " << to_string(s.k_bound) << "-based\n";
  return r.valid ? kOk : kInvalid;
}

int cmd_norm(const Globals& g, const std::string& path, const std::string& vec) {
  BasedSpace s = load_space(path);
  RationalVector x = parse_vector(vec);
  if (x.size() != s.dim())
    throw Error(ErrorKind::MalformedInput, "vector has " + std::to_string(x.size()) + " entries, space has dimension " +
                                               std::to_string(s.dim()));
  RationalVector fn;
  Rational n = s.ball.gauge_certified(x, fn);
  if (g.verify && (dot(fn, x) != n || s.ball.dual_gauge(fn) > 1))
    throw Failure{kProperty, "norming functional does not certify the value", Json{{"vector", to_json(x)}}};
  write_plot(g, s.ball);
  emit(g, Json{{"norm", to_json(n)}, {"functional", to_json(fn)}});
  return kOk;
}

int cmd_suppress(const Globals& g, const std::string& path, bool brute) {
  BasedSpace s = load_space(path);
  SubsetWitness w = brute ? suppression_constant(s) : suppression_constant_fast(s);
  if (g.verify && !brute && s.dim() <= 16) {
    SubsetWitness b = suppression_constant(s);
    if (b.norm != w.norm)
      throw Failure{kProperty, "facet value " + to_string(w.norm) + " differs from brute force " + to_string(b.norm),
                    to_json(s)};
  }
  write_plot(g, s.ball);
  Json doc = to_json(w);
  doc["suppression"] = to_json(w.norm);
  emit(g, doc);
  return kOk;
}

int cmd_renorm(const Globals& g, const std::string& path) {
  BasedSpace s = load_space(path);
  BasedSpace r = renorm_to_one_based(s);
  if (g.verify) {
    Rational c = suppression_constant_fast(r).norm;
    if (c != 1) throw Failure{kProperty, "renormed space has suppression " + to_string(c), to_json(s)};
    check_roundtrip(g, r);
  }
  write_plot(g, r.ball);
  emit(g, to_json(r));
  return kOk;
}

struct AmalgamArgs {
  std::string z, x, y, j, i;
};

int cmd_amalgamate(const Globals& g, const AmalgamArgs& a) {
  BasedSpace z = load_space(a.z), x = load_space(a.x), y = load_space(a.y);
  BasedMorphism j = load_map(a.j, z, x), i = load_map(a.i, z, y);
  AmalgamOptions opt;
  opt.verify = g.verify;
  AmalgamResult r = amalgamate(z, x, y, j, i, opt);
  if (g.verify) check_roundtrip(g, r.w);
  write_plot(g, r.w.ball);
  emit(g, Json{{"w", to_json(r.w)},
               {"i_prime", label_map_json(r.i_prime)},
               {"j_prime", label_map_json(r.j_prime)},
               {"report", to_json(r.report)}});
  return kOk;
}

struct ExtendArgs {
  std::string space, sub, morphism, chain, lambda_ball, epsilon = "1/2";
};

int cmd_extend(const Globals& g, const ExtendArgs& a) {
  BasedSpace s = load_space(a.space);
  std::vector<Label> lam = split_labels(a.sub);
  Rational eps = parse_flag_rational(a.epsilon, "epsilon");
  if (!a.chain.empty()) {
    Chain c = load_chain(a.chain);
    BasedSpace sub = based_subspace(s, lam);
    BasedMorphism f = a.morphism.empty() ? make_morphism(sub, c.top(), {}) : load_map(a.morphism, sub, c.top());
    EpsilonExtension e = extend_epsilon_isometry(s, lam, f, c, eps);
    if (g.verify) {
      std::string bad = check_chain(c);
      if (!bad.empty()) throw Failure{kProperty, "grown chain: " + bad, to_json(c)};
    }
    write_plot(g, s.ball);
    Json doc{{"morphism", label_map_json(e.morphism)},
             {"distortion", to_json(e.distortion)},
             {"exact", e.exact},
             {"stage", e.stage},
             {"chain", to_json(c)}};
    if (e.params) doc["params"] = to_json(*e.params);
    emit(g, doc);
    return kOk;
  }
  if (a.lambda_ball.empty()) throw Error(ErrorKind::MalformedInput, "extend needs --chain or --lambda-ball");
  Polytope lp = polytope_from_json(read_json_file(a.lambda_ball));
  std::vector<std::size_t> idx = s.indices_of(lam);
  Polytope lb = idx.empty() ? Polytope() : s.ball.restrict_to(idx);
  SandwichParams params = choose_delta(lp, lb, eps);
  ExtensionResult r = extension_ball(s, lam, lp, params);
  if (g.verify) check_roundtrip(g, r.a_prime);
  write_plot(g, r.a_prime.ball);
  emit(g, Json{{"a_prime", to_json(r.a_prime)},
               {"p", to_json(r.p)},
               {"scale", to_json(r.scale)},
               {"params", to_json(r.params)},
               {"report", to_json(r.report)}});
  return kOk;
}

int cmd_build(const Globals& g, const std::string& k, std::size_t steps) {
  Rational kb = parse_flag_rational(k, "k");
  Chain c = build_generic_chain(bound_of(g), kb, steps, g.seed.value_or(1));
  std::cerr << "built " << c.stages.size() << " stages, top dimension " << c.top().dim() << "\n";
  if (g.verify) {
    std::string bad = check_chain(c);
    if (!bad.empty()) throw Failure{kProperty, bad, to_json(c)};
  }
  write_plot(g, c.top().ball);
  emit(g, to_json(c));
  return kOk;
}

struct BackForthArgs {
  std::string x, y, mode = "exact", epsilon = "1/2", f0;
  std::size_t rounds = 3;
  bool grow = true;
};

int cmd_backforth(const Globals& g, const BackForthArgs& a) {
  Chain x = load_chain(a.x), y = load_chain(a.y);
  BackForthOptions opt;
  opt.grow = a.grow;
  BackForthOutcome o;
  if (a.mode == "exact") {
    o = back_and_forth_exact(x, y, a.rounds, opt);
  } else if (a.mode == "eps") {
    if (a.f0.empty()) throw Error(ErrorKind::MalformedInput, "--mode eps needs --f0");
    Json j = read_json_file(a.f0);
    BasedMorphism f0;
    if (j.is_object() && j.contains("domain")) {
      f0 = morphism_from_json(j);
    } else {
      std::size_t xs = j.value("x_stage", x.top_index()), ys = j.value("y_stage", y.top_index());
      if (xs >= x.stages.size() || ys >= y.stages.size())
        throw Error(ErrorKind::MalformedInput, "f0 stage index out of range");
      f0 = morphism_from_label_map(x.stages[xs], y.stages[ys], j.contains("label_map") ? j["label_map"] : j);
    }
    o = back_and_forth_epsilon(x, y, f0, parse_flag_rational(a.epsilon, "epsilon"), a.rounds, opt);
  } else {
    throw Error(ErrorKind::MalformedInput, "--mode must be exact or eps");
  }
  if (o.stuck) throw Failure{kProperty, "stuck: " + o.stuck->reason, to_json(*o.stuck)};
  if (g.verify) {
    std::string bad = check_transcript(o.transcript, x, y, a.grow);
    if (!bad.empty()) throw Failure{kProperty, bad, to_json(o.transcript)};
  }
  emit(g, Json{{"transcript", to_json(o.transcript)}, {"x", to_json(x)}, {"y", to_json(y)}});
  return kOk;
}

int cmd_suite(const Globals& g, const std::string& name, std::size_t cases) {
  std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  SuiteConfig cfg{cases, g.seed};
  Json list = Json::array();
  Json witness;
  bool pass = true;
  for (const auto& n : names) {
    SuiteResult r = run_suite(n, cfg);
    std::cerr << (r.pass ? "pass " : "FAIL ") << n << " (" << r.seconds << " s): " << r.detail << "\n";
    list.push_back(Json{{"name", n}, {"pass", r.pass}, {"cases", r.cases}, {"checks", r.checks},
                        {"detail", r.detail}, {"seconds", r.seconds}});
    if (!r.pass && pass) witness = Json{{"suite", n}, {"seed", g.seed ? Json(*g.seed) : Json()},
                                        {"counterexample", r.counterexample}};
    pass = pass && r.pass;
  }
  Json doc{{"pass", pass}, {"suites", list}};
  if (!pass) {
    std::ofstream(g.witness) << dump(witness);
    doc["witness"] = g.witness;
  }
  emit(g, doc);
  return pass ? kOk : kProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with polyhedral based Banach spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for the mt19937_64 generator");
  app.add_option("--out", g.out, "write the JSON result here instead of stdout");
  app.add_option("--witness", g.witness, "file for the counterexample on property failure");
  app.add_flag("--verify,!--no-verify", g.verify, "re-verify outputs (default on)");
  app.add_option("--max-dim", g.max_dim, "largest dimension of enumerated spaces");
  app.add_option("--max-den", g.max_den, "largest denominator of enumerated ball vertices");
  app.add_option("--max-gen", g.max_gen, "largest vertex count of enumerated balls");
  app.add_option("--plot-data", g.plot, "CSV of the 2D ball vertices of the result");

  std::string space, vec, kflag = "1", suite_name;
  bool brute = false;
  std::size_t steps = 0, cases = 0;
  AmalgamArgs am;
  ExtendArgs ex;
  BackForthArgs bf;

  auto* validate_cmd = app.add_subcommand("validate", "check normalization and the suppression bound");
  validate_cmd->add_option("space,--space", space)->required();
  auto* norm_cmd = app.add_subcommand("norm", "norm of a vector, with a norming functional");
  norm_cmd->add_option("space,--space", space)->required();
  norm_cmd->add_option("--vector", vec, "comma separated rationals")->required();
  auto* suppress_cmd = app.add_subcommand("suppress", "suppression constant with the attaining subset");
  suppress_cmd->add_option("space,--space", space)->required();
  suppress_cmd->add_flag("--brute", brute, "enumerate all coordinate subsets");
  auto* renorm_cmd = app.add_subcommand("renorm", "equivalent 1-based norm");
  renorm_cmd->add_option("space,--space", space)->required();
  auto* amalgam_cmd = app.add_subcommand("amalgamate", "pushout of two isometric legs");
  amalgam_cmd->add_option("--z", am.z)->required();
  amalgam_cmd->add_option("--x", am.x)->required();
  amalgam_cmd->add_option("--y", am.y)->required();
  amalgam_cmd->add_option("--j", am.j, "Z -> X")->required();
  amalgam_cmd->add_option("--i", am.i, "Z -> Y")->required();
  auto* extend_cmd = app.add_subcommand("extend", "extend a near-isometry of a subspace");
  extend_cmd->add_option("--space", ex.space)->required();
  extend_cmd->add_option("--sub", ex.sub, "comma separated labels");
  extend_cmd->add_option("--morphism", ex.morphism, "subspace -> chain stage");
  extend_cmd->add_option("--chain", ex.chain, "1-based chain to grow");
  extend_cmd->add_option("--lambda-ball", ex.lambda_ball, "new ball on the subspace (no chain)");
  extend_cmd->add_option("--epsilon", ex.epsilon);
  auto* build_cmd = app.add_subcommand("build-universal", "grow a chain by the bounded Fraisse construction");
  build_cmd->add_option("--k", kflag);
  build_cmd->add_option("--steps", steps, "0 drains every request");
  auto* bf_cmd = app.add_subcommand("backforth", "back-and-forth between two chains");
  bf_cmd->add_option("--x", bf.x)->required();
  bf_cmd->add_option("--y", bf.y)->required();
  bf_cmd->add_option("--mode", bf.mode)->check(CLI::IsMember({"exact", "eps"}));
  bf_cmd->add_option("--epsilon", bf.epsilon);
  bf_cmd->add_option("--f0", bf.f0, "initial near-isometry (eps mode)");
  bf_cmd->add_option("--rounds", bf.rounds);
  bf_cmd->add_flag("--grow,!--no-grow", bf.grow, "extend the chains when a search fails");
  auto* suite_cmd = app.add_subcommand("suite", "run a property suite");
  suite_cmd->add_option("name", suite_name, "suite name or all")->required();
  suite_cmd->add_option("--cases", cases);
  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cout << dump(Json{{"error", e.what()}, {"kind", "usage"}});
    return kInput;
  }

  try {
    if (*validate_cmd) return cmd_validate(g, space);
    if (*norm_cmd) return cmd_norm(g, space, vec);
    if (*suppress_cmd) return cmd_suppress(g, space, brute);
    if (*renorm_cmd) return cmd_renorm(g, space);
    if (*amalgam_cmd) return cmd_amalgamate(g, am);
    if (*extend_cmd) return cmd_extend(g, ex);
    if (*build_cmd) return cmd_build(g, kflag, steps);
    if (*bf_cmd) return cmd_backforth(g, bf);
    if (*suite_cmd) return cmd_suite(g, suite_name, cases);
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    std::ofstream(g.witness) << dump(f.witness);
    std::cout << dump(Json{{"error", f.message}, {"kind", "property"}, {"witness", g.witness}});
    return f.code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    std::cout << dump(Json{{"error", e.what()}, {"kind", to_string(e.kind())}});
    return exit_for(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << e.what() << "\n";
    std::cout << dump(Json{{"error", e.what()}, {"kind", "MalformedInput"}});
    return kInput;
  }
  return kInput;
}
