// Command-line front end: parses JSON inputs, dispatches to the library, and
// emits machine-readable JSON.  Exit codes: 0 on success (a failed equation is
// still a successful run, reported as "holds": false), 2 on malformed input,
// 1 on internal errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "bstruct/json_io.hpp"
#include "bstruct/search.hpp"

using namespace bstruct;
using json_io::AnyOp;
using json_io::json;
using tensorops::CheckOptions;
using tensorops::CheckOutcome;
using tensorops::LegOp;

namespace {

// ---------------------------------------------------------------------------
// settings shared by every subcommand (flags override the optional config)

struct Globals {
  std::string out, config, solutions, mode;
  int threads = 0;       // 0 = unset
  int samples = 0;       // 0 = unset
  uint64_t seed = 0;
  bool seed_set = false;
};

Globals g;

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error(path + ": cannot open file");
  json j = json::parse(f, nullptr, false);
  if (j.is_discarded()) throw validation_error(path + ": not valid JSON");
  return j;
}

struct Settings {
  CheckOptions opts;
  int threads = 1;
};

Settings resolve() {
  json cfg = json::object();
  if (!g.config.empty()) {
    cfg = load_json(g.config);
    if (!cfg.is_object()) throw validation_error(g.config + ": config must be an object");
  }
  auto cfg_int = [&](const char* key, int64_t lo, int64_t hi, int64_t dflt) -> int64_t {
    if (!cfg.contains(key)) return dflt;
    if (!cfg[key].is_number_integer())
      throw validation_error(std::string("config.") + key + ": expected an integer");
    int64_t v = cfg[key].get<int64_t>();
    if (v < lo || v > hi)
      throw validation_error(std::string("config.") + key + ": out of range");
    return v;
  };
  Settings s;
  s.threads = g.threads > 0 ? g.threads : static_cast<int>(cfg_int("threads", 1, 256, 1));
  s.opts.threads = s.threads;
  s.opts.samples = g.samples > 0 ? g.samples : static_cast<int>(cfg_int("samples", 1, 100000, 32));
  s.opts.seed = g.seed_set ? g.seed : static_cast<uint64_t>(cfg_int("seed", 0, INT64_MAX, 0));
  std::string mode = g.mode;
  if (mode.empty() && cfg.contains("mode")) {
    if (!cfg["mode"].is_string()) throw validation_error("config.mode: expected a string");
    mode = cfg["mode"].get<std::string>();
  }
  if (mode.empty() || mode == "auto") s.opts.mode = CheckOptions::Mode::automatic;
  else if (mode == "full") s.opts.mode = CheckOptions::Mode::full;
  else if (mode == "sampled") s.opts.mode = CheckOptions::Mode::sampled;
  else throw validation_error("mode: expected auto, full, or sampled");
  return s;
}

void emit(const json& j) {
  std::string s = j.dump(2);
  s += '\n';
  if (g.out.empty()) {
    std::cout << s;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw validation_error(g.out + ": cannot open for writing");
    f << s;
  }
}

json conventions() {
  return json{
      {"basis", "tensor indices are row-major with leg 1 most significant"},
      {"composition", "products act right to left; the rightmost factor applies first"},
      {"placement",
       "citing legs in descending order (j,i) means the flip-conjugate of the (i,j) placement"},
      {"transformation", "q(x,y) + p(x) + p(y) = p(xy) + qtilde(x,y)"},
  };
}

json verdict(bool holds) {
  return json{{"holds", holds}, {"conventions", conventions()}};
}

json outcome_json(const CheckOutcome& o) {
  json j = verdict(o.holds);
  j["exhaustive"] = o.exhaustive;
  j["ambient_total"] = o.ambient_total;
  j["vectors_checked"] = o.vectors_checked;
  if (o.counterexample) j["counterexample"] = *o.counterexample;
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

// ---------------------------------------------------------------------------
// input loaders

magma::MagmaTable load_magma(const std::string& path) {
  return json_io::parse_magma(load_json(path), "magma");
}

cochain::Cochain load_cochain(const std::string& path, const char* what) {
  return json_io::parse_cochain(load_json(path), what);
}

AnyOp load_op(const std::string& path, const char* what) {
  return json_io::parse_operator(load_json(path), what);
}

// inline "2" or "2,4" moduli list, otherwise a path to {"moduli": [...]}
zlinalg::AbelianGroup parse_coeff_arg(const std::string& s) {
  if (s.empty()) throw validation_error("coeff: empty argument");
  if (s.find_first_not_of("0123456789,") == std::string::npos) {
    zlinalg::AbelianGroup b;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw validation_error("coeff: empty modulus in list");
      b.moduli.push_back(std::stoll(tok));
    }
    if (b.moduli.empty()) throw validation_error("coeff: empty argument");
    return b;
  }
  return json_io::parse_group(load_json(s), "coeff");
}

// dispatch a family of same-field operators to a generic callable
int64_t prime_of(const LegOp<Fp>& op) { return tensorops::exemplar(op).p; }

template <class F>
json with_ops(std::vector<AnyOp> ops, F&& f) {
  bool rational = std::holds_alternative<LegOp<Rat>>(ops[0]);
  for (const auto& o : ops)
    if (std::holds_alternative<LegOp<Rat>>(o) != rational)
      throw validation_error("operators: all inputs must live over the same field");
  if (rational) {
    std::vector<LegOp<Rat>> v;
    for (auto& o : ops) v.push_back(std::move(std::get<LegOp<Rat>>(o)));
    return f(v);
  }
  std::vector<LegOp<Fp>> v;
  for (auto& o : ops) v.push_back(std::move(std::get<LegOp<Fp>>(o)));
  for (const auto& o : v)
    if (prime_of(o) != prime_of(v[0]))
      throw validation_error("operators: all inputs must share one characteristic");
  return f(v);
}

json cochains_json(const std::vector<cochain::Cochain>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(json_io::to_json(c));
  return arr;
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    size_t used = 0;
    int v = std::stoi(cur, &used);
    if (used != cur.size() || v == 0)
      throw validation_error("word: letters are nonzero signed generator indices");
    w.push_back(v);
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',' || ch == ' ') flush();
    else cur += ch;
  }
  flush();
  return w;
}

// search output: one JSON object per solution line, then a summary
void emit_search(const json& summary, const std::vector<json>& lines) {
  std::ostream* ls = &std::cout;
  std::ofstream lf;
  if (!g.solutions.empty()) {
    lf.open(g.solutions, std::ios::binary);
    if (!lf) throw validation_error(g.solutions + ": cannot open for writing");
    ls = &lf;
  }
  for (const auto& l : lines) *ls << l.dump() << "\n";
  emit(summary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computational algebra for b-structures"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", g.out, "write the summary JSON to this file instead of stdout");
  app.add_option("--config", g.config, "JSON config file (threads, samples, seed, mode)");
  app.add_option("--threads", g.threads, "worker threads for checks and searches")
      ->check(CLI::Range(1, 256));
  app.add_option("--samples", g.samples, "random vectors in sampled mode")
      ->check(CLI::Range(1, 100000));
  app.add_option_function<uint64_t>(
      "--seed", [](uint64_t v) { g.seed = v; g.seed_set = true; },
      "seed for sampled verification");
  app.add_option("--mode", g.mode, "verification mode: auto, full, sampled")
      ->check(CLI::IsMember({"auto", "full", "sampled"}));
  app.add_option("--solutions", g.solutions, "write search solutions (JSONL) to this file");

  auto sub = [&](CLI::App* parent, const char* name, const char* desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // ---- magma ----------------------------------------------------------
  auto* c_magma = sub(&app, "magma", "finite b-magma utilities");
  c_magma->require_subcommand(1);
  {
    auto* c = sub(c_magma, "check", "test the interchange law x(yz) = y(xz)");
    auto path = std::make_shared<std::string>();
    c->add_option("--magma", *path, "magma JSON file")->required();
    c->callback([path] {
      auto m = load_magma(*path);
      json j = verdict(magma::check_b_axiom(m));
      j["n"] = m.n;
      j["commutative"] = magma::check_commutative(m);
      j["associative"] = magma::check_associative(m);
      j["right_units"] = magma::right_units(m);
      emit(j);
    });
  }
  {
    auto* c = sub(c_magma, "enumerate", "enumerate b-magmas of a given size");
    auto n = std::make_shared<int>(0);
    auto iso = std::make_shared<bool>(false);
    auto list = std::make_shared<bool>(false);
    c->add_option("--n", *n, "underlying set size")->required()->check(CLI::Range(1, 5));
    c->add_flag("--up-to-iso", *iso, "one representative per isomorphism class");
    c->add_flag("--list", *list, "include the tables in the output");
    c->callback([n, iso, list] {
      auto all = magma::enumerate_b_magmas(*n, *iso);
      json j{{"n", *n}, {"up_to_iso", *iso}, {"count", all.size()}};
      if (*list) {
        json arr = json::array();
        for (const auto& m : all) arr.push_back(json_io::to_json(m));
        j["tables"] = std::move(arr);
      }
      emit(j);
    });
  }
  {
    auto* c = sub(c_magma, "auts", "list the automorphisms of a magma");
    auto path = std::make_shared<std::string>();
    c->add_option("--magma", *path, "magma JSON file")->required();
    c->callback([path] {
      auto a = magma::automorphisms(load_magma(*path));
      emit(json{{"count", a.size()}, {"automorphisms", a}});
    });
  }

  // ---- cohomology -------------------------------------------------------
  auto* c_coh = sub(&app, "cohomology", "b-cohomology of finite b-magmas");
  c_coh->require_subcommand(1);
  struct CohArgs {
    std::string magma, coeff;
    int degree = 0;
    bool reps = false;
  };
  {
    auto* c = sub(c_coh, "compute", "invariant factors of the cohomology group");
    auto a = std::make_shared<CohArgs>();
    c->add_option("--magma", a->magma, "magma JSON file")->required();
    c->add_option("--coeff", a->coeff, "coefficients: moduli list like 2,4 or a JSON file")
        ->required();
    c->add_option("--degree", a->degree, "cohomological degree")->required()
        ->check(CLI::Range(1, 16));
    c->add_flag("--reps", a->reps, "include representative cocycles");
    c->callback([a] {
      auto r = cochain::cohomology(load_magma(a->magma), parse_coeff_arg(a->coeff), a->degree);
      json j{{"degree", a->degree}, {"invariant_factors", r.invariant_factors}};
      if (a->reps) j["representatives"] = cochains_json(r.representatives);
      emit(j);
    });
  }
  {
    auto* c = sub(c_coh, "d", "apply the differential to a cochain");
    auto path = std::make_shared<std::string>();
    c->add_option("--cochain", *path, "cochain JSON file")->required();
    c->callback([path] {
      emit(json_io::to_json(cochain::differential(load_cochain(*path, "cochain"))));
    });
  }
  {
    auto* c = sub(c_coh, "is-cocycle", "test whether the differential vanishes");
    auto path = std::make_shared<std::string>();
    c->add_option("--cochain", *path, "cochain JSON file")->required();
    c->callback([path] {
      auto ch = load_cochain(*path, "cochain");
      json j = verdict(cochain::is_cocycle(ch));
      j["degree"] = ch.degree;
      emit(j);
    });
  }
  {
    auto* c = sub(c_coh, "is-coboundary", "solve c = d(w) and report a witness");
    auto path = std::make_shared<std::string>();
    c->add_option("--cochain", *path, "cochain JSON file")->required();
    c->callback([path] {
      auto w = cochain::is_coboundary(load_cochain(*path, "cochain"));
      json j = verdict(w.has_value());
      if (w) j["witness"] = json_io::to_json(*w);
      emit(j);
    });
  }
  {
    auto* c = sub(c_coh, "orbits", "cohomology classes up to magma automorphisms");
    auto a = std::make_shared<CohArgs>();
    c->add_option("--magma", a->magma, "magma JSON file")->required();
    c->add_option("--coeff", a->coeff, "coefficients: moduli list like 2,4 or a JSON file")
        ->required();
    c->add_option("--degree", a->degree, "cohomological degree")->required()
        ->check(CLI::Range(1, 16));
    c->add_flag("--reps", a->reps, "include representative cocycles");
    c->callback([a] {
      auto r = cochain::aut_orbits(load_magma(a->magma), parse_coeff_arg(a->coeff), a->degree);
      json j{{"degree", a->degree},
             {"class_count", r.class_count},
             {"orbit_count", r.orbit_sizes.size()},
             {"orbit_sizes", r.orbit_sizes}};
      if (a->reps) j["representatives"] = cochains_json(r.representatives);
      emit(j);
    });
  }

  // ---- pointed structure maps ------------------------------------------
  auto* c_pt = sub(&app, "pointed", "coherence data on pointed structures");
  c_pt->require_subcommand(1);
  {
    auto* c = sub(c_pt, "gauge", "replace r by r - d(q)");
    auto pr = std::make_shared<std::string>();
    auto pq = std::make_shared<std::string>();
    c->add_option("--r", *pr, "degree-3 cochain JSON")->required();
    c->add_option("--q", *pq, "degree-2 cochain JSON")->required();
    c->callback([pr, pq] {
      emit(json_io::to_json(
          cochain::gauge_transform(load_cochain(*pr, "r"), load_cochain(*pq, "q"))));
    });
  }
  {
    auto* c = sub(c_pt, "functor-check", "test the functor condition for (f, q)");
    auto pm = std::make_shared<std::string>();
    auto pr = std::make_shared<std::string>();
    auto pr2 = std::make_shared<std::string>();
    auto pq = std::make_shared<std::string>();
    c->add_option("--map", *pm, "magma map JSON (source, target, map)")->required();
    c->add_option("--r", *pr, "degree-3 cochain on the source")->required();
    c->add_option("--rprime", *pr2, "degree-3 cochain on the target")->required();
    c->add_option("--q", *pq, "degree-2 cochain on the source")->required();
    c->callback([pm, pr, pr2, pq] {
      auto f = json_io::parse_magma_map(load_json(*pm), "map");
      emit(verdict(cochain::functor_check(f, load_cochain(*pr, "r"),
                                          load_cochain(*pr2, "rprime"),
                                          load_cochain(*pq, "q"))));
    });
  }
  {
    auto* c = sub(c_pt, "functor-solve", "search for a q making (f, q) a functor");
    auto pm = std::make_shared<std::string>();
    auto pr = std::make_shared<std::string>();
    auto pr2 = std::make_shared<std::string>();
    c->add_option("--map", *pm, "magma map JSON")->required();
    c->add_option("--r", *pr, "degree-3 cochain on the source")->required();
    c->add_option("--rprime", *pr2, "degree-3 cochain on the target")->required();
    c->callback([pm, pr, pr2] {
      auto f = json_io::parse_magma_map(load_json(*pm), "map");
      auto q = cochain::functor_solve(f, load_cochain(*pr, "r"), load_cochain(*pr2, "rprime"));
      json j = verdict(q.has_value());
      if (q) j["witness"] = json_io::to_json(*q);
      emit(j);
    });
  }
  {
    auto* c = sub(c_pt, "transform-check", "test the transformation condition for p");
    auto pq = std::make_shared<std::string>();
    auto pq2 = std::make_shared<std::string>();
    auto pp = std::make_shared<std::string>();
    c->add_option("--q", *pq, "degree-2 cochain JSON")->required();
    c->add_option("--qtilde", *pq2, "degree-2 cochain JSON")->required();
    c->add_option("--p", *pp, "degree-1 cochain JSON")->required();
    c->callback([pq, pq2, pp] {
      emit(verdict(cochain::transformation_check(load_cochain(*pq, "q"),
                                                 load_cochain(*pq2, "qtilde"),
                                                 load_cochain(*pp, "p"))));
    });
  }
  {
    auto* c = sub(c_pt, "compare-abelian", "build b(x,y,z) = a(x,y,z) + c(x,y) - a(y,x,z)");
    auto pa = std::make_shared<std::string>();
    auto pc = std::make_shared<std::string>();
    c->add_option("--a", *pa, "degree-3 cochain on an abelian group table")->required();
    c->add_option("--c", *pc, "degree-2 cochain on the same table")->required();
    c->callback([pa, pc] {
      auto a = load_cochain(*pa, "a");
      auto cc = load_cochain(*pc, "c");
      bool filter = cochain::abelian_cocycle_check(a, cc);
      auto b = cochain::comparison_from_abelian(a, cc);
      json j{{"abelian_cocycle", filter},
             {"result", json_io::to_json(b)},
             {"result_is_cocycle", cochain::is_cocycle(b)},
             {"conventions", conventions()}};
      emit(j);
    });
  }
  {
    auto* c = sub(c_pt, "s4-check", "degree-4 coherence of a 4-cochain");
    auto ps = std::make_shared<std::string>();
    c->add_option("--s", *ps, "degree-4 cochain JSON")->required();
    c->callback([ps] { emit(verdict(cochain::s4_coherence_check(load_cochain(*ps, "s")))); });
  }
  {
    auto* c = sub(c_pt, "bicat-equiv", "test whether s' - s is a coboundary");
    auto ps = std::make_shared<std::string>();
    auto ps2 = std::make_shared<std::string>();
    c->add_option("--s", *ps, "degree-4 cochain JSON")->required();
    c->add_option("--sprime", *ps2, "degree-4 cochain JSON")->required();
    c->callback([ps, ps2] {
      auto w = cochain::bicat_equiv(load_cochain(*ps, "s"), load_cochain(*ps2, "sprime"));
      json j = verdict(w.has_value());
      if (w) j["witness"] = json_io::to_json(*w);
      emit(j);
    });
  }

  // ---- vector-space equations -------------------------------------------
  auto* c_eq = sub(&app, "eq", "equation checks for leg operators");
  c_eq->require_subcommand(1);
  auto one_op_eq = [&](const char* name, const char* desc, auto checker) {
    auto* c = sub(c_eq, name, desc);
    auto path = std::make_shared<std::string>();
    c->add_option("--op", *path, "operator JSON file")->required();
    c->callback([path, checker] {
      Settings s = resolve();
      emit(with_ops({load_op(*path, "operator")}, [&](auto& v) {
        return outcome_json(checker(v[0], s.opts));
      }));
    });
  };
  one_op_eq("pentagon", "Phi12 Phi13 Phi23 = Phi23 Phi12",
            [](const auto& op, const CheckOptions& o) { return tensorops::check_pentagon(op, o); });
  one_op_eq("hexagon", "B12 B23 B12 = B23 B12 B23",
            [](const auto& op, const CheckOptions& o) { return tensorops::check_hexagon(op, o); });
  one_op_eq("tetrahedron", "Z124 Z135 Z236 Z456 = Z456 Z236 Z135 Z124",
            [](const auto& op, const CheckOptions& o) { return tensorops::check_tetrahedron(op, o); });
  one_op_eq("s-relation", "t3 S456 S234 (t1 t4) S234 S456 = S123 S345 (t2 t5) S345 S123 t3",
            [](const auto& op, const CheckOptions& o) { return tensorops::check_s_relation(op, o); });
  {
    auto* c = sub(c_eq, "preunital", "the three pre-unital identities for (B, C)");
    auto pb = std::make_shared<std::string>();
    auto pc = std::make_shared<std::string>();
    c->add_option("--b", *pb, "two-leg braiding operator JSON")->required();
    c->add_option("--c", *pc, "one-leg operator JSON")->required();
    c->callback([pb, pc] {
      Settings s = resolve();
      emit(with_ops({load_op(*pb, "b"), load_op(*pc, "c")}, [&](auto& v) {
        return outcome_json(tensorops::check_preunital(v[0], v[1], s.opts));
      }));
    });
  }
  {
    auto* c = sub(c_eq, "lze", "L124 L135 L236 Z456 = Z456 L236 L135 L124");
    auto pl = std::make_shared<std::string>();
    auto pz = std::make_shared<std::string>();
    c->add_option("--l", *pl, "three-leg operator JSON")->required();
    c->add_option("--z", *pz, "three-leg operator JSON")->required();
    c->callback([pl, pz] {
      Settings s = resolve();
      emit(with_ops({load_op(*pl, "l"), load_op(*pz, "z")}, [&](auto& v) {
        return outcome_json(tensorops::check_lze(v[0], v[1], s.opts));
      }));
    });
  }
  {
    auto* c = sub(c_eq, "m-relation",
                  "M234 (t1 t4) M234 M456 t3 S123 = S456 t3 M123 M345 (t2 t5) M345");
    auto pm = std::make_shared<std::string>();
    auto ps = std::make_shared<std::string>();
    c->add_option("--m", *pm, "rectangular three-leg operator JSON")->required();
    c->add_option("--s", *ps, "three-leg operator JSON")->required();
    c->callback([pm, ps] {
      Settings s = resolve();
      emit(with_ops({load_op(*pm, "m"), load_op(*ps, "s")}, [&](auto& v) {
        return outcome_json(tensorops::check_m_relation(v[0], v[1], s.opts));
      }));
    });
  }
  {
    auto* c = sub(c_eq, "cl2morphism", "naturality square for a one-leg map between cells");
    auto pf = std::make_shared<std::string>();
    auto pd = std::make_shared<std::string>();
    auto pd2 = std::make_shared<std::string>();
    c->add_option("--f", *pf, "one-leg operator JSON")->required();
    c->add_option("--d", *pd, "cell operator JSON, three legs to two")->required();
    c->add_option("--dprime", *pd2, "cell operator JSON, three legs to two")->required();
    c->callback([pf, pd, pd2] {
      Settings s = resolve();
      emit(with_ops({load_op(*pf, "f"), load_op(*pd, "d"), load_op(*pd2, "dprime")},
                    [&](auto& v) {
                      return outcome_json(
                          tensorops::check_cl_2morphism(v[0], v[1], v[2], s.opts));
                    }));
    });
  }
  {
    auto* c = sub(c_eq, "id-functor", "(g x g) B = B (g x g)");
    auto pg = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    c->add_option("--g", *pg, "one-leg operator JSON")->required();
    c->add_option("--b", *pb, "two-leg braiding operator JSON")->required();
    c->callback([pg, pb] {
      Settings s = resolve();
      emit(with_ops({load_op(*pg, "g"), load_op(*pb, "b")}, [&](auto& v) {
        return outcome_json(tensorops::check_id_bfunctor(v[0], v[1], s.opts));
      }));
    });
  }

  // ---- braid words --------------------------------------------------------
  auto* c_braid = sub(&app, "braid", "braid group representations from a braiding");
  c_braid->require_subcommand(1);
  {
    auto* c = sub(c_braid, "eval", "evaluate a braid word as an operator");
    auto pb = std::make_shared<std::string>();
    auto strands = std::make_shared<int>(0);
    auto word = std::make_shared<std::string>();
    auto tail = std::make_shared<int64_t>(1);
    c->add_option("--b", *pb, "two-leg braiding operator JSON")->required();
    c->add_option("--strands", *strands, "number of strands")->required()->check(CLI::Range(2, 16));
    c->add_option("--word", *word, "letters like 1,-2,1; sign selects the inverse")->required();
    c->add_option("--tail", *tail, "dimension of the inert tail leg")->check(CLI::Range(1, 64));
    c->callback([pb, strands, word, tail] {
      auto w = parse_word(*word);
      emit(with_ops({load_op(*pb, "b")}, [&](auto& v) {
        return json_io::to_json(tensorops::braid_word_eval(v[0], *strands, w, *tail));
      }));
    });
  }
  {
    auto* c = sub(c_braid, "coxeter", "verify the braid relations for b1..b(n-1)");
    auto pb = std::make_shared<std::string>();
    auto strands = std::make_shared<int>(0);
    c->add_option("--b", *pb, "two-leg braiding operator JSON")->required();
    c->add_option("--strands", *strands, "number of strands")->required()->check(CLI::Range(2, 16));
    c->callback([pb, strands] {
      Settings s = resolve();
      emit(with_ops({load_op(*pb, "b")}, [&](auto& v) {
        return outcome_json(tensorops::check_coxeter(v[0], *strands, s.opts));
      }));
    });
  }

  // ---- conversions ---------------------------------------------------------
  auto* c_conv = sub(&app, "convert", "conversions between equation presentations");
  c_conv->require_subcommand(1);
  auto one_op_conv = [&](const char* name, const char* desc, auto fn) {
    auto* c = sub(c_conv, name, desc);
    auto path = std::make_shared<std::string>();
    c->add_option("--op", *path, "operator JSON file")->required();
    c->callback([path, fn] {
      emit(with_ops({load_op(*path, "operator")},
                    [&](auto& v) { return json_io::to_json(fn(v[0])); }));
    });
  };
  one_op_conv("s-to-z", "Z = S t1 t2 t1", [](const auto& op) { return tensorops::s_to_z(op); });
  one_op_conv("z-to-s", "S = Z t1 t2 t1", [](const auto& op) { return tensorops::z_to_s(op); });
  one_op_conv("m-to-l", "L from an invertible M", [](const auto& op) { return tensorops::m_to_l(op); });
  one_op_conv("l-to-m", "M from an invertible L", [](const auto& op) { return tensorops::l_to_m(op); });
  {
    auto* c = sub(c_conv, "compose-l", "compose two L operators over a shared last leg");
    auto pl = std::make_shared<std::string>();
    auto pl2 = std::make_shared<std::string>();
    c->add_option("--l", *pl, "three-leg operator JSON")->required();
    c->add_option("--lprime", *pl2, "three-leg operator JSON")->required();
    c->callback([pl, pl2] {
      emit(with_ops({load_op(*pl, "l"), load_op(*pl2, "lprime")}, [&](auto& v) {
        return json_io::to_json(tensorops::compose_L(v[0], v[1]));
      }));
    });
  }

  // ---- searches --------------------------------------------------------
  auto* c_search = sub(&app, "search", "exhaustive solution scans");
  c_search->require_subcommand(1);
  {
    auto* c = sub(c_search, "ybe-set", "permutation solutions of the braided relation");
    auto n = std::make_shared<int>(0);
    c->add_option("--n", *n, "set size")->required()->check(CLI::Range(1, 3));
    c->callback([n] {
      Settings s = resolve();
      auto r = search::search_settheoretic_ybe(*n, s.threads);
      std::vector<json> lines;
      for (const auto& q : r.solutions)
        lines.push_back(json{{"kind", "ybe-set"},
                             {"n", r.n},
                             {"perm", q},
                             {"operator", json_io::to_json(search::perm_to_op(q, {r.n, r.n}))}});
      emit_search(json{{"kind", "ybe-set"},
                       {"n", r.n},
                       {"candidates_scanned", r.candidates_scanned},
                       {"exhaustive", r.exhaustive},
                       {"solution_count", r.solutions.size()}},
                  lines);
    });
  }
  {
    auto* c = sub(c_search, "ybe-matrix", "all 4x4 matrices over F2 solving the braided relation");
    c->callback([] {
      Settings s = resolve();
      auto r = search::search_matrix_ybe(s.threads);
      std::vector<json> lines;
      for (size_t i = 0; i < r.codes.size(); ++i)
        lines.push_back(json{{"kind", "ybe-matrix"},
                             {"code", r.codes[i]},
                             {"operator", json_io::to_json(r.solutions[i])}});
      emit_search(json{{"kind", "ybe-matrix"},
                       {"candidates_scanned", r.candidates_scanned},
                       {"exhaustive", r.exhaustive},
                       {"solution_count", r.codes.size()}},
                  lines);
    });
  }
  {
    auto* c = sub(c_search, "preunital", "scalar pre-unital pairs over F_p");
    auto p = std::make_shared<int64_t>(0);
    c->add_option("--p", *p, "prime characteristic, at most 97")->required();
    c->callback([p] {
      Settings s = resolve();
      auto r = search::search_preunital(*p, s.threads);
      std::vector<json> lines;
      for (auto [bv, cv] : r.solutions) {
        Fp one(1, r.p);
        tensorops::LegOp<Fp> B{{1, 1}, {1, 1}, tensorops::make_mat(1, 1, zero_of(one))};
        tensorops::LegOp<Fp> C{{1}, {1}, tensorops::make_mat(1, 1, zero_of(one))};
        B.m.at(0, 0) = Fp(bv, r.p);
        C.m.at(0, 0) = Fp(cv, r.p);
        lines.push_back(json{{"kind", "preunital"},
                             {"p", r.p},
                             {"b", bv},
                             {"c", cv},
                             {"operator_b", json_io::to_json(B)},
                             {"operator_c", json_io::to_json(C)}});
      }
      emit_search(json{{"kind", "preunital"},
                       {"p", r.p},
                       {"candidates_scanned", r.candidates_scanned},
                       {"exhaustive", r.exhaustive},
                       {"solution_count", r.solutions.size()}},
                  lines);
    });
  }
  {
    auto* c = sub(c_search, "lze", "permutation (L, Z) pairs for the mixed relation");
    auto cd = std::make_shared<int>(0);
    auto bd = std::make_shared<int>(0);
    c->add_option("--c-dim", *cd, "dimension of the c legs")->required()->check(CLI::Range(1, 2));
    c->add_option("--b-dim", *bd, "dimension of the b legs")->required()->check(CLI::Range(1, 2));
    c->callback([cd, bd] {
      Settings s = resolve();
      auto r = search::search_lze(*cd, *bd, s.threads);
      std::vector<int64_t> lleg{r.c_dim, r.c_dim, r.b_dim};
      std::vector<int64_t> bleg{r.b_dim, r.b_dim, r.b_dim};
      std::vector<json> lines;
      for (const auto& pr : r.solutions)
        lines.push_back(
            json{{"kind", "lze"},
                 {"l_perm", pr.l},
                 {"z_perm", pr.z},
                 {"operator_l", json_io::to_json(search::perm_to_op(pr.l, lleg))},
                 {"operator_z", json_io::to_json(search::perm_to_op(pr.z, bleg))}});
      emit_search(json{{"kind", "lze"},
                       {"c_dim", r.c_dim},
                       {"b_dim", r.b_dim},
                       {"candidates_scanned", r.candidates_scanned},
                       {"exhaustive", r.exhaustive},
                       {"restriction", "permutation operators only"},
                       {"z_solution_count", r.z_solutions.size()},
                       {"solution_count", r.solutions.size()}},
                  lines);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
