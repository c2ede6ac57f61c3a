// Command-line front end.  Every command reads its inputs from flags and
// files, computes with the library, and prints a single JSON document; the
// exit code distinguishes success (0), bad input (2), and genericity or
// resource failures (3).  Identical invocations produce byte-identical
// output.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quivermod/candecomp.hpp"
#include "quivermod/errors.hpp"
#include "quivermod/field.hpp"
#include "quivermod/homext.hpp"
#include "quivermod/io.hpp"
#include "quivermod/kronecker.hpp"
#include "quivermod/normalform.hpp"
#include "quivermod/quiver.hpp"
#include "quivermod/rep.hpp"

namespace {

using namespace quivermod;

struct Options {
  std::uint64_t seed = 0;
  std::uint32_t prime = 32003;
  Int max_total = 24;
  bool pretty = false;
  bool oracle = false;
  std::string quiver_path;
  std::string dim;
  std::string dim2;
  std::string vertex;
  std::string output;
  int n = 0;
};

Json config_json(const Options& opt) {
  Json j;
  j["seed"] = opt.seed;
  j["field_prime"] = opt.prime;
  j["max_total"] = opt.max_total;
  return j;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void check_config(const Options& opt) {
  if (opt.prime <= 2 || !is_prime(opt.prime))
    throw input_error("--field-prime must be an odd prime");
  if (opt.max_total < 1)
    throw input_error("--max-total must be positive");
}

void check_oracle_cap(const Options& opt, const DimVec& d) {
  if (opt.oracle && d.total() > opt.max_total)
    throw input_error("--max-total is below the requested total dimension; "
                      "raise it to use the oracle");
}

Quiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open quiver file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("quiver file '" + path + "' is not valid JSON: " + e.what());
  }
  return quiver_from_json(j);
}

void emit(const Json& doc, const Options& opt) {
  std::string text = opt.pretty ? doc.dump(2) : doc.dump();
  text += '\n';
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output);
    if (!out) throw input_error("cannot open output file '" + opt.output + "'");
    out << text;
  }
}

Json matrix_json(const Matrix<FpField>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json run_euler(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec a = parse_dim_string(q, opt.dim);
  DimVec b = opt.dim2.empty() ? a : parse_dim_string(q, opt.dim2);
  Json payload;
  payload["euler"] = euler_form(q, a, b);
  payload["kac"] = kac_form(q, a, b);
  if (a == b) payload["p"] = 1 - euler_form(q, a, a);
  return payload;
}

Json run_reflect(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec a = parse_dim_string(q, opt.dim);
  int v = q.vertex_index(opt.vertex);
  DimVec r = reflect(q, v, a);
  Json payload;
  payload["vertex"] = opt.vertex;
  payload["input"] = dimvec_to_json(q, a);
  payload["reflected"] = dimvec_to_json(q, r);
  return payload;
}

Json run_schur(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec a = parse_dim_string(q, opt.dim);
  check_oracle_cap(opt, a);
  Json payload;
  if (opt.oracle) {
    HomExtEngine engine(q, opt.max_total);
    payload["schur"] = engine.is_schur_oracle(a);
    payload["algorithm"] = "oracle";
  } else {
    DecompEngine engine(q, opt.max_total);
    payload["schur"] = engine.is_schur(a);
    payload["algorithm"] = "fast";
  }
  return payload;
}

Json run_candecomp(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec a = parse_dim_string(q, opt.dim);
  check_oracle_cap(opt, a);
  Json payload;
  if (opt.oracle) {
    HomExtEngine engine(q, opt.max_total);
    CanDecomp d = engine.candecomp_oracle(a);
    payload["blocks"] = candecomp_to_json(q, d);
    payload["schur"] = d.single() && d.blocks[0].mult == 1 && d.blocks[0].root == a;
    payload["algorithm"] = "oracle";
    payload["assertions_checked"] = 0;
  } else {
    DecompEngine engine(q, opt.max_total);
    CanDecomp d = engine.canonical_decomposition(a);
    payload["blocks"] = candecomp_to_json(q, d);
    payload["schur"] = engine.is_schur(a);
    payload["algorithm"] = "fast";
    payload["assertions_checked"] = engine.assertions_checked();
  }
  return payload;
}

Json run_kronecker(const Options& opt) {
  auto [a, b] = parse_pair_string(opt.dim);
  kronecker::KroneckerClass cls = kronecker::classify(opt.n, a, b);
  Json payload = kclass_to_json(cls);
  Quiver q = kronecker_quiver(opt.n);
  payload["candecomp"] =
      candecomp_to_json(q, kronecker::candecomp_kronecker(opt.n, a, b));
  return payload;
}

Json run_moduli(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec a = parse_dim_string(q, opt.dim);
  return moduli_to_json(moduli_report(q, a, opt.max_total));
}

Json run_tower(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec a = parse_dim_string(q, opt.dim);
  return tower_to_json(reduction_tower(q, a, opt.max_total));
}

Json run_normalform(const Options& opt) {
  Quiver q = load_quiver(opt.quiver_path);
  DimVec alpha = parse_dim_string(q, opt.dim);
  if (q.num_vertices() != 2)
    throw input_error("normalform needs a Kronecker quiver (two vertices)");
  for (const Arrow& a : q.arrows())
    if (a.src != 0 || a.tgt != 1)
      throw input_error("normalform needs all arrows from the first vertex to "
                        "the second");
  check_nonneg(q, alpha);
  if (alpha.total() <= 0) throw input_error("dimension vector must be nonzero");

  const Int h = greatest_divisor(alpha);
  DimVec ab = alpha;
  ab[0] /= h;
  ab[1] /= h;
  const FpField field(opt.prime);
  TiltingPair<FpField> tp =
      build_tilting_pair(field, q.num_arrows(), ab, opt.seed);

  const int trials = 3;
  int successes = 0;
  std::mt19937_64 rng(opt.seed + 1);
  Rep<FpField> last = zero_rep(field, kronecker_quiver(static_cast<int>(1 + tp.p)),
                               DimVec(std::vector<Int>{h, h}));
  for (int i = 0; i < trials; ++i) {
    try {
      Rep<FpField> sample = random_rep(field, q, alpha, rng);
      Rep<FpField> reduced = reduce_to_kronecker(tp, sample);
      Rep<FpField> back = inverse_from_kronecker(tp, reduced);
      std::mt19937_64 check_rng(opt.seed + 100 + static_cast<std::uint64_t>(i));
      if (is_isomorphic(sample, back, check_rng)) {
        ++successes;
        last = reduced;
      }
    } catch (const genericity_error&) {
      // An unlucky sample counts as a failed trial.
    }
  }

  Json payload;
  payload["h"] = h;
  payload["p"] = tp.p;
  payload["flags"] = rationality_flags(h);
  payload["roundtrip"] = Json{{"trials", trials}, {"successes", successes}};
  Json mats = Json::array();
  for (const Matrix<FpField>& m : matrices_normal_form(last))
    mats.push_back(matrix_json(m));
  payload["matrices"] = std::move(mats);
  return payload;
}

Json run_selftest(const Options& opt) {
  Json rows = Json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass) {
    rows.push_back(Json{{"name", name}, {"pass", pass}});
    all = all && pass;
  };

  {
    HomExtEngine engine(kronecker_quiver(3), opt.max_total);
    record("ext of the two simples on Q(3)",
           engine.generic_ext(DimVec({1, 0}), DimVec({0, 1})) == 3 &&
               engine.generic_ext(DimVec({0, 1}), DimVec({1, 0})) == 0);
  }
  {
    Quiver a2 = Quiver::make({"v", "w"}, {{"a", "v", "w"}});
    DecompEngine fast(a2, opt.max_total);
    HomExtEngine oracle(a2, opt.max_total);
    CanDecomp d = fast.canonical_decomposition(DimVec({2, 1}));
    record("A2 (2,1) decomposition",
           d.blocks.size() == 2 && d.blocks[0].root == DimVec({1, 1}) &&
               d.blocks[1].root == DimVec({1, 0}) &&
               d == oracle.candecomp_oracle(DimVec({2, 1})));
  }
  {
    auto cls = kronecker::classify(3, 3, 8);
    record("Q(3) (3,8) is the second preprojective",
           cls.tag == kronecker::KClassTag::preprojective && cls.l == 2 &&
               cls.c == 1 && cls.d == 0);
    record("Q(3) preprojective dimensions",
           kronecker::preprojective_dim(3, 2) == DimVec({3, 8}));
  }
  {
    FpField field(opt.prime);
    Quiver q3 = kronecker_quiver(3);
    std::mt19937_64 rng(opt.seed);
    bool ok = true;
    for (int i = 0; i < 5 && ok; ++i) {
      Rep<FpField> r = random_rep(field, q3, DimVec({2, 3}), rng);
      Rep<FpField> s = random_rep(field, q3, DimVec({1, 2}), rng);
      HomExtDims hd = hom_ext_dims(r, s);
      ok = hd.hom - hd.ext == euler_form(q3, DimVec({2, 3}), DimVec({1, 2}));
    }
    record("hom minus ext equals the Euler form on samples", ok);
  }
  {
    bool ok = true;
    std::vector<Quiver> quivers = {
        Quiver::make({"v", "w"}, {{"a", "v", "w"}}),
        kronecker_quiver(2),
        Quiver::make({"x"}, {{"l", "x", "x"}}),
        Quiver::make({"1", "2", "3"},
                     {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}}),
    };
    for (const Quiver& q : quivers) {
      DecompEngine fast(q, opt.max_total);
      HomExtEngine oracle(q, opt.max_total);
      std::vector<DimVec> todo;
      DimVec cur(q.num_vertices());
      // All vectors with entries <= 2 and total <= 4.
      std::function<void(int)> fill = [&](int v) {
        if (v == q.num_vertices()) {
          if (cur.total() >= 1 && cur.total() <= 4) todo.push_back(cur);
          return;
        }
        for (Int x = 0; x <= 2; ++x) {
          cur[v] = x;
          fill(v + 1);
        }
        cur[v] = 0;
      };
      fill(0);
      for (const DimVec& d : todo)
        if (!(fast.canonical_decomposition(d) == oracle.candecomp_oracle(d))) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    record("fast decomposition agrees with the oracle on a small sweep", ok);
  }
  {
    ModuliReport mr = moduli_report(kronecker_quiver(3), DimVec({2, 2}));
    record("moduli verdict for (2,2) on Q(3)",
           mr.h == 2 && mr.p == 2 && !mr.flags.empty() &&
               mr.flags[0] == "rational");
  }

  Json payload;
  payload["results"] = std::move(rows);
  payload["pass"] = all;
  return payload;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver representation toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "random seed")
      ->envname("QUIVERMOD_SEED")
      ->capture_default_str();
  app.add_option("--field-prime", opt.prime, "prime field modulus")
      ->capture_default_str();
  app.add_option("--max-total", opt.max_total,
                 "cap on total dimension for recursive computations")
      ->capture_default_str();
  app.add_flag("--pretty", opt.pretty, "indent the JSON output");
  app.add_option("--output", opt.output, "write the JSON document to a file");

  auto add_quiver_dim = [&](CLI::App* cmd) {
    cmd->add_option("--quiver", opt.quiver_path, "quiver JSON file")->required();
    cmd->add_option("--dim", opt.dim, "dimension vector, e.g. v=2,w=1")->required();
  };

  CLI::App* euler = app.add_subcommand("euler", "Euler and symmetrized forms");
  euler->fallthrough();
  add_quiver_dim(euler);
  euler->add_option("--dim2", opt.dim2, "second dimension vector");

  CLI::App* refl = app.add_subcommand("reflect", "simple reflection of a vector")->fallthrough();
  add_quiver_dim(refl);
  refl->add_option("--vertex", opt.vertex, "loop-free vertex to reflect at")
      ->required();

  CLI::App* schur = app.add_subcommand("schur", "Schur root test")->fallthrough();
  add_quiver_dim(schur);
  schur->add_flag("--oracle", opt.oracle, "use the recursive oracle");

  CLI::App* cand = app.add_subcommand("candecomp", "canonical decomposition")->fallthrough();
  add_quiver_dim(cand);
  cand->add_flag("--oracle", opt.oracle, "use the recursive oracle");

  CLI::App* kron = app.add_subcommand("kronecker", "Kronecker classification")->fallthrough();
  kron->add_option("--n", opt.n, "arrow count")->required();
  kron->add_option("--dim", opt.dim, "dimension pair a,b")->required();

  CLI::App* moduli = app.add_subcommand("moduli", "moduli model and rationality")->fallthrough();
  add_quiver_dim(moduli);

  CLI::App* nform = app.add_subcommand("normalform",
                                       "reduce to matrices under conjugacy")->fallthrough();
  add_quiver_dim(nform);

  CLI::App* tower = app.add_subcommand("tower", "recursive reduction tree")->fallthrough();
  add_quiver_dim(tower);

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in checks")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  Json payload;
  int code = 0;
  try {
    check_config(opt);
    if (euler->parsed()) payload = run_euler(opt);
    else if (refl->parsed()) payload = run_reflect(opt);
    else if (schur->parsed()) payload = run_schur(opt);
    else if (cand->parsed()) payload = run_candecomp(opt);
    else if (kron->parsed()) payload = run_kronecker(opt);
    else if (moduli->parsed()) payload = run_moduli(opt);
    else if (nform->parsed()) payload = run_normalform(opt);
    else if (tower->parsed()) payload = run_tower(opt);
    else if (selftest->parsed()) {
      payload = run_selftest(opt);
      if (!payload["pass"].get<bool>()) code = 1;
    }
  } catch (const input_error& e) {
    payload = Json{{"error", Json{{"type", "input_error"}, {"reason", e.what()}}}};
    code = 2;
  } catch (const genericity_error& e) {
    payload = Json{{"error", Json{{"type", "genericity_error"}, {"reason", e.what()}}}};
    code = 3;
  } catch (const resource_error& e) {
    payload = Json{{"error", Json{{"type", "resource_error"}, {"reason", e.what()}}}};
    code = 3;
  } catch (const undecided_error& e) {
    payload = Json{{"error", Json{{"type", "undecided_error"}, {"reason", e.what()}}}};
    code = 3;
  } catch (const std::exception& e) {
    payload = Json{{"error", Json{{"type", "internal_error"}, {"reason", e.what()}}}};
    code = 1;
  }

  Json doc;
  doc["schema"] = "v1";
  doc["command"] = command;
  doc["config"] = config_json(opt);
  if (payload.contains("algorithm")) doc["config"]["algorithm"] = payload["algorithm"];
  for (auto& [key, value] : payload.items()) doc[key] = value;
  try {
    emit(doc, opt);
  } catch (const input_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (doc.contains("error"))
    std::cerr << command << ": " << doc["error"]["reason"].get<std::string>()
              << "\n";
  return code;
}
