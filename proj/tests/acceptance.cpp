// Acceptance runner: one pass/fail line per criterion.
//
//   acceptance                 run all criteria, exit 0 iff all pass
//   acceptance --criterion N   run criterion N only

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>

#include "jk/jk.hpp"

using namespace jk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// worst metric / first failure over a list of checks
struct Tally {
  bool pass = true;
  double worst = 0;
  std::vector<std::string> failed;

  void add(const Check& c, const std::string& where = "") {
    if (c.metric && std::isfinite(*c.metric)) worst = std::max(worst, *c.metric);
    if (!c.passed()) {
      pass = false;
      if (failed.size() < 4) failed.push_back(where + c.name);
    }
  }
  void add(const std::vector<Check>& cs, const std::string& where = "") {
    for (const auto& c : cs) add(c, where);
  }
  std::string failures() const {
    std::string s;
    for (const auto& f : failed) s += (s.empty() ? "" : ", ") + f;
    return s;
  }
};

std::vector<Check> run_task(const std::vector<Task>& tasks, const std::string& name, std::uint64_t seed) {
  for (const auto& t : tasks)
    if (t.name == name) {
      Engine eng = task_engine(seed, t.name);
      return t.run(eng);
    }
  throw std::runtime_error("no task " + name);
}

const Check& pick(const std::vector<Check>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

// ---------------------------------------------------------------------------

Outcome c1() {
  Tally t;
  SuiteParams P;
  P.trials = 200;
  for (auto s : {"gamma:2", "gamma:3", "gamma:5", "h:3:R", "h:3:C", "h:3:H", "h:3:O"}) {
    auto cs = run_task(jordan_tasks(make_algebra(s), P), "jordan.axioms", 1);
    for (auto n : {"jordan.commutativity", "jordan.jordan_identity", "jordan.self_adjoint", "jordan.unit_norm"})
      t.add(pick(cs, n), std::string(s) + ":");
  }
  return {t.pass, t.pass ? "7 algebras x 200 elements, all residuals exactly zero" : t.failures()};
}

Outcome c2() {
  Tally t;
  for (auto s : {"gamma:2", "h:3:R"}) {
    Engine eng(2);
    t.add(verify_poisson_tkk(make_algebra(s), 50, eng), std::string(s) + ":");
  }
  return {t.pass, t.pass ? "6 families x 50 tuples exact on gamma:2, h:3:R" : t.failures()};
}

Outcome c3() {
  Tally t;
  for (auto s : {"gamma:3", "h:3:R"})
    for (auto nu : {Rational(0), ratio(1, 2), Rational(1), ratio(7, 3)}) {
      Engine eng(3);
      t.add(verify_tkk_ops(make_algebra(s), nu, 30, eng), std::string(s) + " nu=" + to_string(nu) + ":");
    }
  return {t.pass, t.pass ? "6 families x 30 tuples x 4 nu, normal forms equal" : t.failures()};
}

Outcome c4() {
  Tally t;
  auto alg = make_algebra("gamma:3");
  for (auto nu : {Rational(1), ratio(alg->degree(), 2)}) {
    const std::string w = "nu=" + to_string(nu) + ":";
    for (unsigned I = 0; I <= 4; ++I) t.add(he_grading_check(alg, nu, I), w);
    for (const auto& c : lowest_weight_check(alg, nu))
      if (c.name != "lowest_weight.derivations") t.add(c, w);
  }
  return {t.pass, t.pass ? "2I + nu rho leading term for I <= 4; E_-alpha0 psi0 = 0; H_alpha0 psi0 = nu psi0" : t.failures()};
}

Outcome c5() {
  struct Row {
    const char* s;
    int str, co;
  };
  Outcome o;
  for (auto r : {Row{"gamma:3", 7, 15}, Row{"h:3:R", 9, 21}, Row{"h:3:C", 17, 35}, Row{"h:3:H", 36, 66}, Row{"h:3:O", 79, 133}}) {
    auto alg = make_algebra(r.s);
    const int ds = dim_str(alg), dc = dim_co(alg);
    o.detail += std::string(o.detail.empty() ? "" : " ") + r.s + "=(" + std::to_string(ds) + "," + std::to_string(dc) + ")";
    if (ds != r.str || dc != r.co) o.pass = false;
  }
  return o;
}

Outcome c6() {
  auto alg = make_algebra("gamma:3");
  Outcome o;
  for (unsigned I = 0; I <= 5; ++I)
    if (bound_spectrum(*alg, Rational(1), I) != Rational(-1, 2) / Rational((I + 1) * (I + 1))) o.pass = false;
  try {
    DegeneracyTable t = degeneracy_table(alg, Rational(1), 5, 0, 2024);
    std::string d;
    for (unsigned I = 0; I <= 5; ++I) {
      d += (I ? "," : "") + std::to_string(t.degeneracies[I]);
      if (t.degeneracies[I] != static_cast<int>((I + 1) * (I + 1))) o.pass = false;
    }
    o.detail = "E_I exact; degeneracies " + d + " (two sets of " + std::to_string(t.samples_per_set) + ")";
  } catch (const RankInstability& e) {
    o.pass = false;
    o.detail = e.what();
  }
  return o;
}

struct ConeCase {
  const char* s;
  int k;
};
const ConeCase kConeSet[] = {{"gamma:3", 1}, {"gamma:3", 2}, {"h:3:R", 1}, {"h:3:R", 2}, {"h:3:R", 3}, {"gamma:5", 1}, {"gamma:5", 2}};

std::vector<std::pair<std::string, std::vector<Check>>>& cone_results() {
  static std::vector<std::pair<std::string, std::vector<Check>>> res = [] {
    std::vector<std::pair<std::string, std::vector<Check>>> r;
    for (auto c : kConeSet) {
      Engine eng(7 + c.k);
      r.emplace_back(std::string(c.s) + ":", cone_checks(make_algebra(c.s), c.k, 50, 1e-8, eng));
    }
    return r;
  }();
  return res;
}

Outcome c7() {
  Tally t;
  for (const auto& [w, cs] : cone_results())
    for (const auto& c : cs)
      if (c.name.ends_with(".lambda_routes") || c.name.ends_with(".rlaplace_linear") ||
          c.name.ends_with(".rlaplace_commutator"))
        t.add(c, w);
  return {t.pass, (t.pass ? "" : t.failures() + "; ") + "worst relative error " + sci(t.worst) + " (tol 1e-08)"};
}

Outcome c8() {
  Tally dual, rank, kep;
  bool kepler_found = false;
  for (const auto& [w, cs] : cone_results())
    for (const auto& c : cs) {
      if (c.name.ends_with(".metric_duality")) dual.add(c, w);
      if (c.name.ends_with(".rank=D_k")) rank.add(c, w);
      if (w == "gamma:3:" && c.name == "cone.k=1.kepler_metric") kep.add(c, w), kepler_found = true;
    }
  bool ok = dual.pass && rank.pass && kep.pass && kepler_found;
  return {ok, "duality " + sci(dual.worst) + " (tol 1e-10), rank " + (rank.pass ? "exact" : "MISMATCH") + ", kepler " +
                  sci(kep.worst) + " (tol 1e-09)"};
}

Outcome c9() {
  Engine eng(9);
  Check m = measure_crosscheck(make_algebra("gamma:3"), 1, 10, eng, 1e-2);
  Outcome o;
  o.pass = m.passed();
  o.detail = "density ratio spread " + sci(m.metric.value_or(NAN));
  auto h3 = make_algebra("h:3:R");
  std::string cls;
  for (double nu : {0.5, 0.75, 1.0, 1.25, 1.5, 2.0}) {
    IntegrabilityProbe probe(h3->rank(), h3->degree(), nu);
    auto r = probe.probe();
    bool ok = r.finite_numeric == r.finite_predicted;
    if (nu < 1.0) ok = ok && r.decay_exponent < 0;  // slabs grow toward the boundary
    o.pass = o.pass && ok;
    char b[64];
    std::snprintf(b, sizeof b, " nu=%.2f:%s(p=%+.3f)", nu, r.finite_numeric ? "finite" : "divergent", r.decay_exponent);
    cls += b;
  }
  o.detail += ";" + cls;
  return o;
}

Outcome c10() {
  Tally t;
  for (auto s : {"gamma:2", "gamma:3"})
    for (const auto& c : lenz_checks(make_algebra(s), true))
      if (c.name == "poisson.lenz.H_A" || c.name == "poisson.lenz.H_L" || c.name == "poisson.lenz.AA+2HL")
        t.add(c, std::string(s) + ":");
  return {t.pass, t.pass ? "all three identities exact" : "nonzero: " + t.failures()};
}

// opposite-sign companion of criterion 10; informational
Outcome c10_companion() {
  Tally t;
  for (auto s : {"gamma:2", "gamma:3"})
    for (const auto& c : lenz_checks(make_algebra(s)))
      if (c.name == "poisson.lenz.AA-2HL") t.add(c, std::string(s) + ":");
  return {t.pass, t.pass ? "{A_u,A_v} - 2 H L_uv = 0 exactly on gamma:2, gamma:3" : t.failures()};
}

std::string strip_wall_time(const std::string& s) {
  static const std::regex re("\\n\\s*\"wall_time_ms\":\\s*[0-9]+,?");
  return std::regex_replace(s, re, "");
}

std::string run_cli(const std::string& args, int& rc) {
  namespace fs = std::filesystem;
  fs::path out = fs::temp_directory_path() / ("jk_accept_" + std::to_string(::getpid()) + ".json");
  std::string cmd = std::string(JK_CLI_PATH) + " " + args + " --format json --out " + out.string() + " 2>/dev/null";
  rc = std::system(cmd.c_str());
  std::ifstream is(out, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(is)), {});
  fs::remove(out);
  return s;
}

Outcome c11() {
  const std::string args = "verify --suite all --algebra gamma:3 --trials 3 --seed 11";
  int r1 = 0, r2 = 0, r3 = 0;
  std::string a = run_cli(args, r1), b = run_cli(args, r2), c = run_cli(args + " --jobs 4", r3);
  Outcome o;
  o.pass = !a.empty() && strip_wall_time(a) == strip_wall_time(b) && strip_wall_time(a) == strip_wall_time(c);
  o.detail = std::to_string(a.size()) + " bytes; run2 " + (strip_wall_time(a) == strip_wall_time(b) ? "identical" : "DIFFERS") +
             "; --jobs 4 " + (strip_wall_time(a) == strip_wall_time(c) ? "identical" : "DIFFERS");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> crit = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(crit.size())) {
    std::cerr << "criterion must be 1.." << crit.size() << "\n";
    return 2;
  }
  bool all = true;
  for (int i = 1; i <= static_cast<int>(crit.size()); ++i) {
    if (only && i != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit[i - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", i, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
    if (i == 10) {
      Outcome c = c10_companion();
      std::printf("           (info) opposite sign: %s  %s\n", c.pass ? "holds" : "fails", c.detail.c_str());
    }
  }
  return all ? 0 : 1;
}
