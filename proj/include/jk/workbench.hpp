#pragma once
// Workbench front end: configuration, suite execution across a worker pool,
// spectrum and info tables.

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "jk/suites.hpp"

namespace jk {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string algebra = "gamma:3";
  std::string suite = "all";
  int trials = 20;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::optional<std::string> nu;
  unsigned levels = 4;
  int jobs = 1;

  void validate() const {
    if (trials < 1) throw UsageError("--trials must be >= 1");
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    if (jobs < 1) throw UsageError("--jobs must be >= 1");
    const auto& names = suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
      throw UsageError("unknown suite '" + suite + "' (jordan, tkk, poisson, operators, cone, measure, all)");
  }

  json params() const {
    json p;
    p["trials"] = trials;
    p["seed"] = seed;
    p["tol"] = tol;
    p["nu"] = nu ? json(*nu) : json(nullptr);
    p["levels"] = levels;
    return p;
  }
};

/// Reads a JSON config whose keys mirror the long flags.
inline SuiteConfig config_from_json(const json& j, SuiteConfig c = {}) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "algebra") c.algebra = v.get<std::string>();
    else if (k == "suite") c.suite = v.get<std::string>();
    else if (k == "trials") c.trials = v.get<int>();
    else if (k == "seed") c.seed = v.get<std::uint64_t>();
    else if (k == "tol") c.tol = v.get<double>();
    else if (k == "nu") c.nu = v.is_string() ? v.get<std::string>() : v.dump();
    else if (k == "levels") c.levels = v.get<unsigned>();
    else if (k == "jobs") c.jobs = v.get<int>();
    else if (k == "format" || k == "out") continue;  // handled by the CLI
    else throw UsageError("unknown config key '" + k + "'");
  }
  return c;
}

/// Parses an algebra spec, rethrowing with the grammar attached.
inline AlgebraPtr algebra_or_usage(const std::string& spec) {
  try {
    return make_algebra(spec);
  } catch (const SpecificationError& e) {
    throw UsageError(std::string(e.what()) + "\n  grammar: " + kSpecGrammar);
  }
}

/// FNV-1a; stable across platforms.
inline std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

inline Engine task_engine(std::uint64_t seed, const std::string& task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stable_hash(task)), static_cast<std::uint32_t>(stable_hash(task) >> 32)};
  return Engine(seq);
}

/// Runs tasks on `jobs` threads; results are merged and sorted by check name.
inline std::vector<Check> run_tasks(const std::vector<Task>& tasks, std::uint64_t seed, int jobs) {
  std::vector<std::vector<Check>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        Engine eng = task_engine(seed, tasks[i].name);
        results[i] = tasks[i].run(eng);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Check> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::stable_sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return out;
}

inline Report run(const SuiteConfig& cfg) {
  cfg.validate();
  AlgebraPtr alg = algebra_or_usage(cfg.algebra);
  SuiteParams P;
  P.trials = cfg.trials;
  P.tol = cfg.tol;
  P.levels = cfg.levels;
  if (cfg.nu) {
    P.nus.push_back(parse_nu(*cfg.nu, *alg));
    WallachParam::classify(*alg, P.nus.back());  // user values must lie in the Wallach set
  }
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.suite = cfg.suite;
  r.algebra = alg->spec().str();
  r.params = cfg.params();
  r.checks = run_tasks(suite_tasks(cfg.suite, alg, P), cfg.seed, cfg.jobs);
  r.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumRow {
  unsigned I;
  Rational energy;
  std::optional<int> degeneracy;
};

struct Spectrum {
  std::string algebra;
  WallachParam nu;
  std::vector<SpectrumRow> rows;
};

inline Spectrum spectrum(const std::string& spec, const std::string& nu_text, unsigned levels, bool degeneracies,
                         std::uint64_t seed) {
  AlgebraPtr alg = algebra_or_usage(spec);
  Rational nu = parse_nu(nu_text, *alg);
  Spectrum s{alg->spec().str(), WallachParam::classify(*alg, nu), {}};
  std::optional<DegeneracyTable> table;
  if (degeneracies && levels > 0) table = degeneracy_table(alg, nu, levels - 1, 0, seed);
  for (unsigned I = 0; I < levels; ++I) {
    SpectrumRow row{I, bound_spectrum(*alg, nu, I), std::nullopt};
    if (table) row.degeneracy = table->degeneracies[I];
    s.rows.push_back(row);
  }
  return s;
}

inline json to_json(const Spectrum& s) {
  json j;
  j["algebra"] = s.algebra;
  j["nu"] = to_string(s.nu.value);
  j["nu_kind"] = s.nu.kind == WallachParam::Kind::Discrete ? "discrete" : "continuous";
  j["rho_of_nu"] = s.nu.rho_of_nu;
  j["levels"] = json::array();
  for (const auto& r : s.rows) {
    json l{{"I", r.I}, {"energy", to_string(r.energy)}, {"energy_float", r.energy.get_d()}};
    l["degeneracy"] = r.degeneracy ? json(*r.degeneracy) : json(nullptr);
    j["levels"].push_back(l);
  }
  return j;
}

inline void emit(const Spectrum& s, Format f, std::ostream& os) {
  if (f == Format::Json) {
    os << to_json(s).dump(2) << "\n";
    return;
  }
  os << "algebra: " << s.algebra << "   nu = " << s.nu.describe() << "\n";
  os << "  I  E_I            E_I (float)      degeneracy\n";
  for (const auto& r : s.rows) {
    std::ostringstream e;
    e << std::setprecision(10) << r.energy.get_d();
    os << std::right << std::setw(3) << r.I << "  " << std::left << std::setw(14) << to_string(r.energy) << std::setw(17)
       << e.str() << (r.degeneracy ? std::to_string(*r.degeneracy) : "-") << "\n";
  }
}

// ---------------------------------------------------------------------------
// info

inline json info(const std::string& spec) {
  AlgebraPtr alg = algebra_or_usage(spec);
  const int rho = alg->rank(), d = alg->degree();
  json j;
  j["algebra"] = alg->spec().str();
  j["name"] = alg->spec().display_name();
  j["rho"] = rho;
  j["delta"] = d;
  j["n"] = alg->dim();
  const int ds = dim_str(alg);
  j["dim_str"] = ds;
  j["dim_co"] = 2 * alg->dim() + ds;
  j["wallach_threshold"] = to_string(ratio((rho - 1) * d, 2));
  json cones = json::array();
  for (int k = 1; k <= rho; ++k) cones.push_back({{"k", k}, {"D_k", cone_dimension(rho, d, k)}});
  j["cones"] = cones;
  j["basis"] = alg->labels();
  return j;
}

inline void emit_info(const json& j, Format f, std::ostream& os) {
  if (f == Format::Json) {
    os << j.dump(2) << "\n";
    return;
  }
  os << j["name"].get<std::string>() << "  (" << j["algebra"].get<std::string>() << ")\n"
     << "  rho = " << j["rho"] << ", delta = " << j["delta"] << ", n = " << j["n"] << "\n"
     << "  dim str = " << j["dim_str"] << ", dim co = " << j["dim_co"] << "\n"
     << "  continuous Wallach range: nu > " << j["wallach_threshold"].get<std::string>() << "\n"
     << "  canonical cones:";
  for (const auto& c : j["cones"]) os << "  D_" << c["k"] << " = " << c["D_k"];
  os << "\n";
}

}  // namespace jk
