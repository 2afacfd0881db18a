// jk: command-line front end for the Jordan/Kepler workbench.
//
//   jk verify   --suite S --algebra A [--trials N --seed S --tol T --nu NU --levels L --jobs J]
//   jk spectrum --algebra A --nu NU [--levels L --degeneracies]
//   jk info     --algebra A
//
// Common: --format text|json, --out FILE. verify also takes --config FILE
// (JSON with keys mirroring the flags; flags win). JK_SEED is the seed
// fallback. Exit status: 0 all checks pass, 1 a check failed, 2 usage
// error, 3 domain error, 4 anything unexpected.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "jk/jk.hpp"

namespace {

jk::Format parse_format(const std::string& s) {
  if (s == "text") return jk::Format::Text;
  if (s == "json") return jk::Format::Json;
  throw jk::UsageError("--format must be text or json");
}

// Writes to --out when given, stdout otherwise.
template <class F>
void with_output(const std::string& out, F&& f) {
  if (out.empty()) {
    f(std::cout);
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw jk::UsageError("cannot open --out file '" + out + "'");
  f(os);
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("JK_SEED");
  if (!s || !*s) return fallback;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw jk::UsageError("JK_SEED must be a non-negative integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jordan algebra / generalized Kepler workbench"};
  app.require_subcommand(1);

  std::string format = "text", out, algebra = "gamma:3", config_path, suite = "all", nu;
  int trials = 20, jobs = 1;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  unsigned levels = 4;
  bool degeneracies = false;

  auto common = [&](CLI::App* c) {
    c->add_option("--algebra,-a", algebra, std::string("algebra spec: ") + jk::kSpecGrammar);
    c->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out,-o", out, "write output to a file");
  };

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_option("--suite,-s", suite, "jordan, tkk, poisson, operators, cone, measure or all");
  verify->add_option("--trials,-n", trials, "random trials (points for float suites)");
  verify->add_option("--seed", seed, "master seed (fallback: JK_SEED, then 1)");
  verify->add_option("--tol", tol, "float tolerance");
  verify->add_option("--nu", nu, "Wallach parameter: rational, decimal, d:k or k*delta/2");
  verify->add_option("--levels", levels, "highest grading level checked");
  verify->add_option("--jobs,-j", jobs, "worker threads");
  verify->add_option("--config", config_path, "JSON config; explicit flags override it");

  CLI::App* spec = app.add_subcommand("spectrum", "bound-state energies and degeneracies");
  common(spec);
  spec->add_option("--nu", nu, "Wallach parameter")->required();
  spec->add_option("--levels", levels, "number of levels");
  spec->add_option("--seed", seed, "sampling seed for degeneracies (fallback: JK_SEED, then 1)");
  spec->add_flag("--degeneracies", degeneracies, "compute degeneracies by restriction rank");

  CLI::App* info = app.add_subcommand("info", "algebra invariants and Lie dimensions");
  common(info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    jk::Format fmt = parse_format(format);
    if (*verify) {
      jk::SuiteConfig cfg;
      if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw jk::UsageError("cannot read --config file '" + config_path + "'");
        jk::json j;
        try {
          j = jk::json::parse(is);
        } catch (const jk::json::exception& e) {
          throw jk::UsageError(std::string("--config: ") + e.what());
        }
        cfg = jk::config_from_json(j);
        if (j.contains("format") && !verify->count("--format")) fmt = parse_format(j["format"].get<std::string>());
        if (j.contains("out") && !verify->count("--out")) out = j["out"].get<std::string>();
        if (!j.contains("seed")) cfg.seed = env_seed(cfg.seed);
      } else {
        cfg.seed = env_seed(cfg.seed);
      }
      if (verify->count("--algebra")) cfg.algebra = algebra;
      if (verify->count("--suite")) cfg.suite = suite;
      if (verify->count("--trials")) cfg.trials = trials;
      if (verify->count("--seed")) cfg.seed = seed;
      if (verify->count("--tol")) cfg.tol = tol;
      if (verify->count("--nu")) cfg.nu = nu;
      if (verify->count("--levels")) cfg.levels = levels;
      if (verify->count("--jobs")) cfg.jobs = jobs;
      jk::Report r = jk::run(cfg);
      with_output(out, [&](std::ostream& os) { jk::emit(r, fmt, os); });
      return r.passed() ? 0 : 1;
    }
    if (*spec) {
      if (!spec->count("--seed")) seed = env_seed(seed);
      jk::Spectrum s = jk::spectrum(algebra, nu, levels, degeneracies, seed);
      with_output(out, [&](std::ostream& os) { jk::emit(s, fmt, os); });
      return 0;
    }
    if (*info) {
      jk::json j = jk::info(algebra);
      with_output(out, [&](std::ostream& os) { jk::emit_info(j, fmt, os); });
      return 0;
    }
  } catch (const jk::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const jk::SpecificationError& e) {
    std::cerr << "usage error: " << e.what() << "\n  grammar: " << jk::kSpecGrammar << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
