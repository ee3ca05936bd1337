// Command-line front door: construct reference objects, verify candidate
// files, run seeded searches, and replay stored certificates.
//
// Exit codes: 0 success / verification passed, 1 verification (or replay)
// failed, 2 usage or I/O error. Every run writes exactly one JSON result
// file; unless --out is given the name is content-addressed from
// (command, problem, seed, input hash) inside $QCONSTELL_CACHE_DIR.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "qcon/combinatorics.hpp"
#include "qcon/constellations.hpp"
#include "qcon/entanglement.hpp"
#include "qcon/json_io.hpp"
#include "qcon/search.hpp"
#include "qcon/tensor.hpp"
#include "qcon/types.hpp"

using namespace qcon;
using nlohmann::json;

namespace {

struct Options {
  std::string command;
  std::string problem;
  std::size_t dim = 0;
  double alpha = 0.0;
  std::size_t copies = 1;
  std::size_t bases = 3;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t restarts = 0;
  double tol = -1.0;  // negative: use the per-problem default
  int threads = 1;
  std::string input;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string result_path(const Options& opt, const std::string& input_blob) {
  if (!opt.out.empty()) return opt.out;
  const char* env = std::getenv("QCONSTELL_CACHE_DIR");
  const std::filesystem::path dir = env ? env : ".";
  std::filesystem::create_directories(dir);
  std::uint64_t h = fnv1a(opt.command);
  h = fnv1a(opt.problem, h);
  h = fnv1a(std::to_string(opt.seed), h);
  h = fnv1a(input_blob, h);
  std::ostringstream name;
  name << opt.command << "-" << opt.problem << "-" << std::hex << h << ".json";
  return (dir / name.str()).string();
}

json config_echo(const Options& opt) {
  return json{{"command", opt.command}, {"problem", opt.problem},
              {"dim", opt.dim},         {"alpha", opt.alpha},
              {"copies", opt.copies},   {"bases", opt.bases},
              {"seed", opt.seed},       {"budget", opt.budget},
              {"restarts", opt.restarts}, {"tol", opt.tol},
              {"threads", opt.threads}, {"input", opt.input}};
}

double tol_or(const Options& opt, double fallback) {
  return opt.tol >= 0.0 ? opt.tol : fallback;
}

json read_input(const Options& opt) {
  if (opt.input.empty()) throw UsageError("missing --input file");
  try {
    return io::read_json(opt.input);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot read input: ") + e.what());
  }
}

StateVector known_fiducial(std::size_t dim) {
  if (dim == 2) {
    const double ct = 1.0 / std::sqrt(3.0);
    const double a = std::sqrt((1.0 + ct) / 2.0);
    const double b = std::sqrt((1.0 - ct) / 2.0);
    return StateVector({2}, {cplx{a, 0.0},
                             b * std::exp(cplx{0.0, std::numbers::pi / 4.0})});
  }
  if (dim == 3) {
    const double s = 1.0 / std::sqrt(2.0);
    return StateVector({3}, {cplx{0.0, 0.0}, cplx{s, 0.0}, cplx{-s, 0.0}});
  }
  throw UsageError("construct sic: built-in fiducials cover --dim 2 and 3 only");
}

// ---------------------------------------------------------------- construct

json run_construct(const Options& opt) {
  json result;
  if (opt.problem == "werner") {
    if (opt.dim < 2) throw UsageError("construct werner: need --dim >= 2");
    const auto w = entanglement::werner(opt.dim, opt.alpha);
    result = io::matrix_to_json(w.rho.matrix());
    result["dims"] = std::vector<std::size_t>{opt.dim, opt.dim};
    result["alpha"] = opt.alpha;
  } else if (opt.problem == "sic") {
    result = io::state_to_json(known_fiducial(opt.dim));
  } else if (opt.problem == "mub") {
    const auto set = constellations::mub_prime(opt.dim);
    result["dim"] = set.dim;
    json bases = json::array();
    for (const auto& b : set.bases) bases.push_back(io::matrix_to_json(b));
    result["bases"] = std::move(bases);
  } else if (opt.problem == "hadamard") {
    if (opt.dim < 2) throw UsageError("construct hadamard: need --dim >= 2");
    result = io::matrix_to_json(constellations::fourier_matrix(opt.dim));
  } else if (opt.problem == "latin") {
    const auto [a, b] = combinatorics::graeco_latin(opt.dim);
    result["order"] = opt.dim;
    result["a"] = io::latin_to_json(a);
    result["b"] = io::latin_to_json(b);
  } else if (opt.problem == "oqls") {
    const auto [a, b] = combinatorics::graeco_latin(opt.dim);
    result = io::table_to_json(combinatorics::product_table_from_graeco(a, b));
  } else if (opt.problem == "two-unitary") {
    const auto [a, b] = combinatorics::graeco_latin(opt.dim);
    result = io::matrix_to_json(combinatorics::permutation_from_graeco(a, b));
    result["dim"] = opt.dim;
  } else if (opt.problem == "ame") {
    const auto [a, b] = combinatorics::graeco_latin(opt.dim);
    const auto cand = combinatorics::ame4_from_two_unitary(
        combinatorics::permutation_from_graeco(a, b), opt.dim);
    result = io::state_to_json(cand.state);
  } else {
    throw UsageError("unknown construct problem: " + opt.problem);
  }
  return result;
}

// ------------------------------------------------------------------ verify

std::size_t infer_dim(const Options& opt, const json& in) {
  if (in.contains("dim")) return in.at("dim").get<std::size_t>();
  if (opt.dim > 0) return opt.dim;
  throw UsageError("cannot infer --dim from the input file");
}

CheckReport run_verify(const Options& opt, const json& in, json* extra) {
  if (opt.problem == "sic") {
    const StateVector fid = io::state_from_json(in);
    return constellations::verify_sic(constellations::sic_orbit(fid),
                                      tol_or(opt, 1e-10));
  }
  if (opt.problem == "mub") {
    constellations::MubSet set{in.at("dim").get<std::size_t>(), {}};
    for (const auto& b : in.at("bases"))
      set.bases.push_back(io::matrix_from_json(b));
    return constellations::verify_mub(set, tol_or(opt, 1e-10));
  }
  if (opt.problem == "hadamard")
    return constellations::verify_complex_hadamard(io::matrix_from_json(in),
                                                   tol_or(opt, 1e-10));
  if (opt.problem == "latin") {
    if (in.contains("a") && in.contains("b"))
      return combinatorics::verify_graeco_latin(io::latin_from_json(in.at("a")),
                                                io::latin_from_json(in.at("b")));
    return combinatorics::verify_latin(io::latin_from_json(in));
  }
  if (opt.problem == "oqls")
    return combinatorics::verify_oqls(io::table_from_json(in),
                                      tol_or(opt, 1e-10));
  if (opt.problem == "two-unitary")
    return combinatorics::verify_two_unitary(io::matrix_from_json(in),
                                             infer_dim(opt, in),
                                             tol_or(opt, 1e-10));
  if (opt.problem == "ame") {
    const StateVector state = io::state_from_json(in);
    const auto& dims = state.dims();
    for (std::size_t d : dims)
      if (d != dims.front())
        throw UsageError("verify ame: all local dimensions must agree");
    return combinatorics::verify_ame(
        combinatorics::AmeCandidate{dims.size(), dims.front(), state},
        tol_or(opt, 1e-10));
  }
  if (opt.problem == "werner") {
    const ComplexMatrix m = io::matrix_from_json(in);
    const auto dims = in.at("dims").get<std::vector<std::size_t>>();
    const double alpha = in.contains("alpha") ? in.at("alpha").get<double>()
                                              : opt.alpha;
    const auto reference = entanglement::werner(dims.at(0), alpha);
    const double dev = max_abs_diff(m, reference.rho.matrix());
    if (extra)
      (*extra)["labels"] = entanglement::classify_werner(dims.at(0), alpha);
    return make_report(dev, tol_or(opt, 1e-12));
  }
  if (opt.problem == "dichotomic") {
    const ComplexMatrix m = io::matrix_from_json(in);
    const auto dims = in.at("dims").get<std::vector<std::size_t>>();
    return entanglement::dichotomic_check(DensityMatrix(dims, m),
                                          tol_or(opt, 1e-10));
  }
  throw UsageError("unknown verify problem: " + opt.problem);
}

// ------------------------------------------------------------------ search

struct SearchSetup {
  std::unique_ptr<search::Manifold> manifold;
  search::Objective objective;
};

SearchSetup search_setup(const std::string& problem, const Options& opt) {
  SearchSetup s;
  if (problem == "sic") {
    if (opt.dim < 2) throw UsageError("search sic: need --dim >= 2");
    s.manifold = search::unit_sphere(opt.dim);
    s.objective = constellations::sic_objective(opt.dim);
  } else if (problem == "mub") {
    if (opt.dim < 2 || opt.bases < 2)
      throw UsageError("search mub: need --dim >= 2 and --bases >= 2");
    std::vector<std::unique_ptr<search::Manifold>> parts;
    for (std::size_t i = 1; i < opt.bases; ++i)
      parts.push_back(search::unitary_group(opt.dim));
    s.manifold = search::product(std::move(parts));
    s.objective = constellations::mub_objective(opt.dim, opt.bases);
  } else if (problem == "two-unitary") {
    if (opt.dim < 2) throw UsageError("search two-unitary: need --dim >= 2");
    s.manifold = search::unitary_group(opt.dim * opt.dim);
    s.objective = combinatorics::two_unitary_objective(opt.dim);
  } else if (problem == "ksum") {
    s.manifold = search::traceless_pair(4, 0.25);
    s.objective = entanglement::ks_violation_objective();
  } else {
    throw UsageError("unknown search problem: " + problem);
  }
  return s;
}

json run_search(const Options& opt) {
  const std::size_t restarts =
      opt.restarts > 0 ? opt.restarts : (opt.budget > 0 ? opt.budget : 100);
  json result;

  if (opt.problem == "distill") {
    if (opt.dim < 2 || opt.dim > 4)
      throw UsageError("search distill: need 2 <= --dim <= 4");
    const auto w = entanglement::werner(opt.dim, opt.alpha);
    const auto res =
        entanglement::search_distillable(w.rho, opt.copies, restarts, opt.seed);
    result["certificate"] = io::certificate_to_json(res.certificate);
    result["verdict"] = res.verdict;
    result["tol_eig"] = res.tol_eig;
    result["best_value"] = res.certificate.best_value;
    std::cout << "distill d=" << opt.dim << " alpha=" << opt.alpha
              << " copies=" << opt.copies
              << ": best value " << res.certificate.best_value << ", verdict "
              << res.verdict << "\n";
    return result;
  }

  SearchSetup setup = search_setup(opt.problem, opt);
  search::MinimizeConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  const auto cert =
      search::minimize(opt.problem, setup.objective, *setup.manifold, cfg);
  result["certificate"] = io::certificate_to_json(cert);
  result["best_value"] = cert.best_value;

  if (opt.problem == "ksum") {
    const double max_value = -cert.best_value;
    result["max_value"] = max_value;
    result["verdict"] =
        max_value > 0.5 + 1e-8 ? "violation" : "no-violation-found";
  }
  std::cout << opt.problem << " search: best value " << cert.best_value
            << " over " << cert.restarts_executed << " restarts\n";
  return result;
}

// ------------------------------------------------------------------ replay

int run_replay(const Options& opt, json& result) {
  const json in = read_input(opt);
  if (!in.contains("certificate"))
    throw UsageError("replay: input file has no certificate");
  const auto cert = io::certificate_from_json(in.at("certificate"));
  const json cfg_echo = in.at("config");

  Options stored;
  stored.problem = cfg_echo.at("problem").get<std::string>();
  stored.dim = cfg_echo.at("dim").get<std::size_t>();
  stored.alpha = cfg_echo.at("alpha").get<double>();
  stored.copies = cfg_echo.at("copies").get<std::size_t>();
  stored.bases = cfg_echo.at("bases").get<std::size_t>();

  double replayed = 0.0;
  if (stored.problem == "distill") {
    const auto w = entanglement::werner(stored.dim, stored.alpha);
    const auto res = entanglement::search_distillable(
        w.rho, stored.copies, cert.config.restarts, cert.seed);
    replayed = res.certificate.best_value;
  } else {
    SearchSetup setup = search_setup(stored.problem, stored);
    const auto redo =
        search::minimize(cert.problem, setup.objective, *setup.manifold,
                         cert.config);
    replayed = redo.best_value;
  }

  const bool identical = replayed == cert.best_value;
  result["replayed_value"] = replayed;
  result["stored_value"] = cert.best_value;
  result["identical"] = identical;
  std::cout << "replay of " << stored.problem << ": stored " << cert.best_value
            << ", replayed " << replayed
            << (identical ? " (bit-identical)" : " (MISMATCH)") << "\n";
  return identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constellation and entanglement toolbox"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--problem", opt.problem);
    sub->add_option("--dim", opt.dim);
    sub->add_option("--alpha", opt.alpha);
    sub->add_option("--copies", opt.copies);
    sub->add_option("--bases", opt.bases);
    sub->add_option("--seed", opt.seed);
    sub->add_option("--budget", opt.budget);
    sub->add_option("--restarts", opt.restarts);
    sub->add_option("--tol", opt.tol);
    sub->add_option("--threads", opt.threads);
    sub->add_option("--input", opt.input);
    sub->add_option("--out", opt.out);
  };
  for (const char* name : {"construct", "verify", "search", "replay"})
    add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  json result;
  int code = 0;
  std::string input_blob;
  try {
    if (opt.command == "construct") {
      if (opt.problem.empty()) throw UsageError("missing --problem");
      result = run_construct(opt);
      std::cout << "constructed " << opt.problem << "\n";
    } else if (opt.command == "verify") {
      if (opt.problem.empty()) throw UsageError("missing --problem");
      const json in = read_input(opt);
      input_blob = in.dump();
      json extra;
      const CheckReport rep = run_verify(opt, in, &extra);
      result["report"] = io::report_to_json(rep);
      if (!extra.empty()) result.update(extra);
      code = rep.passed ? 0 : 1;
      std::cout << "verify " << opt.problem << ": "
                << (rep.passed ? "pass" : "FAIL") << " (residual "
                << rep.max_residual << ", tol " << rep.tolerance_used << ")\n";
    } else if (opt.command == "search") {
      if (opt.problem.empty()) throw UsageError("missing --problem");
      result = run_search(opt);
    } else {
      code = run_replay(opt, result);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  result["command"] = opt.command;
  result["problem"] = opt.problem;
  result["config"] = config_echo(opt);
  try {
    const std::string path = result_path(opt, input_blob);
    io::write_atomic(path, result);
    std::cout << "result: " << path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write result: " << e.what() << "\n";
    return 2;
  }
  return code;
}
