// Command-line front end. Exit codes: 0 all checks passed, 1 a check failed,
// 2 I/O or parse error, 3 usage error.

#include "opsys/dilation.hpp"
#include "opsys/error.hpp"
#include "opsys/matrix_io.hpp"
#include "opsys/radius.hpp"
#include "opsys/random.hpp"
#include "opsys/report.hpp"
#include "opsys/schatten.hpp"
#include "opsys/suites.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SCHATTEN_OPSYS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SCHATTEN_OPSYS_SEED is not an unsigned integer");
    }
  }
  return 0;
}

opsys::Exponent parse_exponent(const std::string& text) {
  try {
    return opsys::Exponent::parse(text);
  } catch (const opsys::Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_exponent(item).p());
  if (grid.empty()) throw UsageError("--p needs at least one exponent");
  return grid;
}

std::string format_fixed12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", value);
  return buf;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw opsys::Error(opsys::ErrorCode::Parse, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct NormArgs {
  std::string input;
  std::string p = "2";
  bool json = false;
};

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 0;
  int count = 20;
  std::string p_grid;
  bool json = false;
  bool csv = false;
  std::string out;
  int jobs = 1;
  int restarts = 8;
  double tol = -1.0;
  bool timing = false;
};

struct GenArgs {
  std::string kind;
  long n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct RadiusArgs {
  std::string input;
  std::string p = "2";
  std::string method = "closed";
  int restarts = 8;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_norm(const NormArgs& args) {
  const opsys::Exponent p = parse_exponent(args.p);
  const opsys::ComplexMatrix a = opsys::read_matrix_file(args.input);
  const double norm = opsys::schatten_norm(a, p);
  std::cout << format_fixed12(norm) << '\n';
  if (args.json) {
    opsys::VerificationReport report;
    report.check_name = "norm";
    report.set_input("rows", a.rows());
    report.set_input("cols", a.cols());
    report.set_input("p", opsys::exponent_value(p.p()));
    report.add_quantity("norm", norm);
    report.finalize();
    std::cout << report.to_json() << '\n';
  }
  return kExitOk;
}

int run_verify(const VerifyArgs& args) {
  if (!opsys::is_suite_name(args.suite)) throw UsageError("unknown suite '" + args.suite + "'");
  if (args.count < 1) throw UsageError("--count must be at least 1");
  if (args.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (args.restarts < 1) throw UsageError("--restarts must be at least 1");
  if (args.json && args.csv) throw UsageError("--json and --csv are exclusive");

  opsys::SuiteOptions options;
  options.seed = args.seed;
  options.count = args.count;
  if (!args.p_grid.empty()) options.p_grid = parse_grid(args.p_grid);
  options.jobs = args.jobs;
  options.restarts = args.restarts;
  options.rank_tol = args.tol;
  options.timing = args.timing;

  const auto reports = opsys::run_suite(args.suite, options);
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.passed ? 0 : 1;

  Output out(args.out);
  std::ostream& os = out.stream();
  if (args.csv) {
    os << opsys::VerificationReport::csv_header() << '\n';
    for (const auto& r : reports) os << r.to_csv_row() << '\n';
  } else {
    for (const auto& r : reports) os << r.to_json() << '\n';
    opsys::Json summary = opsys::Json::object();
    summary["suite"] = args.suite;
    summary["seed"] = args.seed;
    summary["count"] = args.count;
    summary["reports"] = reports.size();
    summary["failed"] = failed;
    summary["passed"] = failed == 0;
    opsys::Json wrapper = opsys::Json::object();
    wrapper["summary"] = std::move(summary);
    os << opsys::dump_json(wrapper) << '\n';
  }
  std::cerr << reports.size() << " reports, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int run_gen(const GenArgs& args) {
  if (args.n < 1) throw UsageError("--n must be at least 1");
  opsys::MatrixKind kind;
  try {
    kind = opsys::parse_matrix_kind(args.kind);
  } catch (const opsys::Error& e) {
    throw UsageError(e.what());
  }
  const opsys::ComplexMatrix a = opsys::generate(kind, args.n, args.seed);
  Output out(args.out);
  out.stream() << opsys::matrix_to_json(a) << '\n';
  return kExitOk;
}

int run_radius(const RadiusArgs& args) {
  const opsys::Exponent p = parse_exponent(args.p);
  if (args.restarts < 1) throw UsageError("--restarts must be at least 1");
  const opsys::ComplexMatrix x = opsys::read_matrix_file(args.input);
  if (x.rows() != x.cols()) throw opsys::Error(opsys::ErrorCode::Parse, "radius needs a square matrix");

  opsys::VerificationReport report;
  report.check_name = "radius";
  report.set_input("n", x.rows());
  report.set_input("p", opsys::exponent_value(p.p()));
  report.set_input("method", args.method);

  double value = 0.0;
  if (args.method == "closed") {
    value = opsys::nu_p(x, p);
  } else if (args.method == "witness") {
    if (p.is_infinite()) throw UsageError("the witness method needs a finite p");
    if (opsys::operator_norm(x) > 0.0) {
      const opsys::StateFunctional w = opsys::witness_functional(x, p);
      value = opsys::radius_prefactor(p) * w.evaluate(opsys::off_diagonal(x));
      report.add_residual("witness_psd", w.psd_violation(), 1e-10);
      report.add_residual("witness_norm_excess", w.norm_excess(), 1e-10);
    }
  } else if (args.method == "bruteforce") {
    opsys::BruteforceOptions options;
    options.restarts = args.restarts;
    options.seed = args.seed;
    const opsys::BruteforceResult result = opsys::nu_p_bruteforce(x, p, options);
    value = result.value;
    const double psd = result.witness.psd_violation();
    const double excess = result.witness.norm_excess();
    report.add_residual("witness_psd", psd, 1e-12);
    report.add_residual("witness_norm_excess", excess, 1e-12);
    std::cout << format_fixed12(value) << '\n';
    std::cout << "witness_psd_violation " << opsys::format_g17(psd) << '\n';
    std::cout << "witness_norm_excess " << opsys::format_g17(excess) << '\n';
  } else {
    throw UsageError("unknown method '" + args.method + "'");
  }
  if (args.method != "bruteforce") std::cout << format_fixed12(value) << '\n';
  report.add_quantity("nu", value);
  const bool ok = report.finalize();
  if (args.json) std::cout << report.to_json() << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schatten-class operator system toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "Schatten p-norm of a matrix file");
  norm_cmd->add_option("input", norm.input, "MatrixFile JSON")->required();
  norm_cmd->add_option("--p", norm.p, "exponent >= 1 or 'inf'");
  norm_cmd->add_flag("--json", norm.json, "also print a JSON report");

  VerifyArgs verify;
  verify.seed = seed;
  auto* verify_cmd = app.add_subcommand("verify", "Run a seeded verification suite");
  verify_cmd->add_option("--suite", verify.suite,
                         "calculus|power|spectral|doubling|theorem|tightness|duality|all")
      ->required();
  verify_cmd->add_option("--seed", verify.seed, "base seed (default $SCHATTEN_OPSYS_SEED or 0)");
  verify_cmd->add_option("--count", verify.count, "random cases per suite");
  verify_cmd->add_option("--p", verify.p_grid, "comma-separated exponents (default 1,1.5,2,3,7.3)");
  verify_cmd->add_flag("--json", verify.json, "JSON lines output (default)");
  verify_cmd->add_flag("--csv", verify.csv, "CSV output");
  verify_cmd->add_option("--out", verify.out, "output file (default stdout)");
  verify_cmd->add_option("--jobs", verify.jobs, "worker threads");
  verify_cmd->add_option("--restarts", verify.restarts, "optimizer restarts");
  verify_cmd->add_option("--tol", verify.tol, "relative rank tolerance for polar forms");
  verify_cmd->add_flag("--timing", verify.timing, "record wall time in elapsed_ms");

  GenArgs gen;
  gen.seed = seed;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random matrix");
  gen_cmd->add_option("--kind", gen.kind, "ginibre|hermitian|psd|rankdef")->required();
  gen_cmd->add_option("--n", gen.n, "size")->required();
  gen_cmd->add_option("--seed", gen.seed, "seed (default $SCHATTEN_OPSYS_SEED or 0)");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  RadiusArgs radius;
  radius.seed = seed;
  auto* radius_cmd = app.add_subcommand("radius", "Modified numerical radius nu_p");
  radius_cmd->add_option("input", radius.input, "MatrixFile JSON")->required();
  radius_cmd->add_option("--p", radius.p, "exponent >= 1 or 'inf'");
  radius_cmd->add_option("--method", radius.method, "closed|witness|bruteforce");
  radius_cmd->add_option("--restarts", radius.restarts, "bruteforce restarts");
  radius_cmd->add_option("--seed", radius.seed, "bruteforce seed");
  radius_cmd->add_flag("--json", radius.json, "also print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*norm_cmd) return run_norm(norm);
    if (*verify_cmd) return run_verify(verify);
    if (*gen_cmd) return run_gen(gen);
    if (*radius_cmd) return run_radius(radius);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const opsys::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == opsys::ErrorCode::Parse || e.code() == opsys::ErrorCode::NonFinite
               ? kExitIo
               : kExitCheckFailed;
  }
  return kExitUsage;
}
