// hphs: minimum-weight half-plane hitting sets from the command line.
//
// Exit codes: 0 success, 1 usage or parse error (or an invalid solution for
// `verify`), 2 infeasible instance, 3 failed internal check or oracle
// discrepancy.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hphs/generate.hpp"
#include "hphs/instance_io.hpp"
#include "hphs/oracle.hpp"
#include "hphs/solver.hpp"

namespace {

using namespace hphs;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

int thread_count(int flag) {
  if (const char* env = std::getenv("HPHS_THREADS"); env && *env) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring HPHS_THREADS='" << env << "'\n";
    }
  }
  return flag;
}

Engine engine_of(const std::string& name) { return name == "reference" ? Engine::Reference : Engine::Fast; }

// "sqrt" or "fixed:<k>" -> r (0 means sqrt).
int r_of(const std::string& mode) {
  if (mode == "sqrt") return 0;
  if (mode.starts_with("fixed:")) {
    try {
      const int r = std::stoi(mode.substr(6));
      if (r >= 1) return r;
    } catch (const std::exception&) {
    }
  }
  throw CLI::ValidationError("--r-mode", "expected 'sqrt' or 'fixed:<k>' with k >= 1");
}

Instance load(const std::string& path) {
  try {
    return read_instance_file(path);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ":" + e.what());
  }
}

struct SolveArgs {
  std::string input;
  std::string engine = "fast";
  std::string r_mode = "sqrt";
  int rho = 2;
  std::uint64_t seed = 0;
  bool check = false;
  bool candidates = false;
  std::string json_out;
  int threads = 0;
};

int cmd_solve(const SolveArgs& args) {
  const Instance inst = load(args.input);
  SolveOptions opts;
  opts.engine = engine_of(args.engine);
  opts.r = r_of(args.r_mode);
  opts.rho = args.rho;
  opts.seed = args.seed;
  opts.check_invariants = args.check;
  opts.threads = thread_count(args.threads);
  opts.keep_candidates = args.candidates;

  std::string json;
  int code = kExitOk;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Solution s = solve(inst.points, inst.halfplanes, opts);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json = solution_json(s, ms);
  } catch (const Infeasible& e) {
    std::ostringstream out;
    out << R"({"status":"infeasible","unhit":[)";
    for (std::size_t k = 0; k < e.unhit().size(); ++k) out << (k ? "," : "") << e.unhit()[k];
    out << "]}";
    json = out.str();
    std::cerr << e.what() << '\n';
    code = kExitInfeasible;
  }
  std::cout << json << '\n';
  if (!args.json_out.empty()) {
    std::ofstream out(args.json_out);
    if (!out) throw std::runtime_error("cannot write " + args.json_out);
    out << json << '\n';
  }
  return code;
}

struct GenArgs {
  GenOptions opts;
  std::string weights = "1:100";
  std::string out;
};

int cmd_gen(GenArgs args) {
  const auto colon = args.weights.find_first_of(":,");
  try {
    if (colon == std::string::npos) throw std::invalid_argument("");
    args.opts.weight_lo = std::stoll(args.weights.substr(0, colon));
    args.opts.weight_hi = std::stoll(args.weights.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--weight-range", "expected <lo>:<hi>");
  }
  const std::string text = format_instance(generate(args.opts));
  if (args.out.empty() || args.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot write " + args.out);
    out << text;
  }
  return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& solution_path) {
  const Instance inst = load(input);
  std::ifstream in(solution_path);
  if (!in) throw std::runtime_error("cannot open " + solution_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::vector<int> ids = parse_solution_points(buf.str());
  const VerifyResult v = verify(inst.points, inst.halfplanes, ids);
  if (v.ok) {
    std::cout << "valid: " << ids.size() << " points hit all " << inst.halfplanes.size() << " half-planes\n";
    return kExitOk;
  }
  if (!v.problem.empty()) {
    std::cout << "invalid: " << v.problem << '\n';
  } else {
    std::cout << "invalid: half-plane " << v.first_violated << " is not hit\n";
  }
  return kExitUsage;
}

struct OracleArgs {
  int n = 8;
  int trials = 100;
  std::uint64_t seed = 0;
  bool inject_fault = false;
};

int cmd_oracle_check(const OracleArgs& args) {
  if (args.n < 1 || args.n > oracle::kMaxCircularPoints) {
    std::cerr << "oracle-check: --n must be in [1, " << oracle::kMaxCircularPoints << "]\n";
    return kExitUsage;
  }
  // Tiny coordinate ranges force collinear points and repeated normals.
  const std::int64_t ranges[] = {3, 20, 1000};
  int feasible = 0;
  for (int t = 0; t < args.trials; ++t) {
    GenOptions g;
    g.n = args.n;
    g.seed = args.seed + static_cast<std::uint64_t>(t);
    g.coord_range = ranges[g.seed % 3];
    const Instance inst = generate(g);
    oracle::ChainOptions co;
    co.seed = g.seed;
    co.inject_fault = args.inject_fault;
    const oracle::ChainReport report = oracle::check_chain(inst, co);
    if (!report.ok()) {
      std::cerr << "discrepancy at seed " << g.seed << " (n=" << g.n << ", coord range " << g.coord_range << "):\n";
      for (const auto& d : report.discrepancies) std::cerr << "  " << d << '\n';
      std::cerr << "reproduce: hphs oracle-check --n " << args.n << " --trials 1 --seed " << g.seed << '\n';
      return kExitInternal;
    }
    feasible += report.feasible;
  }
  std::cout << "oracle-check: " << args.trials << " trials, n=" << args.n << ", " << feasible
            << " feasible, all equal\n";
  return kExitOk;
}

struct BenchArgs {
  std::vector<int> sizes{1000, 2000, 4000};
  std::string engine = "fast";
  int repeats = 1;
  std::uint64_t seed = 0;
  int kappa = 2;
  std::string csv;
  int threads = 1;
};

int cmd_bench(const BenchArgs& args) {
  std::ofstream file;
  if (!args.csv.empty() && args.csv != "-") {
    file.open(args.csv);
    if (!file) throw std::runtime_error("cannot write " + args.csv);
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  out << "n,kappa,engine,build_ms,solve_ms,total_weight,seed\n";
  std::vector<Engine> engines;
  if (args.engine != "reference") engines.push_back(Engine::Fast);
  if (args.engine != "fast") engines.push_back(Engine::Reference);
  for (int n : args.sizes) {
    for (int rep = 0; rep < args.repeats; ++rep) {
      GenOptions g;
      g.n = n;
      g.kappa = std::min(args.kappa, n);
      g.seed = args.seed + static_cast<std::uint64_t>(rep);
      g.coord_range = 1'000'000;
      g.ensure_feasible = true;
      const Instance inst = generate(g);
      for (Engine e : engines) {
        SolveOptions opts;
        opts.engine = e;
        opts.seed = g.seed;
        opts.threads = thread_count(args.threads);
        opts.keep_candidates = true;
        const Solution s = solve(inst.points, inst.halfplanes, opts);
        double build = 0;
        double run = 0;
        for (const auto& c : s.per_candidate) {
          build += c.build_ms;
          run += c.solve_ms;
        }
        out << n << ',' << s.kappa << ',' << to_string(e) << ',' << build << ',' << run << ',' << s.total_weight
            << ',' << g.seed << '\n';
        out.flush();
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-weight half-plane hitting set solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve an instance file and print the solution as JSON");
  solve->add_option("input", solve_args.input, "Instance file")->required();
  solve->add_option("--engine", solve_args.engine, "DP engine")->check(CLI::IsMember({"fast", "reference"}));
  solve->add_option("--r-mode", solve_args.r_mode, "Cutting parameter: sqrt or fixed:<k>");
  solve->add_option("--rho", solve_args.rho, "Cutting branching parameter")->check(CLI::Range(2, 64));
  solve->add_option("--seed", solve_args.seed, "Cutting seed");
  solve->add_flag("--check-invariants", solve_args.check, "Recheck engine invariants after every step");
  solve->add_flag("--candidates", solve_args.candidates, "Include the per-candidate table");
  solve->add_option("--json-out", solve_args.json_out, "Also write the JSON to this file");
  solve->add_option("--threads", solve_args.threads, "Worker threads, 0 for all cores (HPHS_THREADS overrides)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gen_args.opts.n, "Number of points")->required()->check(CLI::Range(1, 10'000'000));
  gen->add_option("--m", gen_args.opts.m, "Number of half-planes (default n)");
  gen->add_option("--coord-range", gen_args.opts.coord_range, "Coordinates in [-R, R]");
  gen->add_option("--normal-range", gen_args.opts.normal_range, "Normal components in [-D, D]");
  gen->add_option("--weight-range", gen_args.weights, "Weights <lo>:<hi>");
  gen->add_option("--seed", gen_args.opts.seed, "Random seed");
  gen->add_flag("--ensure-feasible", gen_args.opts.ensure_feasible, "Never emit an unhittable half-plane");
  gen->add_option("--kappa", gen_args.opts.kappa, "Depth of half-plane 0 (controls kappa)");
  gen->add_option("-o,--out", gen_args.out, "Output file (default stdout)");

  std::string verify_input;
  std::string verify_solution;
  auto* verify = app.add_subcommand("verify", "Check that a solution hits every half-plane");
  verify->add_option("input", verify_input, "Instance file")->required();
  verify->add_option("solution", verify_solution, "Solution JSON")->required();

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Cross-check the solver against exhaustive oracles");
  oracle_cmd->add_option("--n", oracle_args.n, "Instance size (at most 12)");
  oracle_cmd->add_option("--trials", oracle_args.trials, "Number of random instances");
  oracle_cmd->add_option("--seed", oracle_args.seed, "First seed");
  oracle_cmd->add_flag("--inject-fault", oracle_args.inject_fault, "Corrupt the fast result (tests the checker)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time both engines on kappa-controlled instances");
  bench->add_option("--sizes", bench_args.sizes, "Instance sizes")->delimiter(',');
  bench->add_option("--engine", bench_args.engine, "fast, reference or both")
      ->check(CLI::IsMember({"fast", "reference", "both"}));
  bench->add_option("--repeats", bench_args.repeats, "Instances per size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "First seed");
  bench->add_option("--kappa", bench_args.kappa, "Depth of the shallowest half-plane")->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_args.csv, "Output CSV (default stdout)");
  bench->add_option("--threads", bench_args.threads, "Worker threads (HPHS_THREADS overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*gen) return cmd_gen(gen_args);
    if (*verify) return cmd_verify(verify_input, verify_solution);
    if (*oracle_cmd) return cmd_oracle_check(oracle_args);
    if (*bench) return cmd_bench(bench_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
