// lmaxsat: command-line front end.
//
//   lmaxsat solve [--prep=bce,rs] [--mode=inc] [--alg=wmsu1] FILE
//   lmaxsat preprocess [--emit-wcnf] [-o OUT] [--sidecar REC] FILE
//   lmaxsat oracle FILE
//   lmaxsat fuzz [--count N] [--seed S] [--threads T]
//
// FILE may be "-" for stdin. Exit codes: 0 optimum, 20 hard clauses
// unsatisfiable, 1 on errors.
#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "lmax/dimacs.hpp"
#include "lmax/oracle.hpp"
#include "lmax/pipeline.hpp"
#include "lmax/reduction.hpp"

using namespace lmax;

namespace {

struct Flags {
  std::string input = "-";
  std::string prep = "bce,rs";
  std::string mode = "inc";
  std::string alg = "wmsu1";
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  bool verify = true;
  bool trace = false;
  bool lenient = false;
  bool bce_soft_only = false;
  // preprocess
  bool emit_wcnf = false;
  std::string output;
  std::string sidecar;
  // fuzz
  std::size_t count = 200;
  unsigned threads = 1;
};

ParsedInstance read_input(const Flags& fl) {
  ParseOptions po;
  po.strict = !fl.lenient;
  ParsedInstance inst;
  if (fl.input == "-") {
    inst = parse_dimacs(std::cin, po);
  } else {
    std::ifstream in(fl.input);
    if (!in) throw std::runtime_error("cannot open " + fl.input);
    inst = parse_dimacs(in, po);
  }
  for (const auto& w : inst.warnings) std::cerr << "c warning: " << w << '\n';
  return inst;
}

PipelineConfig make_config(const Flags& fl) {
  PipelineConfig c;
  if (fl.prep == "none") {
  } else if (fl.prep == "bce") {
    c.bce = true;
  } else if (fl.prep == "rs") {
    c.rs = true;
  } else if (fl.prep == "bce,rs" || fl.prep == "rs,bce") {
    c.bce = c.rs = true;
  } else {
    throw CLI::ValidationError("--prep", "expected none, bce, rs or bce,rs");
  }
  if (fl.mode == "inc")
    c.mode = SolveMode::Incremental;
  else if (fl.mode == "noninc")
    c.mode = SolveMode::NonIncremental;
  else
    throw CLI::ValidationError("--mode", "expected inc or noninc");
  if (fl.alg == "wmsu1")
    c.algorithm = Algorithm::Wmsu1;
  else if (fl.alg == "fumalik")
    c.algorithm = Algorithm::FuMalik;
  else
    throw CLI::ValidationError("--alg", "expected fumalik or wmsu1");
  c.seed = fl.seed;
  c.conflict_budget = fl.budget;
  c.verify = fl.verify;
  c.bce_soft_only = fl.bce_soft_only;
  if (fl.trace) c.trace = &std::cerr;
  return c;
}

SolveStatus to_solve_status(MaxSatStatus s) {
  switch (s) {
    case MaxSatStatus::Optimum:
      return SolveStatus::Optimum;
    case MaxSatStatus::HardUnsat:
      return SolveStatus::HardUnsat;
    default:
      return SolveStatus::Unknown;
  }
}

bool unit_weights(const WCNF& f) {
  return std::all_of(f.soft.begin(), f.soft.end(), [](const SoftClause& s) { return s.weight == 1; });
}

int run_solve(const Flags& fl) {
  ParsedInstance inst = read_input(fl);
  PipelineConfig cfg = make_config(fl);
  if (cfg.algorithm == Algorithm::FuMalik && !unit_weights(inst.wcnf))
    throw std::invalid_argument("--alg=fumalik needs unit soft weights");
  PipelineResult res = solve_pipeline(inst.wcnf, cfg);
  if (fl.trace)
    std::cerr << "c iterations " << res.stats.iterations << " loads " << res.stats.database_loads << " bce "
              << res.bce_eliminated << " eliminated " << res.prep_stats.eliminated_vars << " subsumed "
              << res.prep_stats.subsumed << " strengthened " << res.prep_stats.strengthened << '\n';
  SolveStatus st = to_solve_status(res.status);
  std::cout << write_solution(res.solution, st);
  return exit_code(st);
}

void write_sidecar(std::ostream& os, const Preprocessed& pre, const Reduction* red) {
  os << "c reconstruction data\n";
  if (pre.bce) {
    os << "bce " << pre.bce->record.size() << '\n';
    write_bce_record(os, pre.bce->record);
  }
  os << "bve " << pre.prep.record.size() << '\n';
  write_bve_record(os, pre.prep.record);
  if (red) {
    os << "selectors " << red->selector.size() << '\n';
    for (const auto& [l, v] : red->selector) os << l << ' ' << v << '\n';
  }
}

int run_preprocess(const Flags& fl) {
  ParsedInstance inst = read_input(fl);
  Preprocessed pre = preprocess(inst.wcnf, make_config(fl));
  std::optional<Reduction> red;
  std::string text;
  if (fl.emit_wcnf) {
    red = lcnf_to_wcnf(pre.prep.formula);
    text = write_wcnf(red->wcnf);
  } else {
    text = pre.prep.formula.to_string();
  }

  if (fl.output.empty() || fl.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(fl.output);
    if (!out) throw std::runtime_error("cannot write " + fl.output);
    out << text;
  }
  std::string side = fl.sidecar;
  if (side.empty() && !fl.output.empty() && fl.output != "-") side = fl.output + ".rec";
  if (!side.empty()) {
    std::ofstream out(side);
    if (!out) throw std::runtime_error("cannot write " + side);
    write_sidecar(out, pre, red ? &*red : nullptr);
  }
  return 0;
}

int run_oracle(const Flags& fl) {
  ParsedInstance inst = read_input(fl);
  BruteForceResult bf = brute_force_maxsat(inst.wcnf);
  SolveStatus st = bf.hard_satisfiable ? SolveStatus::Optimum : SolveStatus::HardUnsat;
  std::cout << write_solution(bf.solution, st);
  return exit_code(st);
}

// Random WCNFs against the brute-force optimum, every configuration.
int run_fuzz(const Flags& fl) {
  std::atomic<std::size_t> next{0}, checks{0}, failures{0};
  std::mutex out_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < fl.count; i = next++) {
      std::uint64_t seed = fl.seed * 1000003 + i;
      static constexpr double kHard[] = {0.0, 0.3, 0.6};
      WCNF f = random_wcnf(seed, static_cast<Var>(1 + i % 12), 1 + (i * 7) % 25, 1 + i % 5, kHard[i % 3]);
      BruteForceResult bf = brute_force_maxsat(f);
      for (const char* prep : {"none", "bce", "rs", "bce,rs"})
        for (const char* mode : {"noninc", "inc"})
          for (const char* alg : {"fumalik", "wmsu1"}) {
            if (std::string(alg) == "fumalik" && !unit_weights(f)) continue;
            Flags local = fl;
            local.prep = prep;
            local.mode = mode;
            local.alg = alg;
            local.trace = false;
            std::string problem;
            try {
              PipelineResult r = solve_pipeline(f, make_config(local));
              bool ok = bf.hard_satisfiable
                            ? r.status == MaxSatStatus::Optimum && r.solution.cost == bf.solution.cost
                            : r.status == MaxSatStatus::HardUnsat;
              if (!ok) problem = "cost " + std::to_string(r.solution.cost) + " expected " +
                                 std::to_string(bf.solution.cost);
            } catch (const std::exception& e) {
              problem = e.what();
            }
            ++checks;
            if (!problem.empty()) {
              ++failures;
              std::lock_guard<std::mutex> lock(out_mu);
              std::cerr << "c seed " << seed << " prep=" << prep << " mode=" << mode << " alg=" << alg << ": "
                        << problem << '\n';
            }
          }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, fl.threads); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::cout << "c fuzz instances " << fl.count << " checks " << checks << " failures " << failures << '\n';
  return failures == 0 ? 0 : 1;
}

void add_pipeline_flags(CLI::App* cmd, Flags& fl) {
  cmd->add_option("file", fl.input, "WCNF or CNF file, - for stdin");
  cmd->add_option("--prep", fl.prep, "none, bce, rs or bce,rs")->capture_default_str();
  cmd->add_option("--mode", fl.mode, "inc or noninc")->capture_default_str();
  cmd->add_option("--alg", fl.alg, "fumalik (unit weights only) or wmsu1")->capture_default_str();
  cmd->add_option("--seed", fl.seed, "perturbs SAT branching");
  cmd->add_option("--budget", fl.budget, "conflicts per SAT call, 0 = unlimited");
  cmd->add_flag("--verify,!--no-verify", fl.verify, "check the reconstructed model");
  cmd->add_flag("--trace", fl.trace, "per-iteration progress on stderr");
  cmd->add_flag("--lenient", fl.lenient, "tolerate header mismatches");
  cmd->add_flag("--bce-soft-only", fl.bce_soft_only, "never eliminate hard clauses");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MaxSAT with labelled-CNF preprocessing"};
  app.require_subcommand(1);
  Flags fl;

  auto* solve = app.add_subcommand("solve", "solve a WCNF/CNF instance");
  add_pipeline_flags(solve, fl);
  auto* prep = app.add_subcommand("preprocess", "preprocess and print the labelled formula");
  add_pipeline_flags(prep, fl);
  prep->add_flag("--emit-wcnf", fl.emit_wcnf, "print the WCNF encoding of the labelled formula");
  prep->add_option("-o,--output", fl.output, "output file");
  prep->add_option("--sidecar", fl.sidecar, "reconstruction data file (default OUTPUT.rec)");
  auto* oracle = app.add_subcommand("oracle", "brute-force optimum (at most 20 variables)");
  oracle->add_option("file", fl.input, "WCNF or CNF file, - for stdin");
  oracle->add_flag("--lenient", fl.lenient, "tolerate header mismatches");
  auto* fuzz = app.add_subcommand("fuzz", "random instances against the brute-force optimum");
  fuzz->add_option("--count", fl.count, "number of instances")->capture_default_str();
  fuzz->add_option("--seed", fl.seed, "base seed");
  fuzz->add_option("--threads", fl.threads, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*solve) return run_solve(fl);
    if (*prep) return run_preprocess(fl);
    if (*oracle) return run_oracle(fl);
    if (*fuzz) return run_fuzz(fl);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const VerificationError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
