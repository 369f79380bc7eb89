#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shortilp/baselines.hpp"
#include "shortilp/bench.hpp"
#include "shortilp/driver.hpp"
#include "shortilp/errors.hpp"
#include "shortilp/generate.hpp"
#include "shortilp/io.hpp"
#include "shortilp/numbers.hpp"

namespace shortilp {

namespace detail_cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline const char* violation_label(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Overload: return "overload";
    case ViolationKind::CapacityExceeded: return "capacity";
    case ViolationKind::ReleaseViolated: return "release";
    case ViolationKind::BudgetExceeded: return "budget";
    case ViolationKind::Unassigned: return "unassigned";
    case ViolationKind::IneligibleMachine: return "eligibility";
  }
  return "?";
}

// Largest scaled deadline worth probing for a rational deadline T: the
// floor of T times the speed scale, clamped into the search range.
inline std::int64_t scaled_deadline_for(const SchedulingInstance& inst,
                                        const Rational& deadline) {
  const Rational scaled = deadline * inst.lambda();
  BigInt floor_value = numerator(scaled) / denominator(scaled);
  if (numerator(scaled) < 0 &&
      floor_value * denominator(scaled) != numerator(scaled)) {
    --floor_value;
  }
  const auto [lo, hi] = makespan_bounds(inst);
  if (floor_value > hi) return hi;
  if (floor_value < lo) return lo - 1;  // below any feasible scaled deadline
  return floor_value.convert_to<std::int64_t>();
}

}  // namespace detail_cli

// Command-line front end. Returns the process exit code: 0 success, 1 a
// sound but negative outcome (infeasible decision, failed verification, no
// valid assignment at all), 2 usage or input errors, 3 resource caps.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"short-ILP makespan scheduling toolkit"};
  app.require_subcommand(1);

  std::string solve_input;
  std::string solve_decision;
  auto* solve = app.add_subcommand(
      "solve", "minimize the makespan, or decide one deadline");
  solve->add_option("--input", solve_input, "instance document")->required();
  solve->add_option("--decision", solve_decision,
                    "deadline to decide instead of optimizing (num/den)");

  std::string gen_variant;
  int gen_n = 0;
  int gen_m = 0;
  std::int64_t gen_pmax = 0;
  std::uint64_t gen_seed = 0;
  GeneratorOptions gen_opt;
  auto* gen = app.add_subcommand("generate", "emit a seeded random instance");
  gen->add_option("--variant", gen_variant, "problem variant")->required();
  gen->add_option("--n", gen_n, "job count")->required();
  gen->add_option("--m", gen_m, "machine count")->required();
  gen->add_option("--p-max", gen_pmax, "largest work")->required();
  gen->add_option("--seed", gen_seed, "PRNG seed")->required();
  gen->add_option("--speed-max", gen_opt.speed_max, "largest machine speed");
  gen->add_option("--w-max", gen_opt.w_max, "largest rejection weight");
  gen->add_option("--r-max", gen_opt.r_max, "largest release date");
  gen->add_option("--budget", gen_opt.reject_budget,
                  "rejection budget (default: sampled)");

  std::string verify_input;
  std::string verify_sched;
  std::string verify_deadline;
  auto* verify = app.add_subcommand(
      "verify", "check a schedule document against a deadline");
  verify->add_option("--input", verify_input, "instance document")->required();
  verify->add_option("--schedule", verify_sched, "schedule document")
      ->required();
  verify->add_option("--deadline", verify_deadline, "deadline (num/den)")
      ->required();

  std::string oracle_input;
  std::string oracle_method;
  auto* oracle = app.add_subcommand(
      "oracle", "exact reference optimum via a classical method");
  oracle->add_option("--input", oracle_input, "instance document")->required();
  oracle->add_option("--method", oracle_method, "brute, sahni, or hs")
      ->required()
      ->check(CLI::IsMember({"brute", "sahni", "hs"}));

  std::string bench_suite;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite to CSV");
  bench->add_option("--suite", bench_suite, "suite document")->required();
  bench->add_option("--out", bench_out, "CSV output path (default: stdout)");

  try {
    std::vector<const char*> argv;
    argv.push_back("shortilp");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  SolverConfig cfg;
  if (const char* env = std::getenv("SHORTILP_MAX_STATES")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0' || value == 0) {
      err << "SHORTILP_MAX_STATES must be a positive integer\n";
      return 2;
    }
    cfg.max_states = static_cast<std::size_t>(value);
  }

  try {
    if (solve->parsed()) {
      const auto inst = parse_instance(detail_cli::read_file(solve_input));
      if (!solve_decision.empty()) {
        const auto deadline = parse_rational(solve_decision);
        if (!deadline) {
          err << "--decision must be an integer or num/den\n";
          return 2;
        }
        const std::int64_t t =
            *deadline < 0 ? -1 : detail_cli::scaled_deadline_for(inst, *deadline);
        std::optional<Schedule> sched;
        if (t >= 0) sched = decide(inst, t, cfg);
        if (!sched) {
          out << "infeasible\n";
          return 1;
        }
        out << "feasible\n" << serialize_schedule(*sched, inst);
        return 0;
      }
      const auto res = minimize_makespan(inst, cfg);
      out << format_rational(res.makespan) << "\n"
          << serialize_schedule(res.schedule, inst);
      return 0;
    }
    if (gen->parsed()) {
      const auto variant = variant_from_name(gen_variant);
      if (!variant) {
        err << "unknown variant \"" << gen_variant << "\"\n";
        return 2;
      }
      out << serialize_instance(
          generate(*variant, gen_n, gen_m, gen_pmax, gen_seed, gen_opt));
      return 0;
    }
    if (verify->parsed()) {
      const auto inst = parse_instance(detail_cli::read_file(verify_input));
      const auto sched =
          parse_schedule(detail_cli::read_file(verify_sched), inst);
      const auto deadline = parse_rational(verify_deadline);
      if (!deadline) {
        err << "--deadline must be an integer or num/den\n";
        return 2;
      }
      const auto violations = verify_schedule(inst, sched, *deadline);
      if (violations.empty()) {
        out << "ok\n";
        return 0;
      }
      for (const Violation& v : violations) {
        out << "violation: " << detail_cli::violation_label(v.kind)
            << " index=" << v.index << " " << v.detail << "\n";
      }
      return 1;
    }
    if (oracle->parsed()) {
      const auto inst = parse_instance(detail_cli::read_file(oracle_input));
      if (oracle_method == "brute") {
        const auto res = brute_force_schedule(inst);
        if (!res) {
          err << "no valid assignment exists\n";
          return 1;
        }
        out << format_rational(res->makespan) << "\n";
        return 0;
      }
      out << format_rational(oracle_method == "sahni"
                                 ? sahni_dp(inst)
                                 : horowitz_sahni_r2(inst))
          << "\n";
      return 0;
    }
    const std::string suite_text = detail_cli::read_file(bench_suite);
    const auto base_dir =
        std::filesystem::path(bench_suite).parent_path();
    const std::string csv = run_bench(suite_text, base_dir, cfg);
    if (bench_out.empty()) {
      out << csv;
    } else {
      std::ofstream file(bench_out);
      if (!file) {
        err << "cannot write " << bench_out << "\n";
        return 2;
      }
      file << csv;
    }
    return 0;
  } catch (const StateCapExceeded& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const OracleTooLarge& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const InfeasibleInstance& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace shortilp
