#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shortilp/baselines.hpp"
#include "shortilp/driver.hpp"
#include "shortilp/errors.hpp"
#include "shortilp/generate.hpp"
#include "shortilp/instance.hpp"
#include "shortilp/io.hpp"
#include "shortilp/numbers.hpp"

namespace shortilp {

struct BenchRecord {
  std::string id;
  Variant variant = Variant::QCmax;
  int n = 0;
  int m = 0;
  std::int64_t p_max = 0;
  std::string method;
  std::int64_t ns = 0;
  std::string cstar;
  int probes = 0;
};

namespace detail_bench {

using nlohmann::json;

// Methods measuring the same instance must report the same optimum; a
// difference is a bug in one of them, never acceptable noise.
inline void require_agreement(const std::vector<BenchRecord>& records) {
  for (std::size_t a = 1; a < records.size(); ++a) {
    if (records[a].cstar != records[0].cstar) {
      throw std::logic_error(
          "method disagreement on instance \"" + records[a].id + "\": " +
          records[0].method + " found " + records[0].cstar + " but " +
          records[a].method + " found " + records[a].cstar);
    }
  }
}

inline SchedulingInstance load_run_instance(const json& run,
                                            const std::string& id,
                                            const std::filesystem::path& dir) {
  const bool has_file = run.contains("file");
  const bool has_gen = run.contains("generate");
  if (has_file == has_gen) {
    throw ParseError("run \"" + id +
                     "\": exactly one of \"file\" or \"generate\" required");
  }
  if (has_file) {
    if (!run.at("file").is_string()) {
      throw ParseError("run \"" + id + "\": file must be a string");
    }
    std::filesystem::path path = run.at("file").get<std::string>();
    if (path.is_relative()) path = dir / path;
    std::ifstream in(path);
    if (!in) {
      throw ParseError("run \"" + id + "\": cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_instance(text.str());
  }
  const json& spec = run.at("generate");
  if (!spec.is_object()) {
    throw ParseError("run \"" + id + "\": generate must be an object");
  }
  detail_io::reject_unknown(spec, "run \"" + id + "\".generate",
                            {"variant", "n", "m", "p_max", "seed", "speed_max",
                             "w_max", "r_max", "reject_budget"});
  for (const char* key : {"variant", "n", "m", "p_max", "seed"}) {
    if (!spec.contains(key)) {
      throw ParseError("run \"" + id + "\".generate: missing \"" +
                       std::string(key) + "\"");
    }
  }
  if (!spec.at("variant").is_string()) {
    throw ParseError("run \"" + id + "\".generate: variant must be a string");
  }
  const auto variant =
      variant_from_name(spec.at("variant").get<std::string>());
  if (!variant) {
    throw ParseError("run \"" + id + "\".generate: unknown variant");
  }
  const std::string where = "run \"" + id + "\".generate";
  GeneratorOptions opt;
  opt.speed_max = detail_io::optional_int(spec, "speed_max", 1, where);
  opt.w_max = detail_io::optional_int(spec, "w_max", 4, where);
  opt.r_max = detail_io::optional_int(spec, "r_max", 8, where);
  opt.reject_budget = detail_io::optional_int(spec, "reject_budget", -1, where);
  try {
    return generate(
        *variant,
        static_cast<int>(detail_io::require_int(spec.at("n"), where + ".n")),
        static_cast<int>(detail_io::require_int(spec.at("m"), where + ".m")),
        detail_io::require_int(spec.at("p_max"), where + ".p_max"),
        static_cast<std::uint64_t>(
            detail_io::require_int(spec.at("seed"), where + ".seed")),
        opt);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

template <typename Fn>
inline std::pair<std::int64_t, BenchRecord> timed(Fn&& fn) {
  fn();  // warm-up, discarded
  const auto begin = std::chrono::steady_clock::now();
  BenchRecord record = fn();
  const auto end = std::chrono::steady_clock::now();
  return {std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin)
              .count(),
          std::move(record)};
}

inline BenchRecord run_method(const SchedulingInstance& inst,
                              const std::string& method,
                              const SolverConfig& cfg) {
  BenchRecord record;
  record.method = method;
  if (method == "ilp") {
    const auto res = minimize_makespan(inst, cfg);
    record.cstar = format_rational(res.makespan);
    record.probes = res.probes;
  } else if (method == "brute") {
    const auto res = brute_force_schedule(inst);
    if (!res) {
      throw InfeasibleInstance("exhaustive search found no valid assignment");
    }
    record.cstar = format_rational(res->makespan);
  } else if (method == "sahni") {
    record.cstar = format_rational(sahni_dp(inst));
  } else if (method == "hs") {
    record.cstar = format_rational(horowitz_sahni_r2(inst));
  } else {
    throw ParseError("unknown method \"" + method + "\"");
  }
  return record;
}

}  // namespace detail_bench

// Runs every (instance, method) pair in suite order, one warm-up plus one
// timed run each, sequentially, and renders the fixed-header CSV. Methods
// must agree on the optimum per instance.
inline std::string run_bench(const std::string& suite_text,
                             const std::filesystem::path& base_dir,
                             const SolverConfig& cfg = {}) {
  using detail_bench::json;
  json doc;
  try {
    doc = json::parse(suite_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid suite: ") + e.what());
  }
  detail_io::expect_object(doc, "suite");
  detail_io::reject_unknown(doc, "suite", {"runs"});
  if (!doc.contains("runs") || !doc.at("runs").is_array()) {
    throw ParseError("suite: missing array field \"runs\"");
  }

  std::ostringstream csv;
  csv << "id,variant,n,m,pmax,method,ns,cstar,probes\n";
  for (const auto& run : doc.at("runs")) {
    detail_io::expect_object(run, "run");
    detail_io::reject_unknown(run, "run", {"id", "file", "generate", "methods"});
    if (!run.contains("id") || !run.at("id").is_string()) {
      throw ParseError("run: missing string field \"id\"");
    }
    const std::string id = run.at("id").get<std::string>();
    if (!run.contains("methods") || !run.at("methods").is_array() ||
        run.at("methods").empty()) {
      throw ParseError("run \"" + id +
                       "\": missing nonempty array field \"methods\"");
    }
    const SchedulingInstance inst =
        detail_bench::load_run_instance(run, id, base_dir);

    std::vector<BenchRecord> records;
    for (const auto& method_node : run.at("methods")) {
      if (!method_node.is_string()) {
        throw ParseError("run \"" + id + "\": methods must be strings");
      }
      const std::string method = method_node.get<std::string>();
      auto [ns, record] = detail_bench::timed([&] {
        return detail_bench::run_method(inst, method, cfg);
      });
      record.id = id;
      record.variant = inst.variant;
      record.n = inst.n();
      record.m = inst.m();
      record.p_max = inst.p_max();
      record.ns = ns;
      records.push_back(std::move(record));
    }
    detail_bench::require_agreement(records);
    for (const BenchRecord& record : records) {
      csv << record.id << ',' << variant_name(record.variant) << ','
          << record.n << ',' << record.m << ',' << record.p_max << ','
          << record.method << ',' << record.ns << ',' << record.cstar << ','
          << record.probes << '\n';
    }
  }
  return csv.str();
}

}  // namespace shortilp
