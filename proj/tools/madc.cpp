// Command line front end: closed-form bounds, bit-exact shuffle simulation,
// parameter sweeps and the self-verification battery.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "madc/bounds.hpp"
#include "madc/download.hpp"
#include "madc/engine.hpp"
#include "madc/errors.hpp"
#include "madc/model.hpp"
#include "madc/serialize.hpp"
#include "madc/sweep.hpp"
#include "madc/verify.hpp"

namespace {

constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string cell(const std::optional<madc::Rational>& v) {
  if (!v) {
    return "-";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s (%.6g)", madc::to_fraction_string(*v).c_str(),
                madc::to_double(*v));
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw madc::InvalidParameters("cannot open '" + path + "' for writing");
  }
  out << content;
}

int cmd_bounds(int lambda, int alpha, std::optional<int> load, madc::RunMode mode) {
  madc::SweepSpec spec;
  spec.lambda_min = spec.lambda_max = lambda;
  spec.alphas = {alpha};
  if (load) {
    spec.loads = {*load};
  }
  spec.mode = mode;
  const auto rows = madc::run_sweep(spec);

  const bool comm = mode != madc::RunMode::Maxlink;
  const bool maxlink = mode != madc::RunMode::Comm;
  std::printf("%-4s", "r");
  if (comm) {
    std::printf("  %-22s %-22s %-22s %-10s %-18s", "l_ub", "l_lb", "baseline", "gain",
                "gap");
  }
  if (maxlink) {
    std::printf("  %-22s %-22s", "maxlink_ub", "maxlink_lb");
  }
  std::printf("\n");
  for (const auto& row : rows) {
    std::printf("%-4d", row.computation_load);
    if (comm) {
      std::printf("  %-22s %-22s %-22s %-10s %-18s", cell(row.l_ub).c_str(),
                  cell(row.l_lb).c_str(), cell(row.cdc).c_str(),
                  row.gain ? row.gain->str().c_str() : "-", cell(row.gap).c_str());
    }
    if (maxlink) {
      std::printf("  %-22s %-22s", cell(row.maxlink_ub).c_str(),
                  cell(row.maxlink_lb).c_str());
    }
    std::printf("\n");
  }
  return 0;
}

// Decodes every reducer and compares against the oracle store.
bool check_decode(const madc::Simulation& sim, const madc::Transcript& transcript,
                  std::string* why) {
  for (std::size_t rank = 0; rank < sim.topology.reducers.size(); ++rank) {
    madc::RecoveredIVs got;
    try {
      got = madc::decode(sim, rank, transcript);
    } catch (const std::exception& e) {
      *why = e.what();
      return false;
    }
    for (long long q : sim.reduce.functions_of[rank]) {
      for (long long n = 1; n <= sim.instance.num_files; ++n) {
        const auto a = got.block(q, n);
        const auto b = sim.store.block(q, n);
        if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
          *why = "reducer " + madc::set_to_string(sim.topology.reducers[rank].members) +
                 " recovered a wrong value for function " + std::to_string(q) + ", file " +
                 std::to_string(n);
          return false;
        }
      }
    }
  }
  return true;
}

struct SimulateOutputs {
  std::string transcript_path;
  std::string instance_path;
  std::string delivery_path;
};

int cmd_simulate(int lambda, int alpha, int load, std::optional<long long> files,
                 std::optional<long long> functions, std::optional<long long> iv_bits,
                 std::uint64_t seed, madc::RunMode mode, const SimulateOutputs& outputs) {
  using namespace madc;
  bool pass = true;

  ProblemInstance inst;
  std::vector<long long> level_counts;
  if (mode == RunMode::Comm) {
    inst = build_instance(lambda, alpha, load, files, functions, iv_bits, seed);
    level_counts.assign(lambda, 0);
    level_counts[load - 1] = inst.num_files;
  } else {
    if (files || functions || iv_bits) {
      throw InvalidParameters(
          "simulate: --files/--functions/--iv-bits apply to comm mode only; "
          "max-link instances are derived from the level optimiser");
    }
    const LpSolution sol = lp_solve(lambda, alpha, Rational(load));
    LeveledInstance li = build_instance_for_profile(lambda, alpha, load, sol.x, seed);
    inst = li.instance;
    level_counts = li.level_counts;
    std::printf("profile:");
    for (int j : sol.active_levels) {
      std::printf(" x%d=%s", j, to_fraction_string(sol.x[j - 1]).c_str());
    }
    std::printf("\n");
  }

  std::printf(
      "instance: lambda=%d alpha=%d r=%d n=%lld q=%lld t=%lld seed=%llu "
      "(k=%lld, eta1=%lld, eta2=%lld)\n",
      inst.num_mappers, inst.access_degree, inst.computation_load, inst.num_files,
      inst.num_functions, inst.iv_bits, static_cast<unsigned long long>(inst.seed),
      inst.num_reducers, inst.files_per_batch, inst.functions_per_reducer);

  const Topology topo = build_topology(inst);
  const FileAssignment assignment = assign_files_multilevel(inst, level_counts);
  const ReduceAssignment reduce = assign_reduce_functions(inst, topo);
  const IVStore store = run_map(inst, assignment);
  const Simulation sim{inst, topo, assignment, reduce, store};
  const Transcript transcript = run_shuffle(sim);

  const Rational measured = measure_comm_load(transcript, inst);
  if (mode == RunMode::Comm) {
    const Rational expected = l_ub(lambda, alpha, load);
    const bool ok = measured == expected;
    pass = pass && ok;
    std::printf("shuffle: %llu bits, load %s (%.6g), expected %s: %s\n",
                static_cast<unsigned long long>(transcript.total_bits),
                to_fraction_string(measured).c_str(), to_double(measured),
                to_fraction_string(expected).c_str(), ok ? "ok" : "MISMATCH");
  } else {
    const DeliveryPlan plan = plan_delivery(inst, assignment, topo);
    const Rational down = measure_download_cost(plan, inst);
    const Rational bottleneck = measure_maxlink(measured, down);
    const Rational expected = maxlink_ub(lambda, alpha, Rational(load));
    const bool ok = bottleneck == expected;
    pass = pass && ok;
    std::printf("shuffle: %llu bits, load %s (%.6g)\n",
                static_cast<unsigned long long>(transcript.total_bits),
                to_fraction_string(measured).c_str(), to_double(measured));
    std::printf("download: worst link %s (%.6g)\n", to_fraction_string(down).c_str(),
                to_double(down));
    std::printf("max-link: %s (%.6g), expected %s: %s\n",
                to_fraction_string(bottleneck).c_str(), to_double(bottleneck),
                to_fraction_string(expected).c_str(), ok ? "ok" : "MISMATCH");
    if (!outputs.delivery_path.empty()) {
      write_file(outputs.delivery_path, delivery_to_csv(plan, inst));
    }
  }

  std::string why;
  const bool decoded = check_decode(sim, transcript, &why);
  pass = pass && decoded;
  if (decoded) {
    std::printf("decode: %zu/%zu reducers bit-exact: ok\n", topo.reducers.size(),
                topo.reducers.size());
  } else {
    std::printf("decode: FAILED: %s\n", why.c_str());
  }

  if (!outputs.instance_path.empty()) {
    write_file(outputs.instance_path,
               instance_to_json(inst, inst.files_per_batch > 0
                                          ? std::vector<long long>{}
                                          : level_counts));
  }
  if (!outputs.transcript_path.empty()) {
    write_file(outputs.transcript_path, transcript_to_json(inst, transcript));
  }

  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : kExitVerificationFailure;
}

int cmd_sweep(const madc::SweepSpec& spec, const std::string& out_path,
              const std::string& format) {
  const auto rows = madc::run_sweep(spec);
  const std::string content =
      format == "json" ? madc::sweep_to_json(rows) : madc::sweep_to_csv(rows);
  write_file(out_path, content);
  std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
  return 0;
}

int cmd_verify(int max_lambda) {
  const auto results = madc::run_verification(max_lambda);
  bool all = true;
  for (const auto& suite : results) {
    if (suite.passed) {
      std::printf("PASS %s (%lld checks)\n", suite.name.c_str(), suite.checks);
    } else {
      all = false;
      std::printf("FAIL %s: %s\n", suite.name.c_str(), suite.detail.c_str());
    }
  }
  std::printf("verify: %zu/%zu suites pass\n",
              static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                     [](const auto& s) { return s.passed; })),
              results.size());
  return all ? 0 : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-access coded shuffle: simulator, bounds and verification"};
  app.require_subcommand(1);

  const std::map<std::string, madc::RunMode> mode_names{
      {"comm", madc::RunMode::Comm},
      {"maxlink", madc::RunMode::Maxlink},
      {"both", madc::RunMode::Both}};

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form load bounds for one topology");
  int b_lambda = 0;
  int b_alpha = 0;
  std::optional<int> b_load;
  madc::RunMode b_mode = madc::RunMode::Comm;
  bounds->add_option("--lambda", b_lambda, "number of mappers")->required();
  bounds->add_option("--alpha", b_alpha, "mappers per reducer")->required();
  bounds->add_option("--r", b_load, "computation load (default: every valid load)");
  bounds->add_option("--mode", b_mode, "column set")
      ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the coded scheme bit for bit");
  int s_lambda = 0;
  int s_alpha = 0;
  int s_load = 0;
  std::optional<long long> s_files;
  std::optional<long long> s_functions;
  std::optional<long long> s_iv_bits;
  std::uint64_t s_seed = 0;
  madc::RunMode s_mode = madc::RunMode::Comm;
  SimulateOutputs s_outputs;
  simulate->add_option("--lambda", s_lambda, "number of mappers")->required();
  simulate->add_option("--alpha", s_alpha, "mappers per reducer")->required();
  simulate->add_option("--r", s_load, "computation load")->required();
  simulate->add_option("--files", s_files, "number of files (default: auto)");
  simulate->add_option("--functions", s_functions, "number of functions (default: auto)");
  simulate->add_option("--iv-bits", s_iv_bits, "bits per intermediate value (default: auto)");
  simulate->add_option("--seed", s_seed, "seed for the deterministic values");
  simulate->add_option("--mode", s_mode, "comm: fixed-level shuffle; maxlink: optimiser profile")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, madc::RunMode>{{"comm", madc::RunMode::Comm},
                                               {"maxlink", madc::RunMode::Maxlink}},
          CLI::ignore_case));
  simulate->add_option("--transcript-out", s_outputs.transcript_path,
                       "write the shuffle transcript as JSON");
  simulate->add_option("--instance-out", s_outputs.instance_path,
                       "write the instance as JSON");
  simulate->add_option("--delivery-out", s_outputs.delivery_path,
                       "write the per-link download table as CSV (maxlink mode)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid into CSV or JSON");
  madc::SweepSpec spec;
  std::string sweep_out;
  std::string sweep_format = "csv";
  sweep->add_option("--lambda-min", spec.lambda_min, "smallest mapper count")->required();
  sweep->add_option("--lambda-max", spec.lambda_max, "largest mapper count")->required();
  sweep->add_option("--alpha-list", spec.alphas, "access degrees (default: all)")
      ->delimiter(',');
  sweep->add_option("--r-list", spec.loads, "computation loads (default: all valid)")
      ->delimiter(',');
  sweep->add_option("--mode", spec.mode, "which column block to fill")
      ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
  sweep->add_option("--out", sweep_out, "output file")->required();
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case));

  // verify
  auto* verify = app.add_subcommand("verify", "run the self-verification battery");
  int v_max_lambda = 10;
  verify->add_option("--max-lambda", v_max_lambda,
                     "largest mapper count for the formula suites (simulation "
                     "suites cap lower)")
      ->check(CLI::Range(2, 30));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(bounds)) {
      return cmd_bounds(b_lambda, b_alpha, b_load, b_mode);
    }
    if (app.got_subcommand(simulate)) {
      return cmd_simulate(s_lambda, s_alpha, s_load, s_files, s_functions, s_iv_bits,
                          s_seed, s_mode, s_outputs);
    }
    if (app.got_subcommand(sweep)) {
      return cmd_sweep(spec, sweep_out, sweep_format);
    }
    if (app.got_subcommand(verify)) {
      return cmd_verify(v_max_lambda);
    }
  } catch (const madc::InvalidParameters& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const madc::InfeasibleParameters& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerificationFailure;
  }
  return 0;
}
