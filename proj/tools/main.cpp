#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bureskit/matrix_io.hpp"
#include "bureskit/metric.hpp"
#include "bureskit/random.hpp"
#include "bureskit/selftest.hpp"
#include "bureskit/sylvester.hpp"

namespace {

using namespace bureskit;

constexpr int kExitValidation = 2;
constexpr int kExitConditioning = 3;

struct RouteOutput {
  std::string name;
  std::optional<MetricReport> report;
  std::string skipped_reason;
};

int cmd_compute(const std::string& state_path, const std::string& y_path,
                const std::string& yprime_path, const std::string& route, bool strict) {
  StateMatrix rho = load_state(state_path);
  TangentMatrix y = load_tangent(y_path);
  TangentMatrix yprime = yprime_path.empty() ? y : load_tangent(yprime_path);
  require_same_dim(rho, y);
  require_same_dim(rho, yprime);

  StateContext ctx(rho, Tolerances::defaults(), strict);

  std::vector<RouteOutput> outputs;
  auto run = [&](const std::string& name, auto&& fn) {
    RouteOutput out;
    out.name = name;
    if (route != "all") {
      out.report = fn();  // single route: let errors surface as exit codes
    } else {
      try {
        out.report = fn();
      } catch (const GenericityError& e) {
        out.skipped_reason = e.what();
      }
    }
    outputs.push_back(std::move(out));
  };

  if (route == "prop1" || route == "all")
    run("prop1", [&] { return bures_prop1(ctx, yprime, y); });
  if (route == "prop2" || route == "all")
    run("prop2", [&] { return bures_prop2(ctx, yprime, y); });
  if (route == "prop4" || route == "all")
    run("prop4", [&] { return bures_prop4(ctx, yprime, y); });
  if (route == "oracle" || route == "all")
    run("oracle", [&] { return bures_eigen_oracle(ctx, yprime, y); });

  std::ostringstream doc;
  doc << "bureskit-report v1\n";
  doc << "state " << state_path << "\n";
  doc << "y " << y_path << "\n";
  doc << "yprime " << (yprime_path.empty() ? y_path : yprime_path) << "\n";
  doc << "n " << ctx.dim() << "\n";
  doc << "generic " << (ctx.generic() ? "true" : "false") << "\n";
  doc << "det_p " << format_real(ctx.genericity().det_p) << "\n";
  doc << "det_p_normalized " << format_real(ctx.genericity().normalized) << "\n";
  doc << "strict " << (strict ? "true" : "false") << "\n";
  for (const std::string& w : ctx.warnings()) doc << "warning " << w << "\n";

  std::vector<double> values;
  for (const RouteOutput& out : outputs) {
    doc << "route " << out.name << "\n";
    if (!out.report) {
      doc << "skipped " << out.skipped_reason << "\n";
      continue;
    }
    const MetricReport& rep = *out.report;
    doc << "value " << format_real(rep.value) << "\n";
    values.push_back(rep.value);
    if (rep.sylvester_residual)
      doc << "sylvester_residual " << format_real(*rep.sylvester_residual) << "\n";
    if (rep.parallel_part) doc << "parallel_part " << format_real(*rep.parallel_part) << "\n";
    if (rep.orthogonal_part)
      doc << "orthogonal_part " << format_real(*rep.orthogonal_part) << "\n";
    for (const std::string& w : rep.warnings) doc << "warning " << w << "\n";
  }
  if (route == "all" && values.size() > 1) {
    double dev = 0.0;
    for (double a : values)
      for (double b : values) dev = std::max(dev, std::abs(a - b));
    doc << "max_pairwise_deviation " << format_real(dev) << "\n";
  }
  std::cout << doc.str();
  return 0;
}

int cmd_selftest(int n_max, int samples, std::uint64_t seed) {
  SelftestConfig cfg;
  cfg.n_max = n_max;
  cfg.samples = samples;
  cfg.seed = seed;
  std::cout << "bureskit-selftest v1\n";
  std::cout << "n_max " << n_max << "\n";
  std::cout << "samples " << samples << "\n";
  std::cout << "seed " << seed << "\n";
  std::vector<PropertyResult> results = run_selftest(cfg, &std::cout);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const PropertyResult& r) { return r.pass; });
  std::cout << "result " << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : 1;
}

int cmd_random_state(int n, double floor, bool trace_one, std::uint64_t seed) {
  StateOptions opt;
  opt.spectrum_floor = floor;
  opt.trace_one = trace_one;
  Xoshiro256ss rng(seed);
  StateMatrix rho = random_state(n, opt, rng);
  write_matrix(std::cout, rho.entries(), MatrixKind::state);
  return 0;
}

struct BenchRecord {
  int n;
  std::string route;
  long long wall_time_ns;
  double value;
  double residual;
  bool generic;
};

int cmd_bench(std::vector<int> n_list, std::vector<std::string> routes, int reps,
              std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  if (reps < 1) throw ValidationError("bench: reps must be >= 1");
  if (reps < 5)
    std::cerr << "warning: medians over " << reps << " repetition(s) are degenerate\n";
  for (int n : n_list)
    if (n < 1) throw ValidationError("bench: sizes must be >= 1");

  std::cout << "bureskit-bench v1\n";
  std::cout << "seed " << seed << "\n";
  std::cout << "reps " << reps << "\n";
  std::cout << "# n route            wall_time_ns value                    residual               generic\n";

  Xoshiro256ss rng(seed);
  std::vector<BenchRecord> records;
  for (int n : n_list) {
    StateOptions opt;
    opt.spectrum_floor = 0.05;
    StateMatrix rho = random_state(n, opt, rng);
    TangentMatrix y = random_tangent_unit(n, rng);
    StateContext ctx(rho);

    // cross-check every value against the oracle before any timing
    const double oracle = bures_eigen_oracle(ctx, y, y).value;
    const double tol = Tolerances::defaults().xroute * std::max(1.0, std::abs(oracle));

    for (const std::string& route : routes) {
      if (route == "prop4" && !ctx.generic()) {
        std::cout << "# n=" << n << " prop4 skipped (state is not generic)\n";
        continue;
      }
      double value = 0.0, residual = 0.0;
      auto eval = [&]() -> double {
        if (route == "prop1") {
          MetricReport r = bures_prop1(ctx, y, y);
          residual = r.sylvester_residual.value_or(0.0);
          return r.value;
        }
        if (route == "prop2") {
          StateContext cold(rho);  // cold: invariants and A rebuilt
          return bures_prop2(cold, y, y).value;
        }
        if (route == "prop2_amortized") return bures_prop2(ctx, y, y).value;
        if (route == "prop4") return bures_prop4(ctx, y, y).value;
        if (route == "dense") {
          SylvesterSolution sol = solve_dense(rho, y);
          residual = sol.residual;
          return 0.5 * (y.entries() * sol.x).trace().real();
        }
        if (route == "oracle") return bures_eigen_oracle(ctx, y, y).value;
        throw ValidationError("bench: unknown route '" + route + "'");
      };

      value = eval();
      if (std::abs(value - oracle) > tol)
        throw ConditioningError("bench: route " + route + " disagrees with the oracle before timing");

      std::vector<long long> times;
      times.reserve(std::size_t(reps));
      for (int r = 0; r < reps; ++r) {
        const auto t0 = clock::now();
        value = eval();
        const auto t1 = clock::now();
        times.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      BenchRecord rec{n, route, times[times.size() / 2], value, residual, ctx.generic()};
      records.push_back(rec);
      std::ostringstream line;
      line << rec.n << " " << std::left << std::setw(16) << rec.route << " " << std::right
           << std::setw(12) << rec.wall_time_ns << " " << std::setw(24)
           << format_real(rec.value) << " " << std::setw(22) << format_real(rec.residual) << " "
           << (rec.generic ? "true" : "false");
      std::cout << line.str() << "\n";
    }
  }
  for (const BenchRecord& r : records)
    std::cout << "record n=" << r.n << " route=" << r.route << " wall_time_ns=" << r.wall_time_ns
              << " value=" << format_real(r.value) << " residual=" << format_real(r.residual)
              << " generic=" << (r.generic ? "true" : "false") << "\n";
  return 0;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

std::vector<std::string> parse_str_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bures metric kernel: eigendecomposition-free evaluation with cross-validated routes"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "evaluate the metric from matrix files");
  std::string state_path, y_path, yprime_path;
  std::string route = "all";
  bool strict = false;
  compute->add_option("state", state_path, "state matrix file")->required();
  compute->add_option("y", y_path, "tangent matrix file")->required();
  compute->add_option("yprime", yprime_path, "second tangent file (defaults to y)");
  compute->add_option("--route", route, "prop1|prop2|prop4|oracle|all")
      ->check(CLI::IsMember({"prop1", "prop2", "prop4", "oracle", "all"}));
  compute->add_flag("--strict", strict, "cross-check both coefficient routes");

  // selftest
  auto* selftest_cmd = app.add_subcommand("selftest", "run the property suites");
  int n_max = 8, samples = 1000;
  std::uint64_t seed = 1;
  selftest_cmd->add_option("--n-max", n_max, "largest dimension")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--samples", samples, "random samples per property (0: golden cases only)")
      ->check(CLI::NonNegativeNumber);
  selftest_cmd->add_option("--seed", seed, "PRNG seed");

  // random-state
  auto* rand_cmd = app.add_subcommand("random-state", "write a random state to stdout");
  int rand_n = 2;
  double floor = 0.0;
  bool trace_one = false;
  std::uint64_t rand_seed = 1;
  rand_cmd->add_option("n", rand_n, "dimension")->required();
  rand_cmd->add_option("--spectrum-floor", floor, "min eigenvalue >= floor * Tr/n");
  rand_cmd->add_flag("--trace-one", trace_one, "normalize to unit trace");
  rand_cmd->add_option("--seed", rand_seed, "PRNG seed");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "time the evaluation routes");
  std::string n_csv = "2,3,4,6,8";
  std::string routes_csv = "prop1,prop2,prop2_amortized,prop4,dense,oracle";
  int reps = 9;
  std::uint64_t bench_seed = 1;
  bench_cmd->add_option("--n-list", n_csv, "comma-separated dimensions");
  bench_cmd->add_option("--routes", routes_csv, "comma-separated routes");
  bench_cmd->add_option("--reps", reps, "repetitions per timing (median reported)");
  bench_cmd->add_option("--seed", bench_seed, "PRNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (compute->parsed()) return cmd_compute(state_path, y_path, yprime_path, route, strict);
    if (selftest_cmd->parsed()) return cmd_selftest(n_max, samples, seed);
    if (rand_cmd->parsed()) return cmd_random_state(rand_n, floor, trace_one, rand_seed);
    if (bench_cmd->parsed())
      return cmd_bench(parse_int_list(n_csv), parse_str_list(routes_csv), reps, bench_seed);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConditioning;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
