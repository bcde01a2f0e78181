#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscprof/balance.hpp"
#include "oscprof/dde_sim.hpp"
#include "oscprof/describing.hpp"
#include "oscprof/network_io.hpp"
#include "oscprof/workflows.hpp"

namespace {

using namespace oscprof;

// Exit codes: 0 success, 1 usage or network file parse error, 2 domain or
// solver or simulation error, 3 compare/verify outside tolerance.
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitTolerance = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error("cannot open output file " + out_path);
  f << text;
}

double predicted_omega(const Network& net) {
  if (net.classify() >= 0)
    throw PreconditionError(
        "monotone regime (delta >= 0): cannot predict a period for automatic "
        "simulation sizing; pass --step and --t-end");
  if (net.homogeneous_rates() && net.stages.front().beta > 0.0)
    return solve_frequency(dimensionless(net));
  return solve_frequency_heterogeneous(net);
}

struct SimFlags {
  double step = 0.0;
  double t_end = 0.0;
  double transient_fraction = 0.5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--step", step, "integration step, min (default: min delay / 20)");
    cmd->add_option("--t-end", t_end, "simulated time span, min (default: 30 predicted periods)");
    cmd->add_option("--transient-fraction", transient_fraction,
                    "fraction of the run discarded before profile extraction")
        ->check(CLI::Range(0.0, 0.999));
  }

  SimConfig config() const { return SimConfig{step, t_end, transient_fraction, {}, {}}; }
};

int run_analyze(const std::string& path, bool csv, const std::string& out) {
  const Network net = load_network(path);
  const AnalysisResult res = analyze(net);
  emit(csv ? analyze_csv(res) : analyze_table(res), out);
  return 0;
}

int run_simulate(const std::string& path, const SimFlags& flags, const std::string& out) {
  const Network net = load_network(path);
  SimConfig cfg = flags.config();
  if (cfg.step <= 0.0 || cfg.t_end <= 0.0)
    cfg = resolve_sim_config(net, cfg, predicted_omega(net));
  const TimeSeries ts = simulate(net, cfg);

  std::string summary;
  try {
    summary = sim_summary(extract_profile(ts, cfg.transient_fraction));
  } catch (const SimulationError& e) {
    summary = std::string("profile extraction failed: ") + e.what() + "\n";
  }
  if (out.empty()) {
    std::cout << series_csv(ts);
    std::cerr << summary;
  } else {
    emit(series_csv(ts), out);
    std::cout << summary;
  }
  return 0;
}

int run_compare(const std::string& path, const SimFlags& flags, bool csv,
                const std::string& out) {
  const Network net = load_network(path);
  const ComparisonReport rep = compare(net, flags.config());
  emit(csv ? compare_csv(rep) : compare_table(rep), out);
  if (!rep.simulated) {
    std::cerr << "error: " << rep.sim_failure << "\n";
    return kExitDomain;
  }
  return rep.within_tolerance ? 0 : kExitTolerance;
}

int run_sweep(const std::string& path, const std::string& axis, double from,
              double to, int points, bool with_sim, const SimFlags& flags,
              bool csv, const std::string& out) {
  const Network net = load_network(path);
  SweepSpec spec;
  spec.axis = sweep_axis_from_string(axis);
  spec.lo = from;
  spec.hi = to;
  spec.count = points;
  spec.with_sim = with_sim;
  spec.sim = flags.config();
  const std::vector<SweepRow> rows = sweep(net, spec);
  emit(csv ? sweep_csv(rows, spec.axis) : sweep_table(rows, spec.axis), out);
  return 0;
}

int run_describe(const std::string& path, int gene, double x, double y,
                 std::vector<double> y_grid, int points, const std::string& out) {
  const Network net = load_network(path);
  if (gene < 1 || gene > net.size())
    throw PreconditionError("describe: gene index out of range");
  const GeneStage& s = net.stages[gene - 1];

  std::vector<double> ys;
  if (!y_grid.empty()) {
    if (points < 2) throw PreconditionError("describe: --y-range needs --points >= 2");
    for (int k = 0; k < points; ++k)
      ys.push_back(y_grid[0] + (y_grid[1] - y_grid[0]) * k / (points - 1.0));
  } else {
    ys.push_back(y);
  }

  std::vector<DescribeRow> rows;
  for (double yv : ys) {
    const DescribingPair g = describe(s.regulation, s.nu, s.production_ratio(), x, yv);
    rows.push_back({x, yv, g.eta, g.xi});
  }
  emit(describe_csv(rows), out);
  return 0;
}

int run_verify(const std::string& path) {
  const Network net = load_network(path);
  const VerifyReport rep = verify_profile(net);
  std::cout << verify_table(rep);
  return rep.pass ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "oscprof: analytic oscillation profiles of cyclic gene regulatory "
      "networks, cross-checked against delayed rate-equation simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "oscprof 1.0.0");
  app.footer(
      "Exit codes: 0 success, 1 usage/parse error, 2 domain or simulation\n"
      "error, 3 comparison or verification outside tolerance.\n"
      "N sweeps keep the loop oscillatory: odd rings are all-repressive, even\n"
      "rings make the last stage activating.");

  std::string net_path, out_path, axis;
  bool csv = false, with_sim = false;
  int gene = 1, points = 0;
  double from = 0.0, to = 0.0, x = 0.0, y = 0.0;
  std::vector<double> y_range;
  SimFlags sim_flags;

  CLI::App* c_analyze = app.add_subcommand("analyze", "predict the oscillation profile");
  c_analyze->add_option("network", net_path, "network file")->required();
  c_analyze->add_flag("--csv", csv, "machine-readable CSV instead of a table");
  c_analyze->add_option("--out", out_path, "write output to a file");

  CLI::App* c_simulate = app.add_subcommand("simulate", "integrate the delayed rate equations");
  c_simulate->add_option("network", net_path, "network file")->required();
  sim_flags.attach(c_simulate);
  c_simulate->add_option("--out", out_path,
                         "write the trajectory CSV here (summary then goes to stdout)");

  CLI::App* c_compare = app.add_subcommand("compare", "prediction vs simulation, signed errors");
  c_compare->add_option("network", net_path, "network file")->required();
  sim_flags.attach(c_compare);
  c_compare->add_flag("--csv", csv, "machine-readable CSV instead of a table");
  c_compare->add_option("--out", out_path, "write output to a file");

  CLI::App* c_sweep = app.add_subcommand("sweep", "predict (and optionally simulate) along one axis");
  c_sweep->add_option("network", net_path, "network file")->required();
  c_sweep->add_option("--param", axis, "axis: tau, tau_tilde, Q, N, a, b")
      ->required()
      ->check(CLI::IsMember({"tau", "tau_tilde", "Q", "N", "a", "b"}));
  c_sweep->add_option("--from", from, "first axis value")->required();
  c_sweep->add_option("--to", to, "last axis value")->required();
  c_sweep->add_option("--points", points, "number of points")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sweep->add_flag("--sim", with_sim, "simulate each point and report signed errors");
  sim_flags.attach(c_sweep);
  c_sweep->add_flag("--csv", csv, "machine-readable CSV instead of a table");
  c_sweep->add_option("--out", out_path, "write output to a file");

  CLI::App* c_describe = app.add_subcommand(
      "describe", "bias and first-harmonic gains of one stage's nonlinearity");
  c_describe->add_option("network", net_path, "network file")->required();
  c_describe->add_option("--gene", gene, "stage index, 1-based (default 1)");
  c_describe->add_option("--x", x, "input bias")->required();
  CLI::Option* oy = c_describe->add_option("--y", y, "input amplitude");
  CLI::Option* oyr = c_describe
                         ->add_option("--y-range", y_range,
                                      "amplitude range LO HI (use with --points)")
                         ->expected(2)
                         ->excludes(oy);
  c_describe->add_option("--points", points, "points across --y-range")->needs(oyr);
  c_describe->add_option("--out", out_path, "write output to a file");

  CLI::App* c_verify = app.add_subcommand(
      "verify", "closed-loop and spectral self-consistency of the prediction");
  c_verify->add_option("network", net_path, "network file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c_analyze->parsed()) return run_analyze(net_path, csv, out_path);
    if (c_simulate->parsed()) return run_simulate(net_path, sim_flags, out_path);
    if (c_compare->parsed()) return run_compare(net_path, sim_flags, csv, out_path);
    if (c_sweep->parsed())
      return run_sweep(net_path, axis, from, to, points, with_sim, sim_flags, csv,
                       out_path);
    if (c_describe->parsed()) {
      if (y_range.empty() && oy->count() == 0)
        throw PreconditionError("describe: pass --y or --y-range with --points");
      return run_describe(net_path, gene, x, y, y_range, points, out_path);
    }
    if (c_verify->parsed()) return run_verify(net_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
