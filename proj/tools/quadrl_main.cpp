// quadrl: training, estimation, calibration and evaluation pipeline for the
// adaptive quadrotor controller. See README.md for a tour of the
// subcommands; every artifact lands under a run directory together with the
// effective configuration for reproducibility.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "quadrl/bridge/bridge.hpp"
#include "quadrl/error.hpp"
#include "quadrl/eval/report.hpp"
#include "quadrl/eval/scenario.hpp"
#include "quadrl/io/experiment.hpp"
#include "quadrl/rdp/dataset.hpp"
#include "quadrl/rdp/model.hpp"
#include "quadrl/rl/train.hpp"
#include "quadrl/verify.hpp"

namespace fs = std::filesystem;
using namespace quadrl;

namespace {

struct CommonOpts {
  std::string config;
  std::uint64_t seed = 0;
};

ExperimentConfig load_experiment(const CommonOpts& o, std::string* echo = nullptr) {
  Config c;
  ExperimentConfig cfg = ExperimentConfig::load(o.config, &c);
  apply_runtime_settings(cfg);
  if (echo) *echo = c.echo();
  return cfg;
}

void write_echo(const std::string& dir, const std::string& echo,
                std::uint64_t seed) {
  fs::create_directories(dir);
  std::ofstream out(dir + "/config.cfg");
  out << "# effective configuration (defaults + overrides)\n";
  out << "# seed " << seed << "\n";
  out << echo;
}

int cmd_train(const CommonOpts& o, const std::string& variant_s,
              const std::string& out_dir_arg, bool verbose) {
  std::string echo;
  ExperimentConfig cfg = load_experiment(o, &echo);
  const TrainingVariant variant = variant_from_string(variant_s);
  const std::string dir = out_dir_arg.empty()
                              ? cfg.out_root + "/train_" + variant_s + "_seed" +
                                    std::to_string(o.seed)
                              : out_dir_arg;
  write_echo(dir, echo, o.seed);
  const TrainResult r = train_variant(variant, cfg.env, cfg.ppo, cfg.net,
                                      cfg.early_stop, o.seed, dir, verbose);
  if (r.aborted) {
    std::fprintf(stderr, "training aborted: %s (last good checkpoint kept)\n",
                 r.abort_reason.c_str());
    return 2;
  }
  std::printf("trained %s: %ld env steps, checkpoint %s/checkpoint_final.qck\n",
              variant_s.c_str(), r.env_steps, dir.c_str());
  return 0;
}

int cmd_collect(const CommonOpts& o, const std::string& oracle_path, int episodes,
                const std::string& out_path) {
  ExperimentConfig cfg = load_experiment(o);
  const Checkpoint oracle = Checkpoint::load(oracle_path);
  const int n = episodes > 0 ? episodes : cfg.rdp_episodes;
  const RdpDataset ds =
      collect_rdp_dataset(oracle, cfg.env, n, cfg.rdp_family, o.seed);
  ds.save(out_path);
  int crashed = 0;
  for (const auto& e : ds.episodes) crashed += e.crashed ? 1 : 0;
  std::printf("collected %zu episodes (%ld ticks, %d crashed) -> %s\n",
              ds.episodes.size(), ds.total_ticks(), crashed, out_path.c_str());
  return 0;
}

int cmd_train_rdp(const CommonOpts& o, const std::string& dataset_path,
                  const std::string& out_path, bool verbose) {
  ExperimentConfig cfg = load_experiment(o);
  RdpTrainConfig rc = cfg.rdp;
  rc.verbose = verbose;
  const RdpDataset ds = RdpDataset::load(dataset_path);
  const RdpTrainResult r = train_rdp(ds, rc, o.seed);
  r.model.save(out_path);
  std::printf("rdp trained: final val mse %.6f (standardized) -> %s\n",
              r.final_val_loss, out_path.c_str());
  return 0;
}

int cmd_calibrate(const std::vector<std::string>& log_paths,
                  const std::string& out_path) {
  std::vector<std::pair<std::array<double, 6>, std::array<double, 6>>> samples;
  for (const auto& path : log_paths) {
    const EpisodeLog log = EpisodeLog::load(path);
    const auto ticks = log.metric_ticks();
    if (ticks.empty()) throw ConfigError("log '" + path + "' has no metric window");
    std::array<double, 6> raw{}, expected{};
    for (const auto& tk : ticks) {
      const auto r = tk.smoothed_estimate.flat();
      const auto e = tk.true_wrench.flat();
      for (int i = 0; i < 6; ++i) {
        raw[i] += r[i] / ticks.size();
        expected[i] += e[i] / ticks.size();
      }
    }
    samples.push_back({raw, expected});
  }
  const LinearBridge bridge = LinearBridge::fit(samples);
  bridge.save(out_path);
  std::printf("bridge fit from %zu samples -> %s\n", samples.size(), out_path.c_str());
  for (int c = 0; c < 6; ++c)
    std::printf("  channel %d: slope %.4f offset %.6g\n", c, bridge.slope[c],
                bridge.offset[c]);
  return 0;
}

int cmd_evaluate(const CommonOpts& o, const std::string& scenario_s,
                 const std::string& controller_s, const std::string& policy_path,
                 const std::string& rdp_path, const std::string& bridge_path,
                 double tier, double period, bool no_alt_bias,
                 const std::string& out_dir) {
  ExperimentConfig cfg = load_experiment(o);

  Scenario sc;
  sc.kind = scenario_from_string(scenario_s);
  sc.controller = controller_from_string(controller_s);
  sc.payload_fraction = tier;
  sc.offset_point = {cfg.env.phys.l1, 0.0, 0.0};
  sc.traj = cfg.traj;
  if (period > 0) sc.traj.period = period;
  sc.settle_s = cfg.settle_s;
  sc.hold_s = cfg.hold_s;
  sc.n_periods = cfg.n_periods;
  sc.seed = o.seed;

  const Checkpoint policy = Checkpoint::load(policy_path);
  ControllerBundle ctl;
  ctl.policy_ck = &policy;
  RdpModel rdp;
  if (!rdp_path.empty()) {
    rdp = RdpModel::load(rdp_path);
    ctl.rdp = &rdp;
  }
  if (!bridge_path.empty()) ctl.bridge = LinearBridge::load(bridge_path);
  ctl.use_alt_bias = !no_alt_bias;

  const EpisodeLog log = run_scenario(sc, ctl, cfg.env);
  const TrackingMetrics m = tracking_metrics(log, sc.metric_period());

  const std::string dir = out_dir.empty() ? cfg.out_root + "/eval" : out_dir;
  fs::create_directories(dir);
  char stem[256];
  std::snprintf(stem, sizeof stem, "%s/%s_%s_tier%g_T%g_seed%llu", dir.c_str(),
                scenario_s.c_str(), controller_s.c_str(), tier, sc.traj.period,
                static_cast<unsigned long long>(o.seed));
  log.save(std::string(stem) + ".log");

  RunSummary rs;
  rs.scenario = scenario_s;
  rs.controller = controller_s;
  rs.tier = tier;
  rs.period = sc.kind == ScenarioKind::SlungFigure8 ? sc.traj.period : 0.0;
  rs.seed = o.seed;
  rs.metrics = m;
  save_summaries({rs}, std::string(stem) + ".summary");

  std::printf("%s %s tier %g: rmse %.4f m max %.4f m%s\n", scenario_s.c_str(),
              controller_s.c_str(), tier, m.rmse, m.max_err,
              m.crashed ? " [CRASHED]" : "");
  if (m.delay)
    std::printf("  delay %.3f s, phase %.1f deg\n", *m.delay, *m.phase);
  return m.crashed ? 3 : 0;
}

int cmd_report(const std::string& dir) {
  std::vector<RunSummary> runs;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().extension() == ".summary") {
      const auto batch = load_summaries(entry.path().string());
      runs.insert(runs.end(), batch.begin(), batch.end());
    }
  }
  if (runs.empty()) {
    std::fprintf(stderr, "no .summary files under '%s'\n", dir.c_str());
    return 1;
  }
  const std::vector<std::string> controllers{"base", "robust", "adaptive-oracle",
                                             "adaptive-rdp"};
  std::printf("%s\n", payload_table(runs, "central-payload",
                                    {0.0, 0.075, 0.15, 0.25}, controllers)
                          .c_str());
  std::printf("%s\n", payload_table(runs, "asymmetric-payload",
                                    {0.0, 0.04, 0.07, 0.11}, controllers)
                          .c_str());
  std::printf("%s\n",
              trajectory_table(runs, "adaptive-rdp", {15.0, 10.0, 5.0, 3.0}).c_str());
  const std::string machine = machine_report(runs);
  std::ofstream mf(dir + "/report_machine.txt");
  mf << machine;
  std::printf("machine-readable report -> %s/report_machine.txt\n", dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadrl: adaptive quadrotor flight control stack"};
  app.require_subcommand(1);

  CommonOpts common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "configuration file (key = value sections)");
    sub->add_option("--seed", common.seed, "root random seed")->capture_default_str();
  };

  // train
  std::string variant = "base", out_dir;
  bool verbose = false;
  auto* train = app.add_subcommand("train", "train a policy variant with PPO");
  add_common(train);
  train->add_option("--variant", variant, "base | robust | oracle-adaptive")
      ->required();
  train->add_option("--out", out_dir, "run directory (default under out_root)");
  train->add_flag("--verbose", verbose, "per-iteration progress");

  // collect-rdp
  std::string oracle_path, dataset_out = "rdp_dataset.txt";
  int episodes = 0;
  auto* collect = app.add_subcommand("collect-rdp",
                                     "roll out the oracle policy and record "
                                     "(feature, wrench) training data");
  add_common(collect);
  collect->add_option("--oracle", oracle_path, "oracle-adaptive checkpoint")->required();
  collect->add_option("--episodes", episodes, "episode count (0 = config default)");
  collect->add_option("--out", dataset_out, "dataset output path")->capture_default_str();

  // train-rdp
  std::string dataset_path, rdp_out = "rdp_model.qck";
  auto* trdp = app.add_subcommand("train-rdp", "fit the residual dynamics predictor");
  add_common(trdp);
  trdp->add_option("--dataset", dataset_path, "dataset file from collect-rdp")->required();
  trdp->add_option("--out", rdp_out, "model output path")->capture_default_str();
  trdp->add_flag("--verbose", verbose, "loss curve progress");

  // calibrate
  std::vector<std::string> cal_logs;
  std::string bridge_out = "bridge.txt";
  auto* cal = app.add_subcommand("calibrate",
                                 "fit the linear bridge from hover episode logs");
  cal->add_option("--logs", cal_logs, "episode logs with known wrenches")->required();
  cal->add_option("--out", bridge_out, "bridge output path")->capture_default_str();

  // evaluate
  std::string scenario_s = "position-hold", controller_s = "base";
  std::string policy_path, rdp_path, bridge_path, eval_out;
  double tier = 0.0, period = 0.0;
  bool no_alt_bias = false;
  auto* ev = app.add_subcommand("evaluate", "run one closed-loop scenario");
  add_common(ev);
  ev->add_option("--scenario", scenario_s,
                 "position-hold | central-payload | asymmetric-payload | slung-figure8")
      ->required();
  ev->add_option("--controller", controller_s,
                 "base | robust | adaptive-oracle | adaptive-rdp")
      ->required();
  ev->add_option("--policy", policy_path, "policy checkpoint")->required();
  ev->add_option("--rdp", rdp_path, "rdp model (adaptive-rdp)");
  ev->add_option("--bridge", bridge_path, "calibration bridge record");
  ev->add_option("--tier", tier, "payload fraction of vehicle mass");
  ev->add_option("--period", period, "figure-8 period override (s)");
  ev->add_flag("--no-alt-bias", no_alt_bias, "disable the altitude bias integrator");
  ev->add_option("--out-dir", eval_out, "output directory");

  // report
  std::string report_dir = ".";
  auto* rep = app.add_subcommand("report", "aggregate evaluation summaries into tables");
  rep->add_option("--dir", report_dir, "directory scanned for .summary files")
      ->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "run the invariant and gradient suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(common, variant, out_dir, verbose);
    if (collect->parsed()) return cmd_collect(common, oracle_path, episodes, dataset_out);
    if (trdp->parsed()) return cmd_train_rdp(common, dataset_path, rdp_out, verbose);
    if (cal->parsed()) return cmd_calibrate(cal_logs, bridge_out);
    if (ev->parsed())
      return cmd_evaluate(common, scenario_s, controller_s, policy_path, rdp_path,
                          bridge_path, tier, period, no_alt_bias, eval_out);
    if (rep->parsed()) return cmd_report(report_dir);
    if (ver->parsed()) return print_results(run_verify_suite()) ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
