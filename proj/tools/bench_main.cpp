// Benchmark of the OpenMP kernels against their serial reference
// implementations: vectorized environment stepping, the GEMM primitives the
// network code runs on, and RDP training steps.

#include <chrono>
#include <cstdio>

#include "quadrl/env/vec_env.hpp"
#include "quadrl/math/mat.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/rdp/model.hpp"

using namespace quadrl;

namespace {

double seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, const char* unit,
         double work) {
  std::printf("%-28s %10.3f %12.3f %8.2fx   %10.1f %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, work / parallel_s, unit);
}

}  // namespace

int main() {
  std::printf("%-28s %10s %12s %9s %12s\n", "kernel", "serial(s)", "parallel(s)",
              "speedup", "throughput");

  {  // environment stepping
    EnvConfig cfg;
    cfg.disturbance.mode = DisturbanceMode::UniformRandom;
    const int n = 64, steps = 500;
    VecEnv a(cfg, n, 1), b(cfg, n, 1);
    std::vector<OuterAction> actions(n);
    for (auto& act : actions) act.thrust = cfg.phys.hover_thrust();
    std::vector<QuadEnv::StepOut> outs(n);
    auto drive = [&](VecEnv& v, bool parallel) {
      for (int t = 0; t < steps; ++t) {
        v.step_all(actions, outs, parallel);
        for (int e = 0; e < n; ++e)
          if (outs[e].done()) v.env(e).reset();
      }
    };
    const double ts = seconds([&] { drive(a, false); });
    const double tp = seconds([&] { drive(b, true); });
    row("env-step (64 x 500)", ts, tp, "ctrl steps/s", double(n) * steps);
  }

  {  // gemm_nt at policy-update shapes
    Rng rng(3);
    const int m = 2048, k = 704, h = 64;
    Mat A(m, k), B(h, k), C(m, h);
    for (auto& v : A.d) v = rng.normal();
    for (auto& v : B.d) v = rng.normal();
    const int reps = 20;
    const double ts = seconds([&] {
      for (int r = 0; r < reps; ++r) gemm_nt_serial(A, B, C);
    });
    const double tp = seconds([&] {
      for (int r = 0; r < reps; ++r) gemm_nt(A, B, C);
    });
    const double gflop = 2.0 * m * k * h * reps / 1e9;
    row("gemm_nt (2048x704x64)", ts, tp, "Gflop/s", gflop);
  }

  {  // rdp training step (64-step GRU window batch)
    Rng rng(5);
    RdpDataset ds;
    ds.episodes.resize(8);
    for (auto& ep : ds.episodes) {
      ep.features.resize(250);
      ep.targets.resize(250);
      for (auto& f : ep.features)
        for (auto& v : f) v = rng.normal();
      for (auto& t : ep.targets)
        for (auto& v : t) v = rng.normal() * 0.01;
    }
    RdpTrainConfig rc;
    rc.train_steps = 12;
    rc.batch = 32;
    rc.eval_every = 1000;
    const double t_serial = seconds([&] {
      threads::set_num(1);
      train_rdp(ds, rc, 9);
    });
    const double t_par = seconds([&] {
      threads::set_num(0);
      train_rdp(ds, rc, 9);
    });
    row("rdp-train (12 x batch 32)", t_serial, t_par, "steps/s", 12.0);
  }

  return 0;
}
