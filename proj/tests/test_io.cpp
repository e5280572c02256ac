#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadrl/error.hpp"
#include "quadrl/io/config.hpp"
#include "quadrl/io/episode_log.hpp"
#include "quadrl/io/experiment.hpp"

using namespace quadrl;

TEST_CASE("config parsing") {
  SUBCASE("sections, comments and whitespace") {
    Config c = Config::parse_string(
        "# leading comment\n"
        "[physics]\n"
        "mass = 0.0315  ; trailing comment\n"
        "\n"
        "[ppo]\n"
        "epochs=8\n"
        "name = hello\n");
    CHECK(c.get_double("physics", "mass", 1.0) == doctest::Approx(0.0315));
    CHECK(c.get_long("ppo", "epochs", 1) == 8);
    CHECK(c.get_string("ppo", "name", "x") == "hello");
  }

  SUBCASE("defaults are used and recorded when keys are absent") {
    Config c = Config::parse_string("");
    CHECK(c.get_double("physics", "mass", 0.0315) == doctest::Approx(0.0315));
    const std::string echo = c.echo();
    CHECK(echo.find("[physics]") != std::string::npos);
    CHECK(echo.find("mass = ") != std::string::npos);
  }

  SUBCASE("type errors name the key") {
    Config c = Config::parse_string("[ppo]\nlr = fast\n");
    CHECK_THROWS_WITH_AS(c.get_double("ppo", "lr", 1e-3),
                         doctest::Contains("ppo.lr"), ConfigError);
  }

  SUBCASE("unknown keys are rejected by name") {
    Config c = Config::parse_string("[physics]\nmass = 1\nbogus_key = 2\n");
    c.get_double("physics", "mass", 1.0);
    CHECK_THROWS_WITH_AS(c.finish(), doctest::Contains("physics.bogus_key"),
                         ConfigError);
  }

  SUBCASE("vec3 values") {
    Config c = Config::parse_string("[pid]\nkp = 1e-4 2e-4 3e-4\n");
    const Vec3 v = c.get_vec3("pid", "kp", {0, 0, 0});
    CHECK(v.x == doctest::Approx(1e-4));
    CHECK(v.z == doctest::Approx(3e-4));
  }

  SUBCASE("malformed lines fail with location") {
    CHECK_THROWS_AS(Config::parse_string("[a\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[a]\njust a dangling token\n"), ConfigError);
  }
}

TEST_CASE("experiment config defaults match the platform") {
  Config c = Config::parse_string("");
  const ExperimentConfig x = ExperimentConfig::from_config(c);
  c.finish();
  CHECK(x.env.phys.m == doctest::Approx(0.0315));
  CHECK(x.env.phys.tau_m == doctest::Approx(0.03));
  CHECK(x.env.phys.ixx == doctest::Approx(1.4e-5));
  CHECK(x.env.phys.izz == doctest::Approx(2.17e-5));
  CHECK(x.env.phys.f_min == doctest::Approx(0.028));
  CHECK(x.env.phys.f_max == doctest::Approx(0.148));
  CHECK(x.env.dt == doctest::Approx(0.002));
  CHECK(x.env.decimation == 10);
  CHECK(x.env.episode_s == doctest::Approx(5.0));
  CHECK(x.env.reward.c_p == doctest::Approx(-30.0));
  CHECK(x.env.reward.c_s == doctest::Approx(4.0));
  CHECK(x.env.reward.boundary == doctest::Approx(0.6));
  CHECK(x.ppo.gamma == doctest::Approx(0.99));
  CHECK(x.ppo.lambda == doctest::Approx(0.95));
  CHECK(x.ppo.epochs == 8);
  CHECK(x.ppo.minibatches == 4);
  CHECK(x.ppo.clip == doctest::Approx(0.2));
  CHECK(x.ppo.lr == doctest::Approx(0.001));
  CHECK(x.env.noise.pos == doctest::Approx(0.001));
  CHECK(x.env.noise.orient == doctest::Approx(0.0003));
  CHECK(x.env.pendulum.mass == doctest::Approx(0.0047));
  CHECK(x.env.pendulum.tether_length == doctest::Approx(0.028));
  CHECK(x.rdp.hidden == 64);
}

TEST_CASE("episode log round trip") {
  EpisodeLog log;
  log.scenario = "central-payload";
  log.controller = "adaptive-rdp";
  log.seed = 77;
  log.metric_window_start = 3.0;
  log.crashed = true;
  Rng rng(8);
  for (int i = 0; i < 5; ++i) {
    EpisodeTick tk;
    tk.t = i * 0.02;
    tk.ref = rng.normal_vec3(1.0);
    tk.state.p = rng.normal_vec3(0.1);
    tk.state.q = Quat::from_axis_angle(rng.normal_vec3(0.2));
    tk.state.q.normalize();
    tk.state.v = rng.normal_vec3(0.5);
    tk.state.w = rng.normal_vec3(1.0);
    tk.action.thrust = 0.3 + 0.01 * i;
    tk.action.rates = rng.normal_vec3(0.5);
    for (auto& p : tk.pwm) p = rng.uniform();
    tk.true_wrench = Wrench{rng.normal_vec3(0.05), rng.normal_vec3(0.0005)};
    tk.raw_estimate = Wrench{rng.normal_vec3(0.05), rng.normal_vec3(0.0005)};
    tk.smoothed_estimate = Wrench{rng.normal_vec3(0.05), rng.normal_vec3(0.0005)};
    tk.corrected_estimate = Wrench{rng.normal_vec3(0.05), rng.normal_vec3(0.0005)};
    tk.in_metric_window = i >= 2;
    log.ticks.push_back(tk);
  }
  log.save("log_rt.log");
  const EpisodeLog back = EpisodeLog::load("log_rt.log");
  CHECK(back.scenario == log.scenario);
  CHECK(back.controller == log.controller);
  CHECK(back.seed == 77);
  CHECK(back.crashed);
  REQUIRE(back.ticks.size() == log.ticks.size());
  for (size_t i = 0; i < log.ticks.size(); ++i) {
    CHECK(back.ticks[i].state.p.x ==
          doctest::Approx(log.ticks[i].state.p.x).epsilon(1e-11));
    CHECK(back.ticks[i].true_wrench.torque.z ==
          doctest::Approx(log.ticks[i].true_wrench.torque.z).epsilon(1e-11));
    CHECK(back.ticks[i].in_metric_window == log.ticks[i].in_metric_window);
  }
  CHECK(back.metric_ticks().size() == 3);

  // writing the parsed log again reproduces the bytes (stable format)
  back.save("log_rt2.log");
  std::ifstream f1("log_rt.log"), f2("log_rt2.log");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  std::remove("log_rt.log");
  std::remove("log_rt2.log");
}

TEST_CASE("episode log rejects foreign files") {
  std::ofstream out("not_a_log.txt");
  out << "hello world\n";
  out.close();
  CHECK_THROWS_AS(EpisodeLog::load("not_a_log.txt"), IoError);
  std::remove("not_a_log.txt");
}
