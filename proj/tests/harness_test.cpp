#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <vskx/error.hpp>
#include <vskx/harness.hpp>
#include <vskx/linsys.hpp>

#include "support.hpp"

namespace {

using vskx::Distribution;
using vskx::ErrorKind;
using vskx::ExperimentConfig;
using vskx::ExperimentResult;
using vskx::Method;
using vskx::TestFunction;
using vskx::VecX;

ExperimentConfig config(TestFunction f, Distribution d, std::vector<Method> methods) {
  ExperimentConfig c;
  c.function_id = f;
  c.distribution = d;
  c.methods = std::move(methods);
  return c;
}

double rmse_at(const std::vector<ExperimentResult>& results, Method m, double lambda2) {
  for (const auto& r : results) {
    if (r.method == m && std::abs(r.lambda2 - lambda2) < 1e-9) return r.rmse;
  }
  ADD_FAILURE() << "no result at lambda2 = " << lambda2;
  return 0.0;
}

TEST(TestFunctions, Examples) {
  EXPECT_DOUBLE_EQ(vskx::test_function(TestFunction::F2, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(vskx::test_function(TestFunction::F4, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(vskx::test_function(TestFunction::F6, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(vskx::test_function(TestFunction::F1, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(vskx::test_function(TestFunction::F3, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(vskx::test_function(TestFunction::F5, 20.0), std::atan(1.0));
  EXPECT_EQ(kind_of([] { vskx::test_function(TestFunction::F1, 0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { vskx::test_function(TestFunction::F5, 0.0); }), ErrorKind::Domain);
}

TEST(TestFunctions, NamesRoundTrip) {
  for (int k = 0; k < 6; ++k) {
    const auto f = static_cast<TestFunction>(k);
    EXPECT_EQ(vskx::parse_test_function(vskx::to_string(f)), f);
  }
  EXPECT_FALSE(vskx::parse_test_function("f7"));
  for (Method m : {Method::Cubic, Method::TpsVsk, Method::Svr}) {
    EXPECT_EQ(vskx::parse_method(vskx::to_string(m)), m);
  }
}

TEST(Noise, ZeroSigmaIsIdentity) {
  const VecX v = VecX::LinSpaced(7, -1.0, 1.0);
  EXPECT_EQ(vskx::add_noise(v, 0.0, 3), v);
  EXPECT_EQ(kind_of([&] { vskx::add_noise(v, -1.0, 3); }), ErrorKind::Domain);
}

TEST(Noise, DeterministicWithExpectedSpread) {
  const VecX zero = VecX::Zero(100000);
  const VecX a = vskx::add_noise(zero, 1e-4, 8);
  EXPECT_EQ(a, vskx::add_noise(zero, 1e-4, 8));
  EXPECT_NE(a, vskx::add_noise(zero, 1e-4, 9));
  const double mean = a.mean();
  const double sd = std::sqrt((a.array() - mean).square().sum() / (a.size() - 1));
  EXPECT_NEAR(sd, 1e-4, 1e-6);
  EXPECT_NEAR(mean, 0.0, 5e-6);
}

TEST(Rmse, Examples) {
  EXPECT_EQ(vskx::rmse(VecX::Zero(3), VecX::Zero(3)), 0.0);
  EXPECT_DOUBLE_EQ(vskx::rmse((VecX(2) << 0.0, 0.0).finished(), (VecX(2) << 3.0, 4.0).finished()),
                   std::sqrt(12.5));
  EXPECT_EQ(kind_of([] { vskx::rmse(VecX::Zero(3), VecX::Zero(2)); }), ErrorKind::Shape);
}

TEST(Sweep, ElevenLambda2Values) {
  const std::vector<double> l2 = vskx::lambda2_values(ExperimentConfig{});
  ASSERT_EQ(l2.size(), 11u);
  EXPECT_EQ(l2.front(), 2.0);
  EXPECT_NEAR(l2.back(), 3.0, 1e-12);
  for (std::size_t i = 1; i < l2.size(); ++i) EXPECT_NEAR(l2[i] - l2[i - 1], 0.1, 1e-12);
}

TEST(RunExperiment, CubicUniformReferenceValues) {
  const auto f2 = vskx::run_experiment(config(TestFunction::F2, Distribution::Uniform, {Method::Cubic}));
  ASSERT_EQ(f2.size(), 11u);
  EXPECT_NEAR(rmse_at(f2, Method::Cubic, 2.0), 2.89e-5, 0.03e-5);
  const auto f1 = vskx::run_experiment(config(TestFunction::F1, Distribution::Uniform, {Method::Cubic}));
  EXPECT_NEAR(rmse_at(f1, Method::Cubic, 3.0), 1.28e-2, 0.02e-2);
}

TEST(RunExperiment, VskReproducesScalingClass) {
  for (TestFunction f : {TestFunction::F2, TestFunction::F4}) {
    for (Distribution d : {Distribution::Halton, Distribution::Chebyshev, Distribution::Random,
                           Distribution::Uniform}) {
      for (const auto& r : vskx::run_experiment(config(f, d, {Method::TpsVsk}))) {
        EXPECT_LE(r.rmse, 1e-10) << vskx::to_string(f) << "/" << vskx::to_string(d)
                                 << " lambda2=" << r.lambda2;
      }
    }
  }
}

TEST(RunExperiment, Deterministic) {
  const ExperimentConfig c =
      config(TestFunction::F3, Distribution::Random, {Method::Cubic, Method::TpsVsk});
  const auto first = vskx::run_experiment(c);
  const auto second = vskx::run_experiment(c);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].rmse, second[i].rmse);
}

TEST(RunExperiment, ResultLabelsAndOrdering) {
  ExperimentConfig c = config(TestFunction::F4, Distribution::Halton, {Method::Cubic, Method::TpsVsk});
  c.lambda2_steps = 2;
  const auto rs = vskx::run_experiment(c);
  ASSERT_EQ(rs.size(), 6u);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(rs[i].function_id, TestFunction::F4);
    EXPECT_EQ(rs[i].distribution, Distribution::Halton);
    EXPECT_EQ(rs[i].method, i < 3 ? Method::Cubic : Method::TpsVsk);
    EXPECT_EQ(rs[i].seed, c.seed);
  }
}

TEST(RunExperiment, AveragedWithOneSeedMatchesSingleRun) {
  const ExperimentConfig c = config(TestFunction::F1, Distribution::Random, {Method::Cubic});
  const auto single = vskx::run_experiment(c);
  const auto averaged = vskx::run_experiment_averaged(c, 1);
  ASSERT_EQ(single.size(), averaged.size());
  for (std::size_t i = 0; i < single.size(); ++i) EXPECT_EQ(single[i].rmse, averaged[i].rmse);
  EXPECT_EQ(kind_of([&] { vskx::run_experiment_averaged(c, 0); }), ErrorKind::Config);
}

TEST(RunExperiment, AveragedMeanOfSeeds) {
  ExperimentConfig c = config(TestFunction::F3, Distribution::Random, {Method::Cubic});
  c.lambda2_steps = 1;
  const auto avg = vskx::run_experiment_averaged(c, 2);
  ExperimentConfig c2 = c;
  c2.seed = c.seed + 1;
  const auto a = vskx::run_experiment(c);
  const auto b = vskx::run_experiment(c2);
  for (std::size_t i = 0; i < avg.size(); ++i) {
    EXPECT_NEAR(avg[i].rmse, 0.5 * (a[i].rmse + b[i].rmse), 1e-15 * a[i].rmse + 1e-300);
  }
}

TEST(RunExperiment, ParallelRunsKeepInputOrder) {
  std::vector<ExperimentConfig> cs;
  for (TestFunction f : {TestFunction::F1, TestFunction::F2, TestFunction::F3}) {
    ExperimentConfig c = config(f, Distribution::Uniform, {Method::Cubic});
    c.lambda2_steps = 0;
    cs.push_back(c);
  }
  const auto rs = vskx::run_experiments(cs);
  ASSERT_EQ(rs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rs[i].function_id, cs[i].function_id);
    EXPECT_EQ(rs[i].rmse, vskx::run_experiment(cs[i])[0].rmse);
  }
}

TEST(RunExperiment, ErrorsCarryContext) {
  ExperimentConfig c = config(TestFunction::F1, Distribution::Uniform, {Method::Cubic});
  c.a = 0.0;
  try {
    vskx::run_experiment(c);
    FAIL() << "expected an error";
  } catch (const vskx::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
    EXPECT_NE(std::string(e.what()).find("f1/uniform"), std::string::npos) << e.what();
  }
}

TEST(RunExperiment, NodalResidualAndInHullAccuracy) {
  for (Distribution d : {Distribution::Halton, Distribution::Chebyshev, Distribution::Random,
                         Distribution::Uniform}) {
    const ExperimentConfig c = config(TestFunction::F3, d, {Method::Cubic});
    const VecX x = vskx::make_nodes(c).points;
    const VecX f = vskx::test_function(c.function_id, x);
    const auto model = vskx::fit<double>(vskx::KernelSpec::cubic(), vskx::as_points(x), f,
                                         c.lambda, c.ridge);
    const VecX at_nodes = model.evaluate(vskx::as_points(x));
    EXPECT_LE((at_nodes - f).cwiseAbs().maxCoeff(), 1e-4) << vskx::to_string(d);
    const VecX grid = vskx::equispaced(c.s, x.minCoeff(), x.maxCoeff()).points;
    const VecX err = model.evaluate(vskx::as_points(grid)) - vskx::test_function(c.function_id, grid);
    EXPECT_LE(err.cwiseAbs().maxCoeff(), 1e-3) << vskx::to_string(d);
  }
}

TEST(Validate, RejectsBadConfigs) {
  auto bad = [](auto mutate) {
    ExperimentConfig c;
    mutate(c);
    return kind_of([&] { vskx::validate(c); });
  };
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.b = c.a; }), ErrorKind::Config);
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.n = 2; }), ErrorKind::Config);
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.s = 1; }), ErrorKind::Config);
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.lambda = -1.0; }), ErrorKind::Config);
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.methods.clear(); }), ErrorKind::Config);
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.svr_max_iterations = 0; }), ErrorKind::Config);
  EXPECT_EQ(bad([](ExperimentConfig& c) {
              c.methods = {Method::Svr};
              c.distribution = Distribution::Halton;
            }),
            ErrorKind::Config);
  EXPECT_NO_THROW(vskx::validate(ExperimentConfig{}));
}

TEST(ConfigJson, ReadsFields) {
  const ExperimentConfig c = vskx::config_from_json(R"({
    "function_id": "f6", "distribution": "uniform", "n": 20, "lambda": 0.0,
    "methods": ["svr", "tps_vsk"], "noise_sigma": 1e-4, "seed": 7,
    "svr_kernel": "cubic_projected", "svr_max_iterations": 1000,
    "ridge": "full_diagonal", "chebyshev_variant": "lobatto", "keep_errors": true
  })");
  EXPECT_EQ(c.function_id, TestFunction::F6);
  EXPECT_EQ(c.n, 20);
  EXPECT_EQ(c.lambda, 0.0);
  EXPECT_EQ(c.methods, (std::vector<Method>{Method::Svr, Method::TpsVsk}));
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.svr_kernel, vskx::SvrKernelChoice::CubicProjected);
  EXPECT_EQ(c.svr_max_iterations, 1000);
  EXPECT_EQ(c.ridge, vskx::RidgeMode::FullDiagonal);
  EXPECT_EQ(c.chebyshev_variant, vskx::ChebyshevVariant::Lobatto);
  EXPECT_TRUE(c.keep_errors);
  const ExperimentConfig d = vskx::config_from_json("{}");
  EXPECT_EQ(d.n, ExperimentConfig{}.n);
}

TEST(ConfigJson, RejectsMalformedInput) {
  for (const char* text :
       {R"({"nodes": 3})", R"({"n": "thirty"})", R"({"function_id": "f9"})", "[1, 2]", "{",
        R"({"svr_kernel": "gaussian"})", R"({"methods": ["svr"], "distribution": "halton"})"}) {
    EXPECT_EQ(kind_of([&] { vskx::config_from_json(text); }), ErrorKind::Config) << text;
  }
}

TEST(Csv, RoundTrip) {
  ExperimentConfig c = config(TestFunction::F3, Distribution::Chebyshev, {Method::Cubic, Method::TpsVsk});
  c.noise_sigma = 1e-4;
  const auto rs = vskx::run_experiment(c);
  std::stringstream ss;
  vskx::emit_csv(rs, ss);
  const auto back = vskx::parse_csv(ss);
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(back[i].function_id, rs[i].function_id);
    EXPECT_EQ(back[i].distribution, rs[i].distribution);
    EXPECT_EQ(back[i].method, rs[i].method);
    EXPECT_EQ(back[i].lambda2, rs[i].lambda2);
    EXPECT_EQ(back[i].rmse, rs[i].rmse);
    EXPECT_EQ(back[i].seed, rs[i].seed);
    EXPECT_EQ(back[i].noise_sigma, rs[i].noise_sigma);
  }
}

TEST(Csv, OneRowGivesTwoLines) {
  std::stringstream ss;
  vskx::emit_csv({ExperimentResult{}}, ss);
  int lines = 0;
  for (std::string line; std::getline(ss, line);) ++lines;
  EXPECT_EQ(lines, 2);
}

TEST(Csv, EmptyResultsAndBadInput) {
  std::stringstream out;
  EXPECT_EQ(kind_of([&] { vskx::emit_csv({}, out); }), ErrorKind::Config);
  std::stringstream no_header("f1,uniform,cubic,2,1,42,0\n");
  EXPECT_EQ(kind_of([&] { vskx::parse_csv(no_header); }), ErrorKind::Io);
}

TEST(Emit, ErrorsNeedRetainedPoints) {
  ExperimentConfig c = config(TestFunction::F2, Distribution::Uniform, {Method::Cubic});
  c.lambda2_steps = 0;
  std::stringstream out;
  const auto plain = vskx::run_experiment(c);
  EXPECT_EQ(kind_of([&] { vskx::emit_errors(plain, out); }), ErrorKind::Config);
  c.keep_errors = true;
  const auto kept = vskx::run_experiment(c);
  ASSERT_EQ(kept[0].grid.size(), c.s);
  EXPECT_NEAR(std::sqrt(kept[0].abs_error.squaredNorm() / c.s), kept[0].rmse, 1e-15);
  std::stringstream ss;
  vskx::emit_errors(kept, ss);
  int lines = 0;
  for (std::string line; std::getline(ss, line);) ++lines;
  EXPECT_EQ(lines, 1 + c.s);
}

TEST(Emit, TableHasOneRowPerLambda2) {
  const auto rs = vskx::run_experiment(config(TestFunction::F4, Distribution::Uniform, {Method::Cubic}));
  std::stringstream ss;
  vskx::emit_table(rs, ss);
  int lines = 0;
  for (std::string line; std::getline(ss, line);) ++lines;
  EXPECT_EQ(lines, 2 + 11);
  EXPECT_NE(ss.str().find("f4/uniform/cubic"), std::string::npos);
}

TEST(Presets, Shapes) {
  for (int t = 1; t <= 4; ++t) {
    const auto cs = vskx::table_preset(t);
    ASSERT_EQ(cs.size(), 4u);
    for (const auto& c : cs) EXPECT_EQ(c.function_id, static_cast<TestFunction>(t - 1));
  }
  const auto t5 = vskx::table_preset(5);
  ASSERT_EQ(t5.size(), 2u);
  EXPECT_EQ(t5[0].noise_sigma, 1e-4);
  EXPECT_EQ(kind_of([] { vskx::table_preset(6); }), ErrorKind::Config);
}

}  // namespace
