#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "triq/error.hpp"
#include "triq/run.hpp"

using namespace triq;
using namespace triq::test;

namespace {

RunConfig short_run(double duration) {
  RunConfig cfg = RunConfig::paper_vi();
  cfg.scenario.duration = duration;
  return cfg;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

}  // namespace

TEST(PrincipalAngle, Examples) {
  const Quaternion q = Quaternion::from_axis_angle(Vec3(1, 2, 3).normalized(), 0.9);
  EXPECT_EQ(principal_angle_error(q, q), 0.0);
  EXPECT_EQ(principal_angle_error(q, -q), 0.0);
  const Quaternion d = Quaternion::from_axis_angle(Vec3::UnitX(), 1e-6);
  EXPECT_NEAR(principal_angle_error(q, q * d), 1e-6, 1e-12);
  EXPECT_NEAR(principal_angle_error(Quaternion::identity(), Quaternion::from_axis_angle(Vec3::UnitY(), 2.5)),
              2.5, 1e-15);
  // Beyond pi the shorter way round is reported.
  EXPECT_NEAR(principal_angle_error(Quaternion::identity(), Quaternion::from_axis_angle(Vec3::UnitY(), 4.0)),
              2.0 * std::numbers::pi - 4.0, 1e-14);
  EXPECT_EQ(kind_of([&] { principal_angle_error(q, 1.01 * q); }), ErrorKind::NonUnitQuaternion);
}

TEST(PrincipalAngle, SmallAnglesResolved) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Quaternion q = random_unit(rng);
    const double a = std::pow(10.0, -15.0 + 0.1 * k);
    const Quaternion e = q * Quaternion::from_axis_angle(random_vec(rng).normalized(), a);
    EXPECT_NEAR(principal_angle_error(q, e), a, 1e-15 + 1e-12 * a);
  }
}

TEST(ErrorRecord, ResolvedInLocalLevel) {
  const EarthModel m;
  const ScenarioParams p;
  const NavState truth = truth_to_eframe(10.0, p, m);
  NavState est = truth;
  const Mat3 c_ne = dcm_e_to_n(ecef_to_geodetic(truth.r_e, m)).transpose();
  est.v_e += c_ne * Vec3(0.0, 0.0, 2.0);
  est.r_e += c_ne * Vec3(3.0, 0.0, 0.0);
  const ErrorRecord r = error_record(10.0, truth, est, m, false);
  EXPECT_EQ(r.t, 10.0);
  EXPECT_EQ(r.att, 0.0);
  EXPECT_LT((r.vel - Vec3(0, 0, 2)).norm(), 1e-12);
  EXPECT_LT((r.pos - Vec3(3, 0, 0)).norm(), 1e-9);
  EXPECT_FALSE(r.converged);
}

TEST(Algorithms, Parse) {
  const auto all = parse_algorithms("tq, twosample,rk4");
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[2], Algorithm::Rk4);
  EXPECT_STREQ(algorithm_name(Algorithm::TwoSample), "twosample");
  EXPECT_THROW(parse_algorithms("tq,tq"), Error);
  EXPECT_THROW(parse_algorithms("euler"), Error);
  EXPECT_THROW(parse_algorithms(""), Error);
}

TEST(RunConfig, Validation) {
  RunConfig cfg = RunConfig::paper_vi();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.window, 8u);
  cfg.window = 7;
  cfg.solver = SolverConfig::for_window(7);
  EXPECT_EQ(kind_of([&] { cfg.validate(); }), ErrorKind::InvalidConfig);
  cfg.algorithms = {Algorithm::Tq};
  EXPECT_NO_THROW(cfg.validate());
  cfg.decimate = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(ParseConfig, Keys) {
  const RunConfig cfg = parse_config(R"(
# comment
[scenario]
duration = 2.5   ; trailing comment
cone_angle = 0.1
latitude = 0.5
[solver]
window = 4
variant = earth
max_iters = 12
[earth]
gravity = none
[output]
algos = tq,rk4
decimate = 3
out = results
)");
  EXPECT_EQ(cfg.scenario.duration, 2.5);
  EXPECT_EQ(cfg.scenario.cone_angle, 0.1);
  EXPECT_EQ(cfg.scenario.start.latitude, 0.5);
  EXPECT_EQ(cfg.window, 4u);
  EXPECT_EQ(cfg.solver.m_q, 5u);
  EXPECT_EQ(cfg.solver.max_iters, 12u);
  EXPECT_EQ(cfg.solver.variant, TwistVariant::EarthSide);
  EXPECT_EQ(cfg.earth.gravity, GravityModel::None);
  EXPECT_EQ(cfg.algorithms.size(), 2u);
  EXPECT_EQ(cfg.decimate, 3u);
  EXPECT_EQ(cfg.out_dir, "results");
}

TEST(ParseConfig, Errors) {
  EXPECT_EQ(kind_of([] { parse_config("[scenario]\nspeed = 3\n"); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { parse_config("[bogus]\n"); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { parse_config("duration = 3\n"); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { parse_config("[scenario]\nduration = abc\n"); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { parse_config("[solver]\nvariant = both\n"); }), ErrorKind::InvalidConfig);
  try {
    parse_config("[scenario]\n\nfoo = 1\n");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_EQ(kind_of([] { load_config("/nonexistent/x.ini"); }), ErrorKind::Io);
}

TEST(RunAlgorithm, GridAndInitialRecord) {
  const RunConfig cfg = short_run(0.4);
  const auto samples = synthesize_imu(cfg.scenario, cfg.earth);
  for (Algorithm a : {Algorithm::Tq, Algorithm::TwoSample, Algorithm::Rk4}) {
    const auto rec = run_algorithm(cfg, a, samples);
    ASSERT_EQ(rec.size(), 6u) << algorithm_name(a);
    EXPECT_EQ(rec[0].t, 0.0);
    EXPECT_EQ(rec[0].att, 0.0);
    EXPECT_EQ(rec[0].vel, Vec3::Zero());
    EXPECT_EQ(rec[0].pos, Vec3::Zero());
    for (std::size_t k = 1; k < rec.size(); ++k) EXPECT_NEAR(rec[k].t, 0.08 * double(k), 1e-14);
  }
  EXPECT_TRUE(run_algorithm(cfg, Algorithm::Tq, std::span(samples).first(7)).empty());
}

TEST(RunAlgorithm, TqBeatsTwoSample) {
  const RunConfig cfg = short_run(2.0);
  const auto samples = synthesize_imu(cfg.scenario, cfg.earth);
  const auto tq = summarize_series("tq", run_algorithm(cfg, Algorithm::Tq, samples));
  const auto ts = summarize_series("twosample", run_algorithm(cfg, Algorithm::TwoSample, samples));
  EXPECT_LT(tq.att.max, 1e-13);
  EXPECT_GT(ts.att.max, 1e3 * tq.att.max);
  EXPECT_GT(ts.pos.max, 1e3 * tq.pos.max);
}

TEST(ErrorCsv, HeaderDecimationRoundTrip) {
  std::vector<ErrorRecord> rec(5);
  for (std::size_t k = 0; k < rec.size(); ++k) {
    rec[k].t = 0.08 * double(k);
    rec[k].att = 1e-15 * double(k) / 3.0;
    rec[k].vel = Vec3(0.1, -0.2, 1.0 / 3.0) * double(k);
    rec[k].pos = Vec3(1e-7, 2.0, -3.5) * double(k);
    rec[k].converged = k != 2;
  }
  const std::string csv = error_csv(rec);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kErrorCsvHeader);
  const auto back = parse_error_csv(csv);
  ASSERT_EQ(back.size(), rec.size());
  for (std::size_t k = 0; k < rec.size(); ++k) {
    EXPECT_EQ(back[k].t, rec[k].t);
    EXPECT_EQ(back[k].att, rec[k].att);
    EXPECT_EQ(back[k].vel, rec[k].vel);
    EXPECT_EQ(back[k].pos, rec[k].pos);
    EXPECT_EQ(back[k].converged, rec[k].converged);
  }
  const auto dec = parse_error_csv(error_csv(rec, 2));
  ASSERT_EQ(dec.size(), 3u);
  EXPECT_EQ(dec[2].t, rec[4].t);
  EXPECT_EQ(error_csv({}), std::string(kErrorCsvHeader) + "\n");
  EXPECT_THROW(parse_error_csv("a,b\n1,2\n"), Error);
}

TEST(RunScenario, FilesAndDeterminism) {
  const auto dir = std::filesystem::temp_directory_path() / "triq_test_run";
  std::filesystem::remove_all(dir);
  RunConfig cfg = short_run(0.8);
  cfg.out_dir = dir / "a";
  const auto first = run_scenario(cfg);
  cfg.out_dir = dir / "b";
  run_scenario(cfg);
  ASSERT_EQ(first.size(), 2u);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  for (const char* name : {"tq.csv", "twosample.csv"}) {
    const std::string a = slurp(dir / "a" / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / name));
  }
  // Zero duration: header only.
  cfg = short_run(0.0);
  cfg.out_dir = dir / "c";
  run_scenario(cfg);
  EXPECT_EQ(slurp(dir / "c" / "tq.csv"), std::string(kErrorCsvHeader) + "\n");

  cfg = short_run(0.08);
  cfg.out_dir = dir / "d";
  simulate_scenario(cfg);
  const auto imu = read_imu_file(dir / "d" / "imu.csv");
  EXPECT_EQ(imu.size(), 8u);
  std::filesystem::remove_all(dir);
}

TEST(Summary, RatiosAndGrid) {
  std::vector<ErrorRecord> a(3), b(3);
  for (std::size_t k = 0; k < 3; ++k) {
    a[k].t = b[k].t = double(k);
    a[k].att = 1e-14 * double(k);
    b[k].att = 1e-8 * double(k);
    a[k].pos = b[k].pos = Vec3(0, 0, double(k));
  }
  const auto sa = summarize_series("a", a), sb = summarize_series("b", b);
  EXPECT_EQ(sa.att.max, 2e-14);
  EXPECT_NEAR(sa.att.rms, std::sqrt(5.0 / 3.0) * 1e-14, 1e-28);
  const Summary one = summarize({sa}, {a});
  EXPECT_TRUE(one.ratios.empty());
  const Summary two = summarize({sa, sb}, {a, b});
  ASSERT_EQ(two.ratios.size(), 1u);
  EXPECT_NEAR(*two.ratios[0].att, 6.0, 1e-12);
  EXPECT_EQ(*two.ratios[0].pos, 0.0);
  EXPECT_FALSE(two.ratios[0].vel.has_value());
  const std::string json = summary_json(two);
  EXPECT_NE(json.find("\"log10_ratios\""), std::string::npos);
  b[2].t = 2.5;
  EXPECT_EQ(kind_of([&] { summarize({sa, sb}, {a, b}); }), ErrorKind::GridMismatch);
}
