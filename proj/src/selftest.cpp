#include "triq/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "triq/chebyshev.hpp"
#include "triq/run.hpp"
#include "triq/tqfilter.hpp"
#include "triq/trajectory.hpp"

namespace triq {

namespace {

Quaternion random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Quaternion(n(rng), n(rng), n(rng), n(rng)).normalized();
}

TridentQuaternion random_unit_trident(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const Quaternion q = random_unit(rng);
  const Quaternion a = Quaternion::vector({n(rng), n(rng), n(rng)});
  const Quaternion b = Quaternion::vector({n(rng), n(rng), n(rng)});
  return {q, 0.5 * (a * q), 0.5 * (b * q)};
}

double trident_distance(const TridentQuaternion& a, const TridentQuaternion& b) {
  return (a.components() - b.components()).cwiseAbs().maxCoeff();
}

// Group closure, associativity and inverse of unit trident quaternions.
double group_residual() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const TridentQuaternion a = random_unit_trident(rng), b = random_unit_trident(rng),
                            c = random_unit_trident(rng);
    worst = std::max(worst, trident_distance((a * b) * c, a * (b * c)));
    worst = std::max(worst, trident_distance(a * a.conjugate(), TridentQuaternion::identity()));
    worst = std::max(worst, trident_distance(a * TridentQuaternion::identity(), a));
    if (!(a * b).is_unit()) worst = std::max(worst, 1.0);
  }
  return worst;
}

// Integration of F_i against Gauss-Legendre quadrature of the evaluated
// polynomial, all degrees up to 20.
double chebyshev_residual() {
  const GaussRule rule = gauss_legendre(16);
  double worst = 0.0;
  for (std::size_t i = 0; i <= 20; ++i) {
    const ScalarChebSeries s = ScalarChebSeries::unit(i, 1.0);
    const ScalarChebSeries integral = cheb_integrate(s);
    for (double tau : {-0.5, 0.1, 0.9}) {
      double quad = 0.0;
      const double half = 0.5 * (tau + 1.0), mid = 0.5 * (tau - 1.0);
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        quad += half * rule.weights[k] * cheb_polynomial(i, mid + half * rule.nodes[k]);
      }
      worst = std::max(worst, std::abs(cheb_eval(integral, tau) - quad));
    }
  }
  return worst;
}

// Both twist variants reproduce the same trident rate.
double variant_residual() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  const EarthModel m;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    NavState s;
    s.q_eb = random_unit(rng);
    s.v_e = {100 * n(rng), 100 * n(rng), 100 * n(rng)};
    s.r_e = geodetic_to_ecef({0.5 * n(rng), n(rng), 1000 * std::abs(n(rng))}, m);
    const Vec3 w{n(rng), n(rng), n(rng)}, f{n(rng), n(rng), n(rng)};
    const TridentQuaternion t = embed_state(s, m);
    const auto body = triq_rhs(t, state_twists(t, w, f, TwistVariant::BodySide, m));
    const auto earth = triq_rhs(t, state_twists(t, w, f, TwistVariant::EarthSide, m));
    worst = std::max(worst, trident_distance(body, earth) / (1.0 + s.r_e.norm()));
  }
  return worst;
}

// One tq window of the coning flight against the analytic truth.
double window_residual() {
  RunConfig cfg = RunConfig::paper_vi();
  cfg.scenario.duration = 0.08;
  const auto samples = synthesize_imu(cfg.scenario, cfg.earth);
  const auto windows = make_windows(samples, cfg.window, ImuMode::Increments);
  const NavState s0 = truth_to_eframe(0.0, cfg.scenario, cfg.earth);
  const WindowSolution sol = solve_window(windows.front(), s0, cfg.earth, cfg.solver);
  return principal_angle_error(truth_to_eframe(windows.front().t_n, cfg.scenario, cfg.earth).q_eb,
                               sol.end.q_eb);
}

}  // namespace

bool run_selftest(std::ostream& os) {
  struct Check {
    const char* name;
    std::function<double()> run;
    double tolerance;
  };
  const Check checks[] = {
      {"trident group axioms", group_residual, 1e-12},
      {"chebyshev integration vs quadrature", chebyshev_residual, 1e-10},
      {"twist variants agree", variant_residual, 1e-13},
      {"tq window attitude vs truth [rad]", window_residual, 1e-12},
  };
  bool ok = true;
  for (const Check& c : checks) {
    double value = 0.0;
    bool pass = false;
    std::string detail;
    try {
      value = c.run();
      pass = value < c.tolerance;
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s  %-40s %.3e < %.0e", pass ? "PASS" : "FAIL", c.name, value,
                  c.tolerance);
    os << buf << detail << '\n';
    ok = ok && pass;
  }
  return ok;
}

}  // namespace triq
