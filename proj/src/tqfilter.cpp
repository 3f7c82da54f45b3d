#include "triq/tqfilter.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace triq {

SolverConfig SolverConfig::for_window(std::size_t n) {
  SolverConfig cfg;
  cfg.n_ob = n - 1;
  cfg.n_oe = n - 1;
  cfg.m_q = n + 1;
  cfg.max_iters = n + 1;
  return cfg;
}

void SolverConfig::validate(std::size_t n) const {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "windows need at least two samples");
  if (n_ob > n - 1 || n_oe > n - 1) {
    throw Error(ErrorKind::DegreeTooHigh, "fit degrees must not exceed N - 1");
  }
  if (m_q < std::max(n_ob, n_oe)) {
    throw Error(ErrorKind::InvalidConfig, "m_q must be at least max(n_ob, n_oe)");
  }
  if (!(rms_tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "rms_tol must be > 0");
  if (max_iters == 0) throw Error(ErrorKind::InvalidConfig, "max_iters must be >= 1");
  if (node_count() < n_oe + 1) {
    throw Error(ErrorKind::InsufficientNodes, "gravity node count must exceed n_oe");
  }
}

BodyTwistFit fit_body_twist(const ImuWindow& w, const SolverConfig& cfg) {
  w.validate();
  const std::size_t n = w.size();
  if (cfg.n_ob > n - 1) throw Error(ErrorKind::DegreeTooHigh, "n_ob must not exceed N - 1");
  const std::size_t cols = cfg.n_ob + 1;
  const TimeMap map(w.t_n);

  Eigen::MatrixXd a(n, cols);
  Eigen::MatrixXd y(n, 6);
  double tau_prev = -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = map.to_tau(w.times[k]);
    for (std::size_t i = 0; i < cols; ++i) {
      a(k, i) = w.mode == ImuMode::Rates
                    ? cheb_polynomial(i, tau)
                    : map.scale() * cheb_definite_integral(i, tau_prev, tau);
    }
    y.block<1, 3>(k, 0) = w.gyro[k].transpose();
    y.block<1, 3>(k, 3) = w.accel[k].transpose();
    tau_prev = tau;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < Eigen::Index(cols)) {
    throw Error(ErrorKind::SingularFit, "IMU fit matrix is rank deficient");
  }
  const Eigen::MatrixXd c = qr.solve(y);

  std::vector<TridentQuaternion> coeffs;
  coeffs.reserve(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    coeffs.emplace_back(Quaternion::vector(c.block<1, 3>(i, 0).transpose()),
                        Quaternion::vector(c.block<1, 3>(i, 3).transpose()), Quaternion{});
  }
  return {TridentChebSeries(std::move(coeffs)), (a * c - y).cwiseAbs().maxCoeff()};
}

namespace {

using QuatSeries = ChebSeries<Quaternion>;

QuatSeries real_part(const TridentChebSeries& s) {
  return s.map([](const TridentQuaternion& t) { return t.real(); });
}
QuatSeries e1_part(const TridentChebSeries& s) {
  return s.map([](const TridentQuaternion& t) { return t.e1(); });
}
QuatSeries conjugate(const QuatSeries& s) {
  return s.map([](const Quaternion& q) { return q.conjugate(); });
}

TridentChebSeries assemble(const QuatSeries& real, const QuatSeries& e1, const QuatSeries& e2) {
  const std::size_t n = std::max({real.size(), e1.size(), e2.size()});
  std::vector<TridentQuaternion> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(real.coeff_or_zero(i), e1.coeff_or_zero(i), e2.coeff_or_zero(i));
  }
  return TridentChebSeries(std::move(out));
}

}  // namespace

TridentChebSeries earth_twist_coeffs(const TridentChebSeries& current, const EarthModel& model,
                                     const SolverConfig& cfg) {
  const std::vector<double> nodes = chebyshev_nodes(cfg.node_count());
  std::vector<Quaternion> minus_g;
  minus_g.reserve(nodes.size());
  for (double tau : nodes) {
    const TridentQuaternion t = cheb_eval(current, tau);
    const Vec3 r_e = (2.0 * (t.e2() * t.real().conjugate())).v();
    minus_g.push_back(Quaternion::vector(-gravitation_e(r_e, model)));
  }
  const QuatSeries e1 = cheb_fit_nodes(minus_g, cfg.n_oe);
  const QuatSeries real = QuatSeries::constant(Quaternion::vector(model.earth_rate_e()));

  QuatSeries e2;
  if (cfg.variant == TwistVariant::BodySide) {
    e2 = -2.0 * cheb_truncate(cheb_product(e1_part(current), conjugate(real_part(current))), cfg.m_q);
  }
  return assemble(real, e1, e2);
}

TridentChebSeries body_twist_for_iterate(const TridentChebSeries& fitted,
                                         const TridentChebSeries& current,
                                         const SolverConfig& cfg) {
  if (cfg.variant == TwistVariant::BodySide) return fitted;
  const QuatSeries x1 =
      2.0 * cheb_truncate(cheb_product(conjugate(real_part(current)), e1_part(current)), cfg.m_q);
  return assemble(real_part(fitted), e1_part(fitted), x1);
}

TridentChebSeries picard_step(const TridentChebSeries& current, const TridentChebSeries& body,
                              const TridentChebSeries& earth, const TridentQuaternion& q0,
                              double t_n, const SolverConfig& cfg) {
  const TridentChebSeries integrand = cheb_product(current, body) - cheb_product(earth, current);
  const TridentChebSeries integral =
      cheb_truncate((t_n / 4.0) * cheb_integrate(integrand), cfg.m_q);

  std::vector<TridentQuaternion> c = integral.coeffs();
  // Restore the initial condition after truncation: sum_k c_k (-1)^k = q0.
  TridentQuaternion tail;
  for (std::size_t k = 1; k < c.size(); ++k) tail = (k % 2 == 0) ? tail + c[k] : tail - c[k];
  c[0] = q0 - tail;
  return TridentChebSeries(std::move(c));
}

double coefficient_rms_change(const TridentChebSeries& a, const TridentChebSeries& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += (a.coeff_or_zero(i).components() - b.coeff_or_zero(i).components()).squaredNorm();
  }
  return std::sqrt(sum / double(12 * n));
}

TridentQuaternion ode_residual(const SolveReport& report, double t_n, double tau) {
  const TridentQuaternion q = cheb_eval(report.series, tau);
  const TridentQuaternion dq = (2.0 / t_n) * cheb_eval(cheb_differentiate(report.series), tau);
  const TridentQuaternion body = cheb_eval(report.body_twist, tau);
  const TridentQuaternion earth = cheb_eval(report.earth_twist, tau);
  return 2.0 * dq - (q * body - earth * q);
}

WindowSolution solve_window(const ImuWindow& w, const NavState& s0, const EarthModel& model,
                            const SolverConfig& cfg) {
  cfg.validate(w.size());
  const BodyTwistFit fit = fit_body_twist(w, cfg);
  const TridentQuaternion q0 = embed_state(s0, model);

  SolveReport report;
  TridentChebSeries current = TridentChebSeries::constant(q0);
  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    report.earth_twist = earth_twist_coeffs(current, model, cfg);
    report.body_twist = body_twist_for_iterate(fit.series, current, cfg);
    TridentChebSeries next =
        picard_step(current, report.body_twist, report.earth_twist, q0, w.t_n, cfg);
    report.rms_change = coefficient_rms_change(next, current);
    report.iterations = iter;
    current = std::move(next);
    if (report.rms_change < cfg.rms_tol) {
      report.converged = true;
      break;
    }
  }
  report.series = current;
  return {recover_state(cheb_eval(current, 1.0), model), std::move(report)};
}

std::vector<TrajectoryPoint> solve_trajectory(
    const std::vector<ImuWindow>& windows, const NavState& s0, const EarthModel& model,
    const SolverConfig& cfg,
    const std::function<void(const ImuWindow&, const WindowSolution&)>& on_window) {
  std::vector<TrajectoryPoint> out;
  out.reserve(windows.size() + 1);
  out.push_back({windows.empty() ? 0.0 : windows.front().t_start, s0, 0, 0.0, true});
  NavState state = s0;
  for (const ImuWindow& w : windows) {
    const WindowSolution sol = solve_window(w, state, model, cfg);
    if (on_window) on_window(w, sol);
    state = sol.end;
    out.push_back({w.t_start + w.t_n, state, sol.report.iterations, sol.report.rms_change,
                   sol.report.converged});
  }
  return out;
}

}  // namespace triq
