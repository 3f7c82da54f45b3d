#include "triq/run.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "triq/baseline.hpp"
#include "triq/error.hpp"
#include "triq/format.hpp"

namespace triq {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Tq: return "tq";
    case Algorithm::TwoSample: return "twosample";
    case Algorithm::Rk4: return "rk4";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<Algorithm> parse_algorithms(std::string_view list) {
  std::vector<Algorithm> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view name = trim(list.substr(pos, comma - pos));
    Algorithm a;
    if (name == "tq") a = Algorithm::Tq;
    else if (name == "twosample") a = Algorithm::TwoSample;
    else if (name == "rk4") a = Algorithm::Rk4;
    else throw Error(ErrorKind::InvalidConfig, "unknown algorithm '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), a) != out.end()) {
      throw Error(ErrorKind::InvalidConfig, "algorithm listed twice: " + std::string(name));
    }
    out.push_back(a);
    pos = comma + 1;
  }
  return out;
}

RunConfig RunConfig::paper_vi() {
  RunConfig cfg;
  cfg.scenario = ScenarioParams::paper_vi();
  cfg.earth = EarthModel::wgs84();
  cfg.window = 8;
  cfg.solver = SolverConfig::for_window(cfg.window);
  return cfg;
}

void RunConfig::validate() const {
  if (algorithms.empty()) throw Error(ErrorKind::InvalidConfig, "no algorithm selected");
  if (decimate < 1) throw Error(ErrorKind::InvalidConfig, "decimate must be >= 1");
  if (!(rk4_rate > 0.0)) throw Error(ErrorKind::InvalidConfig, "rk4_rate must be > 0");
  scenario.validate();
  earth.validate();
  solver.validate(window);
  const bool twosample =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::TwoSample) != algorithms.end();
  if (twosample && window % 2 != 0) {
    throw Error(ErrorKind::InvalidConfig, "the two-sample grid needs an even window size");
  }
}

namespace {

using Section = std::map<std::string, std::pair<std::string, int>, std::less<>>;

double to_double(const std::pair<std::string, int>& v) {
  double x = 0.0;
  const char* end = v.first.data() + v.first.size();
  const auto res = std::from_chars(v.first.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorKind::InvalidConfig,
                "line " + std::to_string(v.second) + ": expected a number, got '" + v.first + "'");
  }
  return x;
}

std::size_t to_size(const std::pair<std::string, int>& v) {
  const double x = to_double(v);
  if (!(x >= 0.0) || x != std::floor(x)) {
    throw Error(ErrorKind::InvalidConfig,
                "line " + std::to_string(v.second) + ": expected a non-negative integer");
  }
  return std::size_t(x);
}

template <class F>
void take(Section& sec, std::string_view key, F&& apply) {
  const auto it = sec.find(key);
  if (it == sec.end()) return;
  apply(it->second);
  sec.erase(it);
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig cfg) {
  std::map<std::string, Section, std::less<>> sections;
  std::string current;
  int line_no = 0;
  std::istringstream is{std::string(text)};
  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    line = trim(line.substr(0, std::min(line.find('#'), line.find(';'))));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": bad section");
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "scenario" && current != "solver" && current != "earth" && current != "output") {
        throw Error(ErrorKind::InvalidConfig,
                    "line " + std::to_string(line_no) + ": unknown section [" + current + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || current.empty()) {
      throw Error(ErrorKind::InvalidConfig,
                  "line " + std::to_string(line_no) + ": expected key = value inside a section");
    }
    sections[current][std::string(trim(line.substr(0, eq)))] = {
        std::string(trim(line.substr(eq + 1))), line_no};
  }

  Section& sc = sections["scenario"];
  take(sc, "v0", [&](auto& v) { cfg.scenario.v0 = to_double(v); });
  take(sc, "accel_amplitude", [&](auto& v) { cfg.scenario.accel_amplitude = to_double(v); });
  take(sc, "accel_frequency", [&](auto& v) { cfg.scenario.accel_frequency = to_double(v); });
  take(sc, "cone_angle", [&](auto& v) { cfg.scenario.cone_angle = to_double(v); });
  take(sc, "cone_rate", [&](auto& v) { cfg.scenario.cone_rate = to_double(v); });
  take(sc, "latitude", [&](auto& v) { cfg.scenario.start.latitude = to_double(v); });
  take(sc, "longitude", [&](auto& v) { cfg.scenario.start.longitude = to_double(v); });
  take(sc, "height", [&](auto& v) { cfg.scenario.start.height = to_double(v); });
  take(sc, "duration", [&](auto& v) { cfg.scenario.duration = to_double(v); });
  take(sc, "imu_rate", [&](auto& v) { cfg.scenario.imu_rate = to_double(v); });

  Section& so = sections["solver"];
  take(so, "window", [&](auto& v) {
    cfg.window = to_size(v);
    if (cfg.window < 2) throw Error(ErrorKind::InvalidConfig, "window must be >= 2");
    const TwistVariant variant = cfg.solver.variant;
    cfg.solver = SolverConfig::for_window(cfg.window);
    cfg.solver.variant = variant;
  });
  take(so, "n_ob", [&](auto& v) { cfg.solver.n_ob = to_size(v); });
  take(so, "n_oe", [&](auto& v) { cfg.solver.n_oe = to_size(v); });
  take(so, "m_q", [&](auto& v) { cfg.solver.m_q = to_size(v); });
  take(so, "max_iters", [&](auto& v) { cfg.solver.max_iters = to_size(v); });
  take(so, "rms_tol", [&](auto& v) { cfg.solver.rms_tol = to_double(v); });
  take(so, "gravity_nodes", [&](auto& v) { cfg.solver.gravity_nodes = to_size(v); });
  take(so, "rk4_rate", [&](auto& v) { cfg.rk4_rate = to_double(v); });
  take(so, "variant", [&](auto& v) {
    if (v.first == "body") cfg.solver.variant = TwistVariant::BodySide;
    else if (v.first == "earth") cfg.solver.variant = TwistVariant::EarthSide;
    else throw Error(ErrorKind::InvalidConfig, "variant must be 'body' or 'earth'");
  });

  Section& ea = sections["earth"];
  take(ea, "semi_major_axis", [&](auto& v) { cfg.earth.semi_major_axis = to_double(v); });
  take(ea, "flattening", [&](auto& v) { cfg.earth.flattening = to_double(v); });
  take(ea, "rotation_rate", [&](auto& v) { cfg.earth.rotation_rate = to_double(v); });
  take(ea, "gravity_equator", [&](auto& v) { cfg.earth.gravity_equator = to_double(v); });
  take(ea, "gravity_pole", [&](auto& v) { cfg.earth.gravity_pole = to_double(v); });
  take(ea, "gm", [&](auto& v) { cfg.earth.gm = to_double(v); });
  take(ea, "gravity", [&](auto& v) {
    if (v.first == "normal") cfg.earth.gravity = GravityModel::Normal;
    else if (v.first == "none") cfg.earth.gravity = GravityModel::None;
    else throw Error(ErrorKind::InvalidConfig, "gravity must be 'normal' or 'none'");
  });

  Section& out = sections["output"];
  take(out, "algos", [&](auto& v) { cfg.algorithms = parse_algorithms(v.first); });
  take(out, "out", [&](auto& v) { cfg.out_dir = v.first; });
  take(out, "decimate", [&](auto& v) { cfg.decimate = to_size(v); });

  for (const auto& [name, sec] : sections) {
    if (!sec.empty()) {
      const auto& [key, val] = *sec.begin();
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(val.second) + ": unknown key " +
                                                name + "." + key);
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream text;
  text << is.rdbuf();
  return parse_config(text.str(), std::move(base));
}

double principal_angle_error(const Quaternion& q_true, const Quaternion& q_est) {
  if (!q_true.is_unit() || !q_est.is_unit()) {
    throw Error(ErrorKind::NonUnitQuaternion, "principal_angle_error");
  }
  // Same angle as 2 acos(|s|), but without the ~1e-8 rad floor acos has
  // next to 1.
  const Quaternion d = q_true.conjugate() * q_est;
  return 2.0 * std::atan2(d.v().norm(), std::abs(d.s()));
}

ErrorRecord error_record(double t, const NavState& truth, const NavState& est,
                         const EarthModel& model, bool converged) {
  const Mat3 c_ne = dcm_e_to_n(ecef_to_geodetic(truth.r_e, model));
  ErrorRecord r;
  r.t = t;
  r.att = principal_angle_error(truth.q_eb, est.q_eb);
  r.vel = c_ne * (est.v_e - truth.v_e);
  r.pos = c_ne * (est.r_e - truth.r_e);
  r.converged = converged;
  return r;
}

std::vector<ErrorRecord> run_algorithm(const RunConfig& cfg, Algorithm algo,
                                       std::span<const ImuSample> samples) {
  const std::size_t n = cfg.window;
  const std::size_t windows = samples.size() / n;
  std::vector<ErrorRecord> out;
  if (windows == 0) return out;
  out.reserve(windows + 1);

  const ScenarioParams& p = cfg.scenario;
  const EarthModel& m = cfg.earth;
  const NavState s0 = truth_to_eframe(0.0, p, m);
  auto record = [&](double t, const NavState& est, bool converged) {
    out.push_back(error_record(t, truth_to_eframe(t, p, m), est, m, converged));
  };
  record(0.0, s0, true);

  switch (algo) {
    case Algorithm::Tq: {
      const auto wins = make_windows(samples, n, ImuMode::Increments);
      NavState state = s0;
      for (const ImuWindow& w : wins) {
        const WindowSolution sol = solve_window(w, state, m, cfg.solver);
        state = sol.end;
        record(w.t_start + w.t_n, state, sol.report.converged);
      }
      break;
    }
    case Algorithm::TwoSample: {
      const auto traj = two_sample_trajectory(samples.first(windows * n), s0, m);
      for (std::size_t k = n / 2; k < traj.size(); k += n / 2) record(traj[k].t, traj[k].state, true);
      break;
    }
    case Algorithm::Rk4: {
      auto rhs = [&](double t, const NavState& s) {
        const ImuRates r = imu_rates(t, p, m);
        return traditional_rhs(s, r.omega_ib_b, r.f_b, m);
      };
      NavState state = s0;
      double t_prev = 0.0;
      for (std::size_t k = 1; k <= windows; ++k) {
        const double t = samples[k * n - 1].t;
        state = rk4_propagate(rhs, state, t_prev, t, 1.0 / cfg.rk4_rate, normalize_attitude);
        record(t, state, true);
        t_prev = t;
      }
      break;
    }
  }
  return out;
}

std::string error_csv(std::span<const ErrorRecord> records, std::size_t decimate) {
  if (decimate < 1) throw Error(ErrorKind::InvalidConfig, "decimate must be >= 1");
  std::string out(kErrorCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < records.size(); i += decimate) {
    const ErrorRecord& r = records[i];
    out += format_double(r.t);
    out += ',';
    out += format_double(r.att);
    for (const Vec3* v : {&r.vel, &r.pos}) {
      for (int k = 0; k < 3; ++k) {
        out += ',';
        out += format_double((*v)(k));
      }
    }
    out += r.converged ? ",1\n" : ",0\n";
  }
  return out;
}

std::vector<ErrorRecord> parse_error_csv(std::string_view text) {
  std::vector<ErrorRecord> out;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (header) {
      if (line != kErrorCsvHeader) throw Error(ErrorKind::Io, "unexpected error CSV header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const std::vector<double> f = parse_csv_doubles(line);
    if (f.size() != 9) throw Error(ErrorKind::Io, "error CSV rows need 9 fields");
    ErrorRecord r;
    r.t = f[0];
    r.att = f[1];
    r.vel = {f[2], f[3], f[4]};
    r.pos = {f[5], f[6], f[7]};
    r.converged = f[8] != 0.0;
    out.push_back(r);
  }
  if (header) throw Error(ErrorKind::Io, "empty error CSV");
  return out;
}

std::vector<ErrorRecord> read_error_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream text;
  text << is.rdbuf();
  return parse_error_csv(text.str());
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string());
  os << text;
  if (!os) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<RunResult> run_scenario(const RunConfig& cfg) {
  cfg.validate();
  ensure_dir(cfg.out_dir);
  const std::vector<ImuSample> samples = synthesize_imu(cfg.scenario, cfg.earth);
  std::vector<RunResult> results;
  for (Algorithm a : cfg.algorithms) {
    const std::vector<ErrorRecord> records = run_algorithm(cfg, a, samples);
    RunResult r{a, cfg.out_dir / (std::string(algorithm_name(a)) + ".csv"), 0};
    r.not_converged = std::size_t(
        std::count_if(records.begin(), records.end(), [](const ErrorRecord& e) { return !e.converged; }));
    write_text(r.csv, error_csv(records, cfg.decimate));
    results.push_back(r);
  }
  return results;
}

void simulate_scenario(const RunConfig& cfg) {
  cfg.validate();
  ensure_dir(cfg.out_dir);
  const std::vector<ImuSample> samples = synthesize_imu(cfg.scenario, cfg.earth);
  write_imu_file(cfg.out_dir / "imu.csv", samples);

  std::string text = "t,qs,qx,qy,qz,vx,vy,vz,rx,ry,rz\n";
  auto row = [&](double t) {
    const NavState s = truth_to_eframe(t, cfg.scenario, cfg.earth);
    text += format_double(t);
    for (double x : {s.q_eb.s(), s.q_eb.v().x(), s.q_eb.v().y(), s.q_eb.v().z(), s.v_e.x(),
                     s.v_e.y(), s.v_e.z(), s.r_e.x(), s.r_e.y(), s.r_e.z()}) {
      text += ',';
      text += format_double(x);
    }
    text += '\n';
  };
  row(0.0);
  for (const ImuSample& s : samples) row(s.t);
  write_text(cfg.out_dir / "truth.csv", text);
}

SeriesSummary summarize_series(std::string name, std::span<const ErrorRecord> records) {
  SeriesSummary s;
  s.name = std::move(name);
  s.records = records.size();
  double att2 = 0.0, vel2 = 0.0, pos2 = 0.0;
  for (const ErrorRecord& r : records) {
    const double v = r.vel.norm(), p = r.pos.norm();
    s.att.max = std::max(s.att.max, r.att);
    s.vel.max = std::max(s.vel.max, v);
    s.pos.max = std::max(s.pos.max, p);
    att2 += r.att * r.att;
    vel2 += v * v;
    pos2 += p * p;
    if (!r.converged) ++s.not_converged;
  }
  if (!records.empty()) {
    const double n = double(records.size());
    s.att.rms = std::sqrt(att2 / n);
    s.vel.rms = std::sqrt(vel2 / n);
    s.pos.rms = std::sqrt(pos2 / n);
  }
  return s;
}

Summary summarize(const std::vector<SeriesSummary>& series,
                  const std::vector<std::vector<ErrorRecord>>& records) {
  if (series.size() != records.size()) throw Error(ErrorKind::InvalidConfig, "summary size mismatch");
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records.front();
    const auto& b = records[i];
    const bool same = a.size() == b.size() &&
                      std::equal(a.begin(), a.end(), b.begin(),
                                 [](const ErrorRecord& x, const ErrorRecord& y) { return x.t == y.t; });
    if (!same) {
      throw Error(ErrorKind::GridMismatch, series[i].name + " does not share the time grid of " +
                                               series.front().name);
    }
  }
  Summary out;
  out.series = series;
  auto ratio = [](double num, double den) -> std::optional<double> {
    if (!(den > 0.0)) return std::nullopt;
    if (num == den) return 0.0;
    if (!(num > 0.0)) return std::nullopt;
    return std::log10(num / den);
  };
  for (std::size_t i = 1; i < series.size(); ++i) {
    const SeriesSummary& base = series.front();
    const SeriesSummary& s = series[i];
    out.ratios.push_back({s.name, ratio(s.att.max, base.att.max), ratio(s.vel.max, base.vel.max),
                          ratio(s.pos.max, base.pos.max)});
  }
  return out;
}

Summary summarize_files(const std::vector<std::filesystem::path>& paths) {
  std::vector<SeriesSummary> series;
  std::vector<std::vector<ErrorRecord>> records;
  for (const auto& p : paths) {
    records.push_back(read_error_csv(p));
    series.push_back(summarize_series(p.stem().string(), records.back()));
  }
  return summarize(series, records);
}

std::string summary_json(const Summary& s) {
  using nlohmann::json;
  auto stats = [](const ChannelStats& c) { return json{{"max", c.max}, {"rms", c.rms}}; };
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["series"] = json::array();
  for (const SeriesSummary& x : s.series) {
    j["series"].push_back({{"name", x.name},
                           {"records", x.records},
                           {"not_converged", x.not_converged},
                           {"attitude_rad", stats(x.att)},
                           {"velocity_mps", stats(x.vel)},
                           {"position_m", stats(x.pos)}});
  }
  if (!s.ratios.empty()) {
    j["reference"] = s.series.front().name;
    j["log10_ratios"] = json::array();
    for (const RatioRow& r : s.ratios) {
      j["log10_ratios"].push_back({{"name", r.name},
                                   {"attitude", opt(r.att)},
                                   {"velocity", opt(r.vel)},
                                   {"position", opt(r.pos)}});
    }
  }
  return j.dump(2) + "\n";
}

void print_summary(std::ostream& os, const Summary& s) {
  char buf[256];
  os << "series        records  unconv   att max     att rms     vel max     vel rms     pos max     pos rms\n";
  for (const SeriesSummary& x : s.series) {
    std::snprintf(buf, sizeof buf, "%-12s %8zu %7zu   %.3e   %.3e   %.3e   %.3e   %.3e   %.3e\n",
                  x.name.c_str(), x.records, x.not_converged, x.att.max, x.att.rms, x.vel.max,
                  x.vel.rms, x.pos.max, x.pos.rms);
    os << buf;
  }
  if (s.ratios.empty()) return;
  auto fmt = [](const std::optional<double>& v) {
    char b[32];
    if (v) std::snprintf(b, sizeof b, "%6.2f", *v);
    else std::snprintf(b, sizeof b, "%6s", "n/a");
    return std::string(b);
  };
  os << "log10(max / max of " << s.series.front().name << "):\n";
  for (const RatioRow& r : s.ratios) {
    std::snprintf(buf, sizeof buf, "  %-12s attitude %s  velocity %s  position %s orders\n",
                  r.name.c_str(), fmt(r.att).c_str(), fmt(r.vel).c_str(), fmt(r.pos).c_str());
    os << buf;
  }
}

}  // namespace triq
