// Scenario runner: configuration, per-algorithm propagation against the
// analytic truth, error series in the (north, up, east) frame, CSV output
// and summaries.
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triq/earth.hpp"
#include "triq/imu.hpp"
#include "triq/kinematics.hpp"
#include "triq/tqfilter.hpp"
#include "triq/trajectory.hpp"

namespace triq {

enum class Algorithm {
  Tq,         // trident quaternion functional iteration
  TwoSample,  // classical two-sample strapdown update
  Rk4,        // traditional model by RK4 on the exact rates
};

const char* algorithm_name(Algorithm a);
/// "tq,twosample,rk4" style list; throws InvalidConfig on unknown or
/// repeated names and on an empty list.
std::vector<Algorithm> parse_algorithms(std::string_view list);

struct RunConfig {
  ScenarioParams scenario;
  EarthModel earth;
  SolverConfig solver;
  std::size_t window = 8;   // N samples per tq window; also the output grid
  double rk4_rate = 1000.0;  // RK4 steps per second for the rk4 algorithm
  std::vector<Algorithm> algorithms{Algorithm::Tq, Algorithm::TwoSample};
  std::filesystem::path out_dir = ".";
  std::size_t decimate = 1;

  static RunConfig paper_vi();
  /// Throws InvalidConfig (and the component validators' errors).
  void validate() const;
};

/// Reads key = value lines grouped under [scenario], [solver], [earth] and
/// [output] sections on top of `base`. '#' and ';' start comments. Angles
/// are in radians. Setting solver.window resets the other solver keys to
/// their defaults for that window before explicit keys apply.
/// Throws InvalidConfig with the offending line number.
RunConfig parse_config(std::string_view text, RunConfig base = RunConfig::paper_vi());
RunConfig load_config(const std::filesystem::path& path, RunConfig base = RunConfig::paper_vi());

/// 2 acos(|scalar of q_true* o q_est|), in [0, pi]. Throws NonUnitQuaternion.
double principal_angle_error(const Quaternion& q_true, const Quaternion& q_est);

struct ErrorRecord {
  double t = 0.0;
  double att = 0.0;               // principal angle [rad]
  Vec3 vel = Vec3::Zero();        // estimate - truth, (north, up, east) [m/s]
  Vec3 pos = Vec3::Zero();        // estimate - truth, (north, up, east) [m]
  bool converged = true;
};

/// Errors of `est` against `truth`, resolved in the truth's local-level frame.
ErrorRecord error_record(double t, const NavState& truth, const NavState& est,
                         const EarthModel& model, bool converged = true);

/// Propagates one algorithm over the synthesized samples and returns errors
/// on the window-boundary grid, starting with t = 0 when at least one full
/// window exists (otherwise empty).
std::vector<ErrorRecord> run_algorithm(const RunConfig& cfg, Algorithm algo,
                                       std::span<const ImuSample> samples);

inline constexpr std::string_view kErrorCsvHeader =
    "t,att_err_rad,verr_n,verr_u,verr_e,perr_n,perr_u,perr_e,converged";

/// Header plus every `decimate`-th record, shortest round-trip floats.
std::string error_csv(std::span<const ErrorRecord> records, std::size_t decimate = 1);
std::vector<ErrorRecord> parse_error_csv(std::string_view text);
std::vector<ErrorRecord> read_error_csv(const std::filesystem::path& path);

struct RunResult {
  Algorithm algorithm;
  std::filesystem::path csv;
  std::size_t not_converged = 0;
};

/// Synthesizes the scenario, runs every selected algorithm and writes
/// <out_dir>/<name>.csv for each.
std::vector<RunResult> run_scenario(const RunConfig& cfg);

/// Writes the increment samples and the truth (t,qs,qx,qy,qz,vx,vy,vz,rx,ry,rz
/// at every sample time, plus t = 0) to <out_dir>/imu.csv and truth.csv.
void simulate_scenario(const RunConfig& cfg);

struct ChannelStats {
  double max = 0.0;
  double rms = 0.0;
};

struct SeriesSummary {
  std::string name;
  std::size_t records = 0;
  std::size_t not_converged = 0;
  ChannelStats att, vel, pos;  // principal angle, |vel error|, |pos error|
};

struct RatioRow {
  std::string name;  // series compared against the first one
  // log10(max of this series / max of the first), one per channel;
  // empty when the first series' max is zero.
  std::optional<double> att, vel, pos;
};

struct Summary {
  std::vector<SeriesSummary> series;
  std::vector<RatioRow> ratios;  // empty for a single series
};

SeriesSummary summarize_series(std::string name, std::span<const ErrorRecord> records);
/// Throws GridMismatch when the series do not share their time grid.
Summary summarize(const std::vector<SeriesSummary>& series,
                  const std::vector<std::vector<ErrorRecord>>& records);
/// Reads CSVs (named by file stem) and summarizes them.
Summary summarize_files(const std::vector<std::filesystem::path>& paths);

std::string summary_json(const Summary& s);
void print_summary(std::ostream& os, const Summary& s);

}  // namespace triq
