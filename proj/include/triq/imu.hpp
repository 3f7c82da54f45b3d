// IMU samples, fixed-size windows of samples, and the plain-text IMU file.
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "triq/algebra.hpp"

namespace triq {

enum class ImuMode {
  Rates,       // gyro in rad/s, accel in m/s^2, sampled at t_k
  Increments,  // gyro in rad, accel in m/s, integrated over (t_{k-1}, t_k]
};

struct ImuSample {
  double t = 0.0;  // sample time; end of the interval in increments mode
  Vec3 gyro = Vec3::Zero();
  Vec3 accel = Vec3::Zero();
};

/// N consecutive samples. Times are relative to `t_start`; in increments
/// mode the k-th sample covers (times[k-1], times[k]] with times[-1] = 0.
struct ImuWindow {
  double t_start = 0.0;
  double t_n = 0.0;
  ImuMode mode = ImuMode::Increments;
  std::vector<double> times;
  std::vector<Vec3> gyro;
  std::vector<Vec3> accel;

  std::size_t size() const { return times.size(); }
  /// Throws SingularFit on repeated or unordered times, InvalidConfig on
  /// N < 2 or mismatched sizes.
  void validate() const;
};

/// Splits a sample stream into windows of `n` samples starting at `t0`.
/// Trailing samples that do not fill a window are dropped.
std::vector<ImuWindow> make_windows(std::span<const ImuSample> samples, std::size_t n,
                                    ImuMode mode, double t0 = 0.0);

/// One record per line: t,dthx,dthy,dthz,dvx,dvy,dvz (increments).
void write_imu_file(const std::filesystem::path& path, std::span<const ImuSample> samples);
std::vector<ImuSample> read_imu_file(const std::filesystem::path& path);

}  // namespace triq
