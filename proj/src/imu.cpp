#include "triq/imu.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "triq/error.hpp"
#include "triq/format.hpp"

namespace triq {

void ImuWindow::validate() const {
  if (times.size() < 2) throw Error(ErrorKind::InvalidConfig, "an IMU window needs N >= 2 samples");
  if (gyro.size() != times.size() || accel.size() != times.size()) {
    throw Error(ErrorKind::InvalidConfig, "IMU window arrays differ in length");
  }
  if (!(t_n > 0.0)) throw Error(ErrorKind::InvalidConfig, "IMU window length must be positive");
  double prev = mode == ImuMode::Increments ? 0.0 : -1.0;
  for (double t : times) {
    if (!(t > prev)) throw Error(ErrorKind::SingularFit, "IMU sample times must strictly increase");
    prev = t;
  }
}

std::vector<ImuWindow> make_windows(std::span<const ImuSample> samples, std::size_t n,
                                    ImuMode mode, double t0) {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "window size must be at least 2");
  std::vector<ImuWindow> out;
  double start = t0;
  for (std::size_t first = 0; first + n <= samples.size(); first += n) {
    ImuWindow w;
    w.t_start = start;
    w.mode = mode;
    w.t_n = samples[first + n - 1].t - start;
    for (std::size_t k = first; k < first + n; ++k) {
      w.times.push_back(samples[k].t - start);
      w.gyro.push_back(samples[k].gyro);
      w.accel.push_back(samples[k].accel);
    }
    w.validate();
    start = samples[first + n - 1].t;
    out.push_back(std::move(w));
  }
  return out;
}

void write_imu_file(const std::filesystem::path& path, std::span<const ImuSample> samples) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string());
  for (const ImuSample& s : samples) {
    os << format_double(s.t);
    for (int i = 0; i < 3; ++i) os << ',' << format_double(s.gyro(i));
    for (int i = 0; i < 3; ++i) os << ',' << format_double(s.accel(i));
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::vector<ImuSample> read_imu_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<ImuSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> f = parse_csv_doubles(line);
    if (f.size() != 7) {
      throw Error(ErrorKind::Io, path.string() + ":" + std::to_string(line_no) +
                                     ": expected 7 fields");
    }
    out.push_back({f[0], Vec3(f[1], f[2], f[3]), Vec3(f[4], f[5], f[6])});
  }
  return out;
}

}  // namespace triq
