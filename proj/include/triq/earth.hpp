// Ellipsoidal earth model, normal gravity and local-level frame helpers.
//
// Local-level (n) frame axes are ordered (north, up, east).
#pragma once

#include "triq/algebra.hpp"

namespace triq {

enum class GravityModel {
  Normal,  // Somigliana normal gravity with free-air height correction
  None,    // gravitation switched off (g^e = 0)
};

struct EarthModel {
  double semi_major_axis = 6378137.0;         // a_e [m]
  double flattening = 1.0 / 298.257223563;    // f
  double rotation_rate = 7.292115e-5;         // omega_ie [rad/s]
  double gravity_equator = 9.7803253359;      // normal gravity at the equator [m/s^2]
  double gravity_pole = 9.8321849378;         // normal gravity at the poles [m/s^2]
  double gm = 3.986004418e14;                 // [m^3/s^2]
  GravityModel gravity = GravityModel::Normal;

  static EarthModel wgs84() { return {}; }
  /// Non-rotating, gravity-free earth with WGS-84 geometry.
  static EarthModel inertial() {
    EarthModel m;
    m.rotation_rate = 0.0;
    m.gravity = GravityModel::None;
    return m;
  }

  /// Throws Error(InvalidConfig) when a parameter is out of range.
  void validate() const;

  double semi_minor_axis() const { return semi_major_axis * (1.0 - flattening); }
  double eccentricity_squared() const { return flattening * (2.0 - flattening); }
  Vec3 earth_rate_e() const { return {0.0, 0.0, rotation_rate}; }
};

struct GeodeticPosition {
  double latitude = 0.0;   // L [rad]
  double longitude = 0.0;  // lambda [rad]
  double height = 0.0;     // h [m]
};

/// Transverse (prime vertical) radius R_E at latitude L.
double transverse_radius(double latitude, const EarthModel& model);
/// Meridian radius R_N at latitude L.
double meridian_radius(double latitude, const EarthModel& model);

Vec3 geodetic_to_ecef(const GeodeticPosition& p, const EarthModel& model);
/// Iterative inverse, at most 20 iterations; throws ConvergenceFailure.
GeodeticPosition ecef_to_geodetic(const Vec3& r_e, const EarthModel& model);

/// Normal gravity magnitude at latitude/height.
double normal_gravity(double latitude, double height, const EarthModel& model);

/// Local gravity g_l^e (mass attraction plus centrifugal).
Vec3 local_gravity_e(const Vec3& r_e, const EarthModel& model);

/// Mass-attraction acceleration g^e = g_l^e + (w_ie x)^2 r^e.
/// Throws NearSingularPosition when |r_e| < a_e / 2.
Vec3 gravitation_e(const Vec3& r_e, const EarthModel& model);

/// (w_ie x)^2 r^e, the centripetal term separating g^e from g_l^e.
Vec3 centripetal_e(const Vec3& r_e, const EarthModel& model);

/// Matrix mapping v^n = (north, up, east) to (lambda_dot, L_dot, h_dot).
/// Throws PolarSingularity when |cos L| <= 1e-9.
Mat3 curvature_matrix(const GeodeticPosition& p, const EarthModel& model);

/// Attitude of the n-frame relative to the e-frame: rotate_frame(c_en(p), r^e) = r^n.
Quaternion c_en(const GeodeticPosition& p);
/// Direction cosine matrix C_e^n with r^n = C_e^n r^e.
Mat3 dcm_e_to_n(const GeodeticPosition& p);

/// Earth rate w_ie^n.
Vec3 earth_rate_n(const GeodeticPosition& p, const EarthModel& model);
/// Transport rate w_en^n from the curvature radii and v^n.
Vec3 transport_rate_n(const GeodeticPosition& p, const Vec3& v_n, const EarthModel& model);

}  // namespace triq
