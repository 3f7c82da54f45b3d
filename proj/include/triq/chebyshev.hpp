// First-kind Chebyshev series on tau in [-1, 1].
//
// Coefficients may be any type with +, -, scalar * and a value-initialised
// zero; products use the coefficient type's operator* and keep operand
// order, so non-commutative coefficients (quaternions, trident quaternions)
// are handled correctly.
#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "triq/algebra.hpp"
#include "triq/error.hpp"

namespace triq {

inline constexpr double kTauSlack = 1e-12;

template <class T>
class ChebSeries {
 public:
  ChebSeries() : coeffs_(1, T{}) {}
  explicit ChebSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(T{});
  }

  static ChebSeries constant(const T& c) { return ChebSeries(std::vector<T>{c}); }
  /// Series whose only nonzero coefficient is `c` at degree i.
  static ChebSeries unit(std::size_t i, const T& c) {
    std::vector<T> v(i + 1, T{});
    v[i] = c;
    return ChebSeries(std::move(v));
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  /// Coefficient i, or zero past the stored degree.
  T coeff_or_zero(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T{}; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(coeffs_[0]));
    std::vector<U> out;
    out.reserve(coeffs_.size());
    for (const T& c : coeffs_) out.push_back(f(c));
    return ChebSeries<U>(std::move(out));
  }

  friend ChebSeries operator+(const ChebSeries& a, const ChebSeries& b) {
    std::vector<T> out(std::max(a.size(), b.size()), T{});
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff_or_zero(i) + b.coeff_or_zero(i);
    return ChebSeries(std::move(out));
  }
  friend ChebSeries operator-(const ChebSeries& a, const ChebSeries& b) {
    std::vector<T> out(std::max(a.size(), b.size()), T{});
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff_or_zero(i) - b.coeff_or_zero(i);
    return ChebSeries(std::move(out));
  }
  friend ChebSeries operator*(double k, const ChebSeries& s) {
    return s.map([k](const T& c) { return T(k * c); });
  }

 private:
  std::vector<T> coeffs_;
};

using ScalarChebSeries = ChebSeries<double>;
using TridentChebSeries = ChebSeries<TridentQuaternion>;

/// Affine map between window time t in [0, t_N] and tau in [-1, 1].
class TimeMap {
 public:
  explicit TimeMap(double t_n) : t_n_(t_n) {
    if (!(t_n > 0.0)) throw Error(ErrorKind::OutOfDomain, "window length must be positive");
  }
  double window() const { return t_n_; }
  double to_tau(double t) const { return 2.0 * t / t_n_ - 1.0; }
  double to_time(double tau) const { return 0.5 * t_n_ * (1.0 + tau); }
  /// dt/dtau.
  double scale() const { return 0.5 * t_n_; }

 private:
  double t_n_;
};

/// F_i(tau) by the three-term recurrence.
double cheb_polynomial(std::size_t i, double tau);

/// integral of F_i over [tau_a, tau_b].
double cheb_definite_integral(std::size_t i, double tau_a, double tau_b);

/// Chebyshev-Gauss nodes cos((k + 1/2) pi / P), k = 0..P-1.
std::vector<double> chebyshev_nodes(std::size_t count);

namespace detail {
inline void check_tau(double tau) {
  if (!(std::abs(tau) <= 1.0 + kTauSlack)) {
    throw Error(ErrorKind::OutOfDomain, "tau outside [-1, 1]");
  }
}
}  // namespace detail

/// Clenshaw evaluation.
template <class T>
T cheb_eval(const ChebSeries<T>& s, double tau) {
  detail::check_tau(tau);
  const auto& c = s.coeffs();
  if (c.size() == 1) return c[0];
  T b1{}, b2{};
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    T b0 = c[k] + 2.0 * tau * b1 - b2;
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return c[0] + tau * b1 - b2;
}

/// Full product using F_j F_k = (F_{j+k} + F_{|j-k|}) / 2; degree is the
/// sum of the operand degrees. Coefficient products are a[j] * b[k].
template <class T>
ChebSeries<T> cheb_product(const ChebSeries<T>& a, const ChebSeries<T>& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<T> out(ca.size() + cb.size() - 1, T{});
  for (std::size_t j = 0; j < ca.size(); ++j) {
    for (std::size_t k = 0; k < cb.size(); ++k) {
      const T half = 0.5 * (ca[j] * cb[k]);
      out[j + k] = out[j + k] + half;
      const std::size_t d = j > k ? j - k : k - j;
      out[d] = out[d] + half;
    }
  }
  return ChebSeries<T>(std::move(out));
}

/// Antiderivative vanishing at tau = -1; degree grows by one.
template <class T>
ChebSeries<T> cheb_integrate(const ChebSeries<T>& s) {
  const auto& c = s.coeffs();
  const std::size_t n = c.size();
  std::vector<T> out(n + 1, T{});
  out[1] = out[1] + c[0];
  if (n > 1) out[2] = out[2] + 0.25 * c[1];
  for (std::size_t i = 2; i < n; ++i) {
    out[i + 1] = out[i + 1] + (1.0 / (2.0 * double(i + 1))) * c[i];
    out[i - 1] = out[i - 1] - (1.0 / (2.0 * double(i - 1))) * c[i];
  }
  // F_k(-1) = (-1)^k
  T at_minus_one{};
  for (std::size_t k = 1; k <= n; ++k) {
    at_minus_one = (k % 2 == 0) ? at_minus_one + out[k] : at_minus_one - out[k];
  }
  out[0] = out[0] - at_minus_one;
  return ChebSeries<T>(std::move(out));
}

/// d/dtau of the series.
template <class T>
ChebSeries<T> cheb_differentiate(const ChebSeries<T>& s) {
  const auto& c = s.coeffs();
  const std::size_t n = c.size();
  if (n == 1) return ChebSeries<T>();
  std::vector<T> d(n + 1, T{});
  for (std::size_t k = n - 1; k >= 1; --k) {
    d[k - 1] = d[k + 1] + (2.0 * double(k)) * c[k];
  }
  d[0] = 0.5 * d[0];
  d.resize(n - 1);
  return ChebSeries<T>(std::move(d));
}

/// Discrete cosine projection of samples taken at chebyshev_nodes(P) onto
/// degrees 0..m. Exact for polynomials of degree < P.
template <class T>
ChebSeries<T> cheb_fit_nodes(std::span<const T> values, std::size_t degree) {
  const std::size_t p = values.size();
  if (p < degree + 1) {
    throw Error(ErrorKind::InsufficientNodes, "need at least degree + 1 node values");
  }
  std::vector<T> out(degree + 1, T{});
  for (std::size_t i = 0; i <= degree; ++i) {
    T acc{};
    for (std::size_t k = 0; k < p; ++k) {
      const double w = std::cos(double(i) * (double(k) + 0.5) * std::numbers::pi / double(p));
      acc = acc + w * values[k];
    }
    out[i] = ((i == 0 ? 1.0 : 2.0) / double(p)) * acc;
  }
  return ChebSeries<T>(std::move(out));
}

template <class T>
ChebSeries<T> cheb_fit_nodes(const std::vector<T>& values, std::size_t degree) {
  return cheb_fit_nodes(std::span<const T>(values), degree);
}

/// Drops coefficients above degree m.
template <class T>
ChebSeries<T> cheb_truncate(const ChebSeries<T>& s, std::size_t m) {
  if (s.degree() <= m) return s;
  return ChebSeries<T>(std::vector<T>(s.coeffs().begin(), s.coeffs().begin() + m + 1));
}

}  // namespace triq
