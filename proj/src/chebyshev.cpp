#include "triq/chebyshev.hpp"

namespace triq {

double cheb_polynomial(std::size_t i, double tau) {
  if (i == 0) return 1.0;
  double prev = 1.0, cur = tau;
  for (std::size_t k = 1; k < i; ++k) {
    const double next = 2.0 * tau * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Antiderivative of F_i for i != 1: F_{i+1} / (2(i+1)) - F_{i-1} / (2(i-1)).
double antiderivative(std::size_t i, double tau) {
  if (i == 0) return tau;
  const double di = double(i);
  return cheb_polynomial(i + 1, tau) / (2.0 * (di + 1.0)) -
         cheb_polynomial(i - 1, tau) / (2.0 * (di - 1.0));
}

}  // namespace

double cheb_definite_integral(std::size_t i, double tau_a, double tau_b) {
  for (double t : {tau_a, tau_b}) {
    if (!(t >= -1.0 - kTauSlack && t <= 1.0 + kTauSlack)) {
      throw Error(ErrorKind::OutOfDomain, "integration bound outside [-1, 1]");
    }
  }
  if (i == 1) return 0.5 * (tau_b * tau_b - tau_a * tau_a);
  return antiderivative(i, tau_b) - antiderivative(i, tau_a);
}

std::vector<double> chebyshev_nodes(std::size_t count) {
  std::vector<double> nodes(count);
  for (std::size_t k = 0; k < count; ++k) {
    nodes[k] = std::cos((double(k) + 0.5) * std::numbers::pi / double(count));
  }
  return nodes;
}

}  // namespace triq
