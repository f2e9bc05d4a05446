#include "qwabs/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwabs/error.hpp"

namespace qwabs {

using std::numbers::pi;

double p_inf_1_hadamard(const QubitState& phi) {
  return hadamard_infinite_constants().probability(phi);
}

AbsorptionConstants hadamard_infinite_constants() {
  return {2.0 / pi, 2.0 / pi, cplx(1.0 - 2.0 / pi, 0.0)};
}

double expected_t0_given_hit(const QubitState& phi) { return 1.0 / p_inf_1_hadamard(phi); }

MomentValue moment_t0_given_hit(int m, const QubitState& phi) {
  if (m <= 0) throw std::invalid_argument("moment order must be positive");
  if (m == 1) return expected_t0_given_hit(phi);
  return Divergent{};
}

double hyp2f1(double a, double b, double c, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("hyp2f1 needs x in [0, 1]");
  if (x == 1.0) {
    if (c - a - b <= 0.0) throw DivergenceError("2F1 diverges at x = 1 when c - a - b <= 0");
    return std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
  }
  double sum = 1.0, comp = 0.0, term = 1.0;
  constexpr long kMaxTerms = 100'000'000;
  for (long n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    // Neumaier summation; terms can be tiny relative to the sum for a long time.
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (term == 0.0 || std::abs(term) < 1e-16 * std::abs(sum)) break;
  }
  return sum + comp;
}

double f_prime_at_1() {
  // f'(z) = (z^4 F(1/2,1/2;2;z^4) - F(-1/2,-1/2;1;z^4) + 1) / z^2
  const double z = 1.0, z4 = 1.0;
  return (z4 * hyp2f1(0.5, 0.5, 2.0, z4) - hyp2f1(-0.5, -0.5, 1.0, z4) + 1.0) / (z * z);
}

double sum_r_squared_infinite() { return hyp2f1(-0.5, -0.5, 1.0, 1.0) - 1.0; }

double conjecture_p(int n) {
  if (n < 1) throw std::invalid_argument("conjecture_p needs N >= 1");
  const double g = std::pow(3.0 + 2.0 * std::numbers::sqrt2, n - 1);
  if (std::isinf(g)) return 1.0 / std::numbers::sqrt2;
  return (g - 1.0) / (g + 1.0) / std::numbers::sqrt2;
}

double conjecture_step(double p) { return (2.0 * p + 1.0) / (2.0 * p + 2.0); }

double bach_limit_rho(double rho, Chirality chirality) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie strictly inside (0, 1)");
  const double h = std::acos(1.0 - 2.0 * rho) / pi;
  if (chirality == Chirality::Left) return h;
  return rho / (1.0 - rho) * (h - 1.0) + 2.0 / (pi * std::sqrt(1.0 / rho - 1.0));
}

}  // namespace qwabs
