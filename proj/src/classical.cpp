#include "qwabs/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace qwabs::classical {

void ClassicalWalkSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (k < 0) throw std::invalid_argument("start site must be non-negative");
  if (n && (*n < 1 || k > *n)) throw std::invalid_argument("need 1 <= N and k <= N");
}

double ruin_prob(const ClassicalWalkSpec& spec) {
  spec.validate();
  if (!spec.n) throw std::invalid_argument("ruin_prob needs a finite barrier");
  const int n = *spec.n, k = spec.k;
  if (k == 0) return 1.0;
  if (k == n) return 0.0;
  if (std::abs(spec.p - 0.5) <= kSymmetricWindow) return 1.0 - static_cast<double>(k) / n;
  if (spec.q() == 0.0) return 1.0;
  if (spec.p == 0.0) return 0.0;
  const double ratio = spec.p / spec.q();
  // For ratio > 1 divide through by ratio^N to keep the powers bounded.
  if (ratio > 1.0) {
    const double inv = 1.0 / ratio;
    return (std::pow(inv, n - k) - 1.0) / (std::pow(inv, n) - 1.0);
  }
  return (std::pow(ratio, k) - std::pow(ratio, n)) / (1.0 - std::pow(ratio, n));
}

double ruin_prob_infinite(double p, int k) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (k < 0) throw std::invalid_argument("start site must be non-negative");
  if (k == 0 || p >= 0.5) return 1.0;
  return std::pow(p / (1.0 - p), k);
}

std::vector<double> solve_ruin_linear(int n, double p) {
  if (n < 2) throw std::invalid_argument("linear solve needs N >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const double q = 1.0 - p;
  // Unknowns P_1..P_{N-1}:  -p P_{k-1} + P_k - q P_{k+1} = 0, with the known
  // boundary values moved to the right-hand side. Thomas algorithm.
  const int m = n - 1;
  std::vector<double> sub(m, -p), diag(m, 1.0), sup(m, -q), rhs(m, 0.0);
  rhs[0] = p * 1.0;
  for (int i = 1; i < m; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> out(n + 1);
  out[0] = 1.0;
  out[n] = 0.0;
  out[m] = rhs[m - 1] / diag[m - 1];
  for (int i = m - 2; i >= 0; --i) out[i + 1] = (rhs[i] - sup[i] * out[i + 2]) / diag[i];
  return out;
}

MomentValue classical_conditional_expectation(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const double q = 1.0 - p;
  if (std::abs(p - 0.5) <= kSymmetricWindow) return Divergent{};
  const double root = std::sqrt(1.0 - 4.0 * p * q);
  return (p > 0.5 ? 2.0 * p : 2.0 * q) / root - 1.0;
}

MonteCarloEstimate monte_carlo_conditional_expectation(double p, long trials, long max_steps,
                                                        std::mt19937_64& rng) {
  std::bernoulli_distribution left(p);
  MonteCarloEstimate est;
  est.trials = trials;
  double total = 0.0;
  for (long t = 0; t < trials; ++t) {
    long site = 1, steps = 0;
    while (site > 0 && steps < max_steps) {
      site += left(rng) ? -1 : 1;
      ++steps;
    }
    if (site == 0) {
      ++est.hits;
      total += static_cast<double>(steps);
    }
  }
  est.mean = est.hits > 0 ? total / static_cast<double>(est.hits) : 0.0;
  return est;
}

}  // namespace qwabs::classical
