#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qwabs/closed_forms.hpp"

namespace qwabs::classical {

/// Nearest-neighbour walk stepping left (toward 0) with probability p.
struct ClassicalWalkSpec {
  double p = 0.5;
  std::optional<int> n;  // right barrier; nullopt for {0, 1, ...}
  int k = 0;

  double q() const { return 1.0 - p; }
  /// Throws std::invalid_argument unless 0 <= p <= 1 and 0 <= k <= N.
  void validate() const;
};

/// Within this distance of 1/2 the symmetric formula 1 - k/N is used.
inline constexpr double kSymmetricWindow = 1e-14;

/// P_k(T_0 < T_N) for a finite barrier N.
double ruin_prob(const ClassicalWalkSpec& spec);

/// P_k(T_0 < inf) on {0, 1, ...}: 1 for p >= 1/2, (p/q)^k otherwise.
double ruin_prob_infinite(double p, int k);

/// Solves P_k = p P_{k-1} + q P_{k+1}, P_0 = 1, P_N = 0 as a tridiagonal
/// system. Returns P_0..P_N.
std::vector<double> solve_ruin_linear(int n, double p);

/// E_1(T_0 | T_0 < inf) on {0, 1, ...}; Divergent at p = 1/2.
MomentValue classical_conditional_expectation(double p);

struct MonteCarloEstimate {
  double mean = 0.0;
  long hits = 0;
  long trials = 0;
};

/// Mean hitting time of 0 from site 1 over trajectories that hit within
/// `max_steps`. The generator is advanced in place.
MonteCarloEstimate monte_carlo_conditional_expectation(double p, long trials, long max_steps,
                                                        std::mt19937_64& rng);

}  // namespace qwabs::classical
