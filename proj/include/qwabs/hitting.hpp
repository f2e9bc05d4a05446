#pragma once

#include <vector>

#include "qwabs/coin.hpp"
#include "qwabs/evolution.hpp"

namespace qwabs {

/// Xi_k(n) for every site k and time 0 <= n <= horizon, built by the
/// coupled (p, r) / (q, s) recurrences
///
///   p_k(n) = a p_{k-1}(n-1) + c r_{k-1}(n-1)
///   q_k(n) = d q_{k+1}(n-1) + b s_{k+1}(n-1)
///   r_k(n) = b p_{k+1}(n-1) + d r_{k+1}(n-1)
///   s_k(n) = c q_{k-1}(n-1) + a s_{k-1}(n-1)
///
/// with Xi_0(0) = I, Xi_N(0) = 0 and both boundary rows zero for n >= 1.
/// Semi-infinite lattices use max(T+2, k+2) sites, which is exact because
/// Xi_j(n) vanishes for j > n.
class XiTable {
 public:
  XiTable(const LatticeSpec& lattice, const Coin& coin, long horizon);

  const LatticeSpec& lattice() const { return lattice_; }
  const Coin& coin() const { return coin_; }
  long horizon() const { return horizon_; }
  int sites() const { return sites_; }

  /// Throws std::out_of_range outside 0 <= k < sites(), 0 <= n <= horizon().
  const PqrsMatrix& entry(int k, long n) const;

 private:
  LatticeSpec lattice_;
  Coin coin_;
  long horizon_;
  int sites_;
  std::vector<PqrsMatrix> entries_;  // row-major in n
};

XiTable build_xi_table(const LatticeSpec& lattice, const Coin& coin, long horizon);

/// Number of sites the recurrence needs for the given lattice and horizon.
int xi_window(const LatticeSpec& lattice, long horizon);

/// Advances one time slice of the recurrence in place of `next`.
void xi_advance(const std::vector<PqrsMatrix>& prev, std::vector<PqrsMatrix>& next,
                const Coin& coin);

/// |Xi phi|^2 written as C1 |alpha|^2 + C2 |beta|^2 + 2 Re(C3 conj(alpha) beta)
/// using all four PQRS coordinates.
double hitting_prob(const PqrsMatrix& xi, const Coin& coin, const QubitState& phi);

/// Probability that the walker started at k first hits 0 at exactly time n.
double hitting_prob_at_time(const XiTable& table, int k, long n, const QubitState& phi);

struct AbsorptionResult {
  double probability = 0.0;  // sum of hitting probabilities at 0 for n <= horizon
  double survival = 0.0;     // mass neither absorbed at 0 nor at N by the horizon
  long horizon = 0;
};

/// Partial sum of first-hitting probabilities at 0. For finite lattices the
/// reported survival bounds the truncation error; it is obtained from the
/// mirrored recurrence for the right boundary.
AbsorptionResult absorption_prob(const LatticeSpec& lattice, const Coin& coin,
                                 const QubitState& phi, long horizon);

}  // namespace qwabs
