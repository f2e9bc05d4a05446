#pragma once

#include <optional>
#include <vector>

#include "qwabs/coin.hpp"

namespace qwabs {

/// Sites {0, ..., N} with absorbing ends, or {0, 1, ...} absorbing at 0 only.
class LatticeSpec {
 public:
  static LatticeSpec finite(int n, int start);
  static LatticeSpec semi_infinite(int start);

  bool is_finite() const { return right_.has_value(); }
  /// Right boundary N; only meaningful when is_finite().
  int right() const { return right_.value_or(-1); }
  int start() const { return start_; }

 private:
  LatticeSpec(std::optional<int> right, int start) : right_(right), start_(start) {}
  std::optional<int> right_;
  int start_;
};

/// Amplitudes over a window of sites [0, size). For semi-infinite lattices
/// the window grows on demand so the evolution is never truncated.
struct WalkState {
  std::vector<Vec2> sites;
  long time = 0;

  static WalkState initial(const LatticeSpec& lattice, const QubitState& phi);
  double norm() const;
};

struct StepResult {
  WalkState state;
  double absorbed_at_0 = 0.0;
  double absorbed_at_n = 0.0;
};

/// One application of Psi_j <- P Psi_{j+1} + Q Psi_{j-1}, followed by the
/// boundary measurements (site 0, then site N when finite).
StepResult step(const WalkState& state, const Coin& coin, const LatticeSpec& lattice);

struct HittingDistribution {
  std::vector<double> per_time_at_0;  // index n = 0..horizon
  std::vector<double> per_time_at_n;  // empty for semi-infinite lattices
  double cumulative_at_0 = 0.0;
  double cumulative_at_n = 0.0;
  double survival = 0.0;
  long horizon = 0;
};

/// Exact first-hitting probabilities at each boundary for times 0..horizon.
HittingDistribution run_absorption(const LatticeSpec& lattice, const Coin& coin,
                                   const QubitState& phi, long horizon);

/// Largest n accepted by enumerate_paths_xi.
inline constexpr int kMaxEnumerationLength = 22;

/// Brute-force sum over all {P,Q} words of length n that leave the start
/// site, stay strictly inside the lattice, and first reach 0 at time n.
/// The latest step is the leftmost factor.
PqrsMatrix enumerate_paths_xi(const LatticeSpec& lattice, int n, const Coin& coin);

}  // namespace qwabs
