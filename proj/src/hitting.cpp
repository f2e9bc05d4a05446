#include "qwabs/hitting.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwabs {

int xi_window(const LatticeSpec& lattice, long horizon) {
  if (lattice.is_finite()) return lattice.right() + 1;
  return static_cast<int>(std::max<long>(horizon + 2, lattice.start() + 2));
}

void xi_advance(const std::vector<PqrsMatrix>& prev, std::vector<PqrsMatrix>& next,
                const Coin& coin) {
  const cplx a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  const int w = static_cast<int>(prev.size());
  next.assign(w, PqrsMatrix{});
  // Finite lattices: the last site is the right boundary. Semi-infinite:
  // the last window site is beyond reach and stays zero.
  for (int k = 1; k + 1 < w; ++k) {
    const PqrsMatrix& lo = prev[k - 1];
    const PqrsMatrix& hi = prev[k + 1];
    PqrsMatrix& x = next[k];
    x.p = a * lo.p + c * lo.r;
    x.q = d * hi.q + b * hi.s;
    x.r = b * hi.p + d * hi.r;
    x.s = c * lo.q + a * lo.s;
  }
}

XiTable::XiTable(const LatticeSpec& lattice, const Coin& coin, long horizon)
    : lattice_(lattice), coin_(coin), horizon_(horizon), sites_(xi_window(lattice, horizon)) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  entries_.assign(static_cast<size_t>(sites_) * (horizon + 1), PqrsMatrix{});
  std::vector<PqrsMatrix> prev(sites_), next;
  prev[0] = PqrsMatrix::identity(coin);
  std::copy(prev.begin(), prev.end(), entries_.begin());
  for (long n = 1; n <= horizon; ++n) {
    xi_advance(prev, next, coin);
    std::copy(next.begin(), next.end(), entries_.begin() + n * sites_);
    std::swap(prev, next);
  }
}

const PqrsMatrix& XiTable::entry(int k, long n) const {
  if (k < 0 || k >= sites_ || n < 0 || n > horizon_)
    throw std::out_of_range("XiTable index outside the table");
  return entries_[n * sites_ + k];
}

XiTable build_xi_table(const LatticeSpec& lattice, const Coin& coin, long horizon) {
  return XiTable(lattice, coin, horizon);
}

double hitting_prob(const PqrsMatrix& xi, const Coin& coin, const QubitState& phi) {
  const cplx a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  const cplx x1 = a * xi.p + c * xi.r, x2 = a * xi.s + c * xi.q;
  const cplx y1 = b * xi.p + d * xi.r, y2 = b * xi.s + d * xi.q;
  const double c1 = std::norm(x1) + std::norm(x2);
  const double c2 = std::norm(y1) + std::norm(y2);
  const cplx c3 = std::conj(x1) * y1 + std::conj(x2) * y2;
  const cplx al = phi.alpha(), be = phi.beta();
  return c1 * std::norm(al) + c2 * std::norm(be) + 2.0 * std::real(c3 * std::conj(al) * be);
}

double hitting_prob_at_time(const XiTable& table, int k, long n, const QubitState& phi) {
  return hitting_prob(table.entry(k, n), table.coin(), phi);
}

namespace {

// Sum of first-hitting probabilities at site 0 from `start` through the horizon.
double stream_absorption(int window, int start, const Coin& coin, const QubitState& phi,
                         long horizon) {
  if (start == 0) return 1.0;
  std::vector<PqrsMatrix> prev(window), next;
  prev[0] = PqrsMatrix::identity(coin);
  double total = 0.0;
  for (long n = 1; n <= horizon; ++n) {
    xi_advance(prev, next, coin);
    total += hitting_prob(next[start], coin, phi);
    std::swap(prev, next);
  }
  return total;
}

}  // namespace

AbsorptionResult absorption_prob(const LatticeSpec& lattice, const Coin& coin,
                                 const QubitState& phi, long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  AbsorptionResult res;
  res.horizon = horizon;
  const int w = xi_window(lattice, horizon);
  const int k = lattice.start();
  res.probability = stream_absorption(w, k, coin, phi, horizon);
  double at_right = 0.0;
  if (lattice.is_finite()) {
    // Reflect j -> N-j: swapping chiralities maps U to [[d, c], [b, a]].
    const int n = lattice.right();
    if (k == n) {
      at_right = 1.0;
    } else if (k != 0) {
      const Coin mirrored(coin.d(), coin.c(), coin.b(), coin.a());
      const QubitState swapped(phi.beta(), phi.alpha());
      at_right = stream_absorption(w, n - k, mirrored, swapped, horizon);
    }
  }
  res.survival = std::max(0.0, 1.0 - res.probability - at_right);
  return res;
}

}  // namespace qwabs
