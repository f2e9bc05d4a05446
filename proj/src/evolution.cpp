#include "qwabs/evolution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qwabs/error.hpp"

namespace qwabs {

LatticeSpec LatticeSpec::finite(int n, int start) {
  if (n < 2) throw std::invalid_argument("finite lattice needs N >= 2");
  if (start < 0 || start > n) throw std::invalid_argument("start site outside [0, N]");
  return LatticeSpec(n, start);
}

LatticeSpec LatticeSpec::semi_infinite(int start) {
  if (start < 0) throw std::invalid_argument("start site must be non-negative");
  return LatticeSpec(std::nullopt, start);
}

WalkState WalkState::initial(const LatticeSpec& lattice, const QubitState& phi) {
  WalkState s;
  const int size = lattice.is_finite() ? lattice.right() + 1 : lattice.start() + 2;
  s.sites.assign(size, Vec2{});
  s.sites[lattice.start()] = phi.vec();
  return s;
}

double WalkState::norm() const {
  double n = 0.0;
  for (const auto& v : sites) n += norm2(v);
  return n;
}

namespace {

// Writes sites lo..hi (inclusive, stride 2) of `out` from `in`. Sites outside
// that set must already be zero in `out`.
inline void advance(const std::vector<Vec2>& in, std::vector<Vec2>& out, long lo, long hi,
                    long stride, const Coin& coin) {
  const cplx a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  const long last = static_cast<long>(in.size()) - 1;
  for (long j = lo; j <= hi; j += stride) {
    cplx left = 0.0, right = 0.0;
    if (j + 1 <= last) left = a * in[j + 1][0] + b * in[j + 1][1];
    if (j - 1 >= 0) right = c * in[j - 1][0] + d * in[j - 1][1];
    out[j] = {left, right};
  }
}

double take(std::vector<Vec2>& sites, long j) {
  const double m = norm2(sites[j]);
  sites[j] = Vec2{};
  return m;
}

}  // namespace

StepResult step(const WalkState& state, const Coin& coin, const LatticeSpec& lattice) {
  StepResult r;
  r.state.time = state.time + 1;
  auto in = state.sites;
  // A semi-infinite window grows whenever the outermost site is occupied.
  if (!lattice.is_finite() && !in.empty() && norm2(in.back()) > 0.0) in.push_back(Vec2{});
  r.state.sites.assign(in.size(), Vec2{});
  advance(in, r.state.sites, 0, static_cast<long>(in.size()) - 1, 1, coin);
  r.absorbed_at_0 = take(r.state.sites, 0);
  if (lattice.is_finite()) r.absorbed_at_n = take(r.state.sites, lattice.right());
  return r;
}

HittingDistribution run_absorption(const LatticeSpec& lattice, const Coin& coin,
                                   const QubitState& phi, long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  HittingDistribution h;
  h.horizon = horizon;
  h.per_time_at_0.assign(horizon + 1, 0.0);
  if (lattice.is_finite()) h.per_time_at_n.assign(horizon + 1, 0.0);

  const long k = lattice.start();
  if (k == 0) {
    h.per_time_at_0[0] = h.cumulative_at_0 = 1.0;
    return h;
  }
  if (lattice.is_finite() && k == lattice.right()) {
    h.per_time_at_n[0] = h.cumulative_at_n = 1.0;
    return h;
  }

  // Light cone: after n steps only sites k-n..k+n with the parity of k+n
  // can be occupied, so the window below is exact.
  const long last = lattice.is_finite() ? lattice.right() : k + horizon + 1;
  std::vector<Vec2> cur(last + 1), next(last + 1);
  cur[k] = phi.vec();

  auto clip = [](double x) {
    if (x < 0.0) {
      if (x < -1e-14) throw std::logic_error("negative absorption probability");
      return 0.0;
    }
    return x;
  };

  for (long n = 1; n <= horizon; ++n) {
    long lo = std::max(0L, k - n);
    const long hi = std::min(last, k + n);
    if ((lo - (k + n)) % 2 != 0) ++lo;
    // `next` still holds time n-2, which lives on this same parity class
    // inside [lo, hi], so every stale entry is overwritten.
    advance(cur, next, lo, hi, 2, coin);
    h.per_time_at_0[n] = clip(take(next, 0));
    h.cumulative_at_0 += h.per_time_at_0[n];
    if (lattice.is_finite()) {
      h.per_time_at_n[n] = clip(take(next, lattice.right()));
      h.cumulative_at_n += h.per_time_at_n[n];
    }
    std::swap(cur, next);
  }
  for (const auto& v : cur) h.survival += norm2(v);
  return h;
}

namespace {

struct PathEnumerator {
  const Coin& coin;
  Mat2 P, Q;
  int right;  // exclusive upper bound on interior sites; <0 for none
  int length;
  Mat2 total;

  void walk(int site, int t, const Mat2& product) {
    if (site == 0) {
      if (t == length) total += product;
      return;
    }
    if (right > 0 && site == right) return;
    if (t == length || length - t < site) return;
    walk(site - 1, t + 1, P * product);
    walk(site + 1, t + 1, Q * product);
  }
};

}  // namespace

PqrsMatrix enumerate_paths_xi(const LatticeSpec& lattice, int n, const Coin& coin) {
  if (n < 0) throw std::invalid_argument("path length must be non-negative");
  if (n > kMaxEnumerationLength) {
    std::ostringstream os;
    os << "path enumeration refused for n=" << n << " (limit " << kMaxEnumerationLength << ")";
    throw RefusalError(os.str());
  }
  const int k = lattice.start();
  if (k == 0) return n == 0 ? PqrsMatrix::identity(coin) : PqrsMatrix{};
  if (lattice.is_finite() && k == lattice.right()) return PqrsMatrix{};
  PathEnumerator e{coin, coin.P(), coin.Q(), lattice.is_finite() ? lattice.right() : -1, n,
                   Mat2::zero()};
  e.walk(k, 0, Mat2::identity());
  return pqrs_decompose(e.total, coin);
}

}  // namespace qwabs
