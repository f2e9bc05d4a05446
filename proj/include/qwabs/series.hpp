#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qwabs/closed_forms.hpp"
#include "qwabs/coin.hpp"
#include "qwabs/error.hpp"

namespace qwabs {

/// Truncated power series; coefficient i multiplies z^i, i = 0..order().
class SeriesCoeffs {
 public:
  SeriesCoeffs() = default;
  explicit SeriesCoeffs(std::vector<cplx> c) : c_(std::move(c)) {}
  static SeriesCoeffs zero(long order) { return SeriesCoeffs(std::vector<cplx>(order + 1)); }
  static SeriesCoeffs monomial(long power, long order, cplx coeff = 1.0);

  long order() const { return static_cast<long>(c_.size()) - 1; }
  cplx operator[](long i) const { return i >= 0 && i <= order() ? c_[i] : cplx{}; }
  cplx& operator[](long i) { return c_.at(i); }
  const std::vector<cplx>& coefficients() const { return c_; }

  /// Keeps coefficients 0..order.
  SeriesCoeffs truncated(long order) const;
  cplx evaluate(cplx z) const;

  friend SeriesCoeffs operator+(const SeriesCoeffs& x, const SeriesCoeffs& y);
  friend SeriesCoeffs operator-(const SeriesCoeffs& x, const SeriesCoeffs& y);
  friend SeriesCoeffs operator*(const SeriesCoeffs& x, const SeriesCoeffs& y);
  friend SeriesCoeffs operator*(cplx k, const SeriesCoeffs& x);

 private:
  std::vector<cplx> c_;
};

/// Sum of c_i z^i for i = min_power .. min_power + size - 1. Zero is the
/// empty coefficient list with min_power 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int min_power, std::vector<cplx> coeffs);

  int min_power() const { return min_power_; }
  int max_power() const { return min_power_ + static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of z^power (zero outside the stored range).
  cplx coeff(int power) const;
  const std::vector<cplx>& coefficients() const { return c_; }

  cplx evaluate(cplx z) const;

  friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y);
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
  friend LaurentPoly operator*(cplx k, const LaurentPoly& x);

 private:
  void trim();
  int min_power_ = 0;
  std::vector<cplx> c_;
};

/// Ascending coefficients; p[i] multiplies z^i.
using Polynomial = std::vector<cplx>;

cplx evaluate(const Polynomial& p, cplx z);
std::vector<cplx> polynomial_roots(const Polynomial& p);

struct RationalFn {
  Polynomial numerator;
  Polynomial denominator;

  cplx evaluate(cplx z) const;
  /// Human-readable form, e.g. "z^3/(2 - z^2)". Coefficients are printed
  /// as integers when they are integral.
  std::string to_string() const;
};

// --- Infinite-lattice Hadamard series -----------------------------------

/// Taylor coefficients of sqrt(1 + z^4), value +1 at z = 0.
SeriesCoeffs series_sqrt_one_plus_z4(long order);

struct GenSeries {
  SeriesCoeffs p;
  SeriesCoeffs r;
};

/// p_1(z) = z and r_1(z) = (sqrt(1 + z^4) - 1) / z.
GenSeries gen_infinite_hadamard(long order);

/// The root of the site recurrence that stays bounded as k grows:
/// (z^2 - 1 + sqrt(z^4 + 1)) / (sqrt2 z) = (z + r_1(z)) / sqrt2.
SeriesCoeffs lambda_plus_series(long order);

/// p_k = z lambda^{k-1}, r_k = r_1 lambda^{k-1}. Throws for k < 1.
GenSeries gen_infinite_hadamard_k(int k, long order);

// --- Finite-lattice Hadamard generating functions -----------------------

/// J_n(z) = sum_{j=0}^n lambda_+^j lambda_-^{n-j}, built from
/// J_n = s J_{n-1} + J_{n-2}, s = sqrt2 (z - 1/z), J_0 = 1, J_{-1} = 0.
LaurentPoly j_polynomial(int n);

/// r_1^(N)(z) as a reduced rational function with an integer denominator
/// whose constant term is positive. N = 2 gives zero.
RationalFn gen_r_finite_k1(int n);

/// Branch-free forms of the boundary-fitted coefficients for N >= 4:
/// c_delta = C_z (lambda_+ - lambda_-) and e_delta = E_z (lambda_+ - lambda_-).
/// The remaining coefficients follow as A_z = z/2 + E_z, B_z = z/2 - E_z and
/// D_z = -C_z; only these products are needed to evaluate p_k and r_k.
struct FiniteGenCoefficients {
  cplx c_delta;
  cplx e_delta;
};

/// Throws PoleProximityError when a denominator is below 1e-12 at z.
FiniteGenCoefficients finite_gen_coefficients(int n, cplx z);

struct GenValues {
  cplx p;
  cplx r;
};

/// p_k^(N)(z), r_k^(N)(z) for the Hadamard coin, 1 <= k <= N-1. Uses the
/// square-root-free recurrences for G_m = lambda_+^m + lambda_-^m and J_m.
GenValues gen_finite_eval(int n, int k, cplx z);

/// The same values for an arbitrary coin, by solving the site recurrences
/// p_k = z (a p_{k-1} + c r_{k-1}), r_k = z (b p_{k+1} + d r_{k+1}) with
/// p_0 = conj(a), r_0 = conj(c), p_N = r_N = 0 as a linear system at z.
GenValues gen_finite_eval_linear(int n, int k, cplx z, const Coin& coin);

/// First order+1 Taylor coefficients of f. Throws if f.denominator(0) == 0.
SeriesCoeffs taylor_coeffs(const RationalFn& f, long order);

/// sum_i |c_i|^2.
double parseval_sum(const SeriesCoeffs& s);

// --- Unit-circle quadrature ---------------------------------------------

inline constexpr int kDefaultNodes = 4096;

namespace detail {

/// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

/// Midpoint rule over theta_j = 2 pi (j + 1/2) / M for a vector-valued
/// integrand. Node contributions are reduced in a fixed order per chunk and
/// chunks are combined in index order.
template <std::size_t Dim, class F>
std::array<double, Dim> circle_mean(F&& f, int nodes, int threads) {
  if (nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
  threads = std::max(1, std::min(threads, nodes));
  std::vector<std::array<CompensatedSum, Dim>> partial(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](int t) {
    try {
      const long lo = static_cast<long>(nodes) * t / threads;
      const long hi = static_cast<long>(nodes) * (t + 1) / threads;
      for (long j = lo; j < hi; ++j) {
        const double theta = 2.0 * std::numbers::pi * (j + 0.5) / nodes;
        const cplx z = std::polar(1.0, theta);
        const std::array<double, Dim> v = f(z);
        for (std::size_t i = 0; i < Dim; ++i) {
          if (!std::isfinite(v[i])) {
            std::ostringstream os;
            os << "integrand not finite at theta=" << theta;
            throw PoleProximityError(os.str());
          }
          partial[t][i].add(v[i]);
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::array<double, Dim> out{};
  for (std::size_t i = 0; i < Dim; ++i) {
    CompensatedSum s;
    for (int t = 0; t < threads; ++t) s.add(partial[t][i].value());
    out[i] = s.value() / nodes;
  }
  return out;
}

}  // namespace detail

/// (1/2pi) * integral over [0, 2pi) of evaluator(e^{i theta}) by the midpoint rule.
double unit_circle_mean(const std::function<double(cplx)>& evaluator, int nodes = kDefaultNodes,
                        int threads = 1);

struct Theorem2Options {
  int nodes = kDefaultNodes;
  /// Doubling stops once successive results agree within this.
  double agreement = 1e-11;
  int max_nodes = 1 << 20;
  int threads = 1;
  /// Allow non-Hadamard coins (evaluated via gen_finite_eval_linear). No
  /// accuracy guarantee is made for them.
  bool experimental_general_coin = false;
};

struct Theorem2Result {
  double probability = 0.0;
  AbsorptionConstants constants;
  int nodes = 0;
};

/// C1, C2, C3 as unit-circle means of |a p + c r|^2, |b p + d r|^2 and
/// conj(a p + c r)(b p + d r), combined into P_k^(N)(phi). Throws ScopeError
/// for a non-Hadamard coin unless the experimental flag is set.
Theorem2Result theorem2_absorption(int n, int k, const Coin& coin, const QubitState& phi,
                                   const Theorem2Options& options = {});

/// Smallest distance from the unit circle among the poles of r_1^(N).
double min_pole_distance_from_unit_circle(int n);

}  // namespace qwabs
