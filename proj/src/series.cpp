#include "qwabs/series.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <stdexcept>

namespace qwabs {

namespace mp = boost::multiprecision;

// --- SeriesCoeffs --------------------------------------------------------

SeriesCoeffs SeriesCoeffs::monomial(long power, long order, cplx coeff) {
  SeriesCoeffs s = zero(order);
  if (power >= 0 && power <= order) s.c_[power] = coeff;
  return s;
}

SeriesCoeffs SeriesCoeffs::truncated(long order) const {
  std::vector<cplx> c(order + 1);
  for (long i = 0; i <= order && i <= this->order(); ++i) c[i] = c_[i];
  return SeriesCoeffs(std::move(c));
}

cplx SeriesCoeffs::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

SeriesCoeffs operator+(const SeriesCoeffs& x, const SeriesCoeffs& y) {
  const long n = std::min(x.order(), y.order());
  SeriesCoeffs z = SeriesCoeffs::zero(n);
  for (long i = 0; i <= n; ++i) z.c_[i] = x.c_[i] + y.c_[i];
  return z;
}

SeriesCoeffs operator-(const SeriesCoeffs& x, const SeriesCoeffs& y) {
  return x + cplx(-1.0) * y;
}

SeriesCoeffs operator*(cplx k, const SeriesCoeffs& x) {
  SeriesCoeffs z = x;
  for (auto& c : z.c_) c *= k;
  return z;
}

SeriesCoeffs operator*(const SeriesCoeffs& x, const SeriesCoeffs& y) {
  const long n = std::min(x.order(), y.order());
  SeriesCoeffs z = SeriesCoeffs::zero(n);
  for (long i = 0; i <= n; ++i) {
    if (x.c_[i] == cplx{}) continue;
    for (long j = 0; i + j <= n; ++j) z.c_[i + j] += x.c_[i] * y.c_[j];
  }
  return z;
}

// --- LaurentPoly ---------------------------------------------------------

LaurentPoly::LaurentPoly(int min_power, std::vector<cplx> coeffs)
    : min_power_(min_power), c_(std::move(coeffs)) {
  trim();
}

void LaurentPoly::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
  auto first = std::find_if(c_.begin(), c_.end(), [](cplx v) { return v != cplx{}; });
  min_power_ += static_cast<int>(first - c_.begin());
  c_.erase(c_.begin(), first);
  if (c_.empty()) min_power_ = 0;
}

cplx LaurentPoly::coeff(int power) const {
  const int i = power - min_power_;
  return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : cplx{};
}

cplx LaurentPoly::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc * std::pow(z, min_power_);
}

LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const int lo = std::min(x.min_power(), y.min_power());
  const int hi = std::max(x.max_power(), y.max_power());
  std::vector<cplx> c(hi - lo + 1);
  for (int p = lo; p <= hi; ++p) c[p - lo] = x.coeff(p) + y.coeff(p);
  return LaurentPoly(lo, std::move(c));
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero() || y.is_zero()) return {};
  std::vector<cplx> c(x.c_.size() + y.c_.size() - 1);
  for (size_t i = 0; i < x.c_.size(); ++i)
    for (size_t j = 0; j < y.c_.size(); ++j) c[i + j] += x.c_[i] * y.c_[j];
  return LaurentPoly(x.min_power() + y.min_power(), std::move(c));
}

LaurentPoly operator*(cplx k, const LaurentPoly& x) {
  std::vector<cplx> c = x.c_;
  for (auto& v : c) v *= k;
  return LaurentPoly(x.min_power(), std::move(c));
}

// --- Polynomials and rational functions ----------------------------------

cplx evaluate(const Polynomial& p, cplx z) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> polynomial_roots(const Polynomial& p) {
  Polynomial q = p;
  while (!q.empty() && q.back() == cplx{}) q.pop_back();
  if (q.size() <= 1) return {};
  const int deg = static_cast<int>(q.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -q[i] / q[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()[i];
  return roots;
}

cplx RationalFn::evaluate(cplx z) const {
  return qwabs::evaluate(numerator, z) / qwabs::evaluate(denominator, z);
}

namespace {

std::string format_poly(const Polynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < p.size(); ++i) {
    const double v = p[i].real();
    if (p[i] == cplx{}) continue;
    if (p[i].imag() != 0.0) {
      os << (first ? "" : " + ") << "(" << p[i].real() << (p[i].imag() < 0 ? "" : "+")
         << p[i].imag() << "i)";
      if (i > 0) os << "z" << (i > 1 ? "^" + std::to_string(i) : "");
      first = false;
      continue;
    }
    const double mag = std::abs(v);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    const bool unit = mag == 1.0 && i > 0;
    if (!unit) {
      if (mag == std::round(mag) && mag < 1e15)
        os << static_cast<long long>(mag);
      else
        os << mag;
    }
    if (i > 0) os << "z" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

size_t term_count(const Polynomial& p) {
  return static_cast<size_t>(std::count_if(p.begin(), p.end(), [](cplx c) { return c != cplx{}; }));
}

}  // namespace

std::string RationalFn::to_string() const {
  const std::string num = format_poly(numerator);
  if (term_count(numerator) == 0) return "0";
  if (term_count(denominator) == 1 && denominator.size() == 1 && denominator[0] == cplx(1.0))
    return num;
  std::string out = term_count(numerator) > 1 ? "(" + num + ")" : num;
  const std::string den = format_poly(denominator);
  out += "/";
  out += term_count(denominator) > 1 ? "(" + den + ")" : den;
  return out;
}

// --- Infinite-lattice series ---------------------------------------------

SeriesCoeffs series_sqrt_one_plus_z4(long order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  SeriesCoeffs s = SeriesCoeffs::zero(order);
  double binom = 1.0;  // binom(1/2, m)
  for (long m = 0; 4 * m <= order; ++m) {
    if (m > 0) binom *= (0.5 - (m - 1)) / m;
    s[4 * m] = binom;
  }
  return s;
}

GenSeries gen_infinite_hadamard(long order) {
  if (order < 1) throw std::invalid_argument("series order must be at least 1");
  GenSeries g{SeriesCoeffs::monomial(1, order), SeriesCoeffs::zero(order)};
  // (sqrt(1+z^4) - 1) / z: shift the root series down by one power.
  const SeriesCoeffs root = series_sqrt_one_plus_z4(order + 1);
  for (long i = 0; i <= order; ++i) g.r[i] = root[i + 1];
  return g;
}

SeriesCoeffs lambda_plus_series(long order) {
  const GenSeries g = gen_infinite_hadamard(order);
  return cplx(1.0 / std::numbers::sqrt2) * (g.p + g.r);
}

GenSeries gen_infinite_hadamard_k(int k, long order) {
  if (k < 1) throw std::invalid_argument("site k must be an interior site (k >= 1)");
  if (order < k) throw std::invalid_argument("series order must be at least k");
  GenSeries g = gen_infinite_hadamard(order);
  if (k == 1) return g;
  const SeriesCoeffs lambda = lambda_plus_series(order);
  SeriesCoeffs power = SeriesCoeffs::monomial(0, order);
  for (int i = 1; i < k; ++i) power = power * lambda;
  return {g.p * power, g.r * power};
}

// --- Exact J-polynomial arithmetic ----------------------------------------

namespace {

using BigInt = mp::cpp_int;
using BigRat = mp::cpp_rational;

/// Integer Laurent polynomial sum c_i z^{lo + i}.
struct IntLaurent {
  int lo = 0;
  std::vector<BigInt> c;

  BigInt at(int p) const {
    const int i = p - lo;
    return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : BigInt(0);
  }
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
};

IntLaurent add(const IntLaurent& x, const IntLaurent& y) {
  if (x.c.empty()) return y;
  if (y.c.empty()) return x;
  IntLaurent r;
  r.lo = std::min(x.lo, y.lo);
  const int hi = std::max(x.hi(), y.hi());
  for (int p = r.lo; p <= hi; ++p) r.c.push_back(x.at(p) + y.at(p));
  return r;
}

IntLaurent mul(const IntLaurent& x, const IntLaurent& y) {
  if (x.c.empty() || y.c.empty()) return {};
  IntLaurent r;
  r.lo = x.lo + y.lo;
  r.c.assign(x.c.size() + y.c.size() - 1, 0);
  for (size_t i = 0; i < x.c.size(); ++i)
    for (size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
  return r;
}

IntLaurent scale(const IntLaurent& x, const BigInt& k) {
  IntLaurent r = x;
  for (auto& v : r.c) v *= k;
  return r;
}

IntLaurent monomial(int power, BigInt coeff = 1) { return {power, {coeff}}; }

/// J_n = sqrt2^{n mod 2} * I_n with I_n integral:
///   n even: I_n = 2u I_{n-1} + I_{n-2};  n odd: I_n = u I_{n-1} + I_{n-2},
/// where u = z - 1/z, I_0 = 1, I_{-1} = 0.
IntLaurent j_integer_part(int n) {
  if (n < -1) throw std::invalid_argument("J_n needs n >= -1");
  if (n == -1) return {};
  const IntLaurent u{-1, {BigInt(-1), BigInt(0), BigInt(1)}};
  IntLaurent prev2, prev1 = monomial(0);  // I_{-1}, I_0
  for (int m = 1; m <= n; ++m) {
    IntLaurent next = add(mul(m % 2 == 0 ? scale(u, 2) : u, prev1), prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

using RatPoly = std::vector<BigRat>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_poly(const IntLaurent& x, int shift) {
  RatPoly p;
  if (x.c.empty()) return p;
  const int base = x.lo + shift;
  if (base < 0) throw std::logic_error("negative power after clearing denominators");
  p.assign(base + x.c.size(), BigRat(0));
  for (size_t i = 0; i < x.c.size(); ++i) p[base + i] = BigRat(x.c[i]);
  trim(p);
  return p;
}

// Quotient and remainder of a / b over Q.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  RatPoly q;
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 >= db) q.assign(a.size() - db, BigRat(0));
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const BigRat f = a.back() / b.back();
    q[shift] = f;
    for (int i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return {q, a};
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const BigRat lead = a.back();
    for (auto& v : a) v /= lead;
  }
  return a;
}

Polynomial to_double(const RatPoly& p) {
  Polynomial out;
  for (const auto& v : p) out.emplace_back(static_cast<double>(v), 0.0);
  return out;
}

}  // namespace

LaurentPoly j_polynomial(int n) {
  if (n < 0) throw std::invalid_argument("J_n needs n >= 0");
  const IntLaurent ip = j_integer_part(n);
  const double factor = n % 2 == 1 ? std::numbers::sqrt2 : 1.0;
  std::vector<cplx> c;
  for (const auto& v : ip.c) c.emplace_back(factor * static_cast<double>(v), 0.0);
  return LaurentPoly(ip.lo, std::move(c));
}

RationalFn gen_r_finite_k1(int n) {
  if (n < 2) throw std::invalid_argument("finite lattice needs N >= 2");
  if (n == 2) return {{}, {1.0}};
  if (n == 3) return {{0.0, 0.0, 0.0, 1.0}, {2.0, 0.0, -1.0}};

  // With m = N-3 exactly one of J_m, J_{m-1} carries a sqrt2, so both the
  // numerator and denominator are sqrt2 times an integer Laurent polynomial:
  //   r = -z^2 I_m I_{m-1} / (2^{m mod 2} I_m^2 - z I_m I_{m-1} - (-1)^m).
  const int m = n - 3;
  const IntLaurent im = j_integer_part(m), im1 = j_integer_part(m - 1);
  const IntLaurent cross = mul(im, im1);
  IntLaurent num = scale(mul(monomial(2), cross), -1);
  IntLaurent den = scale(mul(im, im), m % 2 == 1 ? 2 : 1);
  den = add(den, scale(mul(monomial(1), cross), -1));
  den = add(den, monomial(0, m % 2 == 0 ? -1 : 1));

  // Clear negative powers, then cancel the common factor over Q.
  const int shift = -std::min(den.lo, num.lo);
  RatPoly pn = to_poly(num, shift), pd = to_poly(den, shift);
  while (!pd.empty() && pd.front() == 0) {
    if (pn.empty() || pn.front() != 0) break;
    pd.erase(pd.begin());
    pn.erase(pn.begin());
  }
  const RatPoly g = gcd(pn, pd);
  if (g.size() > 1) {
    pn = divmod(pn, g).first;
    pd = divmod(pd, g).first;
  }
  // Scale so the denominator is a primitive integer polynomial with a
  // positive constant term.
  BigInt lcm_den = 1;
  for (const auto& v : pd) lcm_den = mp::lcm(lcm_den, mp::denominator(v));
  for (const auto& v : pn) lcm_den = mp::lcm(lcm_den, mp::denominator(v));
  for (auto& v : pd) v *= lcm_den;
  for (auto& v : pn) v *= lcm_den;
  BigInt content = 0;
  for (const auto& v : pd) content = mp::gcd(content, mp::numerator(v));
  for (const auto& v : pn) content = mp::gcd(content, mp::numerator(v));
  if (pd.empty() || pd.front() == 0) throw std::logic_error("r_1 denominator vanishes at 0");
  if (pd.front() < 0) content = -content;
  for (auto& v : pd) v /= content;
  for (auto& v : pn) v /= content;
  return {to_double(pn), to_double(pd)};
}

// --- Finite-lattice pointwise evaluation ------------------------------------

namespace {

void require_away_from_pole(cplx denom, const char* what, cplx z) {
  if (std::abs(denom) < 1e-12) {
    std::ostringstream os;
    os << what << " vanishes near z=" << z;
    throw PoleProximityError(os.str());
  }
}

/// J_m for m = -1..count-2 stored at index m+1, and G_m for m = 0..count-1.
struct SymmetricPowers {
  std::vector<cplx> j;  // j[m + 1] = J_m
  std::vector<cplx> g;  // g[m] = G_m

  SymmetricPowers(cplx s, int count) : j(count + 1), g(count + 1) {
    j[0] = 0.0;  // J_{-1}
    j[1] = 1.0;  // J_0
    for (int m = 1; m < count; ++m) j[m + 1] = s * j[m] + j[m - 1];
    g[0] = 2.0;
    g[1] = s;
    for (int m = 2; m <= count; ++m) g[m] = s * g[m - 1] + g[m - 2];
  }
  cplx J(int m) const { return j.at(m + 1); }
  cplx G(int m) const { return g.at(m); }
};

}  // namespace

FiniteGenCoefficients finite_gen_coefficients(int n, cplx z) {
  if (n < 4) throw std::invalid_argument("boundary-fitted coefficients need N >= 4");
  require_away_from_pole(z, "z", z);
  const cplx s = std::numbers::sqrt2 * (z - 1.0 / z);
  const SymmetricPowers pw(s, n);
  const cplx jn3 = pw.J(n - 3), jn4 = pw.J(n - 4);
  const double sign_n3 = (n - 3) % 2 == 0 ? 1.0 : -1.0;
  const cplx k = jn3 * jn3 - z / std::numbers::sqrt2 * jn3 * jn4 - sign_n3;
  require_away_from_pole(k, "C_z denominator", z);
  require_away_from_pole(jn3, "E_z denominator J_{N-3}", z);
  FiniteGenCoefficients f;
  f.c_delta = z * z / std::numbers::sqrt2 * (-sign_n3) * jn4 / k;
  f.e_delta = -z / (2.0 * jn3) * (2.0 * sign_n3 * jn4 / k + pw.G(n - 2));
  return f;
}

GenValues gen_finite_eval(int n, int k, cplx z) {
  if (n < 2) throw std::invalid_argument("finite lattice needs N >= 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("site k must satisfy 1 <= k <= N-1");
  if (z == cplx{}) return {0.0, 0.0};
  if (n == 2) return {z, 0.0};
  if (n == 3) {
    const cplx den = 2.0 - z * z;
    require_away_from_pole(den, "2 - z^2", z);
    const cplx r1 = z * z * z / den;
    if (k == 1) return {z, r1};
    return {z * (z + r1) / std::numbers::sqrt2, 0.0};
  }
  const FiniteGenCoefficients f = finite_gen_coefficients(n, z);
  const cplx s = std::numbers::sqrt2 * (z - 1.0 / z);
  const SymmetricPowers pw(s, n);
  const int j = n - 1 - k;
  const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
  return {z / 2.0 * pw.G(k - 1) + f.e_delta * pw.J(k - 2), f.c_delta * sign * pw.J(j - 1)};
}

GenValues gen_finite_eval_linear(int n, int k, cplx z, const Coin& coin) {
  if (n < 2) throw std::invalid_argument("finite lattice needs N >= 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("site k must satisfy 1 <= k <= N-1");
  const int m = n - 1;  // unknowns p_1..p_m at 0..m-1, r_1..r_m at m..2m-1
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * m);
  for (int site = 1; site <= m; ++site) {
    const int ip = site - 1, ir = m + site - 1;
    if (site == 1) {
      rhs(ip) = z * (coin.a() * std::conj(coin.a()) + coin.c() * std::conj(coin.c()));
    } else {
      a(ip, ip - 1) = -z * coin.a();
      a(ip, ir - 1) = -z * coin.c();
    }
    if (site < m) {
      a(ir, ip + 1) = -z * coin.b();
      a(ir, ir + 1) = -z * coin.d();
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (lu.rcond() < 1e-14) {
    std::ostringstream os;
    os << "site recurrence system is singular near z=" << z;
    throw PoleProximityError(os.str());
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  return {x(k - 1), x(m + k - 1)};
}

SeriesCoeffs taylor_coeffs(const RationalFn& f, long order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  if (f.denominator.empty() || f.denominator[0] == cplx{})
    throw std::invalid_argument("denominator vanishes at z = 0; no Taylor expansion");
  SeriesCoeffs c = SeriesCoeffs::zero(order);
  const long dd = static_cast<long>(f.denominator.size()) - 1;
  for (long i = 0; i <= order; ++i) {
    cplx v = i < static_cast<long>(f.numerator.size()) ? f.numerator[i] : cplx{};
    for (long j = 1; j <= std::min(i, dd); ++j) v -= f.denominator[j] * c[i - j];
    c[i] = v / f.denominator[0];
  }
  return c;
}

double parseval_sum(const SeriesCoeffs& s) {
  detail::CompensatedSum acc;
  for (const auto& c : s.coefficients()) acc.add(std::norm(c));
  return acc.value();
}

double unit_circle_mean(const std::function<double(cplx)>& evaluator, int nodes, int threads) {
  return detail::circle_mean<1>([&](cplx z) { return std::array<double, 1>{evaluator(z)}; },
                                nodes, threads)[0];
}

double min_pole_distance_from_unit_circle(int n) {
  const RationalFn f = gen_r_finite_k1(n);
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& root : polynomial_roots(f.denominator))
    best = std::min(best, std::abs(std::abs(root) - 1.0));
  return best;
}

Theorem2Result theorem2_absorption(int n, int k, const Coin& coin, const QubitState& phi,
                                   const Theorem2Options& options) {
  if (n < 2) throw std::invalid_argument("finite lattice needs N >= 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("site k must satisfy 1 <= k <= N-1");
  const bool had = coin.is_hadamard();
  if (!had && !options.experimental_general_coin)
    throw ScopeError("the unit-circle absorption formula is stated for the Hadamard coin only");
  if (had) {
    const double dist = min_pole_distance_from_unit_circle(n);
    if (dist <= 1e-6) {
      std::ostringstream os;
      os << "generating function for N=" << n << " has a pole within " << dist
         << " of the unit circle";
      throw PoleProximityError(os.str());
    }
  }
  const cplx a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  auto integrand = [&](cplx z) {
    const GenValues v = had ? gen_finite_eval(n, k, z) : gen_finite_eval_linear(n, k, z, coin);
    const cplx x = a * v.p + c * v.r, y = b * v.p + d * v.r;
    const cplx cross = std::conj(x) * y;
    return std::array<double, 4>{std::norm(x), std::norm(y), cross.real(), cross.imag()};
  };

  int nodes = options.nodes;
  auto prev = detail::circle_mean<4>(integrand, nodes, options.threads);
  for (;;) {
    if (nodes * 2 > options.max_nodes)
      throw DivergenceError("unit-circle quadrature did not settle within the node budget");
    nodes *= 2;
    auto cur = detail::circle_mean<4>(integrand, nodes, options.threads);
    double diff = 0.0;
    for (int i = 0; i < 4; ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
    prev = cur;
    if (diff <= options.agreement) break;
  }
  Theorem2Result res;
  res.nodes = nodes;
  res.constants = {prev[0], prev[1], cplx(prev[2], prev[3])};
  res.probability = res.constants.probability(phi);
  return res;
}

}  // namespace qwabs
