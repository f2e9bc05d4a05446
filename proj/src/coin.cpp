#include "qwabs/coin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwabs/error.hpp"

namespace qwabs {

Mat2& Mat2::operator+=(const Mat2& o) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] += o.m[i][j];
  return *this;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
  return r;
}

Mat2 operator*(cplx s, Mat2 a) {
  for (auto& row : a.m)
    for (auto& e : row) e *= s;
  return a;
}

Vec2 operator*(const Mat2& a, const Vec2& v) {
  return {a.m[0][0] * v[0] + a.m[0][1] * v[1], a.m[1][0] * v[0] + a.m[1][1] * v[1]};
}

double norm2(const Vec2& v) { return std::norm(v[0]) + std::norm(v[1]); }

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double e = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e = std::max(e, std::abs(a.m[i][j] - b.m[i][j]));
  return e;
}

double max_abs_diff(const PqrsMatrix& x, const PqrsMatrix& y) {
  return std::max({std::abs(x.p - y.p), std::abs(x.q - y.q), std::abs(x.r - y.r),
                   std::abs(x.s - y.s)});
}

Coin::Coin(cplx a, cplx b, cplx c, cplx d, double tol) : a_(a), b_(b), c_(c), d_(d) {
  auto fail = [](const char* identity, double residual) {
    std::ostringstream os;
    os << "coin is not unitary: " << identity << " violated by " << residual;
    throw ValidationError(os.str());
  };
  if (double e = std::abs(std::norm(a) + std::norm(b) - 1.0); e > tol) fail("|a|^2+|b|^2=1", e);
  if (double e = std::abs(std::norm(c) + std::norm(d) - 1.0); e > tol) fail("|c|^2+|d|^2=1", e);
  if (double e = std::abs(a * std::conj(c) + b * std::conj(d)); e > tol)
    fail("a*conj(c)+b*conj(d)=0", e);
  if (double e = std::abs(std::abs(delta()) - 1.0); e > tol) fail("|det U|=1", e);
}

Mat2 Coin::matrix() const {
  Mat2 u;
  u.m = {{{a_, b_}, {c_, d_}}};
  return u;
}

Mat2 Coin::P() const {
  Mat2 x;
  x.m[0] = {a_, b_};
  return x;
}
Mat2 Coin::Q() const {
  Mat2 x;
  x.m[1] = {c_, d_};
  return x;
}
Mat2 Coin::R() const {
  Mat2 x;
  x.m[0] = {c_, d_};
  return x;
}
Mat2 Coin::S() const {
  Mat2 x;
  x.m[1] = {a_, b_};
  return x;
}

bool Coin::is_hadamard(double tol) const {
  return max_abs_diff(matrix(), hadamard().matrix()) <= tol;
}

Coin hadamard() {
  const double h = std::numbers::sqrt2 / 2.0;
  return Coin(h, h, h, -h);
}

Coin make_coin(const CoinSpec& spec) {
  struct Visitor {
    Coin operator()(const HadamardSpec&) const { return hadamard(); }
    Coin operator()(const RhoSpec& s) const {
      if (!(s.rho >= 0.0 && s.rho <= 1.0))
        throw std::invalid_argument("rho must lie in [0, 1]");
      const double x = std::sqrt(s.rho), y = std::sqrt(1.0 - s.rho);
      return Coin(x, y, y, -x);
    }
    Coin operator()(const SymmetricSpec& s) const {
      using std::polar;
      const double h = std::numbers::sqrt2 / 2.0;
      const cplx g = polar(h, s.eta);
      return Coin(g * polar(1.0, s.phi + s.psi), g * polar(1.0, -(s.phi - s.psi)),
                  g * polar(1.0, s.phi - s.psi), -g * polar(1.0, -(s.phi + s.psi)));
    }
    Coin operator()(const CustomSpec& s) const { return Coin(s.a, s.b, s.c, s.d); }
  };
  return std::visit(Visitor{}, spec);
}

QubitState::QubitState(cplx alpha, cplx beta, double tol) : alpha_(alpha), beta_(beta) {
  if (double e = std::abs(std::norm(alpha) + std::norm(beta) - 1.0); e > tol) {
    std::ostringstream os;
    os << "qubit state is not normalised: |alpha|^2+|beta|^2 off by " << e;
    throw ValidationError(os.str());
  }
}

QubitState QubitState::normalized(cplx alpha, cplx beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("qubit state is the zero vector");
  return QubitState(alpha / n, beta / n);
}

cplx trace_inner(const Mat2& a, const Mat2& b) {
  cplx t = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t += std::conj(a.m[i][j]) * b.m[i][j];
  return t;
}

PqrsMatrix pqrs_decompose(const Mat2& m, const Coin& coin) {
  const cplx ac = std::conj(coin.a()), bc = std::conj(coin.b());
  const cplx cc = std::conj(coin.c()), dc = std::conj(coin.d());
  return {ac * m(0, 0) + bc * m(0, 1), cc * m(1, 0) + dc * m(1, 1),
          cc * m(0, 0) + dc * m(0, 1), ac * m(1, 0) + bc * m(1, 1)};
}

Mat2 pqrs_reconstruct(const PqrsMatrix& x, const Coin& coin) {
  Mat2 m;
  m(0, 0) = x.p * coin.a() + x.r * coin.c();
  m(0, 1) = x.p * coin.b() + x.r * coin.d();
  m(1, 0) = x.q * coin.c() + x.s * coin.a();
  m(1, 1) = x.q * coin.d() + x.s * coin.b();
  return m;
}

PqrsMatrix pqrs_multiply(const PqrsMatrix& x, const PqrsMatrix& y, const Coin& coin) {
  const cplx a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  // Rows index the left factor, columns the right factor:
  //      P    Q    R    S
  //  P   aP   bR   aR   bP
  //  Q   cS   dQ   cQ   dS
  //  R   cP   dR   cR   dP
  //  S   aS   bQ   aQ   bS
  PqrsMatrix z;
  z.p = a * x.p * y.p + b * x.p * y.s + c * x.r * y.p + d * x.r * y.s;
  z.q = d * x.q * y.q + c * x.q * y.r + b * x.s * y.q + a * x.s * y.r;
  z.r = b * x.p * y.q + a * x.p * y.r + d * x.r * y.q + c * x.r * y.r;
  z.s = c * x.q * y.p + d * x.q * y.s + a * x.s * y.p + b * x.s * y.s;
  return z;
}

Vec2 pqrs_apply(const PqrsMatrix& x, const Vec2& phi, const Coin& coin) {
  return pqrs_reconstruct(x, coin) * phi;
}

}  // namespace qwabs
