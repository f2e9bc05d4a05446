#pragma once

#include <array>
#include <complex>
#include <string>
#include <variant>

namespace qwabs {

using cplx = std::complex<double>;

/// Plain 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<std::array<cplx, 2>, 2> m{};

  static Mat2 zero() { return {}; }
  static Mat2 identity() {
    Mat2 r;
    r.m[0][0] = r.m[1][1] = 1.0;
    return r;
  }

  cplx& operator()(int i, int j) { return m[i][j]; }
  const cplx& operator()(int i, int j) const { return m[i][j]; }

  Mat2& operator+=(const Mat2& o);
  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(cplx s, Mat2 a);
};

/// Two-component chirality amplitude; index 0 is left, 1 is right.
using Vec2 = std::array<cplx, 2>;

Vec2 operator*(const Mat2& a, const Vec2& v);
double norm2(const Vec2& v);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Constructor tolerance for unitarity checks.
inline constexpr double kUnitarityTol = 1e-10;

struct HadamardSpec {};
struct RhoSpec {
  double rho;
};
/// e^{i eta}/sqrt2 [[e^{i(phi+psi)}, e^{-i(phi-psi)}], [e^{i(phi-psi)}, -e^{-i(phi+psi)}]]
struct SymmetricSpec {
  double eta, phi, psi;
};
struct CustomSpec {
  cplx a, b, c, d;
};
using CoinSpec = std::variant<HadamardSpec, RhoSpec, SymmetricSpec, CustomSpec>;

/// 2x2 unitary [[a, b], [c, d]] driving one step of the walk.
///
/// Left chirality is the upper component and moves toward site 0.
class Coin {
 public:
  /// Throws ValidationError naming the violated identity if not unitary
  /// within `tol`.
  Coin(cplx a, cplx b, cplx c, cplx d, double tol = kUnitarityTol);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx delta() const { return a_ * d_ - b_ * c_; }

  Mat2 matrix() const;

  // The PQRS basis built from the rows of U.
  Mat2 P() const;
  Mat2 Q() const;
  Mat2 R() const;
  Mat2 S() const;

  /// True when every entry agrees with the Hadamard coin within `tol`.
  bool is_hadamard(double tol = 1e-12) const;

 private:
  cplx a_, b_, c_, d_;
};

Coin make_coin(const CoinSpec& spec);
Coin hadamard();

/// Normalised initial chirality (alpha, beta).
class QubitState {
 public:
  /// Throws ValidationError unless |alpha|^2 + |beta|^2 = 1 within `tol`.
  QubitState(cplx alpha, cplx beta, double tol = kUnitarityTol);

  /// Rescales a nonzero vector to unit norm.
  static QubitState normalized(cplx alpha, cplx beta);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  Vec2 vec() const { return {alpha_, beta_}; }

 private:
  cplx alpha_, beta_;
};

/// Coordinates of a 2x2 matrix in the PQRS basis of some coin.
///
/// The basis depends on the coin, so the coin is always passed alongside.
/// Mixing coordinates taken against different coins is not detected.
struct PqrsMatrix {
  cplx p{}, q{}, r{}, s{};

  PqrsMatrix& operator+=(const PqrsMatrix& o) {
    p += o.p;
    q += o.q;
    r += o.r;
    s += o.s;
    return *this;
  }
  friend PqrsMatrix operator+(PqrsMatrix x, const PqrsMatrix& y) { return x += y; }
  friend PqrsMatrix operator*(cplx k, const PqrsMatrix& x) {
    return {k * x.p, k * x.q, k * x.r, k * x.s};
  }
  bool operator==(const PqrsMatrix&) const = default;

  static PqrsMatrix identity(const Coin& coin) {
    return {std::conj(coin.a()), std::conj(coin.d()), std::conj(coin.c()),
            std::conj(coin.b())};
  }
};

/// Largest coordinate modulus of x - y.
double max_abs_diff(const PqrsMatrix& x, const PqrsMatrix& y);

/// Trace inner product tr(A^* B).
cplx trace_inner(const Mat2& a, const Mat2& b);

PqrsMatrix pqrs_decompose(const Mat2& m, const Coin& coin);
Mat2 pqrs_reconstruct(const PqrsMatrix& x, const Coin& coin);

/// Product x*y evaluated through the basis product table.
PqrsMatrix pqrs_multiply(const PqrsMatrix& x, const PqrsMatrix& y, const Coin& coin);

/// (x as a matrix) * phi.
Vec2 pqrs_apply(const PqrsMatrix& x, const Vec2& phi, const Coin& coin);
inline Vec2 pqrs_apply(const PqrsMatrix& x, const QubitState& phi, const Coin& coin) {
  return pqrs_apply(x, phi.vec(), coin);
}

}  // namespace qwabs
