#include <doctest.h>

#include <numbers>

#include "qwabs/error.hpp"
#include "qwabs/hitting.hpp"
#include "qwabs/series.hpp"
#include "test_support.hpp"

using namespace qwabs;
using qwabs::testing::kInvSqrt2;

namespace {

bool same_poly(const Polynomial& got, const std::vector<double>& want, double tol = 1e-12) {
  const size_t n = std::max(got.size(), want.size());
  for (size_t i = 0; i < n; ++i) {
    const cplx g = i < got.size() ? got[i] : cplx{};
    const double w = i < want.size() ? want[i] : 0.0;
    if (std::abs(g - w) > tol) return false;
  }
  return true;
}

// Coefficients of the time-n DP entries at site k as power series in z.
GenSeries dp_series(const LatticeSpec& l, int k, long order) {
  const XiTable t = build_xi_table(l, hadamard(), order);
  GenSeries g{SeriesCoeffs::zero(order), SeriesCoeffs::zero(order)};
  for (long n = 0; n <= order; ++n) {
    g.p[n] = t.entry(k, n).p;
    g.r[n] = t.entry(k, n).r;
  }
  return g;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("series arithmetic truncates to the shorter order") {
    const SeriesCoeffs x({1.0, 2.0, 3.0}), y({1.0, -1.0});
    const SeriesCoeffs prod = x * y;
    CHECK(prod.order() == 1);
    CHECK(prod[0] == cplx(1.0));
    CHECK(prod[1] == cplx(1.0));
    CHECK((x + y).order() == 1);
    CHECK((x - y)[1] == cplx(3.0));
    CHECK(x[7] == cplx{});
    CHECK(x.truncated(1).order() == 1);
    CHECK(std::abs(x.evaluate(0.5) - 2.75) < 1e-15);
    CHECK(SeriesCoeffs::monomial(3, 5)[3] == cplx(1.0));
  }

  TEST_CASE("laurent polynomials trim zeros") {
    const LaurentPoly a(-1, {0.0, 1.0, 0.0});
    CHECK(a.min_power() == 0);
    CHECK(a.max_power() == 0);
    CHECK((a + LaurentPoly(0, {-1.0})).is_zero());
    const LaurentPoly zinv(-1, {1.0});
    const LaurentPoly z(1, {1.0});
    CHECK((zinv * z).coeff(0) == cplx(1.0));
    CHECK(std::abs((2.0 * zinv).evaluate(0.5) - 4.0) < 1e-15);
  }

  TEST_CASE("polynomial roots") {
    const std::vector<cplx> roots = polynomial_roots({2.0, 0.0, -1.0});
    REQUIRE(roots.size() == 2);
    for (cplx r : roots) CHECK(std::abs(std::abs(r) - std::numbers::sqrt2) < 1e-12);
  }

  TEST_CASE("sqrt(1 + z^4)") {
    const SeriesCoeffs s = series_sqrt_one_plus_z4(8);
    CHECK(s[0] == cplx(1.0));
    CHECK(std::abs(s[4] - 0.5) < 1e-15);
    CHECK(std::abs(s[8] + 0.125) < 1e-15);
    CHECK(series_sqrt_one_plus_z4(0).order() == 0);
    CHECK(series_sqrt_one_plus_z4(0)[0] == cplx(1.0));
    const SeriesCoeffs big = series_sqrt_one_plus_z4(200);
    const SeriesCoeffs sq = big * big;
    for (long i = 0; i <= 200; ++i) CHECK(std::abs(sq[i] - (i == 0 || i == 4 ? 1.0 : 0.0)) < 1e-14);
  }

  TEST_CASE("half-line k = 1 series") {
    const GenSeries g = gen_infinite_hadamard(16);
    CHECK(g.p[1] == cplx(1.0));
    CHECK(std::abs(g.r[3] - 0.5) < 1e-15);
    CHECK(std::abs(g.r[5]) < 1e-15);
    CHECK(std::abs(g.r[7] + 0.125) < 1e-15);
    CHECK(std::abs(parseval_sum(gen_infinite_hadamard(40000).r) - (4.0 / std::numbers::pi - 1.0)) < 1e-6);
  }

  TEST_CASE("half-line k > 1 series match the DP") {
    const GenSeries k1 = gen_infinite_hadamard_k(1, 30);
    const GenSeries base = gen_infinite_hadamard(30);
    for (long n = 0; n <= 30; ++n) {
      CHECK(std::abs(k1.p[n] - base.p[n]) < 1e-15);
      CHECK(std::abs(k1.r[n] - base.r[n]) < 1e-15);
    }
    for (int k : {2, 3, 5}) {
      const GenSeries g = gen_infinite_hadamard_k(k, 30);
      const GenSeries dp = dp_series(LatticeSpec::semi_infinite(k), k, 30);
      for (long n = 0; n <= 30; ++n) {
        CHECK(std::abs(g.p[n] - dp.p[n]) < 1e-12);
        CHECK(std::abs(g.r[n] - dp.r[n]) < 1e-12);
      }
    }
    const GenSeries k3 = gen_infinite_hadamard_k(3, 10);
    CHECK(std::abs(k3.p[1]) + std::abs(k3.p[2]) == 0.0);
    CHECK(std::abs(k3.p[3]) > 0.1);
    CHECK_THROWS_AS(gen_infinite_hadamard_k(0, 10), std::invalid_argument);
  }

  TEST_CASE("lambda_+ solves its quadratic") {
    // lambda^2 - s lambda - 1 = 0 with s = sqrt2 (z - 1/z), i.e. z lambda^2 - sqrt2 (z^2 - 1) lambda - z = 0.
    const SeriesCoeffs l = lambda_plus_series(40);
    const SeriesCoeffs z = SeriesCoeffs::monomial(1, 40);
    const SeriesCoeffs zz = SeriesCoeffs::monomial(2, 40) - SeriesCoeffs::monomial(0, 40);
    const SeriesCoeffs lhs = z * l * l - std::numbers::sqrt2 * (zz * l) - z;
    for (long i = 0; i < 40; ++i) CHECK(std::abs(lhs[i]) < 1e-13);
  }

  TEST_CASE("J polynomials") {
    CHECK(j_polynomial(0).coeff(0) == cplx(1.0));
    const LaurentPoly j1 = j_polynomial(1);
    CHECK(std::abs(j1.coeff(1) - std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(j1.coeff(-1) + std::numbers::sqrt2) < 1e-15);
    const LaurentPoly j2 = j_polynomial(2);
    // 2(z - 1/z)^2 + 1 = 2z^2 - 3 + 2/z^2
    CHECK(std::abs(j2.coeff(2) - 2.0) < 1e-14);
    CHECK(std::abs(j2.coeff(0) + 3.0) < 1e-14);
    CHECK(std::abs(j2.coeff(-2) - 2.0) < 1e-14);
    const cplx z(0.4, 0.7);
    const cplx s = std::numbers::sqrt2 * (z - 1.0 / z);
    for (int n = 2; n <= 12; ++n)
      CHECK(std::abs(j_polynomial(n).evaluate(z) - (s * j_polynomial(n - 1).evaluate(z) +
                                                     j_polynomial(n - 2).evaluate(z))) < 1e-9);
  }

  TEST_CASE("rational k = 1 generating functions") {
    const RationalFn r2 = gen_r_finite_k1(2);
    CHECK(r2.to_string() == "0");
    const RationalFn r3 = gen_r_finite_k1(3);
    CHECK(r3.to_string() == "z^3/(2 - z^2)");
    const RationalFn r4 = gen_r_finite_k1(4);
    CHECK(same_poly(r4.numerator, {0, 0, 0, 1, 0, -1}));
    CHECK(same_poly(r4.denominator, {2, 0, -2, 0, 1}));
    const RationalFn r6 = gen_r_finite_k1(6);
    CHECK(same_poly(r6.numerator, {0, 0, 0, 2, 0, -4, 0, 4, 0, -2}));
    CHECK(same_poly(r6.denominator, {4, 0, -8, 0, 9, 0, -6, 0, 2}));
    CHECK_THROWS_AS(gen_r_finite_k1(1), std::invalid_argument);
  }

  TEST_CASE("taylor coefficients") {
    const SeriesCoeffs t3 = taylor_coeffs(gen_r_finite_k1(3), 80);
    CHECK(std::abs(t3[3] - 0.5) < 1e-15);
    CHECK(std::abs(t3[5] - 0.25) < 1e-15);
    CHECK(std::abs(t3[7] - 0.125) < 1e-15);
    CHECK(std::abs(parseval_sum(t3) - 1.0 / 3.0) < 1e-12);

    const SeriesCoeffs one = taylor_coeffs(RationalFn{{1.0}, {1.0}}, 5);
    CHECK(one[0] == cplx(1.0));
    for (long i = 1; i <= 5; ++i) CHECK(one[i] == cplx{});
    CHECK_THROWS_AS(taylor_coeffs(RationalFn{{1.0}, {0.0, 1.0}}, 5), std::invalid_argument);

    for (int n : {4, 5, 7}) {
      const SeriesCoeffs t = taylor_coeffs(gen_r_finite_k1(n), 30);
      const GenSeries dp = dp_series(LatticeSpec::finite(n, 1), 1, 30);
      for (long i = 0; i <= 30; ++i) CHECK(std::abs(t[i] - dp.r[i]) < 1e-12);
    }
  }

  TEST_CASE("parseval sums") {
    CHECK(parseval_sum(SeriesCoeffs::monomial(1, 4)) == 1.0);
    CHECK(parseval_sum(SeriesCoeffs({cplx(0.0, 3.0), 4.0})) == doctest::Approx(25.0));
  }

  TEST_CASE("pointwise evaluation: boundary identities") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 10);
    for (int n = 2; n <= 9; ++n)
      for (int trial = 0; trial < 5; ++trial) {
        const cplx z = std::polar(0.9, std::uniform_real_distribution<double>(0, 6.28)(rng));
        CHECK(std::abs(gen_finite_eval(n, 1, z).p - z) < 1e-10);
        CHECK(std::abs(gen_finite_eval(n, n - 1, z).r) < 1e-10);
      }
    CHECK_THROWS_AS(gen_finite_eval(5, 0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(gen_finite_eval(5, 5, 0.3), std::invalid_argument);
  }

  TEST_CASE("pointwise evaluation matches the DP and the linear system") {
    for (int k = 1; k <= 4; ++k) {
      const GenSeries dp = dp_series(LatticeSpec::finite(5, k), k, 120);
      const GenValues v = gen_finite_eval(5, k, 0.3);
      CHECK(std::abs(v.p - dp.p.evaluate(0.3)) < 1e-10);
      CHECK(std::abs(v.r - dp.r.evaluate(0.3)) < 1e-10);
    }
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 11);
    for (int n = 2; n <= 8; ++n)
      for (int k = 1; k < n; ++k) {
        const cplx z = qwabs::testing::random_in_disc(rng, 0.95);
        const GenValues a = gen_finite_eval(n, k, z);
        const GenValues b = gen_finite_eval_linear(n, k, z, hadamard());
        CHECK(std::abs(a.p - b.p) < 1e-10);
        CHECK(std::abs(a.r - b.r) < 1e-10);
      }
  }

  TEST_CASE("linear route for a general coin matches the DP") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 12);
    const Coin u = qwabs::testing::random_coin(rng);
    const XiTable t = build_xi_table(LatticeSpec::finite(6, 1), u, 200);
    const cplx z(0.2, 0.35);
    for (int k = 1; k < 6; ++k) {
      cplx p{}, r{}, zn = 1.0;
      for (long n = 0; n <= 200; ++n, zn *= z) {
        p += t.entry(k, n).p * zn;
        r += t.entry(k, n).r * zn;
      }
      const GenValues v = gen_finite_eval_linear(6, k, z, u);
      CHECK(std::abs(v.p - p) < 1e-10);
      CHECK(std::abs(v.r - r) < 1e-10);
    }
  }

  TEST_CASE("boundary-fitted coefficients") {
    CHECK_THROWS_AS(finite_gen_coefficients(3, 0.5), std::invalid_argument);
    const FiniteGenCoefficients c = finite_gen_coefficients(6, cplx(0.1, 0.2));
    CHECK(std::isfinite(std::abs(c.c_delta)));
    CHECK(std::isfinite(std::abs(c.e_delta)));
  }

  TEST_CASE("unit circle means") {
    CHECK(unit_circle_mean([](cplx z) { return std::norm(z); }, 1) == doctest::Approx(1.0));
    CHECK(unit_circle_mean([](cplx z) { return std::norm(z); }, 7) == doctest::Approx(1.0));
    const RationalFn r3 = gen_r_finite_k1(3), r4 = gen_r_finite_k1(4);
    CHECK(std::abs(unit_circle_mean([&](cplx z) { return std::norm(r3.evaluate(z)); }) - 1.0 / 3.0) < 1e-10);
    CHECK(std::abs(unit_circle_mean([&](cplx z) { return std::norm(r4.evaluate(z)); }) - 0.4) < 1e-10);
    CHECK_THROWS_AS(unit_circle_mean([](cplx) { return 1.0; }, 0), std::invalid_argument);
    CHECK_THROWS_AS(unit_circle_mean([](cplx) { return std::nan(""); }, 8), PoleProximityError);
  }

  TEST_CASE("threaded quadrature stays within 1e-13 of the serial result") {
    const RationalFn r6 = gen_r_finite_k1(6);
    auto f = [&](cplx z) { return std::norm(r6.evaluate(z)); };
    const double serial = unit_circle_mean(f, 4096, 1);
    CHECK(serial == unit_circle_mean(f, 4096, 1));
    CHECK(std::abs(unit_circle_mean(f, 4096, 3) - serial) < 1e-13);
  }

  TEST_CASE("quadrature route golden values") {
    const QubitState right = qwabs::testing::right_chirality();
    CHECK(std::abs(theorem2_absorption(6, 1, hadamard(), right).probability - 41.0 / 58.0) < 1e-9);
    CHECK(std::abs(theorem2_absorption(5, 1, hadamard(), right).probability - 12.0 / 17.0) < 1e-9);
    const QubitState imag(kInvSqrt2, cplx(0.0, kInvSqrt2));
    CHECK(std::abs(theorem2_absorption(2, 1, hadamard(), imag).probability - 0.5) < 1e-12);
    CHECK(std::abs(theorem2_absorption(2, 1, hadamard(), QubitState(1.0, 0.0)).probability - 0.5) < 1e-12);
  }

  TEST_CASE("quadrature constants at k = 1") {
    // C1 = C2 = (1 + S)/2 and C3 = (1 - S)/2 with S the Parseval sum of r_1.
    for (int n = 2; n <= 6; ++n) {
      const double s = parseval_sum(taylor_coeffs(gen_r_finite_k1(n), 3000));
      const AbsorptionConstants c =
          theorem2_absorption(n, 1, hadamard(), qwabs::testing::right_chirality()).constants;
      CHECK(std::abs(c.c1 - 0.5 * (1.0 + s)) < 1e-10);
      CHECK(std::abs(c.c2 - 0.5 * (1.0 + s)) < 1e-10);
      CHECK(std::abs(c.c3 - 0.5 * (1.0 - s)) < 1e-10);
    }
  }

  TEST_CASE("quadrature route scope") {
    const Coin rho = make_coin(RhoSpec{0.3});
    const QubitState right = qwabs::testing::right_chirality();
    CHECK_THROWS_AS(theorem2_absorption(4, 1, rho, right), ScopeError);
    Theorem2Options opt;
    opt.experimental_general_coin = true;
    const double got = theorem2_absorption(4, 2, rho, right, opt).probability;
    const double dp = absorption_prob(LatticeSpec::finite(4, 2), rho, right, 2000).probability;
    CHECK(std::abs(got - dp) < 1e-8);
    CHECK_THROWS_AS(theorem2_absorption(4, 4, hadamard(), right), std::invalid_argument);
  }

  TEST_CASE("pole distances shrink with N") {
    double last = 1.0;
    for (int n = 3; n <= 8; ++n) {
      const double d = min_pole_distance_from_unit_circle(n);
      CHECK(d > 0.0);
      CHECK(d < last);
      last = d;
    }
    CHECK(std::abs(min_pole_distance_from_unit_circle(3) - (std::numbers::sqrt2 - 1.0)) < 1e-12);
  }
}
