#pragma once

#include <complex>
#include <variant>

#include "qwabs/coin.hpp"

namespace qwabs {

/// Coefficients of P(phi) = C1 |alpha|^2 + C2 |beta|^2 + 2 Re(C3 conj(alpha) beta).
struct AbsorptionConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  cplx c3{};

  double probability(const QubitState& phi) const {
    const cplx al = phi.alpha(), be = phi.beta();
    return c1 * std::norm(al) + c2 * std::norm(be) + 2.0 * std::real(c3 * std::conj(al) * be);
  }
};

/// Marker for a conditional moment that is infinite.
struct Divergent {
  bool operator==(const Divergent&) const = default;
};
using MomentValue = std::variant<double, Divergent>;

inline bool is_divergent(const MomentValue& v) { return std::holds_alternative<Divergent>(v); }

// Hadamard walk on {0, 1, ...} started at site 1.

/// 2/pi + 2 (1 - 2/pi) Re(conj(alpha) beta); lies in [(4-pi)/pi, 1].
double p_inf_1_hadamard(const QubitState& phi);

/// The same value as constants: C1 = C2 = 2/pi, C3 = 1 - 2/pi.
AbsorptionConstants hadamard_infinite_constants();

/// E(T0 | T0 < inf) = 1 / P(phi).
double expected_t0_given_hit(const QubitState& phi);

/// m = 1 gives the finite expectation; every m >= 2 diverges.
MomentValue moment_t0_given_hit(int m, const QubitState& phi);

/// Gauss hypergeometric 2F1(a, b; c; x) for real x in [0, 1]. Below 1 the
/// power series is summed until terms fall under 1e-16 of the partial sum;
/// at x = 1 the Gauss product G(c)G(c-a-b) / (G(c-a)G(c-b)) is used.
/// Throws DivergenceError at x = 1 when c - a - b <= 0.
double hyp2f1(double a, double b, double c, double x);

/// f'(1) for f(z) = sum_n r_1(n)^2 z^n, via the 2F1 derivative identity.
double f_prime_at_1();

/// sum_n r_1(n)^2 = 2F1(-1/2, -1/2; 1; 1) - 1 = 4/pi - 1.
double sum_r_squared_infinite();

/// (1/sqrt2) ((3+2sqrt2)^{N-1} - 1) / ((3+2sqrt2)^{N-1} + 1); the conjectured
/// P_1^(N) for the right-chirality start.
double conjecture_p(int n);

/// One step of x -> (2x + 1) / (2x + 2), which the conjectured values obey.
double conjecture_step(double p);

enum class Chirality { Left, Right };

/// Large-k limits of P_k on {0, 1, ...} for the H(rho) coin. Left is the
/// upper component (1, 0), Right is (0, 1).
double bach_limit_rho(double rho, Chirality chirality);

}  // namespace qwabs
