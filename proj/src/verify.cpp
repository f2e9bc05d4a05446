#include "qwabs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qwabs/classical.hpp"
#include "qwabs/closed_forms.hpp"
#include "qwabs/coin.hpp"
#include "qwabs/evolution.hpp"
#include "qwabs/hitting.hpp"
#include "qwabs/series.hpp"

namespace qwabs {

namespace {

using std::numbers::pi;

constexpr std::uint64_t kSeed = 20021215;

struct Recorder {
  std::vector<CheckRow>& rows;
  std::string group;

  void close(const std::string& name, double value, double expected, double tol,
             std::string detail = {}) {
    const bool ok = std::isfinite(value) && std::abs(value - expected) <= tol;
    rows.push_back({group, name, value, expected, tol, ok, std::move(detail)});
  }
  /// Records a max-error style row: passes when error <= tol.
  void bound(const std::string& name, double error, double tol, std::string detail = {}) {
    close(name, error, 0.0, tol, std::move(detail));
  }
  void holds(const std::string& name, bool ok, std::string detail = {}) {
    rows.push_back({group, name, ok ? 1.0 : 0.0, 1.0, 0.0, ok, std::move(detail)});
  }
};

QubitState random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return QubitState::normalized({g(rng), g(rng)}, {g(rng), g(rng)});
}

Coin random_coin(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  const double theta = u(rng) / 4.0;
  const cplx e = std::polar(1.0, u(rng)), f1 = std::polar(1.0, u(rng)),
             f2 = std::polar(1.0, u(rng));
  return Coin(e * f1 * std::cos(theta), e * f2 * std::sin(theta),
              -e * std::conj(f2) * std::sin(theta), e * std::conj(f1) * std::cos(theta));
}

std::string nk(int n, int k) {
  std::ostringstream os;
  os << "N=" << n << " k=" << k;
  return os.str();
}

const QubitState kRight(0.0, 1.0);
const double kGolden[] = {0.0, 0.0, 1.0 / 2, 2.0 / 3, 7.0 / 10, 12.0 / 17, 41.0 / 58};

void golden(Recorder r, int threads) {
  const Coin h = hadamard();
  Theorem2Options opt;
  opt.threads = threads;
  for (int n = 2; n <= 6; ++n) {
    const auto lat = LatticeSpec::finite(n, 1);
    r.close("evolve " + nk(n, 1), run_absorption(lat, h, kRight, 500).cumulative_at_0,
            kGolden[n], 1e-9);
    r.close("recurrence " + nk(n, 1), absorption_prob(lat, h, kRight, 500).probability,
            kGolden[n], 1e-9);
    r.close("theorem2 " + nk(n, 1), theorem2_absorption(n, 1, h, kRight, opt).probability,
            kGolden[n], 1e-9);
  }
}

void routes(Recorder r, int threads) {
  const Coin h = hadamard();
  std::mt19937_64 rng(kSeed);
  std::vector<QubitState> qubits;
  for (int i = 0; i < 20; ++i) qubits.push_back(random_qubit(rng));
  Theorem2Options opt;
  opt.threads = threads;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto lat = LatticeSpec::finite(n, k);
      const AbsorptionConstants c = theorem2_absorption(n, k, h, kRight, opt).constants;
      double worst = 0.0;
      for (const auto& q : qubits) {
        const double ev = run_absorption(lat, h, q, 500).cumulative_at_0;
        const double rc = absorption_prob(lat, h, q, 500).probability;
        const double t2 = c.probability(q);
        worst = std::max({worst, std::abs(ev - rc), std::abs(ev - t2), std::abs(rc - t2)});
      }
      r.bound("routes agree " + nk(n, k), worst, 1e-8, "20 random qubits");
    }
  }
  const Coin other = random_coin(rng);
  for (const Coin& coin : {h, other}) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
      for (int k = 1; k < n; ++k) {
        const auto lat = LatticeSpec::finite(n, k);
        const XiTable table = build_xi_table(lat, coin, 12);
        for (int t = 0; t <= 12; ++t)
          worst = std::max(worst, max_abs_diff(table.entry(k, t), enumerate_paths_xi(lat, t, coin)));
      }
    r.bound(std::string("path oracle vs recurrence, ") + (coin.is_hadamard() ? "Hadamard" : "random coin"),
            worst, 1e-12, "N<=6, n<=12");
  }
}

double series_route(const GenSeries& g, const QubitState& q) {
  const Coin h = hadamard();
  detail::CompensatedSum s;
  for (long n = 1; n <= g.p.order(); ++n) {
    if (g.p[n] == cplx{} && g.r[n] == cplx{}) continue;
    s.add(hitting_prob(PqrsMatrix{g.p[n], 0.0, g.r[n], 0.0}, h, q));
  }
  return s.value();
}

void infinite(Recorder r, int) {
  const Coin h = hadamard();
  std::mt19937_64 rng(kSeed + 1);
  const GenSeries g = gen_infinite_hadamard(40000);
  double worst_series = 0.0;
  std::vector<QubitState> qubits;
  for (int i = 0; i < 20; ++i) qubits.push_back(random_qubit(rng));
  for (const auto& q : qubits)
    worst_series = std::max(worst_series, std::abs(series_route(g, q) - p_inf_1_hadamard(q)));
  r.bound("closed form vs series (order 4e4)", worst_series, 1e-5, "20 random qubits");

  // The hitting probability is a Hermitian form in phi, so four evolutions
  // fix it; each random qubit is then checked against that form.
  const double s = std::sqrt(0.5);
  const auto lat = LatticeSpec::semi_infinite(1);
  const long horizon = 20000;
  const double e1 = run_absorption(lat, h, QubitState(1.0, 0.0), horizon).cumulative_at_0;
  const double e2 = run_absorption(lat, h, QubitState(0.0, 1.0), horizon).cumulative_at_0;
  const double e3 = run_absorption(lat, h, QubitState(s, s), horizon).cumulative_at_0;
  const double e4 = run_absorption(lat, h, QubitState(s, cplx(0.0, s)), horizon).cumulative_at_0;
  const AbsorptionConstants ev{e1, e2, cplx(e3 - 0.5 * (e1 + e2), 0.5 * (e1 + e2) - e4)};
  double worst_ev = 0.0;
  for (const auto& q : qubits) worst_ev = std::max(worst_ev, std::abs(ev.probability(q) - p_inf_1_hadamard(q)));
  r.bound("closed form vs evolution (T=2e4)", worst_ev, 2e-4, "20 random qubits");

  r.close("maximum at (1,1)/sqrt2", p_inf_1_hadamard(QubitState(s, s)), 1.0, 1e-12);
  r.close("minimum at (1,-1)/sqrt2", p_inf_1_hadamard(QubitState(s, -s)), (4.0 - pi) / pi, 1e-12);
  r.close("right chirality gives 2/pi", p_inf_1_hadamard(kRight), 2.0 / pi, 1e-12);
}

void expectation(Recorder r, int) {
  r.close("f'(1) via 2F1 and Gamma", f_prime_at_1(), 1.0, 1e-12);
  std::mt19937_64 rng(kSeed + 2);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const QubitState q = random_qubit(rng);
    worst = std::max(worst, std::abs(expected_t0_given_hit(q) * p_inf_1_hadamard(q) - 1.0));
  }
  r.bound("E(T0|T0<inf) * P = 1", worst, 1e-12, "20 random qubits");
  r.holds("second moment diverges", is_divergent(moment_t0_given_hit(2, kRight)));

  const GenSeries g = gen_infinite_hadamard(100000);
  const Coin h = hadamard();
  std::vector<double> partial;
  detail::CompensatedSum s;
  for (long n = 1; n <= g.p.order(); ++n) {
    s.add(static_cast<double>(n) * hitting_prob(PqrsMatrix{g.p[n], 0.0, g.r[n], 0.0}, h, kRight));
    if (n == 1000 || n == 10000 || n == 100000) partial.push_back(s.value());
  }
  r.close("truncated sum n P(T0=n), order 1e5", partial.back(), 1.0, 1e-2);
  r.holds("truncated sums increase (1e3, 1e4, 1e5)",
          partial[0] < partial[1] && partial[1] < partial[2]);
}

void parseval(Recorder r, int threads) {
  for (int n = 2; n <= 8; ++n) {
    const RationalFn f = gen_r_finite_k1(n);
    const double coeff = parseval_sum(taylor_coeffs(f, 2000));
    const double quad =
        unit_circle_mean([&](cplx z) { return std::norm(f.evaluate(z)); }, kDefaultNodes, threads);
    r.close("quadrature vs coefficients N=" + std::to_string(n), quad, coeff, 1e-9);
  }
  const RationalFn f3 = gen_r_finite_k1(3);
  r.close("N=3 mean |r|^2 = 1/3",
          unit_circle_mean([&](cplx z) { return std::norm(f3.evaluate(z)); }, kDefaultNodes, threads),
          1.0 / 3.0, 1e-12);
}

void conjecture(Recorder r, int threads) {
  const Coin h = hadamard();
  Theorem2Options opt;
  opt.threads = threads;
  std::vector<double> computed(7);
  for (int n = 2; n <= 6; ++n) {
    computed[n] = theorem2_absorption(n, 1, h, kRight, opt).probability;
    r.close("closed form N=" + std::to_string(n), computed[n], conjecture_p(n), 1e-9);
  }
  r.close("recurrence from P^(1)=0", conjecture_step(conjecture_p(1)), computed[2], 1e-9);
  for (int n = 2; n < 6; ++n)
    r.close("recurrence N=" + std::to_string(n) + "->" + std::to_string(n + 1),
            conjecture_step(computed[n]), computed[n + 1], 1e-9);
  r.close("conjecture_p(30) = 1/sqrt2", conjecture_p(30), 1.0 / std::numbers::sqrt2, 1e-12);
}

void classical_group(Recorder r, int) {
  double worst = 0.0;
  for (int pi10 = 1; pi10 <= 9; ++pi10) {
    const double p = pi10 / 10.0;
    for (int n = 2; n <= 50; ++n) {
      const auto lin = classical::solve_ruin_linear(n, p);
      for (int k = 0; k <= n; ++k)
        worst = std::max(worst, std::abs(classical::ruin_prob({p, n, k}) - lin[k]));
    }
  }
  r.bound("closed form vs tridiagonal solve", worst, 1e-12, "N<=50, p in 0.1..0.9");
  const MomentValue e = classical::classical_conditional_expectation(0.6);
  r.close("E1(T0|T0<inf) at p=0.6", std::get<double>(e), 5.0, 1e-12);
  std::mt19937_64 rng(kSeed + 3);
  const auto mc = classical::monte_carlo_conditional_expectation(0.6, 1'000'000, 1'000'000, rng);
  r.close("Monte Carlo at p=0.6", mc.mean, 5.0, 0.1, "1e6 walks");
}

void structural(Recorder r, int) {
  std::mt19937_64 rng(kSeed + 4);
  double ortho = 0.0, table = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Coin c = random_coin(rng);
    const Mat2 basis[] = {c.P(), c.Q(), c.R(), c.S()};
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        ortho = std::max(ortho, std::abs(trace_inner(basis[x], basis[y]) - (x == y ? 1.0 : 0.0)));
        PqrsMatrix ex, ey;
        cplx* ex_c[] = {&ex.p, &ex.q, &ex.r, &ex.s};
        cplx* ey_c[] = {&ey.p, &ey.q, &ey.r, &ey.s};
        *ex_c[x] = 1.0;
        *ey_c[y] = 1.0;
        table = std::max(table, max_abs_diff(pqrs_reconstruct(pqrs_multiply(ex, ey, c), c),
                                             basis[x] * basis[y]));
      }
  }
  r.bound("PQRS orthonormality (50 coins)", ortho, 1e-12);
  r.bound("product table (50 coins x 16)", table, 1e-12);

  double drift = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Coin c = random_coin(rng);
    const QubitState q = random_qubit(rng);
    for (const auto& lat : {LatticeSpec::finite(6, 3), LatticeSpec::semi_infinite(2)}) {
      WalkState s = WalkState::initial(lat, q);
      double before = s.norm();
      for (int t = 0; t < 200; ++t) {
        const StepResult st = step(s, c, lat);
        const double after = st.state.norm();
        drift = std::max(drift, std::abs(after + st.absorbed_at_0 + st.absorbed_at_n - before));
        s = st.state;
        before = after;
      }
    }
  }
  r.bound("norm conservation per step", drift, 1e-12);

  double qs = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Coin c = i == 0 ? hadamard() : random_coin(rng);
    for (int n = 2; n <= 8; ++n) {
      const XiTable t = build_xi_table(LatticeSpec::finite(n, 1), c, 200);
      for (long time = 1; time <= 200; ++time)
        for (int k = 1; k < n; ++k)
          qs = std::max({qs, std::abs(t.entry(k, time).q), std::abs(t.entry(k, time).s)});
    }
  }
  r.bound("q = s = 0 on recurrence tables", qs, 1e-14);
}

void bach(Recorder r, int) {
  for (double rho : {0.3, 0.5, 0.7}) {
    const Coin c = make_coin(RhoSpec{rho});
    std::ostringstream tag;
    tag << "rho=" << rho;
    const auto lat = LatticeSpec::finite(400, 200);
    r.close("N=400 k=200 left " + tag.str(),
            run_absorption(lat, c, QubitState(1.0, 0.0), 4000).cumulative_at_0,
            bach_limit_rho(rho, Chirality::Left), 5e-2);
    r.close("N=400 k=200 right " + tag.str(),
            run_absorption(lat, c, QubitState(0.0, 1.0), 4000).cumulative_at_0,
            bach_limit_rho(rho, Chirality::Right), 5e-2);
  }
}

void bach_semi_infinite(Recorder r, int) {
  for (double rho : {0.3, 0.5, 0.7}) {
    const Coin c = make_coin(RhoSpec{rho});
    std::ostringstream tag;
    tag << "rho=" << rho;
    const auto lat = LatticeSpec::semi_infinite(200);
    r.close("semi-infinite k=200 left " + tag.str(),
            run_absorption(lat, c, QubitState(1.0, 0.0), 4000).cumulative_at_0,
            bach_limit_rho(rho, Chirality::Left), 5e-2);
    r.close("semi-infinite k=200 right " + tag.str(),
            run_absorption(lat, c, QubitState(0.0, 1.0), 4000).cumulative_at_0,
            bach_limit_rho(rho, Chirality::Right), 5e-2);
  }
}

using GroupFn = void (*)(Recorder, int);

const std::vector<std::pair<std::string, GroupFn>>& registry() {
  static const std::vector<std::pair<std::string, GroupFn>> groups = {
      {"golden", golden},         {"routes", routes},
      {"infinite", infinite},     {"expectation", expectation},
      {"parseval", parseval},     {"conjecture", conjecture},
      {"classical", classical_group}, {"structural", structural},
      {"bach", bach},             {"bach-semi-infinite", bach_semi_infinite},
  };
  return groups;
}

}  // namespace

const std::vector<std::string>& verification_groups() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<CheckRow> run_verification(const std::string& only, int threads) {
  bool found = only.empty();
  std::vector<CheckRow> rows;
  for (const auto& [name, fn] : registry()) {
    if (!only.empty() && name != only) continue;
    found = true;
    fn(Recorder{rows, name}, threads);
  }
  if (!found) throw std::invalid_argument("unknown verification group: " + only);
  return rows;
}

}  // namespace qwabs
