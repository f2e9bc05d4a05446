#include <doctest.h>

#include "qwabs/error.hpp"
#include "qwabs/evolution.hpp"
#include "test_support.hpp"

using namespace qwabs;
using qwabs::testing::right_chirality;

TEST_SUITE("evolution") {
  TEST_CASE("lattice validation") {
    CHECK_THROWS_AS(LatticeSpec::finite(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::finite(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::finite(4, -1), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::semi_infinite(-1), std::invalid_argument);
    const LatticeSpec l = LatticeSpec::finite(7, 3);
    CHECK(l.is_finite());
    CHECK(l.right() == 7);
    CHECK(l.start() == 3);
    CHECK_FALSE(LatticeSpec::semi_infinite(2).is_finite());
  }

  TEST_CASE("one step from the middle of N=2 splits evenly") {
    const LatticeSpec l = LatticeSpec::finite(2, 1);
    const StepResult r = step(WalkState::initial(l, right_chirality()), hadamard(), l);
    CHECK(r.absorbed_at_0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.absorbed_at_n == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.state.norm() < 1e-15);
  }

  TEST_CASE("an empty state stays empty") {
    const LatticeSpec l = LatticeSpec::finite(5, 2);
    WalkState s = WalkState::initial(l, right_chirality());
    for (auto& v : s.sites) v = {0.0, 0.0};
    const StepResult r = step(s, hadamard(), l);
    CHECK(r.absorbed_at_0 == 0.0);
    CHECK(r.absorbed_at_n == 0.0);
    CHECK(r.state.norm() == 0.0);
  }

  TEST_CASE("one step cannot reach a boundary two sites away") {
    const LatticeSpec l = LatticeSpec::finite(4, 2);
    const StepResult r = step(WalkState::initial(l, QubitState(1.0, 0.0)), hadamard(), l);
    CHECK(r.absorbed_at_0 == 0.0);
    CHECK(r.absorbed_at_n == 0.0);
    CHECK(std::norm(r.state.sites[1][0]) + std::norm(r.state.sites[3][1]) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("golden absorption values") {
    const HittingDistribution h2 =
        run_absorption(LatticeSpec::finite(2, 1), hadamard(), right_chirality(), 10);
    CHECK(std::abs(h2.cumulative_at_0 - 0.5) < 1e-15);
    const HittingDistribution h3 =
        run_absorption(LatticeSpec::finite(3, 1), hadamard(), right_chirality(), 200);
    CHECK(std::abs(h3.cumulative_at_0 - 2.0 / 3.0) < 1e-9);
  }

  TEST_CASE("starting on a boundary is absorbed at time zero") {
    const HittingDistribution h0 =
        run_absorption(LatticeSpec::finite(5, 0), hadamard(), right_chirality(), 10);
    CHECK(h0.per_time_at_0[0] == 1.0);
    CHECK(h0.cumulative_at_0 == 1.0);
    const HittingDistribution hn =
        run_absorption(LatticeSpec::finite(5, 5), hadamard(), right_chirality(), 10);
    CHECK(hn.cumulative_at_0 == 0.0);
    CHECK(hn.cumulative_at_n == 1.0);
    CHECK_THROWS_AS(run_absorption(LatticeSpec::finite(5, 1), hadamard(), right_chirality(), 0),
                    std::invalid_argument);
  }

  TEST_CASE("mass balance and norm conservation for random coins and qubits") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 2);
    for (int trial = 0; trial < 10; ++trial) {
      const Coin u = qwabs::testing::random_coin(rng);
      const QubitState phi = qwabs::testing::random_qubit(rng);
      for (const LatticeSpec& l : {LatticeSpec::finite(7, 3), LatticeSpec::semi_infinite(2)}) {
        WalkState s = WalkState::initial(l, phi);
        double absorbed = 0.0;
        for (int n = 0; n < 60; ++n) {
          const StepResult r = step(s, u, l);
          absorbed += r.absorbed_at_0 + r.absorbed_at_n;
          s = r.state;
          CHECK(std::abs(s.norm() + absorbed - 1.0) < 1e-12);
        }
        const HittingDistribution h = run_absorption(l, u, phi, 60);
        CHECK(std::abs(h.cumulative_at_0 + h.cumulative_at_n + h.survival - 1.0) < 1e-10);
        CHECK(std::abs(h.cumulative_at_0 + h.cumulative_at_n - absorbed) < 1e-12);
        for (double x : h.per_time_at_0) CHECK(x >= -1e-14);
        CHECK(h.per_time_at_n.empty() == !l.is_finite());
      }
    }
  }

  TEST_CASE("run_absorption agrees with stepping") {
    const LatticeSpec l = LatticeSpec::finite(6, 2);
    const QubitState phi = QubitState::normalized({1.0, 0.5}, {-0.3, 1.0});
    const HittingDistribution h = run_absorption(l, hadamard(), phi, 40);
    WalkState s = WalkState::initial(l, phi);
    for (int n = 1; n <= 40; ++n) {
      const StepResult r = step(s, hadamard(), l);
      CHECK(std::abs(r.absorbed_at_0 - h.per_time_at_0[n]) < 1e-14);
      CHECK(std::abs(r.absorbed_at_n - h.per_time_at_n[n]) < 1e-14);
      s = r.state;
    }
  }

  TEST_CASE("path enumeration examples") {
    const Coin h = hadamard();
    const PqrsMatrix one = enumerate_paths_xi(LatticeSpec::semi_infinite(1), 1, h);
    CHECK(max_abs_diff(one, PqrsMatrix{1.0, 0.0, 0.0, 0.0}) < 1e-15);
    // Two paths of length 5 on {0, 1, ...} cancel for Hadamard.
    CHECK(max_abs_diff(enumerate_paths_xi(LatticeSpec::semi_infinite(1), 5, h), PqrsMatrix{}) < 1e-15);
    // With the right wall at 3 only P^2 Q P Q survives, giving ab^2c R.
    CHECK(max_abs_diff(enumerate_paths_xi(LatticeSpec::finite(3, 1), 5, h),
                       PqrsMatrix{0.0, 0.0, 0.25, 0.0}) < 1e-15);
    CHECK(max_abs_diff(enumerate_paths_xi(LatticeSpec::finite(5, 1), 4, h), PqrsMatrix{}) == 0.0);
    CHECK_THROWS_AS(enumerate_paths_xi(LatticeSpec::semi_infinite(1), kMaxEnumerationLength + 1, h),
                    RefusalError);
  }
}
