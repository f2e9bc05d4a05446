#include <doctest.h>

#include "qwabs/evolution.hpp"
#include "qwabs/hitting.hpp"
#include "test_support.hpp"

using namespace qwabs;
using qwabs::testing::right_chirality;

TEST_SUITE("hitting") {
  TEST_CASE("boundary rows") {
    const Coin h = hadamard();
    const XiTable t = build_xi_table(LatticeSpec::finite(6, 1), h, 30);
    CHECK(t.sites() == 7);
    CHECK(t.entry(0, 0) == PqrsMatrix::identity(h));
    CHECK(t.entry(6, 0) == PqrsMatrix{});
    for (long n = 1; n <= 30; ++n) {
      CHECK(t.entry(0, n) == PqrsMatrix{});
      CHECK(t.entry(6, n) == PqrsMatrix{});
    }
    CHECK_THROWS_AS(t.entry(7, 0), std::out_of_range);
    CHECK_THROWS_AS(t.entry(1, 31), std::out_of_range);
    CHECK_THROWS_AS(t.entry(-1, 0), std::out_of_range);
  }

  TEST_CASE("p_1 is 1 at n = 1 and 0 afterwards") {
    const XiTable t = build_xi_table(LatticeSpec::finite(6, 1), hadamard(), 40);
    CHECK(std::abs(t.entry(1, 1).p - 1.0) < 1e-15);
    for (long n = 2; n <= 40; ++n) CHECK(std::abs(t.entry(1, n).p) < 1e-15);
  }

  TEST_CASE("r_1(3) = 1/2 on the half line") {
    const XiTable t = build_xi_table(LatticeSpec::semi_infinite(1), hadamard(), 10);
    CHECK(std::abs(t.entry(1, 3).r - 0.5) < 1e-15);
    CHECK(std::abs(t.entry(1, 5).r) < 1e-15);
    CHECK(std::abs(t.entry(1, 7).r + 0.125) < 1e-15);
  }

  TEST_CASE("entries vanish before the walker can arrive") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 3);
    const Coin u = qwabs::testing::random_coin(rng);
    const XiTable t = build_xi_table(LatticeSpec::finite(8, 1), u, 20);
    for (int k = 1; k < 8; ++k)
      for (long n = 0; n < k; ++n) CHECK(t.entry(k, n) == PqrsMatrix{});
  }

  TEST_CASE("q and s vanish on interior sites for random coins") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 4);
    for (int trial = 0; trial < 10; ++trial) {
      const Coin u = qwabs::testing::random_coin(rng);
      for (const LatticeSpec& l : {LatticeSpec::finite(9, 4), LatticeSpec::semi_infinite(3)}) {
        const XiTable t = build_xi_table(l, u, 60);
        const int last = l.is_finite() ? l.right() - 1 : t.sites() - 1;
        for (int k = 1; k <= last; ++k)
          for (long n = 1; n <= 60; ++n) {
            CHECK(std::abs(t.entry(k, n).q) < 1e-14);
            CHECK(std::abs(t.entry(k, n).s) < 1e-14);
          }
      }
    }
  }

  TEST_CASE("recurrence agrees with path enumeration") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 5);
    for (const Coin& u : {hadamard(), qwabs::testing::random_coin(rng), qwabs::testing::random_coin(rng)})
      for (int n_right : {2, 3, 4, 6}) {
        const LatticeSpec l = LatticeSpec::finite(n_right, 1);
        const XiTable t = build_xi_table(l, u, 12);
        for (int k = 1; k < n_right; ++k)
          for (int n = 0; n <= 12; ++n) {
            const PqrsMatrix oracle = enumerate_paths_xi(LatticeSpec::finite(n_right, k), n, u);
            CHECK(max_abs_diff(t.entry(k, n), oracle) < 1e-12);
          }
      }
  }

  TEST_CASE("per-time probabilities match the evolution") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 6);
    const Coin u = qwabs::testing::random_coin(rng);
    const QubitState phi = qwabs::testing::random_qubit(rng);
    for (const LatticeSpec& l : {LatticeSpec::finite(5, 2), LatticeSpec::semi_infinite(2)}) {
      const XiTable t = build_xi_table(l, u, 50);
      const HittingDistribution h = run_absorption(l, u, phi, 50);
      for (long n = 0; n <= 50; ++n)
        CHECK(std::abs(hitting_prob_at_time(t, l.start(), n, phi) - h.per_time_at_0[n]) < 1e-13);
    }
  }

  TEST_CASE("four-term form equals the norm of Xi phi") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 7);
    for (int trial = 0; trial < 20; ++trial) {
      const Coin u = qwabs::testing::random_coin(rng);
      const QubitState phi = qwabs::testing::random_qubit(rng);
      const PqrsMatrix xi{qwabs::testing::random_in_disc(rng, 1.0), 0.0,
                          qwabs::testing::random_in_disc(rng, 1.0), 0.0};
      CHECK(std::abs(hitting_prob(xi, u, phi) - norm2(pqrs_apply(xi, phi, u))) < 1e-14);
    }
  }

  TEST_CASE("small-time examples") {
    const XiTable t = build_xi_table(LatticeSpec::finite(4, 1), hadamard(), 5);
    CHECK(std::abs(hitting_prob_at_time(t, 1, 1, right_chirality()) - 0.5) < 1e-15);
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 8);
    CHECK(hitting_prob_at_time(t, 2, 1, qwabs::testing::random_qubit(rng)) == 0.0);
  }

  TEST_CASE("golden sums") {
    const Coin h = hadamard();
    CHECK(std::abs(absorption_prob(LatticeSpec::finite(3, 1), h, right_chirality(), 200).probability -
                   2.0 / 3.0) < 1e-9);
    const AbsorptionResult r4 = absorption_prob(LatticeSpec::finite(4, 1), h, right_chirality(), 300);
    CHECK(std::abs(r4.probability - 0.7) < 1e-9);
    CHECK(r4.survival < 1e-9);
    CHECK(std::abs(absorption_prob(LatticeSpec::finite(5, 1), h, right_chirality(), 300).probability -
                   12.0 / 17.0) < 1e-9);
    CHECK(absorption_prob(LatticeSpec::finite(5, 0), h, right_chirality(), 3).probability == 1.0);
  }

  TEST_CASE("survival matches the evolution") {
    std::mt19937_64 rng(qwabs::testing::kTestSeed + 9);
    const Coin u = qwabs::testing::random_coin(rng);
    const QubitState phi = qwabs::testing::random_qubit(rng);
    for (long horizon : {7L, 40L}) {
      const LatticeSpec l = LatticeSpec::finite(6, 2);
      const AbsorptionResult a = absorption_prob(l, u, phi, horizon);
      const HittingDistribution h = run_absorption(l, u, phi, horizon);
      CHECK(std::abs(a.probability - h.cumulative_at_0) < 1e-13);
      CHECK(std::abs(a.survival - h.survival) < 1e-12);
    }
  }
}
