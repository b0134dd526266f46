#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "qss/locc.hpp"

#include <bit>
#include <cmath>

using namespace qss;
using namespace qss::locc;
using doctest::Approx;

namespace {

states::DickePairSpec dicke_spec(int n, int m, int r) {
  states::DickePairSpec spec;
  spec.n = n;
  spec.m = m;
  spec.r = r;
  if (r == 0) spec.coeffs_b = states::uniform_orthogonal_coeffs(states::binomial(n, m));
  return spec;
}

std::vector<int> subset_from_mask(std::uint64_t mask, int n) {
  std::vector<int> indices;
  for (int q = 1; q <= n; ++q) {
    if (mask & (1ull << (q - 1))) indices.push_back(q);
  }
  return indices;
}

// Hamming weight restricted to the subset's positions, for basis index b.
int ones_on_subset(std::uint64_t b, int n, const std::vector<int>& subset) {
  int count = 0;
  for (int q : subset) count += PureState::bit(b, n, q);
  return count;
}

}  // namespace

TEST_CASE("party subset validation") {
  CHECK_NOTHROW(PartySubset{{2, 1, 4}}.validate(4));
  CHECK_THROWS_AS(PartySubset{{}}.validate(4), std::invalid_argument);
  CHECK_THROWS_AS(PartySubset{{0}}.validate(4), std::invalid_argument);
  CHECK_THROWS_AS(PartySubset{{5}}.validate(4), std::invalid_argument);
  const PartySubset repeated{{2, 2}};
  CHECK_THROWS_AS(repeated.validate(4), std::invalid_argument);
}

TEST_CASE("support_orthogonal on projectors") {
  const DensityMatrix zero = DensityMatrix::pure(PureState::from_bits("0"));
  const DensityMatrix one = DensityMatrix::pure(PureState::from_bits("1"));
  CHECK(support_orthogonal(zero, one));
  CHECK(!support_orthogonal(zero, zero));

  Rng rng(3);
  const DensityMatrix rho = partial_trace(oracles::random_state(3, rng), {1, 2});
  CHECK(!support_orthogonal(rho, rho));
  CHECK_THROWS_AS(support_orthogonal(zero, partial_trace(oracles::random_state(2, rng), {1, 2})),
                  std::invalid_argument);
}

TEST_CASE("dicke pair reductions onto any 3 of 4 qubits have orthogonal supports") {
  const auto [first, second] = states::dicke_pair(dicke_spec(4, 1, 2));
  for (std::uint64_t mask = 1; mask < 16; ++mask) {
    if (std::popcount(mask) != 3) continue;
    const auto subset = subset_from_mask(mask, 4);
    CHECK(support_orthogonal(partial_trace(first, subset), partial_trace(second, subset)));
  }
}

TEST_CASE("oracle verdicts for distance-0 ghz pairs") {
  const auto [first, second] = states::ghz_pair(states::GhzPairSpec{3, 0});

  const auto partial = oracle_distinguishable(first, second, PartySubset{{1, 2}});
  CHECK(!partial.distinguishable);
  CHECK(partial.witness == "reduced states identical");

  const auto full = oracle_distinguishable(first, second, PartySubset{{1, 2, 3}});
  CHECK(full.distinguishable);
  CHECK(full.witness == "supports orthogonal");
}

TEST_CASE("oracle verdicts for distance-r ghz pairs") {
  const auto [first, second] = states::ghz_pair(states::GhzPairSpec{3, 1});
  CHECK(oracle_distinguishable(first, second, PartySubset{{1, 2}}).distinguishable);
  CHECK(!oracle_distinguishable(first, second, PartySubset{{2, 3}}).distinguishable);
}

TEST_CASE("supports can overlap without the reductions being identical") {
  const auto [first, second] = states::dicke_pair(dicke_spec(4, 1, 2));
  const auto verdict = oracle_distinguishable(first, second, PartySubset{{1, 2}});
  CHECK(!verdict.distinguishable);
  CHECK(verdict.witness == "supports overlap");
}

TEST_CASE("minimal coalition sizes reproduce the threshold theorems") {
  const auto [g40_a, g40_b] = states::ghz_pair(states::GhzPairSpec{4, 0});
  CHECK(minimal_coalition_size(g40_a, g40_b) == 4);

  const auto [g41_a, g41_b] = states::ghz_pair(states::GhzPairSpec{4, 1});
  CHECK(minimal_coalition_size(g41_a, g41_b) == 2);

  const auto [d412_a, d412_b] = states::dicke_pair(dicke_spec(4, 1, 2));
  CHECK(minimal_coalition_size(d412_a, d412_b) == 3);

  const auto [d511_a, d511_b] = states::dicke_pair(dicke_spec(5, 1, 1));
  CHECK(minimal_coalition_size(d511_a, d511_b) == 5);
}

TEST_CASE("minimal_coalition_size rejects oversized systems") {
  Rng rng(1);
  const PureState a = PureState::basis_state(13, 0);
  const PureState b = PureState::basis_state(13, 1);
  CHECK_THROWS_AS(minimal_coalition_size(a, b), std::invalid_argument);
}

TEST_CASE("two-party ghz discrimination is always correct") {
  Rng rng(101);
  for (int n = 3; n <= 6; ++n) {
    for (int r = 1; 2 * r <= n; ++r) {
      const states::GhzPairSpec spec{n, r};
      const auto [first, second] = states::ghz_pair(spec);
      for (int trial = 0; trial < 200; ++trial) {
        const int i = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(r)));
        const int j =
            r + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - r)));
        CHECK(distinguish_ghz_two_party(first, spec, i, j, rng) == PairMember::first);
        CHECK(distinguish_ghz_two_party(second, spec, i, j, rng) == PairMember::second);
      }
    }
  }
}

TEST_CASE("two-party ghz discrimination validates indices") {
  Rng rng(1);
  const states::GhzPairSpec spec{4, 1};
  const auto [first, second] = states::ghz_pair(spec);
  CHECK_THROWS_AS(distinguish_ghz_two_party(first, spec, 2, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(distinguish_ghz_two_party(first, spec, 1, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(distinguish_ghz_two_party(first, states::GhzPairSpec{4, 0}, 1, 2, rng),
                  std::invalid_argument);
}

TEST_CASE("counting separation holds for every support string") {
  // Every weight-m basis string has at most m ones on any n-r+1 positions,
  // and every weight-(m+r) string at least m+1. Checked exhaustively.
  for (int n = 3; n <= 6; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int r = 1; m + r < n; ++r) {
        const int subset_size = n - r + 1;
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
          if (std::popcount(mask) != subset_size) continue;
          const auto subset = subset_from_mask(mask, n);
          for (std::uint64_t b : states::weight_indices(n, m)) {
            CHECK(ones_on_subset(b, n, subset) <= m);
          }
          for (std::uint64_t b : states::weight_indices(n, m + r)) {
            CHECK(ones_on_subset(b, n, subset) >= m + 1);
          }
        }
      }
    }
  }
}

TEST_CASE("dicke counting discrimination worked example") {
  Rng rng(7);
  const auto spec = dicke_spec(4, 1, 2);
  const auto [first, second] = states::dicke_pair(spec);
  const PartySubset subset{{1, 2, 3}};
  for (int trial = 0; trial < 1000; ++trial) {
    CHECK(distinguish_dicke_counting(first, spec, subset, rng) == PairMember::first);
    CHECK(distinguish_dicke_counting(second, spec, subset, rng) == PairMember::second);
  }
}

TEST_CASE("dicke counting works on every valid subset") {
  Rng rng(19);
  for (int n = 3; n <= 6; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int r = 1; m + r < n; ++r) {
        const auto spec = dicke_spec(n, m, r);
        const auto [first, second] = states::dicke_pair(spec);
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
          if (std::popcount(mask) != n - r + 1) continue;
          const PartySubset subset{subset_from_mask(mask, n)};
          CHECK(distinguish_dicke_counting(first, spec, subset, rng) == PairMember::first);
          CHECK(distinguish_dicke_counting(second, spec, subset, rng) == PairMember::second);
        }
      }
    }
  }
}

TEST_CASE("dicke counting validates subset size and distance") {
  Rng rng(1);
  const auto spec = dicke_spec(4, 1, 2);
  const auto [first, second] = states::dicke_pair(spec);
  CHECK_THROWS_AS(distinguish_dicke_counting(first, spec, PartySubset{{1, 2}}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(distinguish_dicke_counting(first, dicke_spec(3, 1, 0), PartySubset{{1, 2, 3}},
                                             rng),
                  std::invalid_argument);
}

TEST_CASE("global discrimination is exact on members") {
  Rng rng(11);
  const auto [first, second] = states::ghz_pair(states::GhzPairSpec{5, 0});
  for (int trial = 0; trial < 100; ++trial) {
    CHECK(distinguish_global(first, second, first, rng) == PairMember::first);
    CHECK(distinguish_global(first, second, second, rng) == PairMember::second);
  }

  const auto [d_first, d_second] = states::dicke_pair(dicke_spec(3, 1, 0));
  CHECK(distinguish_global(d_first, d_second, d_first, rng) == PairMember::first);
  CHECK(distinguish_global(d_first, d_second, d_second, rng) == PairMember::second);

  CHECK_THROWS_AS(distinguish_global(first, first, first, rng), std::invalid_argument);
}

TEST_CASE("oracle monotonicity under coalition growth") {
  Rng rng(23);
  const std::vector<std::pair<PureState, PureState>> pairs{
      states::ghz_pair(states::GhzPairSpec{5, 2}),
      states::dicke_pair(dicke_spec(5, 1, 2)),
      states::dicke_pair(dicke_spec(6, 2, 2)),
  };
  for (const auto& [first, second] : pairs) {
    const int n = first.num_qubits();
    for (int rep = 0; rep < 40; ++rep) {
      const std::uint64_t mask = 1 + rng.next_below((1ull << n) - 1);
      const auto base = subset_from_mask(mask, n);
      if (!oracle_distinguishable(first, second, PartySubset{base}).distinguishable) continue;
      std::uint64_t grown = mask | (1ull << rng.next_below(static_cast<std::uint64_t>(n)));
      const auto super = subset_from_mask(grown, n);
      CHECK(oracle_distinguishable(first, second, PartySubset{super}).distinguishable);
    }
  }
}

TEST_CASE("dicke verdicts depend only on coalition size") {
  for (int n = 3; n <= 6; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int r = 1; m + r < n; ++r) {
        const auto [first, second] = states::dicke_pair(dicke_spec(n, m, r));
        for (int size = 1; size <= n; ++size) {
          int seen = -1;
          for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
            if (std::popcount(mask) != size) continue;
            const auto subset = subset_from_mask(mask, n);
            const int verdict =
                oracle_distinguishable(first, second, PartySubset{subset}).distinguishable ? 1
                                                                                           : 0;
            if (seen == -1) seen = verdict;
            CHECK(verdict == seen);
          }
        }
      }
    }
  }
}

TEST_CASE("distance-0 ghz reductions are identical on every proper subset") {
  for (int n = 2; n <= 6; ++n) {
    const auto [first, second] = states::ghz_pair(states::GhzPairSpec{n, 0});
    for (std::uint64_t mask = 1; mask < (1ull << n) - 1; ++mask) {
      const auto subset = subset_from_mask(mask, n);
      const auto rho0 = partial_trace(first, subset);
      const auto rho1 = partial_trace(second, subset);
      CHECK(rho0.max_abs_diff(rho1) <= 1e-9);
    }
  }
}

TEST_CASE("subsets of size n-r are never enough for dicke pairs") {
  for (int n = 3; n <= 6; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int r = 1; m + r < n; ++r) {
        const auto [first, second] = states::dicke_pair(dicke_spec(n, m, r));
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
          if (std::popcount(mask) != n - r) continue;
          const PartySubset subset{subset_from_mask(mask, n)};
          CHECK(!oracle_distinguishable(first, second, subset).distinguishable);
        }
      }
    }
  }
}

TEST_CASE("verify_threshold_theorems sweeps clean") {
  const ThresholdReport report = verify_threshold_theorems(5);
  CHECK(report.all_ok());
  CHECK(report.violations.empty());
  CHECK(!report.checks.empty());

  for (const ThresholdCheck& check : report.checks) {
    CHECK(check.ok);
    if (check.family == "ghz" && check.r == 0) CHECK(check.expected == check.n);
    if (check.family == "ghz" && check.r > 0) CHECK(check.expected == 2);
    if (check.family == "dicke" && check.r > 0) CHECK(check.expected == check.n - check.r + 1);
    if (check.family == "dicke" && check.r == 0) CHECK(check.expected == check.n);
  }

  CHECK_THROWS_AS(verify_threshold_theorems(9), std::invalid_argument);
  CHECK_THROWS_AS(verify_threshold_theorems(1), std::invalid_argument);
}
