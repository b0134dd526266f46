#include "qss/locc.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qss::locc {

namespace {

std::vector<int> subset_from_mask(std::uint64_t mask, int n) {
  std::vector<int> indices;
  for (int q = 1; q <= n; ++q) {
    if (mask & (1ull << (q - 1))) indices.push_back(q);
  }
  return indices;
}

void require_member_width(const PureState& state, int n, const char* what) {
  if (state.num_qubits() != n) {
    throw std::invalid_argument(std::string(what) + ": state width mismatch");
  }
}

}  // namespace

void PartySubset::validate(int num_parties) const {
  if (indices.empty()) throw std::invalid_argument("PartySubset: empty");
  std::vector<bool> seen(num_parties + 1, false);
  for (int q : indices) {
    if (q < 1 || q > num_parties) throw std::invalid_argument("PartySubset: index out of range");
    if (seen[q]) throw std::invalid_argument("PartySubset: duplicate index");
    seen[q] = true;
  }
}

bool support_orthogonal(const DensityMatrix& rho0, const DensityMatrix& rho1, double tol) {
  if (rho0.dim() != rho1.dim()) {
    throw std::invalid_argument("support_orthogonal: dimension mismatch");
  }
  return (rho0.matrix() * rho1.matrix()).cwiseAbs().maxCoeff() < tol;
}

DistinguishVerdict oracle_distinguishable(const PureState& first, const PureState& second,
                                          const PartySubset& subset, double tol) {
  if (first.num_qubits() != second.num_qubits()) {
    throw std::invalid_argument("oracle_distinguishable: state width mismatch");
  }
  subset.validate(first.num_qubits());

  const DensityMatrix rho0 = partial_trace(first, subset.indices);
  const DensityMatrix rho1 = partial_trace(second, subset.indices);
  if (support_orthogonal(rho0, rho1, tol)) {
    return {true, "supports orthogonal"};
  }
  if (rho0.max_abs_diff(rho1) <= tol) {
    return {false, "reduced states identical"};
  }
  return {false, "supports overlap"};
}

int minimal_coalition_size(const PureState& first, const PureState& second, double tol) {
  const int n = first.num_qubits();
  if (n > 12) throw std::invalid_argument("minimal_coalition_size: capped at 12 qubits");
  for (int size = 1; size <= n; ++size) {
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
      if (std::popcount(mask) != size) continue;
      PartySubset subset{subset_from_mask(mask, n)};
      if (oracle_distinguishable(first, second, subset, tol).distinguishable) return size;
    }
  }
  throw std::logic_error("minimal_coalition_size: pair not distinguishable even globally");
}

PairMember distinguish_ghz_two_party(const PureState& state, const states::GhzPairSpec& spec,
                                     int i, int j, Rng& rng) {
  spec.validate();
  if (spec.r < 1) throw std::invalid_argument("distinguish_ghz_two_party: needs r >= 1");
  if (i < 1 || i > spec.r || j <= spec.r || j > spec.n) {
    throw std::invalid_argument("distinguish_ghz_two_party: need i <= r < j");
  }
  require_member_width(state, spec.n, "distinguish_ghz_two_party");

  auto [oi, after_i] = measure_qubit(state, i, PauliAxis::Z, rng);
  auto [oj, ignored] = measure_qubit(after_i, j, PauliAxis::Z, rng);
  return oi == oj ? PairMember::first : PairMember::second;
}

PairMember distinguish_dicke_counting(const PureState& state, const states::DickePairSpec& spec,
                                      const PartySubset& subset, Rng& rng) {
  spec.validate();
  if (spec.r < 1) throw std::invalid_argument("distinguish_dicke_counting: needs r >= 1");
  subset.validate(spec.n);
  if (subset.size() != spec.n - spec.r + 1) {
    throw std::invalid_argument("distinguish_dicke_counting: subset size must be n-r+1");
  }
  require_member_width(state, spec.n, "distinguish_dicke_counting");

  int ones = 0;
  PureState current = state;
  for (int q : subset.indices) {
    auto [outcome, next] = measure_qubit(current, q, PauliAxis::Z, rng);
    if (outcome == -1) ++ones;
    current = std::move(next);
  }
  return ones <= spec.m ? PairMember::first : PairMember::second;
}

PairMember distinguish_global(const PureState& first, const PureState& second,
                              const PureState& state, Rng& rng) {
  if (std::abs(inner_product(first, second)) > kTol) {
    throw std::invalid_argument("distinguish_global: pair is not orthogonal");
  }
  require_member_width(state, first.num_qubits(), "distinguish_global");

  const double p_first = std::norm(inner_product(first, state));
  if (p_first > 1.0 - kTol) return PairMember::first;
  if (p_first < kTol) return PairMember::second;
  return rng.next_double() < p_first ? PairMember::first : PairMember::second;
}

ThresholdReport verify_threshold_theorems(int n_max, double tol) {
  if (n_max < 2 || n_max > 8) {
    throw std::invalid_argument("verify_threshold_theorems: need 2 <= n_max <= 8");
  }

  ThresholdReport report;
  auto record = [&report](ThresholdCheck check) {
    check.ok = check.observed == check.expected;
    if (!check.ok) {
      report.violations.push_back(check.family + " n=" + std::to_string(check.n) +
                                  " r=" + std::to_string(check.r) + " m=" +
                                  std::to_string(check.m) + ": got " +
                                  std::to_string(check.observed) + ", want " +
                                  std::to_string(check.expected));
    }
    report.checks.push_back(std::move(check));
  };

  for (int n = 2; n <= n_max; ++n) {
    for (int r = 0; 2 * r <= n; ++r) {
      auto [first, second] = states::ghz_pair(states::GhzPairSpec{n, r});
      if (r == 0) {
        record({"ghz", n, r, 0, minimal_coalition_size(first, second, tol), n});
        continue;
      }
      record({"ghz", n, r, 0, minimal_coalition_size(first, second, tol), 2});

      // Distance-r pairs: a coalition works iff it straddles the two blocks.
      int mismatches = 0;
      for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        PartySubset subset{subset_from_mask(mask, n)};
        const bool hits_head = (mask & ((1ull << r) - 1)) != 0;
        const bool hits_tail = (mask & ~((1ull << r) - 1)) != 0;
        const bool verdict =
            oracle_distinguishable(first, second, subset, tol).distinguishable;
        if (verdict != (hits_head && hits_tail)) ++mismatches;
      }
      record({"ghz-blocks", n, r, 0, mismatches, 0});
    }

    for (int m = 1; m < n; ++m) {
      for (int r = 0; m + r < n && r <= n - 2; ++r) {
        states::DickePairSpec spec;
        spec.n = n;
        spec.m = m;
        spec.r = r;
        if (r == 0) {
          spec.coeffs_b = states::uniform_orthogonal_coeffs(states::binomial(n, m));
        }
        auto [first, second] = states::dicke_pair(spec);
        const int expected = r == 0 ? n : n - r + 1;
        record({"dicke", n, r, m, minimal_coalition_size(first, second, tol), expected});
      }
    }
  }
  return report;
}

}  // namespace qss::locc
