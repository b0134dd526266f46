#pragma once

#include "qss/density_matrix.hpp"
#include "qss/random.hpp"
#include "qss/scheme.hpp"
#include "qss/state.hpp"
#include "qss/states.hpp"

#include <string>
#include <vector>

namespace qss::locc {

struct PartySubset {
  std::vector<int> indices;
  void validate(int num_parties) const;
  int size() const { return static_cast<int>(indices.size()); }
};

struct DistinguishVerdict {
  bool distinguishable = false;
  std::string witness;
};

// True iff rho0 * rho1 vanishes entry-wise (orthogonal supports). This is
// the criterion for one-shot perfect discrimination by whoever holds the
// reduced system.
bool support_orthogonal(const DensityMatrix& rho0, const DensityMatrix& rho1,
                        double tol = kTol);

// Ground truth for "coalition `subset` can perfectly tell first from second".
DistinguishVerdict oracle_distinguishable(const PureState& first, const PureState& second,
                                          const PartySubset& subset, double tol = kTol);

// Smallest coalition size that distinguishes the pair, by exhaustive subset
// sweep. Capped at 12 qubits.
int minimal_coalition_size(const PureState& first, const PureState& second, double tol = kTol);

// Two parties straddling the (r, n-r) split Z-measure their qubits; equal
// outcomes identify the first pair member. Requires r >= 1 and i <= r < j.
PairMember distinguish_ghz_two_party(const PureState& state, const states::GhzPairSpec& spec,
                                     int i, int j, Rng& rng);

// n-r+1 parties Z-measure their qubits and count 1-outcomes. The weight-m
// member leaves at most m ones on any n-r+1 qubits; the weight-(m+r) member
// at least m+1. Count <= m identifies the first member.
PairMember distinguish_dicke_counting(const PureState& state, const states::DickePairSpec& spec,
                                      const PartySubset& subset, Rng& rng);

// Global two-outcome measurement {|first><first|, 1 - |first><first|}.
PairMember distinguish_global(const PureState& first, const PureState& second,
                              const PureState& state, Rng& rng);

struct ThresholdCheck {
  std::string family;  // "ghz" | "dicke" | "ghz-blocks"
  int n = 0;
  int r = 0;
  int m = 0;         // 0 when not applicable
  int observed = 0;  // minimal coalition size; mismatch count for ghz-blocks
  int expected = 0;
  bool ok = false;
};

struct ThresholdReport {
  std::vector<ThresholdCheck> checks;
  std::vector<std::string> violations;
  bool all_ok() const { return violations.empty(); }
};

// Sweeps every scheme family up to n_max (<= 8) and checks the minimal
// coalition sizes against the threshold theorems:
//   distance-0 GHZ and Dicke pairs need all n parties;
//   distance-r Dicke pairs need exactly n-r+1;
//   distance-r GHZ pairs are distinguishable by a subset iff it meets both
//   blocks of the (r, n-r) split.
ThresholdReport verify_threshold_theorems(int n_max, double tol = kTol);

}  // namespace qss::locc
