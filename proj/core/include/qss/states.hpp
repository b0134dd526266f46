#pragma once

#include "qss/pauli.hpp"
#include "qss/scheme.hpp"
#include "qss/state.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qss::states {

std::uint64_t binomial(int n, int k);

// All weight-m bitstrings of length n in ascending (lexicographic) order.
std::vector<std::uint64_t> weight_indices(int n, int m);

// (|0 i2..in> + (-1)^{i1} |1 ~i2..~in>)/sqrt(2) where ~ negates a bit.
PureState ghz_canonical(const std::vector<int>& bits);

struct GhzPairSpec {
  int n = 0;
  int r = 0;  // 0 <= r <= n/2
  void validate() const;
};

// first:  (|0^n> + |1^n>)/sqrt(2)
// second: (|1^r 0^{n-r}> - |0^r 1^{n-r}>)/sqrt(2)
std::pair<PureState, PureState> ghz_pair(const GhzPairSpec& spec);

// Uniform superposition of all weight-m basis states.
PureState dicke(int n, int m);

// Weight-m state with coeffs[j] on the j-th weight-m bitstring in
// lexicographic order. coeffs must have length C(n,m) and unit norm.
PureState generalized_dicke(int n, int m, const std::vector<Amplitude>& coeffs);

struct DickePairSpec {
  int n = 0;
  int m = 0;  // 1 <= m < n
  int r = 0;  // 0 <= r <= n-2, 0 < m+r < n
  // Empty lists mean uniform constants. For r = 0 the lists must be
  // orthogonal, so at least one must be given explicitly.
  std::vector<Amplitude> coeffs_a;
  std::vector<Amplitude> coeffs_b;
  void validate() const;
};

std::pair<PureState, PureState> dicke_pair(const DickePairSpec& spec);

// Unit vector of the given length that is orthogonal to the uniform vector
// and has no zero entries: (1, .., 1, -(count-1)) normalized.
std::vector<Amplitude> uniform_orthogonal_coeffs(std::size_t count);

// Binary n-tuple naming a check observable: weight 0 is O(0) = all sigma_x,
// weight 2 with ones at i < j is O(ij) = sigma_y at i and j, sigma_x elsewhere.
struct StabilizerVector {
  std::vector<int> bits;

  static StabilizerVector o0(int n);
  static StabilizerVector oij(int n, int i, int j);

  void validate() const;
  int size() const { return static_cast<int>(bits.size()); }
  int weight() const;
  PauliString to_pauli_string() const;
  std::string label() const;

  bool operator==(const StabilizerVector&) const = default;
};

// O(0) first, then O(ij) for i < j in ascending order; 1 + C(n,2) entries.
std::vector<std::pair<StabilizerVector, PauliString>> ghz_stabilizer_family(int n);

// A check measurement setting: a stabilizer vector for the GHZ schemes, a
// single shared axis for the kn scheme.
using CheckSetting = std::variant<StabilizerVector, PauliAxis>;

std::string setting_label(const CheckSetting& setting);

// The eigenvalue the outcome product must reproduce on an honest run.
// Throws when the setting has no definite eigenvalue on that member.
int expected_eigenvalue(const SchemeVariant& variant, const CheckSetting& setting,
                        PairMember member);

// The orthogonal pair dealt by a scheme, on variant.num_qubits() qubits.
std::pair<PureState, PureState> scheme_pair(const SchemeVariant& variant);

}  // namespace qss::states
