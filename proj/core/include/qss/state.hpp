#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qss/pauli.hpp"
#include "qss/random.hpp"

namespace qss {

// Dense representation caps out here; everything in this project needs far
// fewer qubits, and density keeps indexing trivial.
inline constexpr int kMaxQubits = 16;

// Dense n-qubit pure state. Qubit 1 is the most significant bit of the basis
// index, matching left-to-right ket order: |b1 b2 ... bn>. Immutable after
// construction; all operations below are pure functions.
class PureState {
 public:
  // Takes ownership of the amplitude vector. Throws if the length is not
  // 2^num_qubits or the state is not normalized within kTol.
  PureState(int num_qubits, std::vector<Amplitude> amplitudes);

  static PureState basis_state(int num_qubits, std::uint64_t index);
  // Basis state from a ket label, e.g. "010" -> |010>.
  static PureState from_bits(std::string_view bits);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return amplitudes_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
  Amplitude amplitude(std::uint64_t index) const { return amplitudes_.at(index); }

  // Bit of basis index `index` at 1-based qubit position.
  static int bit(std::uint64_t index, int num_qubits, int qubit) {
    return static_cast<int>((index >> (num_qubits - qubit)) & 1u);
  }

 private:
  int num_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

// Basis index of a ket label such as "0110".
std::uint64_t index_of_bits(std::string_view bits);

// One recorded single-qubit measurement: which qubit, which basis, and the
// +-1 eigenvalue outcome.
struct MeasurementRecord {
  int qubit = 0;
  PauliAxis axis = PauliAxis::Z;
  int outcome = 0;
};

// Applies the Pauli string as an operator: returns O|psi>. Norm preserved.
PureState apply_pauli_string(const PureState& state, const PauliString& p);

// <a|b>, conjugate-linear in the first argument.
Amplitude inner_product(const PureState& a, const PureState& b);

// Re <psi|O|psi>.
double expectation(const PureState& state, const PauliString& p);

// +1 or -1 when ||O|psi> - lambda|psi>|| < tol for that lambda, otherwise
// nullopt (not an eigenstate).
std::optional<int> stabilizer_eigenvalue(const PureState& state, const PauliString& p,
                                         double tol = kTol);

// Born-rule measurement of one qubit in the X, Y or Z basis. Returns the +-1
// outcome and the normalized post-measurement state. Re-measuring the
// collapsed state on the same qubit and axis reproduces the outcome.
std::pair<int, PureState> measure_qubit(const PureState& state, int qubit, PauliAxis axis,
                                        Rng& rng);

// Relabels qubits: the qubit at position q moves to position perm[q-1].
// perm must be a bijection on {1..n}.
PureState permute_qubits(const PureState& state, const std::vector<int>& perm);

}  // namespace qss
