#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qss {

using Amplitude = std::complex<double>;

// Global tolerance for norm, Hermiticity and eigenvalue checks. All
// amplitudes handled here are exact +-1/sqrt(2^k)-scale values, far above
// double-precision noise.
inline constexpr double kTol = 1e-9;

enum class PauliAxis : std::uint8_t { I, X, Y, Z };

char axis_char(PauliAxis axis);
PauliAxis axis_from_char(char c);

// Per-qubit Pauli axis assignment, e.g. the stabilizer XYYX or a single-qubit
// check setting. Qubit indices are 1-based throughout.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {}

  // Parse from a string like "XYZI".
  static PauliString from_str(std::string_view s);
  static PauliString identity(int num_qubits);
  // The given axis on one qubit, identity elsewhere.
  static PauliString single(int num_qubits, int qubit, PauliAxis axis);

  int size() const { return static_cast<int>(axes_.size()); }
  PauliAxis axis(int qubit) const { return axes_.at(qubit - 1); }
  const std::vector<PauliAxis>& axes() const { return axes_; }

  std::string str() const;

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<PauliAxis> axes_;
};

}  // namespace qss
