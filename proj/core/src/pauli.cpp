#include "qss/pauli.hpp"

#include <stdexcept>

namespace qss {

char axis_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  throw std::logic_error("axis_char: bad axis");
}

PauliAxis axis_from_char(char c) {
  switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default: throw std::invalid_argument(std::string("not a Pauli axis: ") + c);
  }
}

PauliString PauliString::from_str(std::string_view s) {
  std::vector<PauliAxis> axes;
  axes.reserve(s.size());
  for (char c : s) axes.push_back(axis_from_char(c));
  return PauliString(std::move(axes));
}

PauliString PauliString::identity(int num_qubits) {
  return PauliString(std::vector<PauliAxis>(num_qubits, PauliAxis::I));
}

PauliString PauliString::single(int num_qubits, int qubit, PauliAxis axis) {
  if (qubit < 1 || qubit > num_qubits) {
    throw std::invalid_argument("PauliString::single: qubit out of range");
  }
  std::vector<PauliAxis> axes(num_qubits, PauliAxis::I);
  axes[qubit - 1] = axis;
  return PauliString(std::move(axes));
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(axes_.size());
  for (PauliAxis a : axes_) s.push_back(axis_char(a));
  return s;
}

}  // namespace qss
