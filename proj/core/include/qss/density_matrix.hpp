#pragma once

#include <Eigen/Dense>

#include "qss/state.hpp"

namespace qss {

// Reduced state of a party subset. Wraps a dense complex matrix; validity
// (Hermitian, unit trace, PSD) is checked on demand rather than on every
// construction since oracle sweeps build these in bulk.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd m);

  static DensityMatrix pure(const PureState& state);

  Eigen::Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Amplitude entry(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

  Amplitude trace() const { return m_.trace(); }
  bool is_hermitian(double tol = kTol) const;
  double min_eigenvalue() const;

  // Throws unless Hermitian within tol, trace 1 within tol, and eigenvalues
  // >= -tol.
  void validate(double tol = kTol) const;

  double max_abs_diff(const DensityMatrix& other) const;

 private:
  Eigen::MatrixXcd m_;
};

// Reduced density matrix on the kept qubits, rows/columns ordered by the
// given index order. keep must be non-empty, in range, duplicate-free.
DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep);

}  // namespace qss
