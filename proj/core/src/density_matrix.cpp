#include "qss/density_matrix.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qss {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
  }
}

DensityMatrix DensityMatrix::pure(const PureState& state) {
  const auto d = static_cast<Eigen::Index>(state.dim());
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = state.amplitude(static_cast<std::uint64_t>(i));
  return DensityMatrix(v * v.adjoint());
}

bool DensityMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double tol) const {
  if (!is_hermitian(tol)) throw std::runtime_error("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > tol) throw std::runtime_error("density matrix trace is not 1");
  if (min_eigenvalue() < -tol) throw std::runtime_error("density matrix is not PSD");
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> kept(n + 1, false);
  for (int q : keep) {
    if (q < 1 || q > n) throw std::invalid_argument("partial_trace: qubit out of range");
    if (kept[q]) throw std::invalid_argument("partial_trace: duplicate qubit");
    kept[q] = true;
  }

  const int k = static_cast<int>(keep.size());
  const int t = n - k;
  std::vector<int> traced;
  traced.reserve(t);
  for (int q = 1; q <= n; ++q) {
    if (!kept[q]) traced.push_back(q);
  }

  // Full index for (kept bits a, traced bits e). Kept bits follow the caller's
  // order, so the reduced matrix rows match the keep list left to right.
  const std::uint64_t dim_k = 1ull << k;
  const std::uint64_t dim_t = 1ull << t;
  std::vector<std::uint64_t> kept_part(dim_k, 0);
  for (std::uint64_t a = 0; a < dim_k; ++a) {
    for (int i = 0; i < k; ++i) {
      if ((a >> (k - 1 - i)) & 1u) kept_part[a] |= 1ull << (n - keep[i]);
    }
  }
  std::vector<std::uint64_t> traced_part(dim_t, 0);
  for (std::uint64_t e = 0; e < dim_t; ++e) {
    for (int i = 0; i < t; ++i) {
      if ((e >> (t - 1 - i)) & 1u) traced_part[e] |= 1ull << (n - traced[i]);
    }
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_k),
                                                static_cast<Eigen::Index>(dim_k));
  for (std::uint64_t a = 0; a < dim_k; ++a) {
    for (std::uint64_t b = 0; b < dim_k; ++b) {
      Amplitude sum{0.0, 0.0};
      for (std::uint64_t e = 0; e < dim_t; ++e) {
        sum += state.amplitude(kept_part[a] | traced_part[e]) *
               std::conj(state.amplitude(kept_part[b] | traced_part[e]));
      }
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  return DensityMatrix(std::move(rho));
}

}  // namespace qss
