#include "qss/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qss {

namespace {

double norm_sq(const std::vector<Amplitude>& amps) {
  double s = 0.0;
  for (const Amplitude& a : amps) s += std::norm(a);
  return s;
}

void require_same_width(const PureState& state, const PauliString& p) {
  if (p.size() != state.num_qubits()) {
    throw std::invalid_argument("Pauli string length does not match qubit count");
  }
}

void require_same_width(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("states have different qubit counts");
  }
}

// +1/-1 eigenvectors (e0, e1) of a single-qubit measurement axis.
void axis_eigenvector(PauliAxis axis, int outcome, Amplitude& e0, Amplitude& e1) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (axis) {
    case PauliAxis::X:
      e0 = {s, 0.0};
      e1 = outcome > 0 ? Amplitude{s, 0.0} : Amplitude{-s, 0.0};
      return;
    case PauliAxis::Y:
      // Y = [[0,-i],[i,0]]; eigenvectors (|0> +- i|1>)/sqrt(2).
      e0 = {s, 0.0};
      e1 = outcome > 0 ? Amplitude{0.0, s} : Amplitude{0.0, -s};
      return;
    case PauliAxis::Z:
      e0 = outcome > 0 ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
      e1 = outcome > 0 ? Amplitude{0.0, 0.0} : Amplitude{1.0, 0.0};
      return;
    case PauliAxis::I:
      break;
  }
  throw std::logic_error("axis_eigenvector: bad axis");
}

// Projects onto the outcome eigenspace of one qubit and renormalizes. The
// branch probability must be nonzero; callers sample outcomes so a
// zero-probability request indicates a bug.
PureState collapse_qubit(const PureState& state, int qubit, PauliAxis axis, int outcome) {
  const int n = state.num_qubits();
  const std::uint64_t stride = 1ull << (n - qubit);
  Amplitude e0, e1;
  axis_eigenvector(axis, outcome, e0, e1);

  std::vector<Amplitude> out(state.dim(), Amplitude{0.0, 0.0});
  double prob = 0.0;
  for (std::uint64_t base = 0; base < state.dim(); ++base) {
    if (base & stride) continue;
    const Amplitude c =
        std::conj(e0) * state.amplitude(base) + std::conj(e1) * state.amplitude(base | stride);
    prob += std::norm(c);
    out[base] = c * e0;
    out[base | stride] = c * e1;
  }
  if (prob < kTol) {
    throw std::logic_error("collapse_qubit: zero-probability branch requested");
  }
  const double scale = 1.0 / std::sqrt(prob);
  for (Amplitude& a : out) a *= scale;
  return PureState(n, std::move(out));
}

}  // namespace

PureState::PureState(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("PureState: qubit count out of range");
  }
  if (amplitudes_.size() != (1ull << num_qubits_)) {
    throw std::invalid_argument("PureState: amplitude vector length is not 2^n");
  }
  const double s = norm_sq(amplitudes_);
  if (std::abs(s - 1.0) > kTol || !std::isfinite(s)) {
    throw std::invalid_argument("PureState: not normalized");
  }
}

PureState PureState::basis_state(int num_qubits, std::uint64_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("basis_state: qubit count out of range");
  }
  if (index >= (1ull << num_qubits)) {
    throw std::invalid_argument("basis_state: index out of range");
  }
  std::vector<Amplitude> amps(1ull << num_qubits, Amplitude{0.0, 0.0});
  amps[index] = {1.0, 0.0};
  return PureState(num_qubits, std::move(amps));
}

PureState PureState::from_bits(std::string_view bits) {
  return basis_state(static_cast<int>(bits.size()), index_of_bits(bits));
}

std::uint64_t index_of_bits(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("index_of_bits: not a bit string");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

PureState apply_pauli_string(const PureState& state, const PauliString& p) {
  require_same_width(state, p);
  const int n = state.num_qubits();

  std::uint64_t flip_mask = 0;  // X and Y flip the bit
  std::uint64_t sign_mask = 0;  // Y and Z negate on bit 1
  int y_count = 0;
  for (int q = 1; q <= n; ++q) {
    const std::uint64_t bitmask = 1ull << (n - q);
    switch (p.axis(q)) {
      case PauliAxis::I: break;
      case PauliAxis::X: flip_mask |= bitmask; break;
      case PauliAxis::Z: sign_mask |= bitmask; break;
      case PauliAxis::Y:
        flip_mask |= bitmask;
        sign_mask |= bitmask;
        ++y_count;
        break;
    }
  }
  // Per-amplitude phase is i^{#Y} * (-1)^{popcount(b & sign_mask)}.
  static constexpr Amplitude kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Amplitude y_factor = kIPowers[y_count & 3];

  std::vector<Amplitude> out(state.dim());
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const bool negate = std::popcount(b & sign_mask) & 1;
    out[b ^ flip_mask] = (negate ? -y_factor : y_factor) * state.amplitude(b);
  }
  return PureState(n, std::move(out));
}

Amplitude inner_product(const PureState& a, const PureState& b) {
  require_same_width(a, b);
  Amplitude sum{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    sum += std::conj(a.amplitude(i)) * b.amplitude(i);
  }
  return sum;
}

double expectation(const PureState& state, const PauliString& p) {
  return inner_product(state, apply_pauli_string(state, p)).real();
}

std::optional<int> stabilizer_eigenvalue(const PureState& state, const PauliString& p,
                                         double tol) {
  if (tol <= 0.0) throw std::invalid_argument("stabilizer_eigenvalue: tol must be > 0");
  const PureState mapped = apply_pauli_string(state, p);
  for (int lambda : {+1, -1}) {
    double dist_sq = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
      dist_sq += std::norm(mapped.amplitude(i) - static_cast<double>(lambda) * state.amplitude(i));
    }
    if (std::sqrt(dist_sq) < tol) return lambda;
  }
  return std::nullopt;
}

std::pair<int, PureState> measure_qubit(const PureState& state, int qubit, PauliAxis axis,
                                        Rng& rng) {
  const int n = state.num_qubits();
  if (axis == PauliAxis::I) throw std::invalid_argument("measure_qubit: I is not a basis");
  if (qubit < 1 || qubit > n) throw std::invalid_argument("measure_qubit: qubit out of range");

  const std::uint64_t stride = 1ull << (n - qubit);
  Amplitude e0, e1;
  axis_eigenvector(axis, +1, e0, e1);
  double p_plus = 0.0;
  for (std::uint64_t base = 0; base < state.dim(); ++base) {
    if (base & stride) continue;
    p_plus += std::norm(std::conj(e0) * state.amplitude(base) +
                        std::conj(e1) * state.amplitude(base | stride));
  }

  // Branches within kTol of certainty are taken deterministically, so
  // measuring an eigenstate reproduces its outcome with probability one.
  int outcome;
  if (p_plus > 1.0 - kTol) {
    outcome = +1;
  } else if (p_plus < kTol) {
    outcome = -1;
  } else {
    outcome = rng.next_double() < p_plus ? +1 : -1;
  }
  return {outcome, collapse_qubit(state, qubit, axis, outcome)};
}

PureState permute_qubits(const PureState& state, const std::vector<int>& perm) {
  const int n = state.num_qubits();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permute_qubits: permutation length mismatch");
  }
  std::vector<bool> seen(n + 1, false);
  for (int target : perm) {
    if (target < 1 || target > n || seen[target]) {
      throw std::invalid_argument("permute_qubits: not a bijection on {1..n}");
    }
    seen[target] = true;
  }

  std::vector<Amplitude> out(state.dim());
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    std::uint64_t target = 0;
    for (int q = 1; q <= n; ++q) {
      const std::uint64_t bit = (b >> (n - q)) & 1u;
      target |= bit << (n - perm[q - 1]);
    }
    out[target] = state.amplitude(b);
  }
  return PureState(n, std::move(out));
}

}  // namespace qss
