#include "qss/scheme.hpp"

#include "qss/state.hpp"

#include <stdexcept>

namespace qss {

SchemeVariant SchemeVariant::nn(int n) {
  SchemeVariant v;
  v.kind = SchemeKind::nn;
  v.n = n;
  v.validate();
  return v;
}

SchemeVariant SchemeVariant::restricted_2n(int n, int r) {
  SchemeVariant v;
  v.kind = SchemeKind::two_n;
  v.n = n;
  v.r = r;
  v.validate();
  return v;
}

SchemeVariant SchemeVariant::kn(int n, int k, int m) {
  SchemeVariant v;
  v.kind = SchemeKind::kn;
  v.n = n;
  v.k = k;
  v.m = m;
  v.validate();
  return v;
}

void SchemeVariant::validate() const {
  switch (kind) {
    case SchemeKind::nn:
      if (n < 2) throw std::invalid_argument("nn scheme needs n >= 2");
      break;
    case SchemeKind::two_n:
      if (n < 2) throw std::invalid_argument("2n scheme needs n >= 2");
      if (r < 1 || 2 * r > n) throw std::invalid_argument("2n scheme needs 1 <= r <= n/2");
      break;
    case SchemeKind::kn: {
      if (n < 2) throw std::invalid_argument("kn scheme needs n >= 2");
      // k must be a strict majority of players, else two disjoint coalitions
      // could both reconstruct, and below n so the threshold is proper.
      if (k < (n + 1) / 2 || k >= n) {
        throw std::invalid_argument("kn scheme needs ceil(n/2) <= k < n");
      }
      if (m < 1) throw std::invalid_argument("kn scheme needs m >= 1");
      if (m + distance() >= num_qubits()) {
        throw std::invalid_argument("kn scheme: second member weight exceeds qubit count");
      }
      break;
    }
  }
  if (num_qubits() > kMaxQubits) throw std::invalid_argument("scheme exceeds qubit budget");
}

int SchemeVariant::num_qubits() const {
  if (kind == SchemeKind::kn && n % 2 != 0) return n + 1;
  return n;
}

bool SchemeVariant::kn_uses_dealer_qubit() const {
  return kind == SchemeKind::kn && n % 2 != 0;
}

int SchemeVariant::distance() const {
  switch (kind) {
    case SchemeKind::nn: return 0;
    case SchemeKind::two_n: return r;
    case SchemeKind::kn: return num_qubits() - k + 1;
  }
  throw std::logic_error("distance: bad kind");
}

int SchemeVariant::member_weight(PairMember member) const {
  if (kind != SchemeKind::kn) throw std::logic_error("member_weight: kn only");
  return member == PairMember::first ? m : m + distance();
}

std::string SchemeVariant::label() const {
  switch (kind) {
    case SchemeKind::nn: return "nn(n=" + std::to_string(n) + ")";
    case SchemeKind::two_n:
      return "2n(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
    case SchemeKind::kn:
      return "kn(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",m=" + std::to_string(m) +
             ")";
  }
  throw std::logic_error("label: bad kind");
}

}  // namespace qss
