#include "qss/states.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qss::states {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_coeff_norm(const std::vector<Amplitude>& coeffs) {
  double s = 0.0;
  for (const Amplitude& c : coeffs) s += std::norm(c);
  if (std::abs(s - 1.0) > kTol) throw std::invalid_argument("coefficients are not normalized");
}

std::vector<Amplitude> uniform_coeffs(std::size_t count) {
  return std::vector<Amplitude>(count, Amplitude{1.0 / std::sqrt(static_cast<double>(count)), 0.0});
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<std::uint64_t> weight_indices(int n, int m) {
  if (n < 1 || n > kMaxQubits || m < 0 || m > n) {
    throw std::invalid_argument("weight_indices: bad arguments");
  }
  std::vector<std::uint64_t> out;
  out.reserve(binomial(n, m));
  for (std::uint64_t b = 0; b < (1ull << n); ++b) {
    if (std::popcount(b) == m) out.push_back(b);
  }
  return out;
}

PureState ghz_canonical(const std::vector<int>& bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 2) throw std::invalid_argument("ghz_canonical: need at least 2 bits");
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("ghz_canonical: bits must be 0 or 1");
  }

  std::uint64_t lead = 0;  // |0 i2..in>
  for (int q = 2; q <= n; ++q) {
    if (bits[q - 1]) lead |= 1ull << (n - q);
  }
  const std::uint64_t mask = (1ull << n) - 1;
  const std::uint64_t partner = ~lead & mask;  // |1 ~i2..~in>

  std::vector<Amplitude> amps(1ull << n, Amplitude{0.0, 0.0});
  amps[lead] = {kInvSqrt2, 0.0};
  amps[partner] = {bits[0] ? -kInvSqrt2 : kInvSqrt2, 0.0};
  return PureState(n, std::move(amps));
}

void GhzPairSpec::validate() const {
  if (n < 2) throw std::invalid_argument("GhzPairSpec: n must be >= 2");
  if (r < 0 || 2 * r > n) throw std::invalid_argument("GhzPairSpec: need 0 <= r <= n/2");
}

std::pair<PureState, PureState> ghz_pair(const GhzPairSpec& spec) {
  spec.validate();
  const int n = spec.n;

  std::vector<Amplitude> first(1ull << n, Amplitude{0.0, 0.0});
  first[0] = {kInvSqrt2, 0.0};
  first[(1ull << n) - 1] = {kInvSqrt2, 0.0};

  // |1^r 0^{n-r}> minus |0^r 1^{n-r}>; r = 0 degenerates to (|0^n>-|1^n>)/sqrt(2).
  const std::uint64_t ones_head = ((1ull << spec.r) - 1) << (n - spec.r);
  const std::uint64_t ones_tail = (1ull << (n - spec.r)) - 1;
  std::vector<Amplitude> second(1ull << n, Amplitude{0.0, 0.0});
  second[ones_head] = {kInvSqrt2, 0.0};
  second[ones_tail] = {-kInvSqrt2, 0.0};

  return {PureState(n, std::move(first)), PureState(n, std::move(second))};
}

PureState dicke(int n, int m) {
  if (m < 1 || m >= n) throw std::invalid_argument("dicke: need 1 <= m < n");
  return generalized_dicke(n, m, uniform_coeffs(binomial(n, m)));
}

PureState generalized_dicke(int n, int m, const std::vector<Amplitude>& coeffs) {
  if (m < 1 || m >= n) throw std::invalid_argument("generalized_dicke: need 1 <= m < n");
  const std::vector<std::uint64_t> indices = weight_indices(n, m);
  if (coeffs.size() != indices.size()) {
    throw std::invalid_argument("generalized_dicke: coefficient count must be C(n,m)");
  }
  check_coeff_norm(coeffs);

  std::vector<Amplitude> amps(1ull << n, Amplitude{0.0, 0.0});
  for (std::size_t j = 0; j < indices.size(); ++j) amps[indices[j]] = coeffs[j];
  return PureState(n, std::move(amps));
}

void DickePairSpec::validate() const {
  if (n < 2) throw std::invalid_argument("DickePairSpec: n must be >= 2");
  if (m < 1 || m >= n) throw std::invalid_argument("DickePairSpec: need 1 <= m < n");
  if (r < 0 || r > n - 2 || m + r >= n) {
    throw std::invalid_argument("DickePairSpec: need 0 <= r <= n-2 and m+r < n");
  }
  if (!coeffs_a.empty() && coeffs_a.size() != binomial(n, m)) {
    throw std::invalid_argument("DickePairSpec: coeffs_a length must be C(n,m)");
  }
  if (!coeffs_b.empty() && coeffs_b.size() != binomial(n, m + r)) {
    throw std::invalid_argument("DickePairSpec: coeffs_b length must be C(n,m+r)");
  }
  if (!coeffs_a.empty()) check_coeff_norm(coeffs_a);
  if (!coeffs_b.empty()) check_coeff_norm(coeffs_b);
  if (r == 0) {
    // Same-weight members must be orthogonal through their coefficients.
    const std::vector<Amplitude> a = coeffs_a.empty() ? uniform_coeffs(binomial(n, m)) : coeffs_a;
    const std::vector<Amplitude> b = coeffs_b.empty() ? uniform_coeffs(binomial(n, m)) : coeffs_b;
    Amplitude dot{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) dot += std::conj(a[j]) * b[j];
    if (std::abs(dot) > kTol) {
      throw std::invalid_argument("DickePairSpec: r = 0 requires orthogonal coefficient lists");
    }
  }
}

std::pair<PureState, PureState> dicke_pair(const DickePairSpec& spec) {
  spec.validate();
  const std::vector<Amplitude> a =
      spec.coeffs_a.empty() ? uniform_coeffs(binomial(spec.n, spec.m)) : spec.coeffs_a;
  const std::vector<Amplitude> b =
      spec.coeffs_b.empty() ? uniform_coeffs(binomial(spec.n, spec.m + spec.r)) : spec.coeffs_b;
  return {generalized_dicke(spec.n, spec.m, a), generalized_dicke(spec.n, spec.m + spec.r, b)};
}

std::vector<Amplitude> uniform_orthogonal_coeffs(std::size_t count) {
  if (count < 2) throw std::invalid_argument("uniform_orthogonal_coeffs: need count >= 2");
  const double c = static_cast<double>(count);
  const double unit = 1.0 / std::sqrt(c * (c - 1.0));
  std::vector<Amplitude> out(count, Amplitude{unit, 0.0});
  out.back() = {-(c - 1.0) * unit, 0.0};
  return out;
}

StabilizerVector StabilizerVector::o0(int n) {
  if (n < 2) throw std::invalid_argument("StabilizerVector: n must be >= 2");
  StabilizerVector v{std::vector<int>(n, 0)};
  return v;
}

StabilizerVector StabilizerVector::oij(int n, int i, int j) {
  if (n < 2) throw std::invalid_argument("StabilizerVector: n must be >= 2");
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw std::invalid_argument("StabilizerVector: need distinct positions in 1..n");
  }
  StabilizerVector v{std::vector<int>(n, 0)};
  v.bits[i - 1] = 1;
  v.bits[j - 1] = 1;
  return v;
}

void StabilizerVector::validate() const {
  if (size() < 2) throw std::invalid_argument("StabilizerVector: need >= 2 bits");
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("StabilizerVector: bits must be 0 or 1");
  }
  const int w = weight();
  if (w != 0 && w != 2) throw std::invalid_argument("StabilizerVector: weight must be 0 or 2");
}

int StabilizerVector::weight() const { return std::accumulate(bits.begin(), bits.end(), 0); }

PauliString StabilizerVector::to_pauli_string() const {
  validate();
  std::vector<PauliAxis> axes(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    axes[i] = bits[i] ? PauliAxis::Y : PauliAxis::X;
  }
  return PauliString(std::move(axes));
}

std::string StabilizerVector::label() const {
  if (weight() == 0) return "O(0)";
  std::string out = "O(";
  bool first = true;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + ")";
}

std::vector<std::pair<StabilizerVector, PauliString>> ghz_stabilizer_family(int n) {
  if (n < 2) throw std::invalid_argument("ghz_stabilizer_family: n must be >= 2");
  std::vector<std::pair<StabilizerVector, PauliString>> family;
  family.reserve(1 + static_cast<std::size_t>(binomial(n, 2)));
  StabilizerVector o0 = StabilizerVector::o0(n);
  family.emplace_back(o0, o0.to_pauli_string());
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      StabilizerVector v = StabilizerVector::oij(n, i, j);
      PauliString p = v.to_pauli_string();
      family.emplace_back(std::move(v), std::move(p));
    }
  }
  return family;
}

std::string setting_label(const CheckSetting& setting) {
  if (const auto* stab = std::get_if<StabilizerVector>(&setting)) return stab->label();
  return std::string(1, axis_char(std::get<PauliAxis>(setting)));
}

int expected_eigenvalue(const SchemeVariant& variant, const CheckSetting& setting,
                        PairMember member) {
  variant.validate();
  switch (variant.kind) {
    case SchemeKind::nn:
    case SchemeKind::two_n: {
      const auto* stab = std::get_if<StabilizerVector>(&setting);
      if (stab == nullptr) {
        throw std::invalid_argument("expected_eigenvalue: GHZ schemes use stabilizer settings");
      }
      stab->validate();
      if (stab->size() != variant.num_qubits()) {
        throw std::invalid_argument("expected_eigenvalue: stabilizer width mismatch");
      }
      if (member == PairMember::first) {
        return stab->weight() == 0 ? +1 : -1;
      }
      if (stab->weight() == 0) return -1;
      // O(ij) on the distance-r member: +1 exactly when i and j sit in the
      // same block of the (r, n-r) split. The nn scheme is the r = 0 case,
      // where the first block is empty and every O(ij) gives +1.
      const int r = variant.kind == SchemeKind::two_n ? variant.r : 0;
      int i = 0, j = 0;
      for (int q = 1; q <= stab->size(); ++q) {
        if (!stab->bits[q - 1]) continue;
        if (i == 0) {
          i = q;
        } else {
          j = q;
        }
      }
      const bool same_block = (i <= r) == (j <= r);
      return same_block ? +1 : -1;
    }
    case SchemeKind::kn: {
      const auto* axis = std::get_if<PauliAxis>(&setting);
      if (axis == nullptr) {
        throw std::invalid_argument("expected_eigenvalue: kn scheme uses a shared axis");
      }
      const int weight = variant.member_weight(member);
      switch (*axis) {
        case PauliAxis::Z:
          return weight % 2 == 0 ? +1 : -1;
        case PauliAxis::X:
        case PauliAxis::Y: {
          const int nq = variant.num_qubits();
          if (nq % 2 != 0 || weight != nq / 2) {
            throw std::invalid_argument(
                "expected_eigenvalue: X/Y checks need the balanced member");
          }
          return +1;
        }
        case PauliAxis::I:
          break;
      }
      throw std::invalid_argument("expected_eigenvalue: bad axis");
    }
  }
  throw std::logic_error("expected_eigenvalue: bad variant kind");
}

std::pair<PureState, PureState> scheme_pair(const SchemeVariant& variant) {
  variant.validate();
  switch (variant.kind) {
    case SchemeKind::nn:
      return ghz_pair(GhzPairSpec{variant.n, 0});
    case SchemeKind::two_n:
      return ghz_pair(GhzPairSpec{variant.n, variant.r});
    case SchemeKind::kn: {
      DickePairSpec spec;
      spec.n = variant.num_qubits();
      spec.m = variant.m;
      spec.r = variant.distance();
      return dicke_pair(spec);
    }
  }
  throw std::logic_error("scheme_pair: bad variant kind");
}

}  // namespace qss::states
