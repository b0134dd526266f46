#pragma once

#include <string>

namespace qss {

// One shared secret is carried by an orthogonal pair of states; the dealer
// encodes bit 0 as the first member and bit 1 as the second.
enum class PairMember { first, second };

enum class SchemeKind {
  nn,     // (n,n): all n players needed
  two_n,  // restricted (2,n): one player from each block of a 2-split
  kn,     // (k,n): any k of n players
};

// Scheme parameters. Only the fields relevant to `kind` are meaningful:
// nn uses n; two_n uses n and r; kn uses n, k and m.
struct SchemeVariant {
  SchemeKind kind = SchemeKind::nn;
  int n = 0;  // number of players
  int r = 0;  // two_n: size of the first block, 1 <= r <= n/2
  int k = 0;  // kn: coalition threshold
  int m = 0;  // kn: excitation count of the first pair member

  static SchemeVariant nn(int n);
  static SchemeVariant restricted_2n(int n, int r);
  static SchemeVariant kn(int n, int k, int m);

  void validate() const;

  // Qubits in a dealt state. For kn with odd n the dealer keeps one extra
  // qubit so the pair lives on an even number of sites.
  int num_qubits() const;
  int num_players() const { return n; }
  bool kn_uses_dealer_qubit() const;

  // Hamming-distance parameter of the pair: 0 for nn, r for two_n, and
  // num_qubits() - k + 1 for kn.
  int distance() const;

  // kn only: excitation count of a pair member.
  int member_weight(PairMember member) const;

  std::string label() const;
};

}  // namespace qss
