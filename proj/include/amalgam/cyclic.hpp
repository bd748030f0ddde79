#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace amalgam {

// Least-nonnegative residue, also for negative values.
inline long long floor_mod(long long value, long long modulus) {
  long long r = value % modulus;
  return r < 0 ? r + modulus : r;
}

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Cyclic group oracle. modulus == 0 encodes the infinite cyclic group,
/// modulus == n >= 1 the finite cyclic group of order n (n == 1 is the
/// trivial group, used as the amalgamated subgroup of a plain free product).
struct CyclicGroup {
  long long modulus = 0;

  bool is_infinite() const { return modulus == 0; }
  bool is_trivial() const { return modulus == 1; }

  // Canonical representative: any integer for Z, a residue in [0, n) for Z_n.
  long long canon(long long value) const {
    return is_infinite() ? value : floor_mod(value, modulus);
  }

  friend bool operator==(const CyclicGroup&, const CyclicGroup&) = default;
};

struct CyclicElement {
  CyclicGroup group;
  long long value = 0;  // canonical per group

  friend bool operator==(const CyclicElement&, const CyclicElement&) = default;
};

inline CyclicElement make_element(CyclicGroup g, long long value) {
  return CyclicElement{g, g.canon(value)};
}

inline bool is_identity(const CyclicElement& a) { return a.value == 0; }

inline CyclicElement cyclic_multiply(const CyclicElement& a, const CyclicElement& b) {
  if (a.group != b.group)
    throw std::invalid_argument("cyclic_multiply: elements of different groups");
  return make_element(a.group, a.value + b.value);
}

inline CyclicElement cyclic_inverse(const CyclicElement& a) {
  return make_element(a.group, -a.value);
}

inline CyclicElement cyclic_power(const CyclicElement& a, long long n) {
  return make_element(a.group, a.value * n);
}

/// Order of a in its group; 0 stands for infinite order.
inline long long cyclic_order(const CyclicElement& a) {
  if (is_identity(a)) return 1;
  if (a.group.is_infinite()) return 0;
  return a.group.modulus / gcd_ll(a.group.modulus, a.value);
}

/// The amalgamated subgroup includes into a factor as the subgroup of
/// index-th powers; index >= 2 whenever the inclusion must be proper.
struct EmbeddingSpec {
  long long index = 1;

  friend bool operator==(const EmbeddingSpec&, const EmbeddingSpec&) = default;
};

struct TransversalSplit {
  long long transversal = 0;  // exponent r in [0, index)
  long long tail = 0;         // exponent m of the subgroup generator d = u^index
};

/// Split an exponent t (an element u^t of the infinite cyclic factor) as
/// t = r + index * m with r in [0, index). r == 0 exactly when u^t lies in
/// the embedded subgroup; the tail is reported in subgroup coordinates.
inline TransversalSplit transversal_split(long long t, const EmbeddingSpec& emb) {
  if (emb.index < 1) throw std::invalid_argument("transversal_split: index must be >= 1");
  long long r = floor_mod(t, emb.index);
  return TransversalSplit{r, (t - r) / emb.index};
}

struct TransversalDecomposition {
  CyclicElement transversal;  // u^r in the factor
  CyclicElement tail;         // d^m in the (infinite cyclic) amalgamated subgroup
};

inline TransversalDecomposition transversal_decompose(const CyclicElement& g,
                                                      const EmbeddingSpec& emb) {
  if (!g.group.is_infinite())
    throw std::invalid_argument("transversal_decompose: factor must be infinite cyclic");
  TransversalSplit s = transversal_split(g.value, emb);
  return TransversalDecomposition{make_element(g.group, s.transversal),
                                  make_element(CyclicGroup{0}, s.tail)};
}

}  // namespace amalgam
