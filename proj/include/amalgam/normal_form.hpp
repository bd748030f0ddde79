#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amalgam/cyclic.hpp"

namespace amalgam {

enum class FactorSide : unsigned char { Left, Right };

inline FactorSide other(FactorSide s) {
  return s == FactorSide::Left ? FactorSide::Right : FactorSide::Left;
}

/// One transversal entry of a normal form. The exponent is a nontrivial
/// right-coset representative, canonical in [1, index) of its side.
struct Syllable {
  FactorSide side;
  long long exponent;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A free product of two cyclic groups amalgamated over cyclic subgroups of
/// finite index. Two instantiations cover everything downstream:
///
///   * amalgam = Z:   infinite cyclic factors <u>, <v> glued along
///                    d = u^left_index = v^right_index (torus knot groups);
///   * amalgam = Z_1: finite factors Z_p, Z_q with trivial amalgamated
///                    subgroup, i.e. the plain free product Z_p * Z_q.
///
/// In both cases the transversals of a side are u^0 .. u^(index-1) and the
/// junction arithmetic below is the same code path.
struct AmalgamGroup {
  CyclicGroup left;
  CyclicGroup right;
  CyclicGroup amalgam;
  long long left_index = 1;
  long long right_index = 1;

  const CyclicGroup& factor(FactorSide s) const {
    return s == FactorSide::Left ? left : right;
  }
  long long index(FactorSide s) const {
    return s == FactorSide::Left ? left_index : right_index;
  }

  friend bool operator==(const AmalgamGroup&, const AmalgamGroup&) = default;
};

/// Z_p * Z_q with trivial amalgamated subgroup.
inline AmalgamGroup free_product(long long p, long long q) {
  if (p < 2 || q < 2) throw std::invalid_argument("free_product: factors need order >= 2");
  return AmalgamGroup{CyclicGroup{p}, CyclicGroup{q}, CyclicGroup{1}, p, q};
}

/// <u> *_<d> <v> with d = u^p = v^q; requires proper inclusions on both sides.
inline AmalgamGroup cyclic_amalgam(long long p, long long q) {
  if (p < 2 || q < 2) throw std::invalid_argument("cyclic_amalgam: indices must be >= 2");
  return AmalgamGroup{CyclicGroup{0}, CyclicGroup{0}, CyclicGroup{0}, p, q};
}

/// Unique normal form x = x_1 x_2 ... x_m c: strictly alternating nontrivial
/// transversal syllables followed by a tail c in the amalgamated subgroup
/// (stored in subgroup coordinates; identically 0 for free products).
struct NormalForm {
  AmalgamGroup group;
  std::vector<Syllable> syllables;
  long long tail = 0;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline NormalForm identity(const AmalgamGroup& g) { return NormalForm{g, {}, 0}; }

inline NormalForm tail_element(const AmalgamGroup& g, long long m) {
  return NormalForm{g, {}, g.amalgam.canon(m)};
}

inline bool is_identity(const NormalForm& x) {
  return x.syllables.empty() && x.tail == 0;
}

inline std::size_t length(const NormalForm& x) { return x.syllables.size(); }

inline std::pair<std::optional<FactorSide>, std::optional<FactorSide>> begins_ends(
    const NormalForm& x) {
  if (x.syllables.empty()) return {std::nullopt, std::nullopt};
  return {x.syllables.front().side, x.syllables.back().side};
}

/// Structural invariant of a normal form: alternation, nontrivial canonical
/// transversals, canonical tail.
inline bool is_normal(const NormalForm& x) {
  for (std::size_t i = 0; i < x.syllables.size(); ++i) {
    const Syllable& s = x.syllables[i];
    if (s.exponent < 1 || s.exponent >= x.group.index(s.side)) return false;
    if (i > 0 && x.syllables[i - 1].side == s.side) return false;
  }
  return x.tail == x.group.amalgam.canon(x.tail);
}

/// One raw letter of a spelling: an arbitrary factor element u^exponent on
/// the named side (not yet a transversal).
struct RawLetter {
  FactorSide side;
  long long exponent;
};

/// Normal form of a single factor element: split off the transversal and
/// push the rest into the tail.
inline NormalForm factor_letter(const AmalgamGroup& g, FactorSide side, long long exponent) {
  long long e = g.factor(side).canon(exponent);
  TransversalSplit s = transversal_split(e, EmbeddingSpec{g.index(side)});
  NormalForm nf{g, {}, g.amalgam.canon(s.tail)};
  if (s.transversal != 0) nf.syllables.push_back(Syllable{side, s.transversal});
  return nf;
}

/// Product of two normal forms. Junction reduction works outward from the
/// seam: equal sides combine in the factor; a nontrivial combined transversal
/// is an amalgamation, a trivial one a cancellation that exposes the next
/// pair. The leftover subgroup element rides to the right through the rest
/// of y (factors are abelian, so transversals pass it through unchanged) and
/// lands in the tail.
inline NormalForm multiply(const NormalForm& x, const NormalForm& y) {
  if (x.group != y.group) throw std::invalid_argument("multiply: group mismatch");
  const AmalgamGroup& g = x.group;

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(x.syllables.size()) - 1;
  std::size_t j = 0;
  long long carry = x.tail;  // subgroup coordinates

  while (i >= 0 && j < y.syllables.size() &&
         x.syllables[static_cast<std::size_t>(i)].side == y.syllables[j].side) {
    const Syllable& a = x.syllables[static_cast<std::size_t>(i)];
    const Syllable& b = y.syllables[j];
    long long k = g.index(a.side);
    long long combined = g.factor(a.side).canon(a.exponent + k * carry + b.exponent);
    TransversalSplit s = transversal_split(combined, EmbeddingSpec{k});
    if (s.transversal != 0) {
      // Amalgamation: one merged syllable replaces the junction pair.
      NormalForm out{g, {}, g.amalgam.canon(s.tail + y.tail)};
      out.syllables.assign(x.syllables.begin(), x.syllables.begin() + i);
      out.syllables.push_back(Syllable{a.side, s.transversal});
      out.syllables.insert(out.syllables.end(), y.syllables.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                           y.syllables.end());
      return out;
    }
    // Cancellation: junction lands in the subgroup, examine the next pair.
    carry = g.amalgam.canon(s.tail);
    --i;
    ++j;
  }

  NormalForm out{g, {}, g.amalgam.canon(carry + y.tail)};
  out.syllables.assign(x.syllables.begin(), x.syllables.begin() + (i + 1));
  out.syllables.insert(out.syllables.end(), y.syllables.begin() + static_cast<std::ptrdiff_t>(j),
                       y.syllables.end());
  return out;
}

/// Normal form of a raw spelling, by left-folding single-letter normal forms.
inline NormalForm normalize(const AmalgamGroup& g, std::span<const RawLetter> raw) {
  NormalForm acc = identity(g);
  for (const RawLetter& letter : raw) acc = multiply(acc, factor_letter(g, letter.side, letter.exponent));
  return acc;
}

inline NormalForm normalize(const AmalgamGroup& g, const std::vector<RawLetter>& raw) {
  return normalize(g, std::span<const RawLetter>(raw));
}

inline NormalForm invert(const NormalForm& x) {
  const AmalgamGroup& g = x.group;
  if (x.syllables.empty()) return tail_element(g, -x.tail);
  // (x_1 ... x_m c)^-1 = c^-1 x_m^-1 ... x_1^-1; the tail inverse is folded
  // into the last syllable's factor.
  std::vector<RawLetter> raw;
  raw.reserve(x.syllables.size());
  const Syllable& last = x.syllables.back();
  raw.push_back(RawLetter{last.side, -(last.exponent + g.index(last.side) * x.tail)});
  for (std::size_t i = x.syllables.size() - 1; i-- > 0;)
    raw.push_back(RawLetter{x.syllables[i].side, -x.syllables[i].exponent});
  return normalize(g, raw);
}

inline NormalForm power(const NormalForm& x, long long n) {
  NormalForm base = n < 0 ? invert(x) : x;
  long long reps = n < 0 ? -n : n;
  NormalForm acc = identity(x.group);
  for (long long i = 0; i < reps; ++i) acc = multiply(acc, base);
  return acc;
}

enum class JunctionKind { None, Amalgamation, Cancellation };

/// Classify the seam of the product xy: None when the junction sides differ
/// (or either word has length zero), otherwise Amalgamation or Cancellation
/// according to whether x_m c y_1 leaves or enters the amalgamated subgroup.
inline JunctionKind classify_junction(const NormalForm& x, const NormalForm& y) {
  if (x.group != y.group) throw std::invalid_argument("classify_junction: group mismatch");
  if (x.syllables.empty() || y.syllables.empty()) return JunctionKind::None;
  const Syllable& a = x.syllables.back();
  const Syllable& b = y.syllables.front();
  if (a.side != b.side) return JunctionKind::None;
  const AmalgamGroup& g = x.group;
  long long k = g.index(a.side);
  long long combined = g.factor(a.side).canon(a.exponent + k * x.tail + b.exponent);
  return floor_mod(combined, k) == 0 ? JunctionKind::Cancellation : JunctionKind::Amalgamation;
}

/// Order of an element of a plain free product (trivial amalgamated
/// subgroup); nullopt encodes infinite order. Torsion elements of a free
/// product are exactly the conjugates into a finite factor, so the element
/// is cyclically reduced first.
inline std::optional<long long> free_product_order(const NormalForm& x) {
  if (!x.group.amalgam.is_trivial())
    throw std::invalid_argument("free_product_order: amalgamated subgroup must be trivial");
  if (is_identity(x)) return 1;
  std::vector<Syllable> syl = x.syllables;
  while (syl.size() >= 2 && syl.front().side == syl.back().side) {
    FactorSide side = syl.front().side;
    long long combined = x.group.factor(side).canon(syl.back().exponent + syl.front().exponent);
    syl.pop_back();
    syl.erase(syl.begin());
    if (combined != 0) syl.insert(syl.begin(), Syllable{side, combined});
  }
  assert(!syl.empty());
  if (syl.size() >= 2) return std::nullopt;
  const Syllable& s = syl.front();
  return cyclic_order(make_element(x.group.factor(s.side), s.exponent));
}

}  // namespace amalgam
