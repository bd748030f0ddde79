#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "amalgam/normal_form.hpp"

namespace amalgam {

/// The group <u, v | u^p = v^q> of the (p,q) torus knot, realized as the
/// amalgam of two infinite cyclic groups over d = u^p = v^q. The tail of a
/// normal form records the power of the central element d, the class of the
/// regular Seifert fibre.
struct TorusKnotGroup {
  long long p = 2;
  long long q = 3;
  AmalgamGroup group;
};

inline TorusKnotGroup torus_group(long long p, long long q) {
  if (p < 2 || q < 2) throw std::invalid_argument("torus_group: p, q must be >= 2");
  if (gcd_ll(p, q) != 1) throw std::invalid_argument("torus_group: p, q must be coprime");
  return TorusKnotGroup{p, q, cyclic_amalgam(p, q)};
}

using TorusKnotElement = NormalForm;
using FreeProductElement = NormalForm;

/// d itself: tail 1, no syllables. Central, since it embeds as u^p = v^q.
inline NormalForm center_element(const TorusKnotGroup& g) { return tail_element(g.group, 1); }

/// Meridian exponents (a, b) with a*q + b*p = 1, normalized to a in [1, p).
inline std::pair<long long, long long> meridian_exponents(long long p, long long q) {
  long long a = 1;
  while (floor_mod(a * q, p) != 1) {
    ++a;
    if (a >= p + 1) throw std::logic_error("meridian_exponents: no inverse (p, q not coprime?)");
  }
  return {a, (1 - a * q) / p};
}

/// The meridian class x = u^a v^b, pinned by a*q + b*p = 1 so that x maps to
/// 1 under the abelianization u -> q, v -> p. Its normal form has length two
/// and begins on the u side.
inline NormalForm meridian(const TorusKnotGroup& g) {
  auto [a, b] = meridian_exponents(g.p, g.q);
  return normalize(g.group, std::vector<RawLetter>{{FactorSide::Left, a}, {FactorSide::Right, b}});
}

/// Abelianization Z of the torus knot group: u -> q, v -> p, d -> pq.
inline long long abelianization(const TorusKnotGroup& g, const NormalForm& x) {
  if (x.group != g.group) throw std::invalid_argument("abelianization: group mismatch");
  long long sum = x.tail * g.p * g.q;
  for (const Syllable& s : x.syllables)
    sum += s.exponent * (s.side == FactorSide::Left ? g.q : g.p);
  return sum;
}

inline AmalgamGroup seifert_quotient_group(const TorusKnotGroup& g) {
  return free_product(g.p, g.q);
}

/// Quotient by the center <d>: the map onto Z_p * Z_q that drops the tail
/// and reads syllable exponents modulo p and q. A homomorphism, with kernel
/// exactly the powers of the fibre class.
inline NormalForm seifert_quotient(const TorusKnotGroup& g, const NormalForm& b) {
  if (b.group != g.group) throw std::invalid_argument("seifert_quotient: group mismatch");
  NormalForm out = identity(seifert_quotient_group(g));
  out.syllables = b.syllables;  // exponents already lie in [1, p) / [1, q)
  return out;
}

/// Minimal m >= 1 with b^m central, i.e. the order of the image of b in
/// Z_p * Z_q; nullopt when that image has infinite order (its cyclic
/// reduction does not land in a factor).
inline std::optional<long long> central_power(const TorusKnotGroup& g, const NormalForm& b) {
  std::optional<long long> order = free_product_order(seifert_quotient(g, b));
  if (order && *order == 0) return std::nullopt;
  return order;
}

/// Basis {x, y} of the peripheral subgroup adapted to b: x the meridian and
/// y the primitive root of b^m along the fibre direction.
struct PeripheralBasis {
  NormalForm x;
  NormalForm y;
};

inline PeripheralBasis peripheral_basis(const TorusKnotGroup& g, const NormalForm& b) {
  std::optional<long long> m = central_power(g, b);
  if (!m) throw std::invalid_argument("peripheral_basis: no finite central power");
  NormalForm c = power(b, *m);
  if (!c.syllables.empty()) throw std::logic_error("peripheral_basis: central power not in <d>");
  if (c.tail == 0)
    throw std::invalid_argument("peripheral_basis: central power is the identity, no primitive root");
  return PeripheralBasis{meridian(g), tail_element(g.group, c.tail > 0 ? 1 : -1)};
}

}  // namespace amalgam
