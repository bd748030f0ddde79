#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "amalgam/normal_form.hpp"

namespace amalgam {

// Symbolic calculus over the generating pair {ac0, bc} of an abstract
// amalgam. Only three facts about the ambient group are used: (bc)^m is a
// central element c~, c~ commutes with bc, and nothing else commutes. Words
// alternate bc-powers with blocks, where a block is an uninterpreted word in
// the symbols ac0 and c~ (adjacent equal symbols merge, nothing commutes
// inside a block).

enum class FormalSymbol : unsigned char { AcZero, CTilde };

struct BlockFactor {
  FormalSymbol symbol;
  long long exponent;

  friend bool operator==(const BlockFactor&, const BlockFactor&) = default;
};

struct Block {
  std::vector<BlockFactor> factors;

  bool pure_ctilde() const {
    for (const BlockFactor& f : factors)
      if (f.symbol == FormalSymbol::AcZero) return false;
    return true;
  }

  friend bool operator==(const Block&, const Block&) = default;
};

struct BcPower {
  long long exponent;

  friend bool operator==(const BcPower&, const BcPower&) = default;
};

using Phrase = std::variant<BcPower, Block>;

struct FormalWord {
  long long m = 1;  // minimal positive power with (bc)^m = c~ central
  std::vector<Phrase> phrases;

  friend bool operator==(const FormalWord&, const FormalWord&) = default;
};

/// Append (bc)^exp, merging with a trailing bc-power.
inline void append_power(FormalWord& w, long long exp) {
  if (exp == 0) return;
  if (!w.phrases.empty()) {
    if (BcPower* p = std::get_if<BcPower>(&w.phrases.back())) {
      p->exponent += exp;
      if (p->exponent == 0) w.phrases.pop_back();
      return;
    }
  }
  w.phrases.push_back(BcPower{exp});
}

/// Append a block factor, merging with a trailing block and with a trailing
/// factor of the same symbol.
inline void append_block_factor(FormalWord& w, FormalSymbol symbol, long long exp) {
  if (exp == 0) return;
  if (w.phrases.empty() || !std::holds_alternative<Block>(w.phrases.back()))
    w.phrases.push_back(Block{});
  Block& block = std::get<Block>(w.phrases.back());
  if (!block.factors.empty() && block.factors.back().symbol == symbol) {
    block.factors.back().exponent += exp;
    if (block.factors.back().exponent == 0) block.factors.pop_back();
  } else {
    block.factors.push_back(BlockFactor{symbol, exp});
  }
  if (block.factors.empty()) w.phrases.pop_back();
}

namespace detail {

inline bool merge_neighbors(FormalWord& w) {
  bool changed = false;
  std::vector<Phrase> out;
  out.reserve(w.phrases.size());
  for (Phrase& phrase : w.phrases) {
    if (BcPower* p = std::get_if<BcPower>(&phrase)) {
      if (p->exponent == 0) {
        changed = true;
        continue;
      }
      if (!out.empty() && std::holds_alternative<BcPower>(out.back())) {
        std::get<BcPower>(out.back()).exponent += p->exponent;
        if (std::get<BcPower>(out.back()).exponent == 0) out.pop_back();
        changed = true;
        continue;
      }
      out.push_back(std::move(phrase));
      continue;
    }
    Block& b = std::get<Block>(phrase);
    std::vector<BlockFactor> merged;
    for (const BlockFactor& f : b.factors) {
      if (f.exponent == 0) {
        changed = true;
        continue;
      }
      if (!merged.empty() && merged.back().symbol == f.symbol) {
        merged.back().exponent += f.exponent;
        changed = true;
        if (merged.back().exponent == 0) merged.pop_back();
        continue;
      }
      merged.push_back(f);
    }
    if (merged.empty()) {
      changed = true;
      continue;
    }
    if (!out.empty() && std::holds_alternative<Block>(out.back())) {
      Block& prev = std::get<Block>(out.back());
      for (const BlockFactor& f : merged) {
        if (!prev.factors.empty() && prev.factors.back().symbol == f.symbol) {
          prev.factors.back().exponent += f.exponent;
          if (prev.factors.back().exponent == 0) prev.factors.pop_back();
        } else {
          prev.factors.push_back(f);
        }
      }
      if (prev.factors.empty()) out.pop_back();
      changed = true;
      continue;
    }
    out.push_back(Block{std::move(merged)});
  }
  if (changed) w.phrases = std::move(out);
  return changed;
}

}  // namespace detail

/// Canonical form of a formal word, reached by iterating three rules to a
/// fixed point:
///   (1) a bc-power whose exponent is a multiple of m becomes a c~ power;
///   (2) adjacent blocks (and adjacent bc-powers) merge, trivial entries die;
///   (3) a pure c~ block commutes leftward past a bc-power, the flanking
///       bc-powers merging.
/// Terminates: each applicable rule decreases (phrase count, multiples of m,
/// powers left of a pure block) lexicographically.
inline FormalWord canonicalize(const FormalWord& w) {
  if (w.m < 1) throw std::invalid_argument("canonicalize: central power m must be >= 1");
  FormalWord out = w;
  bool changed = true;
  int fuel = 1 << 20;
  while (changed) {
    if (--fuel == 0) throw std::logic_error("canonicalize: rewriting failed to terminate");
    changed = detail::merge_neighbors(out);
    for (Phrase& phrase : out.phrases) {
      if (BcPower* p = std::get_if<BcPower>(&phrase)) {
        if (p->exponent % out.m == 0) {
          phrase = Block{{BlockFactor{FormalSymbol::CTilde, p->exponent / out.m}}};
          changed = true;
        }
      }
    }
    if (changed) continue;
    for (std::size_t i = 0; i + 1 < out.phrases.size(); ++i) {
      if (!std::holds_alternative<BcPower>(out.phrases[i])) continue;
      const Block* b = std::get_if<Block>(&out.phrases[i + 1]);
      if (b == nullptr || !b->pure_ctilde()) continue;
      long long exp = std::get<BcPower>(out.phrases[i]).exponent;
      if (i + 2 < out.phrases.size()) {
        if (const BcPower* next = std::get_if<BcPower>(&out.phrases[i + 2])) exp += next->exponent;
      }
      Block moved = *b;
      bool had_next = i + 2 < out.phrases.size() && std::holds_alternative<BcPower>(out.phrases[i + 2]);
      out.phrases.erase(out.phrases.begin() + static_cast<std::ptrdiff_t>(i),
                        out.phrases.begin() + static_cast<std::ptrdiff_t>(i + (had_next ? 3 : 2)));
      out.phrases.insert(out.phrases.begin() + static_cast<std::ptrdiff_t>(i), Phrase{std::move(moved)});
      if (exp != 0)
        out.phrases.insert(out.phrases.begin() + static_cast<std::ptrdiff_t>(i + 1), Phrase{BcPower{exp}});
      changed = true;
      break;
    }
  }
  return out;
}

/// Shape classification of a canonical fixed point. Only PureCentral and
/// BeginsBlock words can represent elements of the amalgamated subgroup (in
/// particular elements of length zero); a word that starts with a surviving
/// bc-power has positive length.
enum class FixedPointShape { PureCentral, BeginsBlock, BeginsPower };

inline FixedPointShape fixed_point_shape(const FormalWord& w) {
  if (w.phrases.empty()) return FixedPointShape::PureCentral;
  if (const Block* b = std::get_if<Block>(&w.phrases.front())) {
    if (w.phrases.size() == 1 && b->pure_ctilde()) return FixedPointShape::PureCentral;
    return FixedPointShape::BeginsBlock;
  }
  return FixedPointShape::BeginsPower;
}

// ---------------------------------------------------------------------------
// P-sequence and sign-change statistic.

struct PowerToken {
  std::string letter;
  long long exponent;

  friend bool operator==(const PowerToken&, const PowerToken&) = default;
};

struct PSequence {
  std::vector<long long> values;  // even-indexed exponents, in order
  long long sigma = 0;            // number of adjacent sign changes
};

namespace detail {

inline long long count_sign_changes(const std::vector<long long>& values) {
  long long sigma = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if ((values[i] > 0) != (values[i + 1] > 0)) ++sigma;
  return sigma;
}

}  // namespace detail

/// Extract the sequence P of exponents of the designated letter from an
/// alternating two-letter power word, plus its sign-change count sigma.
inline PSequence p_sequence(std::span<const PowerToken> word, const std::string& x_letter = "X") {
  PSequence out;
  std::optional<std::string> filler;
  const std::string* prev = nullptr;
  for (const PowerToken& t : word) {
    if (t.exponent == 0) throw std::invalid_argument("p_sequence: zero exponent");
    if (prev != nullptr && *prev == t.letter)
      throw std::invalid_argument("p_sequence: adjacent powers of '" + t.letter + "'");
    prev = &t.letter;
    if (t.letter == x_letter) {
      out.values.push_back(t.exponent);
    } else {
      if (filler && *filler != t.letter)
        throw std::invalid_argument("p_sequence: more than two letters in word");
      filler = t.letter;
    }
  }
  if (out.values.empty())
    throw std::invalid_argument("p_sequence: no '" + x_letter + "' power in word");
  out.sigma = detail::count_sign_changes(out.values);
  return out;
}

inline PSequence p_sequence(const std::vector<PowerToken>& word, const std::string& x_letter = "X") {
  return p_sequence(std::span<const PowerToken>(word), x_letter);
}

/// P-sequence of a formal word in the alternating shape
/// (bc)^p1 (ac0)^p2 (bc)^p3 ..., where every block is a single ac0 power.
inline PSequence p_sequence(const FormalWord& w) {
  PSequence out;
  for (const Phrase& phrase : w.phrases) {
    if (const Block* b = std::get_if<Block>(&phrase)) {
      if (b->factors.size() != 1 || b->factors.front().symbol != FormalSymbol::AcZero)
        throw std::invalid_argument("p_sequence: block is not a single (ac0) power");
      out.values.push_back(b->factors.front().exponent);
    }
  }
  if (out.values.empty()) throw std::invalid_argument("p_sequence: no (ac0) power in word");
  out.sigma = detail::count_sign_changes(out.values);
  return out;
}

// ---------------------------------------------------------------------------
// Generating-pair silhouettes.

struct NormalFormShape {
  long long length = 0;
  std::optional<FactorSide> begin;
  std::optional<FactorSide> end;

  friend bool operator==(const NormalFormShape&, const NormalFormShape&) = default;
};

inline NormalFormShape shape_of(const NormalForm& x) {
  auto [begin, end] = begins_ends(x);
  return NormalFormShape{static_cast<long long>(length(x)), begin, end};
}

inline NormalFormShape inverted(const NormalFormShape& s) {
  return NormalFormShape{s.length, s.end, s.begin};
}

enum class PairType { p1, p2, p3, p4, q2, q3, q4, q5, other };

inline std::string to_string(PairType t) {
  switch (t) {
    case PairType::p1: return "p1";
    case PairType::p2: return "p2";
    case PairType::p3: return "p3";
    case PairType::p4: return "p4";
    case PairType::q2: return "q2";
    case PairType::q3: return "q3";
    case PairType::q4: return "q4";
    case PairType::q5: return "q5";
    case PairType::other: return "other";
  }
  return "other";
}

/// Classify a generating pair by normal-form silhouette alone. The first
/// descriptor is the short generator (a meridional ac, a bc, or a plain c);
/// the second is free. Inverting the second element turns a q4 pair into a
/// q3 pair.
inline PairType classify_pair(const NormalFormShape& g1, const NormalFormShape& g2) {
  auto is = [](const NormalFormShape& s, FactorSide begin, FactorSide end) {
    return s.length >= 1 && s.begin == begin && s.end == end;
  };
  const FactorSide A = FactorSide::Left;
  const FactorSide B = FactorSide::Right;

  if (g1.length == 0) {
    if (is(g2, A, B) && g2.length == 2) return PairType::p2;
    return PairType::other;
  }
  if (is(g1, A, A) && g1.length == 1) {
    if (is(g2, B, B) && g2.length == 1) return PairType::p1;
    if (is(g2, A, A) && g2.length >= 3 && g2.length % 2 == 1) return PairType::q2;
    if (is(g2, A, B) && g2.length >= 2 && g2.length % 2 == 0) return PairType::q3;
    if (is(g2, B, A) && g2.length >= 2 && g2.length % 2 == 0) return PairType::q4;
    if (is(g2, B, B) && g2.length >= 3 && g2.length % 2 == 1) return PairType::q5;
    return PairType::other;
  }
  if (is(g1, B, B) && g1.length == 1) {
    if (is(g2, A, B) && g2.length == 2) return PairType::p3;
    if (is(g2, A, A) && g2.length == 3) return PairType::p4;
    return PairType::other;
  }
  return PairType::other;
}

}  // namespace amalgam
