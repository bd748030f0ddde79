#pragma once

// Word grammar shared by the engine, the search dedup keys and the CLI.
// This header is the single source of truth for both parser and printer.
//
//   syllable word   :=  "1"  |  syllable {" " syllable} [" | " tail]  |  tail
//   syllable        :=  side ":" integer          side in {e,f,u,v,a,b}
//   tail            :=  "d:" integer
//   power word      :=  power {" " power}
//   power           :=  name "^" integer          name is any of the sides,
//                                                 "X", "(bc)", "(ac0)", "c~"
//   formal word     :=  "1"  |  fpower {" " fpower}
//   fpower          :=  ("(bc)" | "(ac0)" | "c~") "^" integer
//
// Letters e/f name the sides of a plain free product, u/v the sides of an
// amalgam of infinite cyclic groups, a/b abstract sides (silhouettes only).
// The printer emits canonical forms: single spaces, no zero exponents, tail
// omitted when trivial, "1" for the identity.

#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amalgam/formal_words.hpp"
#include "amalgam/normal_form.hpp"

namespace amalgam {

enum class WordAlphabet { EF, UV, AB };

struct ParsedWord {
  std::optional<WordAlphabet> alphabet;  // empty for "1" or a bare tail
  std::vector<RawLetter> letters;
  long long tail = 0;
  bool has_tail = false;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

inline long long parse_int(std::string_view s, std::string_view what) {
  if (s.empty()) throw std::invalid_argument(std::string(what) + ": missing integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument(std::string(what) + ": missing digits");
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument(std::string(what) + ": bad integer '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > (1LL << 60)) throw std::invalid_argument(std::string(what) + ": integer out of range");
  }
  return s[0] == '-' ? -v : v;
}

struct SideLetter {
  FactorSide side;
  WordAlphabet alphabet;
};

inline std::optional<SideLetter> side_of(char c) {
  switch (c) {
    case 'e': return SideLetter{FactorSide::Left, WordAlphabet::EF};
    case 'f': return SideLetter{FactorSide::Right, WordAlphabet::EF};
    case 'u': return SideLetter{FactorSide::Left, WordAlphabet::UV};
    case 'v': return SideLetter{FactorSide::Right, WordAlphabet::UV};
    case 'a': return SideLetter{FactorSide::Left, WordAlphabet::AB};
    case 'b': return SideLetter{FactorSide::Right, WordAlphabet::AB};
    default: return std::nullopt;
  }
}

inline char side_char(WordAlphabet alphabet, FactorSide side) {
  switch (alphabet) {
    case WordAlphabet::EF: return side == FactorSide::Left ? 'e' : 'f';
    case WordAlphabet::UV: return side == FactorSide::Left ? 'u' : 'v';
    case WordAlphabet::AB: return side == FactorSide::Left ? 'a' : 'b';
  }
  return '?';
}

}  // namespace detail

inline ParsedWord parse_syllable_word(std::string_view text) {
  ParsedWord out;
  std::vector<std::string> tokens = detail::split_ws(text);
  if (tokens.empty()) throw std::invalid_argument("empty word (use \"1\" for the identity)");
  std::size_t i = 0;
  bool saw_bar = false;
  if (tokens.size() == 1 && tokens[0] == "1") return out;
  for (; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "|") {
      saw_bar = true;
      ++i;
      break;
    }
    if (tok == "1" && out.letters.empty() && i == 0) continue;  // leading identity
    std::size_t colon = tok.find(':');
    if (colon != 1 || tok.size() < 3)
      throw std::invalid_argument("bad syllable token '" + tok + "' (expected side:exponent)");
    if (tok[0] == 'd') throw std::invalid_argument("tail must follow '|'");
    auto side = detail::side_of(tok[0]);
    if (!side) throw std::invalid_argument(std::string("unknown side letter '") + tok[0] + "'");
    if (out.alphabet && *out.alphabet != side->alphabet)
      throw std::invalid_argument("mixed alphabets in word '" + std::string(text) + "'");
    out.alphabet = side->alphabet;
    out.letters.push_back(RawLetter{side->side, detail::parse_int(tok.substr(2), "exponent")});
  }
  if (saw_bar) {
    if (i + 1 != tokens.size()) throw std::invalid_argument("expected exactly one tail after '|'");
    const std::string& tok = tokens[i];
    if (tok.rfind("d:", 0) != 0) throw std::invalid_argument("bad tail token '" + tok + "' (expected d:m)");
    out.tail = detail::parse_int(tok.substr(2), "tail");
    out.has_tail = true;
  } else if (i != tokens.size()) {
    throw std::invalid_argument("trailing tokens in word");
  }
  return out;
}

inline WordAlphabet alphabet_of(const AmalgamGroup& g) {
  return g.amalgam.is_trivial() ? WordAlphabet::EF : WordAlphabet::UV;
}

/// Evaluate a parsed word in a concrete group. The alphabet must match the
/// group kind (e/f for free products, u/v for amalgams of infinite cyclics).
inline NormalForm bind_word(const ParsedWord& w, const AmalgamGroup& g) {
  if (w.alphabet && *w.alphabet == WordAlphabet::AB)
    throw std::invalid_argument("abstract sides a/b cannot be evaluated in a concrete group");
  if (w.alphabet && *w.alphabet != alphabet_of(g))
    throw std::invalid_argument("word alphabet does not match the group");
  if (w.has_tail && g.amalgam.is_trivial() && w.tail != 0)
    throw std::invalid_argument("nontrivial tail in a free product");
  NormalForm nf = normalize(g, w.letters);
  if (w.has_tail) nf = multiply(nf, tail_element(g, w.tail));
  return nf;
}

inline NormalForm parse_normal_form(std::string_view text, const AmalgamGroup& g) {
  return bind_word(parse_syllable_word(text), g);
}

/// Canonical serialization; doubles as the dedup key of the search module.
inline std::string to_string(const NormalForm& x) {
  WordAlphabet alphabet = alphabet_of(x.group);
  std::string out;
  for (const Syllable& s : x.syllables) {
    if (!out.empty()) out += ' ';
    out += detail::side_char(alphabet, s.side);
    out += ':';
    out += std::to_string(s.exponent);
  }
  if (out.empty()) out = "1";
  if (x.tail != 0) out += " | d:" + std::to_string(x.tail);
  return out;
}

// ---------------------------------------------------------------------------
// Power words: alternating powers of named letters, e.g. "e^8 X^4 e^-2".

inline std::vector<PowerToken> parse_power_word(std::string_view text) {
  std::vector<PowerToken> out;
  for (const std::string& tok : detail::split_ws(text)) {
    std::size_t caret = tok.rfind('^');
    if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size())
      throw std::invalid_argument("bad power token '" + tok + "' (expected name^exponent)");
    out.push_back(PowerToken{tok.substr(0, caret),
                             detail::parse_int(std::string_view(tok).substr(caret + 1), "exponent")});
  }
  if (out.empty()) throw std::invalid_argument("empty power word");
  return out;
}

inline std::string to_string(const std::vector<PowerToken>& w) {
  std::string out;
  for (const PowerToken& t : w) {
    if (!out.empty()) out += ' ';
    out += t.letter + "^" + std::to_string(t.exponent);
  }
  return out.empty() ? std::string("1") : out;
}

// ---------------------------------------------------------------------------
// Formal words over (bc), (ac0) and c~.

inline FormalWord parse_formal_word(std::string_view text, long long m) {
  if (m < 1) throw std::invalid_argument("formal word: central power m must be >= 1");
  FormalWord w;
  w.m = m;
  std::vector<std::string> tokens = detail::split_ws(text);
  if (tokens.size() == 1 && tokens[0] == "1") return w;
  for (const std::string& tok : tokens) {
    std::size_t caret = tok.rfind('^');
    if (caret == std::string::npos || caret + 1 == tok.size())
      throw std::invalid_argument("bad formal token '" + tok + "'");
    std::string name = tok.substr(0, caret);
    long long exp = detail::parse_int(std::string_view(tok).substr(caret + 1), "exponent");
    if (name == "(bc)") {
      append_power(w, exp);
    } else if (name == "(ac0)") {
      append_block_factor(w, FormalSymbol::AcZero, exp);
    } else if (name == "c~") {
      append_block_factor(w, FormalSymbol::CTilde, exp);
    } else {
      throw std::invalid_argument("unknown formal letter '" + name + "'");
    }
  }
  return w;
}

inline std::string to_string(const FormalWord& w) {
  std::string out;
  auto emit = [&out](const std::string& name, long long exp) {
    if (!out.empty()) out += ' ';
    out += name + "^" + std::to_string(exp);
  };
  for (const Phrase& phrase : w.phrases) {
    if (const BcPower* p = std::get_if<BcPower>(&phrase)) {
      emit("(bc)", p->exponent);
    } else {
      for (const BlockFactor& f : std::get<Block>(phrase).factors)
        emit(f.symbol == FormalSymbol::AcZero ? "(ac0)" : "c~", f.exponent);
    }
  }
  return out.empty() ? std::string("1") : out;
}

/// Begin/end/length silhouette of a parsed word (used by the pair
/// classifier; exponent values are irrelevant, zero exponents rejected).
inline NormalFormShape shape_of(const ParsedWord& w) {
  NormalFormShape shape;
  shape.length = 0;
  std::optional<FactorSide> prev;
  for (const RawLetter& letter : w.letters) {
    if (letter.exponent == 0) throw std::invalid_argument("shape: zero exponent syllable");
    if (prev && *prev == letter.side) throw std::invalid_argument("shape: adjacent syllables on one side");
    prev = letter.side;
    ++shape.length;
    if (!shape.begin) shape.begin = letter.side;
    shape.end = letter.side;
  }
  return shape;
}

}  // namespace amalgam
