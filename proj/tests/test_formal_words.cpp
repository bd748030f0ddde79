#include <doctest.h>

#include <random>

#include "amalgam/formal_words.hpp"
#include "amalgam/random.hpp"
#include "amalgam/wordio.hpp"

using namespace amalgam;

namespace {

FormalWord random_formal_word(std::mt19937_64& rng, long long m) {
  FormalWord w;
  w.m = m;
  long long tokens = uniform_int(rng, 1, 12);
  for (long long i = 0; i < tokens; ++i) {
    long long exp = uniform_nonzero(rng, -2 * m, 2 * m);
    switch (uniform_int(rng, 0, 2)) {
      case 0: append_power(w, exp); break;
      case 1: append_block_factor(w, FormalSymbol::AcZero, exp); break;
      default: append_block_factor(w, FormalSymbol::CTilde, exp); break;
    }
  }
  return w;
}

bool canonical_invariants_hold(const FormalWord& w) {
  for (std::size_t i = 0; i < w.phrases.size(); ++i) {
    if (const BcPower* p = std::get_if<BcPower>(&w.phrases[i])) {
      if (p->exponent == 0 || p->exponent % w.m == 0) return false;
      if (i + 1 < w.phrases.size() && std::holds_alternative<BcPower>(w.phrases[i + 1]))
        return false;
    } else {
      const Block& b = std::get<Block>(w.phrases[i]);
      if (b.factors.empty()) return false;
      for (std::size_t f = 0; f < b.factors.size(); ++f) {
        if (b.factors[f].exponent == 0) return false;
        if (f + 1 < b.factors.size() && b.factors[f].symbol == b.factors[f + 1].symbol)
          return false;
      }
      if (i + 1 < w.phrases.size() && std::holds_alternative<Block>(w.phrases[i + 1])) return false;
      if (i > 0 && b.pure_ctilde()) return false;  // pure blocks bubble to the front
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("formal_words") {
  TEST_CASE("rewriting worked examples") {
    FormalWord w = parse_formal_word("(bc)^4", 2);
    CHECK(to_string(canonicalize(w)) == "c~^2");

    w = parse_formal_word("(bc)^1 (ac0)^1 (bc)^2 (ac0)^1 (bc)^1", 2);
    CHECK(to_string(canonicalize(w)) == "(bc)^1 (ac0)^1 c~^1 (ac0)^1 (bc)^1");

    w = parse_formal_word("(bc)^1 c~^1 (bc)^2", 3);
    CHECK(to_string(canonicalize(w)) == "c~^2");
  }

  TEST_CASE("rewriting terminates, is idempotent and lands in a legal shape") {
    for (long long m : {2LL, 3LL, 5LL}) {
      std::mt19937_64 rng(41 + static_cast<unsigned long long>(m));
      for (int trial = 0; trial < 10000; ++trial) {
        FormalWord w = random_formal_word(rng, m);
        FormalWord c = canonicalize(w);
        CHECK(canonical_invariants_hold(c));
        CHECK(canonicalize(c) == c);
        // Only PureCentral and BeginsBlock fixed points can represent
        // subgroup elements; anything else starts with a surviving bc-power.
        FixedPointShape shape = fixed_point_shape(c);
        if (shape == FixedPointShape::BeginsPower) {
          CHECK(std::holds_alternative<BcPower>(c.phrases.front()));
          CHECK(std::get<BcPower>(c.phrases.front()).exponent % m != 0);
          for (std::size_t i = 1; i < c.phrases.size(); ++i)
            if (const Block* b = std::get_if<Block>(&c.phrases[i])) CHECK(!b->pure_ctilde());
        }
      }
    }
  }

  TEST_CASE("p-sequence worked example") {
    auto word = parse_power_word("e^8 X^4 e^-2 X^227 e^1 X^-88 e^1 X^1");
    PSequence ps = p_sequence(word);
    CHECK(ps.values == std::vector<long long>{4, 227, -88, 1});
    CHECK(ps.sigma == 2);
  }

  TEST_CASE("p-sequence edges") {
    PSequence ps = p_sequence(parse_power_word("X^5"));
    CHECK(ps.values == std::vector<long long>{5});
    CHECK(ps.sigma == 0);

    ps = p_sequence(parse_power_word("X^1 e^1 X^-1 e^1 X^1"));
    CHECK(ps.values == std::vector<long long>{1, -1, 1});
    CHECK(ps.sigma == 2);

    CHECK_THROWS_AS(p_sequence(parse_power_word("e^2 e^3")), std::invalid_argument);
    CHECK_THROWS_AS(p_sequence(parse_power_word("e^2 f^1 X^3")), std::invalid_argument);
    CHECK_THROWS_AS(p_sequence(parse_power_word("e^2")), std::invalid_argument);
    CHECK_THROWS_AS(p_sequence(parse_power_word("X^0 e^1")), std::invalid_argument);
  }

  TEST_CASE("sigma bound on random alternating words") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 5000; ++trial) {
      long long j = uniform_int(rng, 1, 8);
      std::vector<PowerToken> word;
      for (long long i = 0; i < j; ++i) {
        word.push_back(PowerToken{"X", uniform_nonzero(rng, -9, 9)});
        if (i + 1 < j) word.push_back(PowerToken{"e", uniform_nonzero(rng, -9, 9)});
      }
      PSequence ps = p_sequence(word);
      CHECK(ps.sigma >= 0);
      CHECK(ps.sigma <= j - 1);
      CHECK(static_cast<long long>(ps.values.size()) == j);
    }
  }

  TEST_CASE("p-sequence of a formal word") {
    FormalWord w = parse_formal_word("(bc)^2 (ac0)^3 (bc)^-1 (ac0)^-4 (bc)^5", 7);
    PSequence ps = p_sequence(w);
    CHECK(ps.values == std::vector<long long>{3, -4});
    CHECK(ps.sigma == 1);
    CHECK_THROWS_AS(p_sequence(parse_formal_word("(bc)^2 c~^1", 7)), std::invalid_argument);
  }

  TEST_CASE("pair classification covers every type") {
    const FactorSide A = FactorSide::Left;
    const FactorSide B = FactorSide::Right;
    auto shape = [](long long len, FactorSide begin, FactorSide end) {
      return NormalFormShape{len, begin, end};
    };
    NormalFormShape trivial{0, std::nullopt, std::nullopt};

    CHECK(classify_pair(shape(1, A, A), shape(1, B, B)) == PairType::p1);
    CHECK(classify_pair(trivial, shape(2, A, B)) == PairType::p2);
    CHECK(classify_pair(shape(1, B, B), shape(2, A, B)) == PairType::p3);
    CHECK(classify_pair(shape(1, B, B), shape(3, A, A)) == PairType::p4);
    CHECK(classify_pair(shape(1, A, A), shape(3, A, A)) == PairType::q2);
    CHECK(classify_pair(shape(1, A, A), shape(5, A, A)) == PairType::q2);
    CHECK(classify_pair(shape(1, A, A), shape(2, A, B)) == PairType::q3);
    CHECK(classify_pair(shape(1, A, A), shape(4, A, B)) == PairType::q3);
    CHECK(classify_pair(shape(1, A, A), shape(4, B, A)) == PairType::q4);
    CHECK(classify_pair(shape(1, A, A), shape(3, B, B)) == PairType::q5);
    CHECK(classify_pair(shape(1, A, A), shape(1, A, A)) == PairType::other);
    CHECK(classify_pair(shape(2, A, B), shape(2, A, B)) == PairType::other);
    CHECK(classify_pair(trivial, trivial) == PairType::other);
  }

  TEST_CASE("inverting the second element turns q4 into q3") {
    const FactorSide A = FactorSide::Left;
    const FactorSide B = FactorSide::Right;
    for (long long k = 1; k <= 5; ++k) {
      NormalFormShape g1{1, A, A};
      NormalFormShape g2{2 * k, B, A};
      CHECK(classify_pair(g1, g2) == PairType::q4);
      CHECK(classify_pair(g1, inverted(g2)) == PairType::q3);
    }
  }
}
