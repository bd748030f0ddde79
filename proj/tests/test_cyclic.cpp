#include <doctest.h>

#include "amalgam/cyclic.hpp"

using namespace amalgam;

TEST_SUITE("cyclic") {
  TEST_CASE("canonical arithmetic") {
    CyclicGroup z3{3};
    CHECK(cyclic_multiply(make_element(z3, 2), make_element(z3, 2)).value == 1);
    CyclicGroup z{0};
    CHECK(cyclic_multiply(make_element(z, 5), make_element(z, -5)).value == 0);
    CyclicGroup z2{2};
    CHECK(cyclic_multiply(make_element(z2, 1), make_element(z2, 1)).value == 0);
    CHECK(make_element(z3, -1).value == 2);
    CHECK(make_element(z, -7).value == -7);
  }

  TEST_CASE("group mismatch") {
    CHECK_THROWS_AS(cyclic_multiply(make_element(CyclicGroup{2}, 1), make_element(CyclicGroup{3}, 1)),
                    std::invalid_argument);
  }

  TEST_CASE("orders") {
    CHECK(cyclic_order(make_element(CyclicGroup{6}, 4)) == 3);
    CHECK(cyclic_order(make_element(CyclicGroup{6}, 1)) == 6);
    CHECK(cyclic_order(make_element(CyclicGroup{0}, 2)) == 0);
    CHECK(cyclic_order(make_element(CyclicGroup{0}, 0)) == 1);
  }

  TEST_CASE("transversal decomposition") {
    auto d = transversal_decompose(make_element(CyclicGroup{0}, 5), EmbeddingSpec{2});
    CHECK(d.transversal.value == 1);
    CHECK(d.tail.value == 2);
    d = transversal_decompose(make_element(CyclicGroup{0}, -1), EmbeddingSpec{2});
    CHECK(d.transversal.value == 1);
    CHECK(d.tail.value == -1);
    d = transversal_decompose(make_element(CyclicGroup{0}, 4), EmbeddingSpec{2});
    CHECK(d.transversal.value == 0);
    CHECK(d.tail.value == 2);
    CHECK_THROWS_AS(transversal_decompose(make_element(CyclicGroup{5}, 2), EmbeddingSpec{2}),
                    std::invalid_argument);
  }

  TEST_CASE("decomposition round-trips and is unique") {
    for (long long k = 2; k <= 7; ++k) {
      EmbeddingSpec emb{k};
      for (long long g = -100; g <= 100; ++g) {
        TransversalSplit s = transversal_split(g, emb);
        CHECK(s.transversal >= 0);
        CHECK(s.transversal < k);
        CHECK(s.transversal + k * s.tail == g);
        TransversalSplit again = transversal_split(g, emb);
        CHECK(again.transversal == s.transversal);
        CHECK(again.tail == s.tail);
      }
    }
  }
}
