#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "amalgam/wordsearch.hpp"
#include "test_util.hpp"

using namespace amalgam;

namespace {

std::set<std::string> keys(const Ball& ball) {
  std::set<std::string> out;
  for (const NormalForm& nf : ball.elements) out.insert(to_string(nf));
  return out;
}

/// Naive depth-first oracle: evaluate every expression of at most depth
/// letters, filtering on the final normal length only at the end. Agrees
/// with the BFS when no path needs an intermediate beyond the cap.
void dfs_oracle(const AmalgamGroup& g, const std::vector<NormalForm>& alphabet,
                const NormalForm& current, long long depth, long long cap,
                std::set<std::string>* out) {
  if (static_cast<long long>(length(current)) <= cap) out->insert(to_string(current));
  if (depth == 0) return;
  for (const NormalForm& a : alphabet) dfs_oracle(g, alphabet, multiply(current, a), depth - 1, cap, out);
}

NormalForm word(const AmalgamGroup& g, std::initializer_list<RawLetter> raw) {
  return normalize(g, std::vector<RawLetter>(raw));
}

}  // namespace

TEST_SUITE("wordsearch") {
  TEST_CASE("ball worked examples") {
    AmalgamGroup g = free_product(2, 3);
    NormalForm e = word(g, {{FactorSide::Left, 1}});
    NormalForm f = word(g, {{FactorSide::Right, 1}});

    Ball ball = enumerate_ball(g, std::vector<NormalForm>{e}, SearchBudget{4, 4});
    CHECK(keys(ball) == std::set<std::string>{"1", "e:1"});

    ball = enumerate_ball(g, std::vector<NormalForm>{e, f}, SearchBudget{2, 2});
    CHECK(keys(ball) == std::set<std::string>{"1", "e:1", "f:1", "f:2", "e:1 f:1", "e:1 f:2",
                                              "f:1 e:1", "f:2 e:1"});
    CHECK(ball.profile == std::vector<std::size_t>{1, 3, 4});
  }

  TEST_CASE("ball agrees with the depth-first oracle at small budgets") {
    for (const AmalgamGroup& g : {free_product(2, 3), cyclic_amalgam(2, 3)}) {
      NormalForm a = word(g, {{FactorSide::Left, 1}});
      NormalForm b = word(g, {{FactorSide::Right, 1}});
      std::vector<NormalForm> gens{a, b};
      std::vector<NormalForm> alphabet{a, invert(a), b, invert(b)};
      Ball ball = enumerate_ball(g, gens, SearchBudget{4, 4});
      std::set<std::string> expected;
      dfs_oracle(g, alphabet, identity(g), 4, 4, &expected);
      CHECK(keys(ball) == expected);
    }
  }

  TEST_CASE("ball grows monotonically in the budget") {
    AmalgamGroup g = free_product(3, 5);
    std::vector<NormalForm> gens{word(g, {{FactorSide::Left, 1}, {FactorSide::Right, 2}}),
                                 word(g, {{FactorSide::Right, 1}})};
    Ball base = enumerate_ball(g, gens, SearchBudget{4, 6});
    for (SearchBudget bigger : {SearchBudget{5, 6}, SearchBudget{4, 8}, SearchBudget{6, 10}}) {
      Ball grown = enumerate_ball(g, gens, bigger);
      std::set<std::string> small = keys(base), large = keys(grown);
      CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
  }

  TEST_CASE("ball is deterministic") {
    AmalgamGroup g = free_product(3, 4);
    std::vector<NormalForm> gens{word(g, {{FactorSide::Left, 2}}),
                                 word(g, {{FactorSide::Right, 1}, {FactorSide::Left, 1}})};
    Ball a = enumerate_ball(g, gens, SearchBudget{5, 8});
    Ball b = enumerate_ball(g, gens, SearchBudget{5, 8});
    CHECK(a.elements == b.elements);
    CHECK(a.profile == b.profile);
  }

  TEST_CASE("membership finds shortest witnesses and re-evaluates them") {
    AmalgamGroup g = free_product(2, 3);
    NormalForm e = word(g, {{FactorSide::Left, 1}});
    NormalForm f = word(g, {{FactorSide::Right, 1}});
    std::vector<NormalForm> gens{e, f};

    SearchReport r = membership(g, gens, identity(g), SearchBudget{4, 4});
    CHECK(r.status == SearchReport::Status::Found);
    CHECK(r.witness.empty());

    NormalForm target = power(word(g, {{FactorSide::Left, 1}, {FactorSide::Right, 1}}), 3);
    r = membership(g, gens, target, SearchBudget{8, 8});
    REQUIRE(r.status == SearchReport::Status::Found);
    CHECK(r.witness.size() == 6);
    NormalForm eval = identity(g);
    for (const WitnessLetter& l : r.witness)
      eval = multiply(eval, l.sign > 0 ? gens[l.index] : invert(gens[l.index]));
    CHECK(eval == target);
  }

  TEST_CASE("membership exhausts on a non-generating pair") {
    AmalgamGroup g = free_product(2, 3);
    NormalForm e = word(g, {{FactorSide::Left, 1}});
    NormalForm ef = word(g, {{FactorSide::Left, 1}, {FactorSide::Right, 1}});
    std::vector<NormalForm> gens{e, power(ef, 2)};
    SearchReport r = membership(g, gens, ef, SearchBudget{10, 10});
    CHECK(r.status == SearchReport::Status::ExhaustedBudget);
  }

  TEST_CASE("meridian power sweep on the smallest cases") {
    auto runs = meridian_power_search(2, 3, 2, std::nullopt, SearchBudget{10, 16});
    CHECK(!runs.empty());
    for (const MeridianPowerRun& run : runs)
      CHECK(run.report.status == SearchReport::Status::ExhaustedBudget);

    runs = meridian_power_search(2, 3, 3, std::nullopt, SearchBudget{8, 16});
    std::set<long long> targets;
    for (const MeridianPowerRun& run : runs) {
      targets.insert(run.target_power);
      CHECK(run.report.status == SearchReport::Status::ExhaustedBudget);
    }
    CHECK(targets == std::set<long long>{1, 2});
  }

  TEST_CASE("meridian power sweep with a conjugator") {
    AmalgamGroup fp = free_product(3, 5);
    NormalForm conj = word(fp, {{FactorSide::Right, 1}});
    auto runs = meridian_power_search(3, 5, 2, conj, SearchBudget{8, 16});
    CHECK(!runs.empty());
    for (const MeridianPowerRun& run : runs)
      CHECK(run.report.status == SearchReport::Status::ExhaustedBudget);
  }

  TEST_CASE("generation check worked examples") {
    // Trefoil group, generator u v: the u transversal plus d generate <u>.
    AmalgamGroup t = cyclic_amalgam(2, 3);
    NormalForm uv = word(t, {{FactorSide::Left, 1}, {FactorSide::Right, 1}});
    SearchReport r = transversal_generation_check(t, std::vector<NormalForm>{uv}, SearchBudget{8, 6});
    CHECK(r.status == SearchReport::Status::Found);

    // Free product, generator e f: S_A = {e} generates Z_2.
    AmalgamGroup fp = free_product(2, 3);
    NormalForm ef = word(fp, {{FactorSide::Left, 1}, {FactorSide::Right, 1}});
    r = transversal_generation_check(fp, std::vector<NormalForm>{ef}, SearchBudget{4, 4});
    CHECK(r.status == SearchReport::Status::Found);

    // No Left syllables and trivial subgroup: nothing can be reached.
    NormalForm f = word(fp, {{FactorSide::Right, 1}});
    r = transversal_generation_check(fp, std::vector<NormalForm>{f}, SearchBudget{4, 4});
    CHECK(r.status == SearchReport::Status::ExhaustedBudget);
    CHECK(r.target == "e:1");
  }

  TEST_CASE("generation check needs the subgroup step") {
    // In T(3,5) the generator u^1 v^1 yields S_A = {u}; together with d = u^3
    // it spans all of <u>, but alone (trivial subgroup in the free product
    // over the same letters) exponent 2 is out of reach in two letters.
    AmalgamGroup t = cyclic_amalgam(3, 5);
    NormalForm uv = word(t, {{FactorSide::Left, 1}, {FactorSide::Right, 1}});
    SearchReport r = transversal_generation_check(t, std::vector<NormalForm>{uv}, SearchBudget{10, 4});
    CHECK(r.status == SearchReport::Status::Found);
  }

  TEST_CASE("input validation") {
    AmalgamGroup g = free_product(2, 3);
    NormalForm e = word(g, {{FactorSide::Left, 1}});
    CHECK_THROWS_AS(enumerate_ball(g, std::vector<NormalForm>{}, SearchBudget{2, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_ball(g, std::vector<NormalForm>{identity(g)}, SearchBudget{2, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_ball(g, std::vector<NormalForm>{e}, SearchBudget{0, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(meridian_power_search(2, 3, 1, std::nullopt, SearchBudget{2, 2}),
                    std::invalid_argument);
  }
}
