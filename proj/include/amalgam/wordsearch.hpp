#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amalgam/normal_form.hpp"
#include "amalgam/torus_knot.hpp"
#include "amalgam/wordio.hpp"

namespace amalgam {

struct SearchBudget {
  long long max_expression_length = 1;  // generator letters per expression
  long long max_normal_length = 1;      // syllable cap for retained elements
};

/// One letter of a witness expression: generators[index]^sign.
struct WitnessLetter {
  std::size_t index;
  int sign;  // +1 or -1

  friend bool operator==(const WitnessLetter&, const WitnessLetter&) = default;
};

inline std::string to_string(std::span<const WitnessLetter> witness) {
  if (witness.empty()) return "1";
  std::string out;
  for (const WitnessLetter& l : witness) {
    if (!out.empty()) out += ' ';
    out += "g" + std::to_string(l.index + 1);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

struct SearchReport {
  enum class Status { Found, ExhaustedBudget };
  Status status = Status::ExhaustedBudget;
  std::string target;                   // canonical serialization
  std::vector<WitnessLetter> witness;   // present when Found; shortest by letters
  std::size_t ball_size = 0;            // retained distinct elements
  std::vector<std::size_t> frontier_profile;  // new elements per letter count
  SearchBudget budget;
};

inline std::string to_string(const SearchReport& r) {
  std::string out = "target=" + r.target;
  out += r.status == SearchReport::Status::Found ? " status=found" : " status=exhausted-budget";
  if (r.status == SearchReport::Status::Found)
    out += " witness=" + to_string(std::span<const WitnessLetter>(r.witness)) +
           " letters=" + std::to_string(r.witness.size());
  out += " ball=" + std::to_string(r.ball_size) + " budget=" +
         std::to_string(r.budget.max_expression_length) + "," +
         std::to_string(r.budget.max_normal_length);
  out += " profile=";
  for (std::size_t i = 0; i < r.frontier_profile.size(); ++i) {
    if (i) out += '/';
    out += std::to_string(r.frontier_profile[i]);
  }
  // Elements whose every spelling passes through a normal form longer than
  // the retention cap are not enumerated.
  out += " note=retention-capped";
  return out;
}

/// Breadth-first ball of the subgroup generated by the given elements:
/// every product of at most max_expression_length generators or inverses,
/// retained (and expanded) only while the normal length stays within
/// max_normal_length. Deterministic: elements are discovered in level order,
/// within a level in frontier order, within an element in alphabet order
/// (g1, g1^-1, g2, g2^-1, ...).
struct Ball {
  std::vector<NormalForm> elements;               // discovery order; [0] is the identity
  std::vector<std::vector<WitnessLetter>> spelling;  // minimal-letter expression
  std::vector<std::size_t> expression_length;
  std::vector<std::size_t> profile;  // new elements per level, level 0 first
};

namespace detail {

struct BallBuilder {
  const AmalgamGroup& group;
  std::vector<NormalForm> alphabet;        // g1, g1^-1, g2, g2^-1, ...
  std::vector<WitnessLetter> alphabet_letter;
  std::unordered_map<std::string, std::size_t> seen;
  Ball ball;

  BallBuilder(const AmalgamGroup& g, std::span<const NormalForm> generators) : group(g) {
    if (generators.empty()) throw std::invalid_argument("search: no generators");
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].group != g) throw std::invalid_argument("search: generator group mismatch");
      if (is_identity(generators[i]))
        throw std::invalid_argument("search: generators must be nontrivial");
      alphabet.push_back(generators[i]);
      alphabet_letter.push_back(WitnessLetter{i, +1});
      alphabet.push_back(invert(generators[i]));
      alphabet_letter.push_back(WitnessLetter{i, -1});
    }
  }

  // Returns the index of the element, or npos if it was pruned.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t visit(NormalForm nf, std::vector<WitnessLetter> spelling, long long cap) {
    if (static_cast<long long>(length(nf)) > cap) return npos;
    std::string key = to_string(nf);
    auto [it, inserted] = seen.emplace(std::move(key), ball.elements.size());
    if (!inserted) return it->second;
    ball.elements.push_back(std::move(nf));
    ball.expression_length.push_back(spelling.size());
    ball.spelling.push_back(std::move(spelling));
    return ball.elements.size() - 1;
  }
};

}  // namespace detail

inline Ball enumerate_ball(const AmalgamGroup& g, std::span<const NormalForm> generators,
                           const SearchBudget& budget) {
  if (budget.max_expression_length < 1 || budget.max_normal_length < 1)
    throw std::invalid_argument("search: budget components must be >= 1");
  detail::BallBuilder b(g, generators);
  b.visit(identity(g), {}, budget.max_normal_length);
  b.ball.profile.push_back(1);
  std::size_t level_begin = 0;
  for (long long level = 1; level <= budget.max_expression_length; ++level) {
    std::size_t level_end = b.ball.elements.size();
    if (level_begin == level_end) break;  // frontier empty
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t a = 0; a < b.alphabet.size(); ++a) {
        NormalForm next = multiply(b.ball.elements[i], b.alphabet[a]);
        std::vector<WitnessLetter> spelling = b.ball.spelling[i];
        spelling.push_back(b.alphabet_letter[a]);
        b.visit(std::move(next), std::move(spelling), budget.max_normal_length);
      }
    }
    b.ball.profile.push_back(b.ball.elements.size() - level_end);
    level_begin = level_end;
  }
  return std::move(b.ball);
}

inline SearchReport membership(const AmalgamGroup& g, std::span<const NormalForm> generators,
                               const NormalForm& target, const SearchBudget& budget) {
  if (target.group != g) throw std::invalid_argument("membership: target group mismatch");
  Ball ball = enumerate_ball(g, generators, budget);
  SearchReport report;
  report.target = to_string(target);
  report.budget = budget;
  report.ball_size = ball.elements.size();
  report.frontier_profile = ball.profile;
  std::string key = to_string(target);
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    if (to_string(ball.elements[i]) == key) {
      report.status = SearchReport::Status::Found;
      report.witness = ball.spelling[i];
      break;
    }
  }
  return report;
}

inline std::vector<SearchReport> membership_multi(const AmalgamGroup& g,
                                                  std::span<const NormalForm> generators,
                                                  std::span<const NormalForm> targets,
                                                  const SearchBudget& budget) {
  Ball ball = enumerate_ball(g, generators, budget);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) index.emplace(to_string(ball.elements[i]), i);
  std::vector<SearchReport> reports;
  for (const NormalForm& target : targets) {
    if (target.group != g) throw std::invalid_argument("membership: target group mismatch");
    SearchReport report;
    report.target = to_string(target);
    report.budget = budget;
    report.ball_size = ball.elements.size();
    report.frontier_profile = ball.profile;
    auto it = index.find(report.target);
    if (it != index.end()) {
      report.status = SearchReport::Status::Found;
      report.witness = ball.spelling[it->second];
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Meridian-power non-generation sweep: can {h(bc), x^k} reach x^j, 1<=j<k?

struct MeridianPowerRun {
  NormalForm hbc;          // the swept base element (possibly conjugated)
  long long target_power;  // j
  SearchReport report;
};

/// For every nontrivial free-factor element e (optionally conjugated to
/// g e g^-1), search for the targets x^j, 1 <= j < k, in the subgroup
/// generated by {h(bc), x^k} of Z_p * Z_q. Consistency means every report
/// exhausts its budget; a Found report is a counterexample witness.
inline std::vector<MeridianPowerRun> meridian_power_search(
    long long p, long long q, long long k, const std::optional<NormalForm>& conjugator,
    const SearchBudget& budget) {
  if (k < 2) throw std::invalid_argument("meridian_power_search: k must be >= 2");
  TorusKnotGroup tk = torus_group(p, q);
  AmalgamGroup fp = seifert_quotient_group(tk);
  if (conjugator && conjugator->group != fp)
    throw std::invalid_argument("meridian_power_search: conjugator group mismatch");
  NormalForm x = seifert_quotient(tk, meridian(tk));
  NormalForm xk = power(x, k);

  std::vector<NormalForm> targets;
  for (long long j = 1; j < k; ++j) targets.push_back(power(x, j));

  std::vector<NormalForm> bases;
  for (long long e = 1; e < p; ++e) bases.push_back(factor_letter(fp, FactorSide::Left, e));
  for (long long f = 1; f < q; ++f) bases.push_back(factor_letter(fp, FactorSide::Right, f));

  std::vector<MeridianPowerRun> runs;
  for (const NormalForm& base : bases) {
    NormalForm hbc = base;
    if (conjugator) hbc = multiply(multiply(*conjugator, base), invert(*conjugator));
    if (hbc == xk) continue;  // degenerate generating set {x^k, x^k}
    std::vector<NormalForm> generators{hbc, xk};
    std::vector<SearchReport> reports =
        membership_multi(fp, generators, targets, budget);
    for (std::size_t t = 0; t < reports.size(); ++t)
      runs.push_back(MeridianPowerRun{hbc, static_cast<long long>(t + 1), std::move(reports[t])});
  }
  return runs;
}

// ---------------------------------------------------------------------------
// Factor generation check: the Left-side transversals appearing in a
// generating set, together with the amalgamated subgroup, generate the Left
// factor.

/// Extract the Left transversal exponents, adjoin the subgroup embedding
/// exponent, and verify by bounded sums that every Left-factor element in
/// the window is reached. Found = every element reached; otherwise the
/// report's target field names the first unreached element.
inline SearchReport transversal_generation_check(const AmalgamGroup& g,
                                                 std::span<const NormalForm> generators,
                                                 const SearchBudget& budget) {
  if (budget.max_expression_length < 1 || budget.max_normal_length < 1)
    throw std::invalid_argument("search: budget components must be >= 1");
  std::vector<long long> steps;
  for (const NormalForm& gen : generators) {
    if (gen.group != g) throw std::invalid_argument("generation check: generator group mismatch");
    for (const Syllable& s : gen.syllables)
      if (s.side == FactorSide::Left) steps.push_back(s.exponent);
  }
  if (!g.amalgam.is_trivial()) steps.push_back(g.left_index);  // d embeds as u^index

  // Reachable exponent sums in the Left factor, one step per letter. Sums
  // are allowed to overshoot the queried window by one step magnitude.
  const CyclicGroup& factor = g.left;
  long long window = budget.max_normal_length;
  long long slack = 1;
  for (long long step : steps) slack = std::max(slack, step < 0 ? -step : step);
  std::unordered_map<long long, bool> reached;
  reached.emplace(0, true);
  std::vector<long long> frontier{0};
  std::vector<std::size_t> profile{1};
  for (long long level = 1; level <= budget.max_expression_length && !frontier.empty(); ++level) {
    std::vector<long long> next;
    for (long long value : frontier) {
      for (long long step : steps) {
        for (long long delta : {step, -step}) {
          long long v = factor.canon(value + delta);
          if (factor.is_infinite() && (v > window + slack || v < -window - slack))
            continue;  // beyond every target we will ever query
          if (reached.emplace(v, true).second) next.push_back(v);
        }
      }
    }
    profile.push_back(next.size());
    frontier = std::move(next);
  }

  SearchReport report;
  report.budget = budget;
  report.ball_size = reached.size();
  report.frontier_profile = std::move(profile);
  report.status = SearchReport::Status::Found;

  auto unreached = [&](long long value) { return reached.find(factor.canon(value)) == reached.end(); };
  if (factor.is_infinite()) {
    for (long long t = 1; t <= window; ++t) {
      for (long long value : {t, -t}) {
        if (unreached(value)) {
          report.status = SearchReport::Status::ExhaustedBudget;
          report.target = to_string(factor_letter(g, FactorSide::Left, value));
          return report;
        }
      }
    }
  } else {
    for (long long t = 1; t < factor.modulus; ++t) {
      if (unreached(t)) {
        report.status = SearchReport::Status::ExhaustedBudget;
        report.target = to_string(factor_letter(g, FactorSide::Left, t));
        return report;
      }
    }
  }
  return report;
}

}  // namespace amalgam
