// amalgam: normal-form arithmetic in free products with amalgamation,
// torus knot groups and their fibre quotients, length-bound audits and
// bounded subgroup search. See README.md for the word grammar.
//
// Exit status: 0 on success (and on results consistent with the expected
// non-generation / bound behaviour); 2 when a search or audit produces a
// counterexample finding; 1 on usage or parse errors.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amalgam/bounds.hpp"
#include "amalgam/formal_words.hpp"
#include "amalgam/normal_form.hpp"
#include "amalgam/torus_knot.hpp"
#include "amalgam/wordio.hpp"
#include "amalgam/wordsearch.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct Options {
  long long p = 2;
  long long q = 3;
  long long k = 2;
  long long m = 2;
  long long trials = 10000;
  long long max_j = 4;
  std::uint64_t seed = kDefaultSeed;
  std::string budget = "8,16";
  std::string out_mode = "text";
};

amalgam::SearchBudget parse_budget(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--budget", "expected L,N (letters, normal length)");
  return amalgam::SearchBudget{std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
}

// The group is inferred from the word alphabet: e/f words live in Z_p * Z_q,
// u/v words in the torus knot group.
amalgam::AmalgamGroup group_for(const amalgam::ParsedWord& w, long long p, long long q) {
  using namespace amalgam;
  if (!w.alphabet || *w.alphabet == WordAlphabet::EF) {
    if (w.has_tail && w.tail != 0)
      return torus_group(p, q).group;  // bare tail word: amalgam context
    return free_product(p, q);
  }
  if (*w.alphabet == WordAlphabet::UV) return torus_group(p, q).group;
  throw std::invalid_argument("abstract a/b words cannot be evaluated");
}

// Report commands open with a header carrying the seed. Text mode prefixes
// it with '#'; structured mode emits it as a plain record so the stream is
// line-delimited key=value throughout.
void print_header(const Options& opt, const std::string& cmd) {
  if (opt.out_mode == "structured")
    std::cout << "header cmd=" << cmd << " seed=" << opt.seed << "\n";
  else
    std::cout << "# amalgam " << cmd << " seed=" << opt.seed << "\n";
}

// A lone "-" reads the word from standard input.
std::string read_word(const std::string& arg) {
  if (arg != "-") return arg;
  std::string line, all;
  while (std::getline(std::cin, line)) {
    if (!all.empty()) all += ' ';
    all += line;
  }
  return all;
}

int run_sigma(const std::string& word) {
  auto tokens = amalgam::parse_power_word(word);
  amalgam::PSequence ps = amalgam::p_sequence(tokens);
  std::string values;
  for (std::size_t i = 0; i < ps.values.size(); ++i) {
    if (i) values += ", ";
    values += std::to_string(ps.values[i]);
  }
  std::cout << "P = [" << values << "]; sigma = " << ps.sigma << "\n";
  return 0;
}

int run_bound(const std::string& family, long long k, long long j, long long sigma,
              std::optional<long long> n, long long eps_first, long long eps_last) {
  using namespace amalgam;
  BoundCase c;
  if (family == "free") {
    c = BoundCase{BoundFamily::FreeFactor, std::nullopt, SigmaBranch::Even};
  } else if (family == "conj-ii") {
    c = BoundCase{BoundFamily::Conjugate, ConjugateShape::ShapeII, SigmaBranch::Even};
  } else if (family == "conj-iv") {
    c = BoundCase{BoundFamily::Conjugate, ConjugateShape::ShapeIV, SigmaBranch::Even};
  } else {
    throw std::invalid_argument("unknown family '" + family + "' (free, conj-ii, conj-iv)");
  }
  c.branch = sigma % 2 == 0 ? SigmaBranch::Even : SigmaBranch::OddMorePlusMinus;
  BoundInputs in{k, j, n, sigma, eps_first, eps_last};
  long long weakest = lower_bound(c, in);
  if (sigma % 2 == 1) {
    c.branch = SigmaBranch::OddMoreMinusPlus;
    weakest = std::min(weakest, lower_bound(c, in));
  }
  std::cout << "bound=" << weakest << " uncancelled=" << uncancelled_length(in) << "\n";
  return 0;
}

int run_junctions() {
  using namespace amalgam;
  auto row = [](const std::string& name, const BoundCase& c) {
    std::cout << name << ": ++:" << junction_reduction(1, 1, c)
              << " --:" << junction_reduction(-1, -1, c) << " +-:" << junction_reduction(1, -1, c)
              << " -+:" << junction_reduction(-1, 1, c) << "\n";
  };
  row("free-factor", BoundCase{BoundFamily::FreeFactor, std::nullopt, SigmaBranch::Even});
  row("conjugate-ii", BoundCase{BoundFamily::Conjugate, ConjugateShape::ShapeII, SigmaBranch::Even});
  row("conjugate-iv", BoundCase{BoundFamily::Conjugate, ConjugateShape::ShapeIV, SigmaBranch::Even});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace amalgam;
  CLI::App app{"normal-form arithmetic in amalgamated free products"};
  app.require_subcommand(1);
  Options opt;

  std::string word1, word2, family = "free", shape = "ii";
  long long j = 1, sigma = 0, eps_first = 0, eps_last = 0;
  std::optional<long long> conj_n;
  std::vector<std::string> gen_words;
  std::string target_word, conjugator_word;

  auto add_group_flags = [&](CLI::App* cmd) {
    cmd->add_option("--p", opt.p, "left factor parameter");
    cmd->add_option("--q", opt.q, "right factor parameter");
  };

  auto* c_normalize = app.add_subcommand("normalize", "normal form of a word");
  add_group_flags(c_normalize);
  c_normalize->add_option("word", word1)->required();

  auto* c_mul = app.add_subcommand("mul", "product of two words");
  add_group_flags(c_mul);
  c_mul->add_option("x", word1)->required();
  c_mul->add_option("y", word2)->required();

  auto* c_invert = app.add_subcommand("invert", "inverse of a word");
  add_group_flags(c_invert);
  c_invert->add_option("word", word1)->required();

  auto* c_length = app.add_subcommand("length", "syllable length of a word");
  add_group_flags(c_length);
  c_length->add_option("word", word1)->required();

  auto* c_meridian = app.add_subcommand("meridian", "meridian class of the torus knot group");
  add_group_flags(c_meridian);

  auto* c_quotient = app.add_subcommand("quotient", "image under the fibre quotient");
  add_group_flags(c_quotient);
  c_quotient->add_option("word", word1)->required();

  auto* c_center = app.add_subcommand("center-power", "minimal power landing in the center");
  add_group_flags(c_center);
  c_center->add_option("word", word1)->required();

  auto* c_basis = app.add_subcommand("basis", "peripheral basis adapted to an element");
  add_group_flags(c_basis);
  c_basis->add_option("word", word1)->required();

  auto* c_sigma = app.add_subcommand("sigma", "P-sequence and sign-change count");
  c_sigma->add_option("word", word1)->required();

  auto* c_rewrite = app.add_subcommand("rewrite312", "canonical form of a formal word");
  c_rewrite->add_option("--m", opt.m, "central power")->required();
  c_rewrite->add_option("word", word1)->required();

  auto* c_classify = app.add_subcommand("classify-pair", "generating-pair type from silhouettes");
  c_classify->add_option("first", word1)->required();
  c_classify->add_option("second", word2)->required();
  bool invert_second = false;
  c_classify->add_flag("--invert-second", invert_second, "classify with the second element inverted");

  auto* c_bound = app.add_subcommand("bound", "length lower bound");
  c_bound->add_option("--family", family, "free, conj-ii or conj-iv");
  c_bound->add_option("--k", opt.k)->required();
  c_bound->add_option("--j", j)->required();
  c_bound->add_option("--sigma", sigma);
  long long n_value = 0;
  auto* n_opt = c_bound->add_option("--n", n_value, "conjugator length (conjugate family)");
  c_bound->add_option("--eps1", eps_first, "leading phrase present (0/1)");
  c_bound->add_option("--epslast", eps_last, "trailing phrase present (0/1)");

  auto* c_audit = app.add_subcommand("bound-audit", "randomized audit of the length bounds");
  add_group_flags(c_audit);
  c_audit->add_option("--k", opt.k);
  c_audit->add_option("--family", family, "free, conj-ii or conj-iv");
  c_audit->add_option("--trials", opt.trials);
  c_audit->add_option("--max-j", opt.max_j);
  c_audit->add_option("--seed", opt.seed);

  auto* c_junctions = app.add_subcommand("junctions", "junction reduction tables");

  auto* c_ball = app.add_subcommand("ball", "bounded subgroup ball");
  add_group_flags(c_ball);
  c_ball->add_option("--gen", gen_words, "generator word (repeatable)")->required();
  c_ball->add_option("--budget", opt.budget, "letters,normal-length");

  auto* c_member = app.add_subcommand("member", "bounded membership search");
  add_group_flags(c_member);
  c_member->add_option("--gen", gen_words, "generator word (repeatable)")->required();
  c_member->add_option("--target", target_word)->required();
  c_member->add_option("--budget", opt.budget, "letters,normal-length");

  auto* c_verify = app.add_subcommand("verify-314", "meridian-power non-generation sweep");
  add_group_flags(c_verify);
  c_verify->add_option("--k", opt.k)->required();
  c_verify->add_option("--budget", opt.budget, "letters,normal-length");
  c_verify->add_option("--conjugator", conjugator_word, "conjugate the swept base by this word");

  auto* c_gencheck = app.add_subcommand("gen-check", "left-factor generation check");
  add_group_flags(c_gencheck);
  c_gencheck->add_option("--gen", gen_words, "generator word (repeatable)")->required();
  c_gencheck->add_option("--budget", opt.budget, "letters,normal-length");

  for (auto* cmd : {c_audit, c_ball, c_member, c_verify, c_gencheck})
    cmd->add_option("--out", opt.out_mode, "text or structured");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_normalize->parsed() || c_length->parsed() || c_invert->parsed()) {
      ParsedWord w = parse_syllable_word(read_word(word1));
      AmalgamGroup g = group_for(w, opt.p, opt.q);
      NormalForm nf = bind_word(w, g);
      if (c_length->parsed())
        std::cout << length(nf) << "\n";
      else if (c_invert->parsed())
        std::cout << to_string(invert(nf)) << "\n";
      else
        std::cout << to_string(nf) << "\n";
      return 0;
    }
    if (c_mul->parsed()) {
      ParsedWord wx = parse_syllable_word(word1);
      ParsedWord wy = parse_syllable_word(word2);
      AmalgamGroup g = group_for(wx.alphabet ? wx : wy, opt.p, opt.q);
      NormalForm prod = multiply(bind_word(wx, g), bind_word(wy, g));
      std::cout << to_string(prod) << "\n";
      return 0;
    }
    if (c_meridian->parsed()) {
      TorusKnotGroup tk = torus_group(opt.p, opt.q);
      NormalForm x = meridian(tk);
      std::cout << to_string(x) << "\n";
      std::cout << "quotient: " << to_string(seifert_quotient(tk, x)) << "\n";
      return 0;
    }
    if (c_quotient->parsed()) {
      TorusKnotGroup tk = torus_group(opt.p, opt.q);
      NormalForm b = parse_normal_form(read_word(word1), tk.group);
      std::cout << to_string(seifert_quotient(tk, b)) << "\n";
      return 0;
    }
    if (c_center->parsed()) {
      TorusKnotGroup tk = torus_group(opt.p, opt.q);
      std::optional<long long> m = central_power(tk, parse_normal_form(read_word(word1), tk.group));
      if (m)
        std::cout << *m << "\n";
      else
        std::cout << "infinite\n";
      return 0;
    }
    if (c_basis->parsed()) {
      TorusKnotGroup tk = torus_group(opt.p, opt.q);
      PeripheralBasis basis = peripheral_basis(tk, parse_normal_form(read_word(word1), tk.group));
      std::cout << "x: " << to_string(basis.x) << "\n";
      std::cout << "y: " << to_string(basis.y) << "\n";
      return 0;
    }
    if (c_sigma->parsed()) return run_sigma(read_word(word1));
    if (c_rewrite->parsed()) {
      FormalWord w = parse_formal_word(read_word(word1), opt.m);
      std::cout << to_string(canonicalize(w)) << "\n";
      return 0;
    }
    if (c_classify->parsed()) {
      NormalFormShape s1 = shape_of(parse_syllable_word(word1));
      NormalFormShape s2 = shape_of(parse_syllable_word(word2));
      if (invert_second) s2 = inverted(s2);
      std::cout << to_string(classify_pair(s1, s2)) << "\n";
      return 0;
    }
    if (c_bound->parsed())
      return run_bound(family, opt.k, j, sigma,
                       n_opt->count() ? std::optional<long long>(n_value) : std::nullopt, eps_first,
                       eps_last);
    if (c_junctions->parsed()) return run_junctions();
    if (c_audit->parsed()) {
      AuditConfig cfg;
      cfg.p = opt.p;
      cfg.q = opt.q;
      cfg.k = opt.k;
      cfg.trials = opt.trials;
      cfg.max_j = opt.max_j;
      cfg.seed = opt.seed;
      if (family == "free") {
        cfg.family = BoundFamily::FreeFactor;
      } else if (family == "conj-ii") {
        cfg.family = BoundFamily::Conjugate;
        cfg.shape = ConjugateShape::ShapeII;
      } else if (family == "conj-iv") {
        cfg.family = BoundFamily::Conjugate;
        cfg.shape = ConjugateShape::ShapeIV;
      } else {
        throw std::invalid_argument("unknown family '" + family + "'");
      }
      print_header(opt, "bound-audit");
      AuditReport report = bound_audit(cfg);
      std::cout << to_string(report);
      return report.violations.empty() ? 0 : 2;
    }
    if (c_ball->parsed() || c_member->parsed() || c_gencheck->parsed()) {
      SearchBudget budget = parse_budget(opt.budget);
      std::vector<ParsedWord> parsed;
      for (const std::string& w : gen_words) parsed.push_back(parse_syllable_word(w));
      const ParsedWord* with_alphabet = nullptr;
      for (const ParsedWord& w : parsed)
        if (w.alphabet) with_alphabet = &w;
      AmalgamGroup g = with_alphabet ? group_for(*with_alphabet, opt.p, opt.q)
                                     : free_product(opt.p, opt.q);
      std::vector<NormalForm> gens;
      for (const ParsedWord& w : parsed) gens.push_back(bind_word(w, g));
      if (c_ball->parsed()) {
        print_header(opt, "ball");
        Ball ball = enumerate_ball(g, gens, budget);
        for (std::size_t i = 0; i < ball.elements.size(); ++i)
          std::cout << "element letters=" << ball.expression_length[i] << " word="
                    << to_string(ball.elements[i]) << "\n";
        std::cout << "summary ball=" << ball.elements.size() << " note=retention-capped\n";
        return 0;
      }
      if (c_member->parsed()) {
        print_header(opt, "member");
        NormalForm target = parse_normal_form(target_word, g);
        SearchReport report = membership(g, gens, target, budget);
        std::cout << to_string(report) << "\n";
        return 0;
      }
      print_header(opt, "gen-check");
      SearchReport report = transversal_generation_check(g, gens, budget);
      if (report.status == SearchReport::Status::Found)
        std::cout << "summary generated=yes reached=" << report.ball_size << "\n";
      else
        std::cout << "summary generated=no unreached=" << report.target
                  << " reached=" << report.ball_size << "\n";
      return 0;
    }
    if (c_verify->parsed()) {
      SearchBudget budget = parse_budget(opt.budget);
      std::optional<NormalForm> conjugator;
      if (!conjugator_word.empty())
        conjugator = parse_normal_form(conjugator_word, free_product(opt.p, opt.q));
      print_header(opt, "verify-314");
      auto runs = meridian_power_search(opt.p, opt.q, opt.k, conjugator, budget);
      bool found = false;
      for (const MeridianPowerRun& run : runs) {
        std::cout << "base=" << to_string(run.hbc) << " j=" << run.target_power << " "
                  << to_string(run.report) << "\n";
        found = found || run.report.status == SearchReport::Status::Found;
      }
      std::cout << (found ? "summary finding=counterexample\n" : "summary finding=none\n");
      return found ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
