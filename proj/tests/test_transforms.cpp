#include <doctest.h>

#include <random>

#include "fmlab/constructions.hpp"
#include "fmlab/eval.hpp"
#include "fmlab/parser.hpp"
#include "fmlab/transforms.hpp"
#include "oracle.hpp"

using namespace fmlab;

namespace {

const Signature& sig_rq() {
  static const Signature sig({{"R", 3}, {"Q", 2}});
  return sig;
}

const Signature& sig_small() {
  static const Signature sig({{"R", 2}, {"Q", 1}});
  return sig;
}

Structure as_r_graph(const Graph& g, const Signature& sig) {
  return r_graph_from_graph(g, sig, "R");
}

// A rigid connected R-graph: spider with leg lengths 1, 2, 3.
Graph spider_123() {
  Graph g(7);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(0, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  return g;
}

}  // namespace

TEST_CASE("relativization rewrites quantifiers") {
  FormulaRef f = parse_formula("forall x R(x,x,x)", sig_rq());
  CHECK(print_formula(relativize_q(f, sig_rq(), "Q")) ==
        "forall x (Q(x,x) -> R(x,x,x))");

  FormulaRef qf = parse_formula("x = y | R(x,y,y)", sig_rq());
  CHECK(structurally_equal(*relativize_q(qf, sig_rq(), "Q"), *qf));

  FormulaRef nested = parse_formula("forall x exists y R(x,y,y)", sig_rq());
  CHECK(print_formula(relativize_q(nested, sig_rq(), "Q")) ==
        "forall x (Q(x,x) -> exists y (Q(y,y) & R(x,y,y)))");

  CHECK_THROWS_AS(
      relativize_q(parse_formula("exists x Q(x,x)", sig_rq()), sig_rq(), "Q"),
      InputError);
  CHECK_THROWS_AS(relativize_q(f, sig_rq(), "Z"), InputError);
}

TEST_CASE("prime and double prime transforms") {
  FormulaRef p = parse_formula("P", sig_rq());
  CHECK(print_formula(prime_transform(p)) == "forall x (x = x)");
  CHECK(print_formula(double_prime_transform(p)) == "!forall x (x = x)");

  FormulaRef notp = parse_formula("!P", sig_rq());
  CHECK(print_formula(prime_transform(notp)) == "!forall x (x = x)");

  FormulaRef p_free = parse_formula("forall x (R(x,x,x) | !Q(x,x))", sig_rq());
  CHECK(prime_transform(p_free).get() == p_free.get());
  CHECK(double_prime_transform(p_free).get() == p_free.get());

  Graph one(1);
  Structure s = as_r_graph(one, sig_rq());
  CHECK_FALSE(evaluate(s, double_prime_transform(p)));
  CHECK(evaluate(s, prime_transform(p)));
}

TEST_CASE("P-elimination matches the extended semantics on random sentences") {
  std::mt19937_64 rng(5100);
  int with_p = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Structure s = oracle::random_structure(rng, 5, sig_rq());
    FormulaRef f = oracle::random_sentence(rng, sig_rq(), 8, true);
    if (contains_p_atom(*f)) ++with_p;
    CHECK(evaluate_with_p(s, f, true) == evaluate(s, prime_transform(f)));
    CHECK(evaluate_with_p(s, f, false) ==
          evaluate(s, double_prime_transform(f)));
  }
  CHECK(with_p > 50);  // the generator must actually exercise P
}

TEST_CASE("relativization semantics over tagged disjoint unions") {
  std::mt19937_64 rng(5200);
  PoolOptions opts;
  opts.limit = 60;
  std::vector<FormulaRef> pool = sentence_pool(sig_rq().without("Q"), opts);
  REQUIRE(pool.size() == 60);

  for (int pair = 0; pair < 6; ++pair) {
    Structure m = oracle::random_structure(rng, 4, Signature({{"R", 3}}));
    Structure m_wide(sig_rq(), m.size(), {{"R", m.relation("R")}});
    Graph n_graph = oracle::random_graph(rng, 4);
    Structure n = as_r_graph(n_graph, sig_rq());
    auto u = disjoint_union({add_q_diagonal(m_wide, "Q"), n});
    for (const FormulaRef& f : pool) {
      CHECK(evaluate(u.structure, relativize_q(f, sig_rq(), "Q")) ==
            evaluate(m_wide, f));
    }
  }
}

TEST_CASE("gamma0 sentences pin down the tag discipline") {
  std::vector<FormulaRef> gamma0 = gamma0_sentences(sig_rq(), "Q", "R");
  for (const FormulaRef& f : gamma0) {
    CHECK(is_sentence(*f));
  }

  // a tagged union of anything with an R-graph is a model
  std::mt19937_64 rng(5300);
  for (int trial = 0; trial < 10; ++trial) {
    Structure m = oracle::random_structure(rng, 4, Signature({{"R", 3}}));
    Structure m_wide(sig_rq(), m.size(), {{"R", m.relation("R")}});
    Structure n = as_r_graph(oracle::random_graph(rng, 4), sig_rq());
    auto u = disjoint_union({add_q_diagonal(m_wide, "Q"), n});
    for (const FormulaRef& f : gamma0) {
      CHECK(evaluate(u.structure, f));
    }
  }

  // a tagged element adjacent to an untagged one falsifies the boundary
  // sentence
  Structure bad(sig_rq(), 2, {{"Q", {{0, 0}}}, {"R", {{0, 1, 1}, {1, 0, 0}}}});
  bool all_hold = true;
  for (const FormulaRef& f : gamma0) {
    if (!evaluate(bad, f)) all_hold = false;
  }
  CHECK_FALSE(all_hold);

  CHECK_THROWS_AS(gamma0_sentences(sig_rq(), "Q", "Q"), InputError);
  CHECK_THROWS_AS(gamma0_sentences(sig_rq(), "Z", "R"), InputError);
  CHECK_THROWS_AS(gamma0_sentences(Signature({{"R", 3}, {"U", 1}}), "R", "U"),
                  InputError);
}

TEST_CASE("gamma1m sentences cross-validate against the semantic checkers") {
  std::mt19937_64 rng(5400);
  for (int m : {3, 4}) {
    Gamma1mSentences sentences = gamma1m_grouped(sig_small(), "Q", "R", m);
    for (const FormulaRef& f : sentences.all()) CHECK(is_sentence(*f));

    for (int trial = 0; trial < 25; ++trial) {
      // tagged union of a tiny structure with the graph under test
      Graph g = oracle::random_graph(rng, 8);
      Structure m_part(sig_small(), 2, {{"R", {{0, 1}, {1, 0}}}});
      Structure n = as_r_graph(g, sig_small());
      auto u = disjoint_union({add_q_diagonal(m_part, "Q"), n});

      GammaFlags flags = check_gamma1m(g, m);
      auto group_truth = [&](const std::vector<FormulaRef>& group) {
        for (const FormulaRef& f : group) {
          if (!evaluate(u.structure, f)) return false;
        }
        return true;
      };
      CHECK(group_truth(sentences.no_short_cycles) == flags.no_short_cycles);
      CHECK(group_truth(sentences.degrees_45) == flags.degrees_45);
      CHECK(group_truth(sentences.enough_degree4) == flags.enough_degree4);
      CHECK(group_truth(sentences.degree4_far_apart) ==
            flags.degree4_far_apart);
    }
  }
}

TEST_CASE("a 5-regular graph has no degree-4 witness") {
  // K6 is 5-regular: only the at-least-m-degree-4 group fails
  Graph k6(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) k6.add_edge(i, j);
  }
  Structure enc = as_r_graph(k6, sig_small());
  Gamma1mSentences sentences = gamma1m_grouped(sig_small(), "Q", "R", 3);
  for (const FormulaRef& f : sentences.enough_degree4) {
    CHECK_FALSE(evaluate(enc, f));
  }
  for (const FormulaRef& f : sentences.degrees_45) {
    CHECK(evaluate(enc, f));
  }
  CHECK_THROWS_AS(gamma1m_grouped(sig_small(), "Q", "R", 2), InputError);
}

TEST_CASE("sentence pool is canonical, closed and rank-bounded") {
  PoolOptions opts;
  opts.limit = 150;
  std::vector<FormulaRef> pool = sentence_pool(Signature({{"R", 3}}), opts);
  REQUIRE(pool.size() >= 100);

  std::set<std::string> seen;
  for (const FormulaRef& f : pool) {
    CHECK(is_sentence(*f));
    CHECK(quantifier_rank(*f) <= opts.max_rank);
    CHECK(seen.insert(print_formula(f)).second);  // deduplicated
  }

  // deterministic across calls
  std::vector<FormulaRef> again = sentence_pool(Signature({{"R", 3}}), opts);
  REQUIRE(again.size() == pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CHECK(structurally_equal(*pool[i], *again[i]));
  }

  bool has_tautology = false;
  for (const FormulaRef& f : pool) {
    if (print_formula(f) == "forall x (x = x)") has_tautology = true;
  }
  CHECK(has_tautology);
}

TEST_CASE("th_m_q filters the pool by truth and relativizes") {
  std::mt19937_64 rng(5500);
  PoolOptions opts;
  opts.limit = 80;
  Structure m = oracle::random_structure(rng, 4, Signature({{"R", 3}}));
  Structure m_wide(sig_rq(), m.size(), {{"R", m.relation("R")}});

  std::vector<FormulaRef> theory = th_m_q(m_wide, "Q", opts);
  std::set<std::string> printed;
  for (const FormulaRef& f : theory) printed.insert(print_formula(f));

  // definition: phi true in M iff phi_Q emitted
  for (const FormulaRef& phi : sentence_pool(sig_rq().without("Q"), opts)) {
    bool truth = evaluate(m_wide, phi);
    bool member =
        printed.count(print_formula(relativize_q(phi, sig_rq(), "Q"))) > 0;
    CHECK(truth == member);
  }

  // the tautology's relativization is always included
  CHECK(printed.count("forall x (Q(x,x) -> x = x)") == 1);

  // the tagged structure satisfies its own relativized theory
  Structure tagged = add_q_diagonal(m_wide, "Q");
  for (const FormulaRef& f : theory) {
    CHECK(evaluate(tagged, f));
  }
  // ... and so does its union with a rigid connected R-graph
  Structure n = as_r_graph(spider_123(), sig_rq());
  auto u = disjoint_union({tagged, n});
  for (const FormulaRef& f : theory) {
    CHECK(evaluate(u.structure, f));
  }

  CHECK_THROWS_AS(th_m_q(tagged, "Q", opts), InputError);
}
