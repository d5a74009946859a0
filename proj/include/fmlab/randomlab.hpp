#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "fmlab/structures.hpp"

namespace fmlab {

// Chain configuration for the degree-capped uniform graph sampler.
// burn_in/thinning 0 means "use the defaults 10*n*n and n*n".
struct SamplerConfig {
  int n = 1;
  int degree_cap = 5;
  std::uint64_t burn_in = 0;
  std::uint64_t thinning = 0;
  std::uint64_t seed = 1;
};

SamplerConfig resolved(SamplerConfig cfg);  // fills defaults, validates

// Calls the sink for every labeled graph on n vertices with maximum degree
// at most degree_cap, exactly once, in lexicographic edge-set order.
// Capped at n <= 7 (2^21 candidate edge sets).
void enumerate_gn(int n, int degree_cap,
                  const std::function<void(const Graph&)>& sink);
std::uint64_t count_gn(int n, int degree_cap);

// Edge-toggle Metropolis chain over the degree-capped graphs: each step
// draws an ordered vertex pair and toggles that edge when the result stays
// inside the class, staying put otherwise. Draws with u = v act as lazy
// steps, which keeps the chain aperiodic even when the cap never binds.
// The chain is symmetric and irreducible, so its stationary distribution is
// uniform. Deterministic given the seed.
class GraphSampler {
 public:
  explicit GraphSampler(const SamplerConfig& cfg);

  // Advances burn-in (first call) or thinning steps, then emits.
  Graph next();

 private:
  void step();

  SamplerConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<char> adj_;  // n x n matrix
  std::vector<int> degree_;
  bool burned_in_ = false;
};

std::vector<Graph> sample_gn(const SamplerConfig& cfg, std::size_t count);

// Named graph predicates: connected, rigid, connected_and_rigid,
// degrees_45, and the parameterized no_short_cycles:m, enough_degree4:m,
// degree4_far_apart:m, gamma1m:m.
struct NamedPredicate {
  std::string name;
  std::function<bool(const Graph&)> test;
};
NamedPredicate make_predicate(const std::string& spec);

struct PredicateReport {
  std::string predicate;
  std::uint64_t hits = 0;
  double proportion = 0.0;
  double standard_error = 0.0;  // sqrt(p(1-p)/samples)
};

struct SampleReport {
  SamplerConfig config;
  bool exact = false;
  int chains = 1;
  std::uint64_t samples = 0;
  std::vector<PredicateReport> predicates;
};

// Monte Carlo proportion estimate with binomial standard errors; in exact
// mode the class is enumerated instead and the proportion is the true one.
// Multiple chains split the sample count, run independently (in parallel)
// with seeds seed, seed+1, ..., and pool their counts.
SampleReport estimate_proportion(const SamplerConfig& cfg, std::uint64_t count,
                                 const std::vector<std::string>& predicates,
                                 bool exact = false, int chains = 1);

// One report per n; n <= 6 entries are computed exactly by enumeration.
std::vector<SampleReport> trend_experiment(
    const std::vector<int>& ns, const SamplerConfig& base,
    std::uint64_t count, const std::vector<std::string>& predicates,
    int chains = 1);

// Tab-separated rows (predicate, n, samples, hits, proportion, stderr),
// then a short config echo when `summary` is set.
void print_report(const SampleReport& report, std::ostream& out,
                  bool summary = true);

}  // namespace fmlab
