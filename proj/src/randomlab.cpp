#include "fmlab/randomlab.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <ostream>
#include <thread>

#include "fmlab/autgroup.hpp"
#include "fmlab/constructions.hpp"
#include "fmlab/errors.hpp"

namespace fmlab {

namespace {

constexpr int kEnumerationCap = 7;  // 2^21 candidate edge sets

void validate(const SamplerConfig& cfg) {
  if (cfg.n < 1) throw InputError("sampler: n must be >= 1");
  if (cfg.degree_cap < 1) throw InputError("sampler: degree cap must be >= 1");
}

// mt19937_64 is pinned by the standard, so modulo draws keep sample streams
// identical across platforms; the bias at these ranges is far below any
// tolerance used here.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

}  // namespace

SamplerConfig resolved(SamplerConfig cfg) {
  validate(cfg);
  std::uint64_t nn =
      static_cast<std::uint64_t>(cfg.n) * static_cast<std::uint64_t>(cfg.n);
  if (cfg.burn_in == 0) cfg.burn_in = 10 * nn;
  if (cfg.thinning == 0) cfg.thinning = nn;
  return cfg;
}

// --- exhaustive enumeration ----------------------------------------------------

void enumerate_gn(int n, int degree_cap,
                  const std::function<void(const Graph&)>& sink) {
  if (n < 1) throw InputError("enumerate_gn: n must be >= 1");
  if (n > kEnumerationCap) {
    throw BudgetError("enumerate_gn: n capped at " +
                      std::to_string(kEnumerationCap));
  }
  std::vector<std::pair<int, int>> edge_order;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edge_order.emplace_back(i, j);
  }
  int m = static_cast<int>(edge_order.size());
  // bit b of the mask picks edge_order[b]; counting up through the masks is
  // the lexicographic edge-set order
  std::vector<std::uint32_t> incident(n, 0);
  for (int b = 0; b < m; ++b) {
    incident[edge_order[b].first] |= 1u << b;
    incident[edge_order[b].second] |= 1u << b;
  }
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool ok = true;
    for (int v = 0; v < n; ++v) {
      if (std::popcount(mask & incident[v]) > degree_cap) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Graph g(n);
    for (int b = 0; b < m; ++b) {
      if (mask & (1u << b)) g.add_edge(edge_order[b].first, edge_order[b].second);
    }
    sink(g);
  }
}

std::uint64_t count_gn(int n, int degree_cap) {
  std::uint64_t count = 0;
  enumerate_gn(n, degree_cap, [&](const Graph&) { ++count; });
  return count;
}

// --- MCMC sampler ----------------------------------------------------------------

GraphSampler::GraphSampler(const SamplerConfig& cfg)
    : cfg_(resolved(cfg)), rng_(cfg_.seed) {
  adj_.assign(static_cast<std::size_t>(cfg_.n) * cfg_.n, 0);
  degree_.assign(cfg_.n, 0);
}

void GraphSampler::step() {
  int n = cfg_.n;
  int u = static_cast<int>(draw(rng_, n));
  int v = static_cast<int>(draw(rng_, n));
  if (u == v) return;  // lazy step
  std::size_t uv = static_cast<std::size_t>(u) * n + v;
  std::size_t vu = static_cast<std::size_t>(v) * n + u;
  if (adj_[uv]) {
    adj_[uv] = adj_[vu] = 0;
    --degree_[u];
    --degree_[v];
  } else if (degree_[u] < cfg_.degree_cap && degree_[v] < cfg_.degree_cap) {
    adj_[uv] = adj_[vu] = 1;
    ++degree_[u];
    ++degree_[v];
  }
  assert(degree_[u] <= cfg_.degree_cap && degree_[v] <= cfg_.degree_cap);
}

Graph GraphSampler::next() {
  std::uint64_t steps = burned_in_ ? cfg_.thinning : cfg_.burn_in;
  burned_in_ = true;
  for (std::uint64_t i = 0; i < steps; ++i) step();
  Graph g(cfg_.n);
  for (int u = 0; u < cfg_.n; ++u) {
    for (int v = u + 1; v < cfg_.n; ++v) {
      if (adj_[static_cast<std::size_t>(u) * cfg_.n + v]) g.add_edge(u, v);
    }
  }
  return g;
}

std::vector<Graph> sample_gn(const SamplerConfig& cfg, std::size_t count) {
  GraphSampler sampler(cfg);
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

// --- predicates -------------------------------------------------------------------

namespace {

const Signature& graph_signature() {
  static const Signature sig({{"R", 2}});
  return sig;
}

int parse_level(const std::string& spec, std::size_t colon) {
  if (colon == std::string::npos || colon + 1 >= spec.size()) {
    throw InputError("predicate " + spec + " needs a level, e.g. " +
                     spec.substr(0, colon) + ":3");
  }
  int m = 0;
  try {
    m = std::stoi(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw InputError("bad predicate level in " + spec);
  }
  if (m < 3) throw InputError("predicate level must be >= 3 in " + spec);
  return m;
}

}  // namespace

NamedPredicate make_predicate(const std::string& spec) {
  auto colon = spec.find(':');
  std::string base = spec.substr(0, colon);
  if (base == "connected") {
    return {spec, [](const Graph& g) { return is_connected(g); }};
  }
  if (base == "rigid") {
    return {spec, [](const Graph& g) {
              return is_rigid(r_graph_from_graph(g, graph_signature(), "R"));
            }};
  }
  if (base == "connected_and_rigid") {
    return {spec, [](const Graph& g) {
              return is_connected(g) &&
                     is_rigid(r_graph_from_graph(g, graph_signature(), "R"));
            }};
  }
  if (base == "degrees_45") {
    return {spec, [](const Graph& g) {
              for (int v = 0; v < g.vertex_count(); ++v) {
                int d = g.degree(v);
                if (d != 4 && d != 5) return false;
              }
              return true;
            }};
  }
  if (base == "no_short_cycles") {
    int m = parse_level(spec, colon);
    return {spec,
            [m](const Graph& g) { return check_gamma1m(g, m).no_short_cycles; }};
  }
  if (base == "enough_degree4") {
    int m = parse_level(spec, colon);
    return {spec,
            [m](const Graph& g) { return check_gamma1m(g, m).enough_degree4; }};
  }
  if (base == "degree4_far_apart") {
    int m = parse_level(spec, colon);
    return {spec, [m](const Graph& g) {
              return check_gamma1m(g, m).degree4_far_apart;
            }};
  }
  if (base == "gamma1m") {
    int m = parse_level(spec, colon);
    return {spec, [m](const Graph& g) {
              GammaFlags f = check_gamma1m(g, m);
              return f.no_short_cycles && f.degrees_45 && f.enough_degree4 &&
                     f.degree4_far_apart;
            }};
  }
  throw InputError("unknown predicate " + spec);
}

// --- estimation --------------------------------------------------------------------

namespace {

double standard_error(double p, std::uint64_t samples) {
  if (samples == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

SampleReport finish_report(SamplerConfig cfg, bool exact, int chains,
                           std::uint64_t samples,
                           const std::vector<NamedPredicate>& predicates,
                           const std::vector<std::uint64_t>& hits) {
  SampleReport report;
  report.config = cfg;
  report.exact = exact;
  report.chains = chains;
  report.samples = samples;
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    PredicateReport pr;
    pr.predicate = predicates[i].name;
    pr.hits = hits[i];
    pr.proportion =
        samples ? static_cast<double>(hits[i]) / static_cast<double>(samples)
                : 0.0;
    pr.standard_error = standard_error(pr.proportion, samples);
    report.predicates.push_back(std::move(pr));
  }
  return report;
}

}  // namespace

SampleReport estimate_proportion(const SamplerConfig& cfg_in,
                                 std::uint64_t count,
                                 const std::vector<std::string>& specs,
                                 bool exact, int chains) {
  SamplerConfig cfg = resolved(cfg_in);
  if (specs.empty()) throw InputError("estimate: no predicates given");
  if (chains < 1) throw InputError("estimate: chains must be >= 1");
  std::vector<NamedPredicate> predicates;
  for (const std::string& spec : specs) predicates.push_back(make_predicate(spec));

  std::vector<std::uint64_t> hits(predicates.size(), 0);

  if (exact) {
    if (cfg.n > kEnumerationCap) {
      throw BudgetError("estimate: exact mode capped at n = " +
                        std::to_string(kEnumerationCap));
    }
    std::uint64_t total = 0;
    enumerate_gn(cfg.n, cfg.degree_cap, [&](const Graph& g) {
      ++total;
      for (std::size_t i = 0; i < predicates.size(); ++i) {
        if (predicates[i].test(g)) ++hits[i];
      }
    });
    return finish_report(cfg, true, 1, total, predicates, hits);
  }

  // independent chains with consecutive seeds; pooled counts are
  // order-independent, so threading does not affect the report
  std::vector<std::uint64_t> per_chain(chains, count / chains);
  for (std::uint64_t i = 0; i < count % chains; ++i) ++per_chain[i];
  std::vector<std::vector<std::uint64_t>> chain_hits(
      chains, std::vector<std::uint64_t>(predicates.size(), 0));

  auto run_chain = [&](int c) {
    SamplerConfig chain_cfg = cfg;
    chain_cfg.seed = cfg.seed + static_cast<std::uint64_t>(c);
    GraphSampler sampler(chain_cfg);
    for (std::uint64_t i = 0; i < per_chain[c]; ++i) {
      Graph g = sampler.next();
      for (std::size_t p = 0; p < predicates.size(); ++p) {
        if (predicates[p].test(g)) ++chain_hits[c][p];
      }
    }
  };

  if (chains == 1) {
    run_chain(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(chains);
    for (int c = 0; c < chains; ++c) threads.emplace_back(run_chain, c);
    for (std::thread& t : threads) t.join();
  }
  for (int c = 0; c < chains; ++c) {
    for (std::size_t p = 0; p < predicates.size(); ++p) {
      hits[p] += chain_hits[c][p];
    }
  }
  return finish_report(cfg, false, chains, count, predicates, hits);
}

std::vector<SampleReport> trend_experiment(
    const std::vector<int>& ns, const SamplerConfig& base, std::uint64_t count,
    const std::vector<std::string>& predicates, int chains) {
  std::vector<SampleReport> reports;
  for (int n : ns) {
    // burn-in/thinning stay on auto unless pinned in the template
    SamplerConfig cfg = base;
    cfg.n = n;
    bool exact = n <= 6;
    reports.push_back(
        estimate_proportion(cfg, count, predicates, exact, exact ? 1 : chains));
  }
  return reports;
}

void print_report(const SampleReport& report, std::ostream& out, bool summary) {
  auto old_precision = out.precision(10);
  for (const PredicateReport& pr : report.predicates) {
    out << pr.predicate << '\t' << report.config.n << '\t' << report.samples
        << '\t' << pr.hits << '\t' << pr.proportion << '\t'
        << pr.standard_error << '\n';
  }
  if (summary) {
    out << "# mode=" << (report.exact ? "exact" : "mcmc")
        << " n=" << report.config.n << " cap=" << report.config.degree_cap
        << " samples=" << report.samples;
    if (!report.exact) {
      out << " seed=" << report.config.seed << " burn_in=" << report.config.burn_in
          << " thinning=" << report.config.thinning
          << " chains=" << report.chains;
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fmlab
