#pragma once

// Positive-Feedback Preference growth model.
//
// Each growth step adds one node. With probability p the new node attaches
// to one host, which then gains up to two internal links to peers; otherwise
// the new node attaches to two hosts and the first host gains up to one
// internal link. Every endpoint among old nodes is drawn with probability
// proportional to k^(1 + delta * log10 k).

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfpnet/graph.hpp"
#include "pfpnet/parallel.hpp"

namespace pfpnet {

class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ExhaustedCandidates : public std::runtime_error {
public:
  ExhaustedCandidates() : std::runtime_error("no candidate node left to select") {}
};

struct PfpParams {
  double p = 0.4;
  double delta = 0.048;
  std::size_t target_n = 0;
  std::size_t seed_size = 5;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in [0, 1]");
    if (seed_size < 3) throw ParameterError("seed_size must be at least 3");
    if (target_n < seed_size) throw ParameterError("target_n must be at least seed_size");
    if (target_n > 0xFFFFFFFFull) throw ParameterError("target_n too large");
  }
};

// Deterministic random stream keyed by (seed, run index).
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t run = 0)
      : engine_(splitmix64(seed ^ splitmix64(run + 0x632BE59BD9B4E019ull))) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return x % n;
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

private:
  std::mt19937_64 engine_;
};

class UndefinedPreference : public std::domain_error {
public:
  UndefinedPreference()
      : std::domain_error("preference weight undefined for degree 0 (log10(0))") {}
};

inline double preference_weight(std::size_t k, double delta) {
  if (k == 0) throw UndefinedPreference();
  const double kd = static_cast<double>(k);
  return std::pow(kd, 1.0 + delta * std::log10(kd));
}

inline std::vector<double> preference_weights(std::span<const std::size_t> degrees, double delta) {
  std::vector<double> w;
  w.reserve(degrees.size());
  for (auto k : degrees) w.push_back(preference_weight(k, delta));
  return w;
}

namespace detail {

// Cumulative-weight inversion over candidates 0..n-1, skipping excluded ones.
// Consumes exactly one uniform draw.
template <typename WeightFn, typename ExcludedFn>
std::size_t weighted_pick(std::size_t n, WeightFn&& weight, ExcludedFn&& excluded,
                          RngStream& rng) {
  double total = 0.0;
  std::size_t last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded(i)) continue;
    total += weight(i);
    last = i;
  }
  if (last == n) throw ExhaustedCandidates();
  const double target = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded(i)) continue;
    acc += weight(i);
    if (target < acc) return i;
  }
  return last;
}

// Growing graph over dense ids 0..n-1 with sorted adjacency and weights
// cached per degree.
class GrowthState {
public:
  GrowthState(const Graph& seed, double delta) : delta_(delta) {
    adj_.resize(seed.node_count());
    for (Graph::Index i = 0; i < seed.node_count(); ++i) {
      auto a = seed.adjacent(i);
      adj_[i].assign(a.begin(), a.end());
    }
    for (auto& a : adj_) weight_.push_back(weight_for(a.size()));
  }

  std::size_t size() const noexcept { return adj_.size(); }

  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
  }

  std::uint32_t add_node() {
    adj_.emplace_back();
    weight_.push_back(0.0);
    return static_cast<std::uint32_t>(adj_.size() - 1);
  }

  void link(std::uint32_t a, std::uint32_t b) {
    assert(a != b && !adjacent(a, b));
    insert_sorted(adj_[a], b);
    insert_sorted(adj_[b], a);
    weight_[a] = weight_for(adj_[a].size());
    weight_[b] = weight_for(adj_[b].size());
  }

  // Preferential pick among nodes [0, limit) not listed in `excluded`.
  std::uint32_t pick(std::size_t limit, std::span<const std::uint32_t> excluded, RngStream& rng) {
    auto is_excluded = [&](std::size_t i) {
      return std::find(excluded.begin(), excluded.end(), i) != excluded.end();
    };
    return static_cast<std::uint32_t>(
        weighted_pick(limit, [&](std::size_t i) { return weight_[i]; }, is_excluded, rng));
  }

  // Preferential pick of an internal-link peer for `host` among nodes
  // [0, limit): existing neighbours of the host and earlier draws are not
  // candidates; the host itself is. Returns limit when nothing is eligible.
  std::uint32_t pick_peer(std::size_t limit, std::uint32_t host,
                          std::span<const std::uint32_t> drawn, RngStream& rng) {
    mark_.resize(adj_.size(), 0);
    std::size_t blocked = 0;
    auto block = [&](std::uint32_t v) {
      if (v < limit && !mark_[v]) {
        mark_[v] = 1;
        ++blocked;
      }
    };
    for (auto v : adj_[host]) block(v);
    for (auto v : drawn) block(v);
    std::uint32_t peer = static_cast<std::uint32_t>(limit);
    if (blocked < limit)
      peer = static_cast<std::uint32_t>(weighted_pick(
          limit, [&](std::size_t i) { return weight_[i]; },
          [&](std::size_t i) { return mark_[i] != 0; }, rng));
    for (auto v : adj_[host]) mark_[v] = 0;
    for (auto v : drawn) mark_[v] = 0;
    return peer;
  }

  Graph freeze() const {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < adj_.size(); ++i)
      for (auto j : adj_[i])
        if (i < j) edges.emplace_back(i, j);
    return Graph::from_edge_list(edges);
  }

private:
  static void insert_sorted(std::vector<std::uint32_t>& v, std::uint32_t x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }

  double weight_for(std::size_t k) {
    if (k == 0) return 0.0;
    while (table_.size() <= k) table_.push_back(0.0);
    if (table_[k] == 0.0) table_[k] = preference_weight(k, delta_);
    return table_[k];
  }

  double delta_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<double> weight_;
  std::vector<double> table_;
  std::vector<char> mark_;
};

}  // namespace detail

// Draws one node of g with probability proportional to its preference
// weight, restricted to nodes outside `excluded`.
inline NodeId pfp_select(const Graph& g, double delta, std::span<const NodeId> excluded,
                         RngStream& rng) {
  std::vector<char> skip(g.node_count(), 0);
  for (NodeId v : excluded)
    if (g.contains(v)) skip[g.index_of(v)] = 1;
  for (Graph::Index i = 0; i < g.node_count(); ++i)
    if (!skip[i] && g.degree_at(i) == 0) throw UndefinedPreference();
  std::vector<double> w(g.node_count(), 0.0);
  for (Graph::Index i = 0; i < g.node_count(); ++i)
    if (!skip[i]) w[i] = preference_weight(g.degree_at(i), delta);
  const auto i = detail::weighted_pick(
      g.node_count(), [&](std::size_t j) { return w[j]; },
      [&](std::size_t j) { return skip[j] != 0; }, rng);
  return g.id_at(static_cast<Graph::Index>(i));
}

// Connected random graph on nodes 0..seed_size-1: a uniformly random labelled
// spanning tree (random Pruefer sequence) plus every other pair with
// probability 1/2.
inline Graph seed_graph(std::size_t seed_size, RngStream& rng) {
  if (seed_size < 3) throw ParameterError("seed_size must be at least 3");
  const std::size_t n = seed_size;
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = rng.below(n);

  std::vector<std::size_t> count(n, 1);
  for (auto c : code) ++count[c];
  std::vector<std::vector<char>> tree(n, std::vector<char>(n, 0));
  for (auto c : code) {
    std::size_t leaf = 0;
    while (count[leaf] != 1) ++leaf;
    tree[leaf][c] = tree[c][leaf] = 1;
    --count[leaf];
    --count[c];
  }
  std::size_t a = n, b = n;
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] == 1) (a == n ? a : b) = i;
  tree[a][b] = tree[b][a] = 1;

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (tree[i][j] || rng.uniform() < 0.5) edges.emplace_back(i, j);
    }
  return Graph::from_edge_list(edges);
}

namespace detail {

inline void growth_step(GrowthState& s, const PfpParams& params, RngStream& rng) {
  const std::size_t old = s.size();
  // Internal link from `host` to a preferentially drawn non-neighbour. A draw
  // that lands on the host itself drops the link for this step.
  auto internal_link = [&](std::uint32_t host, std::vector<std::uint32_t>& drawn) {
    const auto peer = s.pick_peer(old, host, drawn, rng);
    if (peer == old) return;
    drawn.push_back(peer);
    if (peer != host) s.link(host, peer);
  };

  if (rng.uniform() < params.p) {
    const std::uint32_t empty[1] = {};
    const auto host = s.pick(old, std::span<const std::uint32_t>(empty, 0), rng);
    const auto fresh = s.add_node();
    s.link(fresh, host);
    std::vector<std::uint32_t> drawn;
    internal_link(host, drawn);
    internal_link(host, drawn);
  } else {
    std::vector<std::uint32_t> hosts;
    hosts.push_back(s.pick(old, hosts, rng));
    hosts.push_back(s.pick(old, hosts, rng));
    const auto fresh = s.add_node();
    s.link(fresh, hosts[0]);
    s.link(fresh, hosts[1]);
    std::vector<std::uint32_t> drawn;
    internal_link(hosts[0], drawn);
  }
}

}  // namespace detail

inline Graph grow(const PfpParams& params, RngStream& rng) {
  params.validate();
  const Graph seed = seed_graph(params.seed_size, rng);
  detail::GrowthState state(seed, params.delta);
  while (state.size() < params.target_n) detail::growth_step(state, params, rng);
  return state.freeze();
}

inline Graph grow(const PfpParams& params) {
  RngStream rng(params.rng_seed, 0);
  return grow(params, rng);
}

// Run i draws from RngStream(rng_seed, i); output is independent of `threads`.
inline std::vector<Graph> grow_ensemble(const PfpParams& params, std::size_t runs,
                                        unsigned threads = 1) {
  if (runs == 0) throw ParameterError("runs must be at least 1");
  params.validate();
  std::vector<Graph> out(runs);
  parallel_for(runs, threads, [&](std::size_t i) {
    RngStream rng(params.rng_seed, i);
    out[i] = grow(params, rng);
  });
  return out;
}

}  // namespace pfpnet
