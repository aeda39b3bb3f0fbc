#pragma once

// Topology statistics of AS-level graphs: degree distribution and exponent,
// degree correlation, rich-club connectivity, triangle coefficient, shortest
// path length and k-core decomposition, plus report assembly and averaging.
//
// Per-node results are vectors aligned with Graph::nodes().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfpnet/graph.hpp"
#include "pfpnet/parallel.hpp"

namespace pfpnet {

// Raised when a statistic has no defined value for the input. `reason` is a
// short machine-readable code carried into reports.
class UndefinedMetric : public std::domain_error {
public:
  UndefinedMetric(std::string reason, const std::string& what)
      : std::domain_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

private:
  std::string reason_;
};

enum class TableKind { pdf, ccd, by_degree, by_rank };

inline const char* to_string(TableKind k) {
  switch (k) {
    case TableKind::pdf: return "pdf";
    case TableKind::ccd: return "ccd";
    case TableKind::by_degree: return "by_degree";
    case TableKind::by_rank: return "by_rank";
  }
  return "?";
}

struct Point {
  double x;
  double y;
  friend bool operator==(const Point&, const Point&) = default;
};

struct DistributionTable {
  TableKind kind = TableKind::pdf;
  std::vector<Point> points;
};

namespace detail {

inline void require_nonempty(const Graph& g) {
  if (g.empty()) throw UndefinedMetric("empty", "graph has no nodes");
}

// CCD of a multiset of non-negative integer values given as a histogram.
inline DistributionTable ccd_from_histogram(const std::vector<std::uint64_t>& hist) {
  DistributionTable t{TableKind::ccd, {}};
  const double total = static_cast<double>(std::accumulate(hist.begin(), hist.end(), std::uint64_t{0}));
  if (total == 0) return t;
  std::uint64_t at_least = 0;
  std::vector<Point> rev;
  for (std::size_t v = hist.size(); v-- > 0;) {
    if (hist[v] == 0) continue;
    at_least += hist[v];
    rev.push_back({static_cast<double>(v), static_cast<double>(at_least) / total});
  }
  t.points.assign(rev.rbegin(), rev.rend());
  return t;
}

// Mean of per-node values grouped by degree.
inline DistributionTable mean_by_degree(const Graph& g, const std::vector<double>& value) {
  const std::size_t kmax = g.max_degree();
  std::vector<double> sum(kmax + 1, 0.0);
  std::vector<std::size_t> count(kmax + 1, 0);
  for (Graph::Index i = 0; i < g.node_count(); ++i) {
    sum[g.degree_at(i)] += value[i];
    ++count[g.degree_at(i)];
  }
  DistributionTable t{TableKind::by_degree, {}};
  for (std::size_t k = 0; k <= kmax; ++k)
    if (count[k]) t.points.push_back({static_cast<double>(k), sum[k] / static_cast<double>(count[k])});
  return t;
}

// Dense indices ordered by non-increasing degree, ties by ascending NodeId.
inline std::vector<Graph::Index> rank_order(const Graph& g) {
  std::vector<Graph::Index> order(g.node_count());
  std::iota(order.begin(), order.end(), Graph::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return g.degree_at(a) > g.degree_at(b);
  });
  return order;
}

}  // namespace detail

struct DegreeDistribution {
  DistributionTable pdf;
  DistributionTable ccd;
};

inline DegreeDistribution degree_distribution(const Graph& g) {
  detail::require_nonempty(g);
  std::vector<std::uint64_t> hist(g.max_degree() + 1, 0);
  for (Graph::Index i = 0; i < g.node_count(); ++i) ++hist[g.degree_at(i)];
  DegreeDistribution d;
  d.pdf.kind = TableKind::pdf;
  const double n = static_cast<double>(g.node_count());
  for (std::size_t k = 0; k < hist.size(); ++k)
    if (hist[k]) d.pdf.points.push_back({static_cast<double>(k), static_cast<double>(hist[k]) / n});
  d.ccd = detail::ccd_from_histogram(hist);
  return d;
}

// Least-squares slope of log10(y) against log10(x) over points with
// x in [x_min, x_max] and x, y > 0.
inline double fit_loglog_slope(const DistributionTable& table, double x_min, double x_max) {
  std::vector<double> lx, ly;
  for (const auto& p : table.points) {
    if (p.x < x_min || p.x > x_max || p.x <= 0 || p.y <= 0) continue;
    lx.push_back(std::log10(p.x));
    ly.push_back(std::log10(p.y));
  }
  if (lx.size() < 2) throw UndefinedMetric("unfittable", "fewer than 2 usable points for log-log fit");
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) throw UndefinedMetric("unfittable", "log-log fit over a single x value");
  return sxy / sxx;
}

// The CCD of a power-law pdf k^gamma falls off as k^(gamma+1).
inline double degree_exponent(const Graph& g) {
  auto dist = degree_distribution(g);
  if (dist.pdf.points.size() < 3)
    throw UndefinedMetric("too_few_degrees", "degree exponent needs at least 3 distinct degrees");
  return fit_loglog_slope(dist.ccd, 1.0, static_cast<double>(g.max_degree())) - 1.0;
}

inline DistributionTable knn_by_degree(const Graph& g) {
  detail::require_nonempty(g);
  std::vector<double> knn(g.node_count());
  for (Graph::Index i = 0; i < g.node_count(); ++i) {
    if (g.degree_at(i) == 0)
      throw UndefinedMetric("isolated_node", "k_nn undefined for isolated node " + std::to_string(g.id_at(i)));
    double s = 0;
    for (auto j : g.adjacent(i)) s += static_cast<double>(g.degree_at(j));
    knn[i] = s / static_cast<double>(g.degree_at(i));
  }
  return detail::mean_by_degree(g, knn);
}

// Degree-degree correlation over links; each undirected link is one term.
// Scaled by 4L^2 the numerator and denominator are exact integers, so the
// degenerate (regular) case is detected without rounding.
inline double assortative_coefficient(const Graph& g) {
  if (g.edge_count() == 0) throw UndefinedMetric("no_links", "assortative coefficient needs at least one link");
  using Wide = __int128;
  Wide prod = 0, sum = 0, squares = 0;
  for (Graph::Index i = 0; i < g.node_count(); ++i)
    for (auto j : g.adjacent(i)) {
      if (j < i) continue;
      const Wide a = static_cast<Wide>(g.degree_at(i));
      const Wide b = static_cast<Wide>(g.degree_at(j));
      prod += a * b;
      sum += a + b;
      squares += a * a + b * b;
    }
  const Wide links = static_cast<Wide>(g.edge_count());
  const Wide num = 4 * links * prod - sum * sum;
  const Wide den = 2 * links * squares - sum * sum;
  if (den == 0)
    throw UndefinedMetric("regular", "assortative coefficient undefined: all link endpoints share one degree");
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

// phi(k) over the club of nodes with degree >= k, for each occurring k whose
// club has at least two members.
inline DistributionTable rich_club_by_degree(const Graph& g) {
  detail::require_nonempty(g);
  const std::size_t kmax = g.max_degree();
  std::vector<std::uint64_t> nodes_at(kmax + 2, 0), links_at(kmax + 2, 0);
  for (Graph::Index i = 0; i < g.node_count(); ++i) {
    ++nodes_at[g.degree_at(i)];
    for (auto j : g.adjacent(i))
      if (i < j) ++links_at[std::min(g.degree_at(i), g.degree_at(j))];
  }
  DistributionTable t{TableKind::by_degree, {}};
  std::uint64_t members = 0, links = 0;
  std::vector<Point> rev;
  for (std::size_t k = kmax + 1; k-- > 0;) {
    members += nodes_at[k];
    links += links_at[k];
    if (nodes_at[k] == 0 || members < 2) continue;
    const double possible = static_cast<double>(members) * static_cast<double>(members - 1) / 2.0;
    rev.push_back({static_cast<double>(k), static_cast<double>(links) / possible});
  }
  t.points.assign(rev.rbegin(), rev.rend());
  return t;
}

// phi over the top-r nodes of the rank list, x = r/N for r = 2..N.
inline DistributionTable rich_club_by_rank(const Graph& g) {
  DistributionTable t{TableKind::by_rank, {}};
  const std::size_t n = g.node_count();
  if (n < 2) return t;
  auto order = detail::rank_order(g);
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r + 1;
  std::vector<std::uint64_t> closes_at(n + 1, 0);
  for (Graph::Index i = 0; i < n; ++i)
    for (auto j : g.adjacent(i))
      if (i < j) ++closes_at[std::max(rank[i], rank[j])];
  std::uint64_t links = closes_at[1];
  for (std::size_t r = 2; r <= n; ++r) {
    links += closes_at[r];
    const double rr = static_cast<double>(r);
    t.points.push_back({rr / static_cast<double>(n), static_cast<double>(links) / (rr * (rr - 1) / 2)});
  }
  return t;
}

// Largest n such that the top-n nodes of the rank list are pairwise adjacent.
inline std::size_t top_clique_size(const Graph& g) {
  detail::require_nonempty(g);
  auto order = detail::rank_order(g);
  std::size_t n = 1;
  for (; n < order.size(); ++n) {
    bool joins = true;
    for (std::size_t m = 0; m < n && joins; ++m) joins = g.has_edge_at(order[n], order[m]);
    if (!joins) break;
  }
  return n;
}

// Fits phi(r/N) from the first rank whose club is not a clique through N.
inline double rich_club_exponent(const Graph& g) {
  auto t = rich_club_by_rank(g);
  for (const auto& p : t.points)
    if (p.y < 1.0) return fit_loglog_slope(t, p.x, 1.0);
  throw UndefinedMetric("unfittable", "rich-club connectivity never drops below 1");
}

// Number of links among each node's neighbours.
inline std::vector<std::size_t> triangle_coefficients(const Graph& g) {
  std::vector<std::size_t> kt(g.node_count(), 0);
  for (Graph::Index u = 0; u < g.node_count(); ++u) {
    auto nu = g.adjacent(u);
    for (auto v : nu) {
      if (v <= u) continue;
      auto nv = g.adjacent(v);
      // Common neighbours w > v close triangle (u, v, w) exactly once.
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else {
          ++kt[u];
          ++kt[v];
          ++kt[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return kt;
}

inline double clustering_coefficient(std::size_t triangles, std::size_t degree) {
  if (degree < 2) return 0.0;
  return static_cast<double>(triangles) / (static_cast<double>(degree) * static_cast<double>(degree - 1) / 2.0);
}

struct TriangleSummaries {
  DistributionTable ccd;
  DistributionTable by_degree;
  double mean = 0;
};

inline TriangleSummaries triangle_summaries(const Graph& g) {
  detail::require_nonempty(g);
  auto kt = triangle_coefficients(g);
  TriangleSummaries s;
  std::vector<std::uint64_t> hist(*std::max_element(kt.begin(), kt.end()) + 1, 0);
  for (auto t : kt) ++hist[t];
  s.ccd = detail::ccd_from_histogram(hist);
  std::vector<double> as_real(kt.begin(), kt.end());
  s.by_degree = detail::mean_by_degree(g, as_real);
  double total = 0;
  for (auto t : kt) total += static_cast<double>(t);
  s.mean = total / static_cast<double>(kt.size());
  return s;
}

inline constexpr std::uint32_t unreachable_hops = UINT32_MAX;

namespace detail {

// Breadth-first hop counts from `src` into `dist` (sized N, any contents);
// `queue` is scratch of size N. visit(d) is called once per reached node
// other than the source.
template <typename Visit>
void bfs_hops(const Graph& g, Graph::Index src, std::vector<std::uint32_t>& dist,
              std::vector<Graph::Index>& queue, Visit&& visit) {
  std::fill(dist.begin(), dist.end(), unreachable_hops);
  std::size_t head = 0, tail = 0;
  queue[tail++] = src;
  dist[src] = 0;
  while (head < tail) {
    const auto u = queue[head++];
    const auto next = dist[u] + 1;
    for (auto w : g.adjacent(u)) {
      if (dist[w] != unreachable_hops) continue;
      dist[w] = next;
      queue[tail++] = w;
      visit(next);
    }
  }
}

}  // namespace detail

// Hop distance from `source` to every node, aligned with Graph::nodes();
// unreachable_hops where no path exists.
inline std::vector<std::uint32_t> hop_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<Graph::Index> queue(g.node_count());
  detail::bfs_hops(g, g.index_of(source), dist, queue, [](std::uint32_t) {});
  return dist;
}

struct PathStats {
  DistributionTable ccd;
  DistributionTable by_degree;
  double ell_star = 0;
  bool disconnected = false;
};

// All-source breadth-first search on the largest connected component.
// Sources are split across `threads` workers; the reduction is over integer
// counts, so the result does not depend on the split.
inline PathStats shortest_path_stats(const Graph& input, unsigned threads = 1) {
  detail::require_nonempty(input);
  PathStats s;
  s.disconnected = !is_connected(input);
  const Graph g = s.disconnected ? largest_connected_component(input) : input;
  const std::size_t n = g.node_count();
  if (n < 2) throw UndefinedMetric("single_node", "path length undefined on a single-node component");

  std::vector<std::uint64_t> dist_sum(n, 0);
  const std::size_t chunks = std::min<std::size_t>(n, std::max(1u, threads) * 4);
  std::vector<std::vector<std::uint64_t>> chunk_hist(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::vector<std::uint32_t> dist(n);
    std::vector<Graph::Index> queue(n);
    auto& hist = chunk_hist[c];
    for (std::size_t src = c; src < n; src += chunks) {
      std::uint64_t sum = 0;
      detail::bfs_hops(g, static_cast<Graph::Index>(src), dist, queue, [&](std::uint32_t d) {
        sum += d;
        if (hist.size() <= d) hist.resize(d + 1, 0);
        ++hist[d];
      });
      dist_sum[src] = sum;
    }
  });

  std::vector<std::uint64_t> hist;
  for (const auto& h : chunk_hist) {
    if (hist.size() < h.size()) hist.resize(h.size(), 0);
    for (std::size_t d = 0; d < h.size(); ++d) hist[d] += h[d];
  }
  // Every unordered pair was reached from both ends.
  for (auto& h : hist) h /= 2;
  s.ccd = detail::ccd_from_histogram(hist);

  const std::uint64_t total = std::accumulate(dist_sum.begin(), dist_sum.end(), std::uint64_t{0});
  s.ell_star = static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));

  std::vector<double> mean_dist(n);
  for (std::size_t i = 0; i < n; ++i)
    mean_dist[i] = static_cast<double>(dist_sum[i]) / static_cast<double>(n - 1);
  s.by_degree = detail::mean_by_degree(g, mean_dist);
  return s;
}

struct Coreness {
  std::vector<std::size_t> per_node;
  std::size_t c_max = 0;
};

// Bucket-based minimum-degree peeling, linear in N + L.
inline Coreness coreness(const Graph& g) {
  detail::require_nonempty(g);
  const std::size_t n = g.node_count();
  const std::size_t kmax = g.max_degree();
  std::vector<std::size_t> deg = g.degrees();
  std::vector<std::size_t> bin(kmax + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const auto count = b;
    b = start;
    start += count;
  }
  std::vector<Graph::Index> vert(n);
  std::vector<std::size_t> pos(n);
  for (Graph::Index v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = kmax; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const auto v = vert[i];
    for (auto u : g.adjacent(v)) {
      if (deg[u] <= deg[v]) continue;
      const auto du = deg[u];
      const auto pu = pos[u];
      const auto pw = bin[du];
      const auto w = vert[pw];
      if (u != w) {
        std::swap(vert[pu], vert[pw]);
        pos[u] = pw;
        pos[w] = pu;
      }
      ++bin[du];
      --deg[u];
    }
  }
  Coreness c;
  c.per_node = std::move(deg);
  c.c_max = *std::max_element(c.per_node.begin(), c.per_node.end());
  return c;
}

// A report field: either a value or the reason it is undefined.
struct Metric {
  std::optional<double> value;
  std::string reason;

  static Metric of(double v) { return {v, {}}; }
  static Metric absent(std::string why) { return {std::nullopt, std::move(why)}; }
  bool defined() const noexcept { return value.has_value(); }

  friend bool operator==(const Metric&, const Metric&) = default;
};

struct MetricsReport {
  Metric n, l, k_max, gamma, alpha, n_clique, theta, mean_triangle, ell_star, c_max;
  bool disconnected = false;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct ReportField {
  const char* key;
  const char* label;
  Metric MetricsReport::*member;
};

// Row order and key names of the report.
inline constexpr ReportField report_fields[] = {
    {"n", "Number of nodes N", &MetricsReport::n},
    {"l", "Number of links L", &MetricsReport::l},
    {"k_max", "Maximum degree k_max", &MetricsReport::k_max},
    {"gamma", "Degree exponent gamma", &MetricsReport::gamma},
    {"alpha", "Assortative coefficient alpha", &MetricsReport::alpha},
    {"n_clique", "Top clique size n_clique", &MetricsReport::n_clique},
    {"theta", "Rich-club exponent theta", &MetricsReport::theta},
    {"mean_triangle", "Average triangle coefficient", &MetricsReport::mean_triangle},
    {"ell_star", "Characteristic path length l*", &MetricsReport::ell_star},
    {"c_max", "Maximum coreness c_max", &MetricsReport::c_max},
};

namespace detail {

template <typename Fn>
Metric guarded(Fn&& fn) {
  try {
    return Metric::of(static_cast<double>(fn()));
  } catch (const UndefinedMetric& e) {
    return Metric::absent(e.reason());
  }
}

}  // namespace detail

inline MetricsReport full_report(const Graph& g, unsigned threads = 1) {
  MetricsReport r;
  r.n = Metric::of(static_cast<double>(g.node_count()));
  r.l = Metric::of(static_cast<double>(g.edge_count()));
  if (g.empty()) {
    for (const auto& f : report_fields)
      if (f.member != &MetricsReport::n && f.member != &MetricsReport::l) r.*f.member = Metric::absent("empty");
    return r;
  }
  r.k_max = Metric::of(static_cast<double>(g.max_degree()));
  r.gamma = detail::guarded([&] { return degree_exponent(g); });
  r.alpha = detail::guarded([&] { return assortative_coefficient(g); });
  r.n_clique = detail::guarded([&] { return top_clique_size(g); });
  r.theta = detail::guarded([&] { return rich_club_exponent(g); });
  r.mean_triangle = detail::guarded([&] { return triangle_summaries(g).mean; });
  r.disconnected = !is_connected(g);
  r.ell_star = detail::guarded([&] { return shortest_path_stats(g, threads).ell_star; });
  r.c_max = detail::guarded([&] { return coreness(g).c_max; });
  return r;
}

// Field-wise arithmetic mean. Every report must have the same fields defined.
inline MetricsReport average_reports(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("cannot average an empty set of reports");
  std::string mismatched;
  for (const auto& f : report_fields) {
    const bool first = (reports.front().*f.member).defined();
    for (const auto& r : reports)
      if ((r.*f.member).defined() != first) {
        mismatched += mismatched.empty() ? "" : ", ";
        mismatched += f.key;
        break;
      }
  }
  if (!mismatched.empty())
    throw std::invalid_argument("reports differ in defined fields: " + mismatched);

  MetricsReport out;
  const double count = static_cast<double>(reports.size());
  for (const auto& f : report_fields) {
    const auto& head = reports.front().*f.member;
    if (!head.defined()) {
      out.*f.member = head;
      continue;
    }
    double sum = 0;
    bool uniform = true;
    for (const auto& r : reports) {
      sum += *(r.*f.member).value;
      uniform = uniform && *(r.*f.member).value == *head.value;
    }
    out.*f.member = Metric::of(uniform ? *head.value : sum / count);
  }
  for (const auto& r : reports) out.disconnected = out.disconnected || r.disconnected;
  return out;
}

}  // namespace pfpnet
