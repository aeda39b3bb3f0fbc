#pragma once

// Concentric-shell drawing of a k-core decomposition. Nodes sit on one ring
// per coreness value, the highest core innermost; dot size grows
// logarithmically with degree and colour runs from blue (coreness 0) to red
// (c_max).

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfpnet/graph.hpp"
#include "pfpnet/metrics.hpp"

namespace pfpnet {

struct ShellPlacement {
  NodeId node = 0;
  std::size_t coreness = 0;
  double radius = 0;      // ring radius
  double angle = 0;       // radians in [0, 2pi)
  double dot_radius = 0;
  double color_index = 0; // coreness / c_max
};

struct ShellLayout {
  std::vector<ShellPlacement> placements;  // aligned with Graph::nodes()
  std::size_t c_max = 0;
  double outer_radius = 0;
};

struct LayoutOptions {
  double outer_radius = 450.0;
  double base_dot = 1.5;
};

inline double ring_radius(std::size_t c, std::size_t c_max, double outer) {
  return outer * static_cast<double>(c_max - c + 1) / static_cast<double>(c_max);
}

inline double dot_radius(std::size_t degree, double base) {
  return base * (1.0 + std::log2(1.0 + static_cast<double>(degree)));
}

inline ShellLayout layout(const Graph& g, const Coreness& core, LayoutOptions opt = {}) {
  if (g.empty()) throw std::invalid_argument("cannot lay out an empty graph");
  if (core.per_node.size() != g.node_count())
    throw std::invalid_argument("coreness does not cover every node");
  if (core.c_max < 1) throw std::invalid_argument("layout needs c_max >= 1");

  std::vector<std::size_t> shell_size(core.c_max + 1, 0);
  for (auto c : core.per_node) ++shell_size[c];
  std::vector<std::size_t> slot(core.c_max + 1, 0);

  ShellLayout out;
  out.c_max = core.c_max;
  out.outer_radius = opt.outer_radius;
  out.placements.reserve(g.node_count());
  // Nodes are visited in ascending NodeId, which fixes the angular order.
  for (Graph::Index i = 0; i < g.node_count(); ++i) {
    const auto c = core.per_node[i];
    ShellPlacement p;
    p.node = g.id_at(i);
    p.coreness = c;
    p.radius = ring_radius(c, core.c_max, opt.outer_radius);
    p.angle = 2.0 * std::numbers::pi * static_cast<double>(slot[c]++) / static_cast<double>(shell_size[c]);
    p.dot_radius = dot_radius(g.degree_at(i), opt.base_dot);
    p.color_index = static_cast<double>(c) / static_cast<double>(core.c_max);
    out.placements.push_back(p);
  }
  return out;
}

inline ShellLayout layout(const Graph& g, LayoutOptions opt = {}) {
  if (g.empty()) throw std::invalid_argument("cannot lay out an empty graph");
  return layout(g, coreness(g), opt);
}

struct SvgOptions {
  double width = 1000;
  double height = 1000;
};

inline std::string render_svg(const ShellLayout& lay, const Graph& g, SvgOptions opt = {}) {
  if (lay.placements.size() != g.node_count())
    throw std::invalid_argument("layout does not match graph");
  const double cx = opt.width / 2, cy = opt.height / 2;
  const double scale = std::min(opt.width, opt.height) / (2.0 * lay.outer_radius) * 0.95;
  std::vector<double> xs(g.node_count()), ys(g.node_count());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& p = lay.placements[i];
    xs[i] = cx + scale * p.radius * std::cos(p.angle);
    ys[i] = cy + scale * p.radius * std::sin(p.angle);
  }

  std::string out;
  char buf[256];
  auto emit = [&](int n) { out.append(buf, static_cast<std::size_t>(n)); };
  emit(std::snprintf(buf, sizeof buf,
                     "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                     "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                     "width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                     opt.width, opt.height, opt.width, opt.height));
  emit(std::snprintf(buf, sizeof buf, "<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", opt.width, opt.height));
  out += "<g stroke=\"#555555\" stroke-width=\"0.4\" stroke-opacity=\"0.25\">\n";
  for (Graph::Index i = 0; i < g.node_count(); ++i)
    for (auto j : g.adjacent(i)) {
      if (j < i) continue;
      emit(std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n",
                         xs[i], ys[i], xs[j], ys[j]));
    }
  out += "</g>\n<g stroke=\"none\">\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& p = lay.placements[i];
    const int red = static_cast<int>(std::lround(255.0 * p.color_index));
    const int blue = 255 - red;
    emit(std::snprintf(buf, sizeof buf,
                       "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"#%02x00%02x\">"
                       "<title>%llu k=%zu c=%zu</title></circle>\n",
                       xs[i], ys[i], scale * p.dot_radius, red, blue,
                       static_cast<unsigned long long>(p.node), g.degree_at(static_cast<Graph::Index>(i)),
                       p.coreness));
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace pfpnet
