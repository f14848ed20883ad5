#pragma once

// Simple graphs on [n], components, quotients, and the two component-count
// inequalities for contractions and for doubled vertex sets.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/set_partition.hpp"

namespace ewens {

class SimpleGraph {
 public:
  explicit SimpleGraph(int n = 0) : n_(n) {
    if (n < 0) throw ValidationError("graph: negative vertex count");
  }

  SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges) : SimpleGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  // Duplicate edges collapse; loops are rejected.
  void add_edge(int u, int v) {
    if (u < 1 || u > n_ || v < 1 || v > n_) {
      throw ValidationError("graph: edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "} references a vertex outside [" + std::to_string(n_) + "]");
    }
    if (u == v) throw ValidationError("graph: loop at vertex " + std::to_string(u));
    edges_.insert(std::minmax(u, v));
  }

  int vertex_count() const { return n_; }
  // Sorted pairs (u, v) with u < v.
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const { return edges_.count(std::minmax(u, v)) > 0; }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  int n_;
  std::set<std::pair<int, int>> edges_;
};

inline SetPartition connected_components(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [u, v] : g.edges()) {
    parent[detail::find_root(parent, u - 1)] = detail::find_root(parent, v - 1);
  }
  std::vector<int> labels(n);
  for (int k = 0; k < n; ++k) labels[k] = detail::find_root(parent, k);
  return SetPartition::from_labels(labels);
}

inline int component_count(const SimpleGraph& g) { return connected_components(g).block_count(); }

// f[v-1] in [1, w] is the image of vertex v; every w must be hit.
inline SimpleGraph quotient(const SimpleGraph& g, const std::vector<int>& f, int w) {
  if (static_cast<int>(f.size()) != g.vertex_count()) {
    throw ValidationError("quotient: map must be defined on every vertex");
  }
  std::vector<char> hit(w + 1, 0);
  for (int x : f) {
    if (x < 1 || x > w) throw ValidationError("quotient: image " + std::to_string(x) + " outside target");
    hit[x] = 1;
  }
  for (int x = 1; x <= w; ++x) {
    if (!hit[x]) throw ValidationError("quotient: map is not surjective, misses " + std::to_string(x));
  }
  SimpleGraph out(w);
  for (auto [u, v] : g.edges()) {
    if (f[u - 1] != f[v - 1]) out.add_edge(f[u - 1], f[v - 1]);
  }
  return out;
}

// Subgraph induced on the listed vertices, relabelled 1..k in the given order.
inline SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<int>& vertices) {
  std::vector<int> index(g.vertex_count() + 1, 0);
  for (std::size_t k = 0; k < vertices.size(); ++k) index[vertices[k]] = static_cast<int>(k) + 1;
  SimpleGraph out(static_cast<int>(vertices.size()));
  for (auto [u, v] : g.edges()) {
    if (index[u] && index[v]) out.add_edge(index[u], index[v]);
  }
  return out;
}

// Doubled vertex sets: vertex w of W = [m] is w, its barred copy is m + w.
inline int doubled_half(const SimpleGraph& g) {
  if (g.vertex_count() % 2 != 0) {
    throw ValidationError("doubled graph needs an even vertex count, got " +
                          std::to_string(g.vertex_count()));
  }
  return g.vertex_count() / 2;
}

// The map forgetting bars.
inline std::vector<int> forget_bars(int m) {
  std::vector<int> f(2 * m);
  for (int w = 1; w <= m; ++w) f[w - 1] = f[m + w - 1] = w;
  return f;
}

// Edge {w, w'} iff both {w, w'} and their barred copies are edges.
inline SimpleGraph strong_quotient(const SimpleGraph& g) {
  const int m = doubled_half(g);
  SimpleGraph out(m);
  for (auto [u, v] : g.edges()) {
    if (u <= m && v <= m && g.has_edge(u + m, v + m)) out.add_edge(u, v);
  }
  return out;
}

// G1 joins j and h when the pairs coincide; G2 when they share any symbol.
inline std::pair<SimpleGraph, SimpleGraph> g1_g2(const std::vector<int>& i, const std::vector<int>& s) {
  if (i.size() != s.size()) throw ValidationError("index lists differ in length");
  if (i.empty()) throw ValidationError("index lists must be nonempty");
  const int r = static_cast<int>(i.size());
  SimpleGraph g1(r), g2(r);
  for (int j = 0; j < r; ++j) {
    for (int h = j + 1; h < r; ++h) {
      if (i[j] == i[h] && s[j] == s[h]) g1.add_edge(j + 1, h + 1);
      if (i[j] == i[h] || i[j] == s[h] || s[j] == i[h] || s[j] == s[h]) g2.add_edge(j + 1, h + 1);
    }
  }
  return {g1, g2};
}

struct ContractionCheck {
  int components = 0;           // Conn(G)
  int quotient_components = 0;  // Conn(G/f)
  int fiber_excess = 0;         // sum over fibers of (Conn(G[fiber]) - 1)
  bool holds = false;
};

inline ContractionCheck check_contraction_bound(const SimpleGraph& g, const std::vector<int>& f, int w) {
  ContractionCheck out;
  out.components = component_count(g);
  out.quotient_components = component_count(quotient(g, f, w));
  std::vector<std::vector<int>> fibers(w + 1);
  for (int v = 1; v <= g.vertex_count(); ++v) fibers[f[v - 1]].push_back(v);
  for (int x = 1; x <= w; ++x) out.fiber_excess += component_count(induced_subgraph(g, fibers[x])) - 1;
  out.holds = out.components <= out.quotient_components + out.fiber_excess;
  return out;
}

struct Fiber2Check {
  int components = 0;                  // Conn(G)
  int quotient_components = 0;         // Conn(G/f)
  int strong_quotient_components = 0;  // Conn(G//f)
  bool holds = false;
};

inline Fiber2Check check_fiber2_bound(const SimpleGraph& g) {
  const int m = doubled_half(g);
  Fiber2Check out;
  out.components = component_count(g);
  out.quotient_components = component_count(quotient(g, forget_bars(m), m));
  out.strong_quotient_components = component_count(strong_quotient(g));
  out.holds = out.components <= out.quotient_components + out.strong_quotient_components;
  return out;
}

}  // namespace ewens
