#include "critwin/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "critwin/error.hpp"

namespace critwin {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 0) throw Error(Errc::domain, "graph order must be non-negative");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) {
      std::ostringstream os;
      os << "edge (" << a << "," << b << ") has a label outside 1.." << n;
      throw Error(Errc::domain, os.str());
    }
    if (a == b) throw Error(Errc::domain, "loop at vertex " + std::to_string(a) + " in a simple graph");
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1]) {
      std::ostringstream os;
      os << "duplicate edge (" << edges_[i].u << "," << edges_[i].v << ")";
      throw Error(Errc::domain, os.str());
    }
  offset_.assign(n + 2, 0);
  for (const Edge& e : edges_) {
    ++offset_[e.u + 1];
    ++offset_[e.v + 1];
  }
  for (int v = 1; v <= n + 1; ++v) offset_[v] += offset_[v - 1];
  adj_.resize(2 * edges_.size());
  std::vector<int> fill(offset_.begin(), offset_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = e.v;
    adj_[fill[e.v]++] = e.u;
  }
  // edges are sorted by (u, v), so lists are sorted except for the
  // interleaving of smaller and larger neighbours
  for (int v = 1; v <= n; ++v) std::sort(adj_.begin() + offset_[v], adj_.begin() + offset_[v + 1]);
}

bool Graph::has_edge(int u, int v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::half_edge_index(int v, int w) const {
  auto nb = neighbors(v);
  return static_cast<std::size_t>(offset_[v] + (std::lower_bound(nb.begin(), nb.end(), w) - nb.begin()));
}

std::string to_json_line(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.order();
  auto arr = nlohmann::json::array();
  for (const Edge& e : g.edges()) arr.push_back({e.u, e.v});
  j["edges"] = std::move(arr);
  return j.dump();
}

Graph graph_from_json_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::parse, std::string("bad graph line: ") + ex.what());
  }
  if (!j.contains("n") || !j.contains("edges")) throw Error(Errc::parse, "graph line needs fields n and edges");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw Error(Errc::parse, "edge must be a [u, v] pair");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(j["n"].get<int>(), edges);
}

void write_jsonl(std::ostream& os, const std::vector<Graph>& graphs) {
  for (const Graph& g : graphs) os << to_json_line(g) << '\n';
}

std::vector<Graph> read_jsonl(std::istream& is) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(graph_from_json_line(line));
  }
  return out;
}

std::vector<Component> components(const Graph& g) {
  int n = g.order();
  std::vector<int> label(n + 1, -1);
  std::vector<Component> out;
  std::vector<int> stack;
  for (int s = 1; s <= n; ++s) {
    if (label[s] >= 0) continue;
    Component c;
    int id = static_cast<int>(out.size());
    label[s] = id;
    stack.push_back(s);
    long degree_sum = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      c.vertices.push_back(v);
      degree_sum += g.degree(v);
      for (int w : g.neighbors(v))
        if (label[w] < 0) {
          label[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    c.edges = degree_sum / 2;
    c.excess = c.edges - static_cast<long>(c.vertices.size());
    c.complex = c.excess >= 1;
    out.push_back(std::move(c));
  }
  return out;
}

TwoCore two_core(const Graph& g, PeelOrder order) {
  int n = g.order();
  TwoCore tc;
  tc.in_core.assign(n + 1, 1);
  tc.in_core[0] = 0;
  tc.parent.assign(n + 1, 0);
  tc.attach.assign(n + 1, 0);
  tc.height.assign(n + 1, 0);
  tc.tree_diam.assign(n + 1, 0);
  tc.tree_size.assign(n + 1, 0);
  std::vector<int> deg(n + 1, 0);
  std::vector<char> queued(n + 1, 0);
  std::deque<int> work;
  for (int v = 1; v <= n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) {
      work.push_back(v);
      queued[v] = 1;
    }
  }
  while (!work.empty()) {
    int v;
    if (order == PeelOrder::fifo) {
      v = work.front();
      work.pop_front();
    } else {
      v = work.back();
      work.pop_back();
    }
    tc.in_core[v] = 0;
    tc.removal.push_back(v);
    for (int w : g.neighbors(v)) {
      if (!tc.in_core[w]) continue;
      tc.parent[v] = w;
      if (--deg[w] <= 1 && !queued[w]) {
        queued[w] = 1;
        work.push_back(w);
      }
    }
  }
  for (int v = 1; v <= n; ++v) tc.core_size += tc.in_core[v];

  // heights and diameters, children are always removed before their parent
  std::vector<int> best1(n + 1, 0), best2(n + 1, 0), below_diam(n + 1, 0);
  auto offer = [&](int p, int h) {
    if (h > best1[p]) {
      best2[p] = best1[p];
      best1[p] = h;
    } else if (h > best2[p]) {
      best2[p] = h;
    }
  };
  for (int u : tc.removal) {
    tc.height[u] = best1[u];
    below_diam[u] = std::max(below_diam[u], best1[u] + best2[u]);
    int p = tc.parent[u];
    if (p == 0) continue;
    offer(p, best1[u] + 1);
    below_diam[p] = std::max(below_diam[p], below_diam[u]);
  }
  for (int v = 1; v <= n; ++v)
    if (tc.in_core[v]) {
      tc.height[v] = best1[v];
      tc.tree_diam[v] = std::max(below_diam[v], best1[v] + best2[v]);
    }
  for (auto it = tc.removal.rbegin(); it != tc.removal.rend(); ++it) {
    int u = *it, p = tc.parent[u];
    if (p == 0) continue;
    tc.attach[u] = tc.in_core[p] ? p : tc.attach[p];
    if (tc.attach[u]) ++tc.tree_size[tc.attach[u]];
  }
  return tc;
}

KernelMultigraph kernel(const Graph& g, const Component& comp, const TwoCore& core, bool detail) {
  if (comp.excess <= 0)
    throw Error(Errc::precondition, "kernel needs a component of excess >= 1, got " + std::to_string(comp.excess));
  KernelMultigraph k;
  k.detail = detail;
  k.excess = comp.excess;
  auto core_degree = [&](int v) {
    int d = 0;
    for (int w : g.neighbors(v)) d += core.in_core[w];
    return d;
  };
  std::vector<int> corners;
  for (int v : comp.vertices) {
    if (!core.in_core[v]) {
      ++k.tree_vertices;
      continue;
    }
    ++k.core_vertices;
    k.tree_height[v] = core.height[v];
    k.tree_diameter_bonus[v] = core.tree_diam[v];
    if (core_degree(v) >= 3) corners.push_back(v);
  }
  k.vertices = corners;
  auto is_corner = [&](int v) { return std::binary_search(corners.begin(), corners.end(), v); };
  auto slot = [&](int v, int w) { return g.half_edge_index(v, w); };
  std::vector<char> used(2 * g.size() + 1, 0);

  for (int c : corners) {
    for (int w : g.neighbors(c)) {
      if (!core.in_core[w]) continue;
      size_t s = slot(c, w);
      if (used[s]) continue;
      used[s] = 1;
      KernelEdge e;
      e.u = c;
      e.length = 1;
      int prev = c, cur = w;
      while (!is_corner(cur)) {
        if (detail) {
          e.internal.push_back(cur);
          e.bonus.push_back(core.height[cur]);
        }
        int next = 0;
        for (int x : g.neighbors(cur))
          if (core.in_core[x] && x != prev) {
            next = x;
            break;
          }
        if (next == 0) throw Error(Errc::internal, "kernel: broken 2-path at vertex " + std::to_string(cur));
        prev = cur;
        cur = next;
        ++e.length;
      }
      used[slot(cur, prev)] = 1;
      e.v = cur;
      k.core_edges += e.length;
      k.edges.push_back(std::move(e));
    }
  }
  if (static_cast<long>(k.edges.size()) - static_cast<long>(k.vertices.size()) != k.excess)
    throw Error(Errc::internal, "kernel excess does not match component excess");
  return k;
}

KernelMultigraph make_kernel(std::vector<int> vertices, const std::vector<std::array<int, 3>>& edges) {
  KernelMultigraph k;
  k.detail = true;
  std::sort(vertices.begin(), vertices.end());
  k.vertices = vertices;
  for (int v : vertices) {
    k.tree_height[v] = 0;
    k.tree_diameter_bonus[v] = 0;
  }
  for (const auto& [u, v, len] : edges) {
    if (len < 1) throw Error(Errc::domain, "kernel edge length must be positive");
    if (!std::binary_search(vertices.begin(), vertices.end(), u) ||
        !std::binary_search(vertices.begin(), vertices.end(), v))
      throw Error(Errc::domain, "kernel edge endpoint is not a kernel vertex");
    KernelEdge e;
    e.u = u;
    e.v = v;
    e.length = len;
    e.bonus.assign(len - 1, 0);
    k.core_edges += len;
    k.core_vertices += len - 1;
    k.edges.push_back(std::move(e));
  }
  k.core_vertices += static_cast<long>(vertices.size());
  k.excess = static_cast<long>(k.edges.size()) - static_cast<long>(k.vertices.size());
  return k;
}

Rational compensation_factor(const KernelMultigraph& k) {
  std::map<std::pair<int, int>, int> mult;
  for (const KernelEdge& e : k.edges) ++mult[{std::min(e.u, e.v), std::max(e.u, e.v)}];
  boost::multiprecision::cpp_int denom = 1;
  for (const auto& [key, m] : mult) {
    if (key.first == key.second) denom <<= m;  // 2^{m_xx}
    for (int i = 2; i <= m; ++i) denom *= i;
  }
  return Rational(1, denom);
}

int unicycle_length(const Component& comp, const TwoCore& core) {
  if (comp.excess != 0) throw Error(Errc::precondition, "unicycle_length needs a component of excess 0");
  int len = 0;
  for (int v : comp.vertices) len += core.in_core[v];
  return len;
}

}  // namespace critwin
