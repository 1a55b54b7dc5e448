// Planarity decision for small simple graphs: split into biconnected blocks,
// then run the Demoucron-Malgrange-Pertuiset path-addition procedure per block.
#include <algorithm>
#include <functional>
#include <map>
#include <queue>

#include "critwin/error.hpp"
#include "critwin/stats.hpp"

namespace critwin {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;
using Adjacency = std::vector<std::vector<std::pair<int, int>>>;  // (neighbour, edge id)

Adjacency build_adjacency(int n, const EdgeList& edges) {
  Adjacency adj(n);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    auto [u, v] = edges[id];
    adj[u].emplace_back(v, id);
    adj[v].emplace_back(u, id);
  }
  return adj;
}

std::vector<EdgeList> biconnected_blocks(int n, const EdgeList& edges) {
  Adjacency adj = build_adjacency(n, edges);
  std::vector<int> disc(n, 0), low(n, 0), stack;
  std::vector<EdgeList> blocks;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
    disc[u] = low[u] = ++timer;
    for (auto [v, id] : adj[u]) {
      if (id == parent_edge) continue;
      if (!disc[v]) {
        stack.push_back(id);
        dfs(v, id);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          EdgeList block;
          while (true) {
            int top = stack.back();
            stack.pop_back();
            block.push_back(edges[top]);
            if (top == id) break;
          }
          blocks.push_back(std::move(block));
        }
      } else if (disc[v] < disc[u]) {
        stack.push_back(id);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (!disc[v]) dfs(v, -1);
  return blocks;
}

std::vector<int> find_cycle(const Adjacency& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> parent(n, -1), state(n, 0), path;
  std::vector<int> cycle;
  std::function<bool(int, int)> dfs = [&](int u, int parent_edge) {
    state[u] = 1;
    for (auto [v, id] : adj[u]) {
      if (id == parent_edge) continue;
      if (state[v] == 1) {
        for (int x = u; x != v; x = parent[x]) cycle.push_back(x);
        cycle.push_back(v);
        return true;
      }
      if (state[v] == 0) {
        parent[v] = u;
        if (dfs(v, id)) return true;
      }
    }
    state[u] = 2;
    return false;
  };
  dfs(0, -1);
  return cycle;
}

struct Fragment {
  std::vector<int> attachments;
  int chord = -1;              // edge id for a single-edge fragment
  std::vector<int> interior;   // vertices outside the embedded subgraph
};

bool block_is_planar(const EdgeList& block_edges) {
  std::map<int, int> local;
  for (auto [u, v] : block_edges) {
    local.emplace(u, static_cast<int>(local.size()));
    local.emplace(v, static_cast<int>(local.size()));
  }
  int n = static_cast<int>(local.size());
  int m = static_cast<int>(block_edges.size());
  if (n <= 4 || m <= 3) return true;
  if (m > 3 * n - 6) return false;
  EdgeList edges;
  for (auto [u, v] : block_edges) edges.emplace_back(local[u], local[v]);
  Adjacency adj = build_adjacency(n, edges);

  std::vector<char> in_h(n, 0), edge_in_h(m, 0);
  std::vector<std::vector<int>> faces;
  std::vector<int> cycle = find_cycle(adj);
  if (cycle.empty()) throw Error(Errc::internal, "planarity: biconnected block without a cycle");
  for (size_t i = 0; i < cycle.size(); ++i) {
    int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
    in_h[a] = 1;
    for (auto [w, id] : adj[a])
      if (w == b) edge_in_h[id] = 1;
  }
  faces.push_back(cycle);
  faces.push_back(cycle);
  int embedded = static_cast<int>(cycle.size());

  while (embedded < m) {
    std::vector<Fragment> frags;
    for (int id = 0; id < m; ++id) {
      auto [u, v] = edges[id];
      if (!edge_in_h[id] && in_h[u] && in_h[v]) {
        Fragment f;
        f.attachments = {u, v};
        f.chord = id;
        frags.push_back(std::move(f));
      }
    }
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
      if (in_h[s] || seen[s]) continue;
      Fragment f;
      std::vector<int> stack = {s};
      seen[s] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        f.interior.push_back(x);
        for (auto [w, id] : adj[x]) {
          if (in_h[w]) {
            f.attachments.push_back(w);
          } else if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      std::sort(f.attachments.begin(), f.attachments.end());
      f.attachments.erase(std::unique(f.attachments.begin(), f.attachments.end()), f.attachments.end());
      frags.push_back(std::move(f));
    }
    if (frags.empty()) throw Error(Errc::internal, "planarity: no fragment left with edges unembedded");

    int chosen = -1, chosen_face = -1;
    std::vector<char> member(n);
    for (size_t fi = 0; fi < frags.size(); ++fi) {
      int count = 0, first = -1;
      for (size_t face = 0; face < faces.size(); ++face) {
        std::fill(member.begin(), member.end(), 0);
        for (int x : faces[face]) member[x] = 1;
        bool ok = std::all_of(frags[fi].attachments.begin(), frags[fi].attachments.end(),
                              [&](int a) { return member[a] != 0; });
        if (ok) {
          if (first < 0) first = static_cast<int>(face);
          ++count;
        }
      }
      if (count == 0) return false;
      if (count == 1 || chosen < 0) {
        chosen = static_cast<int>(fi);
        chosen_face = first;
        if (count == 1) break;
      }
    }

    // path through the chosen fragment between two distinct attachments
    const Fragment& fr = frags[chosen];
    std::vector<int> path;
    if (fr.chord >= 0) {
      path = {edges[fr.chord].first, edges[fr.chord].second};
      edge_in_h[fr.chord] = 1;
    } else {
      int a = fr.attachments[0];
      std::vector<int> prev(n, -1);
      std::vector<char> inside(n, 0), vis(n, 0);
      for (int x : fr.interior) inside[x] = 1;
      std::queue<int> q;
      for (auto [w, id] : adj[a])
        if (inside[w] && !vis[w]) {
          vis[w] = 1;
          prev[w] = a;
          q.push(w);
        }
      int end_inner = -1, b = -1;
      while (!q.empty() && b < 0) {
        int x = q.front();
        q.pop();
        for (auto [w, id] : adj[x]) {
          if (in_h[w]) {
            if (w != a) {
              b = w;
              end_inner = x;
              break;
            }
          } else if (inside[w] && !vis[w]) {
            vis[w] = 1;
            prev[w] = x;
            q.push(w);
          }
        }
      }
      if (b < 0) throw Error(Errc::internal, "planarity: fragment with a single attachment in a block");
      path.push_back(b);
      for (int x = end_inner; x != a; x = prev[x]) path.push_back(x);
      path.push_back(a);
      std::reverse(path.begin(), path.end());
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        int x = path[i], y = path[i + 1];
        for (auto [w, id] : adj[x])
          if (w == y) edge_in_h[id] = 1;
      }
      for (size_t i = 1; i + 1 < path.size(); ++i) in_h[path[i]] = 1;
    }
    embedded += static_cast<int>(path.size()) - 1;

    std::vector<int> face = faces[chosen_face];
    int a = path.front(), b = path.back();
    size_t ia = std::find(face.begin(), face.end(), a) - face.begin();
    size_t ib = std::find(face.begin(), face.end(), b) - face.begin();
    std::vector<int> f1, f2;
    for (size_t i = ia;; i = (i + 1) % face.size()) {
      f1.push_back(face[i]);
      if (i == ib) break;
    }
    for (size_t i = path.size() - 2; i >= 1; --i) f1.push_back(path[i]);
    for (size_t i = ib;; i = (i + 1) % face.size()) {
      f2.push_back(face[i]);
      if (i == ia) break;
    }
    for (size_t i = 1; i + 1 < path.size(); ++i) f2.push_back(path[i]);
    faces[chosen_face] = std::move(f1);
    faces.push_back(std::move(f2));
  }
  return true;
}

}  // namespace

bool is_planar_simple(int n, const std::vector<std::pair<int, int>>& edges) {
  for (auto [u, v] : edges)
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw Error(Errc::domain, "is_planar_simple: bad edge");
  for (const EdgeList& block : biconnected_blocks(n, edges))
    if (!block_is_planar(block)) return false;
  return true;
}

bool is_planar(const KernelMultigraph& k) {
  if (k.vertices.size() > 200) throw Error(Errc::size_guard, "is_planar: kernel larger than 200 vertices");
  std::map<int, int> idx;
  for (int v : k.vertices) idx.emplace(v, static_cast<int>(idx.size()));
  int n = static_cast<int>(idx.size());
  std::vector<std::pair<int, int>> edges;
  std::map<std::pair<int, int>, int> seen;
  for (const KernelEdge& e : k.edges) {
    int u = idx.at(e.u), v = idx.at(e.v);
    if (u == v) {
      int a = n++, b = n++;
      edges.insert(edges.end(), {{u, a}, {a, b}, {b, u}});
    } else if (seen[{std::min(u, v), std::max(u, v)}]++ > 0) {
      int a = n++;
      edges.insert(edges.end(), {{u, a}, {a, v}});
    } else {
      edges.emplace_back(u, v);
    }
  }
  return is_planar_simple(n, edges);
}

}  // namespace critwin
