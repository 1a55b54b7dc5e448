#include "critwin/stats.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "critwin/error.hpp"

namespace critwin {

namespace {

constexpr long kNone = std::numeric_limits<long>::min() / 4;

void guard(const KernelMultigraph& k, int max_excess, const char* what) {
  if (k.excess > max_excess)
    throw Error(Errc::size_guard, std::string(what) + ": kernel excess " + std::to_string(k.excess) +
                                      " is above the exhaustive-search limit " + std::to_string(max_excess));
}

// Kernel with dense corner indices and per-edge entry values.
struct Indexed {
  int K = 0;
  std::vector<int> a, b, len;  // per edge
  std::vector<long> h;         // tree height per corner
  std::vector<std::vector<int>> inc;  // corner -> incident edge ids (loops once)
  std::vector<long> from_a, from_b;   // best partial entry from each end
  std::vector<long> pair;             // two disjoint entries, one from each end
  std::vector<long> inside;           // path with both ends inside the 2-path (corners as ends allowed)
};

Indexed index_kernel(const KernelMultigraph& k) {
  if (!k.detail) throw Error(Errc::precondition, "longest_path needs a kernel built in detail mode");
  Indexed x;
  std::map<int, int> id;
  for (int v : k.vertices) id.emplace(v, static_cast<int>(id.size()));
  x.K = static_cast<int>(id.size());
  x.h.resize(x.K);
  x.inc.resize(x.K);
  for (auto [v, i] : id) x.h[i] = k.tree_height.count(v) ? k.tree_height.at(v) : 0;
  for (size_t e = 0; e < k.edges.size(); ++e) {
    const KernelEdge& ke = k.edges[e];
    int u = id.at(ke.u), v = id.at(ke.v), L = ke.length;
    if (static_cast<int>(ke.bonus.size()) != L - 1)
      throw Error(Errc::precondition, "kernel edge bonus list does not match its length");
    x.a.push_back(u);
    x.b.push_back(v);
    x.len.push_back(L);
    x.inc[u].push_back(static_cast<int>(e));
    if (v != u) x.inc[v].push_back(static_cast<int>(e));
    auto B = [&](int i) -> long { return ke.bonus[i - 1]; };
    long fa = kNone, fb = kNone, best_prefix = kNone, pr = kNone;
    for (int i = 1; i <= L - 1; ++i) {
      fa = std::max(fa, i + B(i));
      fb = std::max(fb, L - i + B(i));
      // best_prefix holds max over i' < i of (i' + B(i'))
      if (best_prefix != kNone) pr = std::max(pr, best_prefix + (L - i) + B(i));
      best_prefix = std::max(best_prefix, i + B(i));
    }
    if (u == v) fa = fb = std::max(fa, fb);
    x.from_a.push_back(fa);
    x.from_b.push_back(fb);
    x.pair.push_back(pr);
    // positions 0..L with corner heights at the ends; a loop may not use both ends
    auto val = [&](int i) -> long {
      if (i == 0) return x.h[u];
      if (i == L) return x.h[v];
      return B(i);
    };
    long ins = kNone, best = kNone;
    int last = (u == v) ? L - 1 : L;
    for (int j = 0; j <= last; ++j) {
      if (best != kNone) ins = std::max(ins, best + j + val(j));
      best = std::max(best, val(j) - j);
    }
    if (u == v)
      for (int i = 1; i < L; ++i) ins = std::max(ins, val(i) - i + L + val(L));
    x.inside.push_back(ins);
  }
  return x;
}

struct Option {
  long value;
  int tag;
};

// Best two options with distinct tags at corner c, given used edges.
void top_two(const Indexed& x, int c, const std::vector<char>& used, Option& o1, Option& o2) {
  o1 = {x.h[c], -1 - c};
  o2 = {kNone, -2 - x.K - c};
  auto offer = [&](Option o) {
    if (o.value > o1.value) {
      o2 = o1;
      o1 = o;
    } else if (o.value > o2.value) {
      o2 = o;
    }
  };
  for (int e : x.inc[c]) {
    if (used[e]) continue;
    long v = (x.a[e] == c) ? x.from_a[e] : x.from_b[e];
    if (v != kNone) offer({v, e});
  }
}

long combine(const Option& s1, const Option& s2, const Option& t1, const Option& t2) {
  if (s1.tag != t1.tag) return s1.value + t1.value;
  long best = kNone;
  if (t2.value != kNone) best = std::max(best, s1.value + t2.value);
  if (s2.value != kNone) best = std::max(best, s2.value + t1.value);
  return best;
}

}  // namespace

int component_diameter(const Graph& g, const Component& comp) {
  std::vector<int> dist(g.order() + 1, -1);
  std::vector<int> queue;
  queue.reserve(comp.vertices.size());
  int best = 0;
  for (int s : comp.vertices) {
    for (int v : queue) dist[v] = -1;
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    for (size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          best = std::max(best, dist[w]);
          queue.push_back(w);
        }
    }
  }
  return best;
}

long diameter(const Graph& g, const std::vector<Component>& comps) {
  long best = -1;
  for (const Component& c : comps)
    if (c.complex) best = std::max<long>(best, component_diameter(g, c));
  return best;
}

long longest_path(const KernelMultigraph& k, int max_excess) {
  guard(k, max_excess, "longest_path");
  Indexed x = index_kernel(k);
  long best = 0;
  for (auto [v, d] : k.tree_diameter_bonus) best = std::max<long>(best, d);
  for (long v : x.inside) best = std::max(best, v);

  std::vector<char> used(x.len.size(), 0), on_path(x.K, 0);
  for (int s = 0; s < x.K; ++s) {
    Option s1, s2;
    top_two(x, s, used, s1, s2);
    // zero-length kernel path: both ends leave from s
    best = std::max(best, s1.value + std::max(0L, s2.value));
    for (int e : x.inc[s])
      if (x.a[e] == x.b[e] && x.pair[e] != kNone) best = std::max(best, x.pair[e]);

    on_path[s] = 1;
    std::function<void(int, long)> dfs = [&](int t, long len) {
      for (int e : x.inc[t]) {
        if (used[e] || x.a[e] == x.b[e]) continue;
        int w = x.a[e] == t ? x.b[e] : x.a[e];
        if (on_path[w]) continue;
        used[e] = 1;
        on_path[w] = 1;
        long L = len + x.len[e];
        Option a1, a2, b1, b2;
        top_two(x, s, used, a1, a2);
        top_two(x, w, used, b1, b2);
        best = std::max(best, L + combine(a1, a2, b1, b2));
        for (int f : x.inc[w]) {
          if (used[f] || x.pair[f] == kNone) continue;
          int other = x.a[f] == w ? x.b[f] : x.a[f];
          if (other == s) best = std::max(best, L + x.pair[f]);
        }
        dfs(w, L);
        on_path[w] = 0;
        used[e] = 0;
      }
    };
    dfs(s, 0);
    on_path[s] = 0;
  }
  return best;
}

long circumference(const KernelMultigraph& k, int max_excess) {
  guard(k, max_excess, "circumference");
  std::map<int, int> id;
  for (int v : k.vertices) id.emplace(v, static_cast<int>(id.size()));
  int K = static_cast<int>(id.size());
  std::vector<std::vector<int>> inc(K);
  std::vector<int> a, b, len;
  long best = 0;
  for (size_t e = 0; e < k.edges.size(); ++e) {
    int u = id.at(k.edges[e].u), v = id.at(k.edges[e].v);
    a.push_back(u);
    b.push_back(v);
    len.push_back(k.edges[e].length);
    if (u == v) {
      best = std::max<long>(best, k.edges[e].length);
    } else {
      inc[u].push_back(static_cast<int>(e));
      inc[v].push_back(static_cast<int>(e));
    }
  }
  std::vector<char> used(len.size(), 0), on_path(K, 0);
  for (int s = 0; s < K; ++s) {
    on_path[s] = 1;
    std::function<void(int, long)> dfs = [&](int t, long acc) {
      for (int e : inc[t]) {
        if (used[e]) continue;
        int w = a[e] == t ? b[e] : a[e];
        if (w == s && t != s) {
          best = std::max(best, acc + len[e]);
          continue;
        }
        if (w < s || on_path[w]) continue;
        used[e] = 1;
        on_path[w] = 1;
        dfs(w, acc + len[e]);
        on_path[w] = 0;
        used[e] = 0;
      }
    };
    dfs(s, 0);
    on_path[s] = 0;
  }
  return best;
}

GraphSummary summarize(const Graph& g, int attempts) {
  GraphSummary s;
  s.attempts = attempts;
  std::vector<Component> comps = components(g);
  if (comps.empty()) return s;
  TwoCore core = two_core(g);
  bool any_complex = false, guarded = false;
  long lp = 0, circ = 0, diam = 0;
  for (const Component& c : comps) {
    s.largest_component = std::max<long>(s.largest_component, static_cast<long>(c.vertices.size()));
    s.largest_excess = std::max(s.largest_excess, c.excess);
    if (!c.complex) continue;
    any_complex = true;
    s.total_excess += c.excess;
    s.complex_size += static_cast<long>(c.vertices.size());
    diam = std::max<long>(diam, component_diameter(g, c));
    KernelMultigraph k = kernel(g, c, core, true);
    if (k.excess > kMaxEnumerationExcess) {
      guarded = true;
    } else {
      lp = std::max(lp, longest_path(k));
      circ = std::max(circ, circumference(k));
    }
    if (s.planar && !is_planar(k)) s.planar = false;
  }
  if (any_complex) {
    s.complex_diameter = diam;
    s.complex_longest_path = guarded ? -2 : lp;
    s.complex_circumference = guarded ? -2 : circ;
  }
  return s;
}

}  // namespace critwin
