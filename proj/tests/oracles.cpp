#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

namespace {

std::vector<int> component_labels(int n, const Edges& edges) {
  std::vector<int> lab(n + 1);
  for (int v = 0; v <= n; ++v) lab[v] = v;
  std::function<int(int)> find = [&](int x) { return lab[x] == x ? x : lab[x] = find(lab[x]); };
  for (auto [u, v] : edges) lab[find(u)] = find(v);
  for (int v = 1; v <= n; ++v) lab[v] = find(v);
  return lab;
}

}  // namespace

ComplexStats complex_stats(int n, const Edges& edges) {
  ComplexStats st;
  std::vector<int> lab = component_labels(n, edges);
  std::vector<long> nv(n + 1, 0), ne(n + 1, 0);
  for (int v = 1; v <= n; ++v) ++nv[lab[v]];
  for (auto [u, v] : edges) ++ne[lab[u]];
  std::vector<char> in(n + 1, 0);
  for (int v = 1; v <= n; ++v)
    if (ne[lab[v]] > nv[lab[v]]) in[v] = 1;
  for (int r = 1; r <= n; ++r)
    if (lab[r] == r && ne[r] > nv[r]) {
      st.has_complex = true;
      st.total_excess += ne[r] - nv[r];
      st.size += nv[r];
    }
  if (!st.has_complex) return st;

  std::vector<std::vector<int>> adj(n + 1);
  for (auto [u, v] : edges)
    if (in[u]) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  const long inf = std::numeric_limits<long>::max() / 4;
  std::vector<std::vector<long>> d(n + 1, std::vector<long>(n + 1, inf));
  for (int v = 1; v <= n; ++v) {
    d[v][v] = 0;
    for (int w : adj[v]) d[v][w] = 1;
  }
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  st.diameter = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (in[i] && in[j] && d[i][j] < inf) st.diameter = std::max(st.diameter, d[i][j]);

  st.longest_path = 0;
  st.circumference = 0;
  std::vector<char> on(n + 1, 0);
  for (int s = 1; s <= n; ++s) {
    if (!in[s]) continue;
    std::function<void(int, long)> go = [&](int v, long len) {
      st.longest_path = std::max(st.longest_path, len);
      for (int w : adj[v]) {
        if (w == s && len >= 2) st.circumference = std::max(st.circumference, len + 1);
        if (on[w]) continue;
        on[w] = 1;
        go(w, len + 1);
        on[w] = 0;
      }
    };
    on[s] = 1;
    go(s, 0);
    on[s] = 0;
  }
  return st;
}

bool planar(int n, const Edges& edges) {
  boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> g(n + 1);
  for (auto [u, v] : edges) boost::add_edge(u, v, g);
  return boost::boyer_myrvold_planarity_test(g);
}

Edges random_graph(int n, int m, std::mt19937_64& rng) {
  Edges all;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(m, all.size()));
  return all;
}

double bigA_quadrature(double y, double mu) {
  using cd = std::complex<double>;
  const cd w = std::polar(1.0, std::numbers::pi / 3);
  auto f = [&](double t) {
    cd s = 1.0 + t * w;
    return std::imag(std::pow(s, 1.0 - y) * std::exp(s * s * s / 3.0 + mu * s * s / 2.0) * w);
  };
  double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
  return std::exp(-mu * mu * mu / 6) * integral / std::numbers::pi;
}

namespace {

// Calls visit(degrees) for every labelled tree on n >= 2 vertices.
template <class Visit>
void for_each_tree(int n, Visit visit) {
  std::vector<int> code(n - 2, 1), deg(n + 1);
  while (true) {
    std::fill(deg.begin(), deg.end(), 1);
    deg[0] = 0;
    for (int c : code) ++deg[c];
    visit(deg);
    int i = 0;
    while (i < n - 2 && code[i] == n) code[i++] = 1;
    if (i == n - 2) break;
    ++code[i];
  }
}

}  // namespace

long long rooted_trees(const critwin::DegreeSet& ds, int n) {
  if (n == 1) return ds.contains(1) ? 1 : 0;
  long long count = 0;
  for_each_tree(n, [&](const std::vector<int>& deg) {
    for (int r = 1; r <= n; ++r) {
      bool ok = ds.contains(deg[r] + 1);
      for (int v = 1; v <= n && ok; ++v)
        if (v != r && !ds.contains(deg[v])) ok = false;
      if (ok) ++count;
    }
  });
  return count;
}

long long unrooted_trees(const critwin::DegreeSet& ds, int n) {
  if (n == 1) return ds.contains(0) ? 1 : 0;
  long long count = 0;
  for_each_tree(n, [&](const std::vector<int>& deg) {
    for (int v = 1; v <= n; ++v)
      if (!ds.contains(deg[v])) return;
    ++count;
  });
  return count;
}

namespace {

template <class Visit>
void for_each_edge_subset(int n, int k, Visit visit) {
  Edges all;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) all.emplace_back(u, v);
  int N = static_cast<int>(all.size());
  if (k > N) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Edges chosen(k);
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = all[idx[i]];
    visit(chosen);
    int i = k - 1;
    while (i >= 0 && idx[i] == N - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

long long unicyclic_graphs(const critwin::DegreeSet& ds, int n) {
  long long count = 0;
  for_each_edge_subset(n, n, [&](const Edges& e) {
    std::vector<int> deg(n + 1, 0);
    for (auto [u, v] : e) ++deg[u], ++deg[v];
    for (int v = 1; v <= n; ++v)
      if (!ds.contains(deg[v])) return;
    std::vector<int> lab = component_labels(n, e);
    for (int v = 2; v <= n; ++v)
      if (lab[v] != lab[1]) return;
    ++count;
  });
  return count;
}

std::vector<Edges> graphs_with_degrees(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size());
  int sum = 0;
  for (int d : seq) sum += d;
  std::vector<Edges> out;
  for_each_edge_subset(n, sum / 2, [&](const Edges& e) {
    std::vector<int> deg(n + 1, 0);
    for (auto [u, v] : e) ++deg[u], ++deg[v];
    for (int v = 1; v <= n; ++v)
      if (deg[v] != seq[v - 1]) return;
    out.push_back(e);
  });
  return out;
}

boost::multiprecision::cpp_rational wright(int q) {
  using boost::multiprecision::cpp_int;
  auto fact = [](int k) {
    cpp_int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  cpp_int den = fact(3 * q) * fact(2 * q);
  for (int i = 0; i < 5 * q; ++i) den *= 2;
  for (int i = 0; i < 2 * q; ++i) den *= 3;
  return boost::multiprecision::cpp_rational(fact(6 * q), den);
}

}  // namespace oracle
