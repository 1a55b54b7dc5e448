#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critwin/asymptotics.hpp"

namespace critwin {

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 1..n with sorted adjacency (CSR).
class Graph {
 public:
  Graph() = default;
  // Throws on loops, duplicate edges or labels outside 1..n.
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
  }
  int degree(int v) const { return offset_[v + 1] - offset_[v]; }
  bool has_edge(int u, int v) const;
  // Position of w in the flattened adjacency of v (one slot per half-edge).
  std::size_t half_edge_index(int v, int w) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offset_;  // size n + 2, vertex v at [offset_[v], offset_[v+1])
  std::vector<int> adj_;
};

std::string to_json_line(const Graph& g);
Graph graph_from_json_line(const std::string& line);
void write_jsonl(std::ostream& os, const std::vector<Graph>& graphs);
std::vector<Graph> read_jsonl(std::istream& is);

struct Component {
  std::vector<int> vertices;  // sorted
  long edges = 0;
  long excess = 0;  // edges - vertices
  bool complex = false;
};

// Components ordered by smallest vertex label.
std::vector<Component> components(const Graph& g);

enum class PeelOrder { fifo, lifo };

struct TwoCore {
  std::vector<char> in_core;   // indexed by vertex
  std::vector<int> parent;     // removed vertex: neighbor still present when it was removed (0 if none)
  std::vector<int> attach;     // removed vertex: core vertex its tree hangs from (0 for tree components)
  std::vector<int> removal;    // removal order
  std::vector<int> height;     // height of the subtree hanging below each vertex
  std::vector<int> tree_diam;  // for core vertices: longest path inside the sprouting tree at that vertex
  std::vector<int> tree_size;  // for core vertices: number of removed vertices attached to it
  int core_size = 0;
};

// Repeated removal of vertices of degree <= 1 (pruning).
TwoCore two_core(const Graph& g, PeelOrder order = PeelOrder::fifo);

struct KernelEdge {
  int u = 0;
  int v = 0;
  int length = 0;            // number of original edges on the 2-path
  std::vector<int> internal; // internal vertices from u to v (detail mode)
  std::vector<int> bonus;    // tree height at each internal vertex (detail mode)
};

// Kernel (3-core multigraph) of one complex component, obtained by contracting
// the degree-2 chains of its 2-core (smoothing).
struct KernelMultigraph {
  std::vector<int> vertices;  // corner vertices, original labels, sorted
  std::vector<KernelEdge> edges;
  std::map<int, int> tree_height;          // every 2-core vertex of the component
  std::map<int, int> tree_diameter_bonus;  // every 2-core vertex: longest path inside its sprouting tree
  long tree_vertices = 0;                  // vertices removed by pruning
  long core_vertices = 0;
  long core_edges = 0;
  long excess = 0;  // |edges| - |vertices|
  bool detail = false;
};

KernelMultigraph kernel(const Graph& g, const Component& comp, const TwoCore& core, bool detail = true);

// Kernel from an explicit multigraph description (vertex ids and (u, v, length) triples).
KernelMultigraph make_kernel(std::vector<int> vertices, const std::vector<std::array<int, 3>>& edges);

Rational compensation_factor(const KernelMultigraph& k);

// Length of the cycle of a unicyclic component (its 2-core).
int unicycle_length(const Component& comp, const TwoCore& core);

}  // namespace critwin
