#pragma once

#include <utility>
#include <vector>

#include "critwin/graph.hpp"

namespace critwin {

// Per-graph record. Lengths are in edges. Complex-part fields are -1 when the
// complex part is empty and -2 when a component exceeded the enumeration guard.
struct GraphSummary {
  long largest_component = 0;
  long largest_excess = -1;
  long total_excess = 0;  // total excess of the complex part
  long complex_size = 0;
  long complex_diameter = -1;
  long complex_longest_path = -1;
  long complex_circumference = -1;
  bool planar = true;
  int attempts = 0;
};

constexpr int kMaxEnumerationExcess = 12;

int component_diameter(const Graph& g, const Component& comp);
// Maximum over the complex components; -1 if there are none.
long diameter(const Graph& g, const std::vector<Component>& comps);

long longest_path(const KernelMultigraph& k, int max_excess = kMaxEnumerationExcess);
long circumference(const KernelMultigraph& k, int max_excess = kMaxEnumerationExcess);

bool is_planar(const KernelMultigraph& k);
// Planarity of a simple graph on vertices 0..n-1.
bool is_planar_simple(int n, const std::vector<std::pair<int, int>>& edges);

GraphSummary summarize(const Graph& g, int attempts = 0);

}  // namespace critwin
