#pragma once

// Five-vertex example graphs used across the suites. Vertex order is
// x=0, y=1, z=2, u=3, v=4.

#include <string>

#include "mec/io.hpp"

namespace mec::fixtures {

inline constexpr VertexId X = 0, Y = 1, Z = 2, U = 3, V = 4;

inline MixedGraph graph(const std::string& edges) {
  return parse_graph("pdag 5\nvertices: x y z u v\n" + edges).graph;
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"x", "y", "z", "u", "v"};
  return n;
}

// Completed PDAG with one v-structure z->v<-u.
inline MixedGraph c_ex() {
  return graph("x -- y\ny -- z\ny -- u\ny -> v\nz -> v\nu -> v\n");
}
// c_ex without z->v; y->v loses its protection.
inline MixedGraph p4() { return graph("x -- y\ny -- z\ny -- u\ny -> v\nu -> v\n"); }
// c_ex after z->v<-u becomes z--v--u.
inline MixedGraph p6() {
  return graph("x -- y\ny -- z\ny -- u\ny -> v\nz -- v\nu -- v\n");
}
inline MixedGraph d6() {
  return graph("y -> x\ny -> z\ny -> u\ny -> v\nv -> z\nv -> u\n");
}
inline MixedGraph c1() {
  return graph("x -- y\ny -- z\ny -- u\ny -- v\nz -- v\nu -- v\n");
}
inline MixedGraph c2() { return graph("x -- y\ny -- z\ny -- u\ny -- v\nu -- v\n"); }

inline std::size_t full_bound(int p) { return static_cast<std::size_t>(p * (p - 1) / 2); }

}  // namespace mec::fixtures
