#pragma once

// Hand-built graphs used across the test suites: the CP^2 triangle base,
// the S^4 double edge, and the two 6-vertex total graphs (full flag variant
// and Tolman's twisted variant) with the vertex layout of their standard
// linear realizations.

#include <string>
#include <vector>

#include "gkm/graph.hpp"

namespace gkm::testing {

inline GkmGraph cp2_base() {
  GkmGraph g(Mode::Signed, 3);
  g.add_edge_pair(0, 1, weight(1, 0));
  g.add_edge_pair(1, 2, weight(0, -1));
  g.add_edge_pair(2, 0, weight(-1, 1));
  return g;
}

inline GkmGraph cp2_base_broken() {
  GkmGraph g(Mode::Signed, 3);
  g.add_edge_pair(0, 1, weight(1, 0));
  g.add_edge_pair(1, 2, weight(0, -1));
  g.add_edge_pair(2, 0, weight(1, 1));
  return g;
}

inline GkmGraph s4_graph() {
  GkmGraph g(Mode::Unsigned, 2);
  g.add_edge_pair(0, 1, weight(1, 0));
  g.add_edge_pair(1, 0, weight(0, 1));
  return g;
}

// Vertices 0..5 = p1, q1, p2, q2, p3, q3; pairs g1 g2 g3 f1 f2 f3 h1 h2 h3.
// Fiber labels a1, a2, a3; horizontal labels are the base gammas.
inline GkmGraph ladder_total(Mode mode, const std::vector<Weight>& alphas,
                             const std::vector<Weight>& gammas, bool twisted) {
  GkmGraph g(mode, 6);
  const char* vnames[] = {"p1", "q1", "p2", "q2", "p3", "q3"};
  for (int v = 0; v < 6; ++v) g.set_vertex_name(v, vnames[v]);
  g.add_edge_pair(0, 1, alphas[0]);
  g.add_edge_pair(2, 3, alphas[1]);
  g.add_edge_pair(4, 5, alphas[2]);
  g.set_pair_name(0, "g1");
  g.set_pair_name(1, "g2");
  g.set_pair_name(2, "g3");
  g.add_edge_pair(0, 2, gammas[0]);
  g.add_edge_pair(2, 4, gammas[1]);
  g.add_edge_pair(4, twisted ? 1 : 0, gammas[2]);
  g.set_pair_name(3, "f1");
  g.set_pair_name(4, "f2");
  g.set_pair_name(5, "f3");
  g.add_edge_pair(1, 3, gammas[0]);
  g.add_edge_pair(3, 5, gammas[1]);
  g.add_edge_pair(5, twisted ? 0 : 1, gammas[2]);
  g.set_pair_name(6, "h1");
  g.set_pair_name(7, "h2");
  g.set_pair_name(8, "h3");
  return g;
}

inline std::vector<Weight> cp2_gammas() {
  return {weight(1, 0), weight(0, -1), weight(-1, 1)};
}

// alpha_1 = gamma_3 + gamma_1, alpha_2 = -gamma_1 - gamma_2, alpha_3 = gamma_2 + gamma_3
inline GkmGraph flag_total_unsigned() {
  return ladder_total(Mode::Unsigned, {weight(0, 1), weight(-1, 1), weight(-1, 0)}, cp2_gammas(),
                      true);
}

// alpha_1 = gamma_3 - gamma_1, alpha_2 = -gamma_1 - gamma_2, alpha_3 = -gamma_2 + gamma_3
inline GkmGraph tolman_total_unsigned() {
  return ladder_total(Mode::Unsigned, {weight(-2, 1), weight(-1, 1), weight(-1, 2)}, cp2_gammas(),
                      true);
}

// Delzant pentagon (projective plane blown up twice), enumerated from the
// vertex fixed by its reflection symmetry
inline GkmGraph pentagon_base() {
  GkmGraph g(Mode::Signed, 5);
  g.add_edge_pair(0, 1, weight(0, -1));
  g.add_edge_pair(1, 2, weight(1, 0));
  g.add_edge_pair(2, 3, weight(1, 1));
  g.add_edge_pair(3, 4, weight(0, 1));
  g.add_edge_pair(4, 0, weight(-1, 0));
  return g;
}

// Delzant hexagon (projective plane blown up three times)
inline GkmGraph hexagon_base() {
  GkmGraph g(Mode::Signed, 6);
  g.add_edge_pair(0, 1, weight(1, 0));
  g.add_edge_pair(1, 2, weight(1, 1));
  g.add_edge_pair(2, 3, weight(0, 1));
  g.add_edge_pair(3, 4, weight(-1, 0));
  g.add_edge_pair(4, 5, weight(-1, -1));
  g.add_edge_pair(5, 0, weight(0, -1));
  return g;
}

// Delzant unit square
inline GkmGraph square_base() {
  GkmGraph g(Mode::Signed, 4);
  g.add_edge_pair(0, 1, weight(1, 0));
  g.add_edge_pair(1, 2, weight(0, 1));
  g.add_edge_pair(2, 3, weight(-1, 0));
  g.add_edge_pair(3, 0, weight(0, -1));
  return g;
}

// 8-vertex signed graph whose linear realization wraps twice around its
// inner loop; vertices A..H = 0..7 at positions (-2,0), (0,0), (0,-1),
// (-1,-1), (-1,1), (1,1), (1,-2), (-2,-2), labels the primitive directions.
inline GkmGraph double_wrap_graph() {
  GkmGraph g(Mode::Signed, 8);
  const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
  for (int v = 0; v < 8; ++v) g.set_vertex_name(v, names[v]);
  g.add_edge_pair(0, 1, weight(1, 0));    // A-B
  g.add_edge_pair(1, 2, weight(0, -1));   // B-C
  g.add_edge_pair(2, 3, weight(-1, 0));   // C-D
  g.add_edge_pair(3, 4, weight(0, 1));    // D-E
  g.add_edge_pair(4, 5, weight(1, 0));    // E-F
  g.add_edge_pair(5, 6, weight(0, -1));   // F-G
  g.add_edge_pair(6, 7, weight(-1, 0));   // G-H
  g.add_edge_pair(7, 0, weight(0, 1));    // H-A
  g.add_edge_pair(0, 4, weight(1, 1));    // A-E
  g.add_edge_pair(1, 5, weight(1, 1));    // B-F
  g.add_edge_pair(7, 3, weight(1, 1));    // H-D
  g.add_edge_pair(6, 2, weight(-1, 1));   // G-C
  return g;
}

// 2-valent signed triangle with no basis pair at any vertex
inline GkmGraph index_two_triangle() {
  GkmGraph g(Mode::Signed, 3);
  g.add_edge_pair(0, 1, weight(2, 0));
  g.add_edge_pair(1, 2, weight(0, 1));
  g.add_edge_pair(2, 0, weight(-2, -1));
  return g;
}

}  // namespace gkm::testing
