#pragma once

#include <vector>

#include "gkm/fibration.hpp"

namespace gkm {

/// Character data of one cohomogeneity-one piece: the diagonal characters of
/// the two singular isotropy representations and the principal kernel weight.
struct GroupDiagram {
  Weight plus_upper, plus_lower;    // diag of A_i^+
  Weight minus_upper, minus_lower;  // diag of A_i^-
  Weight principal_kernel;          // gamma_i
};

/// Gluing coefficients a_i, b_i, c_i of the chain of bundles over the base
/// edges. The a family is free; b and c are forced by the interior gluings
/// b_{i+1} = a_i, c_i = a_{i+1} and the closing relation of the given type.
struct CoefficientChain {
  std::vector<Int> a, b, c;
};

/// Resolves the chain from a free choice of the a_i.
CoefficientChain resolve_coefficients(const KVector& k, const std::vector<Int>& a,
                                      const BaseData& bd);

/// The n diagrams with A_i^+ = diag(a_i g_{i-1} - b_i g_i,
/// (a_i - k_i) g_{i-1} + (k_{i-1} - b_i) g_i) and the matching A_i^-.
std::vector<GroupDiagram> group_diagrams(const KVector& k, const std::vector<Int>& a,
                                         const BaseData& bd);

/// Re-checks every gluing identity: A_i^- = A_{i+1}^+ in the interior and
/// the closing equality (product type) or diagonal swap (twisted type).
ValidationReport verify_gluing(const std::vector<GroupDiagram>& diagrams, const KVector& k,
                               const BaseData& bd);

/// The 4-vertex square graph of the projectivized bundle over the i-th base
/// edge: two horizontal pairs labelled gamma_i, verticals alpha_i and
/// alpha_{i+1}. Vertices are named p_i, q_i, p_{i+1}, q_{i+1}.
GkmGraph hirzebruch_square(const KVector& k, const BaseData& bd, int i);

/// True exactly when every |k_i| = 1 (connected isotropy groups).
bool connected_stabilizers(const KVector& k);

struct DelzantLift {
  std::vector<Vec3> bottom;  // v_i x {0}
  std::vector<Vec3> top;     // w_i = v_i + (alpha_i, 1)
  ValidationReport checks;
};

/// Lifts a Delzant polygon realizing the base to the 3-polytope with top
/// vertices w_i = v_i + (alpha_i, 1). Product type only; verifies the
/// basis condition at every vertex.
DelzantLift delzant_lift(const std::vector<Weight>& polygon, const KVector& k,
                         const BaseData& bd);

}  // namespace gkm
