#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkm/fibration.hpp"

namespace gkm {

/// All sign assignments on the edge pairs of an unsigned 3-valent graph that
/// admit a compatible signed connection, deduplicated up to isomorphism with
/// identity lattice map. The 2^{pairs} enumeration is partitioned across
/// workers deterministically by mask prefix.
std::vector<GkmGraph> enumerate_signed_structures(const GkmGraph& g,
                                                  SearchBudget* budget = nullptr,
                                                  int num_threads = 0);

/// Whether two signed structures on the same underlying unsigned graph agree
/// up to an isomorphism with identity lattice map, allowing the global sign
/// conjugation (a structure and its negation are one class).
bool same_signed_class(const GkmGraph& a, const GkmGraph& b, SearchBudget* budget = nullptr);

enum class CaseTag { CaseI, CaseII, CaseIII, Other };
std::string to_string(CaseTag tag);

struct SignedStructureCase {
  CaseTag tag;
  GkmGraph structure;
};

/// Tags each structure against the fibration's references: CaseI is the
/// lifted signed total, CaseII the lift over the base with every second edge
/// sign flipped (even n only), CaseIII the pattern where the two lifts of
/// every base edge carry different weights.
std::vector<SignedStructureCase> classify_cases(const Fibration& f,
                                                const std::vector<GkmGraph>& structures);

/// +1 when every consecutive cross product is positive, -1 when every one is
/// negative, nullopt otherwise. A zero cross product violates the
/// consecutive-independence precondition.
std::optional<int> is_locally_convex(const std::vector<Weight>& ws);

/// Total turning of the cyclic sequence in full turns, computed exactly:
/// with orientation +1 each step angle is taken in [0,2pi), with -1 in
/// (-2pi,0], and the sum is 2*pi*(number of wraparounds).
long winding_number(const std::vector<Weight>& ws, int orientation);

/// A closed 2-valent subgraph as a directed edge cycle.
struct CycleSubgraph {
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;  // vertices[i] = src(edges[i])
};

/// All closed 2-valent GKM subgraphs whose weight cycle is locally convex
/// with winding number 1.
std::vector<CycleSubgraph> polytope_type_subgraphs(const GkmGraph& g,
                                                   SearchBudget* budget = nullptr);

struct AdjacentPair {
  VertexId v;
  int pair_a;
  int pair_b;
};

struct KaehlerVerdict {
  bool passes = false;
  std::vector<AdjacentPair> fails_at;
};

/// Checks the extension criterion: every pair of adjacent edges must lie in
/// some polytope-type 2-valent subgraph. Necessary for an invariant Kaehler
/// structure, not sufficient.
KaehlerVerdict kaehler_obstruction(const GkmGraph& g, SearchBudget* budget = nullptr);

struct ConeVerdict {
  bool passes = false;
  std::vector<VertexId> certificate;  // interior vertices when failing
};

/// Fails exactly when every vertex is interior (no linear realization can
/// place a moment image boundary).
ConeVerdict hamiltonian_cone_obstruction(const GkmGraph& g);

struct CaseReport {
  CaseTag tag = CaseTag::Other;
  bool excluded = false;  // this signed structure cannot be Kaehler
  std::string detail;
  KaehlerVerdict kaehler;              // CaseI
  std::optional<long> exterior_winding;  // CaseII
  ConeVerdict cone;                    // CaseIII
};

struct NonKaehlerReport {
  KVector k;
  std::vector<CaseReport> cases;
  bool no_invariant_kaehler = false;
};

/// Enumerates the signed structures of the total graph, tags them, and runs
/// the per-case obstruction. Requires twisted type, a polytope-type base,
/// n-1 interior vertices, and n != 4; otherwise PreconditionUnmetError.
NonKaehlerReport nonkaehler_report(const Fibration& f, SearchBudget* budget = nullptr);

}  // namespace gkm
