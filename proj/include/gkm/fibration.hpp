#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gkm/graph.hpp"

namespace gkm {

/// Pinned correspondence data on a 2-valent effective base: a cyclic
/// enumeration v_1..v_n, the edge e_i from v_i to v_{i+1}, signed
/// representatives gamma_i with gamma_i = -gamma_{i+2} mod gamma_{i+1}, and
/// the wrap signs gamma_i = (-1)^{eps_i} gamma_{i+n}, eps_i depending only on
/// the parity of i.
struct BaseData {
  GkmGraph base;
  std::vector<VertexId> vertex_order;  // v_1..v_n (0-based positions)
  std::vector<EdgeId> edge_order;      // directed edge e_i : v_i -> v_{i+1}
  std::vector<Weight> gammas;          // pinned signed representatives of e_i
  std::array<int, 2> eps{0, 0};        // {eps_even, eps_odd}

  int n() const { return int(vertex_order.size()); }
  /// gamma_i for any integer index, using the (-1)^eps parity wrap rule.
  Weight gamma_ext(long i) const;
  int eps_of(long i) const { return eps[((i % 2) + 2) % 2]; }
  bool signed_compatible() const { return eps[0] == 0 && eps[1] == 0; }
  /// The base graph with the pinned gammas as signed labels. Requires
  /// signed_compatible().
  GkmGraph signed_base() const;
  /// Position of a base vertex in the cyclic enumeration, or -1.
  int position_of(VertexId v) const;
};

ValidationReport validate_base_data(const BaseData& bd);

/// Pins correspondence data deterministically: enumeration starts at the
/// given vertex (default vertex 0) toward its lowest-id outgoing edge,
/// gamma_1 and gamma_2 take the canonical representatives, the rest follow
/// from the congruence recursion. For a signed base the signed labels are
/// used and eps = (0,0).
BaseData make_base_data(const GkmGraph& base);
BaseData make_base_data(const GkmGraph& base, const std::vector<VertexId>& vertex_order,
                        const std::vector<EdgeId>& edge_order);
BaseData make_base_data(const GkmGraph& base, const std::vector<VertexId>& vertex_order,
                        const std::vector<EdgeId>& edge_order, const Weight& gamma1,
                        const Weight& gamma2);

/// Classification datum of a fiberwise signed fibration: nonzero integers
/// k_1..k_n up to a global sign, plus the twist bit eta.
struct KVector {
  std::vector<Int> ks;
  int eta = 0;

  int n() const { return int(ks.size()); }
  KVector canonical() const;
  friend bool operator==(const KVector& a, const KVector& b);
  friend bool operator!=(const KVector& a, const KVector& b) { return !(a == b); }
  /// k_i for any integer index: k_{i+n} = (-1)^{eta + eps_{i-1}} k_i.
  Int k_ext(const BaseData& bd, long i) const;
  std::string str() const;  // "[1,-1,-1] eta=1"
};

/// A 3-valent total graph over a 2-valent base. edge_map[e] is the base
/// directed edge under the projection, or -1 for vertical edges. fiber_signs,
/// when present, holds a signed weight per directed edge (zero on horizontal
/// edges) with fiber_signs[bar e] = -fiber_signs[e].
struct Fibration {
  GkmGraph total;
  BaseData base_data;
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
  std::optional<std::vector<Weight>> fiber_signs;

  bool vertical(EdgeId e) const { return edge_map[e] < 0; }
  /// The unique vertical directed edge leaving p.
  EdgeId vertical_at(VertexId p) const;
  /// The horizontal edge at p lying over the given base directed edge.
  std::optional<EdgeId> lift_at(VertexId p, EdgeId base_edge) const;
  /// The two total vertices over a base vertex, sorted by id.
  std::vector<VertexId> fiber(VertexId base_vertex) const;
};

/// Graph-fibration axioms, label agreement, joint connection existence, and
/// (when fiber_signs is present) the fiberwise signed congruences.
ValidationReport validate_fibration(const Fibration& f);

/// All lifts of the vertical labels making f fiberwise signed; the result
/// has 0 or 2 members and the two members are global negations.
std::vector<std::vector<Weight>> fiber_sign_lifts(const Fibration& f);

/// The KVector class of a fiberwise signed fibration, canonicalized. The
/// fiber orientation is seeded at the lower-id vertex over v_1. Throws
/// InconsistentFibrationError for corrupted inputs.
KVector classify(const Fibration& f);

/// The fiberwise signed fibration with classify(result) == k:
/// alpha_i = k_i gamma_{i-1} - k_{i-1} gamma_i, glued by eta.
Fibration build_total(const BaseData& bd, const KVector& k);

/// The unique signed structure on the total graph extending the fiber signs
/// over the given signed base structure. signed_base must live on the same
/// underlying graph as f's base.
GkmGraph lift_signed(const Fibration& f, const GkmGraph& signed_base);

/// Vertices of a signed 3-valent graph whose outgoing labels positively span
/// the plane.
std::vector<VertexId> interior_vertices(const GkmGraph& g);

/// Predicted per-fiber interior flags from the classification datum alone
/// (signed base convention): fiber i >= 2 is flagged iff sign(k_{i-1}) ==
/// sign(k_i), fiber 1 iff sign(k_n) == sign((-1)^eta k_1).
std::vector<bool> interior_by_k(const KVector& k);

/// Detaches the two lifts over the first base edge at their far fiber and
/// reglues them with the fiber vertices interchanged. Drops fiber signs
/// (their existence toggles).
Fibration twist_involution(const Fibration& f);

/// Equivalence of fibrations over the same base: an isomorphism with
/// identity lattice map commuting with the projections. When both carry
/// fiber signs the signs must be transported exactly.
bool fibration_equivalent(const Fibration& a, const Fibration& b);

/// Whether the two total graphs are isomorphic as unsigned GKM graphs.
/// For bases with n >= 5 this searches base isomorphisms and transports the
/// classification data (recomputing classify over the relabelled base data);
/// for n < 5 it falls back to the brute-force isomorphism search.
bool total_isomorphic(const Fibration& a, const Fibration& b, SearchBudget* budget = nullptr);

}  // namespace gkm
