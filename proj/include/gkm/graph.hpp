#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkm/lattice.hpp"

namespace gkm {

using VertexId = int;
/// Directed edge id. Edge pair k contributes the directed edges 2k and 2k+1,
/// which are each other's reversal.
using EdgeId = int;

inline EdgeId bar(EdgeId e) { return e ^ 1; }
inline int pair_of(EdgeId e) { return e >> 1; }
inline EdgeId forward_edge(int pair) { return 2 * pair; }

enum class Mode { Signed, Unsigned };

/// A labelled multigraph with a fixed-point-free reversal involution on
/// directed edges and an axial function into the rank-2 lattice (signed mode)
/// or its quotient by ±1 (unsigned mode, labels stored canonically).
/// Immutable after construction; queries are safe to run concurrently.
class GkmGraph {
 public:
  GkmGraph() : GkmGraph(Mode::Unsigned, 0) {}
  GkmGraph(Mode mode, int num_vertices);

  /// Adds the pair {2k, 2k+1} with label(2k) = w; returns k. In signed mode
  /// label(2k+1) = -w, in unsigned mode labels are canonicalized.
  int add_edge_pair(VertexId src, VertexId dst, const Weight& w);

  Mode mode() const { return mode_; }
  bool is_signed() const { return mode_ == Mode::Signed; }
  int num_vertices() const { return num_vertices_; }
  int num_edge_pairs() const { return int(src_.size()) / 2; }
  int num_edges() const { return int(src_.size()); }

  VertexId src(EdgeId e) const { return src_[e]; }
  VertexId dst(EdgeId e) const { return src_[bar(e)]; }
  const Weight& label(EdgeId e) const { return labels_[e]; }
  UnsignedWeight unsigned_label(EdgeId e) const { return UnsignedWeight(labels_[e]); }

  /// Outgoing directed edges, sorted by edge id.
  const std::vector<EdgeId>& star(VertexId v) const { return stars_[v]; }

  /// Out-degree of vertex 0 (graphs are validated to be regular).
  int valence() const { return num_vertices_ ? int(stars_[0].size()) : 0; }

  bool connected() const;

  void set_vertex_name(VertexId v, std::string name);
  void set_pair_name(int pair, std::string name);
  const std::string& vertex_name(VertexId v) const;
  const std::string& pair_name(int pair) const;
  std::string edge_name(EdgeId e) const;  // pair name, "-" prefixed for reversals
  std::optional<VertexId> vertex_by_name(const std::string& name) const;
  std::optional<int> pair_by_name(const std::string& name) const;

  /// Same vertices/edges/labels/names, relabelled with the other mode's sign
  /// convention. Only Unsigned -> Signed needs explicit labels; use
  /// with_signed_labels for that.
  GkmGraph with_signed_labels(const std::vector<Weight>& forward_labels) const;

 private:
  Mode mode_;
  int num_vertices_;
  std::vector<VertexId> src_;     // per directed edge
  std::vector<Weight> labels_;    // per directed edge
  std::vector<std::vector<EdgeId>> stars_;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> pair_names_;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> notes;
  bool ok() const { return errors.empty(); }
  void fail(std::string msg) { errors.push_back(std::move(msg)); }
  void note(std::string msg) { notes.push_back(std::move(msg)); }
  void merge(const ValidationReport& other, const std::string& prefix);
};

/// Per-edge bijections between stars: image_of(e)[j] is where the j-th edge
/// of star(src(e)) goes under transport along e.
struct Connection {
  std::vector<std::vector<EdgeId>> maps;

  EdgeId apply(const GkmGraph& g, EdgeId along, EdgeId f) const;
};

/// Structural invariants only (reversal involution, no loops, regularity,
/// connectivity, nonzero pairwise independent labels, sign antisymmetry).
ValidationReport validate_structure(const GkmGraph& g);

/// Full validation: structure plus existence of a compatible connection.
ValidationReport validate(const GkmGraph& g);

/// Re-checks the connection axioms and label congruences of an explicit
/// connection. Used to certify search results independently.
ValidationReport validate_connection(const GkmGraph& g, const Connection& c);

/// First compatible connection in edge-id order, if any. Deterministic.
std::optional<Connection> find_connection(const GkmGraph& g);

/// All compatible connections by exhaustive backtracking.
std::vector<Connection> all_connections(const GkmGraph& g, SearchBudget* budget = nullptr);

/// True when the outgoing labels at every vertex contain a lattice basis.
bool is_effective(const GkmGraph& g);

/// Projects a signed graph to its unsigned quotient. Identity on unsigned
/// input.
GkmGraph forget_signs(const GkmGraph& g);

struct Isomorphism {
  std::vector<VertexId> vertex_map;  // g1 vertex -> g2 vertex
  std::vector<EdgeId> edge_map;      // g1 directed edge -> g2 directed edge
  Mat2 phi;                          // lattice automorphism
};

/// Searches for an isomorphism (f, g, phi). With allow_lattice_automorphism
/// false, phi is the identity. Candidate phi are generated from label pairs
/// at a base vertex, so the search stays finite.
std::optional<Isomorphism> isomorphic(const GkmGraph& g1, const GkmGraph& g2,
                                      bool allow_lattice_automorphism,
                                      SearchBudget* budget = nullptr);

/// Re-checks a witness against the isomorphism conditions.
bool check_isomorphism(const GkmGraph& g1, const GkmGraph& g2, const Isomorphism& iso);

}  // namespace gkm
