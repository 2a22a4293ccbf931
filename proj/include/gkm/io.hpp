#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gkm/fibration.hpp"

namespace gkm {

/// The JSON interchange document. Ids are strings; edge pairs are stored once
/// with the weight of their forward orientation. Canonical documents
/// round-trip byte-identically through parse -> serialize.
struct GraphDocument {
  struct VertexEntry {
    std::string id;
    std::optional<Weight> position;
  };
  struct EdgeEntry {
    std::string id;
    std::string src, dst;
    Weight weight;
  };
  struct BaseDataStanza {
    std::vector<std::string> vertex_order;
    std::vector<std::string> edge_order;  // pair ids, oriented v_i -> v_{i+1}
    std::vector<Weight> gammas;
    std::array<int, 2> eps{0, 0};
  };
  struct EdgeMapEntry {
    std::string edge;   // total pair id
    std::string base;   // base pair id
    bool reversed = false;  // forward of `edge` lies over the reverse of `base`
  };
  struct FibrationStanza {
    std::shared_ptr<GraphDocument> base;
    std::map<std::string, std::string> vertex_map;
    std::vector<EdgeMapEntry> edge_map;
    std::optional<std::map<std::string, Weight>> fiber_signs;  // by vertical pair id
  };

  std::string format_version = "1";
  Mode mode = Mode::Unsigned;
  std::vector<VertexEntry> vertices;
  std::vector<EdgeEntry> edge_pairs;
  std::optional<BaseDataStanza> base_data;
  std::optional<FibrationStanza> fibration;

  GkmGraph to_graph() const;
  /// BaseData from the stanza, or the deterministic pinned choice when the
  /// stanza is absent.
  BaseData to_base_data() const;
  bool has_fibration() const { return fibration.has_value(); }
  Fibration to_fibration() const;
  std::optional<Weight> position_of(const std::string& id) const;
};

/// Parses and semantically validates a document. Throws ParseError with
/// line/column for malformed JSON and SemanticError for dangling ids, zero
/// weights, duplicate ids, or malformed stanzas.
GraphDocument parse_document(const std::string& text);

std::string serialize(const GraphDocument& doc);

GraphDocument read_document_file(const std::string& path);
void write_document_file(const std::string& path, const GraphDocument& doc);

/// Document for a plain graph, with optional vertex positions.
GraphDocument document_from_graph(const GkmGraph& g,
                                  const std::vector<std::optional<Weight>>* positions = nullptr);

/// Self-contained document for a fibration: the total graph plus the
/// fibration stanza with an embedded base document carrying its base_data.
GraphDocument document_from_fibration(const Fibration& f);

}  // namespace gkm
