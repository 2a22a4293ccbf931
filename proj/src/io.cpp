#include "gkm/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gkm {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail_semantic(const std::string& msg) { throw SemanticError(msg); }

Json weight_to_json(const Weight& w) {
  auto coord = [](const Int& v) -> Json {
    if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
      return Json(int64_t(v));
    return Json(v.str());
  };
  return Json::array({coord(w(0)), coord(w(1))});
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      fail_semantic(where + ": not an integer");
    }
  }
  fail_semantic(where + ": not an integer");
}

Weight weight_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail_semantic(where + ": expected a pair of integers");
  return Weight{int_from_json(j[0], where), int_from_json(j[1], where)};
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail_semantic(where + ": missing \"" + key + "\"");
  return *it;
}

GraphDocument document_from_json(const Json& j, const std::string& where);

GraphDocument::FibrationStanza fibration_from_json(const Json& j, const std::string& where) {
  GraphDocument::FibrationStanza fs;
  fs.base = std::make_shared<GraphDocument>(
      document_from_json(require(j, "base", where), where + ".base"));
  const Json& vm = require(j, "vertex_map", where);
  if (!vm.is_object()) fail_semantic(where + ".vertex_map: expected an object");
  for (auto it = vm.begin(); it != vm.end(); ++it) {
    if (!it.value().is_string()) fail_semantic(where + ".vertex_map: values must be vertex ids");
    fs.vertex_map[it.key()] = it.value().get<std::string>();
  }
  const Json& em = require(j, "edge_map", where);
  if (!em.is_array()) fail_semantic(where + ".edge_map: expected an array");
  for (const Json& entry : em) {
    GraphDocument::EdgeMapEntry e;
    e.edge = require(entry, "edge", where + ".edge_map").get<std::string>();
    e.base = require(entry, "base", where + ".edge_map").get<std::string>();
    if (entry.contains("reversed")) e.reversed = entry["reversed"].get<bool>();
    fs.edge_map.push_back(std::move(e));
  }
  if (j.contains("fiber_signs")) {
    const Json& sig = j["fiber_signs"];
    if (!sig.is_object()) fail_semantic(where + ".fiber_signs: expected an object");
    std::map<std::string, Weight> signs;
    for (auto it = sig.begin(); it != sig.end(); ++it)
      signs[it.key()] = weight_from_json(it.value(), where + ".fiber_signs." + it.key());
    fs.fiber_signs = std::move(signs);
  }
  return fs;
}

GraphDocument document_from_json(const Json& j, const std::string& where) {
  GraphDocument doc;
  if (!j.is_object()) fail_semantic(where + ": expected an object");
  doc.format_version = require(j, "format_version", where).get<std::string>();
  if (doc.format_version != "1") fail_semantic(where + ": unsupported format_version");
  std::string mode = require(j, "mode", where).get<std::string>();
  if (mode == "signed")
    doc.mode = Mode::Signed;
  else if (mode == "unsigned")
    doc.mode = Mode::Unsigned;
  else
    fail_semantic(where + ": mode must be \"signed\" or \"unsigned\"");

  std::set<std::string> vertex_ids, pair_ids;
  for (const Json& v : require(j, "vertices", where)) {
    GraphDocument::VertexEntry entry;
    entry.id = require(v, "id", where + ".vertices").get<std::string>();
    if (!vertex_ids.insert(entry.id).second)
      fail_semantic(where + ": duplicate vertex id \"" + entry.id + "\"");
    if (v.contains("position"))
      entry.position = weight_from_json(v["position"], where + ".vertices." + entry.id);
    doc.vertices.push_back(std::move(entry));
  }
  if (doc.vertices.empty()) fail_semantic(where + ": no vertices");
  for (const Json& e : require(j, "edge_pairs", where)) {
    GraphDocument::EdgeEntry entry;
    entry.id = require(e, "id", where + ".edge_pairs").get<std::string>();
    if (!pair_ids.insert(entry.id).second)
      fail_semantic(where + ": duplicate edge id \"" + entry.id + "\"");
    entry.src = require(e, "src", where + ".edge_pairs").get<std::string>();
    entry.dst = require(e, "dst", where + ".edge_pairs").get<std::string>();
    for (const std::string* s : {&entry.src, &entry.dst})
      if (!vertex_ids.count(*s))
        fail_semantic(where + ": edge \"" + entry.id + "\" references unknown vertex \"" + *s +
                      "\"");
    entry.weight = weight_from_json(require(e, "weight", where + ".edge_pairs"),
                                    where + ".edge_pairs." + entry.id);
    if (is_zero(entry.weight))
      fail_semantic(where + ": edge \"" + entry.id + "\" has zero weight");
    doc.edge_pairs.push_back(std::move(entry));
  }
  if (j.contains("base_data")) {
    const Json& b = j["base_data"];
    GraphDocument::BaseDataStanza bd;
    for (const Json& v : require(b, "vertex_order", where + ".base_data")) {
      std::string id = v.get<std::string>();
      if (!vertex_ids.count(id))
        fail_semantic(where + ".base_data: unknown vertex \"" + id + "\"");
      bd.vertex_order.push_back(std::move(id));
    }
    for (const Json& e : require(b, "edge_order", where + ".base_data")) {
      std::string id = e.get<std::string>();
      if (!pair_ids.count(id)) fail_semantic(where + ".base_data: unknown edge \"" + id + "\"");
      bd.edge_order.push_back(std::move(id));
    }
    for (const Json& g : require(b, "gammas", where + ".base_data"))
      bd.gammas.push_back(weight_from_json(g, where + ".base_data.gammas"));
    const Json& eps = require(b, "eps", where + ".base_data");
    if (!eps.is_array() || eps.size() != 2) fail_semantic(where + ".base_data: eps must be a pair");
    for (int t = 0; t < 2; ++t) {
      int v = eps[t].get<int>();
      if (v != 0 && v != 1) fail_semantic(where + ".base_data: eps entries must be 0 or 1");
      bd.eps[t] = v;
    }
    doc.base_data = std::move(bd);
  }
  if (j.contains("fibration"))
    doc.fibration = fibration_from_json(j["fibration"], where + ".fibration");
  return doc;
}

Json document_to_json(const GraphDocument& doc) {
  Json j;
  j["format_version"] = doc.format_version;
  j["mode"] = doc.mode == Mode::Signed ? "signed" : "unsigned";
  j["vertices"] = Json::array();
  for (const auto& v : doc.vertices) {
    Json e;
    e["id"] = v.id;
    if (v.position) e["position"] = weight_to_json(*v.position);
    j["vertices"].push_back(std::move(e));
  }
  j["edge_pairs"] = Json::array();
  for (const auto& ep : doc.edge_pairs) {
    Json e;
    e["id"] = ep.id;
    e["src"] = ep.src;
    e["dst"] = ep.dst;
    e["weight"] = weight_to_json(ep.weight);
    j["edge_pairs"].push_back(std::move(e));
  }
  if (doc.base_data) {
    Json b;
    b["vertex_order"] = doc.base_data->vertex_order;
    b["edge_order"] = doc.base_data->edge_order;
    b["gammas"] = Json::array();
    for (const auto& g : doc.base_data->gammas) b["gammas"].push_back(weight_to_json(g));
    b["eps"] = Json::array({doc.base_data->eps[0], doc.base_data->eps[1]});
    j["base_data"] = std::move(b);
  }
  if (doc.fibration) {
    Json f;
    f["base"] = document_to_json(*doc.fibration->base);
    Json vm;
    for (const auto& [k, v] : doc.fibration->vertex_map) vm[k] = v;
    f["vertex_map"] = std::move(vm);
    f["edge_map"] = Json::array();
    for (const auto& em : doc.fibration->edge_map) {
      Json e;
      e["edge"] = em.edge;
      e["base"] = em.base;
      if (em.reversed) e["reversed"] = true;
      f["edge_map"].push_back(std::move(e));
    }
    if (doc.fibration->fiber_signs) {
      Json sig;
      for (const auto& [k, w] : *doc.fibration->fiber_signs) sig[k] = weight_to_json(w);
      f["fiber_signs"] = std::move(sig);
    }
    j["fibration"] = std::move(f);
  }
  return j;
}

}  // namespace

GkmGraph GraphDocument::to_graph() const {
  GkmGraph g(mode, int(vertices.size()));
  std::map<std::string, int> vidx;
  for (size_t i = 0; i < vertices.size(); ++i) {
    vidx[vertices[i].id] = int(i);
    g.set_vertex_name(int(i), vertices[i].id);
  }
  for (size_t p = 0; p < edge_pairs.size(); ++p) {
    const auto& e = edge_pairs[p];
    g.add_edge_pair(vidx.at(e.src), vidx.at(e.dst), e.weight);
    g.set_pair_name(int(p), e.id);
  }
  return g;
}

std::optional<Weight> GraphDocument::position_of(const std::string& id) const {
  for (const auto& v : vertices)
    if (v.id == id) return v.position;
  return std::nullopt;
}

BaseData GraphDocument::to_base_data() const {
  GkmGraph g = to_graph();
  if (!base_data) return make_base_data(g);
  const auto& bd = *base_data;
  const int n = int(bd.vertex_order.size());
  if (int(bd.edge_order.size()) != n || int(bd.gammas.size()) != n)
    fail_semantic("base_data: vertex_order, edge_order and gammas must have equal length");
  BaseData out;
  out.base = g;
  out.eps = bd.eps;
  out.gammas = bd.gammas;
  for (const auto& id : bd.vertex_order) {
    auto v = g.vertex_by_name(id);
    if (!v) fail_semantic("base_data: unknown vertex \"" + id + "\"");
    out.vertex_order.push_back(*v);
  }
  for (int i = 0; i < n; ++i) {
    auto p = g.pair_by_name(bd.edge_order[i]);
    if (!p) fail_semantic("base_data: unknown edge \"" + bd.edge_order[i] + "\"");
    EdgeId fwd = forward_edge(*p);
    // orient the pair from v_i to v_{i+1}
    if (g.src(fwd) == out.vertex_order[i])
      out.edge_order.push_back(fwd);
    else
      out.edge_order.push_back(bar(fwd));
  }
  return out;
}

Fibration GraphDocument::to_fibration() const {
  if (!fibration) throw PreconditionUnmetError("document has no fibration stanza");
  const auto& fs = *fibration;
  Fibration f;
  f.total = to_graph();
  f.base_data = fs.base->to_base_data();
  const GkmGraph& base = f.base_data.base;
  f.vertex_map.assign(f.total.num_vertices(), -1);
  for (const auto& [tid, bid] : fs.vertex_map) {
    auto tv = f.total.vertex_by_name(tid);
    auto bv = base.vertex_by_name(bid);
    if (!tv || !bv) fail_semantic("fibration.vertex_map references unknown vertices");
    f.vertex_map[*tv] = *bv;
  }
  for (VertexId v = 0; v < f.total.num_vertices(); ++v)
    if (f.vertex_map[v] < 0)
      fail_semantic("fibration.vertex_map misses vertex \"" + f.total.vertex_name(v) + "\"");
  f.edge_map.assign(f.total.num_edges(), -1);
  for (const auto& em : fs.edge_map) {
    auto tp = f.total.pair_by_name(em.edge);
    auto bp = base.pair_by_name(em.base);
    if (!tp || !bp) fail_semantic("fibration.edge_map references unknown edges");
    EdgeId te = forward_edge(*tp);
    EdgeId be = em.reversed ? bar(forward_edge(*bp)) : forward_edge(*bp);
    f.edge_map[te] = be;
    f.edge_map[bar(te)] = bar(be);
  }
  if (fs.fiber_signs) {
    std::vector<Weight> signs(f.total.num_edges(), weight(0, 0));
    for (const auto& [pid, w] : *fs.fiber_signs) {
      auto tp = f.total.pair_by_name(pid);
      if (!tp) fail_semantic("fibration.fiber_signs references unknown edge \"" + pid + "\"");
      signs[forward_edge(*tp)] = w;
      signs[bar(forward_edge(*tp))] = -w;
    }
    f.fiber_signs = std::move(signs);
  }
  return f;
}

GraphDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // recover line/column from the byte offset
    size_t pos = std::min(e.byte, text.size());
    int line = 1, col = 1;
    for (size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(e.what(), line, col);
  }
  GraphDocument doc = document_from_json(j, "document");
  doc.to_graph();  // exercises id resolution
  if (doc.fibration) doc.to_fibration();
  return doc;
}

std::string serialize(const GraphDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

GraphDocument read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

void write_document_file(const std::string& path, const GraphDocument& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize(doc);
}

GraphDocument document_from_graph(const GkmGraph& g,
                                  const std::vector<std::optional<Weight>>* positions) {
  GraphDocument doc;
  doc.mode = g.mode();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    GraphDocument::VertexEntry entry;
    entry.id = g.vertex_name(v);
    if (positions && v < int(positions->size())) entry.position = (*positions)[v];
    doc.vertices.push_back(std::move(entry));
  }
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    GraphDocument::EdgeEntry entry;
    entry.id = g.pair_name(p);
    entry.src = g.vertex_name(g.src(forward_edge(p)));
    entry.dst = g.vertex_name(g.dst(forward_edge(p)));
    entry.weight = g.label(forward_edge(p));
    doc.edge_pairs.push_back(std::move(entry));
  }
  return doc;
}

GraphDocument document_from_fibration(const Fibration& f) {
  GraphDocument doc = document_from_graph(f.total);
  GraphDocument::FibrationStanza fs;
  auto base_doc = document_from_graph(f.base_data.base);
  GraphDocument::BaseDataStanza bd;
  for (VertexId v : f.base_data.vertex_order) bd.vertex_order.push_back(f.base_data.base.vertex_name(v));
  for (EdgeId e : f.base_data.edge_order)
    bd.edge_order.push_back(f.base_data.base.pair_name(pair_of(e)));
  bd.gammas = f.base_data.gammas;
  bd.eps = f.base_data.eps;
  base_doc.base_data = std::move(bd);
  fs.base = std::make_shared<GraphDocument>(std::move(base_doc));
  for (VertexId v = 0; v < f.total.num_vertices(); ++v)
    fs.vertex_map[f.total.vertex_name(v)] = f.base_data.base.vertex_name(f.vertex_map[v]);
  for (int p = 0; p < f.total.num_edge_pairs(); ++p) {
    EdgeId e = forward_edge(p);
    if (f.vertical(e)) continue;
    GraphDocument::EdgeMapEntry em;
    em.edge = f.total.pair_name(p);
    em.base = f.base_data.base.pair_name(pair_of(f.edge_map[e]));
    em.reversed = (f.edge_map[e] & 1) != 0;
    fs.edge_map.push_back(std::move(em));
  }
  if (f.fiber_signs) {
    std::map<std::string, Weight> signs;
    for (int p = 0; p < f.total.num_edge_pairs(); ++p) {
      EdgeId e = forward_edge(p);
      if (f.vertical(e)) signs[f.total.pair_name(p)] = (*f.fiber_signs)[e];
    }
    fs.fiber_signs = std::move(signs);
  }
  doc.fibration = std::move(fs);
  return doc;
}

}  // namespace gkm
