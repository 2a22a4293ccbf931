#include "gkm/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gkm {

GkmGraph::GkmGraph(Mode mode, int num_vertices)
    : mode_(mode), num_vertices_(num_vertices), stars_(num_vertices) {
  vertex_names_.resize(num_vertices);
  for (int v = 0; v < num_vertices; ++v) vertex_names_[v] = "v" + std::to_string(v + 1);
}

int GkmGraph::add_edge_pair(VertexId s, VertexId d, const Weight& w) {
  int pair = num_edge_pairs();
  Weight fwd = mode_ == Mode::Unsigned ? canonical_rep(w) : w;
  Weight rev = mode_ == Mode::Unsigned ? fwd : Weight(-fwd);
  src_.push_back(s);
  labels_.push_back(fwd);
  src_.push_back(d);
  labels_.push_back(rev);
  stars_[s].push_back(forward_edge(pair));
  stars_[d].push_back(bar(forward_edge(pair)));
  pair_names_.push_back("e" + std::to_string(pair + 1));
  return pair;
}

bool GkmGraph::connected() const {
  if (num_vertices_ == 0) return true;
  std::vector<bool> seen(num_vertices_, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : stars_[v]) {
      VertexId w = dst(e);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_vertices_;
}

void GkmGraph::set_vertex_name(VertexId v, std::string name) { vertex_names_[v] = std::move(name); }
void GkmGraph::set_pair_name(int pair, std::string name) { pair_names_[pair] = std::move(name); }
const std::string& GkmGraph::vertex_name(VertexId v) const { return vertex_names_[v]; }
const std::string& GkmGraph::pair_name(int pair) const { return pair_names_[pair]; }

std::string GkmGraph::edge_name(EdgeId e) const {
  return (e & 1) ? "-" + pair_names_[pair_of(e)] : pair_names_[pair_of(e)];
}

std::optional<VertexId> GkmGraph::vertex_by_name(const std::string& name) const {
  for (int v = 0; v < num_vertices_; ++v)
    if (vertex_names_[v] == name) return v;
  return std::nullopt;
}

std::optional<int> GkmGraph::pair_by_name(const std::string& name) const {
  for (int p = 0; p < num_edge_pairs(); ++p)
    if (pair_names_[p] == name) return p;
  return std::nullopt;
}

GkmGraph GkmGraph::with_signed_labels(const std::vector<Weight>& forward_labels) const {
  GkmGraph out(Mode::Signed, num_vertices_);
  for (int p = 0; p < num_edge_pairs(); ++p) {
    out.add_edge_pair(src(forward_edge(p)), dst(forward_edge(p)), forward_labels[p]);
    out.pair_names_[p] = pair_names_[p];
  }
  out.vertex_names_ = vertex_names_;
  return out;
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& e : other.errors) errors.push_back(prefix + e);
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

EdgeId Connection::apply(const GkmGraph& g, EdgeId along, EdgeId f) const {
  const auto& star = g.star(g.src(along));
  for (size_t j = 0; j < star.size(); ++j)
    if (star[j] == f) return maps[along][j];
  throw PreconditionUnmetError("Connection::apply: edge not in the star of the transport edge");
}

ValidationReport validate_structure(const GkmGraph& g) {
  ValidationReport rep;
  if (g.num_vertices() == 0) {
    rep.fail("graph has no vertices");
    return rep;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.src(e) == g.dst(e))
      rep.fail("loop at vertex " + g.vertex_name(g.src(e)) + " (edge " + g.edge_name(e) + ")");
    if (is_zero(g.label(e))) rep.fail("zero label on edge " + g.edge_name(e));
  }
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    EdgeId e = forward_edge(p);
    const Weight& fwd = g.label(e);
    const Weight& rev = g.label(bar(e));
    if (g.is_signed()) {
      if (rev != Weight(-fwd))
        rep.fail("label antisymmetry violated on pair " + g.pair_name(p));
    } else {
      if (rev != fwd || fwd != canonical_rep(fwd))
        rep.fail("unsigned labels must be canonical and orientation independent on pair " +
                 g.pair_name(p));
    }
  }
  int valence = int(g.star(0).size());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (int(g.star(v).size()) != valence)
      rep.fail("vertex " + g.vertex_name(v) + " has out-degree " +
               std::to_string(g.star(v).size()) + ", expected " + std::to_string(valence));
    const auto& star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i)
      for (size_t j = i + 1; j < star.size(); ++j)
        if (!linearly_independent(g.label(star[i]), g.label(star[j])))
          rep.fail("labels at vertex " + g.vertex_name(v) + " are not pairwise independent (" +
                   g.edge_name(star[i]) + ", " + g.edge_name(star[j]) + ")");
  }
  if (!g.connected()) rep.fail("graph is not connected");
  rep.note(std::to_string(valence) + "-valent, " + std::to_string(g.num_vertices()) +
           " vertices, " + std::to_string(g.num_edge_pairs()) + " edge pairs");
  return rep;
}

namespace {

/// All ways to extend transport along `e` to a label-compatible bijection
/// star(src(e)) -> star(dst(e)). Each result is aligned with star(src(e)).
void enumerate_matchings(const GkmGraph& g, EdgeId e,
                         const std::function<bool(const std::vector<EdgeId>&)>& emit,
                         SearchBudget* budget) {
  const auto& from = g.star(g.src(e));
  const auto& to = g.star(g.dst(e));
  const bool signed_mode = g.is_signed();
  std::vector<EdgeId> image(from.size(), -1);
  std::vector<bool> used(to.size(), false);
  std::vector<std::vector<bool>> feasible(from.size(), std::vector<bool>(to.size(), false));
  for (size_t i = 0; i < from.size(); ++i) {
    for (size_t j = 0; j < to.size(); ++j) {
      if (from[i] == e)
        feasible[i][j] = (to[j] == bar(e));
      else if (to[j] == bar(e))
        feasible[i][j] = false;
      else
        feasible[i][j] =
            congruent_mod(g.label(to[j]), g.label(from[i]), g.label(e), signed_mode).has_value();
    }
  }
  bool stop = false;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (stop) return;
    if (i == from.size()) {
      if (!emit(image)) stop = true;
      return;
    }
    for (size_t j = 0; j < to.size() && !stop; ++j) {
      if (used[j] || !feasible[i][j]) continue;
      if (budget) budget->tick();
      used[j] = true;
      image[i] = to[j];
      rec(i + 1);
      used[j] = false;
    }
  };
  rec(0);
}

std::vector<EdgeId> inverse_matching(const GkmGraph& g, EdgeId e,
                                     const std::vector<EdgeId>& image) {
  const auto& from = g.star(g.src(e));
  const auto& to = g.star(g.dst(e));
  std::vector<EdgeId> inv(to.size(), -1);
  for (size_t i = 0; i < from.size(); ++i) {
    for (size_t j = 0; j < to.size(); ++j) {
      if (to[j] == image[i]) inv[j] = from[i];
    }
  }
  return inv;
}

}  // namespace

std::optional<Connection> find_connection(const GkmGraph& g) {
  Connection conn;
  conn.maps.resize(g.num_edges());
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    EdgeId e = forward_edge(p);
    bool found = false;
    enumerate_matchings(
        g, e,
        [&](const std::vector<EdgeId>& image) {
          conn.maps[e] = image;
          conn.maps[bar(e)] = inverse_matching(g, e, image);
          found = true;
          return false;  // first match only
        },
        nullptr);
    if (!found) return std::nullopt;
  }
  return conn;
}

std::vector<Connection> all_connections(const GkmGraph& g, SearchBudget* budget) {
  SearchBudget local;
  if (!budget) budget = &local;
  std::vector<std::vector<std::vector<EdgeId>>> choices(g.num_edge_pairs());
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    enumerate_matchings(
        g, forward_edge(p),
        [&](const std::vector<EdgeId>& image) {
          choices[p].push_back(image);
          return true;
        },
        budget);
    if (choices[p].empty()) return {};
  }
  std::vector<Connection> result;
  std::vector<size_t> pick(g.num_edge_pairs(), 0);
  while (true) {
    budget->tick();
    Connection conn;
    conn.maps.resize(g.num_edges());
    for (int p = 0; p < g.num_edge_pairs(); ++p) {
      EdgeId e = forward_edge(p);
      conn.maps[e] = choices[p][pick[p]];
      conn.maps[bar(e)] = inverse_matching(g, e, conn.maps[e]);
    }
    result.push_back(std::move(conn));
    int p = g.num_edge_pairs() - 1;
    while (p >= 0 && pick[p] + 1 == choices[p].size()) pick[p--] = 0;
    if (p < 0) break;
    ++pick[p];
  }
  return result;
}

ValidationReport validate_connection(const GkmGraph& g, const Connection& c) {
  ValidationReport rep;
  if (int(c.maps.size()) != g.num_edges()) {
    rep.fail("connection has wrong number of edge maps");
    return rep;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& from = g.star(g.src(e));
    const auto& to = g.star(g.dst(e));
    if (c.maps[e].size() != from.size()) {
      rep.fail("transport along " + g.edge_name(e) + " is not defined on the full star");
      continue;
    }
    std::set<EdgeId> image_set(c.maps[e].begin(), c.maps[e].end());
    if (image_set.size() != to.size())
      rep.fail("transport along " + g.edge_name(e) + " is not a bijection");
    for (size_t i = 0; i < from.size(); ++i) {
      EdgeId f = from[i], m = c.maps[e][i];
      if (std::find(to.begin(), to.end(), m) == to.end())
        rep.fail("transport along " + g.edge_name(e) + " leaves the target star");
      if (f == e && m != bar(e)) rep.fail("nabla_e e != bar(e) along " + g.edge_name(e));
      if (c.apply(g, bar(e), m) != f)
        rep.fail("nabla_{bar e} is not inverse to nabla_e along " + g.edge_name(e));
      if (!congruent_mod(g.label(m), g.label(f), g.label(e), g.is_signed()))
        rep.fail("congruence fails along " + g.edge_name(e) + " for " + g.edge_name(f));
    }
  }
  return rep;
}

ValidationReport validate(const GkmGraph& g) {
  ValidationReport rep = validate_structure(g);
  if (!rep.ok()) {
    rep.note("connection search skipped (structural failures)");
    return rep;
  }
  auto conn = find_connection(g);
  if (!conn) {
    rep.fail("no compatible connection exists");
  } else {
    ValidationReport check = validate_connection(g, *conn);
    rep.merge(check, "connection recheck: ");
    rep.note("compatible connection found");
  }
  return rep;
}

bool is_effective(const GkmGraph& g) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& star = g.star(v);
    bool has_basis = false;
    for (size_t i = 0; i < star.size() && !has_basis; ++i)
      for (size_t j = i + 1; j < star.size() && !has_basis; ++j)
        if (is_basis(g.label(star[i]), g.label(star[j]))) has_basis = true;
    if (!has_basis) return false;
  }
  return true;
}

GkmGraph forget_signs(const GkmGraph& g) {
  if (!g.is_signed()) return g;
  GkmGraph out(Mode::Unsigned, g.num_vertices());
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    EdgeId e = forward_edge(p);
    out.add_edge_pair(g.src(e), g.dst(e), g.label(e));
    out.set_pair_name(p, g.pair_name(p));
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) out.set_vertex_name(v, g.vertex_name(v));
  return out;
}

namespace {

struct IsoSearch {
  const GkmGraph& g1;
  const GkmGraph& g2;
  Mat2 phi;
  SearchBudget* budget;
  std::vector<VertexId> vmap;
  std::vector<bool> wused;
  std::vector<EdgeId> emap;

  IsoSearch(const GkmGraph& a, const GkmGraph& b, const Mat2& p, SearchBudget* bud)
      : g1(a), g2(b), phi(p), budget(bud) {
    vmap.assign(g1.num_vertices(), -1);
    wused.assign(g2.num_vertices(), false);
    emap.assign(g1.num_edges(), -1);
  }

  bool label_matches(EdgeId e1, EdgeId e2) const {
    Weight mapped = phi * g1.label(e1);
    if (g1.is_signed()) return mapped == g2.label(e2);
    return canonical_rep(mapped) == g2.label(e2);
  }

  bool run(VertexId v0, VertexId w0) {
    vmap[v0] = w0;
    wused[w0] = true;
    std::vector<VertexId> order{v0};
    bool ok = match_from(order, 0);
    if (!ok) {
      vmap[v0] = -1;
      wused[w0] = false;
    }
    return ok;
  }

  bool match_from(std::vector<VertexId>& order, size_t idx) {
    if (idx == order.size()) return true;  // g1 connected => all vertices reached
    VertexId v = order[idx];
    return match_star(order, idx, v, 0);
  }

  bool match_star(std::vector<VertexId>& order, size_t idx, VertexId v, size_t pos) {
    const auto& s1 = g1.star(v);
    if (pos == s1.size()) return match_from(order, idx + 1);
    EdgeId e = s1[pos];
    if (emap[e] != -1) {
      return match_star(order, idx, v, pos + 1);
    }
    const auto& s2 = g2.star(vmap[v]);
    for (EdgeId cand : s2) {
      if (budget) budget->tick();
      bool cand_taken = false;
      for (EdgeId other : s1)
        if (emap[other] == cand) cand_taken = true;
      if (cand_taken) continue;
      if (!label_matches(e, cand)) continue;
      VertexId d1 = g1.dst(e), d2 = g2.dst(cand);
      bool new_vertex = false;
      if (vmap[d1] == -1) {
        if (wused[d2]) continue;
        vmap[d1] = d2;
        wused[d2] = true;
        order.push_back(d1);
        new_vertex = true;
      } else if (vmap[d1] != d2) {
        continue;
      }
      emap[e] = cand;
      emap[bar(e)] = bar(cand);
      if (match_star(order, idx, v, pos + 1)) return true;
      emap[e] = -1;
      emap[bar(e)] = -1;
      if (new_vertex) {
        vmap[d1] = -1;
        wused[d2] = false;
        order.pop_back();
      }
    }
    return false;
  }
};

bool mat2_eq(const Mat2& a, const Mat2& b) {
  return a(0, 0) == b(0, 0) && a(0, 1) == b(0, 1) && a(1, 0) == b(1, 0) && a(1, 1) == b(1, 1);
}

/// phi with phi*a1 = b1, phi*a2 = b2, if integral and unimodular.
std::optional<Mat2> solve_phi(const Weight& a1, const Weight& a2, const Weight& b1,
                              const Weight& b2) {
  Int d = det(a1, a2);
  if (d.is_zero()) return std::nullopt;
  Mat2 m;
  m(0, 0) = b1(0) * a2(1) - b2(0) * a1(1);
  m(0, 1) = -b1(0) * a2(0) + b2(0) * a1(0);
  m(1, 0) = b1(1) * a2(1) - b2(1) * a1(1);
  m(1, 1) = -b1(1) * a2(0) + b2(1) * a1(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (m(i, j) % d != 0) return std::nullopt;
      m(i, j) /= d;
    }
  Int det_phi = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det_phi != 1 && det_phi != -1) return std::nullopt;
  return m;
}

}  // namespace

std::optional<Isomorphism> isomorphic(const GkmGraph& g1, const GkmGraph& g2,
                                      bool allow_lattice_automorphism, SearchBudget* budget) {
  if (g1.mode() != g2.mode()) return std::nullopt;
  if (g1.num_vertices() != g2.num_vertices() || g1.num_edge_pairs() != g2.num_edge_pairs())
    return std::nullopt;
  if (g1.num_vertices() == 0) return std::nullopt;
  if (g1.valence() != g2.valence()) return std::nullopt;
  SearchBudget local;
  if (!budget) budget = &local;

  std::vector<std::pair<VertexId, Mat2>> candidates;
  Mat2 identity;
  identity << 1, 0, 0, 1;
  if (!allow_lattice_automorphism || g1.valence() < 2) {
    for (VertexId w0 = 0; w0 < g2.num_vertices(); ++w0) candidates.emplace_back(w0, identity);
  } else {
    EdgeId e1 = g1.star(0)[0], e2 = g1.star(0)[1];
    const Weight& a1 = g1.label(e1);
    const Weight& a2 = g1.label(e2);
    std::vector<std::pair<int, int>> signs;
    if (g1.is_signed())
      signs = {{1, 1}};
    else
      signs = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (VertexId w0 = 0; w0 < g2.num_vertices(); ++w0) {
      const auto& star = g2.star(w0);
      for (EdgeId f1 : star) {
        for (EdgeId f2 : star) {
          if (f1 == f2) continue;
          for (auto [s1, s2] : signs) {
            budget->tick();
            Weight b1 = Int(s1) * g2.label(f1);
            Weight b2 = Int(s2) * g2.label(f2);
            auto phi = solve_phi(a1, a2, b1, b2);
            if (!phi) continue;
            bool dup = false;
            for (const auto& [w, m] : candidates)
              if (w == w0 && mat2_eq(m, *phi)) dup = true;
            if (!dup) candidates.emplace_back(w0, *phi);
          }
        }
      }
    }
  }

  for (const auto& [w0, phi] : candidates) {
    IsoSearch search(g1, g2, phi, budget);
    if (search.run(0, w0)) {
      Isomorphism iso{search.vmap, search.emap, phi};
      if (check_isomorphism(g1, g2, iso)) return iso;
    }
  }
  return std::nullopt;
}

bool check_isomorphism(const GkmGraph& g1, const GkmGraph& g2, const Isomorphism& iso) {
  if (int(iso.vertex_map.size()) != g1.num_vertices()) return false;
  if (int(iso.edge_map.size()) != g1.num_edges()) return false;
  if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return false;
  Int det_phi = iso.phi(0, 0) * iso.phi(1, 1) - iso.phi(0, 1) * iso.phi(1, 0);
  if (det_phi != 1 && det_phi != -1) return false;
  std::vector<bool> vseen(g2.num_vertices(), false), eseen(g2.num_edges(), false);
  for (VertexId v = 0; v < g1.num_vertices(); ++v) {
    VertexId w = iso.vertex_map[v];
    if (w < 0 || w >= g2.num_vertices() || vseen[w]) return false;
    vseen[w] = true;
  }
  for (EdgeId e = 0; e < g1.num_edges(); ++e) {
    EdgeId m = iso.edge_map[e];
    if (m < 0 || m >= g2.num_edges() || eseen[m]) return false;
    eseen[m] = true;
    if (iso.vertex_map[g1.src(e)] != g2.src(m)) return false;
    if (iso.vertex_map[g1.dst(e)] != g2.dst(m)) return false;
    if (iso.edge_map[bar(e)] != bar(m)) return false;
    Weight mapped = iso.phi * g1.label(e);
    if (g1.is_signed()) {
      if (mapped != g2.label(m)) return false;
    } else {
      if (canonical_rep(mapped) != g2.label(m)) return false;
    }
  }
  return true;
}

}  // namespace gkm
