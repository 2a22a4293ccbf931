#include "gkm/signed_analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <thread>

namespace gkm {

namespace {

/// Sign of the label a mask assigns to a directed edge: bit(pair) flips the
/// canonical representative, the reversal flips again.
inline int mask_sign(uint64_t mask, EdgeId e) {
  int s = (mask >> pair_of(e)) & 1 ? -1 : 1;
  return (e & 1) ? -s : s;
}

/// Per directed edge, the congruence data of the 2x2 transport matching
/// between the non-trivial star edges, evaluated for both relative signs.
struct TransportTable {
  // from[i] -> to[j] admissible when labels agree (plus) / flip (minus)
  bool plus[2][2];
  bool minus[2][2];
  EdgeId from[2];
  EdgeId to[2];
  int nfrom = 0, nto = 0;
};

std::vector<TransportTable> build_tables(const GkmGraph& g) {
  std::vector<TransportTable> tables(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    TransportTable& t = tables[e];
    for (EdgeId f : g.star(g.src(e)))
      if (f != e) t.from[t.nfrom++] = f;
    for (EdgeId h : g.star(g.dst(e)))
      if (h != bar(e)) t.to[t.nto++] = h;
    for (int i = 0; i < t.nfrom; ++i) {
      for (int j = 0; j < t.nto; ++j) {
        const Weight& wf = g.label(t.from[i]);
        const Weight& wt = g.label(t.to[j]);
        const Weight& we = g.label(e);
        t.plus[i][j] = congruent_mod(wt, wf, we, true).has_value();
        t.minus[i][j] = congruent_mod(wt, Weight(-wf), we, true).has_value();
      }
    }
  }
  return tables;
}

bool mask_admits_connection(const GkmGraph& g, const std::vector<TransportTable>& tables,
                            uint64_t mask) {
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    EdgeId e = forward_edge(p);
    const TransportTable& t = tables[e];
    auto ok = [&](int i, int j) {
      bool same = mask_sign(mask, t.from[i]) == mask_sign(mask, t.to[j]);
      return same ? t.plus[i][j] : t.minus[i][j];
    };
    bool feasible;
    if (t.nfrom == 0)
      feasible = true;
    else if (t.nfrom == 1)
      feasible = ok(0, 0);
    else
      feasible = (ok(0, 0) && ok(1, 1)) || (ok(0, 1) && ok(1, 0));
    if (!feasible) return false;
  }
  return true;
}

GkmGraph graph_for_mask(const GkmGraph& g, uint64_t mask) {
  std::vector<Weight> fwd(g.num_edge_pairs());
  for (int p = 0; p < g.num_edge_pairs(); ++p) {
    Weight w = g.label(forward_edge(p));
    fwd[p] = (mask >> p) & 1 ? Weight(-w) : w;
  }
  return g.with_signed_labels(fwd);
}

GkmGraph negated(const GkmGraph& g) {
  std::vector<Weight> fwd(g.num_edge_pairs());
  for (int p = 0; p < g.num_edge_pairs(); ++p) fwd[p] = -g.label(forward_edge(p));
  return g.with_signed_labels(fwd);
}

}  // namespace

bool same_signed_class(const GkmGraph& a, const GkmGraph& b, SearchBudget* budget) {
  if (isomorphic(a, b, false, budget)) return true;
  return isomorphic(a, negated(b), false, budget).has_value();
}

std::vector<GkmGraph> enumerate_signed_structures(const GkmGraph& g, SearchBudget* budget,
                                                  int num_threads) {
  if (g.is_signed())
    throw PreconditionUnmetError("enumerate_signed_structures expects an unsigned graph");
  SearchBudget local;
  if (!budget) budget = &local;
  const int m = g.num_edge_pairs();
  if (m >= 63 || (uint64_t(1) << m) > budget->limit() - budget->used())
    throw SizeLimitError("sign enumeration exceeds the node budget (2^" + std::to_string(m) +
                         " assignments)");
  budget->tick(uint64_t(1) << m);
  auto tables = build_tables(g);

  if (num_threads <= 0)
    num_threads = int(std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  if (num_threads < 1) num_threads = 1;
  int prefix_bits = 0;
  while ((1 << prefix_bits) < num_threads && prefix_bits + 1 < m) ++prefix_bits;
  const int chunks = std::min<int>(1 << prefix_bits, 1 << std::max(0, m));
  std::vector<std::vector<uint64_t>> found(chunks);
  auto work = [&](int chunk) {
    uint64_t lo = uint64_t(chunk) << (m - prefix_bits);
    uint64_t hi = uint64_t(chunk + 1) << (m - prefix_bits);
    for (uint64_t mask = lo; mask < hi; ++mask)
      if (mask_admits_connection(g, tables, mask)) found[chunk].push_back(mask);
  };
  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int c = 0; c < chunks; ++c) pool.emplace_back(work, c);
    for (auto& t : pool) t.join();
  }

  // Dedup up to isomorphism with identity lattice map; a structure and its
  // global negation count once (they are the two lifts of the same unsigned
  // class, exchanged by conjugation).
  std::vector<GkmGraph> result;
  for (int c = 0; c < chunks; ++c) {
    for (uint64_t mask : found[c]) {
      GkmGraph cand = graph_for_mask(g, mask);
      bool dup = false;
      for (const auto& kept : result)
        if (same_signed_class(kept, cand, budget)) {
          dup = true;
          break;
        }
      if (!dup) result.push_back(std::move(cand));
    }
  }
  return result;
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::CaseI: return "I";
    case CaseTag::CaseII: return "II";
    case CaseTag::CaseIII: return "III";
    default: return "other";
  }
}

std::vector<SignedStructureCase> classify_cases(const Fibration& fin,
                                                const std::vector<GkmGraph>& structures) {
  Fibration f = fin;
  if (!f.fiber_signs) {
    auto lifts = fiber_sign_lifts(f);
    if (lifts.empty())
      throw PreconditionUnmetError("classify_cases requires a fiberwise signed fibration");
    f.fiber_signs = lifts[0];
  }
  const BaseData& bd = f.base_data;
  const int n = bd.n();
  // CaseII/CaseIII are census statements about twisted fibrations with the maximal
  // number of interior vertices; outside those hypotheses only the lift tag
  // applies and everything else stays untagged.
  KVector k = classify(f);
  bool census_hypotheses = k.eta == 1;
  {
    int count = 0;
    for (bool fl : interior_by_k(k))
      if (fl) ++count;
    if (count != n - 1) census_hypotheses = false;
  }
  std::optional<GkmGraph> case1, case2;
  if (bd.signed_compatible()) {
    case1 = lift_signed(f, bd.signed_base());
    if (n % 2 == 0) {
      // flip the sign of every second base edge
      std::vector<Weight> fwd(bd.base.num_edge_pairs(), weight(0, 0));
      for (int i = 0; i < n; ++i) {
        EdgeId e = bd.edge_order[i];
        Weight gi = (i % 2 == 1) ? Weight(-bd.gammas[i]) : bd.gammas[i];
        fwd[pair_of(e)] = (e & 1) ? Weight(-gi) : gi;
      }
      case2 = lift_signed(f, bd.base.with_signed_labels(fwd));
    }
  }
  // forward lifts of each base edge pair, to read off the CaseIII pattern
  std::vector<std::pair<EdgeId, EdgeId>> lifts(n, {-1, -1});
  for (EdgeId e = 0; e < f.total.num_edges(); ++e) {
    if (f.vertical(e)) continue;
    for (int i = 0; i < n; ++i) {
      if (f.edge_map[e] == bd.edge_order[i]) {
        if (lifts[i].first < 0)
          lifts[i].first = e;
        else if (lifts[i].second < 0 && pair_of(e) != pair_of(lifts[i].first))
          lifts[i].second = e;
      }
    }
  }
  std::vector<SignedStructureCase> out;
  for (const GkmGraph& s : structures) {
    SignedStructureCase entry{CaseTag::Other, s};
    if (case1 && same_signed_class(s, *case1)) {
      entry.tag = CaseTag::CaseI;
    } else if (census_hypotheses && case2 && same_signed_class(s, *case2)) {
      entry.tag = CaseTag::CaseII;
    } else if (census_hypotheses) {
      bool all_differ = true;
      for (int i = 0; i < n; ++i) {
        if (lifts[i].first < 0 || lifts[i].second < 0) {
          all_differ = false;
          break;
        }
        if (s.label(lifts[i].first) == s.label(lifts[i].second)) all_differ = false;
      }
      if (all_differ) entry.tag = CaseTag::CaseIII;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

namespace {

// half-plane index: 0 for angles in [0,pi), 1 for [pi,2pi)
int half_of(const Weight& w) {
  if (w(1) > 0 || (w(1).is_zero() && w(0) > 0)) return 0;
  return 1;
}

// strict angle comparison theta(a) < theta(b) in [0,2pi)
bool angle_less(const Weight& a, const Weight& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

}  // namespace

std::optional<int> is_locally_convex(const std::vector<Weight>& ws) {
  if (ws.size() < 2) throw PreconditionUnmetError("need at least two weights");
  bool pos = true, neg = true;
  for (size_t i = 0; i < ws.size(); ++i) {
    Int c = det(ws[i], ws[(i + 1) % ws.size()]);
    if (c.is_zero())
      throw PreconditionUnmetError("consecutive weights are linearly dependent at index " +
                                   std::to_string(i));
    if (c > 0) neg = false;
    if (c < 0) pos = false;
  }
  if (pos) return 1;
  if (neg) return -1;
  return std::nullopt;
}

long winding_number(const std::vector<Weight>& ws, int orientation) {
  const size_t n = ws.size();
  if (n < 2) throw PreconditionUnmetError("need at least two weights");
  for (size_t i = 0; i < n; ++i) {
    if (is_zero(ws[i])) throw PreconditionUnmetError("zero weight in the cycle");
    if (det(ws[i], ws[(i + 1) % n]).is_zero())
      throw PreconditionUnmetError("consecutive weights are linearly dependent at index " +
                                   std::to_string(i));
  }
  // Each counterclockwise step angle lies in (0,2pi); their sum telescopes to
  // 2pi times the number of descents of the angle sequence.
  long descents = 0;
  for (size_t i = 0; i < n; ++i)
    if (angle_less(ws[(i + 1) % n], ws[i])) ++descents;
  if (orientation == 1) return descents;
  if (orientation == -1) return long(n) - descents;
  throw PreconditionUnmetError("orientation must be +1 or -1");
}

std::vector<CycleSubgraph> polytope_type_subgraphs(const GkmGraph& g, SearchBudget* budget) {
  if (!g.is_signed())
    throw PreconditionUnmetError("polytope_type_subgraphs expects a signed graph");
  SearchBudget local;
  if (!budget) budget = &local;
  std::vector<CycleSubgraph> out;
  std::set<std::vector<int>> seen;  // sorted pair-id keys
  std::vector<EdgeId> path_edges;
  std::vector<VertexId> path_vertices;
  std::vector<bool> on_path(g.num_vertices(), false);

  auto weights_of = [&](const std::vector<EdgeId>& edges) {
    std::vector<Weight> ws;
    ws.reserve(edges.size());
    for (EdgeId e : edges) ws.push_back(g.label(e));
    return ws;
  };

  std::function<void(VertexId, VertexId)> dfs = [&](VertexId v0, VertexId v) {
    for (EdgeId e : g.star(v)) {
      budget->tick();
      if (!path_edges.empty() && e == bar(path_edges.back())) continue;
      // chain congruence w_{j+1} = -w_{j-1} mod w_j
      if (path_edges.size() >= 2) {
        const Weight& prev = g.label(path_edges[path_edges.size() - 2]);
        if (!congruent_mod(g.label(e), Weight(-prev), g.label(path_edges.back()), true))
          continue;
      }
      VertexId w = g.dst(e);
      if (w == v0 && path_edges.size() >= 1) {
        // closing edge: wrap congruences, then convexity and winding
        std::vector<EdgeId> cycle = path_edges;
        cycle.push_back(e);
        if (cycle.size() < 2) continue;
        size_t L = cycle.size();
        bool ok = true;
        for (size_t j = 0; j < L && ok; ++j) {
          const Weight& a = g.label(cycle[(j + L - 1) % L]);
          const Weight& b = g.label(cycle[j]);
          const Weight& c = g.label(cycle[(j + 1) % L]);
          if (!congruent_mod(c, Weight(-a), b, true)) ok = false;
        }
        if (!ok) continue;
        std::vector<int> key;
        for (EdgeId ce : cycle) key.push_back(pair_of(ce));
        std::sort(key.begin(), key.end());
        if (key.size() != std::set<int>(key.begin(), key.end()).size()) continue;
        if (seen.count(key)) continue;
        auto ws = weights_of(cycle);
        std::optional<int> orient;
        try {
          orient = is_locally_convex(ws);
        } catch (const PreconditionUnmetError&) {
          continue;
        }
        if (!orient) continue;
        if (winding_number(ws, *orient) != 1) continue;
        seen.insert(key);
        CycleSubgraph sub;
        sub.edges = cycle;
        for (EdgeId ce : cycle) sub.vertices.push_back(g.src(ce));
        out.push_back(std::move(sub));
        continue;
      }
      if (on_path[w] || w < v0) continue;
      path_edges.push_back(e);
      path_vertices.push_back(w);
      on_path[w] = true;
      dfs(v0, w);
      on_path[w] = false;
      path_vertices.pop_back();
      path_edges.pop_back();
    }
  };

  for (VertexId v0 = 0; v0 < g.num_vertices(); ++v0) {
    on_path[v0] = true;
    path_vertices.assign(1, v0);
    path_edges.clear();
    dfs(v0, v0);
    on_path[v0] = false;
  }
  std::sort(out.begin(), out.end(), [](const CycleSubgraph& a, const CycleSubgraph& b) {
    return a.edges < b.edges;
  });
  return out;
}

KaehlerVerdict kaehler_obstruction(const GkmGraph& g, SearchBudget* budget) {
  auto subgraphs = polytope_type_subgraphs(g, budget);
  std::set<std::tuple<VertexId, int, int>> covered;
  for (const auto& sub : subgraphs) {
    size_t L = sub.edges.size();
    for (size_t j = 0; j < L; ++j) {
      VertexId v = sub.vertices[j];
      int pa = pair_of(sub.edges[j]);
      int pb = pair_of(sub.edges[(j + L - 1) % L]);
      covered.insert({v, std::min(pa, pb), std::max(pa, pb)});
    }
  }
  KaehlerVerdict verdict;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i) {
      for (size_t j = i + 1; j < star.size(); ++j) {
        int pa = pair_of(star[i]), pb = pair_of(star[j]);
        if (!covered.count({v, std::min(pa, pb), std::max(pa, pb)}))
          verdict.fails_at.push_back({v, pa, pb});
      }
    }
  }
  verdict.passes = verdict.fails_at.empty();
  return verdict;
}

ConeVerdict hamiltonian_cone_obstruction(const GkmGraph& g) {
  ConeVerdict verdict;
  auto interior = interior_vertices(g);
  if (int(interior.size()) == g.num_vertices()) {
    verdict.passes = false;
    verdict.certificate = interior;
  } else {
    verdict.passes = true;
    std::vector<bool> is_int(g.num_vertices(), false);
    for (VertexId v : interior) is_int[v] = true;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!is_int[v]) verdict.certificate.push_back(v);
  }
  return verdict;
}

namespace {

/// Simple closed paths through every exterior vertex avoiding interior ones;
/// used for the minimal-interior winding argument.
std::vector<std::vector<EdgeId>> exterior_cycles(const GkmGraph& g,
                                                 const std::vector<bool>& interior,
                                                 SearchBudget* budget) {
  std::vector<std::vector<EdgeId>> out;
  int exterior_count = 0;
  VertexId v0 = -1;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!interior[v]) {
      ++exterior_count;
      if (v0 < 0) v0 = v;
    }
  if (v0 < 0) return out;
  std::vector<EdgeId> path;
  std::vector<bool> on_path(g.num_vertices(), false);
  std::set<std::vector<int>> seen;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    for (EdgeId e : g.star(v)) {
      if (budget) budget->tick();
      if (!path.empty() && e == bar(path.back())) continue;
      VertexId w = g.dst(e);
      if (interior[w]) continue;
      if (w == v0 && int(path.size()) + 1 == exterior_count) {
        auto cycle = path;
        cycle.push_back(e);
        std::vector<int> key;
        for (EdgeId ce : cycle) key.push_back(pair_of(ce));
        std::sort(key.begin(), key.end());
        if (!seen.count(key)) {
          seen.insert(key);
          out.push_back(cycle);
        }
        continue;
      }
      if (on_path[w] || w == v0) continue;
      on_path[w] = true;
      path.push_back(e);
      dfs(w);
      path.pop_back();
      on_path[w] = false;
    }
  };
  on_path[v0] = true;
  dfs(v0);
  return out;
}

}  // namespace

NonKaehlerReport nonkaehler_report(const Fibration& fin, SearchBudget* budget) {
  Fibration f = fin;
  if (!f.fiber_signs) {
    auto lifts = fiber_sign_lifts(f);
    if (lifts.empty())
      throw PreconditionUnmetError("hypothesis failed: not a fiberwise signed fibration");
    f.fiber_signs = lifts[0];
  }
  {
    auto rep = validate_fibration(f);
    if (!rep.ok())
      throw PreconditionUnmetError("hypothesis failed: fibration does not validate (" +
                                   rep.errors.front() + ")");
  }
  const BaseData& bd = f.base_data;
  const int n = bd.n();
  NonKaehlerReport report;
  report.k = classify(f);
  if (report.k.eta != 1)
    throw PreconditionUnmetError("hypothesis failed: fibration is of product type");
  if (!bd.signed_compatible())
    throw PreconditionUnmetError("hypothesis failed: base admits no signed structure");
  if (n < 3) throw PreconditionUnmetError("hypothesis failed: base is not a polygon boundary");
  {
    std::vector<Weight> gs(bd.gammas.begin(), bd.gammas.end());
    auto orient = is_locally_convex(gs);
    if (!orient || winding_number(gs, *orient) != 1)
      throw PreconditionUnmetError("hypothesis failed: base is not of polytope type");
  }
  {
    auto flags = interior_by_k(report.k);
    int count = 0;
    for (bool fl : flags)
      if (fl) ++count;
    if (count != n - 1)
      throw PreconditionUnmetError("hypothesis failed: interior vertex count " +
                                   std::to_string(count) + " is not n-1 = " +
                                   std::to_string(n - 1));
  }
  if (n == 4) throw PreconditionUnmetError("hypothesis failed: n = 4 is excluded");

  auto structures = enumerate_signed_structures(f.total, budget);
  auto tagged = classify_cases(f, structures);
  for (auto& entry : tagged) {
    CaseReport cr;
    cr.tag = entry.tag;
    switch (entry.tag) {
      case CaseTag::CaseI: {
        cr.kaehler = kaehler_obstruction(entry.structure, budget);
        cr.excluded = !cr.kaehler.passes;
        cr.detail = cr.excluded
                        ? "adjacent edge pairs without a polytope-type subgraph: " +
                              std::to_string(cr.kaehler.fails_at.size())
                        : "extension criterion passes";
        break;
      }
      case CaseTag::CaseII: {
        std::vector<bool> interior_flag(entry.structure.num_vertices(), false);
        for (VertexId v : interior_vertices(entry.structure)) interior_flag[v] = true;
        auto cycles = exterior_cycles(entry.structure, interior_flag, budget);
        bool realizable = false;
        long best = -1;
        for (const auto& cyc : cycles) {
          std::vector<Weight> ws;
          for (EdgeId e : cyc) ws.push_back(entry.structure.label(e));
          std::optional<int> orient;
          try {
            orient = is_locally_convex(ws);
          } catch (const PreconditionUnmetError&) {
            continue;
          }
          if (!orient) continue;
          long sigma = winding_number(ws, *orient);
          if (best < 0 || sigma < best) best = sigma;
          if (sigma == 1) realizable = true;
        }
        cr.exterior_winding = best < 0 ? std::optional<long>() : best;
        cr.excluded = !realizable;
        cr.detail = cr.excluded
                        ? (best < 0 ? std::string("no locally convex exterior cycle exists")
                                    : "exterior cycle winds " + std::to_string(best) + " != 1")
                        : "an exterior cycle of winding 1 exists";
        break;
      }
      case CaseTag::CaseIII: {
        cr.cone = hamiltonian_cone_obstruction(entry.structure);
        cr.excluded = !cr.cone.passes;
        cr.detail = cr.excluded ? "every vertex is interior; no linear realization"
                                : "exterior vertices exist";
        break;
      }
      default:
        cr.excluded = false;
        cr.detail = "untagged structure; no obstruction argument applies";
    }
    report.cases.push_back(std::move(cr));
  }
  report.no_invariant_kaehler = !report.cases.empty();
  for (const auto& cr : report.cases)
    if (!cr.excluded) report.no_invariant_kaehler = false;
  return report;
}

}  // namespace gkm
