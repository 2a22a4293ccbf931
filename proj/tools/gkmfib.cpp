// Command-line front end: validation, classification, construction,
// signed-structure census, Kaehler obstruction checks, cohomology,
// realization data, rendering, and enumeration sweeps over a base.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkm/cohomology.hpp"
#include "gkm/io.hpp"
#include "gkm/realization.hpp"
#include "gkm/render.hpp"
#include "gkm/signed_analysis.hpp"

using namespace gkm;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitParse = 4;
constexpr int kExitSizeLimit = 5;

struct CliError {
  int code;
  std::string message;
};

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(Int(item));
  }
  return out;
}

Json report_to_json(const ValidationReport& rep) {
  Json j;
  j["ok"] = rep.ok();
  j["errors"] = rep.errors;
  j["notes"] = rep.notes;
  return j;
}

void print_report(const ValidationReport& rep) {
  for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
  for (const auto& e : rep.errors) std::cout << "error: " << e << "\n";
  std::cout << (rep.ok() ? "valid" : "invalid") << "\n";
}

Json kvector_to_json(const KVector& k) {
  Json j;
  j["k"] = Json::array();
  for (const Int& v : k.ks) j["k"].push_back(int64_t(v));
  j["eta"] = k.eta;
  return j;
}

std::string weight_str(const Weight& w) { return to_string(w); }

Fibration fibration_or_fail(const GraphDocument& doc) {
  if (!doc.has_fibration())
    throw CliError{kExitPrecondition, "input document has no fibration stanza"};
  return doc.to_fibration();
}

Fibration with_signs(Fibration f) {
  if (!f.fiber_signs) {
    auto lifts = fiber_sign_lifts(f);
    if (lifts.empty())
      throw CliError{kExitPrecondition, "fibration admits no fiberwise signed structure"};
    f.fiber_signs = lifts[0];
  }
  return f;
}

int run_validate(const std::string& path, bool json) {
  GraphDocument doc = read_document_file(path);
  ValidationReport rep = validate(doc.to_graph());
  if (doc.has_fibration()) {
    rep.merge(validate_fibration(doc.to_fibration()), "fibration: ");
  } else if (doc.base_data) {
    rep.merge(validate_base_data(doc.to_base_data()), "base_data: ");
  }
  if (json)
    std::cout << report_to_json(rep).dump(2) << "\n";
  else
    print_report(rep);
  return rep.ok() ? 0 : kExitValidation;
}

int run_classify(const std::string& path, bool json) {
  GraphDocument doc = read_document_file(path);
  Fibration f = with_signs(fibration_or_fail(doc));
  KVector k = classify(f);
  if (json)
    std::cout << kvector_to_json(k).dump(2) << "\n";
  else
    std::cout << k.str() << "\n";
  return 0;
}

int run_build(const std::string& base_path, const std::string& kspec, int eta,
              const std::string& out, bool json) {
  GraphDocument base_doc = read_document_file(base_path);
  BaseData bd = base_doc.to_base_data();
  KVector k{parse_int_list(kspec), eta};
  if (k.n() != bd.n())
    throw CliError{kExitPrecondition, "need exactly " + std::to_string(bd.n()) + " entries in --k"};
  for (const Int& v : k.ks)
    if (v.is_zero()) throw CliError{kExitPrecondition, "k entries must be nonzero"};
  Fibration f = build_total(bd, k);
  GraphDocument doc = document_from_fibration(f);
  // keep the input base's vertex positions in the embedded base document
  for (auto& v : doc.fibration->base->vertices) v.position = base_doc.position_of(v.id);
  if (!out.empty()) write_document_file(out, doc);
  if (json) {
    Json j;
    j["k"] = kvector_to_json(k);
    j["vertices"] = f.total.num_vertices();
    j["document"] = Json::parse(serialize(doc));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "built total graph with " << f.total.num_vertices() << " vertices over "
              << bd.n() << "-gon (" << k.str() << ")\n";
    if (out.empty()) std::cout << serialize(doc);
  }
  return 0;
}

int run_signed_structures(const std::string& path, bool json) {
  GraphDocument doc = read_document_file(path);
  GkmGraph g = doc.to_graph();
  if (g.is_signed()) g = forget_signs(g);
  auto structures = enumerate_signed_structures(g);
  std::vector<CaseTag> tags(structures.size(), CaseTag::Other);
  bool tagged = false;
  if (doc.has_fibration()) {
    auto cases = classify_cases(with_signs(doc.to_fibration()), structures);
    for (size_t i = 0; i < cases.size(); ++i) tags[i] = cases[i].tag;
    tagged = true;
  }
  // cross-references between structures related by a lattice automorphism
  std::vector<std::pair<int, int>> related;
  for (size_t i = 0; i < structures.size(); ++i)
    for (size_t j = i + 1; j < structures.size(); ++j)
      if (isomorphic(structures[i], structures[j], true)) related.push_back({int(i), int(j)});
  Json out;
  out["count"] = structures.size();
  out["structures"] = Json::array();
  for (size_t i = 0; i < structures.size(); ++i) {
    Json s;
    s["index"] = i;
    if (tagged) s["case"] = to_string(tags[i]);
    s["interior_vertices"] = interior_vertices(structures[i]).size();
    Json labels;
    for (int p = 0; p < structures[i].num_edge_pairs(); ++p)
      labels[structures[i].pair_name(p)] =
          Json::array({int64_t(structures[i].label(forward_edge(p))(0)),
                       int64_t(structures[i].label(forward_edge(p))(1))});
    s["labels"] = std::move(labels);
    out["structures"].push_back(std::move(s));
  }
  out["lattice_related"] = Json::array();
  for (auto [i, j] : related) out["lattice_related"].push_back(Json::array({i, j}));
  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << structures.size() << " signed structure(s)\n";
    for (size_t i = 0; i < structures.size(); ++i) {
      std::cout << "#" << i;
      if (tagged) std::cout << "  case " << to_string(tags[i]);
      std::cout << "  interior " << interior_vertices(structures[i]).size() << "  labels";
      for (int p = 0; p < structures[i].num_edge_pairs(); ++p)
        std::cout << " " << structures[i].pair_name(p) << "="
                  << weight_str(structures[i].label(forward_edge(p)));
      std::cout << "\n";
    }
    for (auto [i, j] : related)
      std::cout << "#" << i << " and #" << j << " differ by a lattice automorphism\n";
  }
  return 0;
}

Json case_report_to_json(const CaseReport& cr) {
  Json j;
  j["case"] = to_string(cr.tag);
  j["kaehler_excluded"] = cr.excluded;
  j["detail"] = cr.detail;
  if (cr.tag == CaseTag::CaseI) {
    j["failing_pairs"] = Json::array();
    for (const auto& p : cr.kaehler.fails_at)
      j["failing_pairs"].push_back(Json::array({p.v, p.pair_a, p.pair_b}));
  }
  if (cr.exterior_winding) j["exterior_winding"] = *cr.exterior_winding;
  return j;
}

int run_kaehler_check(const std::string& path, bool json) {
  GraphDocument doc = read_document_file(path);
  if (doc.has_fibration()) {
    NonKaehlerReport report = nonkaehler_report(with_signs(doc.to_fibration()));
    Json j;
    j["k"] = kvector_to_json(report.k);
    j["cases"] = Json::array();
    for (const auto& cr : report.cases) j["cases"].push_back(case_report_to_json(cr));
    j["no_invariant_kaehler"] = report.no_invariant_kaehler;
    if (json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "classification: " << report.k.str() << "\n";
      for (const auto& cr : report.cases)
        std::cout << "case " << to_string(cr.tag) << ": "
                  << (cr.excluded ? "excluded" : "not excluded") << " (" << cr.detail << ")\n";
      std::cout << (report.no_invariant_kaehler
                        ? "verdict: no invariant Kaehler structure possible"
                        : "verdict: inconclusive")
                << "\n";
    }
    return 0;
  }
  GkmGraph g = doc.to_graph();
  if (!g.is_signed())
    throw CliError{kExitPrecondition,
                   "kaehler-check needs a fibration document or a signed graph"};
  auto verdict = kaehler_obstruction(g);
  auto cone = hamiltonian_cone_obstruction(g);
  if (json) {
    Json j;
    j["extension_criterion"] = verdict.passes;
    j["failing_pairs"] = Json::array();
    for (const auto& p : verdict.fails_at)
      j["failing_pairs"].push_back(
          Json::array({g.vertex_name(p.v), g.pair_name(p.pair_a), g.pair_name(p.pair_b)}));
    j["cone_criterion"] = cone.passes;
    std::cout << j.dump(2) << "\n";
  } else {
    if (verdict.passes) {
      std::cout << "extension criterion: passes\n";
    } else {
      std::cout << "extension criterion: fails at " << verdict.fails_at.size()
                << " adjacent pair(s)\n";
      for (const auto& p : verdict.fails_at)
        std::cout << "  " << g.vertex_name(p.v) << ": " << g.pair_name(p.pair_a) << ", "
                  << g.pair_name(p.pair_b) << "\n";
    }
    std::cout << "cone criterion: " << (cone.passes ? "passes" : "fails (all vertices interior)")
              << "\n";
  }
  return 0;
}

int run_cohomology(const std::string& path, const std::string& aspec, bool json) {
  GraphDocument doc = read_document_file(path);
  Fibration f = with_signs(fibration_or_fail(doc));
  KVector k = classify(f);
  const BaseData& bd = f.base_data;
  std::vector<Int> a(bd.n(), Int(0));
  if (!aspec.empty()) {
    a = parse_int_list(aspec);
    if (int(a.size()) != bd.n())
      throw CliError{kExitPrecondition, "--a needs " + std::to_string(bd.n()) + " entries"};
  }
  auto cb = equivariant_chern_in_beta(bd, k, a);
  auto base_ring = ordinary_base_ring(bd);
  auto proj = projectivization_ring(base_ring, k);
  auto chern = chern_of_projectivization(base_ring, k);
  Json j;
  j["k"] = kvector_to_json(k);
  j["c1T_beta"] = Json::array();
  for (const Int& c : cb.c1) j["c1T_beta"].push_back(int64_t(c));
  j["c2T_beta"] = Json::array();
  for (int i = 0; i < bd.n(); ++i)
    for (int t = i; t < bd.n(); ++t)
      if (!cb.c2(i, t).is_zero())
        j["c2T_beta"].push_back(Json::array({i + 1, t + 1, int64_t(cb.c2(i, t))}));
  j["base_betti"] = base_ring.betti;
  j["base_ring"] = Json::object();
  {
    auto& br = j["base_ring"];
    br["generators"] = base_ring.generators;
    br["linear_relations"] = Json::array();
    for (const auto& rel : base_ring.linear_relations) {
      Json row = Json::array();
      for (const Int& v : rel) row.push_back(int64_t(v));
      br["linear_relations"].push_back(std::move(row));
    }
    br["pairing"] = Json::array();
    for (int i = 0; i < bd.n(); ++i) {
      Json row = Json::array();
      for (int t = 0; t < bd.n(); ++t) row.push_back(int64_t(base_ring.beta_pairing(i, t)));
      br["pairing"].push_back(std::move(row));
    }
  }
  j["projectivization"] = Json::object();
  auto& pj = j["projectivization"];
  pj["betti"] = proj.betti;
  pj["relation_x_coeffs"] = Json::array();
  for (const Int& c : proj.rel_x) pj["relation_x_coeffs"].push_back(int64_t(c));
  pj["relation_const"] = Json::array(
      {int64_t(proj.rel_const_coeff), proj.rel_const_i + 1, proj.rel_const_j + 1});
  pj["c1"] = Json::object();
  pj["c1"]["beta"] = Json::array();
  for (const Int& c : chern.c1_beta) pj["c1"]["beta"].push_back(int64_t(c));
  pj["c1"]["x"] = int64_t(chern.c1_x);
  pj["c2"] = Json::object();
  pj["c2"]["base_integral"] = int64_t(chern.c2_base);
  pj["c2"]["beta_x"] = Json::array();
  for (const Int& c : chern.c2_beta_x) pj["c2"]["beta_x"].push_back(int64_t(c));
  pj["euler_characteristic"] = int64_t(chern.euler);
  pj["generators"] = proj.generators;
  pj["trilinear"] = Json::array();
  for (size_t i = 0; i < proj.trilinear.size(); ++i) {
    Json plane = Json::array();
    for (int r = 0; r < proj.trilinear[i].rows(); ++r) {
      Json row = Json::array();
      for (int t = 0; t < proj.trilinear[i].cols(); ++t)
        row.push_back(int64_t(proj.trilinear[i](r, t)));
      plane.push_back(std::move(row));
    }
    pj["trilinear"].push_back(std::move(plane));
  }
  if (bd.n() == 3) {
    pj["delta_formula"] = int64_t(delta_cp2_fibration(k));
    pj["delta_cup_form"] = int64_t(discriminant_of_trilinear(proj.trilinear, 0, 1));
  }
  if (json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "classification: " << k.str() << "\n";
  std::cout << "c_1^T(E) = ";
  for (int i = 0; i < bd.n(); ++i) {
    if (i) std::cout << " + ";
    std::cout << cb.c1[i] << "*b" << i + 1;
  }
  std::cout << "\nc_2^T(E) =";
  bool any = false;
  for (int i = 0; i < bd.n(); ++i)
    for (int t = i; t < bd.n(); ++t)
      if (!cb.c2(i, t).is_zero()) {
        std::cout << (any ? " + " : " ") << cb.c2(i, t) << "*b" << i + 1 << "*b" << t + 1;
        any = true;
      }
  if (!any) std::cout << " 0";
  std::cout << "\nbase betti:";
  for (int b : base_ring.betti) std::cout << " " << b;
  std::cout << "\nprojectivization betti:";
  for (int b : proj.betti) std::cout << " " << b;
  std::cout << "\nrelation: x^2 + (";
  for (int i = 0; i < bd.n(); ++i) {
    if (i) std::cout << " + ";
    std::cout << proj.rel_x[i] << "*b" << i + 1;
  }
  std::cout << ")*x + " << proj.rel_const_coeff << "*b" << proj.rel_const_i + 1 << "*b"
            << proj.rel_const_j + 1 << " = 0\n";
  std::cout << "c_1(P(E)) = ";
  for (int i = 0; i < bd.n(); ++i) std::cout << chern.c1_beta[i] << "*b" << i + 1 << " + ";
  std::cout << chern.c1_x << "*x\n";
  std::cout << "c_2(P(E)): base part integrates to " << chern.c2_base << ", x part ";
  for (int i = 0; i < bd.n(); ++i) std::cout << chern.c2_beta_x[i] << "*b" << i + 1 << (i + 1 < bd.n() ? " + " : "");
  std::cout << " (times x)\n";
  std::cout << "Euler characteristic: " << chern.euler << "\n";
  if (bd.n() == 3) {
    std::cout << "delta (k formula): " << delta_cp2_fibration(k) << "\n";
    std::cout << "delta (cup form):  " << discriminant_of_trilinear(proj.trilinear, 0, 1)
              << "\n";
  }
  return 0;
}

int run_delta(const std::string& path, bool json) {
  GraphDocument doc = read_document_file(path);
  Fibration f = with_signs(fibration_or_fail(doc));
  KVector k = classify(f);
  Int d = delta_cp2_fibration(k);
  if (json) {
    Json j;
    j["delta"] = int64_t(d);
    j["k"] = kvector_to_json(k);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << d << "\n";
  }
  return 0;
}

int run_realize(const std::string& path, const std::string& aspec, bool delzant, bool json) {
  GraphDocument doc = read_document_file(path);
  Fibration f = with_signs(fibration_or_fail(doc));
  KVector k = classify(f);
  const BaseData& bd = f.base_data;
  std::vector<Int> a(bd.n(), Int(0));
  if (!aspec.empty()) {
    a = parse_int_list(aspec);
    if (int(a.size()) != bd.n())
      throw CliError{kExitPrecondition, "--a needs " + std::to_string(bd.n()) + " entries"};
  }
  auto chain = resolve_coefficients(k, a, bd);
  auto diagrams = group_diagrams(k, a, bd);
  auto gluing = verify_gluing(diagrams, k, bd);
  Json j;
  j["k"] = kvector_to_json(k);
  j["connected_stabilizers"] = connected_stabilizers(k);
  j["chain"] = Json::object();
  for (auto [name, vals] : {std::pair<const char*, const std::vector<Int>*>{"a", &chain.a},
                            {"b", &chain.b},
                            {"c", &chain.c}}) {
    Json arr = Json::array();
    for (const Int& v : *vals) arr.push_back(int64_t(v));
    j["chain"][name] = std::move(arr);
  }
  j["diagrams"] = Json::array();
  for (const auto& d : diagrams) {
    Json e;
    e["plus"] = Json::array({weight_str(d.plus_upper), weight_str(d.plus_lower)});
    e["minus"] = Json::array({weight_str(d.minus_upper), weight_str(d.minus_lower)});
    e["principal_kernel"] = weight_str(d.principal_kernel);
    j["diagrams"].push_back(std::move(e));
  }
  j["gluing"] = report_to_json(gluing);
  if (!json) {
    std::cout << "classification: " << k.str() << "\n";
    std::cout << "coefficients a:";
    for (const Int& v : chain.a) std::cout << " " << v;
    std::cout << "\n             b:";
    for (const Int& v : chain.b) std::cout << " " << v;
    std::cout << "\n             c:";
    for (const Int& v : chain.c) std::cout << " " << v;
    std::cout << "\n";
    for (size_t i = 0; i < diagrams.size(); ++i) {
      const auto& d = diagrams[i];
      std::cout << "K_" << i + 1 << "^+ characters " << weight_str(d.plus_upper) << ", "
                << weight_str(d.plus_lower) << "   K_" << i + 1 << "^- characters "
                << weight_str(d.minus_upper) << ", " << weight_str(d.minus_lower)
                << "   principal kernel " << weight_str(d.principal_kernel) << "\n";
    }
    std::cout << "gluing identities: " << (gluing.ok() ? "verified" : "FAILED") << "\n";
    std::cout << "connected stabilizers: " << (connected_stabilizers(k) ? "yes" : "no") << "\n";
  }
  if (delzant) {
    const GraphDocument& base_doc = *doc.fibration->base;
    std::vector<Weight> polygon;
    for (VertexId v : bd.vertex_order) {
      auto pos = base_doc.position_of(bd.base.vertex_name(v));
      if (!pos)
        throw CliError{kExitPrecondition,
                       "delzant lift needs vertex positions in the base document"};
      polygon.push_back(*pos);
    }
    auto lift = delzant_lift(polygon, k, bd);
    Json lj;
    lj["bottom"] = Json::array();
    for (const auto& v : lift.bottom)
      lj["bottom"].push_back(Json::array({int64_t(v(0)), int64_t(v(1)), int64_t(v(2))}));
    lj["top"] = Json::array();
    for (const auto& v : lift.top)
      lj["top"].push_back(Json::array({int64_t(v(0)), int64_t(v(1)), int64_t(v(2))}));
    lj["checks"] = report_to_json(lift.checks);
    j["delzant_lift"] = std::move(lj);
    if (!json) {
      std::cout << "delzant lift vertices:\n";
      for (size_t i = 0; i < lift.bottom.size(); ++i)
        std::cout << "  v" << i + 1 << " = (" << lift.bottom[i](0) << "," << lift.bottom[i](1)
                  << ",0)   w" << i + 1 << " = (" << lift.top[i](0) << "," << lift.top[i](1)
                  << ",1)\n";
      std::cout << "delzant checks: " << (lift.checks.ok() ? "all vertices pass" : "FAILED")
                << "\n";
      for (const auto& e : lift.checks.errors) std::cout << "  " << e << "\n";
    }
    if (!lift.checks.ok()) {
      if (json) std::cout << j.dump(2) << "\n";
      return kExitValidation;
    }
  }
  if (json) std::cout << j.dump(2) << "\n";
  return gluing.ok() ? 0 : kExitValidation;
}

int run_render(const std::string& path, const std::string& out, bool json) {
  GraphDocument doc = read_document_file(path);
  std::string svg = render_svg(doc);
  std::ofstream os(out);
  if (!os) throw Error("cannot write " + out);
  os << svg;
  if (json) {
    Json j;
    j["written"] = out;
    j["bytes"] = svg.size();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_enumerate(const std::string& base_path, long max_k, bool json) {
  GraphDocument base_doc = read_document_file(base_path);
  BaseData bd = base_doc.to_base_data();
  const int n = bd.n();
  if (max_k < 1) throw CliError{kExitPrecondition, "--max-k must be at least 1"};
  std::vector<KVector> reps;
  std::vector<Fibration> rep_fibs;
  std::vector<long> ks(n, 1);
  // canonical class representatives have k_1 > 0
  std::function<void(int)> sweep = [&](int pos) {
    if (pos == n) {
      for (int eta : {0, 1}) {
        KVector k;
        for (long v : ks) k.ks.push_back(Int(v));
        k.eta = eta;
        Fibration f = build_total(bd, k);
        bool dup = false;
        for (size_t i = 0; i < reps.size() && !dup; ++i)
          if (total_isomorphic(rep_fibs[i], f)) dup = true;
        if (!dup) {
          reps.push_back(k);
          rep_fibs.push_back(std::move(f));
        }
      }
      return;
    }
    long lo = pos == 0 ? 1 : -max_k;
    for (long v = lo; v <= max_k; ++v) {
      if (v == 0) continue;
      ks[pos] = v;
      sweep(pos + 1);
    }
  };
  sweep(0);
  Json rows = Json::array();
  for (size_t i = 0; i < reps.size(); ++i) {
    const KVector& k = reps[i];
    Json row;
    row["k"] = kvector_to_json(k);
    auto flags = interior_by_k(k);
    int interior = 0;
    for (bool fl : flags)
      if (fl) ++interior;
    row["interior"] = interior;
    if (n == 3) row["delta"] = int64_t(delta_cp2_fibration(k));
    row["connected_stabilizers"] = connected_stabilizers(k);
    std::string kaehler = "-";
    try {
      NonKaehlerReport rep = nonkaehler_report(rep_fibs[i]);
      kaehler = rep.no_invariant_kaehler ? "non-Kaehler" : "inconclusive";
    } catch (const PreconditionUnmetError&) {
    }
    row["kaehler"] = kaehler;
    rows.push_back(std::move(row));
  }
  if (json) {
    Json j;
    j["classes"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << reps.size() << " isomorphism class(es) with |k_i| <= " << max_k << "\n";
    for (const auto& row : rows) {
      std::cout << "k=[";
      bool first = true;
      for (const auto& v : row["k"]["k"]) {
        if (!first) std::cout << ",";
        std::cout << v.get<int64_t>();
        first = false;
      }
      std::cout << "] eta=" << row["k"]["eta"].get<int>();
      std::cout << "  interior=" << row["interior"].get<int>();
      if (row.contains("delta")) std::cout << "  delta=" << row["delta"].get<int64_t>();
      std::cout << "  stabilizers=" << (row["connected_stabilizers"].get<bool>() ? "connected" : "disconnected");
      std::cout << "  kaehler=" << row["kaehler"].get<std::string>() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculator for 3-valent torus graphs fibering over polygons"};
  app.require_subcommand(1);

  std::string path, out, kspec, aspec, base_path;
  int eta = 0;
  long max_k = 1;
  bool json = false, delzant = false;

  auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", json, "machine readable output"); };

  auto* validate_cmd = app.add_subcommand("validate", "check all graph invariants");
  validate_cmd->add_option("file", path)->required();
  add_json(validate_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "classification datum of a fibration");
  classify_cmd->add_option("file", path)->required();
  add_json(classify_cmd);

  auto* build_cmd = app.add_subcommand("build", "construct the total graph over a base");
  build_cmd->add_option("--base", base_path)->required();
  build_cmd->add_option("--k", kspec, "comma separated nonzero integers")->required();
  build_cmd->add_option("--eta", eta, "0 = product, 1 = twisted")->required();
  build_cmd->add_option("--out", out, "output document path");
  add_json(build_cmd);

  auto* signed_cmd = app.add_subcommand("signed-structures", "signed structure census");
  signed_cmd->add_option("file", path)->required();
  add_json(signed_cmd);

  auto* kaehler_cmd = app.add_subcommand("kaehler-check", "Kaehler obstruction report");
  kaehler_cmd->add_option("file", path)->required();
  add_json(kaehler_cmd);

  auto* cohomology_cmd = app.add_subcommand("cohomology", "Chern classes and ring presentation");
  cohomology_cmd->add_option("file", path)->required();
  cohomology_cmd->add_option("--a", aspec, "twist coefficients (default all zero)");
  add_json(cohomology_cmd);

  auto* delta_cmd = app.add_subcommand("delta", "cup-form discriminant over a 3-gon");
  delta_cmd->add_option("file", path)->required();
  add_json(delta_cmd);

  auto* realize_cmd = app.add_subcommand("realize", "group diagrams and gluing data");
  realize_cmd->add_option("file", path)->required();
  realize_cmd->add_option("--a", aspec, "free coefficient family (default all zero)");
  realize_cmd->add_flag("--delzant-lift", delzant, "lift the base polygon (product type)");
  add_json(realize_cmd);

  auto* render_cmd = app.add_subcommand("render", "draw the linear realization");
  render_cmd->add_option("file", path)->required();
  render_cmd->add_option("--out", out)->required();
  add_json(render_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "sweep classifications over a base");
  enumerate_cmd->add_option("--base", base_path)->required();
  enumerate_cmd->add_option("--max-k", max_k)->required();
  add_json(enumerate_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) return run_validate(path, json);
    if (app.got_subcommand(classify_cmd)) return run_classify(path, json);
    if (app.got_subcommand(build_cmd)) return run_build(base_path, kspec, eta, out, json);
    if (app.got_subcommand(signed_cmd)) return run_signed_structures(path, json);
    if (app.got_subcommand(kaehler_cmd)) return run_kaehler_check(path, json);
    if (app.got_subcommand(cohomology_cmd)) return run_cohomology(path, aspec, json);
    if (app.got_subcommand(delta_cmd)) return run_delta(path, json);
    if (app.got_subcommand(realize_cmd)) return run_realize(path, aspec, delzant, json);
    if (app.got_subcommand(render_cmd)) return run_render(path, out, json);
    if (app.got_subcommand(enumerate_cmd)) return run_enumerate(base_path, max_k, json);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.column << ": " << e.what()
              << "\n";
    return kExitParse;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSizeLimit;
  } catch (const WrongBaseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const NotProductTypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const NotDelzantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionUnmetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InconsistentFibrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
