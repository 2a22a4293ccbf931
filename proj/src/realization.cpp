#include "gkm/realization.hpp"

namespace gkm {

CoefficientChain resolve_coefficients(const KVector& k, const std::vector<Int>& a,
                                      const BaseData& bd) {
  const int n = bd.n();
  if (int(a.size()) != n) throw PreconditionUnmetError("a must have length n");
  if (k.n() != n) throw PreconditionUnmetError("k length does not match the base");
  CoefficientChain chain;
  chain.a = a;
  chain.b.resize(n);
  chain.c.resize(n);
  for (int i = 2; i <= n; ++i) chain.b[i - 1] = a[i - 2];   // b_{i+1} = a_i
  for (int i = 1; i <= n - 1; ++i) chain.c[i - 1] = a[i];   // c_i = a_{i+1}
  const Int k0 = k.k_ext(bd, 0);
  if (k.eta == 0) {
    // a_1 = (-1)^{eps_0} c_n and b_1 = (-1)^{eps_1} a_n
    chain.c[n - 1] = bd.eps[0] ? Int(-a[0]) : a[0];
    chain.b[0] = bd.eps[1] ? Int(-a[n - 1]) : a[n - 1];
  } else {
    // c_n = (-1)^{eps_0}(a_1 - k_1) and a_n = (-1)^{eps_1}(b_1 - k_0)
    chain.c[n - 1] = bd.eps[0] ? Int(k.ks[0] - a[0]) : Int(a[0] - k.ks[0]);
    chain.b[0] = (bd.eps[1] ? Int(-a[n - 1]) : a[n - 1]) + k0;
  }
  return chain;
}

std::vector<GroupDiagram> group_diagrams(const KVector& k, const std::vector<Int>& a,
                                         const BaseData& bd) {
  const int n = bd.n();
  CoefficientChain chain = resolve_coefficients(k, a, bd);
  std::vector<GroupDiagram> out(n);
  for (int i = 1; i <= n; ++i) {
    GroupDiagram& d = out[i - 1];
    Weight gp = bd.gamma_ext(i - 1);
    Weight gi = bd.gamma_ext(i);
    Weight gnx = bd.gamma_ext(i + 1);
    const Int& ai = chain.a[i - 1];
    const Int& bi = chain.b[i - 1];
    const Int& ci = chain.c[i - 1];
    Int ki = k.k_ext(bd, i);
    Int kp = k.k_ext(bd, i - 1);
    Int knx = k.k_ext(bd, i + 1);
    d.plus_upper = Weight(ai * gp - bi * gi);
    d.plus_lower = Weight((ai - ki) * gp + (kp - bi) * gi);
    d.minus_upper = Weight(ci * gi - ai * gnx);
    d.minus_lower = Weight((ci - knx) * gi + (ki - ai) * gnx);
    d.principal_kernel = gi;
  }
  return out;
}

ValidationReport verify_gluing(const std::vector<GroupDiagram>& diagrams, const KVector& k,
                               const BaseData& bd) {
  ValidationReport rep;
  const int n = int(diagrams.size());
  for (int i = 0; i + 1 < n; ++i) {
    if (diagrams[i].minus_upper != diagrams[i + 1].plus_upper ||
        diagrams[i].minus_lower != diagrams[i + 1].plus_lower)
      rep.fail("interior gluing fails between diagrams " + std::to_string(i + 1) + " and " +
               std::to_string(i + 2));
  }
  const GroupDiagram& last = diagrams[n - 1];
  const GroupDiagram& first = diagrams[0];
  if (k.eta == 0) {
    if (last.minus_upper != first.plus_upper || last.minus_lower != first.plus_lower)
      rep.fail("product-type closing gluing fails");
  } else {
    if (last.minus_upper != first.plus_lower || last.minus_lower != first.plus_upper)
      rep.fail("twisted closing gluing fails (diagonal swap)");
  }
  for (int i = 1; i <= n; ++i) {
    // the difference of the diagonal characters is the fiber weight alpha_i
    Weight alpha = Weight(k.k_ext(bd, i) * bd.gamma_ext(i - 1) -
                          k.k_ext(bd, i - 1) * bd.gamma_ext(i));
    if (Weight(diagrams[i - 1].plus_upper - diagrams[i - 1].plus_lower) != alpha)
      rep.fail("diagram " + std::to_string(i) + " does not reproduce the fiber weight");
  }
  return rep;
}

GkmGraph hirzebruch_square(const KVector& k, const BaseData& bd, int i) {
  const int n = bd.n();
  if (i < 1 || i > n) throw PreconditionUnmetError("edge index out of range");
  Weight alpha_i = Weight(k.k_ext(bd, i) * bd.gamma_ext(i - 1) - k.k_ext(bd, i - 1) * bd.gamma_ext(i));
  Weight alpha_next = Weight(k.k_ext(bd, i + 1) * bd.gamma_ext(i) - k.k_ext(bd, i) * bd.gamma_ext(i + 1));
  GkmGraph g(Mode::Unsigned, 4);
  g.set_vertex_name(0, "p" + std::to_string(i));
  g.set_vertex_name(1, "q" + std::to_string(i));
  g.set_vertex_name(2, "p" + std::to_string(i + 1));
  g.set_vertex_name(3, "q" + std::to_string(i + 1));
  g.add_edge_pair(0, 1, alpha_i);
  g.set_pair_name(0, "g" + std::to_string(i));
  g.add_edge_pair(2, 3, alpha_next);
  g.set_pair_name(1, "g" + std::to_string(i + 1));
  g.add_edge_pair(0, 2, bd.gammas[i - 1]);
  g.set_pair_name(2, "f" + std::to_string(i));
  g.add_edge_pair(1, 3, bd.gammas[i - 1]);
  g.set_pair_name(3, "h" + std::to_string(i));
  return g;
}

bool connected_stabilizers(const KVector& k) {
  for (const Int& v : k.ks)
    if (v != 1 && v != -1) return false;
  return true;
}

DelzantLift delzant_lift(const std::vector<Weight>& polygon, const KVector& k,
                         const BaseData& bd) {
  const int n = bd.n();
  if (k.eta != 0) throw NotProductTypeError("delzant lift needs a product-type fibration");
  if (int(polygon.size()) != n) throw NotDelzantError("polygon size does not match the base");
  if (!bd.signed_compatible())
    throw NotDelzantError("base data admits no signed structure");
  // edges must run along the pinned gammas with positive multiplicity and
  // adjacent directions must form lattice bases
  for (int i = 0; i < n; ++i) {
    Weight d = Weight(polygon[(i + 1) % n] - polygon[i]);
    if (is_zero(d)) throw NotDelzantError("degenerate polygon edge");
    Weight p = primitive(d);
    if (p != primitive(bd.gammas[i]))
      throw NotDelzantError("edge " + std::to_string(i + 1) +
                            " does not run along gamma_" + std::to_string(i + 1));
    Weight prev = Weight(polygon[i] - polygon[(i + n - 1) % n]);
    if (!is_basis(primitive(prev), p))
      throw NotDelzantError("adjacent edge directions at vertex " + std::to_string(i + 1) +
                            " are not a lattice basis");
  }
  DelzantLift lift;
  for (int i = 1; i <= n; ++i) {
    const Weight& v = polygon[i - 1];
    Weight alpha = Weight(k.k_ext(bd, i) * bd.gamma_ext(i - 1) -
                          k.k_ext(bd, i - 1) * bd.gamma_ext(i));
    lift.bottom.push_back(Vec3{v(0), v(1), Int(0)});
    lift.top.push_back(Vec3{v(0) + alpha(0), v(1) + alpha(1), Int(1)});
  }
  auto prim3 = [](const Vec3& v) {
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(v(0)), abs(v(1))), abs(v(2)));
    if (g.is_zero()) return v;
    return Vec3{v(0) / g, v(1) / g, v(2) / g};
  };
  auto check_vertex = [&](const std::string& name, const Vec3& at, const Vec3& e1,
                          const Vec3& e2, const Vec3& e3) {
    Int d = det3(prim3(Vec3(e1 - at)), prim3(Vec3(e2 - at)), prim3(Vec3(e3 - at)));
    if (d == 1 || d == -1) {
      lift.checks.note("vertex " + name + ": edge directions form a basis of Z^3");
    } else {
      lift.checks.fail("vertex " + name + ": determinant " + d.str() + " is not ±1");
    }
  };
  for (int i = 0; i < n; ++i) {
    int prev = (i + n - 1) % n, next = (i + 1) % n;
    check_vertex("v" + std::to_string(i + 1), lift.bottom[i], lift.bottom[prev],
                 lift.bottom[next], lift.top[i]);
    check_vertex("w" + std::to_string(i + 1), lift.top[i], lift.top[prev], lift.top[next],
                 lift.bottom[i]);
  }
  // the top face edges stay parallel to the gammas
  for (int i = 0; i < n; ++i) {
    Vec3 d = Vec3(lift.top[(i + 1) % n] - lift.top[i]);
    Weight dir{d(0), d(1)};
    if (!d(2).is_zero() || is_zero(dir) ||
        canonical_rep(primitive(dir)) != canonical_rep(primitive(bd.gammas[i]))) {
      lift.checks.fail("top edge " + std::to_string(i + 1) + " is not a multiple of gamma_" +
                       std::to_string(i + 1));
    } else if (primitive(dir) != primitive(bd.gammas[i])) {
      lift.checks.note("top edge " + std::to_string(i + 1) +
                       " runs against gamma_" + std::to_string(i + 1) +
                       " (top face is not convex)");
    }
  }
  return lift;
}

}  // namespace gkm
