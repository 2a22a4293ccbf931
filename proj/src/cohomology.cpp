#include "gkm/cohomology.hpp"

#include <algorithm>
#include <set>

namespace gkm {

VertexClass& VertexClass::operator+=(const VertexClass& o) {
  if (at.size() < o.at.size()) at.resize(o.at.size());
  for (size_t i = 0; i < o.at.size(); ++i) at[i] += o.at[i];
  return *this;
}

VertexClass operator*(const VertexClass& a, const VertexClass& b) {
  VertexClass out;
  out.at.resize(std::max(a.at.size(), b.at.size()));
  for (size_t i = 0; i < out.at.size(); ++i) {
    if (i < a.at.size() && i < b.at.size()) out.at[i] = a.at[i] * b.at[i];
  }
  return out;
}

bool gkm_member(const BaseData& bd, const VertexClass& c) {
  const int n = bd.n();
  if (int(c.at.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    Poly2 diff = c.at[i] - c.at[(i + 1) % n];
    if (!diff.divided_by_linear(bd.gammas[i])) return false;
  }
  return true;
}

std::vector<VertexClass> beta_classes(const BaseData& bd) {
  const int n = bd.n();
  std::vector<VertexClass> betas(n);
  for (int i = 1; i <= n; ++i) {
    VertexClass b;
    b.at.assign(n, Poly2());
    b.at[i - 1] += Poly2::linear(Weight(-bd.gamma_ext(i - 1)));
    b.at[i % n] += Poly2::linear(bd.gamma_ext(i + 1));
    betas[i - 1] = std::move(b);
  }
  return betas;
}

namespace {

Int a_ext(const BaseData& bd, const KVector& k, const std::vector<Int>& a, long i) {
  const int n = bd.n();
  if (i >= 1 && i <= n) return a[i - 1];
  if (i == 0) {
    Int v = bd.eps[1] ? Int(-a[n - 1]) : a[n - 1];
    if (k.eta) v += k.k_ext(bd, 0);
    return v;
  }
  throw PreconditionUnmetError("a index out of range");
}

struct FiberWeights {
  Weight a1, a2;  // alpha_{i1}, alpha_{i2}
};

FiberWeights fiber_weights(const BaseData& bd, const KVector& k, const std::vector<Int>& a,
                           int i) {
  Weight gp = bd.gamma_ext(i - 1);
  Weight gi = bd.gamma_ext(i);
  Int ai = a_ext(bd, k, a, i);
  Int ap = a_ext(bd, k, a, i - 1);
  Int ki = k.k_ext(bd, i);
  Int kp = k.k_ext(bd, i - 1);
  FiberWeights w;
  w.a1 = Weight(ai * gp - ap * gi);
  w.a2 = Weight((ai - ki) * gp + (kp - ap) * gi);
  return w;
}

}  // namespace

std::pair<VertexClass, VertexClass> equivariant_chern_raw(const BaseData& bd, const KVector& k,
                                                          const std::vector<Int>& a) {
  const int n = bd.n();
  if (int(a.size()) != n) throw PreconditionUnmetError("a must have length n");
  VertexClass c1, c2;
  c1.at.assign(n, Poly2());
  c2.at.assign(n, Poly2());
  for (int i = 1; i <= n; ++i) {
    FiberWeights w = fiber_weights(bd, k, a, i);
    c1.at[i - 1] = Poly2::linear(Weight(w.a1 + w.a2));
    c2.at[i - 1] = Poly2::linear(w.a1) * Poly2::linear(w.a2);
  }
  return {c1, c2};
}

ChernInBeta equivariant_chern_in_beta(const BaseData& bd, const KVector& k,
                                      const std::vector<Int>& a) {
  const int n = bd.n();
  if (int(a.size()) != n) throw PreconditionUnmetError("a must have length n");
  ChernInBeta out;
  out.c1.resize(n);
  out.c2 = MatX::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    Int ai = a[i - 1];
    Int ap = a_ext(bd, k, a, i - 1);
    Int ki = k.ks[i - 1];
    Int kp = k.k_ext(bd, i - 1);
    out.c1[i - 1] = ki - 2 * ai;
    Int pair_coeff = 2 * ai * ap - ap * ki - ai * kp;
    if (i == 1) {
      // beta_0 = (-1)^{eps_1} beta_n
      if (bd.eps[1]) pair_coeff = -pair_coeff;
      int r = std::min(n - 1, 0), c = std::max(n - 1, 0);
      out.c2(r, c) += pair_coeff;
    } else {
      out.c2(i - 2, i - 1) += pair_coeff;
    }
    out.c2(i - 1, i - 1) += ai * ai - ai * ki;
  }
  return out;
}

VertexClass expand_linear_in_beta(const BaseData& bd, const std::vector<Int>& coeffs) {
  auto betas = beta_classes(bd);
  VertexClass out;
  out.at.assign(bd.n(), Poly2());
  for (int i = 0; i < bd.n(); ++i) {
    for (int j = 0; j < bd.n(); ++j) out.at[j] += coeffs[i] * betas[i].at[j];
  }
  return out;
}

VertexClass expand_quadratic_in_beta(const BaseData& bd, const MatX& m) {
  auto betas = beta_classes(bd);
  const int n = bd.n();
  VertexClass out;
  out.at.assign(n, Poly2());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (m(i, j).is_zero()) continue;
      VertexClass prod = betas[i] * betas[j];
      for (int v = 0; v < n; ++v) out.at[v] += m(i, j) * prod.at[v];
    }
  }
  return out;
}

namespace {

// quadratic form au1^2 + bu1u2 + cu2^2 as three coefficients
struct Quad {
  Int a, b, c;
  bool operator==(const Quad& o) const { return a == o.a && b == o.b && c == o.c; }
};

Quad lin_times_lin(const Weight& p, const Weight& q) {
  return {p(0) * q(0), p(0) * q(1) + p(1) * q(0), p(1) * q(1)};
}

void accumulate(Quad& acc, const Int& coeff, const Quad& q) {
  acc.a += coeff * q.a;
  acc.b += coeff * q.b;
  acc.c += coeff * q.c;
}

}  // namespace

namespace {

/// int64 evaluation of the same per-vertex comparison, valid whenever all
/// inputs are small (intermediates stay below 2^53 for inputs below 2^12).
bool chern_agree_small(const BaseData& bd, const KVector& k, const std::vector<Int>& a) {
  const int n = bd.n();
  const long lim = 1L << 12;
  auto small = [&](const Int& v) { return v >= -lim && v <= lim; };
  for (const Int& v : k.ks)
    if (!small(v)) return false;
  for (const Int& v : a)
    if (!small(v)) return false;
  for (const Weight& g : bd.gammas)
    if (!small(g(0)) || !small(g(1))) return false;

  std::vector<long> gx(n + 2), gy(n + 2), kk(n + 2), aa(n + 1);
  for (long i = 0; i <= n + 1; ++i) {
    Weight g = bd.gamma_ext(i);
    gx[i] = long(g(0));
    gy[i] = long(g(1));
    kk[i] = long(k.k_ext(bd, i));
  }
  for (int i = 1; i <= n; ++i) aa[i] = long(a[i - 1]);
  long a0 = (bd.eps[1] ? -aa[n] : aa[n]) + (k.eta ? kk[0] : 0);
  auto a_of = [&](int i) { return i == 0 ? a0 : aa[i]; };

  struct V2 { long x, y; };
  auto beta_val = [&](int t, int j) -> V2 {
    // value of beta_t at v_j; zero off the support
    if (j == t) return {-gx[t - 1], -gy[t - 1]};
    if (j == (t % n) + 1) return {gx[t + 1], gy[t + 1]};
    return {0, 0};
  };
  auto beta_val_folded = [&](int t, int j) -> V2 {
    if (t >= 1) return beta_val(t, j);
    V2 v = beta_val(n, j);
    if (bd.eps[1]) return {-v.x, -v.y};
    return v;
  };
  for (int j = 1; j <= n; ++j) {
    long a1x = aa[j] * gx[j - 1] - a_of(j - 1) * gx[j];
    long a1y = aa[j] * gy[j - 1] - a_of(j - 1) * gy[j];
    long a2x = (aa[j] - kk[j]) * gx[j - 1] + (kk[j - 1] - a_of(j - 1)) * gx[j];
    long a2y = (aa[j] - kk[j]) * gy[j - 1] + (kk[j - 1] - a_of(j - 1)) * gy[j];
    long b1x = 0, b1y = 0;
    for (int t = 1; t <= n; ++t) {
      V2 v = beta_val(t, j);
      long coeff = kk[t] - 2 * aa[t];
      b1x += coeff * v.x;
      b1y += coeff * v.y;
    }
    if (b1x != a1x + a2x || b1y != a1y + a2y) return false;
    long rq0 = a1x * a2x, rq1 = a1x * a2y + a1y * a2x, rq2 = a1y * a2y;
    long q0 = 0, q1 = 0, q2 = 0;
    for (int t = 1; t <= n; ++t) {
      V2 right = beta_val(t, j);
      if (right.x == 0 && right.y == 0) continue;
      V2 left = beta_val_folded(t - 1, j);
      if (left.x != 0 || left.y != 0) {
        long pc = 2 * aa[t] * a_of(t - 1) - a_of(t - 1) * kk[t] - aa[t] * kk[t - 1];
        q0 += pc * left.x * right.x;
        q1 += pc * (left.x * right.y + left.y * right.x);
        q2 += pc * left.y * right.y;
      }
      long dc = aa[t] * aa[t] - aa[t] * kk[t];
      q0 += dc * right.x * right.x;
      q1 += dc * 2 * right.x * right.y;
      q2 += dc * right.y * right.y;
    }
    if (q0 != rq0 || q1 != rq1 || q2 != rq2) return false;
  }
  return true;
}

bool chern_inputs_small(const BaseData& bd, const KVector& k, const std::vector<Int>& a) {
  const long lim = 1L << 12;
  auto small = [&](const Int& v) { return v >= -lim && v <= lim; };
  for (const Int& v : k.ks)
    if (!small(v)) return false;
  for (const Int& v : a)
    if (!small(v)) return false;
  for (const Weight& g : bd.gammas)
    if (!small(g(0)) || !small(g(1))) return false;
  return true;
}

}  // namespace

bool chern_classes_agree(const BaseData& bd, const KVector& k, const std::vector<Int>& a) {
  if (chern_inputs_small(bd, k, a)) return chern_agree_small(bd, k, a);
  return chern_classes_agree_exact(bd, k, a);
}

bool chern_classes_agree_exact(const BaseData& bd, const KVector& k, const std::vector<Int>& a) {
  const int n = bd.n();
  // value of beta_t at vertex position j (both 1-based); zero when v_j is
  // outside the support {v_t, v_{t+1}}
  auto beta_value = [&](int t, int j) -> Weight {
    if (j == t) return Weight(-bd.gamma_ext(t - 1));
    if (j == (t % n) + 1) return bd.gamma_ext(t + 1);
    return weight(0, 0);
  };
  auto beta_value_folded = [&](int t, int j) -> Weight {
    if (t >= 1) return beta_value(t, j);
    Weight v = beta_value(n, j);  // beta_0 = (-1)^{eps_1} beta_n
    return bd.eps[1] ? Weight(-v) : v;
  };
  auto pair_coeff = [&](int t) {  // coefficient on beta_{t-1} beta_t
    Int at = a[t - 1];
    Int ap = a_ext(bd, k, a, t - 1);
    return Int(2 * at * ap - ap * k.ks[t - 1] - at * k.k_ext(bd, t - 1));
  };
  auto diag_coeff = [&](int t) { return Int(a[t - 1] * a[t - 1] - a[t - 1] * k.ks[t - 1]); };
  for (int j = 1; j <= n; ++j) {
    FiberWeights w = fiber_weights(bd, k, a, j);
    // degree 2
    Weight raw1 = Weight(w.a1 + w.a2);
    Weight beta1 = weight(0, 0);
    for (int t = 1; t <= n; ++t) {
      Weight v = beta_value(t, j);
      if (!is_zero(v)) beta1 += (k.ks[t - 1] - 2 * a[t - 1]) * v;
    }
    if (raw1 != beta1) return false;
    // degree 4
    Quad raw2 = lin_times_lin(w.a1, w.a2);
    Quad acc{0, 0, 0};
    for (int t = 1; t <= n; ++t) {
      Weight right = beta_value(t, j);
      if (!is_zero(right)) {
        Weight left = beta_value_folded(t - 1, j);
        if (!is_zero(left)) accumulate(acc, pair_coeff(t), lin_times_lin(left, right));
        accumulate(acc, diag_coeff(t), lin_times_lin(right, right));
      }
    }
    if (!(raw2 == acc)) return false;
  }
  return true;
}

namespace {

std::vector<Weight> denominator_forms(const BaseData& bd, int i, int* sign) {
  // outgoing weights at v_i: -gamma_{i-1} and gamma_i
  Weight w1 = Weight(-bd.gamma_ext(i - 1));
  Weight w2 = bd.gamma_ext(i);
  int s = 1;
  Weight r1 = canonical_rep(w1);
  if (r1 != w1) s = -s;
  Weight r2 = canonical_rep(w2);
  if (r2 != w2) s = -s;
  *sign = s;
  return {r1, r2};
}

}  // namespace

Int localize_integral(const BaseData& bd, const VertexClass& c) {
  if (!bd.signed_compatible())
    throw PreconditionUnmetError("localization requires a signed-compatible base");
  const int n = bd.n();
  if (int(c.at.size()) != n) throw PreconditionUnmetError("class size mismatch");
  // distinct canonical forms across all fixed points
  std::set<Weight, WeightLess> forms;
  std::vector<std::vector<Weight>> vertex_forms(n);
  std::vector<int> vertex_sign(n);
  for (int i = 1; i <= n; ++i) {
    vertex_forms[i - 1] = denominator_forms(bd, i, &vertex_sign[i - 1]);
    forms.insert(vertex_forms[i - 1][0]);
    forms.insert(vertex_forms[i - 1][1]);
  }
  // common denominator D = prod forms; numerator N = sum s_v c_v D/(l1 l2)
  Poly2 denom = Poly2::constant(1);
  for (const Weight& f : forms) denom = denom * Poly2::linear(f);
  Poly2 numer;
  for (int i = 0; i < n; ++i) {
    Poly2 term = Poly2::constant(vertex_sign[i]) * c.at[i];
    for (const Weight& f : forms) {
      if (f == vertex_forms[i][0] || f == vertex_forms[i][1]) continue;
      term = term * Poly2::linear(f);
    }
    numer += term;
  }
  if (numer.is_zero()) return 0;
  // the sum is a constant exactly when N is proportional to D
  int d = denom.degree();
  if (numer.degree() != d) throw NonIntegralError("localization sum is not constant");
  Int nc, dc;
  bool found = false;
  for (int deg = 0; deg <= d && !found; ++deg)
    for (int j = 0; j <= deg && !found; ++j)
      if (!denom.coeff(deg - j, j).is_zero()) {
        nc = numer.coeff(deg - j, j);
        dc = denom.coeff(deg - j, j);
        found = true;
      }
  if (nc % dc != 0) throw NonIntegralError("localization value " + nc.str() + "/" + dc.str() +
                                           " is not an integer");
  Int value = nc / dc;
  if (!(Poly2::constant(value) * denom == numer))
    throw NonIntegralError("localization sum is not constant");
  return value;
}

namespace {

/// Exact inverse of a unimodular integer matrix via rational elimination.
MatX unimodular_inverse(const MatX& u) {
  const int n = int(u.rows());
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rat(u(i, j));
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error("matrix is singular");
    std::swap(m[col], m[pivot]);
    Rat pv = m[col][col];
    for (int j = 0; j < 2 * n; ++j) m[col][j] /= pv;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  MatX inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = m[i][n + j];
      if (boost::multiprecision::denominator(v) != 1)
        throw Error("matrix inverse is not integral");
      inv(i, j) = boost::multiprecision::numerator(v);
    }
  return inv;
}

/// Free rank and torsion of the quotient of the row span of `a` by the row
/// span of `b` (b must lie in the span of a over Q; integrality deviations
/// count as torsion).
struct QuotientInfo {
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
  bool contained = true;
};

QuotientInfo module_quotient(const MatX& a, const MatX& b) {
  QuotientInfo info;
  auto snf_a = smith_normal_form(a);
  int r = snf_a.rank;
  // lattice basis of rowspan(a): rows e_i = d_i * (row i of V^{-1}),
  // i < r. Express each row of b as integer combo of the basis.
  MatX vinv = unimodular_inverse(snf_a.v);
  MatX coords(b.rows(), r);
  for (int k = 0; k < b.rows(); ++k) {
    // y = b_k * V ; need y_i divisible by d_i for i < r, zero beyond
    MatX y = b.row(k) * snf_a.v;
    for (int i = 0; i < int(y.cols()); ++i) {
      if (i < r) {
        if (y(0, i) % snf_a.d(i, i) != 0) info.contained = false;
        coords(k, i) = y(0, i) / snf_a.d(i, i);
      } else if (!y(0, i).is_zero()) {
        info.contained = false;
      }
    }
  }
  (void)vinv;
  auto snf_c = smith_normal_form(coords);
  info.free_rank = r - snf_c.rank;
  for (int i = 0; i < snf_c.rank; ++i) {
    Int d = snf_c.d(i, i);
    if (d < 0) d = -d;
    if (d > 1) info.torsion.push_back(d);
  }
  return info;
}

MatX quad_matrix(const BaseData& bd, const std::vector<VertexClass>& classes) {
  const int n = bd.n();
  MatX m(int(classes.size()), 3 * n);
  for (size_t k = 0; k < classes.size(); ++k)
    for (int v = 0; v < n; ++v) {
      m(int(k), 3 * v + 0) = classes[k].at[v].coeff(2, 0);
      m(int(k), 3 * v + 1) = classes[k].at[v].coeff(1, 1);
      m(int(k), 3 * v + 2) = classes[k].at[v].coeff(0, 2);
    }
  return m;
}

}  // namespace

RingPresentation ordinary_base_ring(const BaseData& bd) {
  if (!bd.signed_compatible())
    throw PreconditionUnmetError("ordinary cohomology needs a signed-compatible base");
  const int n = bd.n();
  auto betas = beta_classes(bd);
  RingPresentation ring;
  ring.n = n;
  for (int i = 1; i <= n; ++i) ring.generators.push_back("b" + std::to_string(i));

  // expand the constant classes u1, u2 in the betas: at v_j only beta_j and
  // its predecessor are supported, so the pair of coefficients is forced
  // vertex by vertex and must be globally consistent
  for (int t = 0; t < 2; ++t) {
    Weight unit = t == 0 ? weight(1, 0) : weight(0, 1);
    std::vector<Int> coeff(n);
    std::vector<bool> known(n, false);
    for (int j = 1; j <= n; ++j) {
      int prev = j >= 2 ? j - 1 : n;
      Weight bj = Weight(-bd.gamma_ext(j - 1));
      Weight bp = j >= 2 ? bd.gamma_ext(j) : bd.gamma_ext(n + 1);
      auto sol = expand_in_basis(unit, bj, bp);
      if (!sol) throw Error("constant class is not an integer combination of the betas");
      auto set = [&](int idx, const Int& v) {
        if (known[idx - 1] && coeff[idx - 1] != v)
          throw Error("constant class expansion is inconsistent");
        coeff[idx - 1] = v;
        known[idx - 1] = true;
      };
      set(j, sol->first);
      set(prev, sol->second);
    }
    ring.linear_relations.push_back(coeff);
  }

  // H^2 = Z^n / span(u1, u2)
  MatX rel(2, n);
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < n; ++i) rel(t, i) = ring.linear_relations[t][i];
  auto snf = smith_normal_form(rel);
  int b2 = n - snf.rank;
  for (int i = 0; i < snf.rank; ++i) {
    Int d = snf.d(i, i);
    if (d != 1 && d != -1) ring.torsion_free = false;
  }
  // row span of R equals the span of d_i times the rows of V^{-1}; the free
  // quotient coordinates of x are the trailing entries of x*V, and basis
  // element t is represented by row rank+t of V^{-1}
  MatX vinv = unimodular_inverse(snf.v);
  ring.h2_coords = MatX::Zero(n, b2);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < b2; ++t) ring.h2_coords(i, t) = snf.v(i, snf.rank + t);
  MatX section = MatX::Zero(b2, n);
  for (int t = 0; t < b2; ++t)
    for (int i = 0; i < n; ++i) section(t, i) = vinv(snf.rank + t, i);

  // intersection pairing via localization
  ring.beta_pairing = MatX::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      VertexClass prod = betas[i] * betas[j];
      Int val = localize_integral(bd, prod);
      ring.beta_pairing(i, j) = val;
      ring.beta_pairing(j, i) = val;
    }
  ring.basis_pairing = section * ring.beta_pairing * section.transpose();

  // degree-4 rank: products of betas modulo (u1, u2) * degree-2
  {
    std::vector<VertexClass> products;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) products.push_back(betas[i] * betas[j]);
    std::vector<VertexClass> rels;
    for (int t = 0; t < 2; ++t) {
      VertexClass u = expand_linear_in_beta(bd, ring.linear_relations[t]);
      for (int i = 0; i < n; ++i) rels.push_back(u * betas[i]);
    }
    auto q = module_quotient(quad_matrix(bd, products), quad_matrix(bd, rels));
    ring.betti = {1, b2, q.free_rank};
    if (!q.torsion.empty() || !q.contained) ring.torsion_free = false;
  }
  return ring;
}

RingPresentation projectivization_ring(const RingPresentation& base, const KVector& k) {
  if (base.has_x) throw PreconditionUnmetError("base presentation already projectivized");
  if (k.n() != base.n) throw PreconditionUnmetError("k length does not match the base ring");
  RingPresentation ring = base;
  ring.has_x = true;
  ring.generators.push_back("x");
  ring.rel_x = k.ks;
  ring.rel_const_coeff = k.eta ? Int(k.ks[k.n() - 1] * k.ks[0]) : Int(0);
  ring.rel_const_i = 0;
  ring.rel_const_j = k.n() - 1;
  const int b2 = base.betti[1];
  ring.betti = {1, b2 + 1, b2 + 1, 1};
  // trilinear cup form on the basis (base H^2 basis ..., x), using
  // x^2 = -c1(E) x - c2(E)
  const int m = b2 + 1;
  std::vector<Int> c1_basis(b2, Int(0));  // coords of c1(E) = sum k_i b_i
  for (int t = 0; t < b2; ++t)
    for (int i = 0; i < base.n; ++i) c1_basis[t] += k.ks[i] * base.h2_coords(i, t);
  Int c2_val = ring.rel_const_coeff * base.beta_pairing(0, base.n - 1);
  auto pair_basis = [&](const std::vector<Int>& u, const std::vector<Int>& v) {
    Int s = 0;
    for (int i = 0; i < b2; ++i)
      for (int j = 0; j < b2; ++j) s += u[i] * base.basis_pairing(i, j) * v[j];
    return s;
  };
  auto unit = [&](int t) {
    std::vector<Int> u(b2, Int(0));
    u[t] = 1;
    return u;
  };
  ring.trilinear.assign(m, MatX::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        int xs = (i == b2) + (j == b2) + (l == b2);
        Int val;
        if (xs == 0) {
          val = 0;  // products of three base classes vanish on a 4-manifold
        } else if (xs == 1) {
          // exactly one x: integral over the base of the two base classes
          std::vector<int> others;
          for (int idx : {i, j, l})
            if (idx != b2) others.push_back(idx);
          val = base.basis_pairing(others[0], others[1]);
        } else if (xs == 2) {
          int p = (i != b2) ? i : (j != b2 ? j : l);
          // b_p x^2 = -b_p c1 x - b_p c2  ->  -<b_p, c1>
          val = -pair_basis(unit(p), c1_basis);
        } else {
          // x^3 = (c1^2 - c2) x - c1 c2
          val = pair_basis(c1_basis, c1_basis) - c2_val;
        }
        ring.trilinear[i](j, l) = val;
      }
  return ring;
}

ProjChern chern_of_projectivization(const RingPresentation& base, const KVector& k) {
  if (base.has_x) throw PreconditionUnmetError("expected the base presentation");
  const int n = base.n;
  ProjChern out;
  out.c1_beta.resize(n);
  for (int i = 0; i < n; ++i) out.c1_beta[i] = k.ks[i] + 1;
  out.c1_x = 2;
  Int sum = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < j) sum += base.beta_pairing(i, j);
      sum += k.ks[i] * base.beta_pairing(i, j);
    }
  out.c2_base = sum;
  out.c2_beta_x.assign(n, Int(2));
  out.euler = 2 * n;
  return out;
}

Int cubic_discriminant(const Int& n0, const Int& n1, const Int& n2, const Int& n3) {
  Int t1 = n0 * n3 - n1 * n2;
  Int t2 = n0 * n2 - n1 * n1;
  Int t3 = n1 * n3 - n2 * n2;
  return t1 * t1 - 4 * t2 * t3;
}

Int discriminant_of_trilinear(const std::vector<MatX>& t, int e1, int e2) {
  // the displayed value is the GL(2,Z) invariant of the cubic form exactly
  // when the middle arguments are <e1^2 e2> and <e1 e2^2>, in that order
  Int n0 = t[e1](e1, e1);
  Int t112 = t[e1](e1, e2);
  Int t122 = t[e1](e2, e2);
  Int n3 = t[e2](e2, e2);
  return cubic_discriminant(n0, t112, t122, n3);
}

Int delta_cp2_fibration(const KVector& k) {
  if (k.n() != 3) throw WrongBaseError("delta formula needs a 3-vertex base");
  Int s = k.ks[0] + k.ks[1] + k.ks[2];
  Int out = s * s;
  if (k.eta) out -= 4 * k.ks[0] * k.ks[2];
  return out;
}

}  // namespace gkm
