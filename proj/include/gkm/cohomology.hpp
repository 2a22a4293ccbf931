#pragma once

#include <string>
#include <vector>

#include "gkm/fibration.hpp"
#include "gkm/poly.hpp"

namespace gkm {

/// Element of the direct sum of polynomial rings over the base fixed points,
/// indexed by the position in the base enumeration (entry i belongs to
/// v_{i+1}).
struct VertexClass {
  std::vector<Poly2> at;

  friend bool operator==(const VertexClass& a, const VertexClass& b) { return a.at == b.at; }
  friend bool operator!=(const VertexClass& a, const VertexClass& b) { return !(a == b); }
  VertexClass& operator+=(const VertexClass& o);
  friend VertexClass operator*(const VertexClass& a, const VertexClass& b);
};

/// The GKM condition: along every base edge the difference of the endpoint
/// polynomials is divisible by the edge's linear form.
bool gkm_member(const BaseData& bd, const VertexClass& c);

/// The degree-2 Thom classes beta_i = -gamma_{i-1} delta_i +
/// gamma_{i+1} delta_{i+1}, i = 1..n.
std::vector<VertexClass> beta_classes(const BaseData& bd);

/// Vertexwise total Chern class data of the rank-2 bundle with fiber weights
/// alpha_{i1} = a_i gamma_{i-1} - a_{i-1} gamma_i and
/// alpha_{i2} = (a_i - k_i) gamma_{i-1} + (k_{i-1} - a_{i-1}) gamma_i,
/// where a_0 = (-1)^{eps_1} a_n + eta k_0. Returns (degree-2, degree-4).
std::pair<VertexClass, VertexClass> equivariant_chern_raw(const BaseData& bd, const KVector& k,
                                                          const std::vector<Int>& a);

/// The same classes expanded in the beta generators: c_1 = sum (k_i-2a_i)
/// beta_i and c_2 = sum (2a_i a_{i-1} - a_{i-1}k_i - a_i k_{i-1})
/// beta_{i-1} beta_i + sum (a_i^2 - a_i k_i) beta_i^2 with
/// beta_0 = (-1)^{eps_1} beta_n.
struct ChernInBeta {
  std::vector<Int> c1;  // coefficient of beta_i
  MatX c2;              // symmetric: diagonal squares, upper off-diagonal products
};
ChernInBeta equivariant_chern_in_beta(const BaseData& bd, const KVector& k,
                                      const std::vector<Int>& a);

/// Vertexwise expansions of coefficient data in the beta classes.
VertexClass expand_linear_in_beta(const BaseData& bd, const std::vector<Int>& coeffs);
VertexClass expand_quadratic_in_beta(const BaseData& bd, const MatX& m);

/// Allocation-free per-vertex comparison of the two routes above; used by
/// the exhaustive identity sweeps. Equivalent to comparing
/// equivariant_chern_raw with the expanded beta expressions.
bool chern_classes_agree(const BaseData& bd, const KVector& k, const std::vector<Int>& a);

/// The arbitrary-precision route of the same comparison (chern_classes_agree
/// short-circuits through a guarded int64 evaluation for small inputs).
bool chern_classes_agree_exact(const BaseData& bd, const KVector& k, const std::vector<Int>& a);

/// Exact localization pairing: sum over fixed points of the class value
/// divided by the product of the two outgoing weights. Requires a
/// signed-compatible base; throws NonIntegralError when the sum is not a
/// constant integer.
Int localize_integral(const BaseData& bd, const VertexClass& c);

/// Cohomology ring presentation with the beta images as redundant degree-2
/// generators. For projectivizations the generator "x" is adjoined with the
/// single monic quadratic relation.
struct RingPresentation {
  int n = 0;
  std::vector<std::string> generators;
  bool has_x = false;
  std::vector<std::vector<Int>> linear_relations;  // vanishing combos of the beta gens
  std::vector<Int> rel_x;                          // x^2 + (sum rel_x[i] b_i) x + ...
  Int rel_const_coeff = 0;                         // ... + coeff * b_i b_j
  int rel_const_i = 0, rel_const_j = 0;
  std::vector<int> betti;  // by half degree
  bool torsion_free = true;
  MatX beta_pairing;   // integrals of b_i b_j over the 4-dim base
  MatX h2_coords;      // coords of each b_i in the free H^2 basis of the base
  MatX basis_pairing;  // pairing on that basis
  std::vector<MatX> trilinear;  // 6-dim only: cup form on (basis..., x)
};

/// Ordinary cohomology of the realized base from the equivariant picture:
/// quotient by the two constant classes via Smith normal form.
RingPresentation ordinary_base_ring(const BaseData& bd);

/// Presentation of the projectivization ring: the base presentation with x
/// adjoined and x^2 + (sum k_i b_i) x + eta k_n k_1 b_1 b_n = 0.
RingPresentation projectivization_ring(const RingPresentation& base, const KVector& k);

struct ProjChern {
  std::vector<Int> c1_beta;  // coefficient of b_i in c_1
  Int c1_x;                  // coefficient of x in c_1
  Int c2_base;               // integral of the pure base part of c_2
  std::vector<Int> c2_beta_x;  // coefficient of b_i x in c_2
  Int euler;                 // evaluates c_3
};

/// Chern classes of the projectivization in the presentation above (a = 0
/// convention, almost complex base).
ProjChern chern_of_projectivization(const RingPresentation& base, const KVector& k);

/// (n0 n3 - n1 n2)^2 - 4 (n0 n2 - n1^2)(n1 n3 - n2^2) where n0 = <e1^3>,
/// n1 = <e1 e2^2>, n2 = <e1^2 e2>, n3 = <e2^3>.
Int cubic_discriminant(const Int& n0, const Int& n1, const Int& n2, const Int& n3);

/// Discriminant of the trilinear cup form in a 2-generator basis.
Int discriminant_of_trilinear(const std::vector<MatX>& t, int e1, int e2);

/// (k1+k2+k3)^2 - 4 eta k1 k3, for fibrations over a 3-vertex base only.
Int delta_cp2_fibration(const KVector& k);

}  // namespace gkm
