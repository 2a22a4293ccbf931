#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "fixtures.hpp"
#include "gkm/realization.hpp"

using namespace gkm;
using namespace gkm::testing;

namespace {

KVector kvec(std::vector<long> ks, int eta) {
  KVector k;
  for (long v : ks) k.ks.push_back(Int(v));
  k.eta = eta;
  return k;
}

std::vector<Int> ints(std::vector<long> vs) {
  std::vector<Int> out;
  for (long v : vs) out.push_back(Int(v));
  return out;
}

}  // namespace

TEST_CASE("resolve_coefficients") {
  BaseData bd = make_base_data(cp2_base());
  SUBCASE("product type with a = 0 is the zero chain") {
    auto chain = resolve_coefficients(kvec({1, 1, 1}, 0), ints({0, 0, 0}), bd);
    for (int i = 0; i < 3; ++i) {
      CHECK(chain.a[i].is_zero());
      CHECK(chain.b[i].is_zero());
      CHECK(chain.c[i].is_zero());
    }
  }
  SUBCASE("twisted closing relations for the Tolman data") {
    KVector k = kvec({1, -1, -1}, 1);
    auto chain = resolve_coefficients(k, ints({0, 0, 0}), bd);
    // c_3 = (-1)^{eps_0}(a_1 - k_1) = -1, b_1 = (-1)^{eps_1} a_3 + k_0 = 1
    CHECK(chain.c[2] == Int(-1));
    CHECK(chain.b[0] == Int(1));
    CHECK(chain.b[1] == chain.a[0]);
    CHECK(chain.b[2] == chain.a[1]);
    CHECK(chain.c[0] == chain.a[1]);
    CHECK(chain.c[1] == chain.a[2]);
  }
  SUBCASE("round trip: the a family reads back") {
    auto a = ints({3, -2, 5});
    auto chain = resolve_coefficients(kvec({2, 1, -1}, 1), a, bd);
    CHECK(chain.a == a);
  }
}

TEST_CASE("group_diagrams") {
  BaseData bd = make_base_data(cp2_base());
  SUBCASE("every gluing identity holds across a k/a grid, all bases") {
    for (const GkmGraph& base : {cp2_base(), square_base()}) {
      BaseData b = make_base_data(base);
      const int n = b.n();
      std::vector<Int> ks(n, Int(1)), as(n, Int(0));
      std::function<void(int)> sweep = [&](int pos) {
        if (pos == 2 * n) {
          for (int eta : {0, 1}) {
            KVector k{ks, eta};
            auto diagrams = group_diagrams(k, as, b);
            CHECK(verify_gluing(diagrams, k, b).ok());
          }
          return;
        }
        for (long v : {-2, 1, 3}) {
          if (pos < n)
            ks[pos] = v;
          else
            as[pos - n] = v;
          sweep(pos + 1);
        }
      };
      sweep(0);
    }
    // the double edge exercises both eps signs
    BaseData b2 = make_base_data(s4_graph());
    for (long k1 : {-2, 1})
      for (long k2 : {1, 3})
        for (long a1 : {-1, 0, 2})
          for (long a2 : {0, 1})
            for (int eta : {0, 1}) {
              KVector k = kvec({k1, k2}, eta);
              auto diagrams = group_diagrams(k, ints({a1, a2}), b2);
              CHECK(verify_gluing(diagrams, k, b2).ok());
            }
  }
  SUBCASE("hand-edited chain surfaces a verification failure") {
    KVector k = kvec({1, -1, -1}, 1);
    auto diagrams = group_diagrams(k, ints({0, 0, 0}), bd);
    diagrams[1].plus_upper = weight(7, 7);
    CHECK_FALSE(verify_gluing(diagrams, k, bd).ok());
  }
  SUBCASE("flag diagram matches the fiber representation matrix at a = 0") {
    KVector k = kvec({1, -1, 1}, 1);
    auto diagrams = group_diagrams(k, ints({0, 0, 0}), bd);
    // A_1^+ = diag(-a_0 gamma_1, -gamma_0 + (k_0 - a_0) gamma_1), k_0 = -1,
    // a_0 = eta k_0 = -1
    CHECK(diagrams[0].plus_upper == bd.gammas[0]);
    CHECK(diagrams[0].plus_lower == Weight(-bd.gammas[2]));
    // difference of the diagonal characters is alpha_1 = gamma_3 + gamma_1
    CHECK(Weight(diagrams[0].plus_upper - diagrams[0].plus_lower) ==
          Weight(bd.gammas[2] + bd.gammas[0]));
  }
}

TEST_CASE("hirzebruch_square") {
  BaseData bd = make_base_data(cp2_base());
  SUBCASE("flag data, i=1: verticals alpha_1 and alpha_2") {
    auto g = hirzebruch_square(kvec({1, -1, 1}, 1), bd, 1);
    CHECK(validate(g).ok());
    CHECK(g.label(forward_edge(0)) == canonical_rep(Weight(bd.gammas[2] + bd.gammas[0])));
    CHECK(g.label(forward_edge(1)) == canonical_rep(Weight(-bd.gammas[0] - bd.gammas[1])));
    CHECK(g.label(forward_edge(2)) == canonical_rep(bd.gammas[0]));
  }
  SUBCASE("stitching the squares reproduces the total graph") {
    for (auto ks : {std::vector<long>{1, -1, 1}, {1, -1, -1}, {2, 1, -3}}) {
      for (int eta : {0, 1}) {
        KVector k = kvec(ks, eta);
        Fibration f = build_total(bd, k);
        for (int i = 1; i <= 3; ++i) {
          auto square = hirzebruch_square(k, bd, i);
          CHECK(validate(square).ok());
          // vertical labels match the fiber pairs g_i, g_{i+1} of the total
          int gi = i - 1, gnext = i % 3;
          CHECK(square.label(forward_edge(0)) == f.total.label(forward_edge(gi)));
          CHECK(square.label(forward_edge(1)) == f.total.label(forward_edge(gnext)));
          // horizontals match the basic pairs over e_i
          CHECK(square.label(forward_edge(2)) == f.total.label(forward_edge(3 + gi)));
          CHECK(square.label(forward_edge(3)) == f.total.label(forward_edge(6 + gi)));
        }
      }
    }
  }
}

TEST_CASE("connected_stabilizers") {
  CHECK(connected_stabilizers(kvec({1, -1, -1}, 1)));
  CHECK_FALSE(connected_stabilizers(kvec({1, -2, -1}, 1)));
  CHECK_FALSE(connected_stabilizers(kvec({3, -1, -1}, 1)));
  SUBCASE("agrees with |k_i| = 1 across a grid") {
    std::function<void(std::vector<long>&, int)> sweep = [&](std::vector<long>& ks, int pos) {
      if (pos == 4) {
        bool expect = true;
        for (long v : ks)
          if (v != 1 && v != -1) expect = false;
        CHECK(connected_stabilizers(kvec(ks, 0)) == expect);
        return;
      }
      for (long v : {-3, -1, 1, 2}) {
        ks[pos] = v;
        sweep(ks, pos + 1);
      }
    };
    std::vector<long> ks(4, 1);
    sweep(ks, 0);
  }
}

TEST_CASE("delzant_lift") {
  SUBCASE("unit square with all-ones k") {
    BaseData bd = make_base_data(square_base());
    std::vector<Weight> square = {weight(0, 0), weight(1, 0), weight(1, 1), weight(0, 1)};
    auto lift = delzant_lift(square, kvec({1, 1, 1, 1}, 0), bd);
    CHECK(lift.checks.ok());
    CHECK(lift.bottom.size() == 4);
    CHECK(lift.top.size() == 4);
    for (const auto& w : lift.top) CHECK(w(2) == Int(1));
  }
  SUBCASE("projective plane triangle with all-ones k") {
    BaseData bd = make_base_data(cp2_base());
    std::vector<Weight> tri = {weight(0, 0), weight(1, 0), weight(1, -1)};
    auto lift = delzant_lift(tri, kvec({1, 1, 1}, 0), bd);
    CHECK(lift.checks.ok());
  }
  SUBCASE("twisted type is refused") {
    BaseData bd = make_base_data(cp2_base());
    std::vector<Weight> tri = {weight(0, 0), weight(1, 0), weight(1, -1)};
    CHECK_THROWS_AS(delzant_lift(tri, kvec({1, 1, 1}, 1), bd), NotProductTypeError);
  }
  SUBCASE("non-Delzant polygons are refused") {
    BaseData bd = make_base_data(cp2_base());
    // doubled triangle: edges run along the gammas but the corners fail
    GkmGraph fat(Mode::Signed, 3);
    fat.add_edge_pair(0, 1, weight(2, 0));
    fat.add_edge_pair(1, 2, weight(0, 1));
    fat.add_edge_pair(2, 0, weight(-2, -1));
    BaseData bad = make_base_data(fat);
    std::vector<Weight> poly = {weight(0, 0), weight(2, 0), weight(2, 1)};
    CHECK_THROWS_AS(delzant_lift(poly, kvec({1, 1, 1}, 0), bad), NotDelzantError);
    // polygon edge off the gamma direction
    std::vector<Weight> skew = {weight(0, 0), weight(0, 1), weight(1, 1)};
    CHECK_THROWS_AS(delzant_lift(skew, kvec({1, 1, 1}, 0), bd), NotDelzantError);
  }
}
