#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gkm/graph.hpp"

using namespace gkm;
using namespace gkm::testing;

TEST_CASE("validate accepts the CP2 triangle") {
  auto rep = validate(cp2_base());
  CHECK(rep.ok());
}

TEST_CASE("validate rejects an incompatible labelling") {
  auto rep = validate(cp2_base_broken());
  CHECK_FALSE(rep.ok());
  bool mentions_connection = false;
  for (const auto& e : rep.errors)
    if (e.find("connection") != std::string::npos) mentions_connection = true;
  CHECK(mentions_connection);
}

TEST_CASE("validate accepts the S4 double edge") {
  auto rep = validate(s4_graph());
  CHECK(rep.ok());
  CHECK(is_effective(s4_graph()));
}

TEST_CASE("structural failures are reported") {
  SUBCASE("loop") {
    GkmGraph g(Mode::Unsigned, 2);
    g.add_edge_pair(0, 0, weight(1, 0));
    g.add_edge_pair(0, 1, weight(0, 1));
    CHECK_FALSE(validate_structure(g).ok());
  }
  SUBCASE("irregular valence") {
    GkmGraph g(Mode::Unsigned, 3);
    g.add_edge_pair(0, 1, weight(1, 0));
    g.add_edge_pair(1, 2, weight(0, 1));
    CHECK_FALSE(validate_structure(g).ok());
  }
  SUBCASE("dependent labels at a vertex") {
    GkmGraph g(Mode::Unsigned, 2);
    g.add_edge_pair(0, 1, weight(1, 0));
    g.add_edge_pair(1, 0, weight(2, 0));
    CHECK_FALSE(validate_structure(g).ok());
  }
  SUBCASE("disconnected") {
    GkmGraph g(Mode::Unsigned, 4);
    g.add_edge_pair(0, 1, weight(1, 0));
    g.add_edge_pair(1, 0, weight(0, 1));
    g.add_edge_pair(2, 3, weight(1, 0));
    g.add_edge_pair(3, 2, weight(0, 1));
    CHECK_FALSE(validate_structure(g).ok());
  }
}

TEST_CASE("find_connection") {
  SUBCASE("CP2 triangle: the unique 2-valent connection") {
    auto conn = find_connection(cp2_base());
    REQUIRE(conn.has_value());
    CHECK(validate_connection(cp2_base(), *conn).ok());
    CHECK(all_connections(cp2_base()).size() == 1);
  }
  SUBCASE("S4 graph") {
    CHECK(find_connection(s4_graph()).has_value());
  }
  SUBCASE("Tolman total graph") {
    auto g = tolman_total_unsigned();
    auto conn = find_connection(g);
    REQUIRE(conn.has_value());
    CHECK(validate_connection(g, *conn).ok());
  }
}

TEST_CASE("all_connections") {
  SUBCASE("contains find_connection's result and revalidates") {
    auto g = tolman_total_unsigned();
    auto all = all_connections(g);
    CHECK(all.size() >= 1);
    for (const auto& c : all) CHECK(validate_connection(g, c).ok());
    auto first = find_connection(g);
    REQUIRE(first.has_value());
    bool contained = false;
    for (const auto& c : all)
      if (c.maps == first->maps) contained = true;
    CHECK(contained);
  }

  SUBCASE("brute-force oracle agreement") {
    // Enumerate every system of star bijections with e -> bar(e) and keep
    // those passing the full recheck; must match all_connections exactly.
    for (const GkmGraph& g : {s4_graph(), flag_total_unsigned(), tolman_total_unsigned()}) {
      std::vector<std::vector<std::vector<EdgeId>>> raw(g.num_edge_pairs());
      for (int p = 0; p < g.num_edge_pairs(); ++p) {
        EdgeId e = forward_edge(p);
        const auto& from = g.star(g.src(e));
        const auto& to = g.star(g.dst(e));
        std::vector<int> perm(to.size());
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
        do {
          std::vector<EdgeId> image(from.size());
          bool ok = true;
          for (size_t i = 0; i < from.size(); ++i) {
            image[i] = to[perm[i]];
            if (from[i] == e && image[i] != bar(e)) ok = false;
          }
          if (ok) raw[p].push_back(image);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      // cartesian product, filter by full recheck
      std::vector<Connection> oracle;
      std::vector<size_t> pick(g.num_edge_pairs(), 0);
      auto inverse = [&](EdgeId e, const std::vector<EdgeId>& image) {
        const auto& from = g.star(g.src(e));
        const auto& to = g.star(g.dst(e));
        std::vector<EdgeId> inv(to.size(), -1);
        for (size_t i = 0; i < from.size(); ++i)
          for (size_t j = 0; j < to.size(); ++j)
            if (to[j] == image[i]) inv[j] = from[i];
        return inv;
      };
      while (true) {
        Connection conn;
        conn.maps.resize(g.num_edges());
        for (int p = 0; p < g.num_edge_pairs(); ++p) {
          conn.maps[forward_edge(p)] = raw[p][pick[p]];
          conn.maps[bar(forward_edge(p))] = inverse(forward_edge(p), raw[p][pick[p]]);
        }
        if (validate_connection(g, conn).ok()) oracle.push_back(conn);
        int p = g.num_edge_pairs() - 1;
        while (p >= 0 && pick[p] + 1 == raw[p].size()) pick[p--] = 0;
        if (p < 0) break;
        ++pick[p];
      }
      auto fast = all_connections(g);
      REQUIRE(fast.size() == oracle.size());
      for (const auto& c : fast) {
        bool found = false;
        for (const auto& o : oracle)
          if (o.maps == c.maps) found = true;
        CHECK(found);
      }
    }
  }

  SUBCASE("budget exhaustion raises SizeLimit") {
    SearchBudget tiny(3);
    CHECK_THROWS_AS(all_connections(tolman_total_unsigned(), &tiny), SizeLimitError);
  }
}

TEST_CASE("is_effective") {
  CHECK(is_effective(cp2_base()));
  CHECK_FALSE(is_effective(index_two_triangle()));
  CHECK(validate(index_two_triangle()).ok());  // valid but not effective
}

TEST_CASE("forget_signs") {
  auto u = forget_signs(cp2_base());
  CHECK(u.mode() == Mode::Unsigned);
  CHECK(u.label(0) == weight(1, 0));
  CHECK(u.label(2) == weight(0, 1));
  CHECK(u.label(4) == weight(1, -1));
  CHECK(validate(u).ok());
  SUBCASE("idempotent") {
    auto uu = forget_signs(u);
    for (EdgeId e = 0; e < u.num_edges(); ++e) CHECK(uu.label(e) == u.label(e));
  }
  SUBCASE("preserves connection existence") {
    CHECK(find_connection(u).has_value());
    CHECK(find_connection(forget_signs(tolman_total_unsigned())).has_value());
  }
}

TEST_CASE("isomorphic") {
  SUBCASE("reflexive with identity witness") {
    auto g = cp2_base();
    auto iso = isomorphic(g, g, false);
    REQUIRE(iso.has_value());
    CHECK(check_isomorphism(g, g, *iso));
  }

  SUBCASE("coordinate swap is found as lattice automorphism") {
    auto g = cp2_base();
    GkmGraph swapped(Mode::Signed, 3);
    auto sw = [](const Weight& w) { return Weight{w(1), w(0)}; };
    swapped.add_edge_pair(0, 1, sw(weight(1, 0)));
    swapped.add_edge_pair(1, 2, sw(weight(0, -1)));
    swapped.add_edge_pair(2, 0, sw(weight(-1, 1)));
    auto iso = isomorphic(g, swapped, true);
    REQUIRE(iso.has_value());
    CHECK(check_isomorphism(g, swapped, *iso));
  }

  SUBCASE("sheared image needs a nontrivial lattice automorphism") {
    auto g = cp2_base();
    GkmGraph sheared(Mode::Signed, 3);
    auto sh = [](const Weight& w) { return Weight{w(0) + w(1), w(1)}; };
    sheared.add_edge_pair(0, 1, sh(weight(1, 0)));
    sheared.add_edge_pair(1, 2, sh(weight(0, -1)));
    sheared.add_edge_pair(2, 0, sh(weight(-1, 1)));
    CHECK_FALSE(isomorphic(g, sheared, false).has_value());
    auto iso = isomorphic(g, sheared, true);
    REQUIRE(iso.has_value());
    CHECK(check_isomorphism(g, sheared, *iso));
  }

  SUBCASE("flag and Tolman totals are not isomorphic") {
    auto iso = isomorphic(flag_total_unsigned(), tolman_total_unsigned(), true);
    CHECK_FALSE(iso.has_value());
  }

  SUBCASE("budget exhaustion raises SizeLimit") {
    SearchBudget tiny(2);
    CHECK_THROWS_AS(isomorphic(flag_total_unsigned(), tolman_total_unsigned(), true, &tiny),
                    SizeLimitError);
  }
}
