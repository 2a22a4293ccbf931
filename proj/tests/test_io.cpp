#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gkm/cohomology.hpp"
#include "gkm/io.hpp"
#include "gkm/render.hpp"

using namespace gkm;
using namespace gkm::testing;

namespace {

std::string fixture(const std::string& name) { return std::string(GKM_FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST_CASE("fixtures parse and validate") {
  for (const char* name : {"cp2.json", "square.json", "pentagon.json", "hexagon.json",
                           "s4.json", "doublewrap.json"}) {
    auto doc = read_document_file(fixture(name));
    CHECK(validate(doc.to_graph()).ok());
    if (doc.base_data) CHECK(validate_base_data(doc.to_base_data()).ok());
  }
  for (const char* name : {"flag.json", "tolman.json", "nonpm.json"}) {
    auto doc = read_document_file(fixture(name));
    REQUIRE(doc.has_fibration());
    CHECK(validate_fibration(doc.to_fibration()).ok());
  }
}

TEST_CASE("fixture fibrations classify to the expected data") {
  auto expect = [&](const char* name, const std::string& str) {
    auto doc = read_document_file(fixture(name));
    CHECK(classify(doc.to_fibration()).str() == str);
  };
  expect("flag.json", "[1,-1,1] eta=1");
  expect("tolman.json", "[1,-1,-1] eta=1");
  expect("nonpm.json", "[3,-1,-1] eta=1");
}

TEST_CASE("round trips") {
  SUBCASE("serialize -> parse -> serialize is byte identical on fixtures") {
    for (const char* name : {"cp2.json", "flag.json", "tolman.json", "s4.json",
                             "doublewrap.json", "pentagon.json"}) {
      auto doc = read_document_file(fixture(name));
      std::string once = serialize(doc);
      std::string twice = serialize(parse_document(once));
      CHECK(once == twice);
    }
  }
  SUBCASE("documents built from graphs round trip") {
    auto doc = document_from_graph(tolman_total_unsigned());
    auto back = parse_document(serialize(doc));
    GkmGraph g = back.to_graph();
    GkmGraph orig = tolman_total_unsigned();
    REQUIRE(g.num_edges() == orig.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      CHECK(g.label(e) == orig.label(e));
      CHECK(g.src(e) == orig.src(e));
    }
  }
  SUBCASE("fibration documents reproduce the fibration") {
    BaseData bd = make_base_data(cp2_base());
    KVector k;
    k.ks = {Int(1), Int(-1), Int(-1)};
    k.eta = 1;
    Fibration f = build_total(bd, k);
    auto doc = parse_document(serialize(document_from_fibration(f)));
    Fibration g = doc.to_fibration();
    CHECK(validate_fibration(g).ok());
    CHECK(classify(g) == k);
    CHECK(fibration_equivalent(f, g));
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_document("{\n  \"format_version\": \"1\",\n  truncated");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column > 0);
  }
}

TEST_CASE("semantic errors") {
  auto doc_with = [](const std::string& weight, const std::string& dst) {
    return std::string(R"({
  "format_version": "1",
  "mode": "unsigned",
  "vertices": [{"id": "a"}, {"id": "b"}],
  "edge_pairs": [
    {"id": "e1", "src": "a", "dst": ")") +
           dst + R"(", "weight": )" + weight + R"(},
    {"id": "e2", "src": "b", "dst": "a", "weight": [0, 1]}
  ]
})";
  };
  CHECK_THROWS_AS(parse_document(doc_with("[0, 0]", "b")), SemanticError);
  CHECK_THROWS_AS(parse_document(doc_with("[1, 0]", "nowhere")), SemanticError);
  CHECK_NOTHROW(parse_document(doc_with("[1, 0]", "b")));
  SUBCASE("duplicate ids") {
    std::string dup = R"({
  "format_version": "1",
  "mode": "unsigned",
  "vertices": [{"id": "a"}, {"id": "a"}],
  "edge_pairs": []
})";
    CHECK_THROWS_AS(parse_document(dup), SemanticError);
  }
}

TEST_CASE("big integers survive the json round trip") {
  GkmGraph g(Mode::Unsigned, 2);
  Int big("123456789012345678901234567890");
  g.add_edge_pair(0, 1, Weight{big, Int(1)});
  g.add_edge_pair(1, 0, Weight{Int(1), Int(0)});
  auto doc = parse_document(serialize(document_from_graph(g)));
  CHECK(doc.to_graph().label(0)(0) == big);
}

TEST_CASE("render") {
  auto doc = read_document_file(fixture("tolman.json"));
  std::string svg = render_svg(doc);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("circle") != std::string::npos);
  CHECK(svg.find("(2,-1)") != std::string::npos);  // a fiber weight label
  SUBCASE("missing positions are refused") {
    auto plain = document_from_graph(tolman_total_unsigned());
    CHECK_THROWS_AS(render_svg(plain), PreconditionUnmetError);
  }
}
