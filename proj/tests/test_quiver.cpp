// Quiver parsing, path bases, projectives/simples, and the zeroth Hochschild
// dimension by commutator elimination.
#include <catch2/catch_amalgamated.hpp>

#include "arquiver/quiver.hpp"

using namespace arq;

static const char* kA2 = "vertices 2\narrow a 1 2\n";
static const char* kA3 = "vertices 3\narrow a 1 2\narrow b 2 3\n";
static const char* kD4 = "vertices 4\narrow a 1 2\narrow b 3 2\narrow c 4 2\n";

TEST_CASE("parse_quiver accepts the plain format with comments") {
  Quiver q = parse_quiver("# a comment\nvertices 2\n\narrow a 1 2  # trailing\n");
  CHECK(q.vertex_count() == 2);
  REQUIRE(q.arrows().size() == 1);
  CHECK(q.arrows()[0].name == "a");
  CHECK(q.arrows()[0].src == 0);
  CHECK(q.arrows()[0].tgt == 1);
}

TEST_CASE("parse_quiver error messages carry line numbers") {
  CHECK_THROWS_WITH(parse_quiver("arrow a 1 2\n"),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(parse_quiver("vertices 2\narrow a 1 5\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(parse_quiver("vertices 2\narrow a 1 2\narrow a 2 1\n"),
                    Catch::Matchers::ContainsSubstring("line 3"));
  CHECK_THROWS_AS(parse_quiver("vertices 0\n"), input_error);
  CHECK_THROWS_AS(parse_quiver("vertices 2\narrow a 1 2 junk\n"), input_error);
}

TEST_CASE("directed cycles are rejected and named") {
  CHECK_THROWS_WITH(parse_quiver("vertices 2\narrow x 1 2\narrow y 2 1\n"),
                    Catch::Matchers::ContainsSubstring("cycle") &&
                        Catch::Matchers::ContainsSubstring("x") &&
                        Catch::Matchers::ContainsSubstring("y"));
  CHECK_THROWS_AS(parse_quiver("vertices 1\narrow l 1 1\n"), input_error);
}

TEST_CASE("topological order puts sources first") {
  Quiver q = parse_quiver("vertices 3\narrow a 2 1\narrow b 3 2\n");
  std::vector<size_t> order = q.topological_order();
  REQUIRE(order.size() == 3);
  CHECK(order[0] == 2);
  CHECK(order[1] == 1);
  CHECK(order[2] == 0);
}

TEST_CASE("path bases are ordered by length then arrow names") {
  Quiver a3 = parse_quiver(kA3);
  PathBasis pb = path_basis(a3);
  REQUIRE(pb.paths.size() == 6);
  // Trivial paths first.
  for (size_t i = 0; i < 3; ++i) {
    CHECK(pb.paths[i].src == i);
    CHECK(pb.paths[i].arrows.empty());
  }
  CHECK(pb.paths[3].arrows.size() == 1);
  CHECK(pb.paths[4].arrows.size() == 1);
  REQUIRE(pb.paths[5].arrows.size() == 2);
  CHECK(pb.paths[5].src == 0);
  CHECK(pb.paths[5].tgt == 2);
  CHECK(path_label(a3, pb.paths[5]) == "b*a");
  CHECK(path_label(a3, pb.paths[0]) == "e1");
  // count[i][j] = number of paths i -> j.
  CHECK(pb.count[0][2] == 1);
  CHECK(pb.count[2][0] == 0);
  CHECK(pb.count[0][0] == 1);

  Quiver d4 = parse_quiver(kD4);
  CHECK(path_basis(d4).paths.size() == 7);

  Quiver kron = parse_quiver("vertices 2\narrow x 1 2\narrow y 1 2\n");
  CHECK(path_basis(kron).paths.size() == 4);
}

TEST_CASE("projective and simple dimension vectors") {
  Quiver a2 = parse_quiver(kA2);
  auto p = projective_dim_vectors(a2);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == DimVec{1, 1});
  CHECK(p[1] == DimVec{0, 1});
  auto s = simple_dim_vectors(a2);
  CHECK(s[0] == DimVec{1, 0});
  CHECK(s[1] == DimVec{0, 1});

  Quiver d4 = parse_quiver(kD4);
  auto pd = projective_dim_vectors(d4);
  CHECK(pd[0] == DimVec{1, 1, 0, 0});
  CHECK(pd[1] == DimVec{0, 1, 0, 0});
  CHECK(pd[2] == DimVec{0, 1, 1, 0});
  CHECK(pd[3] == DimVec{0, 1, 0, 1});
}

TEST_CASE("zeroth Hochschild dimension equals the vertex count for acyclic quivers") {
  CHECK(hh0(parse_quiver(kA2)).dimension == 2);
  CHECK(hh0(parse_quiver(kA3)).dimension == 3);
  CHECK(hh0(parse_quiver(kD4)).dimension == 4);
  Quiver kron = parse_quiver("vertices 2\narrow x 1 2\narrow y 1 2\n");
  HH0Result h = hh0(kron);
  CHECK(h.dimension == 2);
  REQUIRE(h.basis_labels.size() == 2);
  CHECK(h.basis_labels[0] == "e1");
  CHECK(h.basis_labels[1] == "e2");
}

TEST_CASE("single vertex quiver") {
  Quiver q = parse_quiver("vertices 1\n");
  CHECK(q.arrows().empty());
  CHECK(path_basis(q).paths.size() == 1);
  CHECK(hh0(q).dimension == 1);
}
