#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "arquiver/duality.hpp"

using namespace arq;

namespace {

const AlgebraLabel LA{"A", false};
const AlgebraLabel LB{"B", false};
const AlgebraLabel LC{"C", false};

// Random well-typed expression with prescribed boundary.
ExprPtr random_expr(std::mt19937_64& rng, size_t size, AlgebraLabel left,
                    AlgebraLabel right) {
  auto coin = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (size <= 1) {
    if (left == right && coin(4) == 0) return make_unit(left);
    int which = coin(4);
    std::string name = which == 3 ? "T" : std::string(1, char('X' + which));
    return make_atom(name, left, right, which == 3);
  }
  switch (coin(8)) {
    case 0: case 1: {
      std::vector<AlgebraLabel> pool{LA, LB, LC};
      AlgebraLabel mid = pool[static_cast<size_t>(coin(3))];
      size_t ls = 1 + static_cast<size_t>(coin(static_cast<int>(size) - 1));
      return make_node(DualityExpr::Kind::tensor,
                       random_expr(rng, ls, left, mid),
                       random_expr(rng, size - ls, mid, right));
    }
    case 2:
      return make_node(DualityExpr::Kind::left_dual,
                       random_expr(rng, size - 1, right, left));
    case 3:
      return make_node(DualityExpr::Kind::right_dual,
                       random_expr(rng, size - 1, right, left));
    case 4:
      return make_node(DualityExpr::Kind::bidual,
                       random_expr(rng, size - 1, right, left));
    case 5:
      return make_node(DualityExpr::Kind::k_dual,
                       random_expr(rng, size - 1, right, left));
    case 6:
      return make_node(DualityExpr::Kind::opposite,
                       random_expr(rng, size - 1, opposite_label(right),
                                   opposite_label(left)));
    default:
      return make_node(DualityExpr::Kind::shift,
                       random_expr(rng, size - 1, left, right), nullptr,
                       coin(5) - 2);
  }
}

}  // namespace

TEST_CASE("parsing and boundaries") {
  ExprPtr t = parse_duality("X{A,B} * Y{B,C}");
  REQUIRE(t->kind == DualityExpr::Kind::tensor);
  auto b = boundary_of(t);
  CHECK(b.first == LA);
  CHECK(b.second == LC);

  CHECK(boundary_of(parse_duality("bd(X{A,B} * Y{B,C})")) ==
        std::pair(LC, LA));
  CHECK(boundary_of(parse_duality("ld(X{A,B})")) == std::pair(LB, LA));
  CHECK(boundary_of(parse_duality("rd(X{A,B})")) == std::pair(LB, LA));
  CHECK(boundary_of(parse_duality("D(X{A,B})")) == std::pair(LB, LA));
  CHECK(boundary_of(parse_duality("op(X{A,B})")) ==
        std::pair(AlgebraLabel{"B", true}, AlgebraLabel{"A", true}));
  CHECK(boundary_of(parse_duality("1{A}")) == std::pair(LA, LA));
  CHECK(boundary_of(parse_duality("sh(X{A,B}, -3)")) == std::pair(LA, LB));

  ExprPtr inv = parse_duality("T!{A,B}");
  REQUIRE(inv->kind == DualityExpr::Kind::atom);
  CHECK(inv->invertible);

  ExprPtr opl = parse_duality("1{A^op}");
  CHECK(boundary_of(opl) == std::pair(AlgebraLabel{"A", true},
                                      AlgebraLabel{"A", true}));
}

TEST_CASE("type errors name the mismatched boundary") {
  CHECK_THROWS_WITH(boundary_of(parse_duality("X{A,B} * Y{C,D}")),
                    Catch::Matchers::ContainsSubstring("'B'") &&
                        Catch::Matchers::ContainsSubstring("'C'"));
  CHECK_THROWS_AS(normalize_text("X{A,B} * Y{C,D}"), input_error);
}

TEST_CASE("parse errors carry a position") {
  for (const std::string bad :
       {"X{A,", "Q", "sh(X{A,A})", "X{A,B} extra", "ld(X{A,B}", "1{A^x}",
        "X{A,B} * ", "", "(X{A,B}"}) {
    CHECK_THROWS_WITH(parse_duality(bad),
                      Catch::Matchers::ContainsSubstring("position"));
  }
}

TEST_CASE("double dual cancellations") {
  CHECK(normalize_text("rd(ld(X{A,B}))") == "X{A,B}");
  CHECK(normalize_text("ld(rd(X{A,B}))") == "X{A,B}");
  CHECK(normalize_text("D(D(X{A,B}))") == "X{A,B}");
  CHECK(normalize_text("op(op(X{A,B}))") == "X{A,B}");
  CHECK(normalize_text("rd(ld(rd(ld(X{A,B}))))") == "X{A,B}");
}

TEST_CASE("diagonal simplifications and unit elision") {
  CHECK(normalize_text("ld(1{A})") == "1{A}");
  CHECK(normalize_text("rd(1{A})") == "1{A}");
  CHECK(normalize_text("bd(1{A}) * D(1{A})") == "1{A}");
  CHECK(normalize_text("D(1{A}) * bd(1{A})") == "1{A}");
  CHECK(normalize_text("1{A} * X{A,B} * 1{B}") == "X{A,B}");
  CHECK(normalize_text("op(1{A})") == "1{A^op}");
  // The twist itself is not trivial: bd(1{A}) is its own normal form.
  CHECK(normalize_text("bd(1{A})") == "bd(1{A})");
  CHECK(normalize_text("D(1{A})") == "D(1{A})");
}

TEST_CASE("shifts hoist and add, duals negate them") {
  CHECK(normalize_text("sh(X{A,B}, 0)") == "X{A,B}");
  CHECK(normalize_text("sh(X{A,B}, 2) * sh(Y{B,C}, -1)") ==
        "sh(X{A,B} * Y{B,C}, 1)");
  CHECK(normalize_text("sh(sh(X{A,B}, 1), 1)") == "sh(X{A,B}, 2)");
  CHECK(equivalent_text("D(sh(X{A,B}, 5))", "sh(D(X{A,B}), -5)"));
  CHECK(equivalent_text("ld(sh(X{A,B}, 5))", "sh(ld(X{A,B}), -5)"));
  CHECK(equivalent_text("op(sh(X{A,B}, 5))", "sh(op(X{A,B}), 5)"));
}

TEST_CASE("duals of tensors distribute in reversed order") {
  CHECK(normalize_text("bd(X{A,B} * Y{B,C})") ==
        "bd(1{C}) * D(Y{B,C}) * bd(1{B}) * D(X{A,B}) * bd(1{A})");
  CHECK(normalize_text("D(X{A,B} * Y{B,C})") ==
        "D(Y{B,C}) * bd(1{B}) * D(X{A,B})");
  CHECK(equivalent_text("bd(X{A,B} * Y{B,C})", "rd(Y{B,C}) * bd(X{A,B})"));
  CHECK(equivalent_text("op(X{A,B} * Y{B,C})", "op(Y{B,C}) * op(X{A,B})"));
}

TEST_CASE("the six tensor-dual identities") {
  const std::string XY = "X{A,B} * Y{B,C}";
  CHECK(equivalent_text("bd(Y{B,C}) * ld(X{A,B})", "bd(" + XY + ")"));
  CHECK(equivalent_text("bd(" + XY + ")", "rd(Y{B,C}) * bd(X{A,B})"));
  CHECK(equivalent_text("ld(Y{B,C}) * D(X{A,B})", "D(" + XY + ")"));
  CHECK(equivalent_text("D(" + XY + ")", "D(Y{B,C}) * rd(X{A,B})"));
  CHECK(equivalent_text("D(Y{B,C}) * bd(X{A,B})", "ld(" + XY + ")"));
  CHECK(equivalent_text("bd(Y{B,C}) * D(X{A,B})", "rd(" + XY + ")"));
}

TEST_CASE("two factorization paths through the diagonal agree") {
  const std::vector<std::string> stations{
      "bd(X{A,B} * Y{B,C})",
      "bd(Y{B,C}) * ld(X{A,B})",
      "rd(Y{B,C}) * bd(1{B}) * ld(X{A,B})",
      "rd(Y{B,C}) * bd(X{A,B})",
  };
  for (size_t i = 0; i < stations.size(); ++i)
    for (size_t j = i + 1; j < stations.size(); ++j)
      CHECK(equivalent_text(stations[i], stations[j]));
}

TEST_CASE("one-sided duals factor through the k-dual and the twist") {
  CHECK(equivalent_text("ld(X{A,B})", "D(X{A,B}) * bd(1{A})"));
  CHECK(equivalent_text("rd(X{A,B})", "bd(1{B}) * D(X{A,B})"));
  CHECK(equivalent_text("bd(X{A,B})", "bd(1{B}) * D(X{A,B}) * bd(1{A})"));
  CHECK(normalize_text("ld(ld(X{A,B}))") == "D(1{A}) * X{A,B} * bd(1{B})");
}

TEST_CASE("op exchanges left and right duals") {
  CHECK(equivalent_text("op(ld(X{A,B}))", "rd(op(X{A,B}))"));
  CHECK(equivalent_text("op(rd(X{A,B}))", "ld(op(X{A,B}))"));
  CHECK(equivalent_text("op(bd(X{A,B}))", "bd(op(X{A,B}))"));
  CHECK(equivalent_text("op(D(X{A,B}))", "D(op(X{A,B}))"));
}

TEST_CASE("twists commute past invertible atoms") {
  CHECK(normalize_text("bd(1{A}) * T!{A,B}") == "T!{A,B} * bd(1{B})");
  CHECK(normalize_text("D(1{A}) * T!{A,B}") == "T!{A,B} * D(1{B})");
  // For an invertible bimodule the left and right duals agree.
  CHECK(equivalent_text("ld(T!{A,B})", "rd(T!{A,B})"));
  // Not so for a generic atom.
  CHECK_FALSE(equivalent_text("ld(X{A,B})", "rd(X{A,B})"));
}

TEST_CASE("equivalence demands matching boundaries") {
  CHECK_THROWS_WITH(equivalent_text("X{A,B}", "ld(X{A,B})"),
                    Catch::Matchers::ContainsSubstring("boundary mismatch"));
}

TEST_CASE("normalize is idempotent and boundary-preserving") {
  std::mt19937_64 rng(20260822);
  std::vector<AlgebraLabel> pool{LA, LB, LC};
  for (int trial = 0; trial < 400; ++trial) {
    size_t size = 1 + static_cast<size_t>(trial % 12);
    AlgebraLabel l = pool[static_cast<size_t>(
        std::uniform_int_distribution<int>(0, 2)(rng))];
    AlgebraLabel r = pool[static_cast<size_t>(
        std::uniform_int_distribution<int>(0, 2)(rng))];
    ExprPtr e = random_expr(rng, size, l, r);
    NormalForm nf = normal_form(e);
    CHECK(nf.left == l);
    CHECK(nf.right == r);
    // Printing and reparsing the normal form reproduces it exactly.
    std::string printed = format_normal_form(nf);
    NormalForm again = normal_form(parse_duality(printed));
    CHECK(again == nf);
    CHECK(format_normal_form(again) == printed);
  }
}

TEST_CASE("letter rewriting is locally confluent") {
  std::mt19937_64 rng(424242);
  std::vector<AlgebraLabel> pool{LA, LB, LC};
  size_t branch_points = 0;
  for (int trial = 0; trial < 300; ++trial) {
    size_t size = 1 + static_cast<size_t>(trial % 9);
    AlgebraLabel l = pool[static_cast<size_t>(
        std::uniform_int_distribution<int>(0, 2)(rng))];
    AlgebraLabel r = pool[static_cast<size_t>(
        std::uniform_int_distribution<int>(0, 2)(rng))];
    ExprPtr e = random_expr(rng, size, l, r);
    NormalForm raw = detail::translate(e);
    std::vector<NormalLetter> fix = raw.word;
    detail::rewrite_word(fix);
    auto branches = single_step_rewrites(raw.word);
    if (branches.size() > 1) ++branch_points;
    for (auto& alt : branches) {
      detail::rewrite_word(alt);
      CHECK(alt == fix);
    }
  }
  // The sweep must actually exercise points with competing redexes.
  CHECK(branch_points > 10);
}

TEST_CASE("snake diagrams reduce to identities for every flavor") {
  for (char f : {'l', 'r', 'b', 'd'}) {
    const std::string F(1, f);
    const std::string X = "X{A,B}";
    std::string p1 = "(eps_" + F + "(" + X + ") * id(" + X + ")) o (id(" + X +
                     ") * eta_" + F + "(" + X + "))";
    CHECK(reduce_zigzag_text(p1) == "id(" + X + ")");

    std::string fx = normalize_text(
        (f == 'l' ? "ld(" : f == 'r' ? "rd(" : f == 'b' ? "bd(" : "D(") + X +
        ")");
    std::string p2 = "(id(" + fx + ") * eps_" + F + "(" + X + ")) o (eta_" +
                     F + "(" + X + ") * id(" + fx + "))";
    CHECK(reduce_zigzag_text(p2) == "id(" + fx + ")");
  }
}

TEST_CASE("snake reduction with spectator wires") {
  std::string m =
      "(id(Z{C,A}) * eps_l(X{A,B}) * id(X{A,B})) o "
      "(id(Z{C,A}) * id(X{A,B}) * eta_l(X{A,B}))";
  CHECK(reduce_zigzag_text(m) == "id(Z{C,A}) * id(X{A,B})");
}

TEST_CASE("identity absorption and cell counts") {
  CHECK(reduce_zigzag_text("id(X{A,B}) o id(X{A,B}) o id(X{A,B})") ==
        "id(X{A,B})");
  Zigzag z = parse_zigzag(
      "(eps_l(X{A,B}) * id(X{A,B})) o (id(X{A,B}) * eta_l(X{A,B}))");
  size_t before = z.cell_count();
  Zigzag reduced = reduce_zigzag(z);
  CHECK(reduced.cell_count() < before);
  CHECK(reduced.cell_count() == 1);
}

TEST_CASE("flavor mismatch blocks the snake") {
  // ld and rd of an invertible atom agree, so this diagram typechecks, but
  // the unit and counit belong to different adjunctions: no reduction fires.
  std::string m =
      "(eps_l(T!{A,B}) * id(T!{A,B})) o (id(T!{A,B}) * eta_r(T!{A,B}))";
  Zigzag reduced = reduce_zigzag(parse_zigzag(m));
  CHECK(reduced.cell_count() == 4);
}

TEST_CASE("ill-typed diagrams are rejected") {
  CHECK_THROWS_AS(parse_zigzag("id(X{A,B}) o id(Y{B,C})"), input_error);
  CHECK_THROWS_AS(
      parse_zigzag("eps_l(X{A,B}) o (id(Y{B,C}) * eta_l(X{A,B}))"),
      input_error);
  CHECK_THROWS_WITH(parse_zigzag("id(X{A,B}) * id(Z{C,A})"),
                    Catch::Matchers::ContainsSubstring("not composable"));
  CHECK_THROWS_WITH(parse_zigzag("foo(X{A,B})"),
                    Catch::Matchers::ContainsSubstring("unknown cell"));
  CHECK_THROWS_WITH(parse_zigzag("id(X{A,B)"),
                    Catch::Matchers::ContainsSubstring("position"));
}

TEST_CASE("round trips through the morphism printer") {
  std::string m =
      "(eps_b(X{A,B}) * id(X{A,B})) o (id(X{A,B}) * eta_b(X{A,B}))";
  Zigzag z = parse_zigzag(m);
  std::string printed = format_zigzag(z);
  Zigzag back = parse_zigzag(printed);
  CHECK(back == z);
}
