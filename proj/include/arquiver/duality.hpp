#pragma once

// A typed calculus of bimodule tensor expressions over named algebras.
//
// Expressions are built from atoms X{A,B} (an object with a left action of A
// and a right action of B), diagonal units 1{A}, tensor products `*`, four
// duality operators (ld, rd, bd, D), the side-swap op( ), and integer shifts
// sh(e,n).  Every expression normalizes to a canonical word in three kinds of
// letters:
//
//   * decorated atoms          op^a(D^b(X{A,B}))
//   * twist letters            bd(1{A})   (the bidual of a diagonal unit)
//   * cotwist letters          D(1{A})    (the k-dual of a diagonal unit)
//
// together with one global shift.  The three duality operators ld, rd, bd
// expand into D plus twist letters; all equivalences between composite duals
// of tensor words then become literal equalities of normal forms.  A small
// confluent rewrite system (twist/cotwist cancellation, commutation past
// invertible atoms) finishes the job.
//
// The second half of the file implements a layered diagram language for the
// unit/counit morphisms of the four dualities, with snake (triangle-identity)
// reduction.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace arq {

// ---------------------------------------------------------------------------
// Algebra labels and boundaries
// ---------------------------------------------------------------------------

struct AlgebraLabel {
  std::string name;
  bool opposed = false;

  friend bool operator==(const AlgebraLabel&, const AlgebraLabel&) = default;
  friend auto operator<=>(const AlgebraLabel&, const AlgebraLabel&) = default;
};

inline AlgebraLabel opposite_label(AlgebraLabel l) {
  l.opposed = !l.opposed;
  return l;
}

inline std::string format_label(const AlgebraLabel& l) {
  return l.opposed ? l.name + "^op" : l.name;
}

// ---------------------------------------------------------------------------
// Abstract syntax
// ---------------------------------------------------------------------------

struct DualityExpr;
using ExprPtr = std::shared_ptr<const DualityExpr>;

struct DualityExpr {
  enum class Kind {
    atom,        // X{A,B}, optionally invertible: X!{A,B}
    unit,        // 1{A}
    tensor,      // e1 * e2
    left_dual,   // ld(e)
    right_dual,  // rd(e)
    bidual,      // bd(e)
    k_dual,      // D(e)
    opposite,    // op(e)
    shift        // sh(e, n)
  };

  Kind kind;
  std::string name;        // atom
  bool invertible = false; // atom
  AlgebraLabel left, right; // atom boundaries; unit stores its label in `left`
  ExprPtr a, b;            // children
  int amount = 0;          // shift
};

inline ExprPtr make_atom(std::string name, AlgebraLabel l, AlgebraLabel r,
                         bool invertible = false) {
  auto e = std::make_shared<DualityExpr>();
  e->kind = DualityExpr::Kind::atom;
  e->name = std::move(name);
  e->left = std::move(l);
  e->right = std::move(r);
  e->invertible = invertible;
  return e;
}

inline ExprPtr make_unit(AlgebraLabel l) {
  auto e = std::make_shared<DualityExpr>();
  e->kind = DualityExpr::Kind::unit;
  e->left = l;
  e->right = std::move(l);
  return e;
}

inline ExprPtr make_node(DualityExpr::Kind k, ExprPtr a, ExprPtr b = nullptr,
                         int amount = 0) {
  auto e = std::make_shared<DualityExpr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  e->amount = amount;
  return e;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

struct DualityParser {
  const std::string& text;
  size_t pos = 0;

  explicit DualityParser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw input_error("parse error at position " + std::to_string(at) + ": " +
                      msg);
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail("expected '" + std::string(1, c) + "' " + what, pos);
    ++pos;
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier(const std::string& what) {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos]))
      fail("expected " + what, pos);
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  AlgebraLabel label() {
    AlgebraLabel l;
    l.name = identifier("an algebra label");
    if (pos < text.size() && text[pos] == '^') {
      size_t save = pos;
      ++pos;
      std::string suffix = identifier("'op' after '^'");
      if (suffix != "op") fail("expected 'op' after '^'", save + 1);
      l.opposed = true;
    }
    return l;
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == digits) fail("expected an integer", start);
    return std::stoi(text.substr(start, pos - start));
  }

  // expr := factor ('*' factor)*
  ExprPtr expr() {
    ExprPtr acc = factor();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        acc = make_node(DualityExpr::Kind::tensor, acc, factor());
      } else {
        return acc;
      }
    }
  }

  // factor := '(' expr ')' | '1' '{' label '}' | op '(' ... ')' | atom
  ExprPtr factor() {
    skip_ws();
    if (pos >= text.size()) fail("expected an expression", pos);
    if (text[pos] == '(') {
      ++pos;
      ExprPtr inner = expr();
      expect(')', "to close '('");
      return inner;
    }
    if (text[pos] == '1') {
      ++pos;
      expect('{', "after '1'");
      AlgebraLabel l = label();
      expect('}', "to close unit label");
      return make_unit(std::move(l));
    }
    size_t head_at = pos;
    std::string head = identifier("an expression");
    skip_ws();
    bool call = pos < text.size() && text[pos] == '(';
    if (call && (head == "ld" || head == "rd" || head == "bd" ||
                 head == "D" || head == "op" || head == "sh")) {
      ++pos;
      ExprPtr inner = expr();
      if (head == "sh") {
        expect(',', "before the shift amount");
        int n = integer();
        expect(')', "to close 'sh('");
        return make_node(DualityExpr::Kind::shift, std::move(inner), nullptr,
                         n);
      }
      expect(')', "to close '" + head + "('");
      DualityExpr::Kind k = head == "ld"   ? DualityExpr::Kind::left_dual
                            : head == "rd" ? DualityExpr::Kind::right_dual
                            : head == "bd" ? DualityExpr::Kind::bidual
                            : head == "D"  ? DualityExpr::Kind::k_dual
                                           : DualityExpr::Kind::opposite;
      return make_node(k, std::move(inner));
    }
    // Atom: name ['!'] '{' label ',' label '}'
    bool invertible = false;
    skip_ws();
    if (pos < text.size() && text[pos] == '!') {
      invertible = true;
      ++pos;
    }
    skip_ws();
    if (pos >= text.size() || text[pos] != '{')
      fail("expected '{' introducing boundary labels of atom '" + head + "'",
           head_at);
    ++pos;
    AlgebraLabel l = label();
    expect(',', "between boundary labels");
    AlgebraLabel r = label();
    expect('}', "to close boundary labels");
    return make_atom(std::move(head), std::move(l), std::move(r), invertible);
  }

  ExprPtr parse_all() {
    ExprPtr e = expr();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input", pos);
    return e;
  }
};

}  // namespace detail

inline ExprPtr parse_duality(const std::string& text) {
  detail::DualityParser p(text);
  return p.parse_all();
}

// ---------------------------------------------------------------------------
// Boundary computation
// ---------------------------------------------------------------------------

inline std::pair<AlgebraLabel, AlgebraLabel> boundary_of(const ExprPtr& e) {
  switch (e->kind) {
    case DualityExpr::Kind::atom:
      return {e->left, e->right};
    case DualityExpr::Kind::unit:
      return {e->left, e->left};
    case DualityExpr::Kind::tensor: {
      auto b1 = boundary_of(e->a);
      auto b2 = boundary_of(e->b);
      if (b1.second != b2.first)
        throw input_error("type error: cannot tensor boundary '" +
                          format_label(b1.second) + "' with boundary '" +
                          format_label(b2.first) + "'");
      return {b1.first, b2.second};
    }
    case DualityExpr::Kind::left_dual:
    case DualityExpr::Kind::right_dual:
    case DualityExpr::Kind::bidual:
    case DualityExpr::Kind::k_dual: {
      auto b = boundary_of(e->a);
      return {b.second, b.first};
    }
    case DualityExpr::Kind::opposite: {
      auto b = boundary_of(e->a);
      return {opposite_label(b.second), opposite_label(b.first)};
    }
    case DualityExpr::Kind::shift:
      return boundary_of(e->a);
  }
  throw std::logic_error("boundary_of: unhandled node kind");
}

// ---------------------------------------------------------------------------
// Normal forms: shift + word of letters
// ---------------------------------------------------------------------------

struct NormalLetter {
  enum class Kind { atom, twist, cotwist };
  Kind kind;

  // atom letters
  std::string name;
  bool invertible = false;
  bool dualized = false;  // wrapped in D( )
  bool opposed = false;   // wrapped in op( )
  AlgebraLabel base_left, base_right;  // boundary as declared on the atom

  // twist/cotwist letters
  AlgebraLabel alg;

  friend bool operator==(const NormalLetter&, const NormalLetter&) = default;
};

inline NormalLetter twist_letter(AlgebraLabel a) {
  NormalLetter l;
  l.kind = NormalLetter::Kind::twist;
  l.alg = std::move(a);
  return l;
}

inline NormalLetter cotwist_letter(AlgebraLabel a) {
  NormalLetter l;
  l.kind = NormalLetter::Kind::cotwist;
  l.alg = std::move(a);
  return l;
}

inline std::pair<AlgebraLabel, AlgebraLabel> letter_boundary(
    const NormalLetter& l) {
  if (l.kind != NormalLetter::Kind::atom) return {l.alg, l.alg};
  AlgebraLabel left = l.base_left;
  AlgebraLabel right = l.base_right;
  if (l.dualized) std::swap(left, right);
  if (l.opposed) {
    AlgebraLabel nl = opposite_label(right);
    AlgebraLabel nr = opposite_label(left);
    left = std::move(nl);
    right = std::move(nr);
  }
  return {left, right};
}

struct NormalForm {
  int shift = 0;
  AlgebraLabel left, right;  // boundary of the whole word
  std::vector<NormalLetter> word;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

namespace detail {

// The k-dual of a single letter, as a word.
inline std::vector<NormalLetter> dual_letter(const NormalLetter& l) {
  switch (l.kind) {
    case NormalLetter::Kind::atom: {
      NormalLetter d = l;
      d.dualized = !d.dualized;
      return {d};
    }
    case NormalLetter::Kind::twist:
      // D(bd(1{A})) expands to D(1{A}) * D(1{A}).
      return {cotwist_letter(l.alg), cotwist_letter(l.alg)};
    case NormalLetter::Kind::cotwist:
      // D(D(1{A})) is 1{A}.
      return {};
  }
  throw std::logic_error("dual_letter: unhandled letter kind");
}

// The k-dual of a composable word: reverse the word, dualize each letter,
// and insert a twist letter at every internal boundary of the original word.
// The k-dual of the empty word at boundary A is the single cotwist D(1{A}).
inline std::vector<NormalLetter> dual_word(const std::vector<NormalLetter>& w,
                                           const AlgebraLabel& left_label) {
  if (w.empty()) return {cotwist_letter(left_label)};
  std::vector<NormalLetter> out;
  for (size_t i = w.size(); i-- > 0;) {
    std::vector<NormalLetter> piece = dual_letter(w[i]);
    out.insert(out.end(), piece.begin(), piece.end());
    if (i > 0) out.push_back(twist_letter(letter_boundary(w[i]).first));
  }
  return out;
}

inline NormalLetter opposed_letter(const NormalLetter& l) {
  NormalLetter o = l;
  if (l.kind == NormalLetter::Kind::atom)
    o.opposed = !o.opposed;
  else
    o.alg = opposite_label(l.alg);
  return o;
}

// One pass of the word rewrite system.  Rules:
//   (1) adjacent twist/cotwist letters over the same algebra cancel,
//   (2) twist and cotwist letters commute rightward past invertible atoms
//       (an invertible bimodule intertwines the twists of its two sides).
inline bool rewrite_step(std::vector<NormalLetter>& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    const NormalLetter& x = w[i];
    const NormalLetter& y = w[i + 1];
    bool cancel =
        ((x.kind == NormalLetter::Kind::twist &&
          y.kind == NormalLetter::Kind::cotwist) ||
         (x.kind == NormalLetter::Kind::cotwist &&
          y.kind == NormalLetter::Kind::twist)) &&
        x.alg == y.alg;
    if (cancel) {
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
              w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      return true;
    }
    bool commute = (x.kind == NormalLetter::Kind::twist ||
                    x.kind == NormalLetter::Kind::cotwist) &&
                   y.kind == NormalLetter::Kind::atom && y.invertible;
    if (commute) {
      NormalLetter moved = x;
      moved.alg = letter_boundary(y).second;
      w[i] = y;
      w[i + 1] = std::move(moved);
      return true;
    }
  }
  return false;
}

inline void rewrite_word(std::vector<NormalLetter>& w) {
  while (rewrite_step(w)) {
  }
}

inline NormalForm translate(const ExprPtr& e) {
  switch (e->kind) {
    case DualityExpr::Kind::atom: {
      NormalForm nf;
      nf.left = e->left;
      nf.right = e->right;
      NormalLetter l;
      l.kind = NormalLetter::Kind::atom;
      l.name = e->name;
      l.invertible = e->invertible;
      l.base_left = e->left;
      l.base_right = e->right;
      nf.word.push_back(std::move(l));
      return nf;
    }
    case DualityExpr::Kind::unit: {
      NormalForm nf;
      nf.left = e->left;
      nf.right = e->left;
      return nf;
    }
    case DualityExpr::Kind::tensor: {
      NormalForm t1 = translate(e->a);
      NormalForm t2 = translate(e->b);
      if (t1.right != t2.left)
        throw input_error("type error: cannot tensor boundary '" +
                          format_label(t1.right) + "' with boundary '" +
                          format_label(t2.left) + "'");
      NormalForm nf;
      nf.shift = t1.shift + t2.shift;
      nf.left = t1.left;
      nf.right = t2.right;
      nf.word = std::move(t1.word);
      nf.word.insert(nf.word.end(), t2.word.begin(), t2.word.end());
      return nf;
    }
    case DualityExpr::Kind::shift: {
      NormalForm nf = translate(e->a);
      nf.shift += e->amount;
      return nf;
    }
    case DualityExpr::Kind::opposite: {
      NormalForm t = translate(e->a);
      NormalForm nf;
      nf.shift = t.shift;
      nf.left = opposite_label(t.right);
      nf.right = opposite_label(t.left);
      for (size_t i = t.word.size(); i-- > 0;)
        nf.word.push_back(opposed_letter(t.word[i]));
      return nf;
    }
    case DualityExpr::Kind::k_dual:
    case DualityExpr::Kind::left_dual:
    case DualityExpr::Kind::right_dual:
    case DualityExpr::Kind::bidual: {
      NormalForm t = translate(e->a);
      NormalForm nf;
      nf.shift = -t.shift;
      nf.left = t.right;
      nf.right = t.left;
      bool pre = e->kind == DualityExpr::Kind::right_dual ||
                 e->kind == DualityExpr::Kind::bidual;
      bool post = e->kind == DualityExpr::Kind::left_dual ||
                  e->kind == DualityExpr::Kind::bidual;
      if (pre) nf.word.push_back(twist_letter(t.right));
      std::vector<NormalLetter> dw = dual_word(t.word, t.left);
      nf.word.insert(nf.word.end(), dw.begin(), dw.end());
      if (post) nf.word.push_back(twist_letter(t.left));
      return nf;
    }
  }
  throw std::logic_error("translate: unhandled node kind");
}

}  // namespace detail

inline NormalForm normal_form(const ExprPtr& e) {
  NormalForm nf = detail::translate(e);
  detail::rewrite_word(nf.word);
  return nf;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

inline std::string format_letter(const NormalLetter& l) {
  switch (l.kind) {
    case NormalLetter::Kind::twist:
      return "bd(1{" + format_label(l.alg) + "})";
    case NormalLetter::Kind::cotwist:
      return "D(1{" + format_label(l.alg) + "})";
    case NormalLetter::Kind::atom: {
      std::string s = l.name + (l.invertible ? "!" : "") + "{" +
                      format_label(l.base_left) + "," +
                      format_label(l.base_right) + "}";
      if (l.dualized) s = "D(" + s + ")";
      if (l.opposed) s = "op(" + s + ")";
      return s;
    }
  }
  throw std::logic_error("format_letter: unhandled letter kind");
}

inline std::string format_normal_form(const NormalForm& nf) {
  std::string core;
  if (nf.word.empty()) {
    core = "1{" + format_label(nf.left) + "}";
  } else {
    for (size_t i = 0; i < nf.word.size(); ++i) {
      if (i) core += " * ";
      core += format_letter(nf.word[i]);
    }
  }
  if (nf.shift != 0)
    core = "sh(" + core + ", " + std::to_string(nf.shift) + ")";
  return core;
}

inline std::string normalize_text(const std::string& text) {
  return format_normal_form(normal_form(parse_duality(text)));
}

inline ExprPtr normalize(const ExprPtr& e) {
  return parse_duality(format_normal_form(normal_form(e)));
}

inline bool equivalent(const ExprPtr& e1, const ExprPtr& e2) {
  auto b1 = boundary_of(e1);
  auto b2 = boundary_of(e2);
  if (b1 != b2)
    throw input_error(
        "boundary mismatch: (" + format_label(b1.first) + "," +
        format_label(b1.second) + ") vs (" + format_label(b2.first) + "," +
        format_label(b2.second) + ")");
  return normal_form(e1) == normal_form(e2);
}

inline bool equivalent_text(const std::string& t1, const std::string& t2) {
  return equivalent(parse_duality(t1), parse_duality(t2));
}

// All words reachable from `w` by one rewrite step, in any position.  Used by
// tests to probe local confluence of the letter rewrite system.
inline std::vector<std::vector<NormalLetter>> single_step_rewrites(
    const std::vector<NormalLetter>& w) {
  std::vector<std::vector<NormalLetter>> out;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    const NormalLetter& x = w[i];
    const NormalLetter& y = w[i + 1];
    bool cancel =
        ((x.kind == NormalLetter::Kind::twist &&
          y.kind == NormalLetter::Kind::cotwist) ||
         (x.kind == NormalLetter::Kind::cotwist &&
          y.kind == NormalLetter::Kind::twist)) &&
        x.alg == y.alg;
    if (cancel) {
      std::vector<NormalLetter> next = w;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(i),
                 next.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      out.push_back(std::move(next));
    }
    bool commute = (x.kind == NormalLetter::Kind::twist ||
                    x.kind == NormalLetter::Kind::cotwist) &&
                   y.kind == NormalLetter::Kind::atom && y.invertible;
    if (commute) {
      std::vector<NormalLetter> next = w;
      NormalLetter moved = x;
      moved.alg = letter_boundary(y).second;
      next[i] = y;
      next[i + 1] = std::move(moved);
      out.push_back(std::move(next));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layered diagrams of unit/counit morphisms, with snake reduction
// ---------------------------------------------------------------------------
//
// A morphism expression is a vertical composite of rows; each row is a
// horizontal juxtaposition of cells.  Cells:
//
//   id(e)      the identity on e — one wire in, one wire out
//   eta_f(X)   the unit 1{B} -> f(X) * X of the duality f (f = l, r, b, d)
//   eps_f(X)   the counit X * f(X) -> 1{A}
//
// All four dualities use this one geometry.  In the text grammar rows are
// joined by `o` in math order — "g o f" means first f, then g; internally
// layers are stored first-applied-first.

enum class DualFlavor { left, right, bidual, k };

inline char flavor_char(DualFlavor f) {
  switch (f) {
    case DualFlavor::left: return 'l';
    case DualFlavor::right: return 'r';
    case DualFlavor::bidual: return 'b';
    case DualFlavor::k: return 'd';
  }
  throw std::logic_error("flavor_char: unhandled flavor");
}

inline DualityExpr::Kind flavor_kind(DualFlavor f) {
  switch (f) {
    case DualFlavor::left: return DualityExpr::Kind::left_dual;
    case DualFlavor::right: return DualityExpr::Kind::right_dual;
    case DualFlavor::bidual: return DualityExpr::Kind::bidual;
    case DualFlavor::k: return DualityExpr::Kind::k_dual;
  }
  throw std::logic_error("flavor_kind: unhandled flavor");
}

struct DiagramCell {
  enum class Kind { identity, unit, counit };
  Kind kind;
  DualFlavor flavor = DualFlavor::left;  // unit/counit only
  NormalForm arg;   // identity: the wire; unit/counit: X
  NormalForm dual;  // unit/counit: f(X)

  friend bool operator==(const DiagramCell&, const DiagramCell&) = default;

  std::vector<NormalForm> inputs() const {
    switch (kind) {
      case Kind::identity: return {arg};
      case Kind::unit: return {};
      case Kind::counit: return {arg, dual};
    }
    throw std::logic_error("DiagramCell::inputs: unhandled kind");
  }
  std::vector<NormalForm> outputs() const {
    switch (kind) {
      case Kind::identity: return {arg};
      case Kind::unit: return {dual, arg};
      case Kind::counit: return {};
    }
    throw std::logic_error("DiagramCell::outputs: unhandled kind");
  }
};

struct DiagramLayer {
  std::vector<DiagramCell> cells;

  friend bool operator==(const DiagramLayer&, const DiagramLayer&) = default;

  std::vector<NormalForm> inputs() const {
    std::vector<NormalForm> out;
    for (const DiagramCell& c : cells) {
      auto w = c.inputs();
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  }
  std::vector<NormalForm> outputs() const {
    std::vector<NormalForm> out;
    for (const DiagramCell& c : cells) {
      auto w = c.outputs();
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  }
};

struct Zigzag {
  std::vector<DiagramLayer> layers;  // first applied first

  friend bool operator==(const Zigzag&, const Zigzag&) = default;

  size_t cell_count() const {
    size_t n = 0;
    for (const DiagramLayer& l : layers) n += l.cells.size();
    return n;
  }
};

inline DiagramCell identity_cell(const ExprPtr& e) {
  DiagramCell c;
  c.kind = DiagramCell::Kind::identity;
  c.arg = normal_form(e);
  return c;
}

inline DiagramCell unit_cell(DualFlavor f, const ExprPtr& x) {
  DiagramCell c;
  c.kind = DiagramCell::Kind::unit;
  c.flavor = f;
  c.arg = normal_form(x);
  c.dual = normal_form(make_node(flavor_kind(f), x));
  return c;
}

inline DiagramCell counit_cell(DualFlavor f, const ExprPtr& x) {
  DiagramCell c;
  c.kind = DiagramCell::Kind::counit;
  c.flavor = f;
  c.arg = normal_form(x);
  c.dual = normal_form(make_node(flavor_kind(f), x));
  return c;
}

namespace detail {

// Composability of a horizontal run of wires, and agreement of adjacent
// layer interfaces.
inline void check_wire_chain(const std::vector<NormalForm>& wires,
                             size_t layer_index) {
  for (size_t i = 0; i + 1 < wires.size(); ++i) {
    if (wires[i].right != wires[i + 1].left)
      throw input_error(
          "cells of layer " + std::to_string(layer_index) +
          " are not composable: boundary '" + format_label(wires[i].right) +
          "' meets '" + format_label(wires[i + 1].left) + "'");
  }
}

}  // namespace detail

inline void validate_zigzag(const Zigzag& z) {
  if (z.layers.empty()) throw input_error("empty diagram");
  for (size_t i = 0; i < z.layers.size(); ++i) {
    if (z.layers[i].cells.empty())
      throw input_error("layer " + std::to_string(i) + " has no cells");
    detail::check_wire_chain(z.layers[i].inputs(), i);
    detail::check_wire_chain(z.layers[i].outputs(), i);
  }
  for (size_t i = 0; i + 1 < z.layers.size(); ++i) {
    if (z.layers[i].outputs() != z.layers[i + 1].inputs())
      throw input_error("output wires of layer " + std::to_string(i) +
                        " do not match input wires of layer " +
                        std::to_string(i + 1));
  }
}

// ---------------------------------------------------------------------------
// Morphism expression parser
// ---------------------------------------------------------------------------
//
//   morphism := seg ('o' seg)*           (math order: later segs apply first)
//   seg      := '(' row ')' | row
//   row      := cell ('*' cell)*
//   cell     := 'id' '(' expr ')' | ('eta_'|'eps_') flavor '(' expr ')'

namespace detail {

struct MorphismParser {
  const std::string& text;
  size_t pos = 0;

  explicit MorphismParser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw input_error("parse error at position " + std::to_string(at) + ": " +
                      msg);
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  std::string peek_word() {
    skip_ws();
    size_t p = pos;
    if (p >= text.size() || !DualityParser::ident_start(text[p])) return "";
    size_t start = p;
    while (p < text.size() && DualityParser::ident_char(text[p])) ++p;
    return text.substr(start, p - start);
  }

  // Parse a parenthesized duality expression using the expression parser on
  // the bracketed substring.
  ExprPtr bracketed_expr() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(')
      fail("expected '(' after cell head", pos);
    size_t open = pos;
    int depth = 0;
    size_t p = pos;
    for (; p < text.size(); ++p) {
      if (text[p] == '(') ++depth;
      if (text[p] == ')') {
        --depth;
        if (depth == 0) break;
      }
    }
    if (depth != 0) fail("unbalanced '('", open);
    std::string inner = text.substr(open + 1, p - open - 1);
    pos = p + 1;
    try {
      return parse_duality(inner);
    } catch (const input_error& err) {
      throw input_error(std::string(err.what()) + " (inside cell argument)");
    }
  }

  DiagramCell cell() {
    std::string head = peek_word();
    if (head.empty()) fail("expected a cell", pos);
    pos += head.size();
    if (head == "id") return identity_cell(bracketed_expr());
    bool is_eta = head.rfind("eta_", 0) == 0;
    bool is_eps = head.rfind("eps_", 0) == 0;
    if ((is_eta || is_eps) && head.size() == 5) {
      char f = head[4];
      DualFlavor flavor;
      if (f == 'l') flavor = DualFlavor::left;
      else if (f == 'r') flavor = DualFlavor::right;
      else if (f == 'b') flavor = DualFlavor::bidual;
      else if (f == 'd') flavor = DualFlavor::k;
      else fail("unknown duality flavor '" + std::string(1, f) + "'",
                pos - 1);
      ExprPtr x = bracketed_expr();
      return is_eta ? unit_cell(flavor, x) : counit_cell(flavor, x);
    }
    fail("unknown cell '" + head + "'", pos - head.size());
  }

  DiagramLayer row() {
    DiagramLayer layer;
    layer.cells.push_back(cell());
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        layer.cells.push_back(cell());
      } else {
        return layer;
      }
    }
  }

  DiagramLayer seg() {
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      DiagramLayer l = row();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')')
        fail("expected ')' to close a row", pos);
      ++pos;
      return l;
    }
    return row();
  }

  Zigzag parse_all() {
    std::vector<DiagramLayer> in_math_order;
    in_math_order.push_back(seg());
    while (true) {
      size_t save = pos;
      std::string w = peek_word();
      if (w == "o") {
        pos = save;
        skip_ws();
        pos += 1;
        in_math_order.push_back(seg());
      } else {
        break;
      }
    }
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input", pos);
    Zigzag z;
    z.layers.assign(in_math_order.rbegin(), in_math_order.rend());
    validate_zigzag(z);
    return z;
  }
};

}  // namespace detail

inline Zigzag parse_zigzag(const std::string& text) {
  detail::MorphismParser p(text);
  return p.parse_all();
}

inline std::string format_cell(const DiagramCell& c) {
  switch (c.kind) {
    case DiagramCell::Kind::identity:
      return "id(" + format_normal_form(c.arg) + ")";
    case DiagramCell::Kind::unit:
      return std::string("eta_") + flavor_char(c.flavor) + "(" +
             format_normal_form(c.arg) + ")";
    case DiagramCell::Kind::counit:
      return std::string("eps_") + flavor_char(c.flavor) + "(" +
             format_normal_form(c.arg) + ")";
  }
  throw std::logic_error("format_cell: unhandled kind");
}

inline std::string format_zigzag(const Zigzag& z) {
  std::string out;
  for (size_t i = z.layers.size(); i-- > 0;) {
    const DiagramLayer& layer = z.layers[i];
    std::string row;
    for (size_t j = 0; j < layer.cells.size(); ++j) {
      if (j) row += " * ";
      row += format_cell(layer.cells[j]);
    }
    if (z.layers.size() > 1 && layer.cells.size() > 1) row = "(" + row + ")";
    if (!out.empty()) out += " o ";
    out += row;
  }
  return out;
}

namespace detail {

// Offset of the first input wire of cell `k` within the layer's input run.
inline size_t input_offset(const DiagramLayer& layer, size_t k) {
  size_t off = 0;
  for (size_t j = 0; j < k; ++j) off += layer.cells[j].inputs().size();
  return off;
}

// Offset of the first output wire of cell `k` within the layer's output run.
inline size_t output_offset(const DiagramLayer& layer, size_t k) {
  size_t off = 0;
  for (size_t j = 0; j < k; ++j) off += layer.cells[j].outputs().size();
  return off;
}

inline DiagramCell id_on(const NormalForm& wire) {
  DiagramCell c;
  c.kind = DiagramCell::Kind::identity;
  c.arg = wire;
  return c;
}

// One snake-removal or identity-absorption step; true if anything changed.
inline bool zigzag_step(Zigzag& z) {
  // Snake patterns across adjacent layers.
  for (size_t i = 0; i + 1 < z.layers.size(); ++i) {
    DiagramLayer& lower = z.layers[i];
    DiagramLayer& upper = z.layers[i + 1];
    for (size_t k = 0; k + 1 < lower.cells.size(); ++k) {
      const DiagramCell& c0 = lower.cells[k];
      const DiagramCell& c1 = lower.cells[k + 1];
      for (size_t m = 0; m + 1 < upper.cells.size(); ++m) {
        const DiagramCell& d0 = upper.cells[m];
        const DiagramCell& d1 = upper.cells[m + 1];
        // (eps x id) after (id x eta): wire X passes, eta feeds eps.
        bool right_snake =
            c0.kind == DiagramCell::Kind::identity &&
            c1.kind == DiagramCell::Kind::unit &&
            d0.kind == DiagramCell::Kind::counit &&
            d1.kind == DiagramCell::Kind::identity &&
            c1.flavor == d0.flavor && c0.arg == c1.arg && d0.arg == c1.arg &&
            d1.arg == c1.arg &&
            output_offset(lower, k) == input_offset(upper, m);
        if (right_snake) {
          NormalForm x = c1.arg;
          lower.cells.erase(lower.cells.begin() +
                            static_cast<std::ptrdiff_t>(k + 1));
          upper.cells[m] = id_on(x);
          upper.cells.erase(upper.cells.begin() +
                            static_cast<std::ptrdiff_t>(m + 1));
          return true;
        }
        // (id x eps) after (eta x id): wire f(X) passes on the outside.
        bool left_snake =
            c0.kind == DiagramCell::Kind::unit &&
            c1.kind == DiagramCell::Kind::identity &&
            d0.kind == DiagramCell::Kind::identity &&
            d1.kind == DiagramCell::Kind::counit &&
            c0.flavor == d1.flavor && c1.arg == c0.dual &&
            d0.arg == c0.dual && d1.arg == c0.arg &&
            output_offset(lower, k) == input_offset(upper, m);
        if (left_snake) {
          NormalForm fx = c0.dual;
          lower.cells[k] = id_on(fx);
          lower.cells.erase(lower.cells.begin() +
                            static_cast<std::ptrdiff_t>(k + 1));
          upper.cells.erase(upper.cells.begin() +
                            static_cast<std::ptrdiff_t>(m + 1));
          return true;
        }
      }
    }
  }
  // Identity absorption: drop an all-identity layer when another layer
  // remains.
  if (z.layers.size() > 1) {
    for (size_t i = 0; i < z.layers.size(); ++i) {
      bool all_id = true;
      for (const DiagramCell& c : z.layers[i].cells)
        if (c.kind != DiagramCell::Kind::identity) {
          all_id = false;
          break;
        }
      if (all_id) {
        z.layers.erase(z.layers.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

inline Zigzag reduce_zigzag(Zigzag z) {
  validate_zigzag(z);
  size_t guard = z.cell_count() * z.cell_count() + z.layers.size() + 8;
  while (detail::zigzag_step(z)) {
    if (guard-- == 0)
      throw std::logic_error("reduce_zigzag: rewrite did not terminate");
  }
  return z;
}

inline std::string reduce_zigzag_text(const std::string& text) {
  return format_zigzag(reduce_zigzag(parse_zigzag(text)));
}

}  // namespace arq
