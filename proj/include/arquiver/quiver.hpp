// Finite acyclic quivers, their path bases, and the degree-zero commutator
// quotient of the path algebra.
//
// Conventions fixed here and relied on everywhere:
//   - vertices are 1..r in files and messages, 0..r-1 internally;
//   - paths compose right-to-left (function style): p*q means "first q, then p",
//     defined when target(q) = source(p);
//   - consequently e_i * A * e_j is spanned by the paths j -> i, and the
//     projective A*e_i is spanned by the paths starting at i.
#pragma once

#include "arquiver/dimvec.hpp"
#include "arquiver/errors.hpp"
#include "arquiver/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace arq {

struct Arrow {
  std::string name;
  size_t src = 0;  // 0-based
  size_t tgt = 0;  // 0-based
};

class Quiver {
 public:
  Quiver(size_t vertex_count, std::vector<Arrow> arrows)
      : r_(vertex_count), arrows_(std::move(arrows)) {
    if (r_ == 0) throw input_error("quiver needs at least one vertex");
    std::map<std::string, size_t> seen;
    for (const Arrow& a : arrows_) {
      if (a.src >= r_ || a.tgt >= r_)
        throw input_error("arrow '" + a.name + "' references a vertex out of range");
      if (a.name.empty()) throw input_error("arrow with empty name");
      if (!seen.emplace(a.name, 0).second)
        throw input_error("duplicate arrow name '" + a.name + "'");
    }
    check_acyclic();
  }

  size_t vertex_count() const { return r_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  // Count of parallel arrows i -> j.
  size_t arrow_multiplicity(size_t i, size_t j) const {
    size_t n = 0;
    for (const Arrow& a : arrows_)
      if (a.src == i && a.tgt == j) ++n;
    return n;
  }

  const Arrow& arrow_by_name(const std::string& name) const {
    for (const Arrow& a : arrows_)
      if (a.name == name) return a;
    throw input_error("unknown arrow '" + name + "'");
  }

  // A topological order of the vertices (sources first); exists by acyclicity.
  std::vector<size_t> topological_order() const {
    std::vector<size_t> indeg(r_, 0), order;
    for (const Arrow& a : arrows_) ++indeg[a.tgt];
    std::vector<size_t> ready;
    for (size_t v = 0; v < r_; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      size_t v = *std::min_element(ready.begin(), ready.end());
      ready.erase(std::find(ready.begin(), ready.end(), v));
      order.push_back(v);
      for (const Arrow& a : arrows_)
        if (a.src == v && --indeg[a.tgt] == 0) ready.push_back(a.tgt);
    }
    return order;  // complete, because the constructor enforced acyclicity
  }

 private:
  void check_acyclic() const {
    // Depth-first search with colors; on a back edge, report the cycle by name.
    std::vector<int> color(r_, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<const Arrow*> stack;
    for (size_t start = 0; start < r_; ++start) {
      if (color[start]) continue;
      if (auto cyc = dfs_cycle(start, color, stack)) {
        std::string names;
        for (const Arrow* a : *cyc) {
          if (!names.empty()) names += " ";
          names += a->name;
        }
        throw input_error("quiver has a directed cycle: " + names);
      }
    }
  }

  std::optional<std::vector<const Arrow*>> dfs_cycle(
      size_t v, std::vector<int>& color, std::vector<const Arrow*>& stack) const {
    color[v] = 1;
    for (const Arrow& a : arrows_) {
      if (a.src != v) continue;
      if (color[a.tgt] == 1) {
        // Unwind the stack to the first arrow leaving a.tgt.
        std::vector<const Arrow*> cyc;
        size_t k = 0;
        while (k < stack.size() && stack[k]->src != a.tgt) ++k;
        for (; k < stack.size(); ++k) cyc.push_back(stack[k]);
        cyc.push_back(&a);
        return cyc;
      }
      if (color[a.tgt] == 0) {
        stack.push_back(&a);
        if (auto cyc = dfs_cycle(a.tgt, color, stack)) return cyc;
        stack.pop_back();
      }
    }
    color[v] = 2;
    return std::nullopt;
  }

  size_t r_;
  std::vector<Arrow> arrows_;
};

// Line format: `vertices <r>`, then `arrow <name> <src> <tgt>` per arrow;
// `#` starts a comment; blank lines ignored. Errors carry the line number.
inline Quiver parse_quiver(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  std::optional<size_t> vertex_count;
  std::vector<Arrow> arrows;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& why) -> void {
      throw input_error("quiver file line " + std::to_string(lineno) + ": " + why);
    };
    if (word == "vertices") {
      long long r = 0;
      if (!(ls >> r) || r <= 0) fail("expected `vertices <positive count>`");
      if (vertex_count) fail("duplicate `vertices` line");
      vertex_count = static_cast<size_t>(r);
    } else if (word == "arrow") {
      if (!vertex_count) fail("`arrow` before `vertices`");
      Arrow a;
      long long s = 0, t = 0;
      if (!(ls >> a.name >> s >> t)) fail("expected `arrow <name> <src> <tgt>`");
      for (const Arrow& seen : arrows)
        if (seen.name == a.name) fail("duplicate arrow name '" + a.name + "'");
      if (s < 1 || t < 1 || static_cast<size_t>(s) > *vertex_count ||
          static_cast<size_t>(t) > *vertex_count)
        fail("arrow endpoint out of range 1.." + std::to_string(*vertex_count));
      a.src = static_cast<size_t>(s - 1);
      a.tgt = static_cast<size_t>(t - 1);
      arrows.push_back(std::move(a));
    } else {
      fail("unknown directive `" + word + "`");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token `" + extra + "`");
  }
  if (!vertex_count) throw input_error("quiver file has no `vertices` line");
  return Quiver(*vertex_count, std::move(arrows));
}

// A path: a walk through the quiver. `arrows` lists traversal order (the walk
// i -> ... -> j); trivial paths have an empty arrow list and src == tgt.
struct Path {
  size_t src = 0;
  size_t tgt = 0;
  std::vector<size_t> arrows;  // indices into Quiver::arrows()

  bool trivial() const { return arrows.empty(); }
};

struct PathBasis {
  std::vector<Path> paths;  // deterministic order: length, then arrow names
  // count[i][j] = number of paths i -> j (trivial included when i == j)
  std::vector<std::vector<size_t>> count;

  size_t dim() const { return paths.size(); }
};

inline std::string path_label(const Quiver& q, const Path& p) {
  if (p.trivial()) return "e" + std::to_string(p.src + 1);
  std::string s;
  // Right-to-left composition: the last-traversed arrow is written first.
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!s.empty()) s += "*";
    s += q.arrows()[*it].name;
  }
  return s;
}

// Enumerate every directed path. Finite by acyclicity.
inline PathBasis path_basis(const Quiver& q) {
  PathBasis pb;
  size_t r = q.vertex_count();
  pb.count.assign(r, std::vector<size_t>(r, 0));
  for (size_t v = 0; v < r; ++v) {
    pb.paths.push_back(Path{v, v, {}});
    pb.count[v][v] = 1;
  }
  // Grow by length; extend each path of the previous length by one arrow.
  std::vector<Path> frontier = pb.paths;
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (size_t ai = 0; ai < q.arrows().size(); ++ai) {
        if (q.arrows()[ai].src != p.tgt) continue;
        Path ext = p;
        ext.arrows.push_back(ai);
        ext.tgt = q.arrows()[ai].tgt;
        next.push_back(std::move(ext));
      }
    }
    // Deterministic order within a length class: lexicographic by arrow names
    // in traversal order.
    std::sort(next.begin(), next.end(), [&](const Path& a, const Path& b) {
      std::vector<std::string> an, bn;
      for (size_t i : a.arrows) an.push_back(q.arrows()[i].name);
      for (size_t i : b.arrows) bn.push_back(q.arrows()[i].name);
      return an < bn;
    });
    for (const Path& p : next) {
      pb.paths.push_back(p);
      ++pb.count[p.src][p.tgt];
    }
    frontier = std::move(next);
  }
  return pb;
}

struct HH0Result {
  size_t dimension = 0;
  std::vector<std::string> basis_labels;  // trivial-path labels for acyclic quivers
};

// Dimension of A/[A,A] for A the path algebra: span the commutators p*q - q*p
// over the path basis, compute its rank, and subtract. For an acyclic quiver
// every nontrivial path has distinct endpoints and is itself a commutator with
// the trivial path at its target, so the quotient basis is the trivial paths;
// the rank computation below verifies that rather than assuming it.
inline HH0Result hh0(const Quiver& q) {
  PathBasis pb = path_basis(q);
  size_t n = pb.dim();
  // Index paths for product lookup: compose p*q (first q, then p) when
  // tgt(q) == src(p); the product is again a basis path (concatenated walk).
  using WalkKey = std::pair<size_t, std::vector<size_t>>;  // (src, arrow walk)
  std::map<WalkKey, size_t> by_walk;
  for (size_t i = 0; i < n; ++i)
    by_walk[{pb.paths[i].src, pb.paths[i].arrows}] = i;
  auto product = [&](size_t pi, size_t qi) -> std::optional<size_t> {
    const Path& p = pb.paths[pi];
    const Path& qq = pb.paths[qi];
    if (qq.tgt != p.src) return std::nullopt;
    std::vector<size_t> walk = qq.arrows;
    walk.insert(walk.end(), p.arrows.begin(), p.arrows.end());
    return by_walk.at({qq.src, walk});
  };
  // Columns of the commutator span; each is sparse (at most two entries).
  std::vector<RatVec> cols;
  auto add_col = [&](std::optional<size_t> plus, std::optional<size_t> minus) {
    RatVec col(n, Rat(0));
    if (plus) col[*plus] += 1;
    if (minus) col[*minus] -= 1;
    for (const Rat& x : col)
      if (x != 0) {
        cols.push_back(col);
        return;
      }
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      auto ij = product(i, j);
      auto ji = product(j, i);
      if (ij || ji) add_col(ij, ji);
    }
  Mat m(n, cols.size());
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t i = 0; i < n; ++i) m(i, c) = cols[c][i];
  size_t commutator_rank = rank(m);
  HH0Result res;
  res.dimension = n - commutator_rank;
  for (size_t v = 0; v < q.vertex_count(); ++v)
    res.basis_labels.push_back("e" + std::to_string(v + 1));
  return res;
}

// (dim P_i)_j = number of paths i -> j, by the composition convention above.
inline std::vector<DimVec> projective_dim_vectors(const Quiver& q) {
  PathBasis pb = path_basis(q);
  std::vector<DimVec> out;
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    DimVec d(q.vertex_count());
    for (size_t j = 0; j < q.vertex_count(); ++j) d[j] = pb.count[i][j];
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<DimVec> simple_dim_vectors(const Quiver& q) {
  std::vector<DimVec> out;
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    DimVec d(q.vertex_count(), Int(0));
    d[i] = 1;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace arq
