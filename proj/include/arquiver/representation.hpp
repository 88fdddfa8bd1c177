// Quiver representations with exact rational matrices: construction, file
// I/O, path evaluation, direct sums, seeded random instances, and the
// invariant-subspace machinery (restriction, quotient, kernels and images of
// intertwiners) that the translate and the decomposition engine build on.
#pragma once

#include "arquiver/dimvec.hpp"
#include "arquiver/errors.hpp"
#include "arquiver/matrix.hpp"
#include "arquiver/quiver.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace arq {

// A representation assigns dims[v] to each vertex and to each arrow a: s -> t
// a dims[t] x dims[s] matrix. Maps absent from `maps` are zero.
struct Representation {
  std::vector<size_t> dims;
  std::map<std::string, Mat> maps;  // keyed by arrow name

  size_t total_dim() const {
    size_t n = 0;
    for (size_t d : dims) n += d;
    return n;
  }
  bool is_zero_module() const { return total_dim() == 0; }

  DimVec dim_vector() const {
    DimVec d(dims.size());
    for (size_t i = 0; i < dims.size(); ++i) d[i] = static_cast<long long>(dims[i]);
    return d;
  }
};

inline void validate_representation(const Quiver& q, const Representation& m,
                                    const std::string& where) {
  if (m.dims.size() != q.vertex_count())
    throw input_error(where + ": dims length does not match vertex count");
  for (const auto& [name, mat] : m.maps) {
    const Arrow& a = q.arrow_by_name(name);
    if (mat.rows() != m.dims[a.tgt] || mat.cols() != m.dims[a.src])
      throw input_error(where + ": map for arrow '" + name + "' has shape " +
                        std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                        ", expected " + std::to_string(m.dims[a.tgt]) + "x" +
                        std::to_string(m.dims[a.src]));
  }
}

inline const Mat& arrow_map(const Quiver& q, const Representation& m, const Arrow& a) {
  auto it = m.maps.find(a.name);
  if (it != m.maps.end()) return it->second;
  static thread_local std::map<std::pair<size_t, size_t>, Mat> zeros;
  auto key = std::make_pair(m.dims[a.tgt], m.dims[a.src]);
  auto z = zeros.find(key);
  if (z == zeros.end()) z = zeros.emplace(key, Mat(key.first, key.second)).first;
  return z->second;
}

inline Representation zero_representation(const Quiver& q) {
  Representation m;
  m.dims.assign(q.vertex_count(), 0);
  return m;
}

// File format: `dims <d1> ... <dr>`, then per arrow `map <name>` followed by
// dims[target] rows of dims[source] whitespace-separated rationals. Arrows
// without a `map` block act as zero. `#` starts a comment.
inline Representation parse_representation(const Quiver& q, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto next_content_line = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      bool blank = true;
      for (char c : line)
        if (!isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) {
        out = line;
        return true;
      }
    }
    return false;
  };
  auto fail = [&](const std::string& why) -> void {
    throw input_error("representation file line " + std::to_string(lineno) + ": " + why);
  };
  Representation m;
  std::string content;
  if (!next_content_line(content)) throw input_error("representation file is empty");
  {
    std::istringstream ls(content);
    std::string word;
    ls >> word;
    if (word != "dims") fail("expected `dims <d1> ... <dr>` first");
    long long d = 0;
    while (ls >> d) {
      if (d < 0) fail("negative dimension");
      m.dims.push_back(static_cast<size_t>(d));
    }
    if (m.dims.size() != q.vertex_count())
      fail("expected " + std::to_string(q.vertex_count()) + " dimensions");
  }
  while (next_content_line(content)) {
    std::istringstream ls(content);
    std::string word, name;
    ls >> word;
    if (word != "map") fail("expected `map <arrow>`");
    if (!(ls >> name)) fail("expected `map <arrow>`");
    std::string extra;
    if (ls >> extra) fail("trailing token `" + extra + "`");
    const Arrow& a = q.arrow_by_name(name);  // throws input_error for unknown names
    size_t rows = m.dims[a.tgt], cols = m.dims[a.src];
    Mat mat(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
      if (!next_content_line(content)) fail("unexpected end of file inside map '" + name + "'");
      std::istringstream rs(content);
      std::string cell;
      for (size_t j = 0; j < cols; ++j) {
        if (!(rs >> cell)) fail("row " + std::to_string(i + 1) + " of map '" + name +
                                "' needs " + std::to_string(cols) + " entries");
        auto v = rat_parse(cell);
        if (!v) fail("bad rational `" + cell + "`");
        mat(i, j) = *v;
      }
      if (rs >> cell) fail("row " + std::to_string(i + 1) + " of map '" + name + "' has extra entries");
    }
    if (!m.maps.emplace(name, std::move(mat)).second) fail("duplicate map '" + name + "'");
  }
  validate_representation(q, m, "representation file");
  return m;
}

inline std::string format_representation(const Quiver& q, const Representation& m) {
  std::string s = "dims";
  for (size_t d : m.dims) s += " " + std::to_string(d);
  s += "\n";
  for (const Arrow& a : q.arrows()) {
    const Mat& mat = arrow_map(q, m, a);
    s += "map " + a.name + "\n";
    s += mat.to_string();
  }
  return s;
}

// Matrix of the action of a path: compose the traversed arrow maps, first
// traversed applied first.
inline Mat eval_path(const Quiver& q, const Representation& m, const Path& p) {
  Mat acc = Mat::identity(m.dims[p.src]);
  for (size_t ai : p.arrows) acc = arrow_map(q, m, q.arrows()[ai]) * acc;
  return acc;
}

inline Representation direct_sum(const Quiver& q, const Representation& a,
                                 const Representation& b) {
  Representation s;
  s.dims.resize(q.vertex_count());
  for (size_t i = 0; i < q.vertex_count(); ++i) s.dims[i] = a.dims[i] + b.dims[i];
  for (const Arrow& ar : q.arrows()) {
    const Mat& ma = arrow_map(q, a, ar);
    const Mat& mb = arrow_map(q, b, ar);
    Mat block(s.dims[ar.tgt], s.dims[ar.src]);
    for (size_t i = 0; i < ma.rows(); ++i)
      for (size_t j = 0; j < ma.cols(); ++j) block(i, j) = ma(i, j);
    for (size_t i = 0; i < mb.rows(); ++i)
      for (size_t j = 0; j < mb.cols(); ++j) block(ma.rows() + i, ma.cols() + j) = mb(i, j);
    s.maps.emplace(ar.name, std::move(block));
  }
  return s;
}

// Seeded random representation with integer entries in [-bound, bound].
inline Representation random_representation(const Quiver& q, const std::vector<size_t>& dims,
                                            std::mt19937_64& rng, long long bound = 3) {
  Representation m;
  m.dims = dims;
  std::uniform_int_distribution<long long> entry(-bound, bound);
  for (const Arrow& a : q.arrows()) {
    Mat mat(dims[a.tgt], dims[a.src]);
    for (size_t i = 0; i < mat.rows(); ++i)
      for (size_t j = 0; j < mat.cols(); ++j) mat(i, j) = Rat(entry(rng));
    m.maps.emplace(a.name, std::move(mat));
  }
  return m;
}

// A morphism of representations: one block per vertex, blocks[i] maps
// M-space at i to N-space at i (shape N.dims[i] x M.dims[i]).
using Intertwiner = std::vector<Mat>;

inline bool intertwines(const Quiver& q, const Representation& m, const Representation& n,
                        const Intertwiner& f) {
  for (const Arrow& a : q.arrows()) {
    Mat lhs = arrow_map(q, n, a) * f[a.src];
    Mat rhs = f[a.tgt] * arrow_map(q, m, a);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

inline Intertwiner identity_intertwiner(const Representation& m) {
  Intertwiner f;
  for (size_t d : m.dims) f.push_back(Mat::identity(d));
  return f;
}

inline Intertwiner compose(const Intertwiner& g, const Intertwiner& f) {
  // g after f, blockwise.
  Intertwiner h;
  for (size_t i = 0; i < f.size(); ++i) h.push_back(g[i] * f[i]);
  return h;
}

inline Intertwiner add_scaled(const Intertwiner& f, const Intertwiner& g, const Rat& c) {
  Intertwiner h;
  for (size_t i = 0; i < f.size(); ++i) h.push_back(f[i] + g[i].scaled(c));
  return h;
}

inline bool intertwiner_is_zero(const Intertwiner& f) {
  for (const Mat& b : f)
    if (!b.is_zero()) return false;
  return true;
}

// Columnwise multi-right-hand-side solve: X with A X = B, echelon contract.
inline std::optional<Mat> solve_matrix(const Mat& a, const Mat& b) {
  Mat x(a.cols(), b.cols());
  for (size_t j = 0; j < b.cols(); ++j) {
    RatVec col(b.rows());
    for (size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    auto sol = solve_linear(a, col);
    if (!sol) return std::nullopt;
    for (size_t i = 0; i < a.cols(); ++i) x(i, j) = (*sol)[i];
  }
  return x;
}

// Column-space basis as a matrix (columns = chosen original columns).
inline Mat column_space_basis(const Mat& a) {
  Mat r = a;
  std::vector<size_t> pivots = rref_in_place(r);
  Mat b(a.rows(), pivots.size());
  for (size_t k = 0; k < pivots.size(); ++k)
    for (size_t i = 0; i < a.rows(); ++i) b(i, k) = a(i, pivots[k]);
  return b;
}

inline Mat kernel_basis_matrix(const Mat& a) {
  std::vector<RatVec> basis = kernel_basis(a);
  Mat b(a.cols(), basis.size());
  for (size_t k = 0; k < basis.size(); ++k)
    for (size_t i = 0; i < a.cols(); ++i) b(i, k) = basis[k][i];
  return b;
}

// Per-vertex subspaces of a representation, given as basis-column matrices.
using SubspaceBases = std::vector<Mat>;

// Restrict M to invariant subspaces: new arrow maps X solve B_t X = M_a B_s.
// Throws if the subspaces are not actually invariant.
inline Representation restrict_to_subspaces(const Quiver& q, const Representation& m,
                                            const SubspaceBases& bases) {
  Representation s;
  s.dims.resize(q.vertex_count());
  for (size_t i = 0; i < q.vertex_count(); ++i) s.dims[i] = bases[i].cols();
  for (const Arrow& a : q.arrows()) {
    Mat rhs = arrow_map(q, m, a) * bases[a.src];
    auto x = solve_matrix(bases[a.tgt], rhs);
    if (!x) throw std::logic_error("restrict_to_subspaces: subspace is not invariant");
    s.maps.emplace(a.name, std::move(*x));
  }
  return s;
}

// Standard-basis completion of a subspace: columns of the identity whose
// indices avoid the pivot support of B under elimination. Together [B | E]
// is invertible.
inline Mat subspace_completion(const Mat& b) {
  size_t n = b.rows();
  Mat work = Mat::hcat(b, Mat::identity(n));
  std::vector<size_t> pivots = rref_in_place(work);
  std::vector<size_t> chosen;  // identity columns that entered the pivot set
  for (size_t p : pivots)
    if (p >= b.cols()) chosen.push_back(p - b.cols());
  Mat e(n, chosen.size());
  for (size_t k = 0; k < chosen.size(); ++k) e(chosen[k], k) = 1;
  return e;
}

struct QuotientData {
  Representation rep;          // the quotient representation
  std::vector<Mat> projection; // per vertex: quotient coords from ambient coords
};

// Quotient of M by invariant subspaces. Coordinates: complete each basis B_i
// with standard vectors E_i, invert T_i = [B_i | E_i]; the projection is the
// bottom rows of T_i^{-1}, and induced maps are projection * M_a * E_s.
inline QuotientData quotient_by_subspaces(const Quiver& q, const Representation& m,
                                          const SubspaceBases& bases) {
  QuotientData out;
  out.rep.dims.resize(q.vertex_count());
  std::vector<Mat> sections;
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    Mat e = subspace_completion(bases[i]);
    Mat t = Mat::hcat(bases[i], e);
    if (t.rows() != t.cols()) throw std::logic_error("quotient: dependent subspace basis");
    Mat tinv = inverse(t);
    size_t k = bases[i].cols(), n = m.dims[i];
    Mat proj(n - k, n);
    for (size_t r = 0; r < n - k; ++r)
      for (size_t c = 0; c < n; ++c) proj(r, c) = tinv(k + r, c);
    out.rep.dims[i] = n - k;
    out.projection.push_back(std::move(proj));
    sections.push_back(std::move(e));
  }
  for (const Arrow& a : q.arrows()) {
    if (!(out.projection[a.tgt] * (arrow_map(q, m, a) * bases[a.src])).is_zero())
      throw std::logic_error("quotient_by_subspaces: subspace is not invariant");
    Mat induced = out.projection[a.tgt] * (arrow_map(q, m, a) * sections[a.src]);
    out.rep.maps.emplace(a.name, std::move(induced));
  }
  return out;
}

struct SubquotientPair {
  Representation sub;   // kernel of f, as a representation
  SubspaceBases bases;  // its embedding into M
};

// Vertexwise kernel of an intertwiner f: M -> N; automatically a subrepresentation.
inline SubquotientPair kernel_representation(const Quiver& q, const Representation& m,
                                             const Intertwiner& f) {
  SubquotientPair out;
  for (size_t i = 0; i < q.vertex_count(); ++i) out.bases.push_back(kernel_basis_matrix(f[i]));
  out.sub = restrict_to_subspaces(q, m, out.bases);
  return out;
}

}  // namespace arq
