// Morphism spaces between representations: Hom bases, first extension
// dimensions, endomorphism algebras with their radicals, and weighted traces.
#pragma once

#include "arquiver/errors.hpp"
#include "arquiver/representation.hpp"

#include <string>
#include <vector>

namespace arq {

namespace detail {

// The intertwining constraint matrix for Hom(M, N): unknowns are the blocks
// f_i (vectorized per vertex, row-major), one equation row per arrow a: s -> t
// and per entry of N_a f_s - f_t M_a.
inline Mat hom_constraint_matrix(const Quiver& q, const Representation& m,
                                 const Representation& n) {
  size_t r = q.vertex_count();
  std::vector<size_t> offset(r + 1, 0);
  for (size_t i = 0; i < r; ++i) offset[i + 1] = offset[i] + n.dims[i] * m.dims[i];
  size_t unknowns = offset[r];
  size_t rows = 0;
  for (const Arrow& a : q.arrows()) rows += n.dims[a.tgt] * m.dims[a.src];
  Mat sys(rows, unknowns);
  size_t row0 = 0;
  for (const Arrow& a : q.arrows()) {
    const Mat& na = arrow_map(q, n, a);
    const Mat& ma = arrow_map(q, m, a);
    size_t s = a.src, t = a.tgt;
    // Equation (i, j): sum_k na(i,k) f_s(k,j) - sum_k f_t(i,k) ma(k,j) = 0.
    for (size_t i = 0; i < n.dims[t]; ++i)
      for (size_t j = 0; j < m.dims[s]; ++j) {
        size_t row = row0 + i * m.dims[s] + j;
        for (size_t k = 0; k < n.dims[s]; ++k)
          sys(row, offset[s] + k * m.dims[s] + j) += na(i, k);
        for (size_t k = 0; k < m.dims[t]; ++k)
          sys(row, offset[t] + i * m.dims[t] + k) -= ma(k, j);
      }
    row0 += n.dims[t] * m.dims[s];
  }
  return sys;
}

inline Intertwiner unvectorize(const Quiver& q, const Representation& m,
                               const Representation& n, const RatVec& v) {
  Intertwiner f;
  size_t pos = 0;
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    Mat block(n.dims[i], m.dims[i]);
    for (size_t r = 0; r < n.dims[i]; ++r)
      for (size_t c = 0; c < m.dims[i]; ++c) block(r, c) = v[pos++];
    f.push_back(std::move(block));
  }
  return f;
}

inline RatVec vectorize(const Intertwiner& f) {
  RatVec v;
  for (const Mat& b : f)
    for (size_t r = 0; r < b.rows(); ++r)
      for (size_t c = 0; c < b.cols(); ++c) v.push_back(b(r, c));
  return v;
}

}  // namespace detail

inline std::vector<Intertwiner> hom_basis(const Quiver& q, const Representation& m,
                                          const Representation& n) {
  validate_representation(q, m, "hom_basis");
  validate_representation(q, n, "hom_basis");
  Mat sys = detail::hom_constraint_matrix(q, m, n);
  std::vector<Intertwiner> basis;
  for (const RatVec& v : kernel_basis(sys)) basis.push_back(detail::unvectorize(q, m, n, v));
  return basis;
}

inline size_t hom_dim(const Quiver& q, const Representation& m, const Representation& n) {
  Mat sys = detail::hom_constraint_matrix(q, m, n);
  return sys.cols() - rank(sys);
}

// For a hereditary algebra the extension space is the cokernel of the same
// constraint map whose kernel is Hom, so one elimination serves both.
inline size_t ext1_dim(const Quiver& q, const Representation& m, const Representation& n) {
  validate_representation(q, m, "ext1_dim");
  validate_representation(q, n, "ext1_dim");
  Mat sys = detail::hom_constraint_matrix(q, m, n);
  return sys.rows() - rank(sys);
}

struct EndAlgebra {
  std::vector<Intertwiner> basis;
  std::vector<Intertwiner> radical;
  size_t dim() const { return basis.size(); }
  size_t radical_dim() const { return radical.size(); }
};

// Endomorphism algebra with its radical. The radical is the kernel of the
// trace form of the left regular representation (valid in characteristic 0)
// and is verified elementwise nilpotent before being returned.
inline EndAlgebra end_algebra(const Quiver& q, const Representation& m) {
  EndAlgebra e;
  e.basis = hom_basis(q, m, m);
  size_t n = e.basis.size();
  if (n == 0) return e;
  size_t ulen = detail::vectorize(e.basis[0]).size();
  Mat v(ulen, n);
  for (size_t j = 0; j < n; ++j) {
    RatVec col = detail::vectorize(e.basis[j]);
    for (size_t i = 0; i < ulen; ++i) v(i, j) = col[i];
  }
  auto coords = [&](const Intertwiner& f) -> RatVec {
    RatVec rhs = detail::vectorize(f);
    auto c = solve_linear(v, rhs);
    if (!c) throw std::logic_error("end_algebra: product left the span of the basis");
    return *c;
  };
  std::vector<Mat> left;  // left multiplication operators in the chosen basis
  for (size_t i = 0; i < n; ++i) {
    Mat li(n, n);
    for (size_t j = 0; j < n; ++j) {
      RatVec c = coords(compose(e.basis[i], e.basis[j]));
      for (size_t k = 0; k < n; ++k) li(k, j) = c[k];
    }
    left.push_back(std::move(li));
  }
  Mat gram(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Rat t = 0;
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) t += left[i](r, c) * left[j](c, r);
      gram(i, j) = t;
      gram(j, i) = t;
    }
  for (const RatVec& c : kernel_basis(gram)) {
    Intertwiner f;
    for (size_t i = 0; i < q.vertex_count(); ++i) f.push_back(Mat(m.dims[i], m.dims[i]));
    for (size_t j = 0; j < n; ++j)
      if (c[j] != 0) f = add_scaled(f, e.basis[j], c[j]);
    e.radical.push_back(std::move(f));
  }
  // Sanity: every radical element must be nilpotent; power bound d+1 for a
  // d-dimensional radical.
  size_t bound = e.radical.size() + 1;
  for (const Intertwiner& f : e.radical) {
    Intertwiner p = f;
    for (size_t k = 1; k < bound; ++k) p = compose(p, f);
    if (!intertwiner_is_zero(p))
      throw std::logic_error("end_algebra: radical element is not nilpotent");
  }
  return e;
}

inline bool is_indecomposable(const Quiver& q, const Representation& m) {
  validate_representation(q, m, "is_indecomposable");
  if (m.is_zero_module()) throw input_error("is_indecomposable: the zero module is neither");
  EndAlgebra e = end_algebra(q, m);
  return e.dim() - e.radical_dim() == 1;
}

// Weighted trace of an endomorphism: sum of v_i * tr(f_i).
inline Rat weighted_trace(const Quiver& q, const Weight& v, const Representation& m,
                          const Intertwiner& f) {
  if (v.size() != q.vertex_count()) throw input_error("weighted_trace: weight length mismatch");
  if (f.size() != q.vertex_count()) throw input_error("weighted_trace: block count mismatch");
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i].rows() != m.dims[i] || f[i].cols() != m.dims[i])
      throw input_error("weighted_trace: not an endomorphism of M");
  if (!intertwines(q, m, m, f))
    throw input_error("weighted_trace: not an endomorphism of M");
  Rat total = 0;
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    Rat t = 0;
    for (size_t j = 0; j < f[i].rows(); ++j) t += f[i](j, j);
    total += v[i] * t;
  }
  return total;
}

}  // namespace arq
