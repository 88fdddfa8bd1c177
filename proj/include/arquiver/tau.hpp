// The Auslander-Reiten translate for representations of an acyclic quiver,
// computed from a minimal projective presentation: radical/top, projective
// cover, kernel, transpose over the opposite quiver, then vector-space dual.
// Projective direct summands of the input are annihilated silently.
#pragma once

#include "arquiver/homext.hpp"
#include "arquiver/representation.hpp"

#include <map>
#include <utility>
#include <vector>

namespace arq {

inline Quiver opposite(const Quiver& q) {
  std::vector<Arrow> rev;
  for (const Arrow& a : q.arrows()) rev.push_back(Arrow{a.name, a.tgt, a.src});
  return Quiver(q.vertex_count(), rev);
}

namespace detail {

using WalkKey = std::pair<size_t, std::vector<size_t>>;

inline std::map<WalkKey, size_t> path_index_map(const PathBasis& pb) {
  std::map<WalkKey, size_t> m;
  for (size_t i = 0; i < pb.paths.size(); ++i)
    m.emplace(WalkKey{pb.paths[i].src, pb.paths[i].arrows}, i);
  return m;
}

// The indecomposable projective at a vertex, with its canonical path basis:
// the space at j is spanned by the paths vertex -> j in path-basis order, and
// an arrow acts by appending itself to the walk.
struct ProjectiveRep {
  size_t vertex = 0;
  Representation rep;
  std::vector<std::vector<size_t>> basis;          // per vertex: global path ids
  std::vector<std::map<size_t, size_t>> position;  // per vertex: global id -> column
};

inline ProjectiveRep projective_rep(const Quiver& q, const PathBasis& pb,
                                    const std::map<WalkKey, size_t>& index, size_t vertex) {
  ProjectiveRep p;
  p.vertex = vertex;
  size_t r = q.vertex_count();
  p.basis.resize(r);
  p.position.resize(r);
  for (size_t i = 0; i < pb.paths.size(); ++i)
    if (pb.paths[i].src == vertex) {
      size_t j = pb.paths[i].tgt;
      p.position[j].emplace(i, p.basis[j].size());
      p.basis[j].push_back(i);
    }
  p.rep.dims.resize(r);
  for (size_t j = 0; j < r; ++j) p.rep.dims[j] = p.basis[j].size();
  for (size_t ai = 0; ai < q.arrows().size(); ++ai) {
    const Arrow& a = q.arrows()[ai];
    Mat mat(p.rep.dims[a.tgt], p.rep.dims[a.src]);
    for (size_t c = 0; c < p.basis[a.src].size(); ++c) {
      const Path& path = pb.paths[p.basis[a.src][c]];
      std::vector<size_t> walk = path.arrows;
      walk.push_back(ai);
      size_t global = index.at(WalkKey{path.src, walk});
      mat(p.position[a.tgt].at(global), c) = 1;
    }
    p.rep.maps.emplace(a.name, std::move(mat));
  }
  return p;
}

// A finite direct sum of indecomposable projectives with per-summand offsets.
struct ProjectiveSum {
  std::vector<ProjectiveRep> parts;
  Representation rep;
  std::vector<std::vector<size_t>> offsets;  // offsets[k][j]

  void build(const Quiver& q) {
    size_t r = q.vertex_count();
    rep.dims.assign(r, 0);
    rep.maps.clear();
    offsets.assign(parts.size(), std::vector<size_t>(r, 0));
    for (size_t k = 0; k < parts.size(); ++k)
      for (size_t j = 0; j < r; ++j) {
        offsets[k][j] = rep.dims[j];
        rep.dims[j] += parts[k].rep.dims[j];
      }
    for (const Arrow& a : q.arrows()) {
      Mat mat(rep.dims[a.tgt], rep.dims[a.src]);
      for (size_t k = 0; k < parts.size(); ++k) {
        const Mat& block = arrow_map(q, parts[k].rep, a);
        for (size_t i = 0; i < block.rows(); ++i)
          for (size_t j2 = 0; j2 < block.cols(); ++j2)
            mat(offsets[k][a.tgt] + i, offsets[k][a.src] + j2) = block(i, j2);
      }
      rep.maps.emplace(a.name, std::move(mat));
    }
  }
};

struct CoverData {
  ProjectiveSum cover;
  Intertwiner map;  // cover.rep -> M, surjective
};

inline SubspaceBases radical_bases(const Quiver& q, const Representation& m) {
  SubspaceBases bases;
  for (size_t t = 0; t < q.vertex_count(); ++t) {
    Mat stacked(m.dims[t], 0);
    for (const Arrow& a : q.arrows())
      if (a.tgt == t) stacked = Mat::hcat(stacked, arrow_map(q, m, a));
    bases.push_back(column_space_basis(stacked));
  }
  return bases;
}

// Projective cover of M: one summand per top generator, the map sending each
// basis path p of a summand at vertex i to (action of p) applied to the
// chosen generator.
inline CoverData projective_cover(const Quiver& q, const PathBasis& pb,
                                  const std::map<WalkKey, size_t>& index,
                                  const Representation& m) {
  CoverData out;
  SubspaceBases rad = radical_bases(q, m);
  std::vector<std::pair<size_t, RatVec>> generators;  // (vertex, vector in M)
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    Mat comp = subspace_completion(rad[i]);
    for (size_t c = 0; c < comp.cols(); ++c) {
      RatVec g(m.dims[i]);
      for (size_t r = 0; r < m.dims[i]; ++r) g[r] = comp(r, c);
      generators.emplace_back(i, std::move(g));
      out.cover.parts.push_back(projective_rep(q, pb, index, i));
    }
  }
  out.cover.build(q);
  for (size_t j = 0; j < q.vertex_count(); ++j) {
    Mat cj(m.dims[j], out.cover.rep.dims[j]);
    for (size_t k = 0; k < out.cover.parts.size(); ++k) {
      const ProjectiveRep& part = out.cover.parts[k];
      const RatVec& g = generators[k].second;
      for (size_t c = 0; c < part.basis[j].size(); ++c) {
        Mat action = eval_path(q, m, pb.paths[part.basis[j][c]]);
        RatVec col = action.apply(g);
        for (size_t r = 0; r < m.dims[j]; ++r) cj(r, out.cover.offsets[k][j] + c) = col[r];
      }
    }
    if (rank(cj) != m.dims[j])
      throw std::logic_error("projective_cover: cover map is not surjective");
    out.map.push_back(std::move(cj));
  }
  return out;
}

}  // namespace detail

// The translate. Accepts any finite-dimensional representation; the result
// of a projective input is the zero representation.
inline Representation tau(const Quiver& q, const Representation& m) {
  validate_representation(q, m, "tau");
  if (m.is_zero_module()) return zero_representation(q);
  PathBasis pb = path_basis(q);
  auto index = detail::path_index_map(pb);

  // Minimal presentation P1 -> P0 -> M -> 0.
  detail::CoverData c0 = detail::projective_cover(q, pb, index, m);
  SubspaceBases kbases;
  for (size_t j = 0; j < q.vertex_count(); ++j)
    kbases.push_back(kernel_basis_matrix(c0.map[j]));
  Representation k = restrict_to_subspaces(q, c0.cover.rep, kbases);
  detail::CoverData c1 = detail::projective_cover(q, pb, index, k);
  for (size_t j = 0; j < q.vertex_count(); ++j)
    if (c1.cover.rep.dims[j] != k.dims[j])
      throw std::logic_error("tau: kernel of a cover is not projective");

  // Presentation components: for target summand k at vertex a_k and source
  // summand l at vertex b_l, a combination of paths a_k -> b_l, read off the
  // image of the summand generator in path coordinates.
  size_t nsrc = c1.cover.parts.size();  // summands of P1
  size_t ntgt = c0.cover.parts.size();  // summands of P0
  // component[l][k] : list of (global path id, coefficient)
  std::vector<std::vector<std::vector<std::pair<size_t, Rat>>>> component(
      nsrc, std::vector<std::vector<std::pair<size_t, Rat>>>(ntgt));
  for (size_t l = 0; l < nsrc; ++l) {
    size_t bl = c1.cover.parts[l].vertex;
    // Generator of summand l: the trivial path column (position 0 at its own
    // vertex, paths being ordered by length).
    size_t gcol = c1.cover.offsets[l][bl];
    for (size_t row = 0; row < c0.cover.rep.dims[bl]; ++row) {
      // psi at vertex bl = inclusion * cover-of-K map.
      Rat val = 0;
      for (size_t mid = 0; mid < k.dims[bl]; ++mid)
        val += kbases[bl](row, mid) * c1.map[bl](mid, gcol);
      if (val == 0) continue;
      // Locate which P0 summand this row belongs to.
      size_t kk = 0;
      while (kk + 1 < ntgt && c0.cover.offsets[kk + 1][bl] <= row) ++kk;
      size_t local = row - c0.cover.offsets[kk][bl];
      component[l][kk].emplace_back(c0.cover.parts[kk].basis[bl][local], val);
    }
  }

  // Transpose side: right projectives are projectives of the opposite quiver,
  // paths reversing walkwise. The transposed map sends a path to (reversed
  // component path) followed by it.
  Quiver qop = opposite(q);
  PathBasis pbop = path_basis(qop);
  auto indexop = detail::path_index_map(pbop);
  detail::ProjectiveSum src;  // indexed by P0 summands
  for (size_t kk = 0; kk < ntgt; ++kk)
    src.parts.push_back(detail::projective_rep(qop, pbop, indexop, c0.cover.parts[kk].vertex));
  src.build(qop);
  detail::ProjectiveSum amb;  // indexed by P1 summands
  for (size_t l = 0; l < nsrc; ++l)
    amb.parts.push_back(detail::projective_rep(qop, pbop, indexop, c1.cover.parts[l].vertex));
  amb.build(qop);

  SubspaceBases images;
  for (size_t j = 0; j < q.vertex_count(); ++j) {
    Mat tj(amb.rep.dims[j], src.rep.dims[j]);
    for (size_t kk = 0; kk < ntgt; ++kk) {
      const detail::ProjectiveRep& sp = src.parts[kk];
      for (size_t c = 0; c < sp.basis[j].size(); ++c) {
        const Path& v = pbop.paths[sp.basis[j][c]];
        for (size_t l = 0; l < nsrc; ++l)
          for (const auto& [zid, coeff] : component[l][kk]) {
            const Path& z = pb.paths[zid];
            std::vector<size_t> walk(z.arrows.rbegin(), z.arrows.rend());
            walk.insert(walk.end(), v.arrows.begin(), v.arrows.end());
            size_t global = indexop.at(detail::WalkKey{z.tgt, walk});
            tj(amb.offsets[l][j] + amb.parts[l].position[j].at(global),
               src.offsets[kk][j] + c) += coeff;
          }
      }
    }
    images.push_back(column_space_basis(tj));
  }
  QuotientData tr = quotient_by_subspaces(qop, amb.rep, images);

  // Dualize: same dimensions, arrow maps transposed back to the original
  // orientation.
  Representation result;
  result.dims = tr.rep.dims;
  for (const Arrow& a : q.arrows())
    result.maps.emplace(a.name, arrow_map(qop, tr.rep, qop.arrow_by_name(a.name)).transpose());
  validate_representation(q, result, "tau result");
  return result;
}

}  // namespace arq
