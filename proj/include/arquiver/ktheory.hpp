// Class-level numerics on the Grothendieck group of an acyclic path algebra:
// Cartan and Coxeter matrices, the Euler-Ringel form, weighted Euler
// characteristics, Serre/translate transport of classes, dual-class formulas,
// the Chern embedding, the Mukai pairing, positive roots and regular weights.
//
// Matrix conventions (column classes in the simple basis):
//   C[i][j]   = dim e_i A e_j = number of paths j -> i
//   phi       = -C^t C^{-1}        (class action of the shifted Serre functor)
//   psi       = phi^{-t}           (the right-module counterpart)
//   phi_right = -C^{-1} C^t        (computed independently; must equal psi)
//   <d,e>     = sum_i d_i e_i - sum_{a: s->t} d_s e_t
#pragma once

#include "arquiver/dimvec.hpp"
#include "arquiver/errors.hpp"
#include "arquiver/matrix.hpp"
#include "arquiver/quiver.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace arq {

inline Mat cartan_matrix(const Quiver& q) {
  PathBasis pb = path_basis(q);
  size_t r = q.vertex_count();
  Mat c(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) c(i, j) = Rat(static_cast<long long>(pb.count[j][i]));
  return c;
}

struct CoxeterData {
  Mat cartan;
  Mat phi;
  Mat phi_inverse;
  Mat psi;        // phi^{-t}
  Mat phi_right;  // -C^{-1} C^t, kept separate so the psi identity stays checkable
};

inline CoxeterData coxeter(const Quiver& q) {
  CoxeterData cd;
  cd.cartan = cartan_matrix(q);
  Mat cinv = inverse(cd.cartan);
  cd.phi = -(cd.cartan.transpose() * cinv);
  cd.phi_inverse = inverse(cd.phi);
  cd.psi = cd.phi_inverse.transpose();
  cd.phi_right = -(cinv * cd.cartan.transpose());
  return cd;
}

// Euler-Ringel form on rational class vectors (hereditary two-term formula).
inline Rat euler_form_rat(const Quiver& q, const RatVec& d, const RatVec& e) {
  if (d.size() != q.vertex_count() || e.size() != q.vertex_count())
    throw input_error("euler form: class length does not match quiver");
  Rat total(0);
  for (size_t i = 0; i < d.size(); ++i) total += d[i] * e[i];
  for (const Arrow& a : q.arrows()) total -= d[a.src] * e[a.tgt];
  return total;
}

inline Rat euler_form(const Quiver& q, const DimVec& d, const DimVec& e) {
  return euler_form_rat(q, to_rat_vec(d), to_rat_vec(e));
}

inline Rat weighted_euler(const Weight& v, const DimVec& d) {
  if (v.size() != d.size()) throw input_error("weight/class length mismatch");
  Rat total(0);
  for (size_t i = 0; i < v.size(); ++i) total += v[i] * Rat(d[i]);
  return total;
}

// Class transport along the Serre functor and the translate:
//   [nu M] = -phi [M],   [nu_1 M] = phi [M],   [nu_1^{-1} M] = phi^{-1} [M].
inline DimVec nu_class(const CoxeterData& cd, const DimVec& d) {
  return apply_integral(-cd.phi, d);
}
inline DimVec nu1_class(const CoxeterData& cd, const DimVec& d) {
  return apply_integral(cd.phi, d);
}
inline DimVec nu1_inv_class(const CoxeterData& cd, const DimVec& d) {
  return apply_integral(cd.phi_inverse, d);
}

// Dual-class formulas. A left class d dualizes to -phi^{-1} d (read as a row
// vector on the other side, returned here as the coordinate vector); a right
// class e dualizes to -(e^t psi)^t = -psi^t e.
inline DimVec left_dual_class(const CoxeterData& cd, const DimVec& d) {
  return apply_integral(-cd.phi_inverse, d);
}
inline DimVec right_dual_class(const CoxeterData& cd, const DimVec& e) {
  return apply_integral(-cd.psi.transpose(), e);
}

// K-class embedding into the weight space (coordinates kept in the simple
// basis; the degree-zero commutator quotient has the same coordinates).
inline Weight chern(const DimVec& d) {
  Weight w(d.size());
  for (size_t i = 0; i < d.size(); ++i) w[i] = Rat(d[i]);
  return w;
}

// Mukai pairing on weights, defined so that pairing the classes of two modules
// gives the Euler form with the arguments swapped:
//   mukai(ch M, ch N) = <[N], [M]>.
inline Rat mukai_pairing(const Quiver& q, const Weight& x, const Weight& y) {
  if (x.size() != q.vertex_count() || y.size() != q.vertex_count())
    throw input_error("mukai pairing: weight length does not match quiver");
  return euler_form_rat(q, y, x);
}

// ---- Dynkin classification and positive roots -------------------------------

enum class DynkinFamily { A, D, E };

struct DynkinType {
  DynkinFamily family;
  size_t n;  // A_n, D_n, E_n
  std::string name() const {
    const char* f = family == DynkinFamily::A ? "A" : family == DynkinFamily::D ? "D" : "E";
    return f + std::to_string(n);
  }
};

// Classify the underlying undirected graph, or explain why it is not Dynkin.
inline std::optional<DynkinType> dynkin_type(const Quiver& q) {
  size_t r = q.vertex_count();
  // Simply laced Dynkin graphs are trees without parallel edges.
  if (q.arrows().size() != r - 1) return std::nullopt;
  std::vector<std::vector<size_t>> adj(r);
  std::set<std::pair<size_t, size_t>> seen;
  for (const Arrow& a : q.arrows()) {
    if (a.src == a.tgt) return std::nullopt;
    auto key = std::minmax(a.src, a.tgt);
    if (!seen.insert({key.first, key.second}).second) return std::nullopt;  // parallel edge
    adj[a.src].push_back(a.tgt);
    adj[a.tgt].push_back(a.src);
  }
  // Connectivity.
  std::vector<bool> vis(r, false);
  std::vector<size_t> stack{0};
  vis[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    for (size_t w : adj[v])
      if (!vis[w]) {
        vis[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != r) return std::nullopt;
  // Degree profile.
  size_t deg3 = 0, center = 0;
  for (size_t v = 0; v < r; ++v) {
    if (adj[v].size() >= 4) return std::nullopt;
    if (adj[v].size() == 3) {
      ++deg3;
      center = v;
    }
  }
  if (deg3 == 0) return DynkinType{DynkinFamily::A, r};
  if (deg3 > 1) return std::nullopt;
  // Arm lengths from the unique branch vertex.
  std::vector<size_t> arms;
  for (size_t start : adj[center]) {
    size_t len = 1, prev = center, cur = start;
    while (adj[cur].size() == 2) {
      size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    if (adj[cur].size() != 1) return std::nullopt;  // only happens on malformed input
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return DynkinType{DynkinFamily::D, r};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
    return DynkinType{DynkinFamily::E, r};
  return std::nullopt;
}

inline DynkinType require_dynkin(const Quiver& q, const std::string& where) {
  auto t = dynkin_type(q);
  if (!t)
    throw unsupported_error(where +
                            ": quiver is not of Dynkin type (A/D/E tree); "
                            "indecomposables are not finitely enumerable here");
  return *t;
}

// All positive roots of the underlying diagram, by closing the simple roots
// under the reflections s_i(d) = d - (d, alpha_i) alpha_i of the symmetrized
// form; order: ascending (entry sum, coordinates).
inline std::vector<DimVec> positive_roots(const Quiver& q) {
  require_dynkin(q, "positive_roots");
  size_t r = q.vertex_count();
  auto reflect = [&](const DimVec& d, size_t i) {
    // (d, alpha_i) = 2 d_i - sum over edges at i of the neighbor coordinate.
    Int pairing = 2 * d[i];
    for (const Arrow& a : q.arrows()) {
      if (a.src == i) pairing -= d[a.tgt];
      if (a.tgt == i) pairing -= d[a.src];
    }
    DimVec out = d;
    out[i] -= pairing;
    return out;
  };
  std::set<DimVec> all;  // closure under reflections (roots of both signs)
  std::vector<DimVec> frontier;
  for (size_t i = 0; i < r; ++i) {
    DimVec simple(r, Int(0));
    simple[i] = 1;
    all.insert(simple);
    frontier.push_back(simple);
  }
  while (!frontier.empty()) {
    std::vector<DimVec> next;
    for (const DimVec& d : frontier)
      for (size_t i = 0; i < r; ++i) {
        DimVec s = reflect(d, i);
        if (all.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  std::vector<DimVec> positive;
  for (const DimVec& d : all) {
    bool nonneg = true;
    for (const Int& x : d)
      if (x < 0) nonneg = false;
    if (nonneg && !dim_is_zero(d)) positive.push_back(d);
  }
  std::sort(positive.begin(), positive.end(), [](const DimVec& a, const DimVec& b) {
    Int ha(0), hb(0);
    for (const Int& x : a) ha += x;
    for (const Int& x : b) hb += x;
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return positive;
}

struct RegularityReport {
  bool regular = false;
  std::optional<DimVec> witness;  // a root on which the weight vanishes
};

// A weight is regular when it is nonzero on the class of every indecomposable;
// for Dynkin quivers those classes are exactly the positive roots.
inline RegularityReport is_regular(const Quiver& q, const Weight& v) {
  require_dynkin(q, "is_regular");
  if (v.size() != q.vertex_count()) throw input_error("weight length does not match quiver");
  for (const DimVec& root : positive_roots(q)) {
    if (weighted_euler(v, root) == 0) return {false, root};
  }
  return {true, std::nullopt};
}

// Exact rational eigencheck: lambda with psi v = lambda v, if one exists.
// The zero weight is rejected (no eigenvalue contract for it).
inline std::optional<Rat> psi_eigencheck(const CoxeterData& cd, const Weight& v) {
  if (v.size() != cd.psi.rows()) throw input_error("weight length does not match quiver");
  bool all_zero = true;
  for (const Rat& x : v)
    if (x != 0) all_zero = false;
  if (all_zero) return std::nullopt;
  RatVec image = cd.psi.apply(v);
  size_t lead = 0;
  while (v[lead] == 0) {
    if (image[lead] != 0) return std::nullopt;
    ++lead;
  }
  Rat lambda = image[lead] / v[lead];
  for (size_t i = 0; i < v.size(); ++i)
    if (image[i] != lambda * v[i]) return std::nullopt;
  return lambda;
}

}  // namespace arq
