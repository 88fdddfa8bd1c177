// Mesh knitting of the Auslander-Reiten quiver at dimension-vector level for
// Dynkin path algebras: start from the projectives, repeatedly produce
// translate-inverse classes by mesh additivity, stop each ray at an
// injective. Node classes are verified against the positive-root oracle and
// the final count against the root count.
#pragma once

#include "arquiver/errors.hpp"
#include "arquiver/ktheory.hpp"
#include "arquiver/repops.hpp"
#include "arquiver/tau.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arq {

struct ARNode {
  size_t id = 0;
  DimVec dims;
  bool projective = false;
  bool injective = false;
  size_t orbit = 0;  // id of the projective starting this translate orbit
  size_t slice = 0;  // translate-inverse power from that projective
};

struct ARMesh {
  size_t src = 0, dst = 0;
  size_t mult = 1;
};

struct ARQuiver {
  std::vector<ARNode> nodes;
  std::vector<ARMesh> arrows;
  std::vector<std::pair<size_t, size_t>> tau_links;  // (node, its translate)

  std::vector<std::pair<size_t, size_t>> outs(size_t id) const {
    std::vector<std::pair<size_t, size_t>> v;
    for (const ARMesh& a : arrows)
      if (a.src == id) v.emplace_back(a.dst, a.mult);
    return v;
  }
  std::vector<std::pair<size_t, size_t>> ins(size_t id) const {
    std::vector<std::pair<size_t, size_t>> v;
    for (const ARMesh& a : arrows)
      if (a.dst == id) v.emplace_back(a.src, a.mult);
    return v;
  }
  std::optional<size_t> successor(size_t id) const {  // the translate-inverse node
    for (const auto& [node, pred] : tau_links)
      if (pred == id) return node;
    return std::nullopt;
  }
  std::optional<size_t> predecessor(size_t id) const {  // the translate node
    for (const auto& [node, pred] : tau_links)
      if (node == id) return pred;
    return std::nullopt;
  }
};

inline ARQuiver knit(const Quiver& q) {
  require_dynkin(q, "knit");
  std::vector<DimVec> roots = positive_roots(q);
  std::set<DimVec> rootset(roots.begin(), roots.end());

  ARQuiver ar;
  std::vector<DimVec> proj = projective_dim_vectors(q);
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    ARNode n;
    n.id = i;
    n.dims = proj[i];
    n.projective = true;
    n.orbit = i;
    ar.nodes.push_back(std::move(n));
  }
  for (size_t i = 0; i < q.vertex_count(); ++i)
    for (size_t j = 0; j < q.vertex_count(); ++j)
      if (size_t m = q.arrow_multiplicity(i, j); m > 0)
        ar.arrows.push_back(ARMesh{j, i, m});  // radical inclusion P_j -> P_i

  std::vector<bool> processed;
  processed.assign(ar.nodes.size(), false);
  while (true) {
    size_t x = ar.nodes.size();
    for (size_t id = 0; id < ar.nodes.size(); ++id) {
      if (processed[id]) continue;
      bool ready = true;
      for (const auto& [src, mult] : ar.ins(id))
        if (!processed[src]) ready = false;
      if (ready) {
        x = id;
        break;
      }
    }
    if (x == ar.nodes.size()) {
      bool done = true;
      for (bool p : processed)
        if (!p) done = false;
      if (!done) throw std::logic_error("knit: worklist deadlock");
      break;
    }

    DimVec candidate(q.vertex_count(), Int(0));
    for (const auto& [dst, mult] : ar.outs(x))
      for (size_t i = 0; i < q.vertex_count(); ++i)
        candidate[i] += Int(static_cast<long long>(mult)) * ar.nodes[dst].dims[i];
    bool negative = false, zero = true;
    for (size_t i = 0; i < q.vertex_count(); ++i) {
      candidate[i] -= ar.nodes[x].dims[i];
      if (candidate[i] < 0) negative = true;
      if (candidate[i] != 0) zero = false;
    }
    if (negative || zero) {
      ar.nodes[x].injective = true;
    } else {
      if (!rootset.count(candidate))
        throw std::logic_error("knit: mesh produced a class that is not a positive root");
      ARNode n;
      n.id = ar.nodes.size();
      n.dims = candidate;
      n.orbit = ar.nodes[x].orbit;
      n.slice = ar.nodes[x].slice + 1;
      for (const auto& [dst, mult] : ar.outs(x)) ar.arrows.push_back(ARMesh{dst, n.id, mult});
      ar.tau_links.emplace_back(n.id, x);
      ar.nodes.push_back(std::move(n));
      processed.push_back(false);
    }
    processed[x] = true;
  }

  if (ar.nodes.size() != roots.size())
    throw std::logic_error("knit: node count differs from the positive-root count");
  return ar;
}

struct ARSequenceClasses {
  size_t start = 0;                                 // the translate, left end
  std::vector<std::pair<size_t, size_t>> middles;   // (node id, multiplicity)
  size_t end = 0;                                   // the translate-inverse, right end
};

// Class-level data of the almost split sequence starting at a non-injective
// node: its middle terms are the mesh successors, the right end the
// translate-inverse node.
inline ARSequenceClasses ar_sequence_classes(const ARQuiver& ar, size_t id) {
  if (id >= ar.nodes.size()) throw input_error("ar_sequence_classes: no such node");
  if (ar.nodes[id].injective)
    throw input_error("ar_sequence_classes: node is injective, no successor exists");
  auto succ = ar.successor(id);
  if (!succ) throw std::logic_error("ar_sequence_classes: non-injective node lacks a successor");
  ARSequenceClasses s;
  s.start = id;
  s.middles = ar.outs(id);
  s.end = *succ;
  return s;
}

inline std::string format_ar_quiver(const ARQuiver& ar) {
  std::string out;
  for (const ARNode& n : ar.nodes) {
    out += "node " + std::to_string(n.id) + " " + dim_to_string(n.dims) + " ";
    if (n.projective && n.injective)
      out += "PI";
    else if (n.projective)
      out += "P";
    else if (n.injective)
      out += "I";
    else
      out += "-";
    out += "\n";
  }
  for (const ARMesh& a : ar.arrows)
    out += "mesh " + std::to_string(a.src) + " " + std::to_string(a.dst) + " " +
           std::to_string(a.mult) + "\n";
  for (const auto& [node, pred] : ar.tau_links)
    out += "tau " + std::to_string(node) + " " + std::to_string(pred) + "\n";
  return out;
}

// Cross-check the knitted translate links against the matrix-level translate:
// materialize a random indecomposable with each non-projective node's class
// and compare the translate's dimension vector with the linked node. Returns
// the number of links checked.
inline size_t verify_against_rep_engine(const Quiver& q, const ARQuiver& ar,
                                        std::mt19937_64& rng) {
  size_t checked = 0;
  for (const auto& [node, pred] : ar.tau_links) {
    auto m = random_indecomposable(q, ar.nodes[node].dims, rng);
    if (!m)
      throw std::logic_error("verify_against_rep_engine: failed to materialize an indecomposable");
    Representation t = tau(q, *m);
    if (t.dim_vector() != ar.nodes[pred].dims)
      throw identity_violation("TAU-LINK",
                               "matrix-level translate of node " + std::to_string(node) +
                                   " has class " + dim_to_string(t.dim_vector()) +
                                   ", knitting expected " + dim_to_string(ar.nodes[pred].dims));
    ++checked;
  }
  return checked;
}

}  // namespace arq
