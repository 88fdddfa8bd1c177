// Higher-level representation operations: direct-sum decomposition by
// Fitting splits along endomorphism eigenvalues, the weighted trace-formula
// checker, random short exact sequences, and randomized materialization of
// indecomposables with a prescribed dimension vector.
#pragma once

#include "arquiver/homext.hpp"
#include "arquiver/representation.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace arq {

namespace detail {

inline Intertwiner intertwiner_power(const Intertwiner& f, size_t n) {
  Intertwiner acc;
  for (const Mat& b : f) acc.push_back(Mat::identity(b.rows()));
  for (size_t i = 0; i < n; ++i) acc = compose(f, acc);
  return acc;
}

// Monic minimal polynomial of an endomorphism, coefficients by ascending
// degree, found as the first linear dependence among vectorized powers.
inline std::vector<Rat> minimal_polynomial(const Intertwiner& f) {
  std::vector<RatVec> powers;
  Intertwiner p;
  for (const Mat& b : f) p.push_back(Mat::identity(b.rows()));
  while (true) {
    RatVec v = vectorize(p);
    if (!powers.empty()) {
      Mat lhs(v.size(), powers.size());
      for (size_t j = 0; j < powers.size(); ++j)
        for (size_t i = 0; i < v.size(); ++i) lhs(i, j) = powers[j][i];
      if (auto c = solve_linear(lhs, v)) {
        std::vector<Rat> mu(powers.size() + 1);
        for (size_t i = 0; i < powers.size(); ++i) mu[i] = -(*c)[i];
        mu[powers.size()] = 1;
        return mu;
      }
    }
    powers.push_back(std::move(v));
    p = compose(f, p);
    if (powers.size() > 1024) throw std::logic_error("minimal_polynomial: no dependence found");
  }
}

inline Rat eval_poly(const std::vector<Rat>& mu, const Rat& x) {
  Rat acc = 0;
  for (size_t i = mu.size(); i-- > 0;) acc = acc * x + mu[i];
  return acc;
}

// Small rational roots of a rational-coefficient polynomial: clear
// denominators, then scan divisors of the constant and leading integer
// coefficients up to a modest bound.
inline std::set<Rat> small_rational_roots(const std::vector<Rat>& mu) {
  std::set<Rat> roots;
  Int lcm = 1;
  for (const Rat& c : mu) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
  std::vector<Int> a;
  for (const Rat& c : mu) a.push_back(rat_num(c * Rat(lcm)));
  size_t lo = 0;
  while (lo < a.size() && a[lo] == 0) ++lo;  // strip factor x^lo
  if (lo > 0) roots.insert(Rat(0));
  if (lo >= a.size()) return roots;
  Int a0 = a[lo], ad = a.back();
  if (a0 < 0) a0 = -a0;
  if (ad < 0) ad = -ad;
  std::vector<Int> ps, qs;
  for (Int d = 1; d <= 200; ++d) {
    if (a0 % d == 0) ps.push_back(d);
    if (ad % d == 0) qs.push_back(d);
  }
  for (const Int& p : ps)
    for (const Int& q : qs)
      for (int sign : {1, -1}) {
        Rat cand = Rat(sign * p, q);
        if (eval_poly(mu, cand) == 0) roots.insert(cand);
      }
  return roots;
}

}  // namespace detail

// Split M into indecomposable direct summands. Seeded: the search order over
// splitting endomorphisms is deterministic given the generator state.
inline std::vector<Representation> decompose(const Quiver& q, const Representation& m,
                                             std::mt19937_64& rng) {
  validate_representation(q, m, "decompose");
  if (m.is_zero_module()) return {};
  EndAlgebra e = end_algebra(q, m);
  if (e.dim() - e.radical_dim() == 1) return {m};

  size_t nmax = 1;
  for (size_t d : m.dims) nmax = std::max(nmax, d);
  auto try_split = [&](const Intertwiner& f) -> std::optional<std::vector<Representation>> {
    std::set<Rat> lambdas = detail::small_rational_roots(detail::minimal_polynomial(f));
    lambdas.insert(Rat(0));
    for (const Rat& lambda : lambdas) {
      Intertwiner g = f;
      for (size_t i = 0; i < g.size(); ++i)
        g[i] = g[i] - Mat::identity(g[i].rows()).scaled(lambda);
      Intertwiner p = detail::intertwiner_power(g, nmax);
      SubspaceBases kb, ib;
      size_t ksum = 0, isum = 0;
      for (const Mat& block : p) {
        kb.push_back(kernel_basis_matrix(block));
        ib.push_back(column_space_basis(block));
        ksum += kb.back().cols();
        isum += ib.back().cols();
      }
      if (ksum == 0 || isum == 0) continue;
      Representation sub1 = restrict_to_subspaces(q, m, kb);
      Representation sub2 = restrict_to_subspaces(q, m, ib);
      std::vector<Representation> out = decompose(q, sub1, rng);
      std::vector<Representation> rest = decompose(q, sub2, rng);
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    }
    return std::nullopt;
  };

  for (const Intertwiner& f : e.basis)
    if (auto r = try_split(f)) return *r;
  for (const Intertwiner& f : e.basis)
    for (const Intertwiner& g : e.basis)
      if (auto r = try_split(compose(f, g))) return *r;
  std::uniform_int_distribution<long long> coeff(-4, 4);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Intertwiner f;
    for (size_t i = 0; i < q.vertex_count(); ++i) f.push_back(Mat(m.dims[i], m.dims[i]));
    for (const Intertwiner& b : e.basis) f = add_scaled(f, b, Rat(coeff(rng)));
    if (auto r = try_split(f)) return *r;
  }
  throw std::logic_error("decompose: failed to split a module with non-local endomorphism algebra");
}

struct TraceCheckReport {
  bool degenerate = false;
  size_t samples_checked = 0;
  std::string note;
};

// Check the weighted trace formula on an indecomposable M: radical
// endomorphisms have vanishing weighted trace, and the identity's weighted
// trace equals the weighted dimension. When the weighted dimension is zero
// the weight is degenerate for M and every endomorphism must vanish under it.
inline TraceCheckReport trace_formula_check(const Quiver& q, const Weight& v,
                                            const Representation& m, std::mt19937_64& rng,
                                            size_t samples) {
  if (v.size() != q.vertex_count()) throw input_error("trace_formula_check: weight length mismatch");
  validate_representation(q, m, "trace_formula_check");
  if (m.is_zero_module()) throw input_error("trace_formula_check: zero module");
  EndAlgebra e = end_algebra(q, m);
  if (e.dim() - e.radical_dim() != 1)
    throw input_error("trace_formula_check: module is not indecomposable");
  Rat wdim = 0;
  for (size_t i = 0; i < q.vertex_count(); ++i) wdim += v[i] * Rat(m.dims[i]);
  TraceCheckReport rep;
  rep.degenerate = (wdim == 0);
  std::uniform_int_distribution<long long> coeff(-5, 5);
  auto random_combo = [&](const std::vector<Intertwiner>& basis) {
    Intertwiner f;
    for (size_t i = 0; i < q.vertex_count(); ++i) f.push_back(Mat(m.dims[i], m.dims[i]));
    for (const Intertwiner& b : basis) f = add_scaled(f, b, Rat(coeff(rng)));
    return f;
  };
  if (rep.degenerate) {
    rep.note = "degenerate weight for M";
    // Weighted trace kills the identity too, hence all of End(M).
    for (size_t s = 0; s < samples; ++s) {
      if (weighted_trace(q, v, m, random_combo(e.basis)) != 0)
        throw identity_violation("TRACE", "degenerate weight with nonvanishing trace on End(M)");
      ++rep.samples_checked;
    }
  } else {
    if (weighted_trace(q, v, m, identity_intertwiner(m)) != wdim)
      throw identity_violation("TRACE", "identity trace differs from weighted dimension");
    for (size_t s = 0; s < samples; ++s) {
      if (!e.radical.empty() &&
          weighted_trace(q, v, m, random_combo(e.radical)) != 0)
        throw identity_violation("TRACE", "radical endomorphism with nonzero weighted trace");
      ++rep.samples_checked;
    }
  }
  return rep;
}

struct ShortExactSequence {
  Representation sub, mid, quot;
  Intertwiner inclusion;   // sub -> mid
  Intertwiner surjection;  // mid -> quot
};

// Draw a random surjection mid ->> quot and take its kernel. Returns nothing
// if the draw fails to produce a vertexwise surjective combination.
inline std::optional<ShortExactSequence> random_short_exact(const Quiver& q,
                                                            std::mt19937_64& rng,
                                                            size_t maxdim = 3) {
  std::uniform_int_distribution<size_t> dmid(0, maxdim);
  std::vector<size_t> mdims(q.vertex_count()), ndims(q.vertex_count());
  for (size_t i = 0; i < q.vertex_count(); ++i) {
    mdims[i] = dmid(rng);
    ndims[i] = mdims[i] == 0 ? 0 : std::uniform_int_distribution<size_t>(0, mdims[i])(rng);
  }
  Representation mid = random_representation(q, mdims, rng);
  Representation quot = random_representation(q, ndims, rng);
  std::vector<Intertwiner> basis = hom_basis(q, mid, quot);
  if (basis.empty() && quot.total_dim() > 0) return std::nullopt;
  std::uniform_int_distribution<long long> coeff(-5, 5);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Intertwiner f;
    for (size_t i = 0; i < q.vertex_count(); ++i) f.push_back(Mat(ndims[i], mdims[i]));
    for (const Intertwiner& b : basis) f = add_scaled(f, b, Rat(coeff(rng)));
    bool onto = true;
    for (size_t i = 0; i < q.vertex_count(); ++i)
      if (rank(f[i]) != ndims[i]) onto = false;
    if (!onto) continue;
    ShortExactSequence ses;
    ses.mid = mid;
    ses.quot = quot;
    SubquotientPair ker = kernel_representation(q, mid, f);
    ses.sub = ker.sub;
    for (size_t i = 0; i < q.vertex_count(); ++i) ses.inclusion.push_back(ker.bases[i]);
    ses.surjection = f;
    return ses;
  }
  return std::nullopt;
}

// Random representation with the given dimension vector, redrawn until
// indecomposable; empty if the budget runs out.
inline std::optional<Representation> random_indecomposable(const Quiver& q, const DimVec& d,
                                                           std::mt19937_64& rng,
                                                           size_t tries = 200) {
  std::vector<size_t> dims;
  for (const Int& x : d) {
    if (x < 0) throw input_error("random_indecomposable: negative dimension");
    dims.push_back(static_cast<size_t>(x.convert_to<long long>()));
  }
  for (size_t t = 0; t < tries; ++t) {
    Representation m = random_representation(q, dims, rng);
    if (m.is_zero_module()) return std::nullopt;
    if (is_indecomposable(q, m)) return m;
  }
  return std::nullopt;
}

}  // namespace arq
