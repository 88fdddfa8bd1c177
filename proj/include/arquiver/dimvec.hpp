// Integer class vectors in the simple-module basis, plus conversions to and
// from the rational world. Entries may go negative for general classes;
// module dimension vectors are the nonnegative ones.
#pragma once

#include "arquiver/matrix.hpp"
#include "arquiver/rational.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arq {

using DimVec = std::vector<Int>;
using Weight = std::vector<Rat>;  // length-r rational weight vector

inline DimVec dim_add(const DimVec& a, const DimVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dim vector length mismatch");
  DimVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline DimVec dim_sub(const DimVec& a, const DimVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dim vector length mismatch");
  DimVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline bool dim_is_zero(const DimVec& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

inline RatVec to_rat_vec(const DimVec& d) {
  RatVec v(d.size());
  for (size_t i = 0; i < d.size(); ++i) v[i] = Rat(d[i]);
  return v;
}

// Apply a rational matrix to an integer class; every K-theory operator in this
// library maps the integer lattice to itself, so a fractional result means the
// caller's matrix was wrong — treat it as an internal failure, not user error.
inline DimVec apply_integral(const Mat& m, const DimVec& d) {
  RatVec image = m.apply(to_rat_vec(d));
  DimVec out(image.size());
  for (size_t i = 0; i < image.size(); ++i) {
    if (rat_den(image[i]) != 1)
      throw std::logic_error("integral class transport produced a non-integer");
    out[i] = rat_num(image[i]);
  }
  return out;
}

inline std::string dim_to_string(const DimVec& d) {
  std::string s;
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += int_to_string(d[i]);
  }
  return s;
}

inline std::string weight_to_string(const Weight& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += rat_to_string(w[i]);
  }
  return s;
}

// Comma-separated integers, e.g. "1,0,2".
inline std::optional<DimVec> dim_parse(const std::string& text) {
  DimVec out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto v = int_parse(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// Comma-separated rationals, e.g. "1,1/2,-3".
inline std::optional<Weight> weight_parse(const std::string& text) {
  Weight out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto v = rat_parse(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace arq
