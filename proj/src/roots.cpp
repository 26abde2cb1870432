#include "orthoscalar/roots.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "orthoscalar/error.hpp"
#include "orthoscalar/exact.hpp"

namespace orthoscalar {

namespace {

struct LexLess {
  bool operator()(const DimVector& a, const DimVector& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

bool is_positive(const DimVector& d) { return (d.array() >= 0).all() && !d.isZero(); }

}  // namespace

std::string_view to_string(RootTag t) {
  switch (t) {
    case RootTag::Real: return "Real";
    case RootTag::Imaginary: return "Imaginary";
    case RootTag::NotRoot: return "NotRoot";
  }
  return "NotRoot";
}

DimVector reflect_dim(const Quiver& q, const DimVector& d, Index vertex) {
  DimVector out = d;
  std::int64_t sum = 0;
  for (Index w : q.neighbors(vertex)) sum += d(w);
  out(vertex) = sum - d(vertex);
  return out;
}

bool has_connected_support(const Quiver& q, const DimVector& d) {
  std::vector<Index> support;
  for (Index v = 0; v < d.size(); ++v)
    if (d(v) != 0) support.push_back(v);
  if (support.empty()) return false;
  std::vector<bool> seen(static_cast<std::size_t>(d.size()), false);
  std::deque<Index> queue{support.front()};
  seen[static_cast<std::size_t>(support.front())] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Index v = queue.front();
    queue.pop_front();
    for (Index w : q.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)] || d(w) == 0) continue;
      seen[static_cast<std::size_t>(w)] = true;
      ++reached;
      queue.push_back(w);
    }
  }
  return reached == support.size();
}

RootType root_type(const Quiver& q, const DimVector& d) {
  if (d.size() != q.num_vertices()) throw Error("InvalidDims", "dimension vector has wrong length");
  if (d.isZero()) throw Error("ZeroVector", "root type of the zero vector is undefined");
  const std::int64_t value = tits_form(q, d);
  if (!has_connected_support(q, d)) return {RootTag::NotRoot, value};
  if (value == 1) return {RootTag::Real, value};
  if (value <= 0) return {RootTag::Imaginary, value};
  return {RootTag::NotRoot, value};
}

std::vector<DimVector> positive_roots(const Quiver& q) {
  if (classify(q).tag != GraphTag::Dynkin)
    throw Error("NotDynkin", "positive roots are enumerated only for Dynkin quivers");
  const Index n = q.num_vertices();
  std::set<DimVector, LexLess> roots;
  std::deque<DimVector> frontier;
  for (Index v = 0; v < n; ++v) {
    DimVector e = DimVector::Unit(n, v);
    roots.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    DimVector d = frontier.front();
    frontier.pop_front();
    for (Index v = 0; v < n; ++v) {
      DimVector r = reflect_dim(q, d, v);
      if (is_positive(r) && roots.insert(r).second) frontier.push_back(r);
    }
  }
  return {roots.begin(), roots.end()};
}

DimVector minimal_imaginary_root(const Quiver& q) {
  if (classify(q).tag != GraphTag::ExtendedDynkin)
    throw Error("NotExtendedDynkin", "the minimal imaginary root is defined for extended Dynkin quivers");
  DimVector delta = corank_one_kernel(symmetrized_form(q));
  if (delta.sum() < 0) delta = -delta;
  return delta;
}

DimVector coxeter_dim(const Quiver& q, const DimVector& d, Parity parity) {
  const Bipartition b = bipartition(q);
  DimVector out = d;
  // Same-parity vertices are pairwise non-adjacent, so reading from `d` is exact.
  for (Index v : b.members(parity)) out(v) = reflect_dim(q, d, v)(v);
  return out;
}

Character coxeter_char(const Quiver& q, const Character& chi, Parity parity) {
  const Bipartition b = bipartition(q);
  Character out = chi;
  for (Index v : b.members(opposite(parity))) {
    double sum = 0.0;
    for (Index w : q.neighbors(v)) sum += chi(w);
    out(v) = sum - chi(v);
  }
  return out;
}

std::vector<DimVector> real_roots_up_to(const Quiver& q, std::int64_t bound) {
  if (bound < 1) throw Error("InvalidBound", "enumeration bound must be at least 1");
  const Index n = q.num_vertices();
  std::vector<DimVector> out;
  DimVector d = DimVector::Zero(n);
  while (true) {
    // odometer, last coordinate fastest, gives lexicographic order
    Index k = n - 1;
    while (k >= 0 && d(k) == bound) d(k--) = 0;
    if (k < 0) break;
    ++d(k);
    if (tits_form(q, d) == 1 && has_connected_support(q, d)) out.push_back(d);
  }
  return out;
}

}  // namespace orthoscalar
