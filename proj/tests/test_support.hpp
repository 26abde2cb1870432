#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orthoscalar/coxeter.hpp"
#include "orthoscalar/moduli.hpp"
#include "orthoscalar/representation.hpp"
#include "orthoscalar/roots.hpp"
#include "orthoscalar/solver.hpp"

namespace testing {

using namespace orthoscalar;

inline Quiver make_quiver(std::vector<std::string> vertices,
                          std::vector<std::tuple<std::string, std::string, std::string>> arrows) {
  QuiverSpec spec;
  spec.vertices = std::move(vertices);
  for (auto& [id, t, h] : arrows) spec.arrows.push_back({id, t, h});
  return validate_quiver(spec);
}

/// Path 1 -> 2 -> ... -> n.
inline Quiver path(int n) {
  std::vector<std::string> v;
  std::vector<std::tuple<std::string, std::string, std::string>> a;
  for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i) a.emplace_back("a" + std::to_string(i), std::to_string(i), std::to_string(i + 1));
  return make_quiver(v, a);
}

/// Star with center "c" and leaves l1..lk, arrows li -> c.
inline Quiver star(int k) {
  std::vector<std::string> v{"c"};
  std::vector<std::tuple<std::string, std::string, std::string>> a;
  for (int i = 1; i <= k; ++i) {
    v.push_back("l" + std::to_string(i));
    a.emplace_back("a" + std::to_string(i), "l" + std::to_string(i), "c");
  }
  return make_quiver(v, a);
}

/// Three arms of p, q, r vertices around center "c"; arms "x1..", "y1..", "z1..",
/// arrows pointing toward the center.
inline Quiver tshape(int p, int q, int r) {
  std::vector<std::string> v{"c"};
  std::vector<std::tuple<std::string, std::string, std::string>> a;
  auto arm = [&](const std::string& name, int len) {
    std::string prev = "c";
    for (int i = 1; i <= len; ++i) {
      const std::string cur = name + std::to_string(i);
      v.push_back(cur);
      a.emplace_back("e" + cur, cur, prev);
      prev = cur;
    }
  };
  arm("x", p);
  arm("y", q);
  arm("z", r);
  return make_quiver(v, a);
}

/// D~n (n >= 5): path m1..m_{n-3} with two leaves at each end.
inline Quiver d_tilde(int n) {
  std::vector<std::string> v;
  std::vector<std::tuple<std::string, std::string, std::string>> a;
  const int mids = n - 3;
  for (int i = 1; i <= mids; ++i) v.push_back("m" + std::to_string(i));
  for (int i = 1; i < mids; ++i)
    a.emplace_back("b" + std::to_string(i), "m" + std::to_string(i), "m" + std::to_string(i + 1));
  for (const char* leaf : {"p1", "p2"}) {
    v.push_back(leaf);
    a.emplace_back(std::string("e") + leaf, leaf, "m1");
  }
  for (const char* leaf : {"q1", "q2"}) {
    v.push_back(leaf);
    a.emplace_back(std::string("e") + leaf, leaf, "m" + std::to_string(mids));
  }
  return make_quiver(v, a);
}

inline DimVector dims(std::initializer_list<std::int64_t> values) {
  DimVector d(static_cast<Index>(values.size()));
  Index i = 0;
  for (auto x : values) d(i++) = x;
  return d;
}

inline Character chi(std::initializer_list<double> values) {
  Character c(static_cast<Index>(values.size()));
  Index i = 0;
  for (auto x : values) c(i++) = x;
  return c;
}

inline ComplexMatrix column(std::initializer_list<Complex> entries) {
  ComplexMatrix m(static_cast<Index>(entries.size()), 1);
  Index i = 0;
  for (auto x : entries) m(i++, 0) = x;
  return m;
}

/// D~4 representation with center C^2 and four unit lines e1, e2, (e1+e2)/sqrt2,
/// (e1-e2)/sqrt2: orthoscalar for chi = (2,1,1,1,1).
inline Representation frame_rep() {
  const double s = 1.0 / std::sqrt(2.0);
  return Representation(star(4), dims({2, 1, 1, 1, 1}),
                        {column({1.0, 0.0}), column({0.0, 1.0}), column({s, s}), column({s, -s})});
}

/// Positive-scalars representation on D~4 with d = (1,1,1,1,1): leaf arrow i
/// carries sqrt(chi(leaf i)); orthoscalar when chi(c) = sum of leaf values.
inline Representation scalar_star_rep(const Character& c) {
  std::vector<ComplexMatrix> maps;
  for (int i = 1; i <= 4; ++i) maps.push_back(ComplexMatrix::Constant(1, 1, std::sqrt(c(i))));
  return Representation(star(4), dims({1, 1, 1, 1, 1}), std::move(maps));
}

inline std::vector<ComplexMatrix> random_unitaries(const DimVector& d, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> us;
  for (Index v = 0; v < d.size(); ++v) us.push_back(random_unitary(d(v), rng));
  return us;
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Tits form by brute force over the symmetric bilinear form (no use of
/// tits_form): q(d) = 1/2 d^T M d with M = 2I - A.
inline std::int64_t form_oracle(const std::vector<std::vector<int>>& adjacency, const std::vector<int>& d) {
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    twice += 2LL * d[i] * d[i];
    for (int j : adjacency[i]) twice -= static_cast<std::int64_t>(d[i]) * d[static_cast<std::size_t>(j)];
  }
  return twice / 2;
}

inline std::vector<std::vector<int>> adjacency_of(const Quiver& q) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(q.num_vertices()));
  for (const Arrow& a : q.arrows()) {
    adj[static_cast<std::size_t>(a.tail)].push_back(static_cast<int>(a.head));
    adj[static_cast<std::size_t>(a.head)].push_back(static_cast<int>(a.tail));
  }
  return adj;
}

/// Definiteness of the Tits form from its values on the box {0..bound}^n.
/// On a bipartite graph q(|d|) <= q(d), so this box is equivalent to
/// {-bound..bound}^n. Bound 6 is exact for every tree on <= 8 vertices.
inline GraphTag definiteness_oracle(const Quiver& q, int bound = 6) {
  const auto adj = adjacency_of(q);
  const std::size_t n = adj.size();
  std::vector<int> d(n, 0);
  bool has_zero = false;
  while (true) {
    std::size_t k = n;
    while (k > 0 && d[k - 1] == bound) d[--k] = 0;
    if (k == 0) break;
    ++d[k - 1];
    const std::int64_t value = form_oracle(adj, d);
    if (value < 0) return GraphTag::Wild;
    if (value == 0) has_zero = true;
  }
  return has_zero ? GraphTag::ExtendedDynkin : GraphTag::Dynkin;
}

/// Positive roots by brute force: d >= 0, d != 0, q(d) = 1, entries <= bound.
inline std::vector<DimVector> brute_force_roots(const Quiver& q, int bound) {
  const auto adj = adjacency_of(q);
  const std::size_t n = adj.size();
  std::vector<int> d(n, 0);
  std::vector<DimVector> out;
  while (true) {
    std::size_t k = n;
    while (k > 0 && d[k - 1] == bound) d[--k] = 0;
    if (k == 0) break;
    ++d[k - 1];
    if (form_oracle(adj, d) == 1) {
      DimVector v(static_cast<Index>(n));
      for (std::size_t i = 0; i < n; ++i) v(static_cast<Index>(i)) = d[i];
      out.push_back(v);
    }
  }
  return out;
}

/// Central finite-difference gradient of objective(), step h, independent of gradient().
inline std::vector<ComplexMatrix> finite_difference_gradient(const Representation& rep, const Character& c,
                                                             double h = 1e-5) {
  std::vector<ComplexMatrix> g;
  for (Index e = 0; e < rep.quiver().num_arrows(); ++e) {
    ComplexMatrix ge = ComplexMatrix::Zero(rep.map(e).rows(), rep.map(e).cols());
    for (Index i = 0; i < ge.rows(); ++i) {
      for (Index j = 0; j < ge.cols(); ++j) {
        double parts[2];
        for (int p = 0; p < 2; ++p) {
          const Complex unit = p == 0 ? Complex(1, 0) : Complex(0, 1);
          auto plus = rep.maps();
          auto minus = rep.maps();
          plus[static_cast<std::size_t>(e)](i, j) += h * unit;
          minus[static_cast<std::size_t>(e)](i, j) -= h * unit;
          parts[p] = (objective(rep.with_maps(plus), c) - objective(rep.with_maps(minus), c)) / (2 * h);
        }
        ge(i, j) = Complex(parts[0], parts[1]);
      }
    }
    g.push_back(ge);
  }
  return g;
}

/// max |G - G_fd| / max |G| over all real coordinates.
inline double gradient_relative_error(const std::vector<ComplexMatrix>& g, const std::vector<ComplexMatrix>& fd) {
  double worst = 0.0, scale = 0.0;
  for (std::size_t e = 0; e < g.size(); ++e) {
    for (Index k = 0; k < g[e].size(); ++k) {
      const Complex a = g[e].reshaped()(k), b = fd[e].reshaped()(k);
      worst = std::max({worst, std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag())});
      scale = std::max({scale, std::abs(a.real()), std::abs(a.imag())});
    }
  }
  return scale > 0 ? worst / scale : worst;
}

// ---------------------------------------------------------------------------
// Tree enumeration up to isomorphism

using Edges = std::vector<std::pair<int, int>>;

namespace detail {

inline std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[static_cast<std::size_t>(v)])
    if (w != parent) kids.push_back(rooted_code(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

inline std::string canonical_code(int n, const Edges& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::string best;
  for (int root = 0; root < n; ++root) {
    std::string code = rooted_code(adj, root, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace detail

/// All unlabelled trees on 1..max_n vertices, as edge lists on 0..n-1.
inline std::vector<std::pair<int, Edges>> all_trees(int max_n) {
  std::vector<std::pair<int, Edges>> out{{1, {}}};
  std::vector<Edges> layer{{}};
  for (int n = 2; n <= max_n; ++n) {
    std::set<std::string> seen;
    std::vector<Edges> next;
    for (const Edges& t : layer) {
      for (int v = 0; v < n - 1; ++v) {
        Edges grown = t;
        grown.emplace_back(v, n - 1);
        if (seen.insert(detail::canonical_code(n, grown)).second) next.push_back(grown);
      }
    }
    for (const Edges& t : next) out.emplace_back(n, t);
    layer = std::move(next);
  }
  return out;
}

/// Tree as a quiver with vertices "v0".."v{n-1}", arrows oriented as listed.
inline Quiver tree_quiver(int n, const Edges& edges) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, std::string>> a;
  for (std::size_t k = 0; k < edges.size(); ++k)
    a.emplace_back("a" + std::to_string(k), "v" + std::to_string(edges[k].first), "v" + std::to_string(edges[k].second));
  return make_quiver(v, a);
}

/// Random balanced character for (q, d) with sincere d: positive random values
/// everywhere except one vertex, which is solved for from the balance relation.
/// Retries until that vertex is positive.
inline Character random_balanced_character(const Quiver& q, const DimVector& d, Index solve_at, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.5, 2.0);
  const Bipartition b = bipartition(q);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Character c(q.num_vertices());
    for (Index v = 0; v < c.size(); ++v) c(v) = uni(rng);
    double even = 0, odd = 0;
    for (Index v = 0; v < c.size(); ++v) {
      if (v == solve_at) continue;
      (b.of(v) == Parity::Even ? even : odd) += c(v) * static_cast<double>(d(v));
    }
    const double rest = b.of(solve_at) == Parity::Even ? odd - even : even - odd;
    c(solve_at) = rest / static_cast<double>(d(solve_at));
    if (c(solve_at) > 0.1) return c;
  }
  return Character();
}

struct SolvedInstance {
  Representation rep;
  Character chi;
};

/// Draws random balanced characters until the solver succeeds; nullopt after
/// `attempts` failures. The character is solved for at `solve_at`.
inline std::optional<SolvedInstance> random_solved(const Quiver& q, const DimVector& d, Index solve_at,
                                                   std::mt19937_64& rng, int attempts = 10) {
  for (int k = 0; k < attempts; ++k) {
    const Character c = random_balanced_character(q, d, solve_at, rng);
    if (c.size() == 0) continue;
    SolveOptions o;
    o.seed = rng();
    o.restarts = 4;
    o.tol = 1e-12;
    o.max_iter = 5000;
    const SolveResult r = solve(q, d, c, o);
    if (r.status == SolveStatus::Solved) return SolvedInstance{*r.representation, c};
  }
  return std::nullopt;
}

}  // namespace testing
