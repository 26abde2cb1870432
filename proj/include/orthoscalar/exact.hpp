#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <numeric>
#include <vector>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline std::int64_t narrow_checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw Error("Overflow", "exact integer determinant exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Exact determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination with row pivoting. Every intermediate is itself a minor of the
/// input, so 128-bit products suffice whenever the minors fit in 64 bits.
template <typename Derived>
std::int64_t exact_determinant(const Eigen::MatrixBase<Derived>& input) {
  IntMatrix a = input.template cast<std::int64_t>();
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        __int128 num = static_cast<__int128>(a(i, j)) * a(k, k) -
                       static_cast<__int128>(a(i, k)) * a(k, j);
        a(i, j) = detail::narrow_checked(num / prev);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Leading principal minors det(M[0..k, 0..k]) for k = 1..n.
template <typename Derived>
std::vector<std::int64_t> leading_principal_minors(const Eigen::MatrixBase<Derived>& m) {
  std::vector<std::int64_t> minors;
  minors.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index k = 1; k <= m.rows(); ++k)
    minors.push_back(exact_determinant(m.topLeftCorner(k, k)));
  return minors;
}

/// Integer vector spanning the kernel of a rank n-1 square integer matrix,
/// taken from a nonzero column of the adjugate and reduced to a primitive
/// vector (gcd 1). Returns zero if the rank is below n-1.
template <typename Derived>
Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> corank_one_kernel(
    const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index n = m.rows();
  IntMatrix a = m.template cast<std::int64_t>();
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> best;
  // M adj(M) = det(M) I = 0, so every column of adj(M) lies in ker M.
  for (Eigen::Index col = n - 1; col >= 0; --col) {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> v(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == col) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      const std::int64_t cof = exact_determinant(minor);
      v(j) = ((col + j) % 2 == 0) ? cof : -cof;
    }
    if (!v.isZero()) {
      best = v;
      break;
    }
  }
  if (best.size() == 0) return Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(n);
  std::int64_t g = 0;
  for (Eigen::Index i = 0; i < n; ++i) g = std::gcd(g, best(i));
  if (g != 0) best /= g;
  return best;
}

}  // namespace orthoscalar
