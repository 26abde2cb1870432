#include "orthoscalar/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace orthoscalar {

RankDecision numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  RankDecision r;
  r.columns = m.cols();
  if (m.size() == 0) {
    r.gap = 1.0 / std::numeric_limits<double>::epsilon();
    return r;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  r.singular_values = svd.singularValues();
  r.sigma_max = r.singular_values.size() > 0 ? r.singular_values(0) : 0.0;
  r.threshold = rel_tol * r.sigma_max;
  const double floor = std::numeric_limits<double>::epsilon() * r.sigma_max;
  if (r.sigma_max == 0.0) {
    r.gap = 1.0 / std::numeric_limits<double>::epsilon();
    return r;
  }
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i)
    if (r.singular_values(i) >= r.threshold) ++r.rank;
  const double kept = r.singular_values(r.rank - 1);
  const double dropped = r.rank < r.singular_values.size() ? r.singular_values(r.rank) : 0.0;
  r.gap = kept / std::max(dropped, floor);
  return r;
}

ComplexMatrix null_space(const ComplexMatrix& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || n == 0) return ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) >= rel_tol * smax) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

std::vector<ComplexMatrix> hermitian_basis(Eigen::Index d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  const Complex I(0.0, 1.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(d, d);
      re(i, j) = re(j, i) = 1.0;
      ComplexMatrix im = ComplexMatrix::Zero(d, d);
      im(i, j) = I;
      im(j, i) = -I;
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

Eigen::VectorXd hermitian_coordinates(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::VectorXd out(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) out(k++) = h(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      out(k++) = h(i, j).real();
      out(k++) = h(i, j).imag();
    }
  }
  return out;
}

Eigen::VectorXd realify(const ComplexMatrix& m) {
  Eigen::VectorXd out(2 * m.size());
  out.head(m.size()) = m.reshaped().real();
  out.tail(m.size()) = m.reshaped().imag();
  return out;
}

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, scale);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian(n, n, 1.0, rng));
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase of each column so the distribution is Haar.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexMatrix polar_unitary(const ComplexMatrix& x) {
  if (x.size() == 0) return x;
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace orthoscalar
