#include "orthoscalar/moduli.hpp"

#include "orthoscalar/error.hpp"

namespace orthoscalar {

namespace {

std::vector<Index> hermitian_offsets(const DimVector& d) {
  std::vector<Index> off(static_cast<std::size_t>(d.size()) + 1, 0);
  for (Index v = 0; v < d.size(); ++v) off[static_cast<std::size_t>(v) + 1] = off[static_cast<std::size_t>(v)] + d(v) * d(v);
  return off;
}

}  // namespace

Eigen::MatrixXd constraint_jacobian(const Representation& rep) {
  const Quiver& q = rep.quiver();
  const DimVector& d = rep.dims();
  const auto row_off = hermitian_offsets(d);
  Index cols = 0;
  for (const ComplexMatrix& m : rep.maps()) cols += 2 * m.size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(row_off.back(), cols);

  Index col = 0;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    const ComplexMatrix& s = rep.map(e);
    for (const Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      for (Index j = 0; j < s.cols(); ++j) {
        for (Index i = 0; i < s.rows(); ++i, ++col) {
          ComplexMatrix ds = ComplexMatrix::Zero(s.rows(), s.cols());
          ds(i, j) = unit;
          // tail sees S^*S, head sees SS^*
          const ComplexMatrix dt = ds.adjoint() * s + s.adjoint() * ds;
          const ComplexMatrix dh = ds * s.adjoint() + s * ds.adjoint();
          jac.col(col).segment(row_off[static_cast<std::size_t>(a.tail)], d(a.tail) * d(a.tail)) +=
              hermitian_coordinates(dt);
          jac.col(col).segment(row_off[static_cast<std::size_t>(a.head)], d(a.head) * d(a.head)) +=
              hermitian_coordinates(dh);
        }
      }
    }
  }
  return jac;
}

RankDecision orbit_rank(const Representation& rep, double rank_tol) {
  const Quiver& q = rep.quiver();
  const DimVector& d = rep.dims();
  const auto col_off = hermitian_offsets(d);
  Index rows = 0;
  for (const ComplexMatrix& m : rep.maps()) rows += 2 * m.size();
  Eigen::MatrixXd action = Eigen::MatrixXd::Zero(rows, col_off.back());
  const Complex I(0.0, 1.0);

  Index row = 0;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    const ComplexMatrix& s = rep.map(e);
    const Index block = 2 * s.size();
    if (block == 0) continue;
    const auto head_basis = hermitian_basis(d(a.head));
    for (std::size_t k = 0; k < head_basis.size(); ++k)
      action.col(col_off[static_cast<std::size_t>(a.head)] + static_cast<Index>(k)).segment(row, block) +=
          realify(I * head_basis[k] * s);
    const auto tail_basis = hermitian_basis(d(a.tail));
    for (std::size_t k = 0; k < tail_basis.size(); ++k)
      action.col(col_off[static_cast<std::size_t>(a.tail)] + static_cast<Index>(k)).segment(row, block) -=
          realify(s * (I * tail_basis[k]));
    row += block;
  }
  return numerical_rank(action, rank_tol);
}

Index orbit_dimension(const Representation& rep, double rank_tol) { return orbit_rank(rep, rank_tol).rank; }

ModuliReport parameter_count(const Representation& rep, const Character& chi, double rank_tol) {
  const OrthoscalarReport check = check_orthoscalar(rep, chi, 1e-6);
  if (!check.pass)
    throw Error("NotASolution", "representation is not orthoscalar for the character (max defect " +
                                    std::to_string(check.max_defect) + ")");
  if (!is_indecomposable(rep, rank_tol)) throw Error("Decomposable", "representation is decomposable");

  ModuliReport r;
  const RankDecision jac = numerical_rank(constraint_jacobian(rep), rank_tol);
  const RankDecision orbit = orbit_rank(rep, rank_tol);
  r.ambient_dimension = jac.columns;
  r.constraint_rank = jac.rank;
  r.kernel_dimension = jac.nullity();
  r.orbit_dimension = orbit.rank;
  r.stabilizer_dimension = orbit.columns - orbit.rank;
  r.moduli_fixed_chi = r.kernel_dimension - r.orbit_dimension;
  // The balance constraint sum_even chi d - sum_odd chi d = 0 is one equation in chi.
  const Index balance_rank = rep.dims().isZero() ? 0 : 1;
  r.character_dimension = rep.quiver().num_vertices() - balance_rank;
  r.total_parameters = r.moduli_fixed_chi + r.character_dimension;
  r.constraint_gap = jac.gap;
  r.orbit_gap = orbit.gap;
  r.reliable = jac.reliable() && orbit.reliable();
  return r;
}

}  // namespace orthoscalar
